# =========================================================================

# Module: tokenizer_vq/tests/test_vqvae_interface.py

# Author: unimo_pyutils developers

# This program is free software: you can redistribute it and/or modify
# it under the terms of the respective public license published by the
# Free Software Foundation and included with the repository within
# which this application is contained.

# This program is distributed in the hope that it will be useful, but
# WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.

# =========================================================================

"""
Module
------

    test_vqvae_interface.py

Description
-----------

    This module provides unit-tests for the respective vqvae_interface
    and train_interface module functions; a tiny tokenizer is trained
    on a tiny generated dataset.

Classes
-------

    TestVQVAEMethods()

        This is the base-class object for all vqvae_interface
        unit-tests; it is a sub-class of TestCase.

Requirements
------------

- pytest; https://docs.pytest.org/en/7.2.x/

- pytest-order; https://github.com/pytest-dev/pytest-order

Author(s)
---------

    unimo_pyutils developers; 02 March 2026

History
-------

    2026-03-02: Initial implementation.

"""

# ----

import os
import tempfile
import unittest
from unittest import TestCase

import numpy
import pytest

from confs import json_interface
from ioapps import checkpoint_interface
from synthdata.dataset_interface import Dataset, DatasetConfig, gen_dataset
from tensor.gradcheck_interface import grad_check
from tensor.tensor_interface import Tensor
from tokenizer_vq.codebook_interface import Codebook
from tokenizer_vq.train_interface import train_tokenizer
from tokenizer_vq.vqvae_interface import VQVAE, MotionTokenizer, TokenizerConfig, vq_loss
from tools import fileio_interface
from utils.exceptions_interface import TokenizerInterfaceError

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

WORKDIR = tempfile.mkdtemp(prefix="unimo_tokenizer_")

# ----


class TestVQVAEMethods(TestCase):
    """
    Description
    -----------

    This is the base-class object for all vqvae_interface unit-tests;
    it is a sub-class of TestCase.

    """

    def setUp(self):
        """
        Description
        -----------

        This method defines the base-class attributes for all
        vqvae_interface unit-tests.

        """

        # Define the base-class attributes.
        self.config = TokenizerConfig.from_dict(
            {
                "codebook_size": 16,
                "latent_dim": 8,
                "hidden_dim": 16,
                "steps": 30,
                "batch_size": 4,
                "reset_window": 10,
                "log_interval": 10,
            }
        )
        self.rng = numpy.random.default_rng(0)
        self.dataset_dir = os.path.join(WORKDIR, "dataset")
        self.ckpt_path = os.path.join(WORKDIR, "tokenizer.mckp")

        # Define the message to accompany any unit-test failures.
        self.unit_test_msg = "The unit-test for vqvae_interface function {0} failed."

    @pytest.mark.order(1)
    def test_encode_shapes(self):
        """
        Description
        -----------

        This method checks the downsampled latent length and the
        rejection of lengths that are not a multiple of 4.

        """

        model = VQVAE(config=self.config, rng=self.rng)
        codebook = Codebook.create(num_codes=16, dim=8, rng=self.rng)
        tokenizer = MotionTokenizer(model=model, codebook=codebook)

        assert tokenizer.encode(numpy.zeros((64, 16))).shape == (16, 8), (
            self.unit_test_msg.format("encode")
        )
        assert len(tokenizer.tokenize(numpy.zeros((16, 16)))) == 4, self.unit_test_msg.format(
            "tokenize"
        )
        assert tokenizer.decode([0, 1, 2]).shape == (12, 16), self.unit_test_msg.format(
            "decode"
        )

        with self.assertRaises(TokenizerInterfaceError) as context:
            tokenizer.encode(numpy.zeros((17, 16)))
        assert "T=17" in str(context.exception), self.unit_test_msg.format("encode")
        with self.assertRaises(TokenizerInterfaceError):
            tokenizer.decode([])
        with self.assertRaises(TokenizerInterfaceError):
            tokenizer.decode([3, 16])

    @pytest.mark.order(2)
    def test_vq_loss(self):
        """
        Description
        -----------

        This method checks the vanishing loss, the stop-gradient
        routing and the encoder-side gradient.

        """

        x = Tensor(self.rng.normal(size=(1, 8, 16)))
        z_values = self.rng.normal(size=(1, 2, 8))
        losses = vq_loss(x=x, x_hat=x, z=Tensor(z_values), z_q=Tensor(z_values))
        assert losses.total.item() == 0.0, self.unit_test_msg.format("vq_loss")

        z = Tensor(z_values, requires_grad=True)
        z_q = Tensor(z_values + 0.5, requires_grad=True)
        losses = vq_loss(x=x, x_hat=x, z=z, z_q=z_q)
        losses.commit.backward()
        assert z_q.grad is None or not z_q.grad.any(), self.unit_test_msg.format("vq_loss")
        z = Tensor(z_values, requires_grad=True)
        z_q = Tensor(z_values + 0.5, requires_grad=True)
        vq_loss(x=x, x_hat=x, z=z, z_q=z_q).embed.backward()
        assert z.grad is None or not z.grad.any(), self.unit_test_msg.format("vq_loss")

        model = VQVAE(config=self.config, rng=self.rng)
        fixed = Tensor(z_values + 0.1)

        def encoder_side(latents):
            losses = vq_loss(x=x, x_hat=model.decode(latents), z=latents, z_q=fixed)
            return losses.recon + losses.commit

        error = grad_check(function=encoder_side, point=z_values)
        assert error <= 1e-4, self.unit_test_msg.format("vq_loss")

        with self.assertRaises(TokenizerInterfaceError):
            vq_loss(x=x, x_hat=Tensor(z_values), z=fixed, z_q=fixed)

    @pytest.mark.order(3)
    def test_train_tokenizer(self):
        """
        Description
        -----------

        This method trains a tiny tokenizer and checks the checkpoint,
        the sidecar and the training log.

        """

        gen_dataset(
            config=DatasetConfig.from_dict({"train": 8, "val": 4, "test": 4, "seed": 5}),
            out_dir=self.dataset_dir,
        )
        dataset = Dataset.from_dir(root=self.dataset_dir)
        log_path = os.path.join(WORKDIR, "tokenizer.ndjson")
        meta = train_tokenizer(
            dataset=dataset, config=self.config, out_path=self.ckpt_path, log_path=log_path
        )

        assert fileio_interface.fileexist(path=self.ckpt_path), self.unit_test_msg.format(
            "train_tokenizer"
        )
        for key in ("config_hash", "num_parameters", "val_mse", "mean_pose_mse", "perplexity"):
            assert key in meta, self.unit_test_msg.format("train_tokenizer")
        assert numpy.isfinite(meta["val_mse"]), self.unit_test_msg.format("train_tokenizer")
        assert 1.0 <= meta["perplexity"] <= 16.0, self.unit_test_msg.format("train_tokenizer")
        assert checkpoint_interface.read_checkpoint_meta(path=self.ckpt_path) == meta, (
            self.unit_test_msg.format("read_checkpoint_meta")
        )

        entries = json_interface.read_ndjson(ndjson_file=log_path)
        assert [entry["step"] for entry in entries] == list(range(30)), (
            self.unit_test_msg.format("train_tokenizer")
        )

    @pytest.mark.order(4)
    def test_from_checkpoint(self):
        """
        Description
        -----------

        This method reloads the tokenizer and checks a clip round trip
        and the byte-level determinism of training.

        """

        dataset = Dataset.from_dir(root=self.dataset_dir)
        tokenizer = MotionTokenizer.from_checkpoint(path=self.ckpt_path)
        clip = dataset.load_clip(dataset.split("val")[0])
        indices = tokenizer.tokenize(clip.frames)
        assert len(indices) == clip.num_frames // 4, self.unit_test_msg.format("tokenize")
        assert all(0 <= index < 16 for index in indices), self.unit_test_msg.format("tokenize")
        assert tokenizer.decode(indices).shape == clip.frames.shape, self.unit_test_msg.format(
            "decode"
        )
        assert numpy.allclose(tokenizer.reconstruct(clip.frames), tokenizer.decode(indices)), (
            self.unit_test_msg.format("reconstruct")
        )
        assert all(not param.requires_grad for param in tokenizer.model.parameters().values()), (
            self.unit_test_msg.format("from_checkpoint")
        )

        again = os.path.join(WORKDIR, "tokenizer_again.mckp")
        train_tokenizer(dataset=dataset, config=self.config, out_path=again)
        assert fileio_interface.read_bytes(path=again) == fileio_interface.read_bytes(
            path=self.ckpt_path
        ), self.unit_test_msg.format("train_tokenizer")

    @pytest.mark.order(100)
    def test_cleanup(self):
        """
        Description
        -----------

        This method removes the files written by the unit-tests.

        """

        fileio_interface.rmdir(path=WORKDIR)


# ----
if __name__ == "__main__":
    unittest.main()
