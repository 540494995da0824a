# =========================================================================

# Module: vocab_lm/tests/test_inference_interface.py

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

    test_inference_interface.py

Description
-----------

    This module provides unit-tests for the respective
    inference_interface module functions; the policy and tokenizer
    checkpoints are randomly initialized so only the consistency of
    the returned generations is checked.

Classes
-------

    TestInferenceMethods()

        This is the base-class object for all inference_interface
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
from dataclasses import asdict
from unittest import TestCase

import numpy
import pytest

from ioapps import checkpoint_interface, motion_interface
from synthdata.dataset_interface import DatasetRecord, gen_record
from synthdata.primitives_interface import FPS, FRAME_DIM
from tokenizer_vq.codebook_interface import Codebook
from tokenizer_vq.vqvae_interface import VQVAE, TokenizerConfig
from tools import fileio_interface
from utils.exceptions_interface import (
    CheckpointInterfaceError,
    MotionInterfaceError,
    TokenizerInterfaceError,
)
from vocab_lm.inference_interface import caption_motion, generate_motion
from vocab_lm.transformer_interface import LMConfig, TinyLM, save_policy
from vocab_lm.vocab_interface import build_vocab

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

WORKDIR = tempfile.mkdtemp(prefix="unimo_inference_")

NUM_CODES = 16

# ----


def _write_checkpoints(policy_path: str, tokenizer_path: str) -> None:
    config = TokenizerConfig.from_dict(
        {"codebook_size": NUM_CODES, "latent_dim": 8, "hidden_dim": 16}
    )
    rng = numpy.random.default_rng(21)
    table = VQVAE(config=config, rng=rng).state_dict()
    codebook = Codebook.create(num_codes=NUM_CODES, dim=8, rng=rng)
    table["codebook.codes"] = codebook.codes
    table["codebook.ema_counts"] = codebook.ema_counts
    table["codebook.ema_sums"] = codebook.ema_sums
    checkpoint_interface.write_checkpoint(
        path=tokenizer_path, params=table, config=asdict(config), extra={"downsample": 4}
    )

    records = [
        DatasetRecord.from_dict(gen_record("train", index, index, 4)[0]) for index in range(6)
    ]
    (vocab, _) = build_vocab(records=records, num_motion=NUM_CODES)
    lm_config = LMConfig.from_dict(
        {"d_model": 16, "num_heads": 2, "num_layers": 1, "d_ff": 32, "context": 64}
    )
    model = TinyLM(config=lm_config, vocab_size=len(vocab), rng=rng)
    save_policy(model=model, vocab=vocab, path=policy_path, config={})


# ----


class TestInferenceMethods(TestCase):
    """
    Description
    -----------

    This is the base-class object for all inference_interface
    unit-tests; it is a sub-class of TestCase.

    """

    def setUp(self):
        """
        Description
        -----------

        This method defines the base-class attributes for all
        inference_interface unit-tests.

        """

        # Define the base-class attributes.
        self.policy_path = os.path.join(WORKDIR, "policy.mckp")
        self.tokenizer_path = os.path.join(WORKDIR, "tokenizer.mckp")
        if not os.path.exists(self.policy_path):
            _write_checkpoints(policy_path=self.policy_path, tokenizer_path=self.tokenizer_path)

        self.caption = "a person walks forward and then waves"

        # Define the message to accompany any unit-test failures.
        self.unit_test_msg = "The unit-test for inference_interface function {0} failed."

    @pytest.mark.order(1)
    def test_generate_motion(self):
        """
        Description
        -----------

        This method checks that a t2m generation carries frames exactly
        when its output is well-formed and that the frame count is
        four per motion token.

        """

        for seed in range(6):
            out_path = os.path.join(WORKDIR, f"generated_{seed}.mblob")
            generation = generate_motion(
                policy_path=self.policy_path,
                tokenizer_path=self.tokenizer_path,
                caption=self.caption,
                seed=seed,
                out_path=out_path,
                max_new=24,
            )
            assert generation.task == "t2m", self.unit_test_msg.format("generate_motion")
            if generation.format_valid and generation.motion_indices:
                expected = (4 * len(generation.motion_indices), FRAME_DIM)
                assert generation.frames.shape == expected, self.unit_test_msg.format(
                    "generate_motion"
                )
                (frames, fps) = motion_interface.read_motion(path=out_path)
                assert fps == FPS and numpy.allclose(
                    frames, generation.frames, rtol=1e-6, atol=1e-5
                ), self.unit_test_msg.format("generate_motion")
            else:
                assert generation.frames is None, self.unit_test_msg.format("generate_motion")
                assert not os.path.exists(out_path), self.unit_test_msg.format(
                    "generate_motion"
                )
            if not generation.format_valid:
                assert generation.motion_indices is None, self.unit_test_msg.format(
                    "generate_motion"
                )

    @pytest.mark.order(2)
    def test_generate_motion_determinism(self):
        """
        Description
        -----------

        This method checks that a fixed seed reproduces the raw
        completion and that words outside the vocabulary are accepted.

        """

        kwargs = {
            "policy_path": self.policy_path,
            "tokenizer_path": self.tokenizer_path,
            "caption": "a person pirouettes gracefully",
            "seed": 3,
            "max_new": 24,
        }
        first = generate_motion(**kwargs)
        second = generate_motion(**kwargs)
        assert first.raw == second.raw, self.unit_test_msg.format("generate_motion")
        assert first.format_valid == second.format_valid, self.unit_test_msg.format(
            "generate_motion"
        )

    @pytest.mark.order(3)
    def test_caption_motion(self):
        """
        Description
        -----------

        This method checks that an m2t generation carries answer text
        exactly when its output is well-formed.

        """

        motion_path = os.path.join(WORKDIR, "input.mblob")
        frames = numpy.random.default_rng(2).normal(size=(16, FRAME_DIM))
        motion_interface.write_motion(path=motion_path, frames=frames, fps=FPS)
        for seed in range(4):
            generation = caption_motion(
                policy_path=self.policy_path,
                tokenizer_path=self.tokenizer_path,
                motion_path=motion_path,
                seed=seed,
                max_new=24,
            )
            assert generation.task == "m2t", self.unit_test_msg.format("caption_motion")
            assert generation.frames is None, self.unit_test_msg.format("caption_motion")
            assert (generation.answer_text is not None) == generation.format_valid, (
                self.unit_test_msg.format("caption_motion")
            )

    @pytest.mark.order(4)
    def test_inference_errors(self):
        """
        Description
        -----------

        This method checks the failures for a clip whose length is not
        a multiple of the downsample factor, a missing motion file and
        a missing checkpoint.

        """

        motion_path = os.path.join(WORKDIR, "odd.mblob")
        frames = numpy.zeros((17, FRAME_DIM))
        motion_interface.write_motion(path=motion_path, frames=frames, fps=FPS)
        with self.assertRaises(TokenizerInterfaceError):
            caption_motion(
                policy_path=self.policy_path,
                tokenizer_path=self.tokenizer_path,
                motion_path=motion_path,
            )

        with self.assertRaises(MotionInterfaceError):
            caption_motion(
                policy_path=self.policy_path,
                tokenizer_path=self.tokenizer_path,
                motion_path=os.path.join(WORKDIR, "missing.mblob"),
            )

        with self.assertRaises(CheckpointInterfaceError):
            generate_motion(
                policy_path=os.path.join(WORKDIR, "missing.mckp"),
                tokenizer_path=self.tokenizer_path,
                caption=self.caption,
            )

    @pytest.mark.order(100)
    def test_cleanup(self):
        """
        Description
        -----------

        This method removes the temporary working directory.

        """

        fileio_interface.rmdir(path=WORKDIR)
        assert not os.path.exists(WORKDIR), self.unit_test_msg.format("cleanup")


# ----
if __name__ == "__main__":
    unittest.main()
