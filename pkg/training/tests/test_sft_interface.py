# =========================================================================

# Module: training/tests/test_sft_interface.py

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

    test_sft_interface.py

Description
-----------

    This module provides unit-tests for the respective sft_interface
    module functions; the runs use a randomly initialized tokenizer
    checkpoint and a tiny policy.

Classes
-------

    TestSFTMethods()

        This is the base-class object for all sft_interface
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

from confs import json_interface
from ioapps import checkpoint_interface
from synthdata.dataset_interface import Dataset, DatasetConfig, gen_dataset
from tensor.optim_interface import OptimizerState, adam_step, collect_grads
from tokenizer_vq.codebook_interface import Codebook
from tokenizer_vq.vqvae_interface import VQVAE, MotionTokenizer, TokenizerConfig
from tools import fileio_interface
from training.sft_interface import (
    SftConfig,
    build_policy,
    exact_match_rate,
    run_sft,
    sft_step,
    task_plan,
    tokenize_records,
)
from utils.exceptions_interface import SFTInterfaceError
from vocab_lm.prompt_interface import encode_prompt, encode_record
from vocab_lm.transformer_interface import load_policy

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

WORKDIR = tempfile.mkdtemp(prefix="unimo_sft_")

TINY_MODEL = {"d_model": 16, "num_heads": 2, "num_layers": 1, "d_ff": 32, "context": 256}

# ----


class TestSFTMethods(TestCase):
    """
    Description
    -----------

    This is the base-class object for all sft_interface unit-tests;
    it is a sub-class of TestCase.

    """

    def setUp(self):
        """
        Description
        -----------

        This method defines the base-class attributes for all
        sft_interface unit-tests.

        """

        # Define the base-class attributes.
        self.dataset_dir = os.path.join(WORKDIR, "dataset")
        self.tokenizer_path = os.path.join(WORKDIR, "tokenizer.mckp")
        if not os.path.exists(self.tokenizer_path):
            gen_dataset(
                config=DatasetConfig.from_dict({"train": 6, "val": 2, "test": 2, "seed": 12}),
                out_dir=self.dataset_dir,
            )
            config = TokenizerConfig.from_dict(
                {"codebook_size": 16, "latent_dim": 8, "hidden_dim": 16}
            )
            rng = numpy.random.default_rng(12)
            table = VQVAE(config=config, rng=rng).state_dict()
            codebook = Codebook.create(num_codes=16, dim=8, rng=rng)
            table["codebook.codes"] = codebook.codes
            table["codebook.ema_counts"] = codebook.ema_counts
            table["codebook.ema_sums"] = codebook.ema_sums
            checkpoint_interface.write_checkpoint(
                path=self.tokenizer_path, params=table, config=asdict(config)
            )

        self.dataset = Dataset.from_dir(root=self.dataset_dir)
        self.config = SftConfig.from_dict(
            {
                "epochs_phase1": 1,
                "epochs_phase2": 1,
                "batch_size": 3,
                "lr_max": 1e-2,
                "eval_samples": 2,
                "log_interval": 1,
                "model": TINY_MODEL,
            }
        )

        # Define the message to accompany any unit-test failures.
        self.unit_test_msg = "The unit-test for sft_interface function {0} failed."

    @pytest.mark.order(1)
    def test_config(self):
        """
        Description
        -----------

        This method checks the configuration defaults and the empty
        schedule failure.

        """

        config = SftConfig.from_dict({})
        assert (config.epochs_phase1, config.epochs_phase2) == (10, 10), (
            self.unit_test_msg.format("SftConfig")
        )
        assert config.use_cot and config.tasks == "both", self.unit_test_msg.format("SftConfig")
        assert self.config.lm_config.context == 256, self.unit_test_msg.format("lm_config")

        with self.assertRaises(SFTInterfaceError):
            SftConfig.from_dict({"epochs_phase1": 0, "epochs_phase2": 0})

    @pytest.mark.order(2)
    def test_task_plan(self):
        """
        Description
        -----------

        This method checks the per-sample task schedule of both phases.

        """

        rng = numpy.random.default_rng(0)
        assert task_plan(self.config, 1, 4, rng) == ["t2m"] * 4, self.unit_test_msg.format(
            "task_plan"
        )
        mixed = task_plan(self.config, 2, 64, rng)
        assert set(mixed) == {"t2m", "m2t"}, self.unit_test_msg.format("task_plan")

        only = SftConfig.from_dict({"tasks": "m2t"})
        assert task_plan(only, 1, 3, rng) == ["m2t"] * 3, self.unit_test_msg.format("task_plan")
        assert task_plan(only, 2, 3, rng) == ["m2t"] * 3, self.unit_test_msg.format("task_plan")

    @pytest.mark.order(3)
    def test_sft_step(self):
        """
        Description
        -----------

        This method checks that repeated steps on one sequence lower
        its loss and that a prompt-only batch is rejected.

        """

        records = self.dataset.split("train")
        tokenizer = MotionTokenizer.from_checkpoint(path=self.tokenizer_path)
        motions = tokenize_records(dataset=self.dataset, tokenizer=tokenizer, records=records)
        (model, vocab) = build_policy(
            records=self.dataset.records,
            num_motion=16,
            lm_config=self.config.lm_config,
            seed=3,
        )
        assert model.tok_emb.shape[0] == len(vocab), self.unit_test_msg.format("build_policy")
        assert vocab.num_motion == 16, self.unit_test_msg.format("build_policy")

        sequence = encode_record(
            vocab=vocab, record=records[0], task="t2m", motion=motions[records[0].id]
        )
        params = model.parameters()
        state = OptimizerState()
        losses = []
        for _ in range(40):
            model.zero_grad()
            losses.append(sft_step(model=model, batch=[sequence], pad_id=vocab.pad_id))
            adam_step(params=params, grads=collect_grads(params), state=state, lr=1e-2)
        assert losses[-1] < 0.5 * losses[0], self.unit_test_msg.format("sft_step")

        rate = exact_match_rate(model=model, vocab=vocab, sequences=[sequence])
        assert rate in (0.0, 1.0), self.unit_test_msg.format("exact_match_rate")
        assert exact_match_rate(model=model, vocab=vocab, sequences=[]) == 0.0, (
            self.unit_test_msg.format("exact_match_rate")
        )

        prompt = encode_prompt(vocab=vocab, task="t2m", caption=records[0].caption)
        with self.assertRaises(SFTInterfaceError):
            sft_step(model=model, batch=[prompt], pad_id=vocab.pad_id)

    @pytest.mark.order(4)
    def test_run_sft(self):
        """
        Description
        -----------

        This method runs both SFT phases and checks the checkpoint, the
        sidecar and the per-step log.

        """

        out_path = os.path.join(WORKDIR, "sft.mckp")
        log_path = os.path.join(WORKDIR, "sft.ndjson")
        meta = run_sft(
            dataset=self.dataset,
            config=self.config,
            tokenizer_path=self.tokenizer_path,
            out_path=out_path,
            log_path=log_path,
        )
        assert meta["steps"] == 4, self.unit_test_msg.format("run_sft")
        assert numpy.isfinite(meta["final_loss"]), self.unit_test_msg.format("run_sft")
        for key in ("exact_match", "format_rate"):
            assert 0.0 <= meta[key] <= 1.0, self.unit_test_msg.format("run_sft")

        entries = json_interface.read_ndjson(ndjson_file=log_path)
        assert [entry["phase"] for entry in entries] == [1, 1, 2, 2], (
            self.unit_test_msg.format("run_sft")
        )
        assert all(entry["m2t"] == 0 for entry in entries[:2]), self.unit_test_msg.format(
            "run_sft"
        )
        assert sum(entry["t2m"] + entry["m2t"] for entry in entries) == 12, (
            self.unit_test_msg.format("run_sft")
        )

        (model, vocab, loaded) = load_policy(path=out_path)
        assert loaded == meta, self.unit_test_msg.format("load_policy")
        assert model.config.context == 256 and vocab.num_motion == 16, (
            self.unit_test_msg.format("load_policy")
        )

        again = os.path.join(WORKDIR, "sft_again.mckp")
        run_sft(
            dataset=self.dataset,
            config=self.config,
            tokenizer_path=self.tokenizer_path,
            out_path=again,
        )
        assert fileio_interface.read_bytes(path=again) == fileio_interface.read_bytes(
            path=out_path
        ), self.unit_test_msg.format("run_sft")

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
