# =========================================================================

# Module: rewards/tests/test_rewards_interface.py

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

    test_rewards_interface.py

Description
-----------

    This module provides unit-tests for the respective
    rewards_interface module functions; the scorer is built from an
    untrained embedder and tokenizer.

Classes
-------

    TestRewardsMethods()

        This is the base-class object for all rewards_interface
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

from embedder.dual_encoder_interface import (
    DualEncoder,
    EmbedderConfig,
    MotionTextEmbedder,
    text_vocabulary,
)
from rewards.rewards_interface import (
    RewardScorer,
    caption_reward,
    format_reward,
    motion_reward,
    score_policy,
    semantic_reward,
)
from synthdata.dataset_interface import (
    Dataset,
    DatasetConfig,
    DatasetRecord,
    gen_dataset,
    gen_record,
)
from tokenizer_vq.codebook_interface import Codebook
from tokenizer_vq.vqvae_interface import VQVAE, MotionTokenizer, TokenizerConfig
from tools import fileio_interface
from utils.exceptions_interface import RewardsInterfaceError
from vocab_lm.parse_interface import parse_output
from vocab_lm.transformer_interface import LMConfig, TinyLM
from vocab_lm.vocab_interface import build_vocab

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

WORKDIR = tempfile.mkdtemp(prefix="unimo_rewards_")

VALID_T2M = "<think>a person walks</think><Motion><Motion_3><Motion_7></Motion>"

VALID_M2T = "<think>the clip shows a walk</think><Answer>a person walks forward</Answer>"

# ----


class TestRewardsMethods(TestCase):
    """
    Description
    -----------

    This is the base-class object for all rewards_interface
    unit-tests; it is a sub-class of TestCase.

    """

    def setUp(self):
        """
        Description
        -----------

        This method defines the base-class attributes for all
        rewards_interface unit-tests.

        """

        # Define the base-class attributes.
        rng = numpy.random.default_rng(8)
        records = [
            DatasetRecord.from_dict(gen_record("train", index, index, 6)[0]) for index in range(8)
        ]
        text_vocab = text_vocabulary(records=records)
        self.embedder = MotionTextEmbedder(
            model=DualEncoder(
                config=EmbedderConfig.from_dict(
                    {"embed_dim": 8, "hidden_dim": 16, "word_dim": 8}
                ),
                vocab_size=len(text_vocab),
                rng=rng,
            ),
            vocab=text_vocab,
        )
        config = TokenizerConfig.from_dict(
            {"codebook_size": 16, "latent_dim": 8, "hidden_dim": 16}
        )
        self.tokenizer = MotionTokenizer(
            model=VQVAE(config=config, rng=rng),
            codebook=Codebook.create(num_codes=16, dim=8, rng=rng),
        )
        (self.vocab, _) = build_vocab(records=records, num_motion=16)
        self.reference = rng.normal(size=(8, 16))
        self.caption = "a person walks forward"

        # Define the message to accompany any unit-test failures.
        self.unit_test_msg = "The unit-test for rewards_interface function {0} failed."

    @pytest.mark.order(1)
    def test_format_reward(self):
        """
        Description
        -----------

        This method checks the format reward for a well-formed, a
        duplicated and an empty completion.

        """

        assert format_reward(raw_output=VALID_T2M, task="t2m") == 1, self.unit_test_msg.format(
            "format_reward"
        )
        duplicated = VALID_T2M + "<Motion><Motion_1></Motion>"
        assert format_reward(raw_output=duplicated, task="t2m") == 0, (
            self.unit_test_msg.format("format_reward")
        )
        assert format_reward(raw_output="", task="m2t") == 0, self.unit_test_msg.format(
            "format_reward"
        )
        assert format_reward(raw_output=VALID_M2T, task="t2m") == 0, self.unit_test_msg.format(
            "format_reward"
        )

    @pytest.mark.order(2)
    def test_similarity_rewards(self):
        """
        Description
        -----------

        This method checks the motion, semantic and caption rewards.

        """

        value = motion_reward(self.reference, self.reference, self.embedder)
        assert abs(value - 1.0) < 1e-9, self.unit_test_msg.format("motion_reward")

        value = semantic_reward(self.reference, self.caption, self.embedder)
        assert -1.0 - 1e-9 <= value <= 1.0 + 1e-9, self.unit_test_msg.format("semantic_reward")

        value = caption_reward(self.caption, self.caption, self.embedder)
        assert abs(value - 2.0) < 1e-9, self.unit_test_msg.format("caption_reward")
        assert caption_reward("", self.caption, self.embedder) == 0.0, (
            self.unit_test_msg.format("caption_reward")
        )
        assert caption_reward("   ", self.caption, self.embedder) == 0.0, (
            self.unit_test_msg.format("caption_reward")
        )

    @pytest.mark.order(3)
    def test_total_reward_t2m(self):
        """
        Description
        -----------

        This method checks the t2m breakdown for a well-formed, an
        empty and an ill-formed completion.

        """

        scorer = RewardScorer(embedder=self.embedder, tokenizer=self.tokenizer, vocab=self.vocab)
        breakdown = scorer.total_reward(
            task="t2m", raw_output=VALID_T2M, caption=self.caption, reference=self.reference
        )
        assert breakdown.r_format == 1 and breakdown.flags == [], self.unit_test_msg.format(
            "total_reward"
        )
        assert breakdown.r_caption is None, self.unit_test_msg.format("total_reward")
        expected = 1.0 + breakdown.r_motion + breakdown.r_semantic
        assert abs(breakdown.total - expected) < 1e-12, self.unit_test_msg.format("total_reward")
        parsed = parse_output(output=VALID_T2M, task="t2m", vocab=self.vocab)
        decoded = scorer.decode_motion(parsed)
        assert parsed.motion_indices == [3, 7], self.unit_test_msg.format("decode_motion")
        assert decoded.shape == (8, 16), self.unit_test_msg.format("decode_motion")

        breakdown = scorer.total_reward(
            task="t2m",
            raw_output="<think>a</think><Motion></Motion>",
            caption=self.caption,
            reference=self.reference,
        )
        assert breakdown.flags == ["empty_motion"], self.unit_test_msg.format("total_reward")
        assert breakdown.r_motion == 0.0 and breakdown.total == 1.0, self.unit_test_msg.format(
            "total_reward"
        )

        breakdown = scorer.total_reward(
            task="t2m", raw_output="a person walks", caption=self.caption, reference=self.reference
        )
        assert breakdown.flags == ["invalid_format"], self.unit_test_msg.format("total_reward")
        assert breakdown.total == 0.0, self.unit_test_msg.format("total_reward")

    @pytest.mark.order(4)
    def test_total_reward_m2t(self):
        """
        Description
        -----------

        This method checks the m2t breakdown and the disabled terms.

        """

        scorer = RewardScorer(
            embedder=self.embedder,
            tokenizer=self.tokenizer,
            vocab=self.vocab,
            use_motion_reward=False,
        )
        breakdown = scorer.total_reward(task="m2t", raw_output=VALID_M2T, caption=self.caption)
        assert abs(breakdown.r_caption - 2.0) < 1e-9, self.unit_test_msg.format("total_reward")
        assert abs(breakdown.total - 3.0) < 1e-9, self.unit_test_msg.format("total_reward")

        breakdown = scorer.total_reward(
            task="m2t", raw_output="<think>a</think><Answer></Answer>", caption=self.caption
        )
        assert breakdown.flags == ["empty_caption"], self.unit_test_msg.format("total_reward")
        assert breakdown.total == 1.0, self.unit_test_msg.format("total_reward")

        # No reference clip is needed without the motion reward.
        breakdown = scorer.total_reward(task="t2m", raw_output=VALID_T2M, caption=self.caption)
        assert breakdown.r_motion is None, self.unit_test_msg.format("total_reward")
        assert "r_motion" not in breakdown.to_dict(), self.unit_test_msg.format("to_dict")

        with self.assertRaises(RewardsInterfaceError):
            scorer.total_reward(task="x2y", raw_output=VALID_M2T, caption=self.caption)

        scorer = RewardScorer(embedder=self.embedder, tokenizer=self.tokenizer, vocab=self.vocab)
        with self.assertRaises(RewardsInterfaceError):
            scorer.total_reward(task="t2m", raw_output=VALID_T2M, caption=self.caption)

    @pytest.mark.order(5)
    def test_score_policy(self):
        """
        Description
        -----------

        This method samples from an untrained policy and checks the
        per-sample rows.

        """

        root = os.path.join(WORKDIR, "dataset")
        gen_dataset(
            config=DatasetConfig.from_dict({"train": 4, "val": 3, "test": 2, "seed": 6}),
            out_dir=root,
        )
        dataset = Dataset.from_dir(root=root)
        (vocab, _) = build_vocab(records=dataset.records, num_motion=16)
        model = TinyLM(
            config=LMConfig.from_dict(
                {"d_model": 16, "num_heads": 2, "num_layers": 1, "d_ff": 32, "context": 64}
            ),
            vocab_size=len(vocab),
            rng=numpy.random.default_rng(1),
        )
        scorer = RewardScorer(embedder=self.embedder, tokenizer=self.tokenizer, vocab=vocab)
        for task in ("t2m", "m2t"):
            rows = score_policy(
                scorer=scorer, model=model, dataset=dataset, task=task, samples=2, max_new=16
            )
            assert [row["record"] for row in rows] == [
                record.id for record in dataset.split("val")[:2]
            ], self.unit_test_msg.format("score_policy")
            for row in rows:
                assert row["task"] == task and row["r_format"] in (0, 1), (
                    self.unit_test_msg.format("score_policy")
                )
                assert numpy.isfinite(row["total"]), self.unit_test_msg.format("score_policy")

        with self.assertRaises(RewardsInterfaceError):
            score_policy(scorer=scorer, model=model, dataset=dataset, task="x2y")

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
