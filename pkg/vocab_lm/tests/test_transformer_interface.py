# =========================================================================

# Module: vocab_lm/tests/test_transformer_interface.py

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

    test_transformer_interface.py

Description
-----------

    This module provides unit-tests for the causal language model and
    the token sampler.

Classes
-------

    TestTransformerMethods()

        This is the base-class object for all transformer_interface
        and sampling_interface unit-tests; it is a sub-class of
        TestCase.

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

from tensor.gradcheck_interface import grad_check_params
from tensor.tensor_interface import cross_entropy
from tools import fileio_interface
from utils.exceptions_interface import VocabInterfaceError
from vocab_lm.sampling_interface import sample, sample_many
from vocab_lm.transformer_interface import (
    LMConfig,
    TinyLM,
    expand_embeddings,
    load_policy,
    logprobs,
    save_policy,
)
from vocab_lm.vocab_interface import SPECIALS, Vocabulary

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

WORKDIR = tempfile.mkdtemp(prefix="unimo_policy_")

# ----


class TestTransformerMethods(TestCase):
    """
    Description
    -----------

    This is the base-class object for all transformer_interface and
    sampling_interface unit-tests; it is a sub-class of TestCase.

    """

    def setUp(self):
        """
        Description
        -----------

        This method defines the base-class attributes for all
        transformer_interface unit-tests.

        """

        # Define the base-class attributes.
        self.config = LMConfig.from_dict(
            {"d_model": 16, "num_heads": 2, "num_layers": 1, "d_ff": 32, "context": 32}
        )
        self.model = TinyLM(config=self.config, vocab_size=20, rng=numpy.random.default_rng(3))
        self.ids = numpy.array([[1, 5, 6, 7, 8], [1, 9, 9, 4, 2]])

        # Define the message to accompany any unit-test failures.
        self.unit_test_msg = "The unit-test for transformer_interface function {0} failed."

    @pytest.mark.order(1)
    def test_forward(self):
        """
        Description
        -----------

        This method checks the logits shape, the causal mask and the
        context limit.

        """

        logits = self.model(self.ids).values
        assert logits.shape == (2, 5, 20), self.unit_test_msg.format("TinyLM")

        perturbed = self.ids.copy()
        perturbed[:, 3] = 11
        changed = self.model(perturbed).values
        assert numpy.allclose(logits[:, :3], changed[:, :3]), self.unit_test_msg.format("TinyLM")
        assert not numpy.allclose(logits[:, 3:], changed[:, 3:]), self.unit_test_msg.format(
            "TinyLM"
        )

        with self.assertRaises(VocabInterfaceError):
            self.model(numpy.ones((1, 33), dtype=int))
        with self.assertRaises(VocabInterfaceError):
            LMConfig.from_dict({"d_model": 30, "num_heads": 4})

    @pytest.mark.order(2)
    def test_logprobs(self):
        """
        Description
        -----------

        This method checks the realized-token log-probabilities and the
        gradient of the language-model loss.

        """

        values = logprobs(model=self.model, ids=list(self.ids[0])).values
        assert values.shape == (4,), self.unit_test_msg.format("logprobs")
        logits = self.model(self.ids[:1, :-1]).values[0]
        shifted = logits - logits.max(axis=-1, keepdims=True)
        expected = shifted - numpy.log(numpy.exp(shifted).sum(axis=-1, keepdims=True))
        expected = expected[numpy.arange(4), self.ids[0, 1:]]
        assert numpy.allclose(values, expected), self.unit_test_msg.format("logprobs")
        assert logprobs(model=self.model, ids=self.ids).shape == (2, 4), (
            self.unit_test_msg.format("logprobs")
        )

        def loss_fn():
            return cross_entropy(self.model(self.ids[:, :-1]), self.ids[:, 1:])

        error = grad_check_params(loss_fn=loss_fn, params=self.model.parameters(), max_coords=3)
        assert error <= 1e-4, self.unit_test_msg.format("grad_check_params")

    @pytest.mark.order(3)
    def test_expand_embeddings(self):
        """
        Description
        -----------

        This method checks that new token rows start at the mean of the
        existing rows.

        """

        base = self.model.tok_emb.values.copy()
        head = self.model.head.weight.values.copy()
        expand_embeddings(model=self.model, num_new=4)
        assert self.model.vocab_size == 24, self.unit_test_msg.format("expand_embeddings")
        assert numpy.abs(self.model.tok_emb.values[20:] - base.mean(axis=0)).max() == 0.0, (
            self.unit_test_msg.format("expand_embeddings")
        )
        new_columns = self.model.head.weight.values[:, 20:].T
        assert numpy.abs(new_columns - head.mean(axis=1)).max() == 0.0, (
            self.unit_test_msg.format("expand_embeddings")
        )
        assert numpy.array_equal(self.model.tok_emb.values[:20], base), (
            self.unit_test_msg.format("expand_embeddings")
        )
        assert self.model(self.ids).shape == (2, 5, 24), self.unit_test_msg.format(
            "expand_embeddings"
        )

    @pytest.mark.order(4)
    def test_sample(self):
        """
        Description
        -----------

        This method checks greedy and seeded determinism and the banned
        ids.

        """

        prompt = [1, 5, 6]
        greedy = [
            sample(model=self.model, prompt=prompt, top_k=1, max_new=10, seed=seed)
            for seed in (0, 1)
        ]
        assert greedy[0] == greedy[1], self.unit_test_msg.format("sample")

        first = sample(model=self.model, prompt=prompt, max_new=10, seed=7)
        assert first == sample(model=self.model, prompt=prompt, max_new=10, seed=7), (
            self.unit_test_msg.format("sample")
        )

        completions = sample_many(model=self.model, prompt=prompt, seeds=range(16), max_new=12)
        for completion in completions:
            assert 1 <= len(completion) <= 12, self.unit_test_msg.format("sample_many")
            assert 0 not in completion and 1 not in completion, self.unit_test_msg.format(
                "sample_many"
            )
            assert 2 not in completion[:-1], self.unit_test_msg.format("sample_many")
        assert completions[7][: len(first)] == first, (
            self.unit_test_msg.format("sample_many")
        )

        # The completion stops at the context length.
        assert len(sample(model=self.model, prompt=[1] * 30, max_new=10)) <= 2, (
            self.unit_test_msg.format("sample")
        )

        with self.assertRaises(VocabInterfaceError):
            sample(model=self.model, prompt=prompt, temperature=0.0)
        with self.assertRaises(VocabInterfaceError):
            sample(model=self.model, prompt=prompt, top_k=0)

    @pytest.mark.order(5)
    def test_save_policy(self):
        """
        Description
        -----------

        This method checks that a saved policy reloads with identical
        outputs and its vocabulary.

        """

        vocab = Vocabulary(tokens=list(SPECIALS) + [f"w{index}" for index in range(16)])
        path = os.path.join(WORKDIR, "policy.mckp")
        meta = save_policy(model=self.model, vocab=vocab, path=path, config={"stage": "test"})
        assert meta["lm"]["d_model"] == 16, self.unit_test_msg.format("save_policy")

        (model, restored, _) = load_policy(path=path)
        assert restored.tokens == vocab.tokens, self.unit_test_msg.format("load_policy")
        assert numpy.array_equal(model(self.ids).values, self.model(self.ids).values), (
            self.unit_test_msg.format("load_policy")
        )

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
