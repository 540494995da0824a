# =========================================================================

# Module: tokenizer_vq/tests/test_codebook_interface.py

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

    test_codebook_interface.py

Description
-----------

    This module provides unit-tests for the respective
    codebook_interface module functions.

Classes
-------

    TestCodebookMethods()

        This is the base-class object for all codebook_interface
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

import unittest
from unittest import TestCase

import numpy
import pytest

from tokenizer_vq.codebook_interface import (
    Codebook,
    ema_update,
    init_codebook,
    perplexity,
    quantize_latents,
    reset_dead_codes,
)
from utils.exceptions_interface import TokenizerInterfaceError

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----


class TestCodebookMethods(TestCase):
    """
    Description
    -----------

    This is the base-class object for all codebook_interface
    unit-tests; it is a sub-class of TestCase.

    """

    def setUp(self):
        """
        Description
        -----------

        This method defines the base-class attributes for all
        codebook_interface unit-tests.

        """

        # Define the base-class attributes.
        self.rng = numpy.random.default_rng(0)
        self.codes = numpy.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])

        # Define the message to accompany any unit-test failures.
        self.unit_test_msg = "The unit-test for codebook_interface function {0} failed."

    def _codebook(self) -> Codebook:
        codebook = Codebook.create(num_codes=3, dim=2, rng=self.rng, reset_window=2)
        codebook.codes = self.codes.copy()
        codebook.ema_sums = self.codes.copy()

        return codebook

    @pytest.mark.order(1)
    def test_quantize_latents(self):
        """
        Description
        -----------

        This method checks nearest-code assignment and the lowest
        index tie break.

        """

        latents = numpy.array([[0.9, 0.1], [0.5, 0.0], [0.5, 0.5], [0.1, 2.0]])
        (indices, quantized) = quantize_latents(latents=latents, codes=self.codes)
        assert indices.tolist() == [1, 0, 0, 2], self.unit_test_msg.format("quantize_latents")
        assert numpy.array_equal(quantized, self.codes[indices]), self.unit_test_msg.format(
            "quantize_latents"
        )

        with self.assertRaises(TokenizerInterfaceError):
            quantize_latents(latents=numpy.zeros((2, 3)), codes=self.codes)

    @pytest.mark.order(2)
    def test_ema_update(self):
        """
        Description
        -----------

        This method checks that only the assigned code moves, that
        the usage counter accumulates and that mismatched or out of
        range indices are rejected before any update.

        """

        codebook = self._codebook()
        latents = numpy.array([[0.2, 0.2], [0.4, 0.0]])
        counts = ema_update(codebook=codebook, latents=latents, indices=numpy.array([0, 0]))
        assert counts.tolist() == [2.0, 0.0, 0.0], self.unit_test_msg.format("ema_update")
        assert not numpy.allclose(codebook.codes[0], self.codes[0]), self.unit_test_msg.format(
            "ema_update"
        )
        assert numpy.allclose(codebook.codes[1:], self.codes[1:], atol=1e-5), (
            self.unit_test_msg.format("ema_update")
        )
        assert numpy.allclose(codebook.ema_counts[1:], 0.99), self.unit_test_msg.format(
            "ema_update"
        )
        assert codebook.usage.tolist() == [2, 0, 0], self.unit_test_msg.format("ema_update")

        with self.assertRaises(TokenizerInterfaceError):
            ema_update(codebook=codebook, latents=numpy.zeros((0, 2)), indices=numpy.array([]))

        codes = codebook.codes.copy()
        for indices in (numpy.array([0, 3]), numpy.array([-1, 0]), numpy.array([0])):
            with self.assertRaises(TokenizerInterfaceError):
                ema_update(codebook=codebook, latents=latents, indices=indices)
        with self.assertRaises(TokenizerInterfaceError):
            ema_update(codebook=codebook, latents=latents, indices=numpy.array([0.0, 1.0]))
        with self.assertRaises(TokenizerInterfaceError) as context:
            ema_update(codebook=codebook, latents=latents, indices=numpy.array([1, 7]))
        assert "index 7 at position 1" in context.exception.msg, self.unit_test_msg.format(
            "ema_update"
        )
        assert numpy.array_equal(codebook.codes, codes), self.unit_test_msg.format("ema_update")
        assert codebook.usage.tolist() == [2, 0, 0], self.unit_test_msg.format("ema_update")

    @pytest.mark.order(3)
    def test_reset_dead_codes(self):
        """
        Description
        -----------

        This method checks that unused codes are replaced by batch
        latents once the usage window completes.

        """

        codebook = self._codebook()
        latents = numpy.full((4, 2), 5.0)
        ema_update(codebook=codebook, latents=latents[:1], indices=numpy.array([0]))
        assert reset_dead_codes(codebook=codebook, latents=latents, rng=self.rng) == 0, (
            self.unit_test_msg.format("reset_dead_codes")
        )
        assert reset_dead_codes(codebook=codebook, latents=latents, rng=self.rng) == 2, (
            self.unit_test_msg.format("reset_dead_codes")
        )
        assert numpy.array_equal(codebook.codes[1:], latents[:2]), self.unit_test_msg.format(
            "reset_dead_codes"
        )
        assert codebook.usage.sum() == 0 and codebook.window_step == 0, (
            self.unit_test_msg.format("reset_dead_codes")
        )

    @pytest.mark.order(4)
    def test_init_codebook(self):
        """
        Description
        -----------

        This method checks that a small first batch is tiled to cover
        every code.

        """

        codebook = Codebook.create(num_codes=8, dim=2, rng=self.rng)
        init_codebook(codebook=codebook, latents=self.codes, rng=self.rng)
        assert codebook.initialized, self.unit_test_msg.format("init_codebook")
        assert codebook.codes.shape == (8, 2), self.unit_test_msg.format("init_codebook")
        assert numpy.abs(codebook.codes[:3] - self.codes).max() < 0.1, (
            self.unit_test_msg.format("init_codebook")
        )

    @pytest.mark.order(5)
    def test_perplexity(self):
        """
        Description
        -----------

        This method checks the perplexity of uniform and degenerate
        code usage.

        """

        assert abs(perplexity(indices=numpy.arange(8), num_codes=8) - 8.0) < 1e-9, (
            self.unit_test_msg.format("perplexity")
        )
        assert perplexity(indices=numpy.zeros(10, dtype=int), num_codes=8) == 1.0, (
            self.unit_test_msg.format("perplexity")
        )
        assert perplexity(indices=numpy.array([], dtype=int), num_codes=8) == 0.0, (
            self.unit_test_msg.format("perplexity")
        )


# ----
if __name__ == "__main__":
    unittest.main()
