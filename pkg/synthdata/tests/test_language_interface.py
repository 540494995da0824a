# =========================================================================

# Module: synthdata/tests/test_language_interface.py

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

    test_language_interface.py

Description
-----------

    This module provides unit-tests for the respective
    language_interface module functions.

Classes
-------

    TestLanguageMethods()

        This is the base-class object for all language_interface
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

import pytest

from synthdata.language_interface import (
    closed_vocabulary,
    detokenize,
    recover_primitives,
    render_caption,
    render_cot,
    split_words,
    word_counts,
)
from synthdata.primitives_interface import Primitive, PrimitiveTrace

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----


class TestLanguageMethods(TestCase):
    """
    Description
    -----------

    This is the base-class object for all language_interface
    unit-tests; it is a sub-class of TestCase.

    """

    def setUp(self):
        """
        Description
        -----------

        This method defines the base-class attributes for all
        language_interface unit-tests.

        """

        # Define the base-class attributes.
        self.walk = PrimitiveTrace(
            primitives=[Primitive(name="walk", params={"steps": 2}, duration_frames=32)]
        )
        self.wave = PrimitiveTrace(primitives=[Primitive(name="wave", duration_frames=16)])
        self.chain = PrimitiveTrace(
            primitives=[
                Primitive(name="walk", params={"steps": 2}, duration_frames=32),
                Primitive(name="squat", params={"depth": 0.4}, duration_frames=16),
                Primitive(name="stand", duration_frames=8),
            ]
        )

        # Define the message to accompany any unit-test failures.
        self.unit_test_msg = "The unit-test for language_interface function {0} failed."

    @pytest.mark.order(1)
    def test_render_caption(self):
        """
        Description
        -----------

        This method checks the caption templates and the clause
        joining.

        """

        assert render_caption(trace=self.walk, seed=0) == "a person walks forward", (
            self.unit_test_msg.format("render_caption")
        )
        assert render_caption(trace=self.walk, seed=4) == "a person walks ahead", (
            self.unit_test_msg.format("render_caption")
        )
        expected = "a person walks forward, does a squat and then remains still"
        assert render_caption(trace=self.chain, seed=0) == expected, (
            self.unit_test_msg.format("render_caption")
        )

    @pytest.mark.order(2)
    def test_render_cot(self):
        """
        Description
        -----------

        This method checks the CoT sentences and connectors.

        """

        expected = "First, the person raises the right arm and waves."
        assert render_cot(trace=self.wave, seed=0) == expected, self.unit_test_msg.format(
            "render_cot"
        )

        expected = (
            "First, the person walks forward for two steps while swinging the arms. "
            "Next, the person bends the knees into a deep squat and rises back up. "
            "Finally, the person stands still with the arms relaxed."
        )
        assert render_cot(trace=self.chain, seed=0) == expected, self.unit_test_msg.format(
            "render_cot"
        )
        assert "Then, the person bends" in render_cot(trace=self.chain, seed=1), (
            self.unit_test_msg.format("render_cot")
        )

    @pytest.mark.order(3)
    def test_recover_primitives(self):
        """
        Description
        -----------

        This method checks that the primitive order is recoverable
        from both the caption and the CoT for every template seed.

        """

        for seed in range(3):
            for trace in (self.walk, self.wave, self.chain):
                caption = render_caption(trace=trace, seed=seed)
                cot = render_cot(trace=trace, seed=seed)
                assert recover_primitives(text=caption) == trace.names, (
                    self.unit_test_msg.format("recover_primitives")
                )
                assert recover_primitives(text=cot) == trace.names, (
                    self.unit_test_msg.format("recover_primitives")
                )

    @pytest.mark.order(4)
    def test_words(self):
        """
        Description
        -----------

        This method checks the word splitting, detokenization,
        counting and the closed vocabulary.

        """

        text = "First, the person turns the body around in place."
        words = split_words(text=text)
        assert words[:2] == ["First", ","], self.unit_test_msg.format("split_words")
        assert words[-1] == ".", self.unit_test_msg.format("split_words")
        assert detokenize(words=words) == text, self.unit_test_msg.format("detokenize")

        counts = word_counts(texts=["a person jumps up", "a person squats down"])
        assert counts["person"] == 2 and counts["jumps"] == 1, self.unit_test_msg.format(
            "word_counts"
        )

        vocabulary = closed_vocabulary()
        for seed in range(3):
            for trace in (self.walk, self.wave, self.chain):
                for text in (render_caption(trace, seed), render_cot(trace, seed)):
                    assert set(split_words(text=text)) <= vocabulary, (
                        self.unit_test_msg.format("closed_vocabulary")
                    )


# ----
if __name__ == "__main__":
    unittest.main()
