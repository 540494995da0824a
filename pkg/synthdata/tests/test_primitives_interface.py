# =========================================================================

# Module: synthdata/tests/test_primitives_interface.py

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

    test_primitives_interface.py

Description
-----------

    This module provides unit-tests for the respective
    primitives_interface and skeleton_interface module functions.

Classes
-------

    TestPrimitivesMethods()

        This is the base-class object for all primitives_interface
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

from synthdata.primitives_interface import (
    JITTER_SIGMA,
    Primitive,
    PrimitiveTrace,
    gen_clip,
    validate_trace,
)
from synthdata.skeleton_interface import BONE_LENGTHS, BONES, FRAME_DIM, bone_lengths, template_pose
from utils.exceptions_interface import SynthDataInterfaceError

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----


class TestPrimitivesMethods(TestCase):
    """
    Description
    -----------

    This is the base-class object for all primitives_interface
    unit-tests; it is a sub-class of TestCase.

    """

    def setUp(self):
        """
        Description
        -----------

        This method defines the base-class attributes for all
        primitives_interface unit-tests.

        """

        self.stand = PrimitiveTrace(primitives=[Primitive(name="stand", duration_frames=16)])
        self.walk = PrimitiveTrace(
            primitives=[Primitive(name="walk", params={"steps": 2}, duration_frames=32)]
        )
        self.mixed = PrimitiveTrace(
            primitives=[
                Primitive(name="wave", duration_frames=16),
                Primitive(name="squat", params={"depth": 0.4}, duration_frames=20),
                Primitive(name="jump", params={"repeats": 2}, duration_frames=12),
            ]
        )

        # Define the message to accompany any unit-test failures.
        self.unit_test_msg = "The unit-test for primitives_interface function {0} failed."

    @pytest.mark.order(1)
    def test_gen_clip_stand(self):
        """
        Description
        -----------

        This method checks that a stand clip is the template pose plus
        a bounded rigid jitter.

        """

        clip = gen_clip(trace=self.stand, seed=0)
        assert clip.frames.shape == (16, FRAME_DIM), self.unit_test_msg.format("gen_clip")
        deviation = numpy.abs(clip.frames - template_pose()[None, :])
        assert deviation.max() <= 3.0 * JITTER_SIGMA + 1e-9, self.unit_test_msg.format(
            "gen_clip"
        )
        assert numpy.allclose(clip.frames, clip.frames[0]), self.unit_test_msg.format("gen_clip")

    @pytest.mark.order(2)
    def test_gen_clip_walk(self):
        """
        Description
        -----------

        This method checks that the root advances strictly during a
        walk.

        """

        clip = gen_clip(trace=self.walk, seed=1)
        root_x = clip.frames[:, 0]
        assert numpy.all(numpy.diff(root_x) > 0.0), self.unit_test_msg.format("gen_clip")

    @pytest.mark.order(3)
    def test_gen_clip_invariants(self):
        """
        Description
        -----------

        This method checks determinism, the frame count and the bone
        lengths of a multi-primitive clip.

        """

        first = gen_clip(trace=self.mixed, seed=5)
        second = gen_clip(trace=self.mixed, seed=5)
        assert numpy.array_equal(first.frames, second.frames), self.unit_test_msg.format(
            "gen_clip"
        )
        assert first.num_frames == 48, self.unit_test_msg.format("gen_clip")
        expected = numpy.array([BONE_LENGTHS[child] for (_, child) in BONES])
        assert numpy.abs(bone_lengths(first.frames) - expected).max() < 1e-6, (
            self.unit_test_msg.format("bone_lengths")
        )
        assert numpy.abs(first.frames).max() <= 10.0, self.unit_test_msg.format("gen_clip")

    @pytest.mark.order(4)
    def test_validate_trace(self):
        """
        Description
        -----------

        This method checks that defaults are filled in and invalid
        fields are rejected by name.

        """

        trace = validate_trace(trace=self.mixed)
        assert trace.primitives[0].params == {"repeats": 2, "amplitude": 0.5}, (
            self.unit_test_msg.format("validate_trace")
        )

        cases = {
            "dance": PrimitiveTrace(primitives=[Primitive(name="dance")]),
            "steps": PrimitiveTrace(
                primitives=[Primitive(name="walk", params={"steps": 9}, duration_frames=16)]
            ),
            "duration_frames": PrimitiveTrace(
                primitives=[Primitive(name="stand", duration_frames=10)]
            ),
            "primitives": PrimitiveTrace(primitives=[]),
        }
        for (field_name, bad_trace) in cases.items():
            with self.assertRaises(SynthDataInterfaceError) as context:
                validate_trace(trace=bad_trace)
            assert field_name in str(context.exception), self.unit_test_msg.format(
                "validate_trace"
            )


# ----
if __name__ == "__main__":
    unittest.main()
