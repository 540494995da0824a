# =========================================================================

# Module: tensor/tests/test_optim_interface.py

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

    test_optim_interface.py

Description
-----------

    This module provides unit-tests for the respective optim_interface
    module functions.

Classes
-------

    TestOptimMethods()

        This is the base-class object for all optim_interface
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

from tensor.optim_interface import (
    OptimizerState,
    adam_step,
    clip_global_norm,
    collect_grads,
    cosine_lr,
    global_norm,
)
from tensor.tensor_interface import Tensor, tsum
from utils.exceptions_interface import TensorInterfaceError

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----


class TestOptimMethods(TestCase):
    """
    Description
    -----------

    This is the base-class object for all optim_interface unit-tests;
    it is a sub-class of TestCase.

    """

    def setUp(self):
        """
        Description
        -----------

        This method defines the base-class attributes for all
        optim_interface unit-tests.

        """

        # Define the message to accompany any unit-test failures.
        self.unit_test_msg = "The unit-test for optim_interface function {0} failed."

    @pytest.mark.order(1)
    def test_cosine_lr(self):
        """
        Description
        -----------

        This method checks the end points and the midpoint of the
        cosine schedule.

        """

        assert cosine_lr(step=0, total=1000, lr_max=1e-4, lr_min=0.0) == 1e-4, (
            self.unit_test_msg.format("cosine_lr")
        )
        assert abs(cosine_lr(step=500, total=1000, lr_max=1e-4, lr_min=0.0) - 5e-5) < 1e-15, (
            self.unit_test_msg.format("cosine_lr")
        )
        assert cosine_lr(step=1000, total=1000, lr_max=1e-4, lr_min=1e-6) == 1e-6, (
            self.unit_test_msg.format("cosine_lr")
        )

        with self.assertRaises(TensorInterfaceError):
            cosine_lr(step=11, total=10, lr_max=1e-4, lr_min=0.0)

    @pytest.mark.order(2)
    def test_clip_global_norm(self):
        """
        Description
        -----------

        This method checks that gradients within the bound are kept and
        larger gradients are rescaled to the bound.

        """

        small = {"weight": numpy.array([0.03, 0.04])}
        assert clip_global_norm(grads=small, max_norm=0.1) is small, (
            self.unit_test_msg.format("clip_global_norm")
        )

        large = {"weight": numpy.array([0.6, 0.0]), "bias": numpy.array([0.8])}
        clipped = clip_global_norm(grads=large, max_norm=0.1)
        assert abs(global_norm(grads=clipped) - 0.1) < 1e-12, self.unit_test_msg.format(
            "clip_global_norm"
        )
        assert numpy.allclose(clipped["weight"], [0.06, 0.0]), self.unit_test_msg.format(
            "clip_global_norm"
        )

        with self.assertRaises(TensorInterfaceError):
            clip_global_norm(grads=large, max_norm=0.0)

    @pytest.mark.order(3)
    def test_adam_step(self):
        """
        Description
        -----------

        This method checks the first bias-corrected update and that a
        quadratic is driven towards its minimum.

        """

        params = {"x": Tensor(numpy.array([1.0, -1.0]), requires_grad=True)}
        state = OptimizerState()
        adam_step(params=params, grads={"x": numpy.array([0.5, -2.0])}, state=state, lr=0.1)
        # The first update moves every coordinate by lr against its sign.
        assert numpy.allclose(params["x"].values, [0.9, -0.9], atol=1e-6), (
            self.unit_test_msg.format("adam_step")
        )
        assert state.step == 1, self.unit_test_msg.format("adam_step")

        for step in range(200):
            params["x"].zero_grad()
            tsum(params["x"] * params["x"]).backward()
            lr = cosine_lr(step=step, total=200, lr_max=0.05, lr_min=0.0)
            adam_step(params=params, grads=collect_grads(params), state=state, lr=lr)
        assert numpy.abs(params["x"].values).max() < 0.05, self.unit_test_msg.format(
            "adam_step"
        )

        frozen = {"x": Tensor(numpy.zeros(2))}
        assert collect_grads(frozen) == {}, self.unit_test_msg.format("collect_grads")

        with self.assertRaises(TensorInterfaceError):
            adam_step(params=params, grads={"x": numpy.zeros(3)}, state=state, lr=0.1)


# ----
if __name__ == "__main__":
    unittest.main()
