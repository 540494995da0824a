# =========================================================================

# Module: utils/tests/test_arguments_interface.py

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

    test_arguments_interface.py

Description
-----------

    This module provides unit-tests for the respective
    arguments_interface module functions.

Classes
-------

    TestArgumentsMethods()

        This is the base-class object for all arguments_interface
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

from utils.arguments_interface import Arguments, config_overrides
from utils.exceptions_interface import ArgumentsInterfaceError

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----


class TestArgumentsMethods(TestCase):
    """
    Description
    -----------

    This is the base-class object for all arguments_interface
    unit-tests; it is a sub-class of TestCase.

    """

    def setUp(self):
        """
        Description
        -----------

        This method defines the base-class attributes for all
        arguments_interface unit-tests.

        """

        # Define the base-class attributes.
        self.argv = [
            "train",
            "sft",
            "--config",
            "desk.yaml",
            "--set",
            "sft.lr_max=0.001",
            "--set",
            "sft.model.num_layers=2",
            "--seed",
            "3",
            "--force",
        ]

        # Define the message to accompany any unit-test failures.
        self.unit_test_msg = "The unit-test for arguments_interface function {0} failed."

    @pytest.mark.order(1)
    def test_config_overrides(self):
        """
        Description
        -----------

        This method checks the nested and typed override dictionary.

        """

        overrides = config_overrides(
            assignments=["sft.lr_max=0.001", "sft.use_cot=false", "eval.split = val", "seed=9"]
        )
        assert overrides == {
            "sft": {"lr_max": 0.001, "use_cot": False},
            "eval": {"split": "val"},
            "seed": 9,
        }, self.unit_test_msg.format("config_overrides")
        assert config_overrides(assignments=None) == {}, self.unit_test_msg.format(
            "config_overrides"
        )

        for assignment in ("sft.lr_max", "=3"):
            with self.assertRaises(ArgumentsInterfaceError):
                config_overrides(assignments=[assignment])

    @pytest.mark.order(2)
    def test_run(self):
        """
        Description
        -----------

        This method checks the parsed command line attributes.

        """

        options_obj = Arguments().run(argv=self.argv)
        assert (options_obj.command, options_obj.action) == ("train", "sft"), (
            self.unit_test_msg.format("run")
        )
        assert options_obj.seed == 3 and options_obj.force, self.unit_test_msg.format("run")
        assert options_obj.config == "desk.yaml", self.unit_test_msg.format("run")
        assert options_obj.overrides == {"sft": {"lr_max": 0.001, "model": {"num_layers": 2}}}, (
            self.unit_test_msg.format("run")
        )

        options_obj = Arguments().run(argv=["pipeline", "run"])
        assert options_obj.seed is None and not options_obj.force, self.unit_test_msg.format(
            "run"
        )
        assert options_obj.overrides == {}, self.unit_test_msg.format("run")

    @pytest.mark.order(3)
    def test_run_errors(self):
        """
        Description
        -----------

        This method checks that unpaired arguments and schema failures
        are rejected.

        """

        with self.assertRaises(ArgumentsInterfaceError):
            Arguments().run(argv=["train", "sft", "--config"])

        options_obj = Arguments().run(
            argv=["train", "sft", "--steps", "10"], eval_schema=True, cls_schema={"steps": int}
        )
        assert options_obj.steps == "10", self.unit_test_msg.format("run")
        with self.assertRaises(ArgumentsInterfaceError):
            Arguments().run(
                argv=["train", "sft", "--steps", "ten"],
                eval_schema=True,
                cls_schema={"steps": int},
            )


# ----
if __name__ == "__main__":
    unittest.main()
