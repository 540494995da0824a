# =========================================================================

# Module: confs/tests/test_yaml_interface.py

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

    test_yaml_interface.py

Description
-----------

    This module provides unit-tests for the respective yaml_interface
    module functions.

Classes
-------

    TestYAMLMethods()

        This is the base-class object for all yaml_interface
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

import pytest

from confs import yaml_interface
from tools import fileio_interface
from utils.exceptions_interface import YAMLInterfaceError

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

WORKDIR = tempfile.mkdtemp(prefix="unimo_yaml_")

# ----


class TestYAMLMethods(TestCase):
    """
    Description
    -----------

    This is the base-class object for all yaml_interface unit-tests;
    it is a sub-class of TestCase.

    """

    def setUp(self):
        """
        Description
        -----------

        This method defines the base-class attributes for all
        yaml_interface unit-tests.

        """

        # Define the base-class attributes.
        self.yaml_test_dict = {
            "seed": 2026,
            "output_dir": "runs/desk",
            "sft": {"epochs_phase1": 10, "lr_max": 0.0003, "use_cot": True},
            "eval": {"split": "test", "repeats": 3},
        }
        self.yaml_path = os.path.join(WORKDIR, "config.yaml")

        # Define the message to accompany any unit-test failures.
        self.unit_test_msg = "The unit-test for yaml_interface function {0} failed."

    def _write_text(self, name: str, text: str) -> str:
        path = os.path.join(WORKDIR, name)
        fileio_interface.write_bytes(path=path, payload=text.encode("utf-8"))
        return path

    @pytest.mark.order(1)
    def test_write_read(self):
        """
        Description
        -----------

        This method writes a configuration and reads it back both as a
        Python dictionary and as a Python object.

        """

        yaml = yaml_interface.YAML()
        yaml.write_yaml(yaml_file=self.yaml_path, in_dict=self.yaml_test_dict)
        assert yaml.read_yaml(yaml_file=self.yaml_path) == self.yaml_test_dict, (
            self.unit_test_msg.format("read_yaml")
        )

        yaml_obj = yaml.read_yaml(yaml_file=self.yaml_path, return_obj=True)
        assert yaml_obj.seed == 2026, self.unit_test_msg.format("read_yaml")
        assert yaml_obj.sft["lr_max"] == 0.0003, self.unit_test_msg.format("read_yaml")

    @pytest.mark.order(2)
    def test_constructors(self):
        """
        Description
        -----------

        This method checks the environment variable and file inclusion
        constructors.

        """

        os.environ["UNIMO_TEST_ROOT"] = WORKDIR
        include = self._write_text(name="eval.yaml", text="split: val\nrepeats: 1\n")
        path = self._write_text(
            name="constructors.yaml",
            text=f"output_dir: ${{UNIMO_TEST_ROOT}}/runs\neval: !INC {include}\n",
        )

        yaml_dict = yaml_interface.YAML().read_yaml(yaml_file=path)
        assert yaml_dict["output_dir"] == os.path.join(WORKDIR, "runs"), (
            self.unit_test_msg.format("envvar_constructor")
        )
        assert yaml_dict["eval"] == {"split": "val", "repeats": 1}, self.unit_test_msg.format(
            "include_constructor"
        )

    @pytest.mark.order(3)
    def test_read_errors(self):
        """
        Description
        -----------

        This method checks that missing files and non-mapping documents
        are rejected.

        """

        yaml = yaml_interface.YAML()
        with self.assertRaises(YAMLInterfaceError):
            yaml.read_yaml(yaml_file=os.path.join(WORKDIR, "missing.yaml"))

        path = self._write_text(name="list.yaml", text="- 1\n- 2\n")
        with self.assertRaises(YAMLInterfaceError):
            yaml.read_yaml(yaml_file=path)

        path = self._write_text(name="broken.yaml", text="sft: {lr_max: [\n")
        with self.assertRaises(YAMLInterfaceError):
            yaml.read_yaml(yaml_file=path)

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
