# =========================================================================

# Module: synthdata/tests/test_dataset_interface.py

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

    test_dataset_interface.py

Description
-----------

    This module provides unit-tests for the respective
    dataset_interface module functions.

Classes
-------

    TestDatasetMethods()

        This is the base-class object for all dataset_interface
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

from synthdata.dataset_interface import (
    MANIFEST,
    Dataset,
    DatasetConfig,
    dataset_stats,
    gen_dataset,
)
from synthdata.language_interface import recover_primitives
from synthdata.primitives_interface import PRIMITIVES, gen_clip
from tools import fileio_interface
from utils.exceptions_interface import DatasetInterfaceError

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

WORKDIR = tempfile.mkdtemp(prefix="unimo_dataset_")

# ----


class TestDatasetMethods(TestCase):
    """
    Description
    -----------

    This is the base-class object for all dataset_interface
    unit-tests; it is a sub-class of TestCase.

    """

    def setUp(self):
        """
        Description
        -----------

        This method defines the base-class attributes for all
        dataset_interface unit-tests.

        """

        # Define the base-class attributes.
        self.config = DatasetConfig.from_dict({"train": 10, "val": 4, "test": 8, "seed": 3})
        self.serial_dir = os.path.join(WORKDIR, "serial")
        self.pooled_dir = os.path.join(WORKDIR, "pooled")

        # Define the message to accompany any unit-test failures.
        self.unit_test_msg = "The unit-test for dataset_interface function {0} failed."

    @pytest.mark.order(1)
    def test_gen_dataset(self):
        """
        Description
        -----------

        This method generates a small dataset and checks the record
        layout and the caption/trace agreement.

        """

        dataset = gen_dataset(config=self.config, out_dir=self.serial_dir)
        assert len(dataset.records) == 22, self.unit_test_msg.format("gen_dataset")
        assert [record.id for record in dataset.split("val")] == [
            "val-00000",
            "val-00001",
            "val-00002",
            "val-00003",
        ], self.unit_test_msg.format("gen_dataset")

        for record in dataset.records:
            assert 2 <= len(record.trace.primitives) <= 3, self.unit_test_msg.format(
                "gen_dataset"
            )
            assert recover_primitives(text=record.caption) == record.trace.names, (
                self.unit_test_msg.format("gen_dataset")
            )
            assert record.num_frames == record.trace.num_frames, self.unit_test_msg.format(
                "gen_dataset"
            )

        # Every primitive opens a train record once the split is long enough.
        firsts = {record.trace.names[0] for record in dataset.split("train")}
        assert firsts == set(PRIMITIVES), self.unit_test_msg.format("gen_dataset")

    @pytest.mark.order(2)
    def test_from_dir(self):
        """
        Description
        -----------

        This method reloads the dataset and checks that the stored
        clips match a regeneration from the traces.

        """

        dataset = Dataset.from_dir(root=self.serial_dir)
        assert len(dataset.records) == 22, self.unit_test_msg.format("from_dir")
        record = dataset.split("test")[0]
        clip = dataset.load_clip(record=record)
        assert clip.frames.shape == (record.num_frames, 16), self.unit_test_msg.format(
            "load_clip"
        )
        assert clip.fps == 16, self.unit_test_msg.format("load_clip")
        assert numpy.isfinite(clip.frames).all(), self.unit_test_msg.format("load_clip")
        assert gen_clip(trace=record.trace, seed=0).num_frames == record.num_frames, (
            self.unit_test_msg.format("load_clip")
        )

        with self.assertRaises(DatasetInterfaceError):
            Dataset.from_dir(root=os.path.join(WORKDIR, "missing"))
        with self.assertRaises(DatasetInterfaceError):
            Dataset(root=self.serial_dir).split("train")

    @pytest.mark.order(3)
    def test_worker_determinism(self):
        """
        Description
        -----------

        This method checks that the dataset bytes do not depend on the
        number of worker processes.

        """

        pooled = DatasetConfig.from_dict(
            {"train": 10, "val": 4, "test": 8, "seed": 3, "workers": 2}
        )
        gen_dataset(config=pooled, out_dir=self.pooled_dir)

        for name in (MANIFEST, "dataset.meta.json", os.path.join("clips", "train-00007.mofr")):
            serial = fileio_interface.read_bytes(path=os.path.join(self.serial_dir, name))
            parallel = fileio_interface.read_bytes(path=os.path.join(self.pooled_dir, name))
            assert serial == parallel, self.unit_test_msg.format("gen_dataset")

    @pytest.mark.order(4)
    def test_dataset_stats(self):
        """
        Description
        -----------

        This method checks the per-split corpus statistics.

        """

        stats = dataset_stats(dataset=Dataset.from_dir(root=self.serial_dir))
        assert sorted(stats) == ["test", "train", "val"], self.unit_test_msg.format(
            "dataset_stats"
        )
        assert stats["val"]["records"] == 4, self.unit_test_msg.format("dataset_stats")
        assert stats["train"]["cot_tokens_mean"] > stats["train"]["caption_tokens_mean"], (
            self.unit_test_msg.format("dataset_stats")
        )
        assert sum(stats["test"]["primitive_counts"].values()) >= 16, (
            self.unit_test_msg.format("dataset_stats")
        )

    @pytest.mark.order(100)
    def test_cleanup(self):
        """
        Description
        -----------

        This method removes the dataset directories written by the
        unit-tests.

        """

        fileio_interface.rmdir(path=WORKDIR)


# ----
if __name__ == "__main__":
    unittest.main()
