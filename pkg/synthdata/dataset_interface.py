# =========================================================================

# Module: synthdata/dataset_interface.py

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

    dataset_interface.py

Description
-----------

    This module generates, loads and summarizes the synthetic
    motion-language dataset.

    A dataset directory holds `manifest.jsonl` (one canonical JSON
    record per line: id, split, caption, cot, trace, clip, num_frames,
    fps), `clips/<id>.mofr` motion blobs, and `dataset.meta.json`
    (the generating configuration and its hash).

Classes
-------

    Dataset(root, records)

        This is the base-class object for a loaded dataset.

    DatasetConfig(train, val, test, seed, workers)

        This is the base-class object for the dataset generation
        configuration.

    DatasetRecord(...)

        This is the base-class object for a single manifest record.

Functions
---------

    dataset_stats(dataset)

        This function returns the per-split caption and CoT corpus
        statistics.

    gen_dataset(config, out_dir)

        This function generates the dataset files.

    gen_record(split, index, global_index, seed)

        This function generates a single record and its motion blob.

    sample_trace(rng, first)

        This function samples a random primitive trace.

Requirements
------------

- numpy; https://numpy.org/

- schema; https://github.com/keleshev/schema

Author(s)
---------

    unimo_pyutils developers; 02 March 2026

History
-------

    2026-03-02: Initial implementation.

"""

# ----

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Tuple

import numpy
from schema import And, Optional

from confs import json_interface
from ioapps import hashlib_interface, motion_interface
from synthdata.language_interface import render_caption, render_cot, split_words
from synthdata.primitives_interface import (
    DURATION_MULTIPLE,
    PARAM_TABLE,
    PRIMITIVES,
    MotionClip,
    Primitive,
    PrimitiveTrace,
    gen_clip,
)
from tools import fileio_interface
from utils import schema_interface
from utils.error_interface import Error
from utils.exceptions_interface import DatasetInterfaceError
from utils.logger_interface import Logger

# ----

# Define all available attributes.
__all__ = [
    "SPLITS",
    "Dataset",
    "DatasetConfig",
    "DatasetRecord",
    "dataset_stats",
    "gen_dataset",
    "gen_record",
    "sample_trace",
]

# ----

logger = Logger()

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

SPLITS = ("train", "val", "test")

MANIFEST = "manifest.jsonl"

META = "dataset.meta.json"

# Per-primitive durations; three of the longest stay within 64 frames.
DURATION_CHOICES = tuple(DURATION_MULTIPLE * k for k in (2, 3, 4, 5))

DATASET_SCHEMA = {
    Optional("train", default=512): And(int, lambda value: value >= 1),
    Optional("val", default=64): And(int, lambda value: value >= 1),
    Optional("test", default=128): And(int, lambda value: value >= 1),
    Optional("seed", default=7): int,
    Optional("workers", default=1): And(int, lambda value: value >= 1),
}

# ----


@dataclass
class DatasetConfig:
    """
    Description
    -----------

    This is the base-class object for the dataset generation
    configuration; the record counts are per split.

    """

    train: int = 512
    val: int = 64
    test: int = 128
    seed: int = 7
    workers: int = 1

    @classmethod
    def from_dict(cls, opts: Dict = None) -> "DatasetConfig":
        """Build a validated configuration from a section dictionary."""

        return cls(**schema_interface.validate_opts(DATASET_SCHEMA, dict(opts or {})))

    def counts(self) -> Dict[str, int]:
        """Return the record count per split."""

        return {"train": self.train, "val": self.val, "test": self.test}

    def identity(self) -> Dict:
        """Return the fields that determine the dataset bytes."""

        return {key: value for key, value in asdict(self).items() if key != "workers"}


# ----


@dataclass
class DatasetRecord:
    """
    Description
    -----------

    This is the base-class object for a single manifest record; clip
    is the blob path relative to the dataset root.

    """

    id: str
    split: str
    caption: str
    cot: str
    trace: PrimitiveTrace
    clip: str
    num_frames: int
    fps: int

    @classmethod
    def from_dict(cls, record: Dict) -> "DatasetRecord":
        """Build a record from its manifest form."""

        return cls(
            id=record["id"],
            split=record["split"],
            caption=record["caption"],
            cot=record["cot"],
            trace=PrimitiveTrace.from_dict(record["trace"]),
            clip=record["clip"],
            num_frames=int(record["num_frames"]),
            fps=int(record["fps"]),
        )

    def to_dict(self) -> Dict:
        """Return the manifest form of the record."""

        return {
            "id": self.id,
            "split": self.split,
            "caption": self.caption,
            "cot": self.cot,
            "trace": self.trace.to_dict(),
            "clip": self.clip,
            "num_frames": self.num_frames,
            "fps": self.fps,
        }


# ----


@dataclass
class Dataset:
    """
    Description
    -----------

    This is the base-class object for a loaded dataset; motion blobs
    are read on demand and cached.

    """

    root: str
    records: List[DatasetRecord] = field(default_factory=list)
    _cache: Dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_dir(cls, root: str) -> "Dataset":
        """
        Description
        -----------

        This method loads the manifest of a dataset directory.

        Raises
        ------

        DatasetInterfaceError:

            * raised if the manifest cannot be read.

        """

        path = os.path.join(root, MANIFEST)
        if not fileio_interface.fileexist(path=path):
            msg = f"The dataset manifest {path} does not exist. Aborting!!!"
            raise DatasetInterfaceError(msg=msg)

        records = [
            DatasetRecord.from_dict(record)
            for record in json_interface.read_ndjson(ndjson_file=path)
        ]

        return cls(root=root, records=records)

    def load_clip(self, record: DatasetRecord) -> MotionClip:
        """
        Description
        -----------

        This method returns the motion clip of a record.

        """

        if record.id not in self._cache:
            (frames, fps) = motion_interface.read_motion(
                path=os.path.join(self.root, record.clip)
            )
            self._cache[record.id] = MotionClip(frames=frames, fps=fps, trace=record.trace)

        return self._cache[record.id]

    def split(self, name: str) -> List[DatasetRecord]:
        """
        Description
        -----------

        This method returns the records of a split.

        Raises
        ------

        DatasetInterfaceError:

            * raised if the split holds no records.

        """

        records = [record for record in self.records if record.split == name]
        if not records:
            msg = f"The dataset {self.root} has no records in split {name}. Aborting!!!"
            raise DatasetInterfaceError(msg=msg)

        return records


# ----


def sample_trace(rng: numpy.random.Generator, first: str) -> PrimitiveTrace:
    """
    Description
    -----------

    This function samples a random primitive trace of 2 or 3
    primitives starting with the primitive named upon entry; every
    duration is drawn from DURATION_CHOICES and every parameter
    uniformly within its documented range (rounded to 3 decimals).

    Parameters
    ----------

    rng: numpy.random.Generator

        A Python numpy random generator.

    first: str

        A Python string naming the first primitive.

    Returns
    -------

    trace: PrimitiveTrace

        A Python PrimitiveTrace object.

    """

    count = int(rng.integers(2, 4))
    names = [first] + [PRIMITIVES[int(rng.integers(len(PRIMITIVES)))] for _ in range(count - 1)]

    primitives = []
    for name in names:
        params = {}
        for key, spec in PARAM_TABLE[name].items():
            if spec.integer:
                params[key] = int(rng.integers(int(spec.low), int(spec.high) + 1))
            else:
                params[key] = round(float(rng.uniform(spec.low, spec.high)), 3)
        duration = int(DURATION_CHOICES[int(rng.integers(len(DURATION_CHOICES)))])
        primitives.append(Primitive(name=name, params=params, duration_frames=duration))

    return PrimitiveTrace(primitives=primitives)


# ----


def gen_record(split: str, index: int, global_index: int, seed: int) -> Tuple[Dict, bytes]:
    """
    Description
    -----------

    This function generates a single record and its motion blob; the
    record seed is derived by hashing the global seed with the global
    record index, and the first primitive cycles through PRIMITIVES
    with the index within the split so that every split of at least
    len(PRIMITIVES) records covers every primitive.

    Parameters
    ----------

    split: str

        A Python string naming the split.

    index: int

        A Python integer specifying the index within the split.

    global_index: int

        A Python integer specifying the index across all splits.

    seed: int

        A Python integer specifying the global seed.

    Returns
    -------

    record: dict

        A Python dictionary containing the manifest record.

    blob: bytes

        The motion blob.

    """

    record_seed = hashlib_interface.derive_seed(seed, global_index)
    rng = numpy.random.default_rng(record_seed)
    trace = sample_trace(rng=rng, first=PRIMITIVES[index % len(PRIMITIVES)])
    clip = gen_clip(trace=trace, seed=record_seed)

    record_id = f"{split}-{index:05d}"
    record = DatasetRecord(
        id=record_id,
        split=split,
        caption=render_caption(trace=clip.trace, seed=record_seed),
        cot=render_cot(trace=clip.trace, seed=record_seed),
        trace=clip.trace,
        clip=f"clips/{record_id}.mofr",
        num_frames=clip.num_frames,
        fps=clip.fps,
    )
    blob = motion_interface.encode_motion(frames=clip.frames, fps=clip.fps)

    return (record.to_dict(), blob)


# ----


def _gen_record_star(args: Tuple) -> Tuple[Dict, bytes]:
    return gen_record(*args)


# ----


def gen_dataset(config: DatasetConfig, out_dir: str) -> Dataset:
    """
    Description
    -----------

    This function generates the dataset files; the output is
    byte-identical for a fixed configuration regardless of the number
    of worker processes.

    Parameters
    ----------

    config: DatasetConfig

        A Python DatasetConfig object.

    out_dir: str

        A Python string specifying the output directory.

    Returns
    -------

    dataset: Dataset

        A Python Dataset object for the written files.

    Raises
    ------

    DatasetInterfaceError:

        * raised if the output path cannot be written; the path is
          named.

    """

    jobs = []
    for split, count in config.counts().items():
        for index in range(count):
            jobs.append((split, index, len(jobs), config.seed))

    msg = (
        f"Generating {len(jobs)} records (seed {config.seed}, "
        f"{config.workers} worker(s)) beneath {out_dir}."
    )
    logger.info(msg=msg)

    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as executor:
            results = list(executor.map(_gen_record_star, jobs, chunksize=16))
    else:
        results = [_gen_record_star(job) for job in jobs]

    try:
        fileio_interface.makedirs(path=os.path.join(out_dir, "clips"))
        for record, blob in results:
            fileio_interface.write_bytes(path=os.path.join(out_dir, record["clip"]), payload=blob)
        json_interface.write_ndjson(
            ndjson_file=os.path.join(out_dir, MANIFEST), records=[item[0] for item in results]
        )
        json_interface.write_json(
            json_file=os.path.join(out_dir, META),
            in_dict={
                "config": config.identity(),
                "config_hash": hashlib_interface.get_dict_hash(in_dict=config.identity()),
                "records": len(results),
            },
        )

    except Error as errmsg:
        msg = f"Writing the dataset to {out_dir} failed. Aborting!!!"
        raise DatasetInterfaceError(msg=msg) from errmsg

    return Dataset(
        root=out_dir, records=[DatasetRecord.from_dict(item[0]) for item in results]
    )


# ----


def dataset_stats(dataset: Dataset) -> Dict:
    """
    Description
    -----------

    This function returns the per-split caption and CoT corpus
    statistics: record counts, mean and maximum token lengths, the
    number of distinct words, and the primitive frequencies.

    Parameters
    ----------

    dataset: Dataset

        A Python Dataset object.

    Returns
    -------

    stats: dict

        A Python dictionary keyed by split name.

    """

    stats = {}
    for split in SPLITS:
        records = [record for record in dataset.records if record.split == split]
        if not records:
            continue

        caption_lengths = [len(split_words(text=record.caption)) for record in records]
        cot_lengths = [len(split_words(text=record.cot)) for record in records]
        frequencies = {name: 0 for name in PRIMITIVES}
        for record in records:
            for name in record.trace.names:
                frequencies[name] += 1

        stats[split] = {
            "records": len(records),
            "caption_tokens_mean": float(numpy.mean(caption_lengths)),
            "caption_tokens_max": int(numpy.max(caption_lengths)),
            "cot_tokens_mean": float(numpy.mean(cot_lengths)),
            "cot_tokens_max": int(numpy.max(cot_lengths)),
            "caption_vocab": len({w for r in records for w in split_words(text=r.caption)}),
            "cot_vocab": len({w for r in records for w in split_words(text=r.cot)}),
            "primitive_counts": frequencies,
        }

    return stats
