# =========================================================================

# Module: ioapps/checkpoint_interface.py

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

    checkpoint_interface.py

Description
-----------

    This module reads and writes named-parameter tables.

    A checkpoint is the 4-byte magic "MCKP" and a little-endian
    unsigned 32-bit entry count followed, per entry, by the u32 name
    length, the UTF-8 name, the u32 rank, rank u32 dimensions and the
    little-endian 64-bit float payload in row-major order. Entries are
    written in the order given.

    Every checkpoint <path> has a JSON sidecar <path>.meta.json holding
    the configuration section that produced it, the hash of that
    section and any stage-specific statistics.

Functions
---------

    decode_checkpoint(payload, source="<bytes>")

        This function decodes a checkpoint payload.

    encode_checkpoint(params)

        This function encodes a named-parameter table.

    meta_path(path)

        This function returns the sidecar path of a checkpoint.

    read_checkpoint(path)

        This function reads a checkpoint file.

    read_checkpoint_meta(path)

        This function reads the sidecar of a checkpoint.

    write_checkpoint(path, params, config, extra=None)

        This function writes a checkpoint and its sidecar.

Requirements
------------

- numpy; https://numpy.org/

Author(s)
---------

    unimo_pyutils developers; 02 March 2026

History
-------

    2026-03-02: Initial implementation.

"""

# ----

import struct
from collections import OrderedDict
from typing import Dict

import numpy

from confs import json_interface
from ioapps import hashlib_interface
from tools import fileio_interface
from utils.exceptions_interface import (
    CheckpointInterfaceError,
    FileIOInterfaceError,
    JSONInterfaceError,
)
from utils.logger_interface import Logger

# ----

# Define all available functions.
__all__ = [
    "MAGIC",
    "decode_checkpoint",
    "encode_checkpoint",
    "meta_path",
    "read_checkpoint",
    "read_checkpoint_meta",
    "write_checkpoint",
]

# ----

logger = Logger()

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

MAGIC = b"MCKP"

_U32 = struct.Struct("<I")

# ----


def _corrupt(source: str, detail: str) -> CheckpointInterfaceError:
    msg = (
        f"The checkpoint {source} is not a valid parameter table with magic "
        f"bytes {MAGIC!r}: {detail}. Aborting!!!"
    )
    return CheckpointInterfaceError(msg=msg)


# ----


def decode_checkpoint(payload: bytes, source: str = "<bytes>") -> Dict[str, numpy.ndarray]:
    """
    Description
    -----------

    This function decodes a checkpoint payload.

    Parameters
    ----------

    payload: bytes

        The checkpoint bytes.

    Keywords
    --------

    source: str, optional

        A Python string naming the payload origin within error
        messages.

    Returns
    -------

    params: dict

        A Python ordered dictionary of named numpy.ndarray values.

    Raises
    ------

    CheckpointInterfaceError:

        * raised if the magic bytes are wrong or the payload is
          truncated or carries trailing bytes.

    """

    if payload[:4] != MAGIC:
        raise _corrupt(source, f"found {payload[:4]!r}")

    try:
        offset = 4
        (count,) = _U32.unpack_from(payload, offset)
        offset += 4
        params = OrderedDict()
        for _ in range(count):
            (name_len,) = _U32.unpack_from(payload, offset)
            offset += 4
            name = payload[offset : offset + name_len].decode("utf-8")
            offset += name_len
            (rank,) = _U32.unpack_from(payload, offset)
            offset += 4
            shape = struct.unpack_from(f"<{rank}I", payload, offset)
            offset += 4 * rank
            size = int(numpy.prod(shape)) if rank else 1
            if offset + 8 * size > len(payload):
                raise _corrupt(source, f"entry {name} is truncated")
            values = numpy.frombuffer(payload, dtype="<f8", count=size, offset=offset)
            params[name] = values.reshape(shape).astype(numpy.float64)
            offset += 8 * size

    except (struct.error, UnicodeDecodeError) as errmsg:
        raise _corrupt(source, "the entry table is truncated") from errmsg

    if offset != len(payload):
        raise _corrupt(source, f"{len(payload) - offset} trailing bytes")

    return params


# ----


def encode_checkpoint(params: Dict[str, numpy.ndarray]) -> bytes:
    """
    Description
    -----------

    This function encodes a named-parameter table; the entry order is
    the dictionary order.

    """

    chunks = [MAGIC, _U32.pack(len(params))]
    for name, values in params.items():
        values = numpy.ascontiguousarray(values, dtype="<f8")
        name_bytes = name.encode("utf-8")
        chunks.append(_U32.pack(len(name_bytes)) + name_bytes)
        chunks.append(_U32.pack(values.ndim) + struct.pack(f"<{values.ndim}I", *values.shape))
        chunks.append(values.tobytes())

    return b"".join(chunks)


# ----


def meta_path(path: str) -> str:
    return f"{path}.meta.json"


# ----


def read_checkpoint(path: str) -> Dict[str, numpy.ndarray]:
    """
    Description
    -----------

    This function reads a checkpoint file.

    Parameters
    ----------

    path: str

        A Python string specifying the checkpoint path.

    Returns
    -------

    params: dict

        A Python ordered dictionary of named numpy.ndarray values.

    Raises
    ------

    CheckpointInterfaceError:

        * raised if the file is missing, unreadable or corrupted.

    """

    try:
        payload = fileio_interface.read_bytes(path=path)

    except FileIOInterfaceError as errmsg:
        msg = f"The checkpoint {path} could not be read. Aborting!!!"
        raise CheckpointInterfaceError(msg=msg) from errmsg

    return decode_checkpoint(payload=payload, source=path)


# ----


def read_checkpoint_meta(path: str) -> Dict:
    """
    Description
    -----------

    This function reads the JSON sidecar of a checkpoint.

    Raises
    ------

    CheckpointInterfaceError:

        * raised if the sidecar is missing or unreadable.

    """

    try:
        return json_interface.read_json(json_file=meta_path(path))

    except JSONInterfaceError as errmsg:
        msg = f"The checkpoint sidecar {meta_path(path)} could not be read. Aborting!!!"
        raise CheckpointInterfaceError(msg=msg) from errmsg


# ----


def write_checkpoint(
    path: str, params: Dict[str, numpy.ndarray], config: Dict, extra: Dict = None
) -> Dict:
    """
    Description
    -----------

    This function writes a checkpoint and its JSON sidecar; the
    sidecar holds the configuration echo, its hash and the optional
    extra statistics.

    Parameters
    ----------

    path: str

        A Python string specifying the checkpoint path.

    params: dict

        A Python ordered dictionary of named numpy.ndarray values.

    config: dict

        A Python dictionary containing the configuration section that
        produced the checkpoint.

    Keywords
    --------

    extra: dict, optional

        A Python dictionary of additional JSON-serializable entries.

    Returns
    -------

    meta: dict

        A Python dictionary containing the sidecar contents.

    """

    fileio_interface.write_bytes(path=path, payload=encode_checkpoint(params=params))
    meta = {
        "config": config,
        "config_hash": hashlib_interface.get_dict_hash(in_dict=config),
        "num_parameters": int(sum(numpy.asarray(values).size for values in params.values())),
    }
    meta.update(extra or {})
    json_interface.write_json(json_file=meta_path(path), in_dict=meta)
    logger.info(msg=f"Wrote checkpoint {path} ({len(params)} entries).")

    return meta
