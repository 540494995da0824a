# =========================================================================

# Module: ioapps/hashlib_interface.py

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

    hashlib_interface.py

Description
-----------

    This module contains functions to compute secure hashes of
    configuration dictionaries and to derive deterministic
    per-item random seeds.

Functions
---------

    derive_seed(seed, *keys)

        This function derives a deterministic 32-bit seed from a
        global seed and any number of additional keys (e.g., a record
        index).

    get_dict_hash(in_dict, hash_level=None)

        This function returns the secure hash of the canonical JSON
        text of a Python dictionary.

Author(s)
---------

    unimo_pyutils developers; 02 March 2026

History
-------

    2026-03-02: Initial implementation.

"""

# ----

import hashlib
from typing import Any, Dict

from confs.json_interface import dumps_canonical
from tools import parser_interface
from utils.exceptions_interface import HashLibInterfaceError

# ----

# Define all available functions.
__all__ = ["derive_seed", "get_dict_hash"]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

# Define the supported hash/checksum types.
HASH_TYPES = ["md5", "sha1", "sha224", "sha256", "sha384", "sha512"]

# ----


def __hash_obj__(hash_level: str) -> Any:
    """
    Description
    -----------

    This function returns the hashlib constructor for the specified
    hash level; NoneType maps to sha256.

    """

    if hash_level is None:
        hash_level = "sha256"

    if hash_level.lower() not in HASH_TYPES:
        msg = (
            f"The checksum/hash level type {hash_level} is not supported. "
            "Aborting!!!"
        )
        raise HashLibInterfaceError(msg=msg)

    hash_obj = parser_interface.object_getattr(
        object_in=hashlib, key=hash_level.lower()
    )

    return hash_obj


# ----


def derive_seed(seed: int, *keys: Any) -> int:
    """
    Description
    -----------

    This function derives a deterministic 32-bit seed from a global
    seed and any number of additional keys; the result does not depend
    on the Python hash randomization and is therefore stable across
    processes.

    Parameters
    ----------

    seed: int

        A Python integer specifying the global seed.

    Other Parameters
    ----------------

    keys: Any

        Additional keys (e.g., a record index or a stage name); each
        key must be convertible to a Python string.

    Returns
    -------

    derived: int

        A Python integer within [0, 2^32).

    """

    text = ":".join([str(seed)] + [str(key) for key in keys])
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    derived = int.from_bytes(digest[:4], byteorder="little")

    return derived


# ----


def get_dict_hash(in_dict: Dict, hash_level: str = None) -> str:
    """
    Description
    -----------

    This function returns the secure hash of the canonical JSON text
    (sorted keys, compact separators) of a Python dictionary; equal
    dictionaries therefore share a hash regardless of key order.

    Parameters
    ----------

    in_dict: dict

        A JSON-serializable Python dictionary.

    Keywords
    --------

    hash_level: str, optional

        A Python string specifying the hash level; if NoneType upon
        entry, the sha256 hash level is assumed.

    Returns
    -------

    hash_index: str

        A Python string containing the hexadecimal hash.

    """

    hash_obj = __hash_obj__(hash_level=hash_level)
    hash_index = hash_obj(dumps_canonical(in_obj=in_dict).encode("utf-8")).hexdigest()

    return hash_index

