# =========================================================================

# Module: ioapps/motion_interface.py

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

    motion_interface.py

Description
-----------

    This module reads and writes motion clip blobs; a blob is the
    4-byte magic "MOFR", three little-endian unsigned 32-bit integers
    (T, D, fps), and T*D little-endian 32-bit floats in row-major
    order.

Functions
---------

    decode_motion(payload, source="<bytes>")

        This function decodes a motion blob.

    encode_motion(frames, fps)

        This function encodes a frame matrix as a motion blob.

    read_motion(path)

        This function reads a motion blob file.

    write_motion(path, frames, fps)

        This function writes a motion blob file.

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
from typing import Tuple

import numpy

from tools import fileio_interface
from utils.exceptions_interface import FileIOInterfaceError, MotionInterfaceError

# ----

# Define all available functions.
__all__ = ["MAGIC", "decode_motion", "encode_motion", "read_motion", "write_motion"]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

MAGIC = b"MOFR"

_HEADER = struct.Struct("<4sIII")

# ----


def decode_motion(payload: bytes, source: str = "<bytes>") -> Tuple[numpy.ndarray, int]:
    """
    Description
    -----------

    This function decodes a motion blob.

    Parameters
    ----------

    payload: bytes

        The motion blob.

    Keywords
    --------

    source: str, optional

        A Python string naming the blob origin within error messages.

    Returns
    -------

    frames: numpy.ndarray

        A Python numpy.ndarray of shape (T, D) and type float64.

    fps: int

        A Python integer specifying the frame rate.

    Raises
    ------

    MotionInterfaceError:

        * raised if the magic bytes are wrong or the payload size does
          not match the header.

    """

    if len(payload) < _HEADER.size or payload[:4] != MAGIC:
        msg = (
            f"The motion blob {source} does not begin with the expected magic "
            f"bytes {MAGIC!r} (found {payload[:4]!r}). Aborting!!!"
        )
        raise MotionInterfaceError(msg=msg)

    (_, num_frames, frame_dim, fps) = _HEADER.unpack_from(payload, 0)
    expected = _HEADER.size + 4 * num_frames * frame_dim
    if len(payload) != expected:
        msg = (
            f"The motion blob {source} holds {len(payload)} bytes but its header "
            f"(T={num_frames}, D={frame_dim}) requires {expected}. Aborting!!!"
        )
        raise MotionInterfaceError(msg=msg)

    frames = numpy.frombuffer(payload, dtype="<f4", offset=_HEADER.size)
    frames = frames.reshape(num_frames, frame_dim).astype(numpy.float64)

    return (frames, int(fps))


# ----


def encode_motion(frames: numpy.ndarray, fps: int) -> bytes:
    """
    Description
    -----------

    This function encodes a (T, D) frame matrix as a motion blob.

    """

    frames = numpy.asarray(frames)
    if frames.ndim != 2:
        msg = f"Motion frames must be 2-D; received shape {frames.shape}. Aborting!!!"
        raise MotionInterfaceError(msg=msg)

    header = _HEADER.pack(MAGIC, frames.shape[0], frames.shape[1], int(fps))
    payload = header + numpy.ascontiguousarray(frames, dtype="<f4").tobytes()

    return payload


# ----


def read_motion(path: str) -> Tuple[numpy.ndarray, int]:
    """
    Description
    -----------

    This function reads a motion blob file.

    Parameters
    ----------

    path: str

        A Python string specifying the motion blob path.

    Returns
    -------

    frames: numpy.ndarray

        A Python numpy.ndarray of shape (T, D).

    fps: int

        A Python integer specifying the frame rate.

    Raises
    ------

    MotionInterfaceError:

        * raised if the file cannot be read or is not a valid blob.

    """

    try:
        payload = fileio_interface.read_bytes(path=path)

    except FileIOInterfaceError as errmsg:
        msg = f"The motion blob {path} could not be read. Aborting!!!"
        raise MotionInterfaceError(msg=msg) from errmsg

    return decode_motion(payload=payload, source=path)


# ----


def write_motion(path: str, frames: numpy.ndarray, fps: int) -> None:
    """
    Description
    -----------

    This function writes a motion blob file; the parent directory is
    built if needed.

    """

    fileio_interface.write_bytes(path=path, payload=encode_motion(frames=frames, fps=fps))
