# =========================================================================

# Module: tokenizer_vq/codebook_interface.py

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

    codebook_interface.py

Description
-----------

    This module contains the vector-quantization codebook: exact
    nearest-code assignment, the exponential moving average (EMA) code
    update and the windowed reset of unused codes.

Classes
-------

    Codebook(codes, ema_counts, ema_sums, usage, decay, ...)

        This is the base-class object for a K x d codebook and its EMA
        accumulators.

Functions
---------

    ema_update(codebook, latents, indices)

        This function applies one EMA update from a batch of assigned
        latents.

    init_codebook(codebook, latents, rng)

        This function initializes the codes by tiling batch latents.

    perplexity(indices, num_codes)

        This function returns exp(entropy) of the code usage
        histogram.

    quantize_latents(latents, codes)

        This function assigns every latent its nearest code.

    reset_dead_codes(codebook, latents, rng)

        This function advances the usage window and replaces codes
        that were used too rarely.

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

from dataclasses import dataclass
from typing import Tuple

import numpy

from utils.exceptions_interface import TokenizerInterfaceError

# ----

# Define all available attributes.
__all__ = [
    "Codebook",
    "ema_update",
    "init_codebook",
    "perplexity",
    "quantize_latents",
    "reset_dead_codes",
]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

# Rows of latents compared against the full codebook at once.
_CHUNK = 128

# ----


@dataclass
class Codebook:
    """
    Description
    -----------

    This is the base-class object for a K x d codebook and its EMA
    accumulators; usage counts assignments within the current reset
    window.

    """

    codes: numpy.ndarray
    ema_counts: numpy.ndarray
    ema_sums: numpy.ndarray
    usage: numpy.ndarray
    decay: float = 0.99
    reset_window: int = 256
    reset_threshold: int = 1
    window_step: int = 0
    initialized: bool = False

    @classmethod
    def create(
        cls,
        num_codes: int,
        dim: int,
        rng: numpy.random.Generator,
        decay: float = 0.99,
        reset_window: int = 256,
        reset_threshold: int = 1,
    ) -> "Codebook":
        codes = rng.normal(0.0, 1.0 / numpy.sqrt(dim), size=(num_codes, dim))
        return cls(
            codes=codes,
            ema_counts=numpy.ones(num_codes),
            ema_sums=codes.copy(),
            usage=numpy.zeros(num_codes, dtype=numpy.int64),
            decay=decay,
            reset_window=reset_window,
            reset_threshold=reset_threshold,
        )

    @property
    def num_codes(self) -> int:
        return int(self.codes.shape[0])

    @property
    def dim(self) -> int:
        return int(self.codes.shape[1])


# ----


def _check_batch(latents: numpy.ndarray, codebook: Codebook) -> numpy.ndarray:
    latents = numpy.asarray(latents, dtype=numpy.float64)
    if latents.ndim != 2 or latents.shape[0] == 0:
        msg = f"The latent batch of shape {latents.shape} is empty or not 2-D. Aborting!!!"
        raise TokenizerInterfaceError(msg=msg)

    if latents.shape[1] != codebook.dim:
        msg = (
            f"The latent dimension {latents.shape[1]} does not match the codebook "
            f"dimension {codebook.dim}. Aborting!!!"
        )
        raise TokenizerInterfaceError(msg=msg)

    return latents


# ----


def quantize_latents(
    latents: numpy.ndarray, codes: numpy.ndarray
) -> Tuple[numpy.ndarray, numpy.ndarray]:
    """
    Description
    -----------

    This function assigns every latent row its nearest code by
    Euclidean distance; ties are broken by the lowest code index.

    Parameters
    ----------

    latents: numpy.ndarray

        A Python numpy.ndarray of shape (N, d).

    codes: numpy.ndarray

        A Python numpy.ndarray of shape (K, d).

    Returns
    -------

    indices: numpy.ndarray

        A Python numpy.ndarray of N integer code indices.

    quantized: numpy.ndarray

        A Python numpy.ndarray of shape (N, d) holding the assigned
        codes.

    Raises
    ------

    TokenizerInterfaceError:

        * raised if the latent and code dimensions differ.

    """

    latents = numpy.asarray(latents, dtype=numpy.float64)
    if latents.ndim != 2 or latents.shape[1] != codes.shape[1]:
        msg = (
            f"The latents of shape {latents.shape} cannot be quantized against codes "
            f"of shape {codes.shape}. Aborting!!!"
        )
        raise TokenizerInterfaceError(msg=msg)

    # Direct squared differences keep exact ties exact.
    indices = numpy.empty(latents.shape[0], dtype=numpy.int64)
    for start in range(0, latents.shape[0], _CHUNK):
        block = latents[start : start + _CHUNK]
        dist = ((block[:, None, :] - codes[None, :, :]) ** 2).sum(axis=-1)
        indices[start : start + _CHUNK] = numpy.argmin(dist, axis=1)

    return (indices, codes[indices].copy())


# ----


def init_codebook(codebook: Codebook, latents: numpy.ndarray, rng: numpy.random.Generator) -> None:
    """
    Description
    -----------

    This function initializes the codes from the first batch of
    latents; the batch is tiled (with small noise) until it covers K
    rows when it holds fewer than K latents.

    """

    latents = _check_batch(latents=latents, codebook=codebook)
    if latents.shape[0] < codebook.num_codes:
        repeats = -(-codebook.num_codes // latents.shape[0])
        tiled = numpy.tile(latents, (repeats, 1))
        tiled = tiled + rng.normal(0.0, 0.01 / numpy.sqrt(codebook.dim), size=tiled.shape)
    else:
        tiled = latents[rng.permutation(latents.shape[0])]

    codebook.codes = tiled[: codebook.num_codes].copy()
    codebook.ema_sums = codebook.codes.copy()
    codebook.ema_counts = numpy.ones(codebook.num_codes)
    codebook.initialized = True


# ----


def ema_update(codebook: Codebook, latents: numpy.ndarray, indices: numpy.ndarray) -> numpy.ndarray:
    """
    Description
    -----------

    This function applies one EMA update:

        counts <- decay * counts + (1 - decay) * n_k

        sums <- decay * sums + (1 - decay) * (sum of latents assigned
        to k)

        codes <- sums / (counts + 1e-6)

    and adds the batch assignments to the window usage.

    Parameters
    ----------

    codebook: Codebook

        A Python Codebook object; updated in place.

    latents: numpy.ndarray

        A Python numpy.ndarray of shape (N, d).

    indices: numpy.ndarray

        A Python numpy.ndarray of the N assigned code indices.

    Returns
    -------

    counts: numpy.ndarray

        A Python numpy.ndarray of the K batch assignment counts.

    Raises
    ------

    TokenizerInterfaceError:

        * raised if the batch is empty.

        * raised if the indices do not match the latents one to one
          or an index is outside [0, K); the first bad index and its
          position are named.

    """

    latents = _check_batch(latents=latents, codebook=codebook)
    indices = numpy.asarray(indices)
    if indices.shape != (latents.shape[0],) or not numpy.issubdtype(indices.dtype, numpy.integer):
        msg = (
            f"The EMA update requires {latents.shape[0]} integer code indices; received "
            f"an array of shape {indices.shape} and dtype {indices.dtype}. Aborting!!!"
        )
        raise TokenizerInterfaceError(msg=msg)

    bad = numpy.flatnonzero((indices < 0) | (indices >= codebook.num_codes))
    if bad.size:
        msg = (
            f"The code index {int(indices[bad[0]])} at position {int(bad[0])} is outside "
            f"[0, {codebook.num_codes}). Aborting!!!"
        )
        raise TokenizerInterfaceError(msg=msg)
    indices = indices.astype(numpy.int64)

    counts = numpy.bincount(indices, minlength=codebook.num_codes).astype(numpy.float64)
    sums = numpy.zeros_like(codebook.codes)
    numpy.add.at(sums, indices, latents)

    decay = codebook.decay
    codebook.ema_counts = decay * codebook.ema_counts + (1.0 - decay) * counts
    codebook.ema_sums = decay * codebook.ema_sums + (1.0 - decay) * sums
    codebook.codes = codebook.ema_sums / (codebook.ema_counts + 1e-6)[:, None]
    codebook.usage = codebook.usage + counts.astype(numpy.int64)

    return counts


# ----


def reset_dead_codes(
    codebook: Codebook, latents: numpy.ndarray, rng: numpy.random.Generator
) -> int:
    """
    Description
    -----------

    This function advances the usage window by one step; when the
    window is complete, every code used fewer than reset_threshold
    times within it is replaced by a uniformly sampled latent of the
    current batch (its EMA accumulators restart from that latent) and
    the usage counts are cleared.

    Returns
    -------

    num_reset: int

        A Python integer specifying the number of replaced codes.

    Raises
    ------

    TokenizerInterfaceError:

        * raised if the batch is empty.

    """

    latents = _check_batch(latents=latents, codebook=codebook)
    codebook.window_step += 1
    if codebook.window_step < codebook.reset_window:
        return 0

    dead = numpy.flatnonzero(codebook.usage < codebook.reset_threshold)
    if dead.size:
        picks = rng.integers(0, latents.shape[0], size=dead.size)
        codebook.codes[dead] = latents[picks]
        codebook.ema_sums[dead] = latents[picks]
        codebook.ema_counts[dead] = 1.0

    codebook.usage = numpy.zeros(codebook.num_codes, dtype=numpy.int64)
    codebook.window_step = 0

    return int(dead.size)


# ----


def perplexity(indices: numpy.ndarray, num_codes: int) -> float:
    """
    Description
    -----------

    This function returns exp(entropy) of the code usage histogram;
    unused codes contribute nothing.

    """

    counts = numpy.bincount(numpy.asarray(indices, dtype=numpy.int64), minlength=num_codes)
    if counts.sum() == 0:
        return 0.0

    probs = counts[counts > 0] / counts.sum()

    return float(numpy.exp(-(probs * numpy.log(probs)).sum()))
