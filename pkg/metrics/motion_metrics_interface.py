# =========================================================================

# Module: metrics/motion_metrics_interface.py

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

    motion_metrics_interface.py

Description
-----------

    This module contains the text-to-motion metrics computed over
    embedder space: R-Precision, Frechet distance, multimodal
    distance, diversity and multimodality.

Functions
---------

    diversity(embeds, subset=30, seed=0)

        This function returns the mean distance between two disjoint
        element-matched subsets.

    fid(generated, reference)

        This function returns the Frechet distance of two embedding
        sets.

    mm_dist(motion, text)

        This function returns the mean motion/text embedding
        distance of matched pairs.

    mmodality(groups)

        This function returns the mean within-caption pairwise
        distance of repeated generations.

    r_precision(motion, text, pool_size=32, trials=0, seed=0, captions=None)

        This function returns the Top-1/2/3 retrieval rates against
        distractors with distinct captions.

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

from typing import List, Sequence, Tuple

import numpy

from utils.error_interface import msg_except_handle
from utils.exceptions_interface import MetricsInterfaceError

# ----

# Define all available functions.
__all__ = ["diversity", "fid", "mm_dist", "mmodality", "r_precision"]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

_EIG_CLAMP = 1e-8

_ROOT_TOLERANCE = 1e-6

# ----


@msg_except_handle(MetricsInterfaceError)
def __error__(msg: str = None) -> None:
    """
    Description
    -----------

    This function is the exception handler for the respective module.

    Parameters
    ----------

    msg: str

        A Python string containing a message to accompany the
        exception.

    """


# ----


def _as_matrix(values, label: str) -> numpy.ndarray:
    values = numpy.asarray(values, dtype=numpy.float64)
    if values.ndim == 1:
        values = values[:, None]
    if values.ndim != 2:
        msg = f"The {label} embeddings of shape {values.shape} are not a matrix. Aborting!!!"
        __error__(msg=msg)

    return values


def r_precision(
    motion: numpy.ndarray,
    text: numpy.ndarray,
    pool_size: int = 32,
    trials: int = 0,
    seed: int = 0,
    captions: Sequence[str] = None,
) -> Tuple[float, float, float]:
    """
    Description
    -----------

    This function ranks, per trial, the matched caption embedding
    among pool_size - 1 distinct distractor caption embeddings by
    Euclidean distance to the motion embedding. Distractors are drawn
    from the captions that differ from the query's caption, one
    record per caption; a distractor at exactly the matched distance
    is ranked ahead of the match with even odds per tie.

    Parameters
    ----------

    motion: numpy.ndarray

        A Python numpy.ndarray of (N, e) motion embeddings.

    text: numpy.ndarray

        A Python numpy.ndarray of the (N, e) matched caption
        embeddings.

    Keywords
    --------

    pool_size: int, optional

        A Python integer specifying the candidate pool size.

    trials: int, optional

        A Python integer specifying the number of trials with random
        queries; one trial per pair if 0.

    seed: int, optional

        A Python integer specifying the sampling seed.

    captions: list, optional

        A Python list of the N caption strings; if NoneType, equal
        text embeddings are taken as the same caption.

    Returns
    -------

    (top1, top2, top3): tuple

        A Python tuple of hit rates.

    Raises
    ------

    MetricsInterfaceError:

        * raised if there are fewer pairs than pool_size; both
          counts are named.

        * raised if there are fewer than pool_size distinct
          captions.

    """

    (motion, text) = (_as_matrix(motion, "motion"), _as_matrix(text, "text"))
    count = motion.shape[0]
    if count < pool_size or text.shape[0] != count:
        msg = (
            f"R-Precision requires at least pool_size={pool_size} matched pairs; "
            f"received {count} motion and {text.shape[0]} text embeddings. Aborting!!!"
        )
        __error__(msg=msg)

    keys = list(captions) if captions is not None else [row.tobytes() for row in text]
    if len(keys) != count:
        msg = f"Received {len(keys)} captions for {count} embedding pairs. Aborting!!!"
        __error__(msg=msg)

    # One representative record per distinct caption.
    firsts = {}
    for idx, key in enumerate(keys):
        firsts.setdefault(key, idx)
    if len(firsts) < pool_size:
        msg = (
            f"R-Precision requires pool_size={pool_size} distinct captions; "
            f"received {len(firsts)}. Aborting!!!"
        )
        __error__(msg=msg)

    rng = numpy.random.default_rng(seed)
    queries = numpy.arange(count) if trials <= 0 else rng.integers(0, count, size=trials)
    hits = numpy.zeros(3)
    for query in queries:
        others = numpy.array([idx for (key, idx) in firsts.items() if key != keys[query]])
        distractors = rng.choice(others, size=pool_size - 1, replace=False)
        true_dist = numpy.linalg.norm(text[query] - motion[query])
        dists = numpy.linalg.norm(text[distractors] - motion[query], axis=1)
        closer = int((dists < true_dist).sum())
        ties = int((dists == true_dist).sum())
        rank = closer + int(rng.integers(0, ties + 1))
        hits += rank < numpy.arange(1, 4)

    (top1, top2, top3) = (hits / len(queries)).tolist()

    return (top1, top2, top3)


# ----


def _sqrtm_psd(matrix: numpy.ndarray) -> numpy.ndarray:
    (eigvals, eigvecs) = numpy.linalg.eigh((matrix + matrix.T) / 2.0)
    eigvals = numpy.where(eigvals > -_EIG_CLAMP, numpy.maximum(eigvals, 0.0), eigvals)
    if (eigvals < 0.0).any():
        msg = (
            f"The covariance product has the negative eigenvalue {eigvals.min()}. "
            "Aborting!!!"
        )
        __error__(msg=msg)

    return (eigvecs * numpy.sqrt(eigvals)) @ eigvecs.T


def fid(generated: numpy.ndarray, reference: numpy.ndarray) -> float:
    """
    Description
    -----------

    This function returns the Frechet distance between Gaussian fits
    (sample covariance, denominator n - 1) of two embedding sets:

        |mu1 - mu2|^2 + Tr(S1 + S2 - 2 (S1 S2)^(1/2))

    The trace of the root is taken from the symmetric product
    S1^(1/2) S2 S1^(1/2), which has the same eigenvalues as S1 S2.

    Raises
    ------

    MetricsInterfaceError:

        * raised if a set has fewer than e + 1 samples or the matrix
          root residual exceeds 1e-6; the residual is named.

    """

    generated = _as_matrix(generated, "generated")
    reference = _as_matrix(reference, "reference")
    dim = generated.shape[1]
    if reference.shape[1] != dim or min(generated.shape[0], reference.shape[0]) < dim + 1:
        msg = (
            f"The Frechet distance requires at least e + 1 = {dim + 1} samples of equal "
            f"dimension; received {generated.shape} and {reference.shape}. Aborting!!!"
        )
        __error__(msg=msg)

    (mu1, mu2) = (generated.mean(axis=0), reference.mean(axis=0))
    sigma1 = numpy.atleast_2d(numpy.cov(generated, rowvar=False, ddof=1))
    sigma2 = numpy.atleast_2d(numpy.cov(reference, rowvar=False, ddof=1))

    root1 = _sqrtm_psd(sigma1)
    product = root1 @ sigma2 @ root1
    product = (product + product.T) / 2.0
    root = _sqrtm_psd(product)
    residual = numpy.linalg.norm(root @ root - product) / max(1.0, numpy.linalg.norm(product))
    if residual > _ROOT_TOLERANCE:
        msg = f"The matrix square root did not converge; residual {residual:.3e}. Aborting!!!"
        __error__(msg=msg)

    value = float(((mu1 - mu2) ** 2).sum() + numpy.trace(sigma1 + sigma2 - 2.0 * root))

    return max(value, 0.0)


# ----


def mm_dist(motion: numpy.ndarray, text: numpy.ndarray) -> float:
    """Mean Euclidean distance of matched motion/text embeddings."""

    (motion, text) = (_as_matrix(motion, "motion"), _as_matrix(text, "text"))
    if motion.shape != text.shape or not motion.shape[0]:
        msg = (
            f"MM-Dist requires equally shaped non-empty sets; received {motion.shape} "
            f"and {text.shape}. Aborting!!!"
        )
        __error__(msg=msg)

    return float(numpy.linalg.norm(motion - text, axis=1).mean())


def diversity(embeds: numpy.ndarray, subset: int = 30, seed: int = 0) -> float:
    """
    Description
    -----------

    This function draws two disjoint seeded subsets of size subset and
    returns the mean distance between their element-matched rows.

    Raises
    ------

    MetricsInterfaceError:

        * raised if there are fewer than 2 subset samples.

    """

    embeds = _as_matrix(embeds, "motion")
    if embeds.shape[0] < 2 * subset:
        msg = (
            f"Diversity with subset size {subset} requires at least {2 * subset} samples; "
            f"received {embeds.shape[0]}. Aborting!!!"
        )
        __error__(msg=msg)

    picks = numpy.random.default_rng(seed).permutation(embeds.shape[0])[: 2 * subset]

    return float(numpy.linalg.norm(embeds[picks[:subset]] - embeds[picks[subset:]], axis=1).mean())


def mmodality(groups: Sequence[numpy.ndarray]) -> float:
    """
    Description
    -----------

    This function returns the mean over captions of the mean pairwise
    distance among the embeddings of that caption's generations.

    Raises
    ------

    MetricsInterfaceError:

        * raised if no group holds at least two generations.

    """

    values: List[float] = []
    for group in groups:
        group = _as_matrix(group, "generation")
        if group.shape[0] < 2:
            continue
        dists = numpy.linalg.norm(group[:, None, :] - group[None, :, :], axis=-1)
        (rows, cols) = numpy.triu_indices(group.shape[0], k=1)
        values.append(float(dists[rows, cols].mean()))

    if not values:
        msg = "MModality requires at least one caption with 2 or more generations. Aborting!!!"
        __error__(msg=msg)

    return float(numpy.mean(values))
