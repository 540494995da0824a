# =========================================================================

# Module: metrics/text_metrics_interface.py

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

    text_metrics_interface.py

Description
-----------

    This module contains the captioning metrics; every score is
    reported on the [0, 100] scale and all texts are split with the
    dataset word tokenizer.

Functions
---------

    bleu(hyps, refs, n=4)

        This function returns the corpus BLEU@n score.

    cider(hyps, refs)

        This function returns the mean TF-IDF n-gram cosine score.

    rouge_l(hyps, refs, beta=1.2)

        This function returns the mean LCS F-measure.

Requirements
------------

- numpy; https://numpy.org/

- sacrebleu; https://github.com/mjpost/sacrebleu

Author(s)
---------

    unimo_pyutils developers; 02 March 2026

History
-------

    2026-03-02: Initial implementation.

"""

# ----

from collections import Counter
from typing import Dict, List, Sequence, Tuple

import numpy
from sacrebleu.metrics import BLEU

from synthdata.language_interface import split_words
from utils.exceptions_interface import MetricsInterfaceError

# ----

# Define all available functions.
__all__ = ["bleu", "cider", "rouge_l"]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

CIDER_MAX_ORDER = 4

# ----


def _check(hyps: Sequence[str], refs: Sequence[str]) -> Tuple[List[List[str]], List[List[str]]]:
    if len(hyps) != len(refs) or not refs:
        msg = (
            f"The text metrics require equal-length non-empty lists; received {len(hyps)} "
            f"hypotheses and {len(refs)} references. Aborting!!!"
        )
        raise MetricsInterfaceError(msg=msg)

    return ([split_words(text=hyp or "") for hyp in hyps], [split_words(text=ref) for ref in refs])


def _ngrams(words: List[str], order: int) -> Counter:
    return Counter(tuple(words[idx : idx + order]) for idx in range(len(words) - order + 1))


# ----


def bleu(hyps: Sequence[str], refs: Sequence[str], n: int = 4) -> float:
    """
    Description
    -----------

    This function returns the corpus-level BLEU@n score: clipped
    n-gram precisions pooled over the corpus, add-1 smoothing on the
    orders >= 2 only, and the corpus brevity penalty.

    Parameters
    ----------

    hyps: list

        A Python list of generated captions; an empty caption is
        scored with zero precision.

    refs: list

        A Python list of the reference captions.

    Keywords
    --------

    n: int, optional

        A Python integer specifying the maximum n-gram order.

    Returns
    -------

    score: float

        A Python float within [0, 100].

    Raises
    ------

    MetricsInterfaceError:

        * raised if the lists differ in length or are empty.

    """

    (hyp_words, ref_words) = _check(hyps=hyps, refs=refs)
    scorer = BLEU(
        tokenize="none",
        smooth_method="add-k",
        smooth_value=1,
        max_ngram_order=n,
        effective_order=False,
    )
    score = scorer.corpus_score(
        [" ".join(words) for words in hyp_words], [[" ".join(words) for words in ref_words]]
    ).score

    return float(numpy.clip(score, 0.0, 100.0))


def _lcs(first: List[str], second: List[str]) -> int:
    table = numpy.zeros((len(first) + 1, len(second) + 1), dtype=int)
    for (row, word) in enumerate(first, start=1):
        for (col, other) in enumerate(second, start=1):
            table[row, col] = (
                table[row - 1, col - 1] + 1
                if word == other
                else max(table[row - 1, col], table[row, col - 1])
            )

    return int(table[-1, -1])


def rouge_l(hyps: Sequence[str], refs: Sequence[str], beta: float = 1.2) -> float:
    """
    Description
    -----------

    This function returns the mean over samples of the LCS F-measure

        F = (1 + beta^2) R P / (R + beta^2 P)

    where R and P are the LCS length over the reference and the
    hypothesis lengths.

    """

    (hyp_words, ref_words) = _check(hyps=hyps, refs=refs)
    scores = []
    for (hyp, ref) in zip(hyp_words, ref_words):
        lcs = _lcs(hyp, ref) if hyp and ref else 0
        if not lcs:
            scores.append(0.0)
            continue
        (recall, precision) = (lcs / len(ref), lcs / len(hyp))
        scores.append((1.0 + beta**2) * recall * precision / (recall + beta**2 * precision))

    return float(numpy.clip(100.0 * numpy.mean(scores), 0.0, 100.0))


# ----


def cider(hyps: Sequence[str], refs: Sequence[str]) -> float:
    """
    Description
    -----------

    This function returns the mean over samples of the TF-IDF
    weighted n-gram cosine between hypothesis and reference, averaged
    over the orders 1 to 4 for which the reference has n-grams.

    The document frequencies are counted over the references with
    the smoothed IDF log((1 + N) / (1 + df)) + 1, so n-grams shared by
    every reference keep a positive weight.

    """

    (hyp_words, ref_words) = _check(hyps=hyps, refs=refs)
    count = len(ref_words)
    idf: Dict[int, Dict[Tuple, float]] = {}
    for order in range(1, CIDER_MAX_ORDER + 1):
        doc_freq: Counter = Counter()
        for ref in ref_words:
            doc_freq.update(set(_ngrams(ref, order)))
        idf[order] = {
            gram: numpy.log((1.0 + count) / (1.0 + freq)) + 1.0 for (gram, freq) in doc_freq.items()
        }

    scores = []
    for (hyp, ref) in zip(hyp_words, ref_words):
        sims = []
        for order in range(1, CIDER_MAX_ORDER + 1):
            ref_grams = _ngrams(ref, order)
            if not ref_grams:
                continue
            hyp_grams = _ngrams(hyp, order)
            weight = idf[order]
            # Unseen hypothesis n-grams take the weight of df = 0.
            unseen = numpy.log(1.0 + count) + 1.0
            ref_vec = {gram: freq * weight[gram] for (gram, freq) in ref_grams.items()}
            hyp_vec = {gram: freq * weight.get(gram, unseen) for (gram, freq) in hyp_grams.items()}
            norm = numpy.sqrt(sum(v**2 for v in ref_vec.values())) * numpy.sqrt(
                sum(v**2 for v in hyp_vec.values())
            )
            dot = sum(value * ref_vec.get(gram, 0.0) for (gram, value) in hyp_vec.items())
            sims.append(dot / norm if norm > 0.0 else 0.0)
        scores.append(float(numpy.mean(sims)) if sims else 0.0)

    return float(numpy.clip(100.0 * numpy.mean(scores), 0.0, 100.0))
