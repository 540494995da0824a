# =========================================================================

# Module: vocab_lm/sampling_interface.py

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

    sampling_interface.py

Description
-----------

    This module draws completions from the policy with temperature and
    top-k sampling. Each completion owns a generator seeded with its
    own seed, so a completion does not depend on which other
    completions are drawn alongside it. PAD and BOS are never
    sampled; a completion stops at EOS, after max_new tokens, or when
    the context is full.

Functions
---------

    sample(model, prompt, temperature, top_k, max_new, seed, ...)

        This function draws one completion.

    sample_many(model, prompt, seeds, temperature, top_k, max_new,
    ...)

        This function draws one completion per seed.

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

from typing import List, Sequence

import numpy

from tensor.tensor_interface import no_grad
from utils.exceptions_interface import VocabInterfaceError
from vocab_lm.transformer_interface import TinyLM

# ----

# Define all available functions.
__all__ = ["sample", "sample_many"]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----


def _pick(
    logits: numpy.ndarray, temperature: float, top_k: int, rng: numpy.random.Generator
) -> int:
    if top_k == 1:
        return int(numpy.argmax(logits))

    # Stable sort keeps the lowest id first among equal logits.
    order = numpy.argsort(-logits, kind="stable")[:top_k]
    kept = logits[order] / temperature
    probs = numpy.exp(kept - kept.max())
    cdf = numpy.cumsum(probs)
    choice = int(numpy.searchsorted(cdf, rng.random() * cdf[-1], side="right"))

    return int(order[min(choice, len(order) - 1)])


# ----


def sample_many(
    model: TinyLM,
    prompt: Sequence[int],
    seeds: Sequence[int],
    temperature: float = 1.0,
    top_k: int = 50,
    max_new: int = 128,
    eos_id: int = 2,
    banned: Sequence[int] = (0, 1),
) -> List[List[int]]:
    """
    Description
    -----------

    This function draws one completion per seed from a shared prompt;
    the completions are advanced together in one batch.

    Parameters
    ----------

    model: TinyLM

        A Python TinyLM object.

    prompt: list

        A Python list of prompt token ids.

    seeds: list

        A Python list of integer seeds; one completion per seed.

    Keywords
    --------

    temperature: float, optional

        A Python float specifying the softmax temperature.

    top_k: int, optional

        A Python integer specifying the number of candidate tokens;
        1 selects the arg-max.

    max_new: int, optional

        A Python integer specifying the maximum completion length.

    eos_id: int, optional

        A Python integer specifying the EOS id.

    banned: list, optional

        A Python list of ids that are never sampled (PAD and BOS).

    Returns
    -------

    completions: list

        A Python list of token id lists (EOS included when emitted).

    Raises
    ------

    VocabInterfaceError:

        * raised if temperature is not positive or top_k < 1.

    """

    if temperature <= 0.0 or top_k < 1:
        msg = (
            f"Sampling requires temperature > 0 and top_k >= 1; received "
            f"{temperature} and {top_k}. Aborting!!!"
        )
        raise VocabInterfaceError(msg=msg)

    rngs = [numpy.random.default_rng(seed) for seed in seeds]
    completions: List[List[int]] = [[] for _ in seeds]
    active = list(range(len(seeds)))
    context = model.config.context

    with no_grad():
        for _ in range(max_new):
            if not active or len(prompt) + len(completions[active[0]]) >= context:
                break
            ids = numpy.asarray([list(prompt) + completions[row] for row in active])
            logits = model(ids).values[:, -1, :].copy()
            logits[:, list(banned)] = -numpy.inf

            still = []
            for batch_row, row in enumerate(active):
                token = _pick(logits[batch_row], temperature, top_k, rngs[row])
                completions[row].append(token)
                if token != eos_id:
                    still.append(row)
            active = still

    return completions


# ----


def sample(
    model: TinyLM,
    prompt: Sequence[int],
    temperature: float = 1.0,
    top_k: int = 50,
    max_new: int = 128,
    seed: int = 0,
    eos_id: int = 2,
    banned: Sequence[int] = (0, 1),
) -> List[int]:
    """
    Description
    -----------

    This function draws one completion; see sample_many.

    """

    return sample_many(
        model=model,
        prompt=prompt,
        seeds=[seed],
        temperature=temperature,
        top_k=top_k,
        max_new=max_new,
        eos_id=eos_id,
        banned=banned,
    )[0]
