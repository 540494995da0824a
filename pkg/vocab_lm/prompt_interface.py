# =========================================================================

# Module: vocab_lm/prompt_interface.py

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

    prompt_interface.py

Description
-----------

    This module builds the prompt and target token sequences of the
    two tasks:

        t2m prompt: <bos> {instruction} {caption}

        m2t prompt: <bos> <Motion> {motion tokens} </Motion>
        {instruction}

        t2m target: <think> {CoT} </think> <Motion> {motion tokens}
        </Motion> <eos>

        m2t target: <think> {CoT} </think> <Answer> {caption}
        </Answer> <eos>

    The loss mask is true exactly on the target positions (the EOS
    included).

Classes
-------

    MixedSequence(ids, loss_mask, task)

        This is the base-class object for a prompt or a full training
        sequence.

Functions
---------

    encode_prompt(vocab, task, caption=None, motion=None)

        This function builds the prompt part of a sequence.

    encode_target(vocab, prompt, cot, caption=None, motion=None)

        This function appends the target part to a prompt.

    encode_record(vocab, record, task, motion, use_cot=True)

        This function builds the full sequence of a dataset record.

    pad_batch(sequences, pad_id)

        This function right-pads sequences into id/mask matrices.

Author(s)
---------

    unimo_pyutils developers; 02 March 2026

History
-------

    2026-03-02: Initial implementation.

"""

# ----

from dataclasses import dataclass, field
from typing import List, Tuple

import numpy

from synthdata.dataset_interface import DatasetRecord
from utils.exceptions_interface import VocabInterfaceError
from vocab_lm.vocab_interface import (
    ANSWER_CLOSE,
    ANSWER_OPEN,
    INSTRUCTIONS,
    MOTION_CLOSE,
    MOTION_OPEN,
    THINK_CLOSE,
    THINK_OPEN,
    Vocabulary,
)

# ----

# Define all available attributes.
__all__ = [
    "TASKS",
    "MixedSequence",
    "encode_prompt",
    "encode_record",
    "encode_target",
    "pad_batch",
]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

TASKS = ("t2m", "m2t")

# ----


@dataclass
class MixedSequence:
    """
    Description
    -----------

    This is the base-class object for a prompt or a full training
    sequence; prompt_len counts the prompt positions.

    """

    ids: List[int]
    loss_mask: List[bool]
    task: str
    prompt_len: int = 0
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.ids)

    @property
    def prompt_ids(self) -> List[int]:
        return self.ids[: self.prompt_len]

    @property
    def target_ids(self) -> List[int]:
        return self.ids[self.prompt_len :]


# ----


def _check_task(task: str) -> None:
    if task not in TASKS:
        msg = f"The task {task} is not one of {list(TASKS)}. Aborting!!!"
        raise VocabInterfaceError(msg=msg)


def _payload(task: str, caption: str, motion: List[int], side: str) -> None:
    # t2m needs a caption prompt and a motion target; m2t the reverse.
    needs_caption = (task == "t2m") == (side == "prompt")
    if needs_caption and not caption:
        msg = f"The {task} {side} requires a caption. Aborting!!!"
        raise VocabInterfaceError(msg=msg)

    if not needs_caption and not motion:
        msg = f"The {task} {side} requires motion token indices. Aborting!!!"
        raise VocabInterfaceError(msg=msg)


# ----


def encode_prompt(
    vocab: Vocabulary, task: str, caption: str = None, motion: List[int] = None
) -> MixedSequence:
    """
    Description
    -----------

    This function builds the prompt part of a sequence.

    Parameters
    ----------

    vocab: Vocabulary

        A Python Vocabulary object.

    task: str

        A Python string specifying the task; t2m or m2t.

    Keywords
    --------

    caption: str, optional

        A Python string containing the caption (t2m).

    motion: list, optional

        A Python list of codebook indices (m2t).

    Returns
    -------

    prompt: MixedSequence

        A Python MixedSequence object with an all-false loss mask.

    Raises
    ------

    VocabInterfaceError:

        * raised if the task is unknown or its payload is missing.

    """

    _check_task(task=task)
    _payload(task=task, caption=caption, motion=motion, side="prompt")

    instruction = vocab.encode_text(INSTRUCTIONS[task])
    if task == "t2m":
        ids = [vocab.bos_id] + instruction + vocab.encode_text(caption)
    else:
        ids = (
            [vocab.bos_id, vocab.id_of(MOTION_OPEN)]
            + vocab.motion_ids(motion)
            + [vocab.id_of(MOTION_CLOSE)]
            + instruction
        )

    return MixedSequence(ids=ids, loss_mask=[False] * len(ids), task=task, prompt_len=len(ids))


# ----


def encode_target(
    vocab: Vocabulary,
    prompt: MixedSequence,
    cot: str,
    caption: str = None,
    motion: List[int] = None,
) -> MixedSequence:
    """
    Description
    -----------

    This function appends the target part to a prompt; an empty CoT
    yields an empty <think></think> span.

    Parameters
    ----------

    vocab: Vocabulary

        A Python Vocabulary object.

    prompt: MixedSequence

        A Python MixedSequence object built by encode_prompt.

    cot: str

        A Python string containing the CoT text.

    Keywords
    --------

    caption: str, optional

        A Python string containing the caption (m2t).

    motion: list, optional

        A Python list of codebook indices (t2m).

    Returns
    -------

    sequence: MixedSequence

        A Python MixedSequence object.

    Raises
    ------

    VocabInterfaceError:

        * raised if the payload does not match the task.

    """

    task = prompt.task
    _payload(task=task, caption=caption, motion=motion, side="target")

    target = [vocab.id_of(THINK_OPEN)] + vocab.encode_text(cot or "") + [vocab.id_of(THINK_CLOSE)]
    if task == "t2m":
        target += (
            [vocab.id_of(MOTION_OPEN)] + vocab.motion_ids(motion) + [vocab.id_of(MOTION_CLOSE)]
        )
    else:
        target += (
            [vocab.id_of(ANSWER_OPEN)] + vocab.encode_text(caption) + [vocab.id_of(ANSWER_CLOSE)]
        )
    target.append(vocab.eos_id)

    return MixedSequence(
        ids=list(prompt.ids) + target,
        loss_mask=[False] * prompt.prompt_len + [True] * len(target),
        task=task,
        prompt_len=prompt.prompt_len,
        meta=dict(prompt.meta),
    )


# ----


def encode_record(
    vocab: Vocabulary, record: DatasetRecord, task: str, motion: List[int], use_cot: bool = True
) -> MixedSequence:
    """
    Description
    -----------

    This function builds the full training sequence of a record for a
    task given the record's motion token indices.

    """

    prompt = encode_prompt(vocab=vocab, task=task, caption=record.caption, motion=motion)
    prompt.meta["record"] = record.id
    cot = record.cot if use_cot else ""

    return encode_target(
        vocab=vocab, prompt=prompt, cot=cot, caption=record.caption, motion=motion
    )


# ----


def pad_batch(sequences: List[MixedSequence], pad_id: int) -> Tuple[numpy.ndarray, numpy.ndarray]:
    """
    Description
    -----------

    This function right-pads sequences to a common length.

    Returns
    -------

    ids: numpy.ndarray

        A Python numpy.ndarray of shape (B, T) and integer type.

    mask: numpy.ndarray

        A Python numpy.ndarray of shape (B, T) and boolean type;
        padding positions are false.

    """

    length = max(len(sequence) for sequence in sequences)
    ids = numpy.full((len(sequences), length), pad_id, dtype=numpy.int64)
    mask = numpy.zeros((len(sequences), length), dtype=bool)
    for row, sequence in enumerate(sequences):
        ids[row, : len(sequence)] = sequence.ids
        mask[row, : len(sequence)] = sequence.loss_mask

    return (ids, mask)