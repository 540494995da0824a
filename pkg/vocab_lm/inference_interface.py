# =========================================================================

# Module: vocab_lm/inference_interface.py

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

    inference_interface.py

Description
-----------

    This module contains single-prompt generation with a trained
    policy: a motion for a caption, and a caption for a motion blob.
    A completion that does not parse is returned with its raw text and
    without a payload.

Classes
-------

    Generation(task, think_text, raw, format_valid, answer_text,
    motion_indices, frames)

        This is the base-class object for one generation.

Functions
---------

    caption_motion(policy_path, tokenizer_path, motion_path, seed=0,
    temperature=1.0, top_k=50, max_new=128)

        This function captions a motion blob file.

    generate_motion(policy_path, tokenizer_path, caption, seed=0,
    out_path=None, temperature=1.0, top_k=50, max_new=128)

        This function generates a motion for a caption.

Author(s)
---------

    unimo_pyutils developers; 02 March 2026

History
-------

    2026-03-02: Initial implementation.

"""

# ----

from dataclasses import dataclass
from typing import List, Union

import numpy

from ioapps import motion_interface
from synthdata.primitives_interface import FPS
from tokenizer_vq.vqvae_interface import MotionTokenizer
from utils.logger_interface import Logger
from vocab_lm.parse_interface import parse_output
from vocab_lm.prompt_interface import encode_prompt
from vocab_lm.sampling_interface import sample
from vocab_lm.transformer_interface import TinyLM, load_policy
from vocab_lm.vocab_interface import Vocabulary

# ----

# Define all available attributes.
__all__ = ["Generation", "caption_motion", "generate_motion"]

# ----

logger = Logger()

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----


@dataclass
class Generation:
    """
    Description
    -----------

    This is the base-class object for one generation; the payload
    fields are NoneType when format_valid is false.

    """

    task: str
    think_text: str
    raw: str
    format_valid: bool
    answer_text: Union[str, None] = None
    motion_indices: Union[List[int], None] = None
    frames: Union[numpy.ndarray, None] = None


def _complete(
    model: TinyLM,
    vocab: Vocabulary,
    task: str,
    prompt: List[int],
    seed: int,
    temperature: float,
    top_k: int,
    max_new: int,
) -> Generation:
    completion = sample(
        model=model,
        prompt=prompt,
        temperature=temperature,
        top_k=top_k,
        max_new=min(max_new, model.config.context - len(prompt)),
        seed=seed,
        eos_id=vocab.eos_id,
        banned=(vocab.pad_id, vocab.bos_id),
    )
    parsed = parse_output(output=completion, task=task, vocab=vocab)
    if not parsed.format_valid:
        logger.warn(msg=f"The {task} generation is not well-formed; raw output: {parsed.raw}")

    return Generation(
        task=task,
        think_text=parsed.think_text,
        raw=parsed.raw,
        format_valid=parsed.format_valid,
        answer_text=parsed.answer_text if parsed.format_valid else None,
        motion_indices=parsed.motion_indices if parsed.format_valid else None,
    )


def generate_motion(
    policy_path: str,
    tokenizer_path: str,
    caption: str,
    seed: int = 0,
    out_path: str = None,
    temperature: float = 1.0,
    top_k: int = 50,
    max_new: int = 128,
) -> Generation:
    """
    Description
    -----------

    This function samples a t2m completion for a caption, decodes its
    motion tokens and, if out_path is given, writes the clip as a
    motion blob; words outside the policy vocabulary are replaced by
    the UNK token with a warning.

    Parameters
    ----------

    policy_path: str

        A Python string specifying the policy checkpoint.

    tokenizer_path: str

        A Python string specifying the tokenizer checkpoint.

    caption: str

        A Python string containing the caption.

    Keywords
    --------

    seed: int, optional

        A Python integer specifying the sampling seed.

    out_path: str, optional

        A Python string specifying the motion blob path.

    Returns
    -------

    generation: Generation

        A Python Generation object; frames holds the (T, D) clip with
        T = 4 x (motion token count).

    """

    (model, vocab, _) = load_policy(path=policy_path)
    prompt = encode_prompt(vocab=vocab, task="t2m", caption=caption)
    generation = _complete(model, vocab, "t2m", prompt.ids, seed, temperature, top_k, max_new)
    if generation.format_valid and generation.motion_indices:
        tokenizer = MotionTokenizer.from_checkpoint(path=tokenizer_path)
        generation.frames = tokenizer.decode(generation.motion_indices)
        if out_path is not None:
            motion_interface.write_motion(path=out_path, frames=generation.frames, fps=FPS)

    return generation


def caption_motion(
    policy_path: str,
    tokenizer_path: str,
    motion_path: str,
    seed: int = 0,
    temperature: float = 1.0,
    top_k: int = 50,
    max_new: int = 128,
) -> Generation:
    """
    Description
    -----------

    This function tokenizes a motion blob file and samples an m2t
    completion for it.

    Raises
    ------

    MotionInterfaceError:

        * raised if the motion blob cannot be read.

    TokenizerInterfaceError:

        * raised if the clip length is not a multiple of the
          downsample factor.

    """

    (frames, _) = motion_interface.read_motion(path=motion_path)
    tokenizer = MotionTokenizer.from_checkpoint(path=tokenizer_path)
    (model, vocab, _) = load_policy(path=policy_path)
    prompt = encode_prompt(vocab=vocab, task="m2t", motion=tokenizer.tokenize(frames))

    return _complete(model, vocab, "m2t", prompt.ids, seed, temperature, top_k, max_new)
