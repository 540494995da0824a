# =========================================================================

# Module: vocab_lm/parse_interface.py

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

    parse_interface.py

Description
-----------

    This module parses a generated completion against the output
    grammar of its task:

        t2m: <think> WORD* </think> <Motion> MOTION* </Motion> [<eos>]

        m2t: <think> WORD* </think> <Answer> WORD* </Answer> [<eos>]

    where WORD is any text word (including <unk>) and MOTION any
    motion token. Nothing else may precede or follow the match. A
    malformed completion is reported as format-invalid and never
    raises.

Classes
-------

    StructuredOutput(think_text, motion_indices, answer_text,
    format_valid)

        This is the base-class object for a parsed completion.

Functions
---------

    parse_output(output, task, vocab)

        This function parses a completion given as ids or text.

Author(s)
---------

    unimo_pyutils developers; 02 March 2026

History
-------

    2026-03-02: Initial implementation.

"""

# ----

import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

from synthdata.language_interface import detokenize
from vocab_lm.vocab_interface import (
    ANSWER_CLOSE,
    ANSWER_OPEN,
    EOS,
    FORMAT_TOKENS,
    MOTION_CLOSE,
    MOTION_OPEN,
    SPECIALS,
    THINK_CLOSE,
    THINK_OPEN,
    UNK,
    Vocabulary,
    tokenize_text,
)

# ----

# Define all available attributes.
__all__ = ["StructuredOutput", "parse_output"]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

_MOTION_PATTERN = re.compile(r"^<Motion_(\d+)>$")

# ----


@dataclass
class StructuredOutput:
    """
    Description
    -----------

    This is the base-class object for a parsed completion; the
    payload fields are only meaningful when format_valid is true.

    """

    think_text: str = ""
    motion_indices: Optional[List[int]] = None
    answer_text: Optional[str] = None
    format_valid: bool = False
    raw: str = ""


# ----


def _is_word(token: str) -> bool:
    if token == UNK:
        return True

    return token not in FORMAT_TOKENS and token not in SPECIALS and not (
        token.startswith("<") and token.endswith(">")
    )


def _span(tokens: List[str], start: int, close: str, accept) -> Optional[int]:
    # Index of the closing tag when every token before it is accepted.
    for idx in range(start, len(tokens)):
        if tokens[idx] == close:
            return idx
        if not accept(tokens[idx]):
            return None

    return None


# ----


def parse_output(
    output: Union[str, Sequence[int]], task: str, vocab: Vocabulary = None
) -> StructuredOutput:
    """
    Description
    -----------

    This function parses a completion given as token ids or text.

    Parameters
    ----------

    output: str or list

        A Python string containing the completion text, or a Python
        list of token ids (vocab required).

    task: str

        A Python string specifying the task; t2m or m2t.

    Keywords
    --------

    vocab: Vocabulary, optional

        A Python Vocabulary object; required for id input.

    Returns
    -------

    parsed: StructuredOutput

        A Python StructuredOutput object.

    """

    if isinstance(output, str):
        tokens = tokenize_text(output)
    else:
        tokens = vocab.decode(output)

    parsed = StructuredOutput(raw=" ".join(tokens))
    if tokens and tokens[-1] == EOS:
        tokens = tokens[:-1]

    if not tokens or tokens[0] != THINK_OPEN:
        return parsed

    think_end = _span(tokens, 1, THINK_CLOSE, _is_word)
    if think_end is None or think_end + 1 >= len(tokens):
        return parsed
    think_text = detokenize(tokens[1:think_end])

    if task == "t2m":
        (opener, closer, accept) = (MOTION_OPEN, MOTION_CLOSE, _MOTION_PATTERN.match)
    else:
        (opener, closer, accept) = (ANSWER_OPEN, ANSWER_CLOSE, _is_word)

    if tokens[think_end + 1] != opener:
        return parsed

    payload_end = _span(tokens, think_end + 2, closer, accept)
    if payload_end is None or payload_end != len(tokens) - 1:
        return parsed

    payload = tokens[think_end + 2 : payload_end]
    if task == "t2m":
        indices = [int(_MOTION_PATTERN.match(token).group(1)) for token in payload]
        if vocab is not None and any(index >= vocab.num_motion for index in indices):
            return parsed
        parsed.motion_indices = indices
    else:
        parsed.answer_text = detokenize(payload)

    parsed.think_text = think_text
    parsed.format_valid = True

    return parsed
