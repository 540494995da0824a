# =========================================================================

# Module: synthdata/language_interface.py

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

    language_interface.py

Description
-----------

    This module renders the caption and the chain-of-thought (CoT)
    trace of a primitive trace and provides the word-level text
    tokenization shared by the vocabulary.

    Every caption clause and every CoT sentence embeds a keyword of
    its primitive, so the primitive names can be recovered from either
    text in order.

Functions
---------

    closed_vocabulary()

        This function returns every word the caption and CoT templates
        can emit.

    detokenize(words)

        This function joins words into text.

    recover_primitives(text)

        This function recovers the ordered primitive names from a
        caption or a CoT text.

    render_caption(trace, seed)

        This function renders the one-sentence caption of a trace.

    render_cot(trace, seed)

        This function renders the CoT text of a trace.

    split_words(text)

        This function splits text into word-level tokens.

    word_counts(texts)

        This function counts the word-level tokens across texts.

Author(s)
---------

    unimo_pyutils developers; 02 March 2026

History
-------

    2026-03-02: Initial implementation.

"""

# ----

import re
from typing import Dict, List, Set

from synthdata.primitives_interface import (
    PARAM_TABLE,
    Primitive,
    PrimitiveTrace,
    validate_trace,
)

# ----

# Define all available attributes.
__all__ = [
    "CAPTION_TEMPLATES",
    "closed_vocabulary",
    "detokenize",
    "recover_primitives",
    "render_caption",
    "render_cot",
    "split_words",
    "word_counts",
]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

SUBJECT = "a person"

CAPTION_TEMPLATES = {
    "walk": ("walks forward", "walks ahead", "takes a walk forward"),
    "turn": ("turns around", "turns to the side", "makes a turn in place"),
    "wave": ("waves the right hand", "waves hello", "raises the right arm and waves"),
    "squat": ("squats down", "does a squat", "squats down low"),
    "jump": ("jumps up", "jumps in place", "does a jump"),
    "raise_arm": ("raises both arms", "lifts both arms up", "raises both hands overhead"),
    "step_side": ("steps sideways", "moves sideways", "shuffles sideways to the left"),
    "stand": ("stands still", "stands in place", "remains still"),
}

# Checked in order; the first keyword found in a clause names its
# primitive ("raises the right arm and waves" is a wave).
KEYWORDS = (
    ("wave", ("wave",)),
    ("walk", ("walk",)),
    ("turn", ("turn",)),
    ("squat", ("squat",)),
    ("jump", ("jump",)),
    ("step_side", ("sideways",)),
    ("raise_arm", ("raise", "lift")),
    ("stand", ("stand", "still")),
)

NUMBER_WORDS = {1: "one", 2: "two", 3: "three", 4: "four"}

TIMES_WORDS = {1: "once", 2: "twice", 3: "three times"}

MIDDLE_CONNECTORS = ("Next", "Then")

_TOKEN_PATTERN = re.compile(r"[^\s,.]+|[,.]")

# ----


def _cot_clause(primitive: Primitive) -> str:
    # One sentence body per primitive, worded from its parameters.
    params = primitive.params
    if primitive.name == "walk":
        return (
            f"walks forward for {NUMBER_WORDS[params['steps']]} steps "
            "while swinging the arms"
        )
    if primitive.name == "turn":
        extent = "around" if params["angle"] >= 135.0 else "to the side"
        return f"turns the body {extent} in place"
    if primitive.name == "wave":
        return "raises the right arm and waves"
    if primitive.name == "squat":
        depth = "deep" if params["depth"] >= 0.3 else "shallow"
        return f"bends the knees into a {depth} squat and rises back up"
    if primitive.name == "jump":
        return f"bends the legs and jumps up {TIMES_WORDS[params['repeats']]}"
    if primitive.name == "raise_arm":
        extent = "above the head" if params["height"] >= 0.75 else "to the shoulders"
        return f"lifts both arms {extent}"
    if primitive.name == "step_side":
        return f"steps sideways to the left {TIMES_WORDS[params['steps']]}"

    return "stands still with the arms relaxed"


# ----


def closed_vocabulary() -> Set[str]:
    """
    Description
    -----------

    This function returns every word the caption and CoT templates can
    emit, punctuation included.

    Returns
    -------

    words: set

        A Python set of word strings.

    """

    texts = [SUBJECT, "and then", "the person", ", ."]
    texts.extend(["First", "Finally"] + list(MIDDLE_CONNECTORS))
    for templates in CAPTION_TEMPLATES.values():
        texts.extend(templates)

    for name, specs in PARAM_TABLE.items():
        # The CoT wording only depends on the parameter ends.
        variants = [{}]
        for key, spec in specs.items():
            values = range(int(spec.low), int(spec.high) + 1) if spec.integer else (
                spec.low,
                spec.high,
            )
            variants = [dict(item, **{key: value}) for item in variants for value in values]
        for params in variants:
            texts.append(_cot_clause(Primitive(name=name, params=params)))

    words = set()
    for text in texts:
        words.update(split_words(text=text))

    return words


# ----


def detokenize(words: List[str]) -> str:
    """
    Description
    -----------

    This function joins words with single spaces and removes the space
    before "," and ".".

    """

    text = " ".join(words)
    text = text.replace(" ,", ",").replace(" .", ".")

    return text


# ----


def recover_primitives(text: str) -> List[str]:
    """
    Description
    -----------

    This function recovers the ordered primitive names from a caption
    or a CoT text; clauses without a keyword are skipped.

    Parameters
    ----------

    text: str

        A Python string containing a caption or a CoT text.

    Returns
    -------

    names: list

        A Python list of primitive names.

    """

    if text.startswith("First"):
        clauses = [sentence for sentence in text.split(".") if sentence.strip()]
    else:
        body = text[len(SUBJECT):] if text.startswith(SUBJECT) else text
        clauses = re.split(r" and then |, ", body)

    names = []
    for clause in clauses:
        for name, keywords in KEYWORDS:
            if any(keyword in clause for keyword in keywords):
                names.append(name)
                break

    return names


# ----


def render_caption(trace: PrimitiveTrace, seed: int) -> str:
    """
    Description
    -----------

    This function renders the one-sentence caption of a trace; the
    template of the primitive at position i is chosen as
    (seed + i) modulo the template count, and the clauses are joined
    with ", " and a final " and then ".

    Parameters
    ----------

    trace: PrimitiveTrace

        A Python PrimitiveTrace object.

    seed: int

        A Python integer selecting the templates.

    Returns
    -------

    caption: str

        A Python string containing the caption.

    Raises
    ------

    SynthDataInterfaceError:

        * raised if the trace is invalid.

    """

    trace = validate_trace(trace=trace)

    clauses = []
    for idx, primitive in enumerate(trace.primitives):
        templates = CAPTION_TEMPLATES[primitive.name]
        clauses.append(templates[(seed + idx) % len(templates)])

    if len(clauses) == 1:
        body = clauses[0]
    else:
        body = ", ".join(clauses[:-1]) + " and then " + clauses[-1]

    caption = f"{SUBJECT} {body}"

    return caption


# ----


def render_cot(trace: PrimitiveTrace, seed: int) -> str:
    """
    Description
    -----------

    This function renders the CoT text of a trace: one sentence per
    primitive in chronological order, opened by "First" for the first
    primitive, "Finally" for the last, and "Next"/"Then" (alternating,
    phase chosen by the seed) in between.

    Parameters
    ----------

    trace: PrimitiveTrace

        A Python PrimitiveTrace object.

    seed: int

        A Python integer selecting the middle connector phase.

    Returns
    -------

    cot: str

        A Python string containing the CoT text.

    Raises
    ------

    SynthDataInterfaceError:

        * raised if the trace is invalid.

    """

    trace = validate_trace(trace=trace)
    count = len(trace.primitives)

    sentences = []
    for idx, primitive in enumerate(trace.primitives):
        if idx == 0:
            connector = "First"
        elif idx == count - 1:
            connector = "Finally"
        else:
            connector = MIDDLE_CONNECTORS[(seed + idx - 1) % len(MIDDLE_CONNECTORS)]
        sentences.append(f"{connector}, the person {_cot_clause(primitive)}.")

    cot = " ".join(sentences)

    return cot


# ----


def split_words(text: str) -> List[str]:
    """
    Description
    -----------

    This function splits text into case-sensitive word-level tokens;
    "," and "." are tokens of their own.

    Parameters
    ----------

    text: str

        A Python string.

    Returns
    -------

    words: list

        A Python list of token strings.

    """

    words = _TOKEN_PATTERN.findall(text)

    return words


# ----


def word_counts(texts: List[str]) -> Dict[str, int]:
    """
    Description
    -----------

    This function counts the word-level tokens across a list of texts.

    """

    counts: Dict[str, int] = {}
    for text in texts:
        for word in split_words(text=text):
            counts[word] = counts.get(word, 0) + 1

    return counts
