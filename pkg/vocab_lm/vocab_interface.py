# =========================================================================

# Module: vocab_lm/vocab_interface.py

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

    vocab_interface.py

Description
-----------

    This module contains the unified vocabulary of text words, format
    tags and motion tokens.

    Ids are dense and grouped by class in the order: specials (PAD,
    BOS, EOS, UNK), text words (sorted), format tags, motion tokens
    <Motion_0> ... <Motion_{K-1}>. The specials and text words form
    the base vocabulary; the format tags and motion tokens are added
    by expansion.

Classes
-------

    Vocabulary(tokens, base_size)

        This is the base-class object for the token/id map.

Functions
---------

    build_vocab(records, num_motion)

        This function builds the vocabulary of a dataset.

    motion_token(index)

        This function returns the tag string of a motion token.

    tokenize_text(text)

        This function splits mixed text (words and tags) into token
        strings.

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

import re
from typing import Dict, Iterable, List, Tuple

from synthdata.dataset_interface import DatasetRecord
from synthdata.language_interface import closed_vocabulary, split_words
from utils.exceptions_interface import VocabInterfaceError
from utils.logger_interface import Logger

# ----

# Define all available attributes.
__all__ = [
    "FORMAT_TOKENS",
    "INSTRUCTIONS",
    "SPECIALS",
    "Vocabulary",
    "build_vocab",
    "motion_token",
    "tokenize_text",
]

# ----

logger = Logger()

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

PAD = "<pad>"
BOS = "<bos>"
EOS = "<eos>"
UNK = "<unk>"

SPECIALS = (PAD, BOS, EOS, UNK)

THINK_OPEN = "<think>"
THINK_CLOSE = "</think>"
MOTION_OPEN = "<Motion>"
MOTION_CLOSE = "</Motion>"
ANSWER_OPEN = "<Answer>"
ANSWER_CLOSE = "</Answer>"

FORMAT_TOKENS = (
    THINK_OPEN,
    THINK_CLOSE,
    MOTION_OPEN,
    MOTION_CLOSE,
    ANSWER_OPEN,
    ANSWER_CLOSE,
)

# The task instructions; their words belong to the base vocabulary.
INSTRUCTIONS = {
    "t2m": "Generate the motion tokens of the caption :",
    "m2t": "Describe the motion above in one sentence :",
}

_MOTION_PATTERN = re.compile(r"^<Motion_(\d+)>$")

_TEXT_PATTERN = re.compile(r"<[^<>\s]+>|[^\s<>,.]+|[,.]")

# ----


def motion_token(index: int) -> str:
    return f"<Motion_{int(index)}>"


def tokenize_text(text: str) -> List[str]:
    """
    Description
    -----------

    This function splits mixed text into token strings; tags may be
    written with or without surrounding whitespace.

    """

    return _TEXT_PATTERN.findall(text)


# ----


class Vocabulary:
    """
    Description
    -----------

    This is the base-class object for the token/id map.

    Parameters
    ----------

    tokens: list

        A Python list of unique token strings; the list index is the
        id.

    Keywords
    --------

    base_size: int, optional

        A Python integer specifying the number of base tokens
        (specials and text words); all tokens are base tokens if
        NoneType.

    Raises
    ------

    VocabInterfaceError:

        * raised if a token string is duplicated or a special is
          missing.

    """

    def __init__(self, tokens: List[str], base_size: int = None):
        self.tokens: List[str] = []
        self.index: Dict[str, int] = {}
        self.add_tokens(tokens)
        self.base_size = len(self.tokens) if base_size is None else int(base_size)

        missing = [token for token in SPECIALS if token not in self.index]
        if missing:
            msg = f"The vocabulary is missing the special tokens {missing}. Aborting!!!"
            raise VocabInterfaceError(msg=msg)

        self.pad_id = self.index[PAD]
        self.bos_id = self.index[BOS]
        self.eos_id = self.index[EOS]
        self.unk_id = self.index[UNK]
        self.unk_count = 0

    def __len__(self) -> int:
        return len(self.tokens)

    def add_tokens(self, tokens: Iterable[str]) -> List[int]:
        """
        Description
        -----------

        This method appends new tokens and returns their ids.

        Raises
        ------

        VocabInterfaceError:

            * raised if a token string already exists.

        """

        ids = []
        for token in tokens:
            if token in self.index:
                msg = f"The token {token} already exists in the vocabulary. Aborting!!!"
                raise VocabInterfaceError(msg=msg)
            self.index[token] = len(self.tokens)
            self.tokens.append(token)
            ids.append(self.index[token])

        return ids

    @property
    def motion_offset(self) -> int:
        return self.index.get(motion_token(0), len(self.tokens))

    @property
    def num_motion(self) -> int:
        return sum(1 for token in self.tokens if _MOTION_PATTERN.match(token))

    def id_of(self, token: str) -> int:
        return self.index[token]

    def is_motion(self, token_id: int) -> bool:
        return self.motion_offset <= token_id < self.motion_offset + self.num_motion

    def motion_ids(self, indices: Iterable[int]) -> List[int]:
        """Codebook indices -> token ids."""

        ids = []
        for index in indices:
            token = motion_token(index)
            if token not in self.index:
                msg = f"The motion token {token} is not in the vocabulary. Aborting!!!"
                raise VocabInterfaceError(msg=msg)
            ids.append(self.index[token])

        return ids

    def motion_index(self, token_id: int) -> int:
        return int(_MOTION_PATTERN.match(self.tokens[token_id]).group(1))

    def encode_words(self, words: List[str]) -> List[int]:
        """
        Description
        -----------

        This method maps word tokens to ids; unknown words map to UNK
        and are counted in unk_count with a warning.

        """

        ids = []
        for word in words:
            if word in self.index:
                ids.append(self.index[word])
            else:
                self.unk_count += 1
                logger.warn(msg=f"The word {word} is not in the vocabulary; using {UNK}.")
                ids.append(self.unk_id)

        return ids

    def encode_text(self, text: str) -> List[int]:
        return self.encode_words(split_words(text=text))

    def decode(self, ids: Iterable[int], skip_specials: bool = False) -> List[str]:
        tokens = [self.tokens[int(token_id)] for token_id in ids]
        if skip_specials:
            tokens = [token for token in tokens if token not in (PAD, BOS, EOS)]

        return tokens

    def decode_text(self, ids: Iterable[int]) -> str:
        """Token ids -> whitespace-separated tag string."""

        return " ".join(self.decode(ids))

    def to_dict(self) -> Dict:
        return {"tokens": list(self.tokens), "base_size": self.base_size}

    @classmethod
    def from_dict(cls, vocab_dict: Dict) -> "Vocabulary":
        return cls(tokens=vocab_dict["tokens"], base_size=vocab_dict["base_size"])


# ----


def build_vocab(records: List[DatasetRecord], num_motion: int) -> Tuple[Vocabulary, List[str]]:
    """
    Description
    -----------

    This function builds the vocabulary of a dataset: the base
    vocabulary holds the specials and every word of the captions, the
    CoT texts, the template vocabulary and the instructions; the
    format tags and num_motion motion tokens are then added.

    Parameters
    ----------

    records: list

        A Python list of DatasetRecord objects.

    num_motion: int

        A Python integer specifying the codebook size K.

    Returns
    -------

    vocab: Vocabulary

        A Python Vocabulary object.

    added: list

        A Python list of the token strings added by expansion.

    Raises
    ------

    VocabInterfaceError:

        * raised if the record list is empty.

    """

    if not records:
        msg = "Cannot build a vocabulary from an empty manifest. Aborting!!!"
        raise VocabInterfaceError(msg=msg)

    words = set(closed_vocabulary())
    for record in records:
        words.update(split_words(text=record.caption))
        words.update(split_words(text=record.cot))
    for instruction in INSTRUCTIONS.values():
        words.update(split_words(text=instruction))

    vocab = Vocabulary(tokens=list(SPECIALS) + sorted(words))
    added = list(FORMAT_TOKENS) + [motion_token(index) for index in range(num_motion)]
    vocab.add_tokens(added)

    return (vocab, added)
