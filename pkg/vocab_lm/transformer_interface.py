# =========================================================================

# Module: vocab_lm/transformer_interface.py

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

    transformer_interface.py

Description
-----------

    This module contains the tiny decoder-only transformer policy:
    token and learned position embeddings, pre-norm blocks of causal
    multi-head self-attention and a GELU feed-forward, a final layer
    norm and an untied output head.

Classes
-------

    LMConfig()

        This is the base-class object for the model dimensions.

    TinyLM(config, vocab_size, rng)

        This is the base-class object for the policy.

Functions
---------

    expand_embeddings(model, num_new)

        This function appends mean-initialized rows for new tokens.

    load_policy(path)

        This function loads a policy checkpoint and its vocabulary.

    logprobs(model, ids)

        This function returns the log-probabilities of the realized
        next tokens.

    save_policy(model, vocab, path, config, extra=None)

        This function writes a policy checkpoint.

Requirements
------------

- numpy; https://numpy.org/

- schema; https://github.com/keleshev/schema

Author(s)
---------

    unimo_pyutils developers; 02 March 2026

History
-------

    2026-03-02: Initial implementation.

"""

# ----

from dataclasses import asdict, dataclass
from typing import Dict, Sequence, Tuple

import numpy
from schema import And, Optional

from ioapps import checkpoint_interface
from tensor.nn_interface import LayerNorm, Linear, Module
from tensor.tensor_interface import (
    Tensor,
    add,
    embedding,
    gelu,
    log_softmax,
    matmul,
    mul,
    reshape,
    softmax,
    take_along,
    transpose,
)
from utils import schema_interface
from utils.exceptions_interface import VocabInterfaceError
from vocab_lm.vocab_interface import Vocabulary

# ----

# Define all available attributes.
__all__ = [
    "LMConfig",
    "TinyLM",
    "expand_embeddings",
    "load_policy",
    "logprobs",
    "save_policy",
]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

LM_SCHEMA = {
    Optional("d_model", default=64): And(int, lambda value: value >= 1),
    Optional("num_heads", default=4): And(int, lambda value: value >= 1),
    Optional("num_layers", default=2): And(int, lambda value: value >= 1),
    Optional("d_ff", default=256): And(int, lambda value: value >= 1),
    Optional("context", default=256): And(int, lambda value: value >= 2),
}

_MASK_VALUE = -1e9

# ----


@dataclass
class LMConfig:
    d_model: int = 64
    num_heads: int = 4
    num_layers: int = 2
    d_ff: int = 256
    context: int = 256

    @classmethod
    def from_dict(cls, opts: Dict = None) -> "LMConfig":
        opts = schema_interface.validate_opts(LM_SCHEMA, dict(opts or {}))
        if opts["d_model"] % opts["num_heads"]:
            msg = (
                f"The model width {opts['d_model']} is not divisible by the head count "
                f"{opts['num_heads']}. Aborting!!!"
            )
            raise VocabInterfaceError(msg=msg)

        return cls(**opts)


# ----


class _Block(Module):
    def __init__(self, config: LMConfig, rng: numpy.random.Generator):
        super().__init__()
        self.num_heads = config.num_heads
        self.ln1 = self.add_module("ln1", LayerNorm(config.d_model))
        self.qkv = self.add_module("qkv", Linear(config.d_model, 3 * config.d_model, rng))
        self.proj = self.add_module("proj", Linear(config.d_model, config.d_model, rng))
        self.ln2 = self.add_module("ln2", LayerNorm(config.d_model))
        self.ff_in = self.add_module("ff_in", Linear(config.d_model, config.d_ff, rng))
        self.ff_out = self.add_module("ff_out", Linear(config.d_ff, config.d_model, rng))

    def attention(self, x: Tensor, mask: numpy.ndarray) -> Tensor:
        (batch, steps, width) = x.shape
        head_dim = width // self.num_heads
        qkv = reshape(self.qkv(x), (batch, steps, 3, self.num_heads, head_dim))
        qkv = transpose(qkv, (2, 0, 3, 1, 4))
        (query, key, value) = (qkv[0], qkv[1], qkv[2])
        scores = mul(matmul(query, transpose(key, (0, 1, 3, 2))), 1.0 / numpy.sqrt(head_dim))
        weights = softmax(add(scores, mask), axis=-1)
        out = transpose(matmul(weights, value), (0, 2, 1, 3))

        return self.proj(reshape(out, (batch, steps, width)))

    def __call__(self, x: Tensor, mask: numpy.ndarray) -> Tensor:
        x = add(x, self.attention(self.ln1(x), mask))

        return add(x, self.ff_out(gelu(self.ff_in(self.ln2(x)))))


# ----


class TinyLM(Module):
    """
    Description
    -----------

    This is the base-class object for the policy.

    Parameters
    ----------

    config: LMConfig

        A Python LMConfig object.

    vocab_size: int

        A Python integer specifying the number of token rows.

    rng: numpy.random.Generator

        The generator used to initialize the parameters.

    """

    def __init__(self, config: LMConfig, vocab_size: int, rng: numpy.random.Generator):
        super().__init__()
        self.config = config
        self.tok_emb = self.add_param(
            "tok_emb", rng.normal(0.0, 0.02, size=(vocab_size, config.d_model))
        )
        self.pos_emb = self.add_param(
            "pos_emb", rng.normal(0.0, 0.02, size=(config.context, config.d_model))
        )
        self.blocks = [
            self.add_module(f"block{idx}", _Block(config, rng))
            for idx in range(config.num_layers)
        ]
        self.ln_f = self.add_module("ln_f", LayerNorm(config.d_model))
        self.head = self.add_module("head", Linear(config.d_model, vocab_size, rng))

    @property
    def vocab_size(self) -> int:
        return int(self.tok_emb.shape[0])

    def __call__(self, ids: numpy.ndarray) -> Tensor:
        """
        Description
        -----------

        This method returns the next-token logits of shape (B, T, V)
        for a (B, T) id batch.

        Raises
        ------

        VocabInterfaceError:

            * raised if T exceeds the context length; both lengths are
              named.

        """

        ids = numpy.atleast_2d(numpy.asarray(ids, dtype=numpy.int64))
        steps = ids.shape[1]
        if steps > self.config.context:
            msg = (
                f"The sequence length {steps} exceeds the context length "
                f"{self.config.context}. Aborting!!!"
            )
            raise VocabInterfaceError(msg=msg)

        mask = numpy.triu(numpy.full((steps, steps), _MASK_VALUE), k=1)
        x = add(embedding(self.tok_emb, ids), self.pos_emb[:steps])
        for block in self.blocks:
            x = block(x, mask)

        return self.head(self.ln_f(x))


# ----


def expand_embeddings(model: TinyLM, num_new: int) -> TinyLM:
    """
    Description
    -----------

    This function appends num_new token rows; every new input
    embedding row equals the mean of the existing rows at the moment
    of expansion, and every new output head column (and bias entry)
    equals the mean of the existing columns.

    Parameters
    ----------

    model: TinyLM

        A Python TinyLM object; updated in place.

    num_new: int

        A Python integer specifying the number of new tokens.

    Returns
    -------

    model: TinyLM

        The updated TinyLM object.

    """

    emb = model.tok_emb.values
    model.tok_emb.values = numpy.concatenate(
        [emb, numpy.repeat(emb.mean(axis=0, keepdims=True), num_new, axis=0)], axis=0
    )

    weight = model.head.weight.values
    model.head.weight.values = numpy.concatenate(
        [weight, numpy.repeat(weight.mean(axis=1, keepdims=True), num_new, axis=1)], axis=1
    )
    bias = model.head.bias.values
    model.head.bias.values = numpy.concatenate([bias, numpy.full(num_new, bias.mean())])

    return model


# ----


def logprobs(model: TinyLM, ids: Sequence[int]) -> Tensor:
    """
    Description
    -----------

    This function returns the log-probabilities of the realized next
    tokens; entry t is log p(ids[t + 1] | ids[: t + 1]).

    Parameters
    ----------

    model: TinyLM

        A Python TinyLM object.

    ids: array-like

        A Python list (or numpy.ndarray) of token ids, or a (B, T)
        numpy.ndarray of equal-length sequences.

    Returns
    -------

    values: Tensor

        A Python Tensor object of shape (T - 1,) or (B, T - 1).

    Raises
    ------

    VocabInterfaceError:

        * raised if the sequence exceeds the context length.

    """

    ids = numpy.asarray(ids, dtype=numpy.int64)
    batched = ids.ndim == 2
    ids = numpy.atleast_2d(ids)

    logp = log_softmax(model(ids[:, :-1]), axis=-1)
    values = take_along(logp, ids[:, 1:, None], axis=-1)
    values = reshape(values, ids[:, 1:].shape if batched else (ids.shape[1] - 1,))

    return values


# ----


def save_policy(
    model: TinyLM, vocab: Vocabulary, path: str, config: Dict, extra: Dict = None
) -> Dict:
    """
    Description
    -----------

    This function writes a policy checkpoint; the sidecar carries the
    model dimensions and the vocabulary.

    """

    info = {"lm": asdict(model.config), "vocab": vocab.to_dict()}
    info.update(extra or {})

    return checkpoint_interface.write_checkpoint(
        path=path, params=model.state_dict(), config=config, extra=info
    )


def load_policy(path: str) -> Tuple[TinyLM, Vocabulary, Dict]:
    """
    Description
    -----------

    This function loads a policy checkpoint.

    Returns
    -------

    model: TinyLM

        A Python TinyLM object.

    vocab: Vocabulary

        A Python Vocabulary object.

    meta: dict

        A Python dictionary containing the checkpoint sidecar.

    Raises
    ------

    CheckpointInterfaceError:

        * raised if the checkpoint is missing or corrupted.

    """

    state = checkpoint_interface.read_checkpoint(path=path)
    meta = checkpoint_interface.read_checkpoint_meta(path=path)
    vocab = Vocabulary.from_dict(meta["vocab"])
    model = TinyLM(
        config=LMConfig.from_dict(meta["lm"]),
        vocab_size=len(vocab),
        rng=numpy.random.default_rng(0),
    )
    model.load_state_dict(state)

    return (model, vocab, meta)