# =========================================================================

# Module: embedder/dual_encoder_interface.py

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

    dual_encoder_interface.py

Description
-----------

    This module contains the contrastive motion/text dual encoder.

    The motion branch standardizes each frame, applies a two-layer
    per-frame MLP, mean-pools over time and projects to the shared
    embedding dimension; the text branch mean-pools word embeddings
    and projects to the same dimension. A learnable logit scale
    (initialized to 1/0.07) multiplies the cosine similarities of the
    InfoNCE loss.

Classes
-------

    EmbedderConfig()

        This is the base-class object for the embedder configuration.

    DualEncoder(config, vocab_size, rng)

        This is the base-class object for the dual encoder
        parameters.

    MotionTextEmbedder(model, vocab)

        This is the base-class object for a frozen dual encoder.

Functions
---------

    cosine(u, v)

        This function returns the cosine similarity of two vectors.

    info_nce(motion, text, logit_scale)

        This function returns the symmetric InfoNCE loss of a batch.

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

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy
from schema import And, Optional, Use

from ioapps import checkpoint_interface
from synthdata.skeleton_interface import FRAME_DIM
from tensor.nn_interface import Linear, Module
from tensor.tensor_interface import (
    Tensor,
    add,
    cross_entropy,
    div,
    embedding,
    exp,
    gelu,
    matmul,
    mul,
    no_grad,
    sqrt,
    sub,
    transpose,
    tsum,
)
from utils import schema_interface
from utils.exceptions_interface import EmbedderInterfaceError
from vocab_lm.vocab_interface import Vocabulary, build_vocab

# ----

# Define all available attributes.
__all__ = [
    "DualEncoder",
    "EmbedderConfig",
    "MotionTextEmbedder",
    "cosine",
    "info_nce",
    "pad_frames",
    "pad_words",
    "save_embedder",
    "text_vocabulary",
]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

EMBEDDER_SCHEMA = {
    Optional("embed_dim", default=32): And(int, lambda value: value >= 1),
    Optional("hidden_dim", default=64): And(int, lambda value: value >= 1),
    Optional("word_dim", default=32): And(int, lambda value: value >= 1),
    Optional("steps", default=1000): And(int, lambda value: value >= 1),
    Optional("batch_size", default=32): And(int, lambda value: value >= 2),
    Optional("lr_max", default=1e-3): And(Use(float), lambda value: value > 0.0),
    Optional("lr_min", default=1e-5): And(Use(float), lambda value: value >= 0.0),
    Optional("init_temperature", default=0.07): And(Use(float), lambda value: value > 0.0),
    Optional("pool_size", default=32): And(int, lambda value: value >= 2),
    Optional("log_interval", default=100): And(int, lambda value: value >= 1),
    Optional("seed", default=13): int,
}

# Upper bound of the logit scale.
MAX_LOGIT_SCALE = 100.0

_NORM_EPS = 1e-12

# ----


@dataclass
class EmbedderConfig:
    """
    Description
    -----------

    This is the base-class object for the embedder configuration;
    pool_size is the candidate pool of the validation retrieval
    statistic.

    """

    embed_dim: int = 32
    hidden_dim: int = 64
    word_dim: int = 32
    steps: int = 1000
    batch_size: int = 32
    lr_max: float = 1e-3
    lr_min: float = 1e-5
    init_temperature: float = 0.07
    pool_size: int = 32
    log_interval: int = 100
    seed: int = 13

    @classmethod
    def from_dict(cls, opts: Dict = None) -> "EmbedderConfig":
        return cls(**schema_interface.validate_opts(EMBEDDER_SCHEMA, dict(opts or {})))


# ----


def _normalize(x: Tensor) -> Tensor:
    return div(x, sqrt(add(tsum(mul(x, x), axis=-1, keepdims=True), _NORM_EPS)))


def _masked_mean(x: Tensor, mask: numpy.ndarray) -> Tensor:
    # (B, T, C) with a (B, T) mask -> (B, C).
    weights = numpy.asarray(mask, dtype=numpy.float64)[..., None]
    counts = weights.sum(axis=1)

    return div(tsum(mul(x, weights), axis=1), counts)


def cosine(u: numpy.ndarray, v: numpy.ndarray) -> float:
    """
    Description
    -----------

    This function returns the cosine similarity of two vectors.

    Raises
    ------

    EmbedderInterfaceError:

        * raised if either vector has zero norm.

    """

    (u, v) = (numpy.asarray(u, dtype=numpy.float64), numpy.asarray(v, dtype=numpy.float64))
    (norm_u, norm_v) = (numpy.linalg.norm(u), numpy.linalg.norm(v))
    if norm_u == 0.0 or norm_v == 0.0:
        msg = "Cannot compute the cosine similarity of a zero-norm embedding. Aborting!!!"
        raise EmbedderInterfaceError(msg=msg)

    return float(numpy.clip(u @ v / (norm_u * norm_v), -1.0, 1.0))


# ----


def info_nce(motion: Tensor, text: Tensor, logit_scale: Tensor) -> Tensor:
    """
    Description
    -----------

    This function returns the symmetric InfoNCE loss of a batch of
    matched (motion, text) embeddings; row i of each is a positive
    pair and every other row an in-batch negative.

    Parameters
    ----------

    motion: Tensor

        A Python Tensor object of shape (B, e).

    text: Tensor

        A Python Tensor object of shape (B, e).

    logit_scale: Tensor

        A Python Tensor object of shape (1,) holding the log of the
        logit scale.

    Returns
    -------

    loss: Tensor

        A Python Tensor object holding the scalar loss.

    Raises
    ------

    EmbedderInterfaceError:

        * raised if the batch has fewer than two pairs.

    """

    batch = motion.shape[0]
    if batch < 2:
        msg = (
            f"The contrastive loss requires at least 2 pairs for in-batch negatives; "
            f"received {batch}. Aborting!!!"
        )
        raise EmbedderInterfaceError(msg=msg)

    logits = mul(matmul(_normalize(motion), transpose(_normalize(text))), exp(logit_scale))
    labels = numpy.arange(batch)
    loss = mul(
        add(cross_entropy(logits, labels), cross_entropy(transpose(logits), labels)), 0.5
    )

    return loss


# ----


class DualEncoder(Module):
    """
    Description
    -----------

    This is the base-class object for the dual encoder parameters.

    Parameters
    ----------

    config: EmbedderConfig

        A Python EmbedderConfig object.

    vocab_size: int

        A Python integer specifying the number of word rows.

    rng: numpy.random.Generator

        The generator used to initialize the parameters.

    """

    def __init__(self, config: EmbedderConfig, vocab_size: int, rng: numpy.random.Generator):
        super().__init__()
        self.config = config
        self.frame_in = self.add_module("frame_in", Linear(FRAME_DIM, config.hidden_dim, rng))
        self.frame_mid = self.add_module(
            "frame_mid", Linear(config.hidden_dim, config.hidden_dim, rng)
        )
        self.motion_proj = self.add_module(
            "motion_proj", Linear(config.hidden_dim, config.embed_dim, rng)
        )
        self.word_emb = self.add_param(
            "word_emb", rng.normal(0.0, 1.0, size=(vocab_size, config.word_dim))
        )
        self.text_proj = self.add_module(
            "text_proj", Linear(config.word_dim, config.embed_dim, rng)
        )
        self.logit_scale = self.add_param(
            "logit_scale", numpy.array([numpy.log(1.0 / config.init_temperature)])
        )
        self.add_buffer("frame_mean", numpy.zeros(FRAME_DIM))
        self.add_buffer("frame_std", numpy.ones(FRAME_DIM))

    def motion(self, frames: numpy.ndarray, mask: numpy.ndarray) -> Tensor:
        """(B, T, D) zero-padded frames with a (B, T) mask -> (B, e)."""

        x = mul(sub(Tensor(frames), self.buffer("frame_mean")), 1.0 / self.buffer("frame_std"))
        hidden = gelu(self.frame_mid(gelu(self.frame_in(x))))

        return self.motion_proj(_masked_mean(hidden, mask))

    def text(self, ids: numpy.ndarray, mask: numpy.ndarray) -> Tensor:
        """(B, L) padded word ids with a (B, L) mask -> (B, e)."""

        return self.text_proj(_masked_mean(embedding(self.word_emb, ids), mask))


# ----


def pad_frames(clips: Sequence[numpy.ndarray]) -> Tuple[numpy.ndarray, numpy.ndarray]:
    """Zero-pads (T_i, D) clips into a (B, T, D) batch and its mask."""

    length = max(clip.shape[0] for clip in clips)
    frames = numpy.zeros((len(clips), length, FRAME_DIM))
    mask = numpy.zeros((len(clips), length), dtype=bool)
    for row, clip in enumerate(clips):
        frames[row, : clip.shape[0]] = clip
        mask[row, : clip.shape[0]] = True

    return (frames, mask)


def pad_words(vocab: Vocabulary, texts: Sequence[str]) -> Tuple[numpy.ndarray, numpy.ndarray]:
    """
    Description
    -----------

    This function encodes texts into a padded (B, L) id batch and its
    mask.

    Raises
    ------

    EmbedderInterfaceError:

        * raised if a text has no words.

    """

    encoded = []
    for text in texts:
        ids = vocab.encode_text(text or "")
        if not ids:
            msg = f"Cannot embed the empty text {text!r}. Aborting!!!"
            raise EmbedderInterfaceError(msg=msg)
        encoded.append(ids)

    length = max(len(ids) for ids in encoded)
    batch = numpy.full((len(encoded), length), vocab.pad_id, dtype=numpy.int64)
    mask = numpy.zeros((len(encoded), length), dtype=bool)
    for row, ids in enumerate(encoded):
        batch[row, : len(ids)] = ids
        mask[row, : len(ids)] = True

    return (batch, mask)


# ----


class MotionTextEmbedder:
    """
    Description
    -----------

    This is the base-class object for a frozen dual encoder; the
    returned embeddings are un-normalized.

    Parameters
    ----------

    model: DualEncoder

        A Python DualEncoder object; frozen on construction.

    vocab: Vocabulary

        A Python Vocabulary object for the text branch.

    """

    def __init__(self, model: DualEncoder, vocab: Vocabulary):
        self.model = model
        self.vocab = vocab
        self.model.freeze()

    @classmethod
    def from_checkpoint(cls, path: str) -> "MotionTextEmbedder":
        """
        Description
        -----------

        This method loads an embedder checkpoint read-only.

        Raises
        ------

        CheckpointInterfaceError:

            * raised if the checkpoint is missing or corrupted.

        """

        state = checkpoint_interface.read_checkpoint(path=path)
        meta = checkpoint_interface.read_checkpoint_meta(path=path)
        vocab = Vocabulary.from_dict(meta["vocab"])
        model = DualEncoder(
            config=EmbedderConfig.from_dict(meta["config"]),
            vocab_size=len(vocab),
            rng=numpy.random.default_rng(0),
        )
        model.load_state_dict(state)

        return cls(model=model, vocab=vocab)

    @property
    def embed_dim(self) -> int:
        return self.model.config.embed_dim

    def embed_motions(self, clips: Sequence[numpy.ndarray]) -> numpy.ndarray:
        """List of (T_i, D) clips -> (N, e) embeddings."""

        if not len(clips):
            return numpy.zeros((0, self.embed_dim))

        with no_grad():
            values = self.model.motion(*pad_frames(clips)).values

        return values

    def embed_texts(self, texts: Sequence[str]) -> numpy.ndarray:
        """List of texts -> (N, e) embeddings."""

        if not len(texts):
            return numpy.zeros((0, self.embed_dim))

        with no_grad():
            values = self.model.text(*pad_words(self.vocab, texts)).values

        return values

    def embed_motion(self, frames: numpy.ndarray) -> numpy.ndarray:
        return self.embed_motions([numpy.asarray(frames, dtype=numpy.float64)])[0]

    def embed_text(self, text: str) -> numpy.ndarray:
        """
        Description
        -----------

        This method embeds one text.

        Raises
        ------

        EmbedderInterfaceError:

            * raised if the text has no words.

        """

        return self.embed_texts([text])[0]


# ----


def save_embedder(
    model: DualEncoder, vocab: Vocabulary, path: str, config: Dict, extra: Dict = None
) -> Dict:
    """Writes the dual encoder checkpoint with its vocabulary."""

    info = {"vocab": vocab.to_dict()}
    info.update(extra or {})

    return checkpoint_interface.write_checkpoint(
        path=path, params=model.state_dict(), config=config, extra=info
    )


def text_vocabulary(records: List) -> Vocabulary:
    """The word-level vocabulary of the captions and CoT texts."""

    (vocab, _) = build_vocab(records=records, num_motion=0)

    return vocab
