# =========================================================================

# Module: tokenizer_vq/vqvae_interface.py

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

    vqvae_interface.py

Description
-----------

    This module contains the motion tokenizer: a 1-D convolutional
    encoder that downsamples time by 4, the codebook quantizer, a
    mirrored decoder and the vector-quantization loss.

    The encoder input is standardized per frame dimension with the
    training-set statistics (saved as buffers); the decoder output is
    mapped back to raw frame units, so the reconstruction error is in
    body lengths squared.

Classes
-------

    MotionTokenizer(model, codebook)

        This is the base-class object for a frozen tokenizer used by
        every downstream stage.

    TokenizerConfig()

        This is the base-class object for the tokenizer configuration.

    VQLoss(total, recon, embed, commit)

        This is the named tuple returned by vq_loss.

    VQVAE(config, rng)

        This is the base-class object for the encoder/decoder
        parameters.

Functions
---------

    vq_loss(x, x_hat, z, z_q)

        This function computes the reconstruction, embedding and
        commitment terms.

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
from typing import Dict, List, NamedTuple, Tuple

import numpy
from schema import And, Optional, Use

from ioapps import checkpoint_interface
from synthdata.skeleton_interface import FRAME_DIM
from tensor.nn_interface import Module
from tensor.tensor_interface import (
    Tensor,
    add,
    conv1d,
    detach,
    mean,
    mul,
    no_grad,
    power,
    relu,
    repeat_time,
    sub,
)
from tokenizer_vq.codebook_interface import Codebook, quantize_latents
from utils import schema_interface
from utils.exceptions_interface import TokenizerInterfaceError

# ----

# Define all available attributes.
__all__ = ["MotionTokenizer", "TokenizerConfig", "VQLoss", "VQVAE", "vq_loss"]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

# Two stride-2 layers.
DOWNSAMPLE = 4

TOKENIZER_SCHEMA = {
    Optional("codebook_size", default=512): And(int, lambda value: value >= 2),
    Optional("latent_dim", default=64): And(int, lambda value: value >= 1),
    Optional("hidden_dim", default=64): And(int, lambda value: value >= 1),
    Optional("decay", default=0.99): And(Use(float), lambda value: 0.0 <= value < 1.0),
    Optional("reset_window", default=256): And(int, lambda value: value >= 1),
    Optional("reset_threshold", default=1): And(int, lambda value: value >= 0),
    Optional("steps", default=2000): And(int, lambda value: value >= 1),
    Optional("batch_size", default=32): And(int, lambda value: value >= 1),
    Optional("window", default=16): And(int, lambda value: value % DOWNSAMPLE == 0),
    Optional("lr_max", default=2e-3): And(Use(float), lambda value: value > 0.0),
    Optional("lr_min", default=1e-5): And(Use(float), lambda value: value >= 0.0),
    Optional("log_interval", default=100): And(int, lambda value: value >= 1),
    Optional("seed", default=11): int,
}

# ----


@dataclass
class TokenizerConfig:
    """
    Description
    -----------

    This is the base-class object for the tokenizer configuration;
    window is the training crop length in frames.

    """

    codebook_size: int = 512
    latent_dim: int = 64
    hidden_dim: int = 64
    decay: float = 0.99
    reset_window: int = 256
    reset_threshold: int = 1
    steps: int = 2000
    batch_size: int = 32
    window: int = 16
    lr_max: float = 2e-3
    lr_min: float = 1e-5
    log_interval: int = 100
    seed: int = 11

    @classmethod
    def from_dict(cls, opts: Dict = None) -> "TokenizerConfig":
        return cls(**schema_interface.validate_opts(TOKENIZER_SCHEMA, dict(opts or {})))


# ----


class VQLoss(NamedTuple):
    total: Tensor
    recon: Tensor
    embed: Tensor
    commit: Tensor


# ----


class VQVAE(Module):
    """
    Description
    -----------

    This is the base-class object for the encoder/decoder parameters.

    The encoder is conv(k=4, s=2, p=1) -> ReLU -> conv(k=4, s=2, p=1);
    the decoder is upsample(2) -> conv(k=3, p=1) -> ReLU ->
    upsample(2) -> conv(k=3, p=1).

    Parameters
    ----------

    config: TokenizerConfig

        A Python TokenizerConfig object.

    rng: numpy.random.Generator

        The generator used to initialize the parameters.

    """

    def __init__(self, config: TokenizerConfig, rng: numpy.random.Generator):
        super().__init__()
        (hidden, latent) = (config.hidden_dim, config.latent_dim)
        shapes = (
            ("enc1", 4, FRAME_DIM, hidden),
            ("enc2", 4, hidden, latent),
            ("dec1", 3, latent, hidden),
            ("dec2", 3, hidden, FRAME_DIM),
        )
        for name, ksize, c_in, c_out in shapes:
            scale = 1.0 / numpy.sqrt(ksize * c_in)
            self.add_param(f"{name}.weight", rng.normal(0.0, scale, size=(ksize, c_in, c_out)))
            self.add_param(f"{name}.bias", numpy.zeros(c_out))

        self.add_buffer("frame_mean", numpy.zeros(FRAME_DIM))
        self.add_buffer("frame_std", numpy.ones(FRAME_DIM))

    def _conv(self, name: str, x: Tensor, stride: int, padding: int) -> Tensor:
        return conv1d(
            x,
            self._params[f"{name}.weight"],
            self._params[f"{name}.bias"],
            stride=stride,
            padding=padding,
        )

    def encode(self, frames) -> Tensor:
        """(B, T, D) raw frames -> (B, T / 4, d) latents."""

        frames = frames if isinstance(frames, Tensor) else Tensor(frames)
        x = mul(sub(frames, self.buffer("frame_mean")), 1.0 / self.buffer("frame_std"))
        hidden = relu(self._conv("enc1", x, stride=2, padding=1))

        return self._conv("enc2", hidden, stride=2, padding=1)

    def decode(self, latents: Tensor) -> Tensor:
        """(B, T', d) latents -> (B, 4 T', D) raw frames."""

        hidden = relu(self._conv("dec1", repeat_time(latents, 2), stride=1, padding=1))
        out = self._conv("dec2", repeat_time(hidden, 2), stride=1, padding=1)

        return add(mul(out, self.buffer("frame_std")), self.buffer("frame_mean"))


# ----


def vq_loss(x: Tensor, x_hat: Tensor, z: Tensor, z_q: Tensor) -> VQLoss:
    """
    Description
    -----------

    This function computes

        recon = mean((x - x_hat)^2)

        embed = mean((sg[z] - z_q)^2)

        commit = mean((z - sg[z_q])^2)

    and total = recon + embed + commit; the embed term carries no
    gradient to the encoder and the commit term carries none to the
    codebook.

    Raises
    ------

    TokenizerInterfaceError:

        * raised if x and x_hat or z and z_q differ in shape.

    """

    if x.shape != x_hat.shape or z.shape != z_q.shape:
        msg = (
            f"The VQ loss received shapes {x.shape}/{x_hat.shape} and "
            f"{z.shape}/{z_q.shape}. Aborting!!!"
        )
        raise TokenizerInterfaceError(msg=msg)

    recon = mean(power(sub(x, x_hat), 2.0))
    embed = mean(power(sub(detach(z), z_q), 2.0))
    commit = mean(power(sub(z, detach(z_q)), 2.0))

    return VQLoss(total=recon + embed + commit, recon=recon, embed=embed, commit=commit)


# ----


class MotionTokenizer:
    """
    Description
    -----------

    This is the base-class object for a frozen tokenizer; every
    parameter is non-trainable and every method operates on single
    clips given as (T, D) frame matrices.

    Parameters
    ----------

    model: VQVAE

        A Python VQVAE object.

    codebook: Codebook

        A Python Codebook object.

    """

    def __init__(self, model: VQVAE, codebook: Codebook):
        self.model = model
        self.codebook = codebook
        self.model.freeze()

    @classmethod
    def from_checkpoint(cls, path: str) -> "MotionTokenizer":
        """
        Description
        -----------

        This method loads a tokenizer checkpoint read-only.

        Raises
        ------

        CheckpointInterfaceError:

            * raised if the checkpoint is missing or corrupted.

        """

        state = checkpoint_interface.read_checkpoint(path=path)
        config = TokenizerConfig.from_dict(
            checkpoint_interface.read_checkpoint_meta(path=path)["config"]
        )
        model = VQVAE(config=config, rng=numpy.random.default_rng(0))
        model.load_state_dict(
            {key: value for key, value in state.items() if not key.startswith("codebook.")}
        )
        codebook = Codebook(
            codes=state["codebook.codes"],
            ema_counts=state["codebook.ema_counts"],
            ema_sums=state["codebook.ema_sums"],
            usage=numpy.zeros(state["codebook.codes"].shape[0], dtype=numpy.int64),
            decay=config.decay,
            initialized=True,
        )

        return cls(model=model, codebook=codebook)

    @property
    def downsample(self) -> int:
        return DOWNSAMPLE

    @property
    def num_codes(self) -> int:
        return self.codebook.num_codes

    def encode(self, frames: numpy.ndarray) -> numpy.ndarray:
        """
        Description
        -----------

        This method maps a (T, D) clip to its (T / 4, d) latents.

        Raises
        ------

        TokenizerInterfaceError:

            * raised if T is not a positive multiple of the downsample
              factor; T and the factor are named.

        """

        frames = numpy.asarray(frames, dtype=numpy.float64)
        if frames.ndim != 2 or frames.shape[1] != FRAME_DIM:
            msg = f"The clip of shape {frames.shape} is not a (T, {FRAME_DIM}) matrix. Aborting!!!"
            raise TokenizerInterfaceError(msg=msg)

        if frames.shape[0] == 0 or frames.shape[0] % DOWNSAMPLE:
            msg = (
                f"The clip length T={frames.shape[0]} is not a positive multiple of the "
                f"downsample factor l={DOWNSAMPLE}. Aborting!!!"
            )
            raise TokenizerInterfaceError(msg=msg)

        with no_grad():
            latents = self.model.encode(frames[None]).values[0]

        return latents

    def quantize(self, latents: numpy.ndarray) -> Tuple[numpy.ndarray, numpy.ndarray]:
        return quantize_latents(latents=latents, codes=self.codebook.codes)

    def tokenize(self, frames: numpy.ndarray) -> List[int]:
        """Clip -> motion token indices."""

        (indices, _) = self.quantize(self.encode(frames))

        return [int(index) for index in indices]

    def decode(self, indices: List[int]) -> numpy.ndarray:
        """
        Description
        -----------

        This method decodes motion token indices to a (4 N, D) clip.

        Raises
        ------

        TokenizerInterfaceError:

            * raised if the list is empty or an index is outside [0,
              K); the position and index are named.

        """

        indices = [int(index) for index in indices]
        if not indices:
            msg = "Cannot decode an empty motion token sequence. Aborting!!!"
            raise TokenizerInterfaceError(msg=msg)

        for position, index in enumerate(indices):
            if index < 0 or index >= self.num_codes:
                msg = (
                    f"The motion token at position {position} has index {index} outside "
                    f"[0, {self.num_codes}). Aborting!!!"
                )
                raise TokenizerInterfaceError(msg=msg)

        return self.decode_latents(self.codebook.codes[numpy.asarray(indices)])

    def decode_latents(self, latents: numpy.ndarray) -> numpy.ndarray:
        with no_grad():
            frames = self.model.decode(Tensor(numpy.asarray(latents)[None])).values[0]

        return frames

    def reconstruct(self, frames: numpy.ndarray) -> numpy.ndarray:
        """decode(quantize(encode(frames)))."""

        (_, quantized) = self.quantize(self.encode(frames))

        return self.decode_latents(quantized)
