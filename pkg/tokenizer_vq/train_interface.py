# =========================================================================

# Module: tokenizer_vq/train_interface.py

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

    train_interface.py

Description
-----------

    This module trains the motion tokenizer.

    Each step crops one random window per sampled training clip,
    encodes it, quantizes the latents against the codebook, decodes
    the straight-through quantized latents and takes one Adam step on
    the encoder/decoder; the codebook itself moves only through the
    EMA update and the windowed dead-code reset.

Functions
---------

    evaluate_tokenizer(tokenizer, clips, train_mean)

        This function returns the validation statistics of a
        tokenizer.

    train_tokenizer(dataset, config, out_path, log_path=None)

        This function trains a tokenizer and writes its checkpoint.

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

from dataclasses import asdict
from typing import Dict, List

import numpy

from ioapps import checkpoint_interface
from synthdata.dataset_interface import Dataset
from tensor.optim_interface import OptimizerState, adam_step, collect_grads, cosine_lr
from tensor.tensor_interface import Tensor, add, detach, sub
from tokenizer_vq.codebook_interface import (
    Codebook,
    ema_update,
    init_codebook,
    perplexity,
    quantize_latents,
    reset_dead_codes,
)
from tokenizer_vq.vqvae_interface import (
    DOWNSAMPLE,
    VQVAE,
    MotionTokenizer,
    TokenizerConfig,
    vq_loss,
)
from tools.trainlog_interface import TrainingLog
from utils.exceptions_interface import TokenizerInterfaceError
from utils.logger_interface import Logger

# ----

# Define all available functions.
__all__ = ["evaluate_tokenizer", "train_tokenizer"]

# ----

logger = Logger()

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

# Standard deviation floor for the input standardization.
_STD_FLOOR = 1e-2

# ----


def _sample_windows(
    clips: List[numpy.ndarray], batch_size: int, window: int, rng: numpy.random.Generator
) -> numpy.ndarray:
    # One crop per sampled clip; crops start on token boundaries.
    batch = []
    for pick in rng.integers(0, len(clips), size=batch_size):
        frames = clips[pick]
        starts = (frames.shape[0] - window) // DOWNSAMPLE + 1
        start = DOWNSAMPLE * int(rng.integers(0, max(starts, 1)))
        batch.append(frames[start : start + window])

    return numpy.stack(batch)


# ----


def evaluate_tokenizer(
    tokenizer: MotionTokenizer, clips: List[numpy.ndarray], train_mean: numpy.ndarray
) -> Dict:
    """
    Description
    -----------

    This function returns the validation reconstruction error, the
    error of always predicting the training mean pose, and the
    codebook perplexity over the validation clips.

    Parameters
    ----------

    tokenizer: MotionTokenizer

        A Python MotionTokenizer object.

    clips: list

        A Python list of (T, D) numpy.ndarray clips.

    train_mean: numpy.ndarray

        A Python numpy.ndarray specifying the training mean pose.

    Returns
    -------

    stats: dict

        A Python dictionary with the keys val_mse, mean_pose_mse and
        perplexity.

    """

    (sq_err, mean_err, count, tokens) = (0.0, 0.0, 0, [])
    for frames in clips:
        (indices, quantized) = tokenizer.quantize(tokenizer.encode(frames))
        recon = tokenizer.decode_latents(quantized)
        sq_err += float(((frames - recon) ** 2).sum())
        mean_err += float(((frames - train_mean) ** 2).sum())
        count += frames.size
        tokens.extend(int(index) for index in indices)

    stats = {
        "val_mse": sq_err / count,
        "mean_pose_mse": mean_err / count,
        "perplexity": perplexity(indices=numpy.asarray(tokens), num_codes=tokenizer.num_codes),
    }

    return stats


# ----


def train_tokenizer(
    dataset: Dataset, config: TokenizerConfig, out_path: str, log_path: str = None
) -> Dict:
    """
    Description
    -----------

    This function trains a tokenizer on the training split, evaluates
    it on the validation split and writes the checkpoint; identical
    inputs give a byte-identical checkpoint.

    Parameters
    ----------

    dataset: Dataset

        A Python Dataset object.

    config: TokenizerConfig

        A Python TokenizerConfig object.

    out_path: str

        A Python string specifying the checkpoint path.

    Keywords
    --------

    log_path: str, optional

        A Python string specifying the NDJSON training log path.

    Returns
    -------

    meta: dict

        A Python dictionary containing the checkpoint sidecar.

    Raises
    ------

    TokenizerInterfaceError:

        * raised if the loss becomes non-finite; the step is named.

    DatasetInterfaceError:

        * raised if the training or validation split is empty.

    """

    train = [dataset.load_clip(record).frames for record in dataset.split("train")]
    val = [dataset.load_clip(record).frames for record in dataset.split("val")]
    window = min(config.window, min(frames.shape[0] for frames in train))
    window -= window % DOWNSAMPLE

    rng = numpy.random.default_rng(config.seed)
    model = VQVAE(config=config, rng=rng)
    stacked = numpy.concatenate(train, axis=0)
    train_mean = stacked.mean(axis=0)
    model.set_buffer("frame_mean", train_mean)
    model.set_buffer("frame_std", numpy.maximum(stacked.std(axis=0), _STD_FLOOR))

    codebook = Codebook.create(
        num_codes=config.codebook_size,
        dim=config.latent_dim,
        rng=rng,
        decay=config.decay,
        reset_window=config.reset_window,
        reset_threshold=config.reset_threshold,
    )
    params = model.parameters()
    state = OptimizerState()
    log = TrainingLog(path=log_path, stage="tokenizer", log_interval=config.log_interval)
    logger.info(
        msg=(
            f"Training the tokenizer for {config.steps} steps on {len(train)} clips "
            f"(K={config.codebook_size}, d={config.latent_dim}, window={window})."
        )
    )

    for step in range(config.steps):
        frames = _sample_windows(train, config.batch_size, window, rng)
        model.zero_grad()
        z = model.encode(frames)
        flat = z.values.reshape(-1, config.latent_dim)
        if not codebook.initialized:
            init_codebook(codebook=codebook, latents=flat, rng=rng)

        (indices, quantized) = quantize_latents(latents=flat, codes=codebook.codes)
        z_q = Tensor(quantized.reshape(z.shape))
        # Straight-through estimator.
        x_hat = model.decode(add(z, detach(sub(z_q, z))))
        losses = vq_loss(x=Tensor(frames), x_hat=x_hat, z=z, z_q=z_q)
        if not numpy.isfinite(losses.total.item()):
            msg = f"The tokenizer loss diverged at step {step}. Aborting!!!"
            raise TokenizerInterfaceError(msg=msg)

        losses.total.backward()
        lr = cosine_lr(step=step, total=config.steps, lr_max=config.lr_max, lr_min=config.lr_min)
        adam_step(params=params, grads=collect_grads(params), state=state, lr=lr)
        ema_update(codebook=codebook, latents=flat, indices=indices)
        resets = reset_dead_codes(codebook=codebook, latents=flat, rng=rng)

        log.record(
            {
                "step": step,
                "lr": lr,
                "loss": losses.total.item(),
                "recon": losses.recon.item(),
                "commit": losses.commit.item(),
                "perplexity": perplexity(indices=indices, num_codes=config.codebook_size),
                "resets": resets,
            }
        )

    tokenizer = MotionTokenizer(model=model, codebook=codebook)
    stats = evaluate_tokenizer(tokenizer=tokenizer, clips=val, train_mean=train_mean)
    logger.info(
        msg=(
            f"Tokenizer validation MSE {stats['val_mse']:.5f} (mean-pose baseline "
            f"{stats['mean_pose_mse']:.5f}), perplexity {stats['perplexity']:.2f}."
        )
    )

    table = model.state_dict()
    table["codebook.codes"] = codebook.codes
    table["codebook.ema_counts"] = codebook.ema_counts
    table["codebook.ema_sums"] = codebook.ema_sums
    meta = checkpoint_interface.write_checkpoint(
        path=out_path,
        params=table,
        config=asdict(config),
        extra={"downsample": DOWNSAMPLE, "steps": config.steps, **stats},
    )

    return meta
