# =========================================================================

# Module: embedder/contrastive_interface.py

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

    contrastive_interface.py

Description
-----------

    This module trains the dual encoder with the symmetric InfoNCE
    loss over in-batch negatives and measures the frozen encoder on
    the validation split.

Functions
---------

    evaluate_embedder(embedder, clips, captions, pool_size, seed)

        This function returns the matched/mismatched cosine gap and
        the retrieval Top-1 of a frozen embedder.

    train_contrastive(dataset, config, out_path, log_path=None)

        This function trains the dual encoder and writes its
        checkpoint.

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

from embedder.dual_encoder_interface import (
    MAX_LOGIT_SCALE,
    DualEncoder,
    EmbedderConfig,
    MotionTextEmbedder,
    info_nce,
    pad_frames,
    pad_words,
    save_embedder,
    text_vocabulary,
)
from synthdata.dataset_interface import Dataset
from tensor.optim_interface import OptimizerState, adam_step, collect_grads, cosine_lr
from tools.trainlog_interface import TrainingLog
from utils.exceptions_interface import EmbedderInterfaceError
from utils.logger_interface import Logger

# ----

# Define all available functions.
__all__ = ["evaluate_embedder", "train_contrastive"]

# ----

logger = Logger()

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

_STD_FLOOR = 1e-2

# ----


def _unit_rows(values: numpy.ndarray) -> numpy.ndarray:
    return values / numpy.maximum(numpy.linalg.norm(values, axis=1, keepdims=True), 1e-12)


def evaluate_embedder(
    embedder: MotionTextEmbedder,
    clips: List[numpy.ndarray],
    captions: List[str],
    pool_size: int = 32,
    seed: int = 0,
) -> Dict:
    """
    Description
    -----------

    This function measures a frozen embedder on matched pairs: the
    mean cosine of matched and of mismatched (every other caption)
    pairs, and the Top-1 rate of retrieving the matched caption among
    pool_size candidates by Euclidean distance.

    Parameters
    ----------

    embedder: MotionTextEmbedder

        A Python MotionTextEmbedder object.

    clips: list

        A Python list of (T, D) numpy.ndarray clips.

    captions: list

        A Python list of the matched captions.

    Keywords
    --------

    pool_size: int, optional

        A Python integer specifying the retrieval pool; clamped to
        the number of pairs.

    seed: int, optional

        A Python integer specifying the distractor sampling seed.

    Returns
    -------

    stats: dict

        A Python dictionary with the keys matched_cosine,
        mismatched_cosine, cosine_gap and top1.

    Raises
    ------

    EmbedderInterfaceError:

        * raised if fewer than two pairs are given.

    """

    if len(clips) < 2 or len(clips) != len(captions):
        msg = (
            f"The embedder evaluation requires at least 2 matched pairs; received "
            f"{len(clips)} clips and {len(captions)} captions. Aborting!!!"
        )
        raise EmbedderInterfaceError(msg=msg)

    motion = embedder.embed_motions(clips)
    text = embedder.embed_texts(captions)
    sims = _unit_rows(motion) @ _unit_rows(text).T
    count = len(clips)
    matched = float(numpy.trace(sims) / count)
    mismatched = float((sims.sum() - numpy.trace(sims)) / (count * (count - 1)))

    pool = min(pool_size, count)
    rng = numpy.random.default_rng(seed)
    hits = 0
    for row in range(count):
        others = numpy.delete(numpy.arange(count), row)
        pool_ids = numpy.concatenate([[row], rng.choice(others, size=pool - 1, replace=False)])
        dists = numpy.linalg.norm(text[pool_ids] - motion[row], axis=1)
        hits += int(numpy.argmin(dists) == 0)

    stats = {
        "matched_cosine": matched,
        "mismatched_cosine": mismatched,
        "cosine_gap": matched - mismatched,
        "top1": hits / count,
        "pool_size": pool,
    }

    return stats


# ----


def train_contrastive(
    dataset: Dataset, config: EmbedderConfig, out_path: str, log_path: str = None
) -> Dict:
    """
    Description
    -----------

    This function trains the dual encoder on the matched (clip,
    caption) pairs of the training split and writes its checkpoint;
    the validation statistics are stored in the sidecar.

    Parameters
    ----------

    dataset: Dataset

        A Python Dataset object.

    config: EmbedderConfig

        A Python EmbedderConfig object.

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

    EmbedderInterfaceError:

        * raised if the batch holds fewer than two pairs or the loss
          becomes non-finite; the step is named.

    """

    records = dataset.split("train")
    val_records = dataset.split("val")
    clips = [dataset.load_clip(record).frames for record in records]
    captions = [record.caption for record in records]
    batch_size = min(config.batch_size, len(records))
    if batch_size < 2:
        msg = (
            f"Contrastive training requires batches of at least 2 pairs; the training "
            f"split holds {len(records)} records. Aborting!!!"
        )
        raise EmbedderInterfaceError(msg=msg)

    vocab = text_vocabulary(records=records + val_records)
    rng = numpy.random.default_rng(config.seed)
    model = DualEncoder(config=config, vocab_size=len(vocab), rng=rng)
    stacked = numpy.concatenate(clips, axis=0)
    model.set_buffer("frame_mean", stacked.mean(axis=0))
    model.set_buffer("frame_std", numpy.maximum(stacked.std(axis=0), _STD_FLOOR))

    params = model.parameters()
    state = OptimizerState()
    log = TrainingLog(path=log_path, stage="embedder", log_interval=config.log_interval)
    logger.info(
        msg=(
            f"Training the dual encoder for {config.steps} steps on {len(records)} pairs "
            f"(e={config.embed_dim}, batch={batch_size})."
        )
    )

    for step in range(config.steps):
        picks = rng.choice(len(records), size=batch_size, replace=False)
        model.zero_grad()
        motion = model.motion(*pad_frames([clips[pick] for pick in picks]))
        text = model.text(*pad_words(vocab, [captions[pick] for pick in picks]))
        loss = info_nce(motion=motion, text=text, logit_scale=model.logit_scale)
        if not numpy.isfinite(loss.item()):
            msg = f"The contrastive loss diverged at step {step}. Aborting!!!"
            raise EmbedderInterfaceError(msg=msg)

        loss.backward()
        lr = cosine_lr(step=step, total=config.steps, lr_max=config.lr_max, lr_min=config.lr_min)
        adam_step(params=params, grads=collect_grads(params), state=state, lr=lr)
        model.logit_scale.values = numpy.minimum(
            model.logit_scale.values, numpy.log(MAX_LOGIT_SCALE)
        )

        log.record(
            {
                "step": step,
                "lr": lr,
                "loss": loss.item(),
                "logit_scale": float(numpy.exp(model.logit_scale.values[0])),
            }
        )

    embedder = MotionTextEmbedder(model=model, vocab=vocab)
    stats = evaluate_embedder(
        embedder=embedder,
        clips=[dataset.load_clip(record).frames for record in val_records],
        captions=[record.caption for record in val_records],
        pool_size=config.pool_size,
        seed=config.seed,
    )
    logger.info(
        msg=(
            f"Embedder validation cosine gap {stats['cosine_gap']:.3f}, "
            f"Top-1 {stats['top1']:.3f} (pool {stats['pool_size']})."
        )
    )

    return save_embedder(
        model=model, vocab=vocab, path=out_path, config=asdict(config), extra=stats
    )
