# =========================================================================

# Module: training/sft_interface.py

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

    sft_interface.py

Description
-----------

    This module contains the supervised fine-tuning stage.

    The policy is built over the base vocabulary, expanded with the
    format tags and motion tokens (mean-initialized), and trained with
    masked next-token cross-entropy on the CoT targets in two phases:
    phase 1 draws only t2m sequences; phase 2 draws the task of every
    sample uniformly at random. The learning rate follows one cosine
    decay across both phases.

Classes
-------

    SftConfig()

        This is the base-class object for the SFT configuration.

Functions
---------

    build_policy(records, num_motion, lm_config, seed)

        This function builds and expands a fresh policy.

    exact_match_rate(model, vocab, sequences)

        This function returns the fraction of targets reproduced by
        greedy decoding.

    run_sft(dataset, config, tokenizer_path, out_path, log_path=None)

        This function runs both SFT phases and writes the policy
        checkpoint.

    sft_step(model, batch, pad_id)

        This function computes the masked loss of a batch and
        populates the gradients.

    tokenize_records(dataset, tokenizer, records)

        This function returns the motion token indices of records.

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

from dataclasses import asdict, dataclass, field
from typing import Dict, List, Tuple

import numpy
from schema import And, Optional, Or, Use

from ioapps import hashlib_interface
from synthdata.dataset_interface import Dataset, DatasetRecord
from tensor.optim_interface import (
    OptimizerState,
    adam_step,
    collect_grads,
    cosine_lr,
    global_norm,
)
from tensor.tensor_interface import cross_entropy
from tokenizer_vq.vqvae_interface import MotionTokenizer
from tools.trainlog_interface import TrainingLog
from utils import schema_interface
from utils.exceptions_interface import SFTInterfaceError, TensorInterfaceError
from utils.logger_interface import Logger
from vocab_lm.parse_interface import parse_output
from vocab_lm.prompt_interface import MixedSequence, encode_prompt, encode_record, pad_batch
from vocab_lm.sampling_interface import sample, sample_many
from vocab_lm.transformer_interface import LMConfig, TinyLM, expand_embeddings, save_policy
from vocab_lm.vocab_interface import Vocabulary, build_vocab

# ----

# Define all available attributes.
__all__ = [
    "SftConfig",
    "build_policy",
    "exact_match_rate",
    "run_sft",
    "sft_step",
    "task_plan",
    "tokenize_records",
]

# ----

logger = Logger()

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

TASK_MODES = ("both", "t2m", "m2t")

SFT_SCHEMA = {
    Optional("epochs_phase1", default=10): And(int, lambda value: value >= 0),
    Optional("epochs_phase2", default=10): And(int, lambda value: value >= 0),
    Optional("batch_size", default=8): And(int, lambda value: value >= 1),
    Optional("lr_max", default=1e-4): And(Use(float), lambda value: value > 0.0),
    Optional("lr_min", default=0.0): And(Use(float), lambda value: value >= 0.0),
    Optional("use_cot", default=True): bool,
    Optional("tasks", default="both"): Or(*TASK_MODES),
    Optional("max_records", default=0): And(int, lambda value: value >= 0),
    Optional("eval_samples", default=32): And(int, lambda value: value >= 0),
    Optional("log_interval", default=50): And(int, lambda value: value >= 1),
    Optional("model", default={}): dict,
    Optional("seed", default=17): int,
}

# ----


@dataclass
class SftConfig:
    """
    Description
    -----------

    This is the base-class object for the SFT configuration;
    max_records (0 = all) truncates the training split for overfit
    runs and eval_samples bounds the validation format check.

    """

    epochs_phase1: int = 10
    epochs_phase2: int = 10
    batch_size: int = 8
    lr_max: float = 1e-4
    lr_min: float = 0.0
    use_cot: bool = True
    tasks: str = "both"
    max_records: int = 0
    eval_samples: int = 32
    log_interval: int = 50
    model: Dict = field(default_factory=dict)
    seed: int = 17

    @classmethod
    def from_dict(cls, opts: Dict = None) -> "SftConfig":
        opts = schema_interface.validate_opts(SFT_SCHEMA, dict(opts or {}))
        if opts["epochs_phase1"] + opts["epochs_phase2"] < 1:
            msg = "The SFT schedule requires at least one epoch. Aborting!!!"
            raise SFTInterfaceError(msg=msg)

        return cls(**opts)

    @property
    def lm_config(self) -> LMConfig:
        return LMConfig.from_dict(self.model)


# ----


def tokenize_records(
    dataset: Dataset, tokenizer: MotionTokenizer, records: List[DatasetRecord]
) -> Dict[str, List[int]]:
    """Record id -> motion token indices of its clip."""

    return {
        record.id: tokenizer.tokenize(dataset.load_clip(record).frames) for record in records
    }


def build_policy(
    records: List[DatasetRecord], num_motion: int, lm_config: LMConfig, seed: int
) -> Tuple[TinyLM, Vocabulary]:
    """
    Description
    -----------

    This function builds the vocabulary, initializes a policy over
    its base tokens and expands the embeddings for the format tags
    and motion tokens.

    Returns
    -------

    model: TinyLM

        A Python TinyLM object.

    vocab: Vocabulary

        A Python Vocabulary object.

    """

    (vocab, added) = build_vocab(records=records, num_motion=num_motion)
    model = TinyLM(
        config=lm_config, vocab_size=vocab.base_size, rng=numpy.random.default_rng(seed)
    )
    expand_embeddings(model=model, num_new=len(added))
    logger.info(
        msg=(
            f"Built a policy with {model.num_parameters()} parameters over {len(vocab)} "
            f"tokens ({vocab.base_size} base, {len(added)} added)."
        )
    )

    return (model, vocab)


def task_plan(config: SftConfig, phase: int, size: int, rng: numpy.random.Generator) -> List[str]:
    """
    Description
    -----------

    This function returns the task of each sample of a batch: phase 1
    uses t2m only (unless training is m2t-only); phase 2 draws each
    sample's task uniformly when both tasks are trained.

    """

    if config.tasks != "both":
        return [config.tasks] * size

    if phase == 1:
        return ["t2m"] * size

    return ["t2m" if pick == 0 else "m2t" for pick in rng.integers(0, 2, size=size)]


# ----


def sft_step(model: TinyLM, batch: List[MixedSequence], pad_id: int) -> float:
    """
    Description
    -----------

    This function computes the mean cross-entropy over the target
    positions of a batch and populates the gradients.

    Parameters
    ----------

    model: TinyLM

        A Python TinyLM object.

    batch: list

        A Python list of MixedSequence objects.

    pad_id: int

        A Python integer specifying the PAD id.

    Returns
    -------

    loss: float

        A Python float specifying the batch loss.

    Raises
    ------

    SFTInterfaceError:

        * raised if no position of the batch is a target position.

    """

    (ids, mask) = pad_batch(sequences=batch, pad_id=pad_id)
    if not mask[:, 1:].any():
        msg = "The SFT batch has no target positions. Aborting!!!"
        raise SFTInterfaceError(msg=msg)

    loss = cross_entropy(model(ids[:, :-1]), ids[:, 1:], mask[:, 1:])
    loss.backward()

    return loss.item()


# ----


def exact_match_rate(model: TinyLM, vocab: Vocabulary, sequences: List[MixedSequence]) -> float:
    """
    Description
    -----------

    This function returns the fraction of sequences whose target is
    reproduced exactly by greedy decoding from the prompt.

    """

    if not sequences:
        return 0.0

    hits = 0
    for sequence in sequences:
        target = sequence.target_ids
        output = sample(
            model=model,
            prompt=sequence.prompt_ids,
            top_k=1,
            max_new=len(target),
            eos_id=vocab.eos_id,
            banned=(vocab.pad_id, vocab.bos_id),
        )
        hits += int(output == target)

    return hits / len(sequences)


def _format_rate(
    model: TinyLM, vocab: Vocabulary, prompts: List[MixedSequence], seed: int
) -> float:
    if not prompts:
        return 0.0

    valid = 0
    for index, prompt in enumerate(prompts):
        (output,) = sample_many(
            model=model,
            prompt=prompt.ids,
            seeds=[hashlib_interface.derive_seed(seed, "sft-format", index)],
            max_new=model.config.context - len(prompt),
            eos_id=vocab.eos_id,
            banned=(vocab.pad_id, vocab.bos_id),
        )
        valid += int(parse_output(output=output, task=prompt.task, vocab=vocab).format_valid)

    return valid / len(prompts)


# ----


def run_sft(
    dataset: Dataset,
    config: SftConfig,
    tokenizer_path: str,
    out_path: str,
    log_path: str = None,
) -> Dict:
    """
    Description
    -----------

    This function runs both SFT phases and writes the policy
    checkpoint; the sidecar records the final loss, the greedy exact
    match rate on the training records and the format compliance of
    sampled validation outputs.

    Parameters
    ----------

    dataset: Dataset

        A Python Dataset object.

    config: SftConfig

        A Python SftConfig object.

    tokenizer_path: str

        A Python string specifying the frozen tokenizer checkpoint.

    out_path: str

        A Python string specifying the policy checkpoint path.

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

    DatasetInterfaceError:

        * raised if the training or validation split is missing.

    SFTInterfaceError:

        * raised if a sequence exceeds the context length or the loss
          becomes non-finite; the step is named.

    """

    train = dataset.split("train")
    val = dataset.split("val")
    if config.max_records:
        train = train[: config.max_records]

    tokenizer = MotionTokenizer.from_checkpoint(path=tokenizer_path)
    motions = tokenize_records(dataset=dataset, tokenizer=tokenizer, records=train + val)
    (model, vocab) = build_policy(
        records=dataset.records,
        num_motion=tokenizer.num_codes,
        lm_config=config.lm_config,
        seed=config.seed,
    )

    def sequence(record: DatasetRecord, task: str) -> MixedSequence:
        seq = encode_record(
            vocab=vocab, record=record, task=task, motion=motions[record.id], use_cot=config.use_cot
        )
        if len(seq) > model.config.context:
            msg = (
                f"The {task} sequence of record {record.id} has length {len(seq)} beyond "
                f"the context length {model.config.context}. Aborting!!!"
            )
            raise SFTInterfaceError(msg=msg)
        return seq

    rng = numpy.random.default_rng(config.seed)
    per_epoch = -(-len(train) // config.batch_size)
    phases = [1] * config.epochs_phase1 + [2] * config.epochs_phase2
    total = per_epoch * len(phases)
    params = model.parameters()
    state = OptimizerState()
    log = TrainingLog(path=log_path, stage="sft", log_interval=config.log_interval)
    logger.info(
        msg=(
            f"Running SFT for {total} steps ({config.epochs_phase1} + {config.epochs_phase2} "
            f"epochs of {per_epoch} batches; tasks={config.tasks}, use_cot={config.use_cot})."
        )
    )

    (step, loss) = (0, float("nan"))
    for phase in phases:
        order = rng.permutation(len(train))
        for start in range(0, len(train), config.batch_size):
            picks = order[start : start + config.batch_size]
            tasks = task_plan(config=config, phase=phase, size=len(picks), rng=rng)
            batch = [sequence(train[pick], task) for (pick, task) in zip(picks, tasks)]

            model.zero_grad()
            try:
                loss = sft_step(model=model, batch=batch, pad_id=vocab.pad_id)
            except TensorInterfaceError as errmsg:
                msg = f"The SFT step {step} failed with error {errmsg}. Aborting!!!"
                raise SFTInterfaceError(msg=msg) from errmsg
            if not numpy.isfinite(loss):
                msg = f"The SFT loss diverged at step {step}. Aborting!!!"
                raise SFTInterfaceError(msg=msg)

            grads = collect_grads(params)
            lr = cosine_lr(step=step, total=total, lr_max=config.lr_max, lr_min=config.lr_min)
            adam_step(params=params, grads=grads, state=state, lr=lr)
            log.record(
                {
                    "step": step,
                    "phase": phase,
                    "t2m": tasks.count("t2m"),
                    "m2t": tasks.count("m2t"),
                    "loss": loss,
                    "lr": lr,
                    "grad_norm": global_norm(grads),
                }
            )
            step += 1

    train_tasks = ["t2m", "m2t"] if config.tasks == "both" else [config.tasks]
    probe = [sequence(record, task) for record in train[:16] for task in train_tasks]
    prompts = []
    for index, record in enumerate(val[: config.eval_samples]):
        task = train_tasks[index % len(train_tasks)]
        prompts.append(
            encode_prompt(vocab=vocab, task=task, caption=record.caption, motion=motions[record.id])
        )

    stats = {
        "final_loss": loss,
        "steps": total,
        "exact_match": exact_match_rate(model=model, vocab=vocab, sequences=probe),
        "format_rate": _format_rate(model=model, vocab=vocab, prompts=prompts, seed=config.seed),
        "unk_count": vocab.unk_count,
    }
    logger.info(
        msg=(
            f"SFT finished with loss {loss:.4f}; greedy exact match {stats['exact_match']:.3f}, "
            f"sampled format rate {stats['format_rate']:.3f}."
        )
    )

    return save_policy(model=model, vocab=vocab, path=out_path, config=asdict(config), extra=stats)
