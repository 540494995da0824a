# =========================================================================

# Module: training/grpo_interface.py

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

    grpo_interface.py

Description
-----------

    This module contains the group-relative policy optimization stage.

    Each step draws one training record and task, samples G
    completions of its prompt from the sampling snapshot pi_old,
    scores them, standardizes the rewards within the group into
    advantages and takes one clipped-surrogate gradient step on
    pi_theta with a per-token KL penalty towards the frozen SFT
    reference pi_ref:

        rho_t = exp(log pi_theta - log pi_old)

        surrogate = mean_t min(rho_t A, clip(rho_t, 1 - eps, 1 + eps) A)

        kl = mean_t exp(log pi_ref - log pi_theta)
             - (log pi_ref - log pi_theta) - 1

        loss = -mean_i (surrogate_i - beta kl_i)

    pi_old is refreshed from pi_theta at every sampling event.

Classes
-------

    GrpoConfig()

        This is the base-class object for the GRPO configuration.

    PolicyBundle(policy, old, ref)

        This is the base-class object for the three policies.

    RolloutGroup()

        This is the base-class object for one scored group of
        completions.

Functions
---------

    advantages(rewards)

        This function standardizes the rewards of a group.

    clipped_surrogate(ratio, advantage, epsilon)

        This function returns the per-token clipped surrogate.

    grpo_loss(group, bundle, config)

        This function returns the GRPO loss of a group.

    kl_estimate(logp_theta, logp_ref)

        This function returns the mean per-token KL estimate.

    load_bundle(path)

        This function loads pi_theta, pi_old and the frozen pi_ref
        from one policy checkpoint.

    rollout_group(bundle, scorer, record, task, motion, reference,
    config, seed)

        This function samples and scores one group.

    run_grpo(dataset, config, sft_path, tokenizer_path,
    embedder_path, out_path, log_path=None, bundle=None)

        This function runs GRPO and writes the policy checkpoint.

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
from typing import Dict, List, Tuple, Union

import numpy
from schema import And, Optional, Or, Use

from embedder.dual_encoder_interface import MotionTextEmbedder
from ioapps import hashlib_interface
from rewards.rewards_interface import RewardBreakdown, RewardScorer
from synthdata.dataset_interface import Dataset, DatasetRecord
from tensor.optim_interface import (
    OptimizerState,
    adam_step,
    clip_global_norm,
    collect_grads,
    global_norm,
)
from tensor.tensor_interface import (
    Tensor,
    clip,
    div,
    exp,
    mean,
    minimum,
    mul,
    neg,
    no_grad,
    sub,
    tsum,
)
from tokenizer_vq.vqvae_interface import MotionTokenizer
from tools.trainlog_interface import TrainingLog
from training.sft_interface import tokenize_records
from utils import schema_interface
from utils.exceptions_interface import GRPOInterfaceError
from utils.logger_interface import Logger
from vocab_lm.prompt_interface import MixedSequence, encode_prompt
from vocab_lm.sampling_interface import sample_many
from vocab_lm.transformer_interface import TinyLM, load_policy, logprobs, save_policy
from vocab_lm.vocab_interface import Vocabulary

# ----

# Define all available attributes.
__all__ = [
    "GrpoConfig",
    "PolicyBundle",
    "RolloutGroup",
    "advantages",
    "clipped_surrogate",
    "grpo_loss",
    "kl_estimate",
    "load_bundle",
    "rollout_group",
    "run_grpo",
]

# ----

logger = Logger()

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

# Guard of the group standard deviation.
ADV_EPS = 1e-8

GRPO_SCHEMA = {
    Optional("group_size", default=8): And(int, lambda value: value >= 2),
    Optional("epsilon", default=0.2): And(Use(float), lambda value: 0.0 < value < 1.0),
    Optional("beta", default=0.001): And(Use(float), lambda value: value >= 0.0),
    Optional("lr", default=5e-5): And(Use(float), lambda value: value > 0.0),
    Optional("steps", default=2000): And(int, lambda value: value >= 1),
    Optional("grad_clip_norm", default=0.1): And(Use(float), lambda value: value > 0.0),
    Optional("temperature", default=1.0): And(Use(float), lambda value: value > 0.0),
    Optional("top_k", default=50): And(int, lambda value: value >= 1),
    Optional("max_new", default=128): And(int, lambda value: value >= 1),
    Optional("tasks", default="both"): Or("both", "t2m", "m2t"),
    Optional("use_motion_reward", default=True): bool,
    Optional("use_semantic_reward", default=True): bool,
    Optional("use_caption_reward", default=True): bool,
    Optional("log_interval", default=50): And(int, lambda value: value >= 1),
    Optional("seed", default=19): int,
}

# ----


@dataclass
class GrpoConfig:
    """
    Description
    -----------

    This is the base-class object for the GRPO configuration; the
    full-scale run uses steps=14000.

    """

    group_size: int = 8
    epsilon: float = 0.2
    beta: float = 0.001
    lr: float = 5e-5
    steps: int = 2000
    grad_clip_norm: float = 0.1
    temperature: float = 1.0
    top_k: int = 50
    max_new: int = 128
    tasks: str = "both"
    use_motion_reward: bool = True
    use_semantic_reward: bool = True
    use_caption_reward: bool = True
    log_interval: int = 50
    seed: int = 19

    @classmethod
    def from_dict(cls, opts: Dict = None) -> "GrpoConfig":
        return cls(**schema_interface.validate_opts(GRPO_SCHEMA, dict(opts or {})))


@dataclass
class PolicyBundle:
    """
    Description
    -----------

    This is the base-class object for the trainable policy, its
    sampling snapshot and the frozen reference.

    """

    policy: TinyLM
    old: TinyLM
    ref: TinyLM

    def refresh_old(self) -> None:
        """Copies the current policy parameters into the snapshot."""

        self.old.load_state_dict(self.policy.state_dict())


@dataclass
class RolloutGroup:
    """
    Description
    -----------

    This is the base-class object for one scored group; old_logprobs
    holds the per-token log-probabilities of each completion under
    the sampling snapshot.

    """

    task: str
    prompt: MixedSequence
    completions: List[List[int]]
    old_logprobs: List[numpy.ndarray]
    rewards: numpy.ndarray
    advantages: numpy.ndarray
    breakdowns: List[RewardBreakdown] = field(default_factory=list)
    record: str = ""

    @property
    def format_rate(self) -> float:
        if not self.breakdowns:
            return 0.0
        return float(numpy.mean([breakdown.r_format for breakdown in self.breakdowns]))


# ----


def advantages(rewards) -> numpy.ndarray:
    """
    Description
    -----------

    This function standardizes the rewards of a group with the
    population standard deviation; a group of equal rewards gets
    all-zero advantages.

    Parameters
    ----------

    rewards: array-like

        A Python list of G rewards.

    Returns
    -------

    advantages: numpy.ndarray

        A Python numpy.ndarray of G advantages.

    Raises
    ------

    GRPOInterfaceError:

        * raised if the group holds fewer than two rewards.

    """

    rewards = numpy.asarray(rewards, dtype=numpy.float64)
    if rewards.size < 2:
        msg = f"A group requires at least 2 rewards; received {rewards.size}. Aborting!!!"
        raise GRPOInterfaceError(msg=msg)

    return (rewards - rewards.mean()) / (rewards.std() + ADV_EPS)


def kl_estimate(
    logp_theta: Union[Tensor, numpy.ndarray], logp_ref: numpy.ndarray
) -> Tensor:
    """
    Description
    -----------

    This function returns the mean over tokens of exp(d) - d - 1 with
    d = logp_ref - logp_theta; the value is never negative.

    Raises
    ------

    GRPOInterfaceError:

        * raised if the two sequences differ in length.

    """

    logp_theta = logp_theta if isinstance(logp_theta, Tensor) else Tensor(logp_theta)
    logp_ref = numpy.asarray(logp_ref, dtype=numpy.float64)
    if logp_theta.shape != logp_ref.shape:
        msg = (
            f"The KL estimate received log-probabilities of shapes {logp_theta.shape} and "
            f"{logp_ref.shape}. Aborting!!!"
        )
        raise GRPOInterfaceError(msg=msg)

    diff = sub(logp_ref, logp_theta)

    return mean(sub(sub(exp(diff), diff), 1.0))


def clipped_surrogate(ratio, advantage, epsilon: float) -> Tensor:
    """min(ratio A, clip(ratio, 1 - epsilon, 1 + epsilon) A) per token."""

    ratio = ratio if isinstance(ratio, Tensor) else Tensor(ratio)

    return minimum(
        mul(ratio, advantage), mul(clip(ratio, 1.0 - epsilon, 1.0 + epsilon), advantage)
    )


# ----


def _completion_batch(group: RolloutGroup, pad_id: int) -> Tuple[numpy.ndarray, numpy.ndarray]:
    # Right-padded prompt+completion ids and the mask of the
    # log-probability positions that predict completion tokens.
    prompt_len = len(group.prompt)
    length = prompt_len + max(len(completion) for completion in group.completions)
    ids = numpy.full((len(group.completions), length), pad_id, dtype=numpy.int64)
    mask = numpy.zeros((len(group.completions), length - 1))
    for row, completion in enumerate(group.completions):
        ids[row, :prompt_len] = group.prompt.ids
        ids[row, prompt_len : prompt_len + len(completion)] = completion
        mask[row, prompt_len - 1 : prompt_len - 1 + len(completion)] = 1.0

    return (ids, mask)


def grpo_loss(
    group: RolloutGroup, bundle: PolicyBundle, config: GrpoConfig, pad_id: int = 0
) -> Tuple[Tensor, Dict]:
    """
    Description
    -----------

    This function returns the GRPO loss of a group; the gradient
    flows only into pi_theta.

    Parameters
    ----------

    group: RolloutGroup

        A Python RolloutGroup object.

    bundle: PolicyBundle

        A Python PolicyBundle object.

    config: GrpoConfig

        A Python GrpoConfig object.

    Keywords
    --------

    pad_id: int, optional

        A Python integer specifying the PAD id.

    Returns
    -------

    loss: Tensor

        A Python Tensor object holding the scalar loss.

    stats: dict

        A Python dictionary with the mean surrogate, KL and clipped
        token fraction.

    Raises
    ------

    GRPOInterfaceError:

        * raised if every completion is empty.

    """

    lengths = numpy.asarray([len(completion) for completion in group.completions], dtype=float)
    if not lengths.any():
        msg = "The rollout group holds only empty completions. Aborting!!!"
        raise GRPOInterfaceError(msg=msg)

    (ids, mask) = _completion_batch(group=group, pad_id=pad_id)
    old = numpy.zeros(mask.shape)
    for row, values in enumerate(group.old_logprobs):
        old[row, mask[row] > 0] = values

    with no_grad():
        ref = logprobs(bundle.ref, ids).values

    logp = logprobs(bundle.policy, ids)
    ratio = exp(sub(logp, old))
    surrogate = clipped_surrogate(ratio, group.advantages[:, None], config.epsilon)
    diff = sub(ref, logp)
    kl_tokens = sub(sub(exp(diff), diff), 1.0)

    # Per-completion token means; empty completions carry zero weight.
    counts = numpy.maximum(lengths, 1.0)[:, None]
    surrogate_i = div(tsum(mul(surrogate, mask), axis=1, keepdims=True), counts)
    kl_i = div(tsum(mul(kl_tokens, mask), axis=1, keepdims=True), counts)
    objective = sub(surrogate_i, mul(kl_i, config.beta))
    weights = (lengths > 0).astype(float)[:, None] / (lengths > 0).sum()
    loss = neg(tsum(mul(objective, weights)))

    rho = ratio.values[mask > 0]
    stats = {
        "surrogate": float((surrogate_i.values[:, 0] * weights[:, 0]).sum()),
        "kl": float((kl_i.values[:, 0] * weights[:, 0]).sum()),
        "clip_frac": float(
            numpy.mean((rho < 1.0 - config.epsilon) | (rho > 1.0 + config.epsilon))
        ),
    }

    return (loss, stats)


# ----


def load_bundle(path: str) -> Tuple[PolicyBundle, Vocabulary]:
    """
    Description
    -----------

    This function loads pi_theta, pi_old and pi_ref from one policy
    checkpoint; pi_old and pi_ref are frozen.

    Parameters
    ----------

    path: str

        A Python string specifying the policy checkpoint path.

    Returns
    -------

    bundle: PolicyBundle

        A Python PolicyBundle object.

    vocab: Vocabulary

        A Python Vocabulary object.

    """

    (policy, vocab, _) = load_policy(path=path)
    (old, _, _) = load_policy(path=path)
    (ref, _, _) = load_policy(path=path)
    old.freeze()
    ref.freeze()

    return (PolicyBundle(policy=policy, old=old, ref=ref), vocab)


# ----


def rollout_group(
    bundle: PolicyBundle,
    scorer: RewardScorer,
    vocab: Vocabulary,
    record: DatasetRecord,
    task: str,
    motion: List[int],
    reference: numpy.ndarray,
    config: GrpoConfig,
    seed: int,
) -> RolloutGroup:
    """
    Description
    -----------

    This function samples G completions of the record's prompt from
    pi_old (completion i seeded by derive_seed(seed, i)), scores them
    and fills the advantages; a completion cut by the context limit
    is scored as it is.

    Parameters
    ----------

    bundle: PolicyBundle

        A Python PolicyBundle object.

    scorer: RewardScorer

        A Python RewardScorer object.

    vocab: Vocabulary

        A Python Vocabulary object.

    record: DatasetRecord

        A Python DatasetRecord object.

    task: str

        A Python string specifying the task.

    motion: list

        A Python list of the record's motion token indices.

    reference: numpy.ndarray

        A Python numpy.ndarray of the record's (T, D) clip.

    config: GrpoConfig

        A Python GrpoConfig object.

    seed: int

        A Python integer specifying the group seed.

    Returns
    -------

    group: RolloutGroup

        A Python RolloutGroup object.

    """

    prompt = encode_prompt(vocab=vocab, task=task, caption=record.caption, motion=motion)
    seeds = [hashlib_interface.derive_seed(seed, index) for index in range(config.group_size)]
    completions = sample_many(
        model=bundle.old,
        prompt=prompt.ids,
        seeds=seeds,
        temperature=config.temperature,
        top_k=config.top_k,
        max_new=min(config.max_new, bundle.old.config.context - len(prompt)),
        eos_id=vocab.eos_id,
        banned=(vocab.pad_id, vocab.bos_id),
    )

    old_logprobs = []
    with no_grad():
        for completion in completions:
            if not completion:
                old_logprobs.append(numpy.zeros(0))
                continue
            values = logprobs(bundle.old, prompt.ids + completion).values
            old_logprobs.append(values[-len(completion) :])

    breakdowns = [
        scorer.total_reward(
            task=task, raw_output=completion, caption=record.caption, reference=reference
        )
        for completion in completions
    ]
    rewards = numpy.asarray([breakdown.total for breakdown in breakdowns])

    return RolloutGroup(
        task=task,
        prompt=prompt,
        completions=completions,
        old_logprobs=old_logprobs,
        rewards=rewards,
        advantages=advantages(rewards),
        breakdowns=breakdowns,
        record=record.id,
    )


# ----


def run_grpo(
    dataset: Dataset,
    config: GrpoConfig,
    sft_path: str,
    tokenizer_path: str,
    embedder_path: str,
    out_path: str,
    log_path: str = None,
    bundle: PolicyBundle = None,
) -> Dict:
    """
    Description
    -----------

    This function runs GRPO from the SFT checkpoint (which becomes
    both pi_ref and the initial pi_theta) and writes the policy
    checkpoint; every step is logged with its task, rewards, KL and
    the gradient norm before and after clipping.

    Parameters
    ----------

    dataset: Dataset

        A Python Dataset object.

    config: GrpoConfig

        A Python GrpoConfig object.

    sft_path: str

        A Python string specifying the SFT policy checkpoint.

    tokenizer_path: str

        A Python string specifying the tokenizer checkpoint.

    embedder_path: str

        A Python string specifying the embedder checkpoint.

    out_path: str

        A Python string specifying the policy checkpoint path.

    Keywords
    --------

    log_path: str, optional

        A Python string specifying the NDJSON reward log path.

    bundle: PolicyBundle, optional

        A Python PolicyBundle object to train in place of the one
        loaded from sft_path; its ref policy is never updated.

    Returns
    -------

    meta: dict

        A Python dictionary containing the checkpoint sidecar.

    Raises
    ------

    GRPOInterfaceError:

        * raised if the loss becomes non-finite; the step, record,
          task and group rewards are named.

    """

    if bundle is None:
        (bundle, vocab) = load_bundle(path=sft_path)
    else:
        (_, vocab, _) = load_policy(path=sft_path)
    policy = bundle.policy

    tokenizer = MotionTokenizer.from_checkpoint(path=tokenizer_path)
    embedder = MotionTextEmbedder.from_checkpoint(path=embedder_path)
    scorer = RewardScorer(
        embedder=embedder,
        tokenizer=tokenizer,
        vocab=vocab,
        use_motion_reward=config.use_motion_reward,
        use_semantic_reward=config.use_semantic_reward,
        use_caption_reward=config.use_caption_reward,
    )
    train = dataset.split("train")
    motions = tokenize_records(dataset=dataset, tokenizer=tokenizer, records=train)

    rng = numpy.random.default_rng(config.seed)
    params = policy.parameters()
    state = OptimizerState()
    log = TrainingLog(path=log_path, stage="grpo", log_interval=config.log_interval)
    logger.info(
        msg=(
            f"Running GRPO for {config.steps} steps (G={config.group_size}, "
            f"eps={config.epsilon}, beta={config.beta}, lr={config.lr}, tasks={config.tasks})."
        )
    )

    mean_rewards = []
    for step in range(config.steps):
        record = train[int(rng.integers(0, len(train)))]
        if config.tasks == "both":
            task = "t2m" if rng.random() < 0.5 else "m2t"
        else:
            task = config.tasks

        bundle.refresh_old()
        group = rollout_group(
            bundle=bundle,
            scorer=scorer,
            vocab=vocab,
            record=record,
            task=task,
            motion=motions[record.id],
            reference=dataset.load_clip(record).frames,
            config=config,
            seed=hashlib_interface.derive_seed(config.seed, "grpo", step),
        )

        policy.zero_grad()
        (loss, stats) = grpo_loss(group=group, bundle=bundle, config=config, pad_id=vocab.pad_id)
        if not numpy.isfinite(loss.item()):
            msg = (
                f"The GRPO loss diverged at step {step} (record {record.id}, task {task}, "
                f"rewards {group.rewards.tolist()}, kl {stats['kl']}). Aborting!!!"
            )
            raise GRPOInterfaceError(msg=msg)

        loss.backward()
        grads = collect_grads(params)
        norm = global_norm(grads)
        grads = clip_global_norm(grads, config.grad_clip_norm)
        adam_step(params=params, grads=grads, state=state, lr=config.lr)

        mean_rewards.append(float(group.rewards.mean()))
        log.record(
            {
                "step": step,
                "task": task,
                "record": record.id,
                "loss": loss.item(),
                "mean_reward": mean_rewards[-1],
                "rewards": group.rewards.tolist(),
                "format_rate": group.format_rate,
                "kl": stats["kl"],
                "clip_frac": stats["clip_frac"],
                "grad_norm": norm,
                "clipped_grad_norm": global_norm(grads),
            }
        )

    window = max(1, min(500, len(mean_rewards) // 4))
    stats = {
        "steps": config.steps,
        "reward_first": float(numpy.mean(mean_rewards[:window])),
        "reward_last": float(numpy.mean(mean_rewards[-window:])),
    }
    logger.info(
        msg=(
            f"GRPO mean group reward moved from {stats['reward_first']:.3f} (first {window} "
            f"steps) to {stats['reward_last']:.3f} (last {window} steps)."
        )
    )

    return save_policy(
        model=policy, vocab=vocab, path=out_path, config=asdict(config), extra=stats
    )
