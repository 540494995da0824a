# =========================================================================

# Module: metrics/evaluate_interface.py

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

    evaluate_interface.py

Description
-----------

    This module contains the evaluation drivers of the two tasks: a
    policy (or a baseline) generates for every record of a dataset
    split, the outputs are parsed and scored, and the metrics of each
    seeded repeat are aggregated into an EvalReport.

    Generations that fail to parse contribute worst-case values: a
    zero-pose clip of one token's length (t2m) or an empty caption
    (m2t).

Classes
-------

    EvalConfig()

        This is the base-class object for the evaluation
        configuration.

    EvalReport()

        This is the base-class object for an evaluation report.

    Evaluator(dataset, tokenizer, embedder, config)

        This is the base-class object for running the evaluations.

Functions
---------

    eval_m2t(dataset, config, tokenizer_path, embedder_path,
    policy_path=None)

        This function evaluates motion-to-text captioning.

    eval_t2m(dataset, config, tokenizer_path, embedder_path,
    policy_path=None)

        This function evaluates text-to-motion generation.

    write_report(report, path)

        This function writes a report as JSON.

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

from confs import json_interface
from embedder.dual_encoder_interface import MotionTextEmbedder
from ioapps import hashlib_interface
from metrics.motion_metrics_interface import diversity, fid, mm_dist, mmodality, r_precision
from metrics.text_metrics_interface import bleu, cider, rouge_l
from synthdata.dataset_interface import Dataset, DatasetRecord
from synthdata.skeleton_interface import FRAME_DIM
from tokenizer_vq.vqvae_interface import MotionTokenizer
from tools import fileio_interface
from utils import schema_interface
from utils.exceptions_interface import EvaluateInterfaceError
from utils.logger_interface import Logger
from vocab_lm.parse_interface import parse_output
from vocab_lm.prompt_interface import encode_prompt
from vocab_lm.sampling_interface import sample_many
from vocab_lm.transformer_interface import TinyLM, load_policy
from vocab_lm.vocab_interface import Vocabulary

# ----

# Define all available attributes.
__all__ = [
    "EVAL_SCHEMA",
    "EvalConfig",
    "EvalReport",
    "Evaluator",
    "eval_m2t",
    "eval_t2m",
    "write_report",
]

# ----

logger = Logger()

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

BASELINES = ("none", "random", "ground_truth")

CI_Z = 1.96

T2M_METRICS = (
    "r_precision_top1",
    "r_precision_top2",
    "r_precision_top3",
    "fid",
    "mm_dist",
    "diversity",
    "mmodality",
)

M2T_METRICS = ("bleu1", "bleu4", "rouge_l", "cider")

EVAL_SCHEMA = {
    Optional("split", default="test"): Or("train", "val", "test"),
    Optional("pool_size", default=32): And(int, lambda value: value >= 2),
    Optional("diversity_subset", default=30): And(int, lambda value: value >= 1),
    Optional("per_caption", default=8): And(int, lambda value: value >= 2),
    Optional("mmodality_captions", default=16): And(int, lambda value: value >= 1),
    Optional("temperature", default=1.0): And(Use(float), lambda value: value > 0.0),
    Optional("top_k", default=50): And(int, lambda value: value >= 1),
    Optional("max_new", default=128): And(int, lambda value: value >= 1),
    Optional("repeats", default=3): And(int, lambda value: value >= 1),
    Optional("baseline", default="none"): Or(*BASELINES),
    Optional("max_records", default=0): And(int, lambda value: value >= 0),
    Optional("seed", default=23): int,
}

# ----


@dataclass
class EvalConfig:
    """
    Description
    -----------

    This is the base-class object for the evaluation configuration;
    max_records of 0 evaluates the whole split.

    """

    split: str = "test"
    pool_size: int = 32
    diversity_subset: int = 30
    per_caption: int = 8
    mmodality_captions: int = 16
    temperature: float = 1.0
    top_k: int = 50
    max_new: int = 128
    repeats: int = 3
    baseline: str = "none"
    max_records: int = 0
    seed: int = 23

    @classmethod
    def from_dict(cls, opts: Dict = None) -> "EvalConfig":
        """Build a validated configuration from a section dictionary."""

        return cls(**schema_interface.validate_opts(EVAL_SCHEMA, dict(opts or {})))

    def conventions(self) -> Dict:
        """Return the metric conventions echoed in every report."""

        return {
            "r_precision_pool": self.pool_size,
            "r_precision_distance": "euclidean",
            "diversity_subset": self.diversity_subset,
            "mmodality_per_caption": self.per_caption,
            "mmodality_captions": self.mmodality_captions,
            "fid_covariance": "sample (n - 1)",
            "text_scale": 100,
            "bleu_smoothing": "add-1 on orders >= 2",
            "rouge_beta": 1.2,
            "cider_idf": "log((1 + N) / (1 + df)) + 1",
            "invalid_t2m": "zero-pose clip",
            "invalid_m2t": "empty caption",
        }


@dataclass
class EvalReport:
    """
    Description
    -----------

    This is the base-class object for an evaluation report; every
    metric is the mean over the repeats and ci95 holds the 95%
    half-widths 1.96 std / sqrt(N). The metrics of the other task are
    NoneType.

    """

    task: str
    split: str
    num_samples: int
    repeats: int
    baseline: str
    checkpoint: Union[str, None] = None
    r_precision_top1: Union[float, None] = None
    r_precision_top2: Union[float, None] = None
    r_precision_top3: Union[float, None] = None
    fid: Union[float, None] = None
    mm_dist: Union[float, None] = None
    diversity: Union[float, None] = None
    mmodality: Union[float, None] = None
    bleu1: Union[float, None] = None
    bleu4: Union[float, None] = None
    rouge_l: Union[float, None] = None
    cider: Union[float, None] = None
    format_rate: float = 0.0
    ci95: Dict[str, float] = field(default_factory=dict)
    per_repeat: List[Dict] = field(default_factory=list)
    conventions: Dict = field(default_factory=dict)
    config: Dict = field(default_factory=dict)
    config_hash: str = ""

    def to_dict(self) -> Dict:
        return {key: value for (key, value) in asdict(self).items() if value is not None}


# ----


class Evaluator:
    """
    Description
    -----------

    This is the base-class object for running the evaluations of a
    policy, or of a baseline when the configuration names one,
    against the frozen tokenizer and embedder.

    Parameters
    ----------

    dataset: Dataset

        A Python Dataset object.

    tokenizer: MotionTokenizer

        A Python MotionTokenizer object.

    embedder: MotionTextEmbedder

        A Python MotionTextEmbedder object.

    config: EvalConfig

        A Python EvalConfig object.

    Keywords
    --------

    model: TinyLM, optional

        A Python TinyLM object; required unless a baseline is
        evaluated.

    vocab: Vocabulary, optional

        A Python Vocabulary object of the policy.

    checkpoint: str, optional

        A Python string naming the evaluated checkpoint in the
        report.

    """

    def __init__(
        self,
        dataset: Dataset,
        tokenizer: MotionTokenizer,
        embedder: MotionTextEmbedder,
        config: EvalConfig,
        model: TinyLM = None,
        vocab: Vocabulary = None,
        checkpoint: str = None,
    ):
        if config.baseline == "none" and (model is None or vocab is None):
            msg = "Evaluating a policy requires its model and vocabulary. Aborting!!!"
            raise EvaluateInterfaceError(msg=msg)

        self.logger = Logger()
        self.dataset = dataset
        self.tokenizer = tokenizer
        self.embedder = embedder
        self.config = config
        self.model = model
        self.vocab = vocab
        self.checkpoint = checkpoint
        self.records = dataset.split(config.split)
        if config.max_records:
            self.records = self.records[: config.max_records]
        self.clips = {record.id: dataset.load_clip(record).frames for record in self.records}
        if model is not None:
            self.model.freeze()

    # ----

    def _sample(self, prompt: List[int], seeds: List[int]) -> List[List[int]]:
        return sample_many(
            model=self.model,
            prompt=prompt,
            seeds=seeds,
            temperature=self.config.temperature,
            top_k=self.config.top_k,
            max_new=min(self.config.max_new, self.model.config.context - len(prompt)),
            eos_id=self.vocab.eos_id,
            banned=(self.vocab.pad_id, self.vocab.bos_id),
        )

    def _invalid_clip(self) -> numpy.ndarray:
        return numpy.zeros((self.tokenizer.downsample, FRAME_DIM))

    def _random_clip(self, record: DatasetRecord, rng: numpy.random.Generator) -> numpy.ndarray:
        length = self.clips[record.id].shape[0] // self.tokenizer.downsample
        indices = rng.integers(0, self.tokenizer.num_codes, size=max(1, length))

        return self.tokenizer.decode(indices.tolist())

    def generate_motions(
        self, record: DatasetRecord, seeds: List[int]
    ) -> Tuple[List[numpy.ndarray], List[bool]]:
        """
        Description
        -----------

        This method returns one clip per seed for the record caption
        and whether each generation parsed as valid.

        """

        if self.config.baseline == "ground_truth":
            return ([self.clips[record.id]] * len(seeds), [True] * len(seeds))
        if self.config.baseline == "random":
            clips = [
                self._random_clip(record=record, rng=numpy.random.default_rng(seed))
                for seed in seeds
            ]
            return (clips, [True] * len(seeds))

        prompt = encode_prompt(vocab=self.vocab, task="t2m", caption=record.caption)
        (clips, valid) = ([], [])
        for completion in self._sample(prompt=prompt.ids, seeds=seeds):
            parsed = parse_output(output=completion, task="t2m", vocab=self.vocab)
            valid.append(parsed.format_valid)
            clips.append(
                self.tokenizer.decode(parsed.motion_indices)
                if parsed.format_valid and parsed.motion_indices
                else self._invalid_clip()
            )

        return (clips, valid)

    def generate_caption(
        self, record: DatasetRecord, motion: List[int], seed: int, rng: numpy.random.Generator
    ) -> Tuple[str, bool]:
        """
        Description
        -----------

        This method returns the caption generated for the record
        motion and whether the generation parsed as valid; the random
        baseline answers with the caption of another record.

        """

        if self.config.baseline == "ground_truth":
            return (record.caption, True)
        if self.config.baseline == "random":
            others = [other for other in self.records if other.id != record.id] or self.records
            return (others[int(rng.integers(0, len(others)))].caption, True)

        prompt = encode_prompt(vocab=self.vocab, task="m2t", motion=motion)
        completion = self._sample(prompt=prompt.ids, seeds=[seed])[0]
        parsed = parse_output(output=completion, task="m2t", vocab=self.vocab)
        if not parsed.format_valid:
            return ("", False)

        return (parsed.answer_text or "", True)

    # ----

    def _t2m_repeat(self, seed: int) -> Tuple[Dict, float]:
        config = self.config
        (clips, valid) = ([], [])
        for record in self.records:
            (generated, flags) = self.generate_motions(
                record=record, seeds=[hashlib_interface.derive_seed(seed, record.id)]
            )
            clips.extend(generated)
            valid.extend(flags)

        motion = self.embedder.embed_motions(clips)
        text = self.embedder.embed_texts([record.caption for record in self.records])
        reference = self.embedder.embed_motions([self.clips[record.id] for record in self.records])
        (top1, top2, top3) = r_precision(
            motion=motion,
            text=text,
            pool_size=config.pool_size,
            seed=seed,
            captions=[record.caption for record in self.records],
        )

        groups = []
        for record in self.records[: config.mmodality_captions]:
            seeds = [
                hashlib_interface.derive_seed(seed, "mmodality", record.id, index)
                for index in range(config.per_caption)
            ]
            groups.append(self.embedder.embed_motions(self.generate_motions(record, seeds)[0]))

        values = {
            "r_precision_top1": top1,
            "r_precision_top2": top2,
            "r_precision_top3": top3,
            "fid": fid(generated=motion, reference=reference),
            "mm_dist": mm_dist(motion=motion, text=text),
            "diversity": diversity(embeds=motion, subset=config.diversity_subset, seed=seed),
            "mmodality": mmodality(groups=groups),
        }

        return (values, float(numpy.mean(valid)))

    def _m2t_repeat(self, seed: int, motions: Dict[str, List[int]]) -> Tuple[Dict, float]:
        rng = numpy.random.default_rng(seed)
        (hyps, valid) = ([], [])
        for record in self.records:
            (caption, flag) = self.generate_caption(
                record=record,
                motion=motions.get(record.id, []),
                seed=hashlib_interface.derive_seed(seed, record.id),
                rng=rng,
            )
            hyps.append(caption)
            valid.append(flag)

        refs = [record.caption for record in self.records]
        values = {
            "bleu1": bleu(hyps=hyps, refs=refs, n=1),
            "bleu4": bleu(hyps=hyps, refs=refs, n=4),
            "rouge_l": rouge_l(hyps=hyps, refs=refs),
            "cider": cider(hyps=hyps, refs=refs),
        }

        return (values, float(numpy.mean(valid)))

    def _report(self, task: str, runs: List[Tuple[Dict, float]]) -> EvalReport:
        config = asdict(self.config)
        report = EvalReport(
            task=task,
            split=self.config.split,
            num_samples=len(self.records),
            repeats=self.config.repeats,
            baseline=self.config.baseline,
            checkpoint=self.checkpoint,
            format_rate=float(numpy.mean([rate for (_, rate) in runs])),
            per_repeat=[values for (values, _) in runs],
            conventions=self.config.conventions(),
            config=config,
            config_hash=hashlib_interface.get_dict_hash(in_dict=config),
        )
        for key in T2M_METRICS if task == "t2m" else M2T_METRICS:
            values = numpy.array([run[key] for (run, _) in runs])
            spread = values.std(ddof=1) if len(values) > 1 else 0.0
            setattr(report, key, float(values.mean()))
            report.ci95[key] = float(CI_Z * spread / numpy.sqrt(len(values)))

        return report

    def _repeat_seeds(self) -> List[int]:
        return [
            hashlib_interface.derive_seed(self.config.seed, "repeat", repeat)
            for repeat in range(self.config.repeats)
        ]

    def eval_t2m(self) -> EvalReport:
        """
        Description
        -----------

        This method evaluates text-to-motion generation over the
        configured split.

        Returns
        -------

        report: EvalReport

            A Python EvalReport object.

        Raises
        ------

        MetricsInterfaceError:

            * raised if the split is smaller than the R-Precision
              pool or the diversity subsets.

        """

        self.logger.info(
            msg=(
                f"Evaluating t2m on {len(self.records)} {self.config.split} records "
                f"({self.config.repeats} repeats, baseline {self.config.baseline})."
            )
        )
        runs = [self._t2m_repeat(seed=seed) for seed in self._repeat_seeds()]
        report = self._report(task="t2m", runs=runs)
        self.logger.info(
            msg=(
                f"t2m R-Precision {report.r_precision_top1:.3f}/{report.r_precision_top2:.3f}/"
                f"{report.r_precision_top3:.3f}, FID {report.fid:.3f}, "
                f"format rate {report.format_rate:.3f}."
            )
        )

        return report

    def eval_m2t(self) -> EvalReport:
        """
        Description
        -----------

        This method evaluates motion-to-text captioning over the
        configured split; the prompts carry the tokenized reference
        clips.

        Returns
        -------

        report: EvalReport

            A Python EvalReport object.

        """

        self.logger.info(
            msg=(
                f"Evaluating m2t on {len(self.records)} {self.config.split} records "
                f"({self.config.repeats} repeats, baseline {self.config.baseline})."
            )
        )
        motions = {}
        if self.config.baseline == "none":
            motions = {
                record.id: self.tokenizer.tokenize(self.clips[record.id])
                for record in self.records
            }
        runs = [self._m2t_repeat(seed=seed, motions=motions) for seed in self._repeat_seeds()]
        report = self._report(task="m2t", runs=runs)
        self.logger.info(
            msg=(
                f"m2t BLEU@1 {report.bleu1:.2f}, BLEU@4 {report.bleu4:.2f}, ROUGE-L "
                f"{report.rouge_l:.2f}, CIDEr {report.cider:.2f}, format rate "
                f"{report.format_rate:.3f}."
            )
        )

        return report


# ----


def _evaluator(
    dataset: Dataset,
    config: EvalConfig,
    tokenizer_path: str,
    embedder_path: str,
    policy_path: str = None,
) -> Evaluator:
    paths = {"tokenizer": tokenizer_path, "embedder": embedder_path}
    if config.baseline == "none":
        paths["policy"] = policy_path
    for (name, path) in paths.items():
        if path is None or not fileio_interface.fileexist(path=path):
            msg = f"The {name} checkpoint {path} does not exist. Aborting!!!"
            raise EvaluateInterfaceError(msg=msg)

    (model, vocab) = (None, None)
    if config.baseline == "none":
        (model, vocab, _) = load_policy(path=policy_path)

    return Evaluator(
        dataset=dataset,
        tokenizer=MotionTokenizer.from_checkpoint(path=tokenizer_path),
        embedder=MotionTextEmbedder.from_checkpoint(path=embedder_path),
        config=config,
        model=model,
        vocab=vocab,
        checkpoint=policy_path if config.baseline == "none" else config.baseline,
    )


def eval_t2m(
    dataset: Dataset,
    config: EvalConfig,
    tokenizer_path: str,
    embedder_path: str,
    policy_path: str = None,
) -> EvalReport:
    """
    Description
    -----------

    This function loads the checkpoints and evaluates text-to-motion
    generation.

    Raises
    ------

    EvaluateInterfaceError:

        * raised if a required checkpoint does not exist; the path is
          named.

    """

    return _evaluator(dataset, config, tokenizer_path, embedder_path, policy_path).eval_t2m()


def eval_m2t(
    dataset: Dataset,
    config: EvalConfig,
    tokenizer_path: str,
    embedder_path: str,
    policy_path: str = None,
) -> EvalReport:
    """
    Description
    -----------

    This function loads the checkpoints and evaluates motion-to-text
    captioning.

    Raises
    ------

    EvaluateInterfaceError:

        * raised if a required checkpoint does not exist; the path is
          named.

    """

    return _evaluator(dataset, config, tokenizer_path, embedder_path, policy_path).eval_m2t()


def write_report(report: EvalReport, path: str) -> None:
    """Write the report as indented JSON."""

    json_interface.write_json(json_file=path, in_dict=report.to_dict())
