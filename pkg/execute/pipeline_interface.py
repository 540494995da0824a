# =========================================================================

# Module: execute/pipeline_interface.py

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

    pipeline_interface.py

Description
-----------

    This module contains the configuration layer and the stage
    orchestration of the desk-scale pipeline:

        dataset -> tokenizer -> embedder -> sft -> grpo -> eval

    Every stage is keyed by the hash of its configuration section and
    the keys of the stages it consumes; a stage whose artifacts exist
    and whose key matches the key recorded in the pipeline state file
    is skipped unless forced.

Classes
-------

    Pipeline(config, force=False)

        This is the base-class object for running the stages.

    PipelineConfig()

        This is the base-class object for the pipeline configuration.

Functions
---------

    load_config(path=None, overrides=None, seed=None)

        This function reads, merges and validates a pipeline
        configuration.

    run_pipeline(config, force=False)

        This function runs every stage of the pipeline.

Requirements
------------

- pyyaml; https://github.com/yaml/pyyaml

- schema; https://github.com/keleshev/schema

Author(s)
---------

    unimo_pyutils developers; 02 March 2026

History
-------

    2026-03-02: Initial implementation.

"""

# ----

# pylint: disable=broad-except

# ----

import os
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List

from schema import Optional

from confs import json_interface
from confs.yaml_interface import YAML
from embedder.contrastive_interface import train_contrastive
from embedder.dual_encoder_interface import EmbedderConfig
from ioapps import hashlib_interface
from metrics.evaluate_interface import EvalConfig, eval_m2t, eval_t2m, write_report
from synthdata.dataset_interface import META, Dataset, DatasetConfig, gen_dataset
from tokenizer_vq.train_interface import train_tokenizer
from tokenizer_vq.vqvae_interface import TokenizerConfig
from tools import fileio_interface, parser_interface
from training.grpo_interface import GrpoConfig, run_grpo
from training.sft_interface import SftConfig, run_sft
from utils import schema_interface
from utils.exceptions_interface import PipelineInterfaceError
from utils.logger_interface import Logger

# ----

# Define all available attributes.
__all__ = ["Pipeline", "PipelineConfig", "load_config", "run_pipeline"]

# ----

logger = Logger()

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

SECTIONS = ("dataset", "tokenizer", "embedder", "sft", "grpo", "eval")

STATE_FILE = "pipeline.json"

PIPELINE_SCHEMA = {
    Optional("seed", default=0): int,
    Optional("output_dir", default="runs/desk"): str,
    **{Optional(section, default={}): dict for section in SECTIONS},
}

# ----


@dataclass
class PipelineConfig:
    """
    Description
    -----------

    This is the base-class object for the pipeline configuration; a
    section that does not set its own seed takes a seed derived from
    the global seed and the section name.

    """

    seed: int = 0
    output_dir: str = "runs/desk"
    dataset: Dict = field(default_factory=dict)
    tokenizer: Dict = field(default_factory=dict)
    embedder: Dict = field(default_factory=dict)
    sft: Dict = field(default_factory=dict)
    grpo: Dict = field(default_factory=dict)
    eval: Dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, opts: Dict = None) -> "PipelineConfig":
        """Build a validated configuration from a dictionary."""

        opts = schema_interface.validate_opts(PIPELINE_SCHEMA, dict(opts or {}))
        for section in SECTIONS:
            opts[section] = dict(opts[section])
            opts[section].setdefault(
                "seed", hashlib_interface.derive_seed(opts["seed"], section)
            )

        return cls(**opts)

    def section(self, name: str) -> object:
        """
        Description
        -----------

        This method returns the validated stage configuration object
        of a section.

        """

        builders = {
            "dataset": DatasetConfig,
            "tokenizer": TokenizerConfig,
            "embedder": EmbedderConfig,
            "sft": SftConfig,
            "grpo": GrpoConfig,
            "eval": EvalConfig,
        }

        return builders[name].from_dict(getattr(self, name))


def load_config(path: str = None, overrides: Dict = None, seed: int = None) -> PipelineConfig:
    """
    Description
    -----------

    This function reads a configuration file (JSON or YAML), merges
    the command line overrides on top of it and validates the
    result.

    Keywords
    --------

    path: str, optional

        A Python string specifying the configuration file; if
        NoneType, the defaults are used.

    overrides: dict, optional

        A Python dictionary of nested `section.key` overrides.

    seed: int, optional

        A Python integer that replaces the global seed.

    Returns
    -------

    config: PipelineConfig

        A Python PipelineConfig object.

    Raises
    ------

    YAMLInterfaceError:

        * raised if the configuration file cannot be read.

    """

    opts = YAML().read_yaml(yaml_file=path) if path is not None else {}
    opts = dict(parser_interface.dict_merge(opts, overrides or {}))
    if seed is not None:
        opts["seed"] = seed

    return PipelineConfig.from_dict(opts)


# ----


@dataclass
class _Stage:
    name: str
    inputs: List[str]
    artifacts: List[str]
    run: Callable[[], Dict]


class Pipeline:
    """
    Description
    -----------

    This is the base-class object for running the pipeline stages in
    dependency order.

    Parameters
    ----------

    config: PipelineConfig

        A Python PipelineConfig object.

    Keywords
    --------

    force: bool, optional

        A Python boolean specifying whether every stage runs even if
        its artifacts are up to date.

    """

    def __init__(self, config: PipelineConfig, force: bool = False):
        self.logger = Logger()
        self.config = config
        self.force = force
        self.root = config.output_dir
        self.paths = {
            "dataset": os.path.join(self.root, "dataset"),
            "tokenizer": os.path.join(self.root, "tokenizer.mckp"),
            "embedder": os.path.join(self.root, "embedder.mckp"),
            "sft": os.path.join(self.root, "sft.mckp"),
            "grpo": os.path.join(self.root, "grpo.mckp"),
        }
        self.reports = {
            name: os.path.join(self.root, "reports", f"{name}.json")
            for name in ("t2m_sft", "m2t_sft", "t2m_sft_rl", "m2t_sft_rl", "t2m_random")
        }
        self.state_path = os.path.join(self.root, STATE_FILE)
        self.stages = [
            _Stage("dataset", [], [os.path.join(self.paths["dataset"], META)], self._dataset),
            _Stage("tokenizer", ["dataset"], [self.paths["tokenizer"]], self._tokenizer),
            _Stage("embedder", ["dataset"], [self.paths["embedder"]], self._embedder),
            _Stage("sft", ["dataset", "tokenizer"], [self.paths["sft"]], self._sft),
            _Stage(
                "grpo",
                ["dataset", "tokenizer", "embedder", "sft"],
                [self.paths["grpo"]],
                self._grpo,
            ),
            _Stage(
                "eval",
                ["dataset", "tokenizer", "embedder", "sft", "grpo"],
                list(self.reports.values()),
                self._eval,
            ),
        ]

    def log_path(self, stage: str) -> str:
        return os.path.join(self.root, "logs", f"{stage}.ndjson")

    def _read_state(self) -> Dict:
        if not fileio_interface.fileexist(path=self.state_path):
            return {"stages": {}}

        return json_interface.read_json(json_file=self.state_path)

    def stage_key(self, stage: str, keys: Dict[str, str]) -> str:
        """
        Description
        -----------

        This method returns the key of a stage: the hash of its
        configuration section and of the keys of its inputs.

        """

        inputs = next(item.inputs for item in self.stages if item.name == stage)

        return hashlib_interface.get_dict_hash(
            in_dict={
                "section": asdict(self.config.section(stage)),
                "inputs": {name: keys[name] for name in inputs},
            }
        )

    # ----

    def _dataset_obj(self) -> Dataset:
        return Dataset.from_dir(root=self.paths["dataset"])

    def _dataset(self) -> Dict:
        gen_dataset(config=self.config.section("dataset"), out_dir=self.paths["dataset"])

        return json_interface.read_json(json_file=os.path.join(self.paths["dataset"], META))

    def _tokenizer(self) -> Dict:
        return train_tokenizer(
            dataset=self._dataset_obj(),
            config=self.config.section("tokenizer"),
            out_path=self.paths["tokenizer"],
            log_path=self.log_path("tokenizer"),
        )

    def _embedder(self) -> Dict:
        return train_contrastive(
            dataset=self._dataset_obj(),
            config=self.config.section("embedder"),
            out_path=self.paths["embedder"],
            log_path=self.log_path("embedder"),
        )

    def _sft(self) -> Dict:
        return run_sft(
            dataset=self._dataset_obj(),
            config=self.config.section("sft"),
            tokenizer_path=self.paths["tokenizer"],
            out_path=self.paths["sft"],
            log_path=self.log_path("sft"),
        )

    def _grpo(self) -> Dict:
        return run_grpo(
            dataset=self._dataset_obj(),
            config=self.config.section("grpo"),
            sft_path=self.paths["sft"],
            tokenizer_path=self.paths["tokenizer"],
            embedder_path=self.paths["embedder"],
            out_path=self.paths["grpo"],
            log_path=self.log_path("grpo"),
        )

    def _eval(self) -> Dict:
        dataset = self._dataset_obj()
        config = self.config.section("eval")
        random_config = EvalConfig.from_dict(dict(asdict(config), baseline="random"))
        jobs = (
            ("t2m_sft", eval_t2m, config, self.paths["sft"]),
            ("m2t_sft", eval_m2t, config, self.paths["sft"]),
            ("t2m_sft_rl", eval_t2m, config, self.paths["grpo"]),
            ("m2t_sft_rl", eval_m2t, config, self.paths["grpo"]),
            ("t2m_random", eval_t2m, random_config, None),
        )
        # A rerun replaces the previous reports in the log.
        fileio_interface.removefiles(filelist=[self.log_path("eval")])
        summary = {}
        for (name, evaluate, eval_config, policy_path) in jobs:
            report = evaluate(
                dataset=dataset,
                config=eval_config,
                tokenizer_path=self.paths["tokenizer"],
                embedder_path=self.paths["embedder"],
                policy_path=policy_path,
            )
            write_report(report=report, path=self.reports[name])
            json_interface.append_ndjson(
                ndjson_file=self.log_path("eval"), record={"report": name, **report.to_dict()}
            )
            summary[name] = self.reports[name]

        return summary

    # ----

    def run(self) -> Dict:
        """
        Description
        -----------

        This method runs the stages in dependency order and records
        the key of every completed stage in the pipeline state file.

        Returns
        -------

        state: dict

            A Python dictionary of the pipeline state; per stage its
            key, artifacts and whether it was skipped in this run.

        Raises
        ------

        PipelineInterfaceError:

            * raised if a stage fails; the stage and its log path are
              named.

        """

        fileio_interface.makedirs(path=os.path.join(self.root, "logs"))
        fileio_interface.makedirs(path=os.path.join(self.root, "reports"))
        state = self._read_state()
        keys: Dict[str, str] = {}
        for stage in self.stages:
            keys[stage.name] = self.stage_key(stage.name, keys)
            recorded = state["stages"].get(stage.name, {})
            current = recorded.get("key") == keys[stage.name] and all(
                fileio_interface.fileexist(path=path) for path in stage.artifacts
            )
            if current and not self.force:
                self.logger.info(msg=f"Stage {stage.name} is up to date; skipping.")
                state["stages"][stage.name] = dict(recorded, skipped=True)
                continue

            self.logger.info(msg=f"Running stage {stage.name}.")
            try:
                stage.run()
            except Exception as errmsg:
                msg = (
                    f"The pipeline stage {stage.name} failed ({errmsg}); see the log "
                    f"{self.log_path(stage.name)}. Aborting!!!"
                )
                raise PipelineInterfaceError(msg=msg) from errmsg

            state["stages"][stage.name] = {
                "key": keys[stage.name],
                "artifacts": stage.artifacts,
                "skipped": False,
            }
            json_interface.write_json(json_file=self.state_path, in_dict=state)

        return state


def run_pipeline(config: PipelineConfig, force: bool = False) -> Dict:
    """
    Description
    -----------

    This function runs every stage of the pipeline; see
    Pipeline.run.

    """

    return Pipeline(config=config, force=force).run()
