# =========================================================================

# Script: scripts/unimo_desk.py

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
Script
------

    unimo_desk.py

Description
-----------

    This script is the command line driver of the desk-scale
    pipeline.

        user@host:$ python unimo_desk.py <command> [<action>] \\
            [--config desk.json] [--key value ...] \\
            [--set section.key=value ...] [--seed N] [--force]

    The supported commands are

        dataset gen|stats, tokenizer train|encode|decode,
        embedder train|embed, sft train, grpo train, rewards eval,
        eval t2m|m2t, generate, caption, render, pipeline run

    Paths that are not passed on the command line default to the
    artifacts beneath the configured output directory.

Classes
-------

    UniMoDesk(options_obj)

        This is the base-class object for dispatching the command line
        tasks.

    UniMoDeskError(msg)

        This is the base-class for all exceptions; it is a sub-class
        of Error.

Functions
---------

    main()

        This is the driver-level method to invoke the tasks within
        this script.

Requirements
------------

- unimo_pyutils

Author(s)
---------

    unimo_pyutils developers; 02 March 2026

History
-------

    2026-03-02: Initial implementation.

"""

# ----

import os
import sys

# The script runs from a checkout as well as from an installed tree.
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

# pylint: disable=wrong-import-position

from typing import Callable, Dict

import numpy

from confs import json_interface
from embedder.contrastive_interface import train_contrastive
from embedder.dual_encoder_interface import MotionTextEmbedder
from execute.pipeline_interface import Pipeline, load_config
from ioapps import motion_interface, svg_interface
from metrics.evaluate_interface import EvalConfig, eval_m2t, eval_t2m, write_report
from rewards.rewards_interface import RewardScorer, score_policy
from synthdata.dataset_interface import Dataset, dataset_stats, gen_dataset
from synthdata.primitives_interface import FPS
from tokenizer_vq.train_interface import train_tokenizer
from tokenizer_vq.vqvae_interface import MotionTokenizer
from tools import fileio_interface, parser_interface
from training.grpo_interface import run_grpo
from training.sft_interface import run_sft
from utils.arguments_interface import Arguments
from utils.error_interface import Error
from utils.logger_interface import Logger
from vocab_lm.inference_interface import Generation, caption_motion, generate_motion
from vocab_lm.transformer_interface import load_policy

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

logger = Logger()

# ----


class UniMoDeskError(Error):
    """
    Description
    -----------

    This is the base-class for all exceptions; it is a sub-class of
    Error.

    Parameters
    ----------

    msg: str

        A Python string to accompany the raised exception.

    """


# ----


class UniMoDesk:
    """
    Description
    -----------

    This is the base-class object for dispatching the command line
    tasks.

    Parameters
    ----------

    options_obj: object

        A Python object containing the command line argument
        attributes.

    """

    def __init__(self, options_obj: object):
        self.options_obj = options_obj
        self.config = load_config(
            path=self.option("config"), overrides=options_obj.overrides, seed=options_obj.seed
        )
        self.pipeline = Pipeline(config=self.config, force=options_obj.force)
        self.tasks: Dict[str, Callable[[], None]] = {
            "dataset gen": self.dataset_gen,
            "dataset stats": self.dataset_stats,
            "tokenizer train": self.tokenizer_train,
            "tokenizer encode": self.tokenizer_encode,
            "tokenizer decode": self.tokenizer_decode,
            "embedder train": self.embedder_train,
            "embedder embed": self.embedder_embed,
            "sft train": self.sft_train,
            "grpo train": self.grpo_train,
            "rewards eval": self.rewards_eval,
            "eval t2m": self.eval_task,
            "eval m2t": self.eval_task,
            "generate": self.generate,
            "caption": self.caption,
            "render": self.render,
            "pipeline run": self.pipeline_run,
        }

    def option(self, key: str, default: object = None) -> object:
        value = parser_interface.object_getattr(object_in=self.options_obj, key=key, force=True)

        return default if value is None else value

    def required(self, key: str) -> str:
        value = self.option(key)
        if value is None:
            msg = f"The command requires the --{key.replace('_', '-')} argument. Aborting!!!"
            raise UniMoDeskError(msg=msg)

        return value

    def path(self, key: str, artifact: str) -> str:
        return self.option(key, default=self.pipeline.paths[artifact])

    def dataset(self) -> Dataset:
        return Dataset.from_dir(root=self.path("data", "dataset"))

    def log_path(self, stage: str) -> str:
        path = self.option("log", default=self.pipeline.log_path(stage))
        fileio_interface.makedirs(path=os.path.dirname(os.path.abspath(path)))

        return path

    def sampling(self) -> Dict:
        eval_config = self.config.section("eval")

        return {
            "seed": int(self.option("sample_seed", default=eval_config.seed)),
            "temperature": float(self.option("temperature", default=eval_config.temperature)),
            "top_k": int(self.option("top_k", default=eval_config.top_k)),
            "max_new": int(self.option("max_new", default=eval_config.max_new)),
        }

    # ----

    def dataset_gen(self) -> None:
        gen_dataset(config=self.config.section("dataset"), out_dir=self.path("out", "dataset"))

    def dataset_stats(self) -> None:
        stats = dataset_stats(dataset=self.dataset())
        for (split, values) in stats.items():
            logger.info(msg=f"{split}: {json_interface.dumps_canonical(in_obj=values)}")
        if self.option("output_file") is not None:
            json_interface.write_json(json_file=self.option("output_file"), in_dict=stats)

    def tokenizer_train(self) -> None:
        train_tokenizer(
            dataset=self.dataset(),
            config=self.config.section("tokenizer"),
            out_path=self.path("out", "tokenizer"),
            log_path=self.log_path("tokenizer"),
        )

    def tokenizer_encode(self) -> None:
        tokenizer = MotionTokenizer.from_checkpoint(path=self.path("checkpoint", "tokenizer"))
        (frames, _) = motion_interface.read_motion(path=self.required("motion"))
        indices = tokenizer.tokenize(frames)
        logger.info(msg=" ".join(f"<Motion_{index}>" for index in indices))

    def tokenizer_decode(self) -> None:
        tokenizer = MotionTokenizer.from_checkpoint(path=self.path("checkpoint", "tokenizer"))
        indices = [int(item) for item in str(self.required("tokens")).replace(",", " ").split()]
        frames = tokenizer.decode(indices)
        motion_interface.write_motion(path=self.required("out"), frames=frames, fps=FPS)
        logger.info(msg=f"Decoded {len(indices)} tokens to {frames.shape[0]} frames.")

    def embedder_train(self) -> None:
        train_contrastive(
            dataset=self.dataset(),
            config=self.config.section("embedder"),
            out_path=self.path("out", "embedder"),
            log_path=self.log_path("embedder"),
        )

    def embedder_embed(self) -> None:
        embedder = MotionTextEmbedder.from_checkpoint(path=self.path("checkpoint", "embedder"))
        if self.option("motion") is not None:
            (frames, _) = motion_interface.read_motion(path=self.option("motion"))
            vector = embedder.embed_motion(frames)
        else:
            vector = embedder.embed_text(self.required("caption"))
        logger.info(msg=json_interface.dumps_canonical(in_obj=numpy.round(vector, 6).tolist()))

    def sft_train(self) -> None:
        run_sft(
            dataset=self.dataset(),
            config=self.config.section("sft"),
            tokenizer_path=self.path("tokenizer", "tokenizer"),
            out_path=self.path("out", "sft"),
            log_path=self.log_path("sft"),
        )

    def grpo_train(self) -> None:
        run_grpo(
            dataset=self.dataset(),
            config=self.config.section("grpo"),
            sft_path=self.path("sft", "sft"),
            tokenizer_path=self.path("tokenizer", "tokenizer"),
            embedder_path=self.path("embedder", "embedder"),
            out_path=self.path("out", "grpo"),
            log_path=self.log_path("grpo"),
        )

    def rewards_eval(self) -> None:
        (model, vocab, _) = load_policy(path=self.path("checkpoint", "sft"))
        grpo = self.config.section("grpo")
        scorer = RewardScorer(
            embedder=MotionTextEmbedder.from_checkpoint(path=self.path("embedder", "embedder")),
            tokenizer=MotionTokenizer.from_checkpoint(path=self.path("tokenizer", "tokenizer")),
            vocab=vocab,
            use_motion_reward=grpo.use_motion_reward,
            use_semantic_reward=grpo.use_semantic_reward,
            use_caption_reward=grpo.use_caption_reward,
        )
        rows = score_policy(
            scorer=scorer,
            model=model,
            dataset=self.dataset(),
            task=self.required("task"),
            split=self.option("split", default="val"),
            samples=int(self.option("samples", default=32)),
            **self.sampling(),
        )
        json_interface.write_ndjson(ndjson_file=self.required("output_file"), records=rows)

    def eval_task(self) -> None:
        task = self.options_obj.action
        overrides = {
            key: parser_interface.value_formatter(value=self.option(key))
            for key in ("split", "baseline", "repeats")
            if self.option(key) is not None
        }
        config = EvalConfig.from_dict(dict(self.config.eval, **overrides))
        evaluate = eval_t2m if task == "t2m" else eval_m2t
        report = evaluate(
            dataset=self.dataset(),
            config=config,
            tokenizer_path=self.path("tokenizer", "tokenizer"),
            embedder_path=self.path("embedder", "embedder"),
            policy_path=self.path("checkpoint", "grpo"),
        )
        write_report(report=report, path=self.required("report"))

    def _show(self, generation: Generation) -> None:
        logger.info(msg=f"<think> {generation.think_text}")
        if not generation.format_valid:
            logger.warn(msg=f"Invalid {generation.task} output; raw: {generation.raw}")
        elif generation.task == "t2m":
            logger.info(msg=f"<Motion> {len(generation.motion_indices or [])} tokens")
        else:
            logger.info(msg=f"<Answer> {generation.answer_text}")

    def generate(self) -> None:
        generation = generate_motion(
            policy_path=self.path("checkpoint", "grpo"),
            tokenizer_path=self.path("tokenizer", "tokenizer"),
            caption=self.required("caption"),
            out_path=self.required("out"),
            **self.sampling(),
        )
        self._show(generation)

    def caption(self) -> None:
        generation = caption_motion(
            policy_path=self.path("checkpoint", "grpo"),
            tokenizer_path=self.path("tokenizer", "tokenizer"),
            motion_path=self.required("motion"),
            **self.sampling(),
        )
        self._show(generation)

    def render(self) -> None:
        svg_interface.render_svg_file(
            motion_path=self.required("motion"),
            out_path=self.required("out"),
            stride=int(self.option("stride", default=4)),
        )

    def pipeline_run(self) -> None:
        state = self.pipeline.run()
        for (stage, entry) in state["stages"].items():
            logger.info(msg=f"{stage}: {'skipped' if entry.get('skipped') else 'ran'}")

    # ----

    def run(self) -> None:
        """
        Description
        -----------

        This method dispatches the command (and action) to its task.

        Raises
        ------

        UniMoDeskError:

            * raised if the command is not supported.

        """

        command = self.options_obj.command
        if self.options_obj.action is not None:
            command = f"{command} {self.options_obj.action}"
        if command not in self.tasks:
            msg = (
                f"The command {command} is not supported; supported commands are "
                f"{sorted(self.tasks)}. Aborting!!!"
            )
            raise UniMoDeskError(msg=msg)

        self.tasks[command]()


# ----


def main():
    """
    Description
    -----------

    This is the driver-level function to invoke the tasks within this
    script.

    """

    # Collect the command line arguments.
    options_obj = Arguments().run()

    # Launch the task.
    task = UniMoDesk(options_obj=options_obj)
    task.run()


# ----


if __name__ == "__main__":
    main()
