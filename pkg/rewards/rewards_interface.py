# =========================================================================

# Module: rewards/rewards_interface.py

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

    rewards_interface.py

Description
-----------

    This module contains the rewards of the policy completions and
    their task-specific composition:

        t2m: total = r_format + r_motion + r_semantic

        m2t: total = r_format + r_caption

    r_format is 1 when the completion parses under the task grammar
    and 0 otherwise; r_motion and r_semantic are cosine similarities
    of the decoded motion against the reference clip and caption;
    r_caption is twice the cosine similarity of the generated and
    reference caption embeddings. The similarity terms are set to 0
    when the format is invalid or the payload is empty, and a
    disabled term is absent from the breakdown and the total.

Classes
-------

    RewardBreakdown(r_format, r_motion, r_semantic, r_caption, total,
    flags)

        This is the base-class object for the rewards of one
        completion.

    RewardScorer(embedder, tokenizer, vocab, use_motion_reward,
    use_semantic_reward, use_caption_reward)

        This is the base-class object for scoring completions against
        frozen checkpoints.

Functions
---------

    caption_reward(generated, reference, embedder)

        This function returns the caption reward.

    format_reward(raw_output, task, vocab=None)

        This function returns the format reward.

    motion_reward(generated, reference, embedder)

        This function returns the motion reward.

    score_policy(scorer, model, dataset, task, split="val", samples=32,
    seed=0, temperature=1.0, top_k=50, max_new=128)

        This function scores one sampled completion per record.

    semantic_reward(generated, caption_text, embedder)

        This function returns the semantic reward.

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

from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence, Union

import numpy

from embedder.dual_encoder_interface import MotionTextEmbedder, cosine
from ioapps import hashlib_interface
from synthdata.dataset_interface import Dataset
from tokenizer_vq.vqvae_interface import MotionTokenizer
from utils.exceptions_interface import RewardsInterfaceError
from utils.logger_interface import Logger
from vocab_lm.parse_interface import StructuredOutput, parse_output
from vocab_lm.prompt_interface import TASKS, encode_prompt
from vocab_lm.sampling_interface import sample
from vocab_lm.transformer_interface import TinyLM
from vocab_lm.vocab_interface import Vocabulary

# ----

# Define all available attributes.
__all__ = [
    "RewardBreakdown",
    "RewardScorer",
    "caption_reward",
    "format_reward",
    "motion_reward",
    "score_policy",
    "semantic_reward",
]

# ----

logger = Logger()

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

# Scale of the caption reward; matches the two t2m similarity terms.
CAPTION_SCALE = 2.0

# ----


@dataclass
class RewardBreakdown:
    """
    Description
    -----------

    This is the base-class object for the rewards of one completion;
    disabled or inapplicable terms are NoneType and total is the sum
    of the populated terms.

    """

    r_format: int = 0
    r_motion: Optional[float] = None
    r_semantic: Optional[float] = None
    r_caption: Optional[float] = None
    total: float = 0.0
    flags: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {key: value for (key, value) in asdict(self).items() if value is not None}


# ----


def format_reward(
    raw_output: Union[str, Sequence[int]], task: str, vocab: Vocabulary = None
) -> int:
    """
    Description
    -----------

    This function returns 1 if the completion parses under the task
    grammar and 0 otherwise.

    """

    return int(parse_output(output=raw_output, task=task, vocab=vocab).format_valid)


def motion_reward(
    generated: numpy.ndarray, reference: numpy.ndarray, embedder: MotionTextEmbedder
) -> float:
    """
    Description
    -----------

    This function returns the cosine similarity of the motion
    embeddings of a generated and a reference clip.

    Raises
    ------

    EmbedderInterfaceError:

        * raised if an embedding has zero norm.

    """

    return cosine(embedder.embed_motion(generated), embedder.embed_motion(reference))


def semantic_reward(
    generated: numpy.ndarray, caption_text: str, embedder: MotionTextEmbedder
) -> float:
    """
    Description
    -----------

    This function returns the cosine similarity of the motion
    embedding of a generated clip and the text embedding of the
    caption.

    """

    return cosine(embedder.embed_motion(generated), embedder.embed_text(caption_text))


def caption_reward(generated: str, reference: str, embedder: MotionTextEmbedder) -> float:
    """
    Description
    -----------

    This function returns twice the cosine similarity of the text
    embeddings of a generated and a reference caption; an empty
    caption scores 0.

    """

    if not (generated or "").strip() or not (reference or "").strip():
        return 0.0

    return CAPTION_SCALE * cosine(embedder.embed_text(generated), embedder.embed_text(reference))


# ----


class RewardScorer:
    """
    Description
    -----------

    This is the base-class object for scoring completions against the
    frozen tokenizer and embedder; scoring never updates either.

    Parameters
    ----------

    embedder: MotionTextEmbedder

        A Python MotionTextEmbedder object.

    tokenizer: MotionTokenizer

        A Python MotionTokenizer object.

    vocab: Vocabulary

        A Python Vocabulary object of the policy.

    Keywords
    --------

    use_motion_reward: bool, optional

        A Python boolean specifying whether r_motion is scored.

    use_semantic_reward: bool, optional

        A Python boolean specifying whether r_semantic is scored.

    use_caption_reward: bool, optional

        A Python boolean specifying whether r_caption is scored.

    """

    def __init__(
        self,
        embedder: MotionTextEmbedder,
        tokenizer: MotionTokenizer,
        vocab: Vocabulary,
        use_motion_reward: bool = True,
        use_semantic_reward: bool = True,
        use_caption_reward: bool = True,
    ):
        self.embedder = embedder
        self.tokenizer = tokenizer
        self.vocab = vocab
        self.use_motion_reward = use_motion_reward
        self.use_semantic_reward = use_semantic_reward
        self.use_caption_reward = use_caption_reward

    def decode_motion(self, parsed: StructuredOutput) -> Optional[numpy.ndarray]:
        """Parsed t2m completion -> decoded clip, or NoneType."""

        if not parsed.format_valid or not parsed.motion_indices:
            return None

        return self.tokenizer.decode(parsed.motion_indices)

    def total_reward(
        self,
        task: str,
        raw_output: Union[str, Sequence[int]],
        caption: str,
        reference: numpy.ndarray = None,
    ) -> RewardBreakdown:
        """
        Description
        -----------

        This method scores one completion.

        Parameters
        ----------

        task: str

            A Python string specifying the task; t2m or m2t.

        raw_output: str or list

            A Python string or list of token ids of the completion.

        caption: str

            A Python string containing the reference caption.

        Keywords
        --------

        reference: numpy.ndarray, optional

            A Python numpy.ndarray of the reference (T, D) clip;
            required for t2m when the motion reward is enabled.

        Returns
        -------

        breakdown: RewardBreakdown

            A Python RewardBreakdown object.

        Raises
        ------

        RewardsInterfaceError:

            * raised if the task is unknown or the t2m reference clip
              is missing.

        """

        if task not in TASKS:
            msg = f"The task {task} is not one of {list(TASKS)}. Aborting!!!"
            raise RewardsInterfaceError(msg=msg)

        parsed = parse_output(output=raw_output, task=task, vocab=self.vocab)
        breakdown = RewardBreakdown(r_format=int(parsed.format_valid))
        if not parsed.format_valid:
            breakdown.flags.append("invalid_format")

        if task == "t2m":
            if self.use_motion_reward and reference is None:
                msg = "The t2m motion reward requires the reference clip. Aborting!!!"
                raise RewardsInterfaceError(msg=msg)

            generated = self.decode_motion(parsed)
            if parsed.format_valid and generated is None:
                breakdown.flags.append("empty_motion")
            if self.use_motion_reward:
                breakdown.r_motion = (
                    0.0
                    if generated is None
                    else motion_reward(generated, reference, self.embedder)
                )
            if self.use_semantic_reward:
                breakdown.r_semantic = (
                    0.0 if generated is None else semantic_reward(generated, caption, self.embedder)
                )

        elif self.use_caption_reward:
            answer = parsed.answer_text if parsed.format_valid else ""
            if parsed.format_valid and not (answer or "").strip():
                breakdown.flags.append("empty_caption")
            breakdown.r_caption = caption_reward(answer, caption, self.embedder)

        terms = (breakdown.r_motion, breakdown.r_semantic, breakdown.r_caption)
        breakdown.total = float(
            breakdown.r_format + sum(term for term in terms if term is not None)
        )

        return breakdown


# ----


def score_policy(
    scorer: RewardScorer,
    model: TinyLM,
    dataset: Dataset,
    task: str,
    split: str = "val",
    samples: int = 32,
    seed: int = 0,
    temperature: float = 1.0,
    top_k: int = 50,
    max_new: int = 128,
) -> List[Dict]:
    """
    Description
    -----------

    This function samples one completion per record for the first
    samples records of a split and returns the per-sample reward
    breakdowns.

    Parameters
    ----------

    scorer: RewardScorer

        A Python RewardScorer object; its vocabulary is the policy's.

    model: TinyLM

        A Python TinyLM object.

    dataset: Dataset

        A Python Dataset object.

    task: str

        A Python string specifying the task; t2m or m2t.

    Keywords
    --------

    split: str, optional

        A Python string specifying the dataset split.

    samples: int, optional

        A Python integer specifying the number of records scored; 0
        scores the whole split.

    Returns
    -------

    rows: list

        A Python list of dictionaries holding the record id, the task,
        the raw completion and the breakdown entries.

    """

    if task not in TASKS:
        msg = f"The task {task} is not one of {list(TASKS)}. Aborting!!!"
        raise RewardsInterfaceError(msg=msg)

    vocab = scorer.vocab
    records = dataset.split(split)
    rows = []
    for record in records[:samples] if samples else records:
        clip = dataset.load_clip(record).frames
        if task == "t2m":
            prompt = encode_prompt(vocab=vocab, task=task, caption=record.caption)
        else:
            prompt = encode_prompt(vocab=vocab, task=task, motion=scorer.tokenizer.tokenize(clip))
        completion = sample(
            model=model,
            prompt=prompt.ids,
            temperature=temperature,
            top_k=top_k,
            max_new=min(max_new, model.config.context - len(prompt)),
            seed=hashlib_interface.derive_seed(seed, record.id),
            eos_id=vocab.eos_id,
            banned=(vocab.pad_id, vocab.bos_id),
        )
        breakdown = scorer.total_reward(
            task=task, raw_output=completion, caption=record.caption, reference=clip
        )
        rows.append(
            {
                "record": record.id,
                "task": task,
                "raw": " ".join(vocab.decode(completion)),
                **breakdown.to_dict(),
            }
        )

    logger.info(
        msg=(
            f"Scored {len(rows)} {task} completions on {split}; mean total reward "
            f"{numpy.mean([row['total'] for row in rows]):.3f}."
        )
    )

    return rows
