# =========================================================================

# Module: synthdata/primitives_interface.py

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

    primitives_interface.py

Description
-----------

    This module contains the motion primitive catalogue, the primitive
    trace and motion clip types, and the deterministic clip generator.

    Each primitive is a short trajectory of the root position and the
    global bone angles which begins and ends at the rest pose; the
    root horizontal position carries over from one primitive to the
    next. A single rigid translation drawn from a truncated normal
    distribution jitters every clip so that bone lengths stay exact.

Classes
-------

    MotionClip(frames, fps, trace)

        This is the base-class object for a generated motion clip.

    ParamSpec(low, high, default, integer)

        This is the documented range of a primitive parameter.

    Primitive(name, params, duration_frames)

        This is the base-class object for a single primitive of a
        trace.

    PrimitiveTrace(primitives)

        This is the base-class object for an ordered list of
        primitives.

Functions
---------

    gen_clip(trace, seed)

        This function generates the motion clip for a primitive
        trace.

    validate_trace(trace)

        This function checks a primitive trace against the catalogue
        and returns the trace with default parameters filled in.

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

from dataclasses import dataclass, field
from typing import Callable, Dict, List, NamedTuple, Tuple

import numpy

from synthdata.skeleton_interface import (
    FRAME_DIM,
    JOINTS,
    ROOT_REST,
    forward_kinematics,
    rest_angles,
)
from utils.exceptions_interface import SynthDataInterfaceError

# ----

# Define all available attributes.
__all__ = [
    "DURATION_MULTIPLE",
    "FPS",
    "JITTER_SIGMA",
    "MAX_PRIMITIVES",
    "PARAM_TABLE",
    "PRIMITIVES",
    "MotionClip",
    "ParamSpec",
    "Primitive",
    "PrimitiveTrace",
    "gen_clip",
    "validate_trace",
]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

FPS = 16

# Equal to the tokenizer downsample factor.
DURATION_MULTIPLE = 4

MAX_PRIMITIVES = 4

JITTER_SIGMA = 0.01

COORD_LIMIT = 10.0

PRIMITIVES = (
    "walk",
    "turn",
    "wave",
    "squat",
    "jump",
    "raise_arm",
    "step_side",
    "stand",
)

# ----


class ParamSpec(NamedTuple):
    """
    Description
    -----------

    This is the documented range of a primitive parameter; integer
    parameters must additionally be whole numbers.

    """

    low: float
    high: float
    default: float
    integer: bool = False


# ----

PARAM_TABLE = {
    "walk": {"steps": ParamSpec(1, 4, 2, True), "stride": ParamSpec(0.2, 0.6, 0.4)},
    "turn": {"angle": ParamSpec(45.0, 180.0, 180.0)},
    "wave": {"repeats": ParamSpec(1, 4, 2, True), "amplitude": ParamSpec(0.2, 0.8, 0.5)},
    "squat": {"depth": ParamSpec(0.1, 0.5, 0.3), "repeats": ParamSpec(1, 3, 1, True)},
    "jump": {"height": ParamSpec(0.1, 0.5, 0.3), "repeats": ParamSpec(1, 3, 1, True)},
    "raise_arm": {"height": ParamSpec(0.5, 1.0, 1.0)},
    "step_side": {"steps": ParamSpec(1, 3, 1, True), "width": ParamSpec(0.1, 0.4, 0.25)},
    "stand": {},
}

# ----


@dataclass
class Primitive:
    """
    Description
    -----------

    This is the base-class object for a single primitive of a trace.

    """

    name: str
    params: Dict = field(default_factory=dict)
    duration_frames: int = 16

    def to_dict(self) -> Dict:
        """Return the JSON-serializable form of the primitive."""

        return {
            "name": self.name,
            "params": dict(sorted(self.params.items())),
            "duration_frames": int(self.duration_frames),
        }


# ----


@dataclass
class PrimitiveTrace:
    """
    Description
    -----------

    This is the base-class object for an ordered list of primitives.

    """

    primitives: List[Primitive] = field(default_factory=list)

    @classmethod
    def from_dict(cls, trace_dict: Dict) -> "PrimitiveTrace":
        """Build a trace from its JSON-serializable form."""

        return cls(
            primitives=[
                Primitive(
                    name=item["name"],
                    params=dict(item.get("params", {})),
                    duration_frames=int(item["duration_frames"]),
                )
                for item in trace_dict["primitives"]
            ]
        )

    @property
    def names(self) -> List[str]:
        """Return the primitive names in order."""

        return [primitive.name for primitive in self.primitives]

    @property
    def num_frames(self) -> int:
        """Return the total number of frames."""

        return int(sum(primitive.duration_frames for primitive in self.primitives))

    def to_dict(self) -> Dict:
        """Return the JSON-serializable form of the trace."""

        return {"primitives": [primitive.to_dict() for primitive in self.primitives]}


# ----


@dataclass
class MotionClip:
    """
    Description
    -----------

    This is the base-class object for a generated motion clip; frames
    is a (T, D) numpy.ndarray of joint coordinates.

    """

    frames: numpy.ndarray
    fps: int = FPS
    trace: PrimitiveTrace = None

    @property
    def num_frames(self) -> int:
        """Return T."""

        return int(self.frames.shape[0])

    @property
    def frame_dim(self) -> int:
        """Return D."""

        return int(self.frames.shape[1])


# ----


def __error__(field_name: str, reason: str) -> None:
    """
    Description
    -----------

    This function raises SynthDataInterfaceError for the named trace
    field.

    """

    msg = f"Invalid primitive trace field {field_name}: {reason}. Aborting!!!"
    raise SynthDataInterfaceError(msg=msg)


# ----


def validate_trace(trace: PrimitiveTrace) -> PrimitiveTrace:
    """
    Description
    -----------

    This function checks a primitive trace against the catalogue and
    returns a new trace with default parameters filled in.

    Parameters
    ----------

    trace: PrimitiveTrace

        A Python PrimitiveTrace object.

    Returns
    -------

    valid_trace: PrimitiveTrace

        A Python PrimitiveTrace object with every documented parameter
        defined.

    Raises
    ------

    SynthDataInterfaceError:

        * raised if the trace length is outside [1, MAX_PRIMITIVES].

        * raised if a primitive name is unknown.

        * raised if a parameter is unknown, out of range or not a
          whole number where required; the offending field is named.

        * raised if a duration is not a positive multiple of
          DURATION_MULTIPLE.

    """

    if not 1 <= len(trace.primitives) <= MAX_PRIMITIVES:
        __error__(
            field_name="primitives",
            reason=f"length {len(trace.primitives)} outside [1, {MAX_PRIMITIVES}]",
        )

    primitives = []
    for idx, primitive in enumerate(trace.primitives):
        prefix = f"primitives[{idx}]"
        if primitive.name not in PARAM_TABLE:
            __error__(
                field_name=f"{prefix}.name",
                reason=f"unknown primitive {primitive.name}",
            )

        specs = PARAM_TABLE[primitive.name]
        for key in primitive.params:
            if key not in specs:
                __error__(
                    field_name=f"{prefix}.params.{key}",
                    reason=f"not a parameter of {primitive.name}",
                )

        params = {}
        for key, spec in specs.items():
            value = float(primitive.params.get(key, spec.default))
            if not spec.low <= value <= spec.high:
                __error__(
                    field_name=f"{prefix}.params.{key}",
                    reason=f"value {value} outside [{spec.low}, {spec.high}]",
                )
            if spec.integer and value != int(value):
                __error__(
                    field_name=f"{prefix}.params.{key}",
                    reason=f"value {value} is not a whole number",
                )
            params[key] = int(value) if spec.integer else value

        duration = primitive.duration_frames
        if (
            int(duration) != duration
            or duration <= 0
            or int(duration) % DURATION_MULTIPLE != 0
        ):
            __error__(
                field_name=f"{prefix}.duration_frames",
                reason=f"{duration} is not a positive multiple of {DURATION_MULTIPLE}",
            )

        primitives.append(
            Primitive(name=primitive.name, params=params, duration_frames=int(duration))
        )

    return PrimitiveTrace(primitives=primitives)


# ----


def _envelope(u: numpy.ndarray) -> numpy.ndarray:
    # Ramps 0 -> 1 over the first quarter and back over the last.
    return numpy.clip(4.0 * numpy.minimum(u, 1.0 - u), 0.0, 1.0)


def _walk(u: numpy.ndarray, params: Dict, angles: Dict) -> Tuple:
    phase = 2.0 * numpy.pi * params["steps"] * u
    swing = 0.35 * numpy.sin(phase)
    angles["r_foot"] = angles["r_foot"] + swing
    angles["l_foot"] = angles["l_foot"] - swing
    angles["r_hand"] = angles["r_hand"] - 0.5 * swing
    angles["l_hand"] = angles["l_hand"] + 0.5 * swing
    dx = params["steps"] * params["stride"] * u
    dy = -0.01 * (1.0 - numpy.cos(2.0 * phase))

    return (dx, dy, angles)


def _turn(u: numpy.ndarray, params: Dict, angles: Dict) -> Tuple:
    # Limbs sweep toward their mirror image about the vertical axis.
    sweep = (params["angle"] / 180.0) * numpy.sin(numpy.pi * u)
    for joint in ("r_hand", "l_hand", "r_foot", "l_foot"):
        angles[joint] = angles[joint] + sweep * (-numpy.pi - 2.0 * angles[joint])

    return (numpy.zeros_like(u), numpy.zeros_like(u), angles)


def _wave(u: numpy.ndarray, params: Dict, angles: Dict) -> Tuple:
    weight = _envelope(u)
    raised = angles["r_hand"] - (numpy.pi - 0.6)
    target = raised + params["amplitude"] * numpy.sin(
        2.0 * numpy.pi * params["repeats"] * u
    )
    angles["r_hand"] = (1.0 - weight) * angles["r_hand"] + weight * target

    return (numpy.zeros_like(u), numpy.zeros_like(u), angles)


def _squat(u: numpy.ndarray, params: Dict, angles: Dict) -> Tuple:
    level = numpy.sin(numpy.pi * params["repeats"] * u) ** 2
    drop = params["depth"] * level

    # Spread the legs so that the feet keep their rest height.
    spread = numpy.arccos(numpy.cos(0.15) - drop / 0.9)
    angles["r_foot"] = -numpy.pi / 2.0 - spread
    angles["l_foot"] = -numpy.pi / 2.0 + spread
    angles["r_hand"] = angles["r_hand"] - 0.8 * level
    angles["l_hand"] = angles["l_hand"] + 0.8 * level

    return (numpy.zeros_like(u), -drop, angles)


def _jump(u: numpy.ndarray, params: Dict, angles: Dict) -> Tuple:
    level = numpy.abs(numpy.sin(numpy.pi * params["repeats"] * u))
    angles["r_hand"] = angles["r_hand"] - 1.2 * level
    angles["l_hand"] = angles["l_hand"] + 1.2 * level

    return (numpy.zeros_like(u), params["height"] * level, angles)


def _raise_arm(u: numpy.ndarray, params: Dict, angles: Dict) -> Tuple:
    lift = params["height"] * (numpy.pi - 0.6) * _envelope(u)
    angles["r_hand"] = angles["r_hand"] - lift
    angles["l_hand"] = angles["l_hand"] + lift

    return (numpy.zeros_like(u), numpy.zeros_like(u), angles)


def _step_side(u: numpy.ndarray, params: Dict, angles: Dict) -> Tuple:
    spread = 0.3 * numpy.abs(numpy.sin(numpy.pi * params["steps"] * u))
    angles["r_foot"] = angles["r_foot"] - spread
    angles["l_foot"] = angles["l_foot"] + spread
    dx = -params["steps"] * params["width"] * u

    return (dx, numpy.zeros_like(u), angles)


def _stand(u: numpy.ndarray, params: Dict, angles: Dict) -> Tuple:
    return (numpy.zeros_like(u), numpy.zeros_like(u), angles)


_GENERATORS: Dict[str, Callable] = {
    "walk": _walk,
    "turn": _turn,
    "wave": _wave,
    "squat": _squat,
    "jump": _jump,
    "raise_arm": _raise_arm,
    "step_side": _step_side,
    "stand": _stand,
}

# ----


def gen_clip(trace: PrimitiveTrace, seed: int) -> MotionClip:
    """
    Description
    -----------

    This function generates the motion clip for a primitive trace; the
    result is a pure function of (trace, seed).

    Parameters
    ----------

    trace: PrimitiveTrace

        A Python PrimitiveTrace object.

    seed: int

        A Python integer specifying the jitter seed.

    Returns
    -------

    clip: MotionClip

        A Python MotionClip object with T = sum of the primitive
        durations and D = FRAME_DIM.

    Raises
    ------

    SynthDataInterfaceError:

        * raised if the trace is invalid (see validate_trace).

    """

    trace = validate_trace(trace=trace)

    (root_x, segments) = (ROOT_REST[0], [])
    for primitive in trace.primitives:
        num = primitive.duration_frames
        # Translating primitives end exactly at their full offset.
        u = (numpy.arange(num, dtype=numpy.float64) + 1.0) / num
        rest = {key: numpy.full(num, value) for key, value in rest_angles().items()}
        (dx, dy, angles) = _GENERATORS[primitive.name](u, primitive.params, rest)
        root = numpy.stack([root_x + dx, ROOT_REST[1] + dy], axis=-1)
        segments.append(forward_kinematics(root=root, angles=angles))
        root_x = float(root[-1, 0])

    frames = numpy.concatenate(segments, axis=0)

    rng = numpy.random.default_rng(seed)
    offset = numpy.clip(
        rng.normal(0.0, JITTER_SIGMA, size=2), -3.0 * JITTER_SIGMA, 3.0 * JITTER_SIGMA
    )
    frames = frames + numpy.tile(offset, len(JOINTS))
    frames = numpy.clip(frames, -COORD_LIMIT, COORD_LIMIT)

    clip = MotionClip(frames=frames.reshape(-1, FRAME_DIM), fps=FPS, trace=trace)

    return clip
