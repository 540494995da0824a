# =========================================================================

# Module: ioapps/svg_interface.py

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

    svg_interface.py

Description
-----------

    This module renders a motion clip as a strip of stick-figure
    skeletons within a Scalable Vector Graphics (SVG) document.

    Every stride-th frame is drawn as one <g class="frame"> group
    containing a <line> per bone and a <circle> per joint; group i is
    shifted horizontally by i times FRAME_STEP body units so frames of
    a small-range motion do not overlap. Coordinates are written with
    a fixed number of decimals so identical inputs yield identical
    bytes.

Functions
---------

    render_svg(frames, stride=4)

        This function returns the SVG document of a frame matrix.

    render_svg_file(motion_path, out_path, stride=4)

        This function renders a motion blob file to an SVG file.

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

from typing import List

import numpy

from ioapps import motion_interface
from synthdata.skeleton_interface import BONES, FRAME_DIM, JOINTS
from tools import fileio_interface
from utils.exceptions_interface import MotionInterfaceError, SVGInterfaceError
from utils.logger_interface import Logger

# ----

# Define all available functions.
__all__ = ["FRAME_STEP", "render_svg", "render_svg_file"]

# ----

logger = Logger()

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

# Horizontal offset between consecutive drawn frames (body units).
FRAME_STEP = 1.0

# Pixels per body unit.
SCALE = 100.0

MARGIN = 0.25

_INDEX = {name: idx for (idx, name) in enumerate(JOINTS)}

# ----


def render_svg(frames: numpy.ndarray, stride: int = 4) -> str:
    """
    Description
    -----------

    This function returns the SVG document of a frame matrix.

    Parameters
    ----------

    frames: numpy.ndarray

        A Python numpy.ndarray of shape (T, FRAME_DIM).

    Keywords
    --------

    stride: int, optional

        A Python integer specifying the frame stride; frames 0,
        stride, 2*stride, ... are drawn.

    Returns
    -------

    svg: str

        A Python string containing the SVG document.

    Raises
    ------

    SVGInterfaceError:

        * raised if the frame matrix does not hold the skeleton
          layout or the stride is not positive.

    """

    frames = numpy.asarray(frames, dtype=numpy.float64)
    if frames.ndim != 2 or frames.shape[1] != FRAME_DIM or frames.shape[0] == 0:
        msg = (
            f"The frame matrix of shape {frames.shape} is not a (T, {FRAME_DIM}) "
            "skeleton clip. Aborting!!!"
        )
        raise SVGInterfaceError(msg=msg)

    if stride < 1:
        msg = f"The frame stride must be positive; received {stride}. Aborting!!!"
        raise SVGInterfaceError(msg=msg)

    drawn = frames[::stride].reshape(-1, len(JOINTS), 2).copy()
    drawn[:, :, 0] += FRAME_STEP * numpy.arange(drawn.shape[0])[:, None]

    (xmin, ymin) = drawn.reshape(-1, 2).min(axis=0) - MARGIN
    (xmax, ymax) = drawn.reshape(-1, 2).max(axis=0) + MARGIN
    (width, height) = (SCALE * (xmax - xmin), SCALE * (ymax - ymin))

    def point(joint: numpy.ndarray):
        # SVG y grows downwards.
        return (SCALE * (joint[0] - xmin), SCALE * (ymax - joint[1]))

    lines: List[str] = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.2f}" '
            f'height="{height:.2f}" viewBox="0 0 {width:.2f} {height:.2f}">'
        ),
    ]
    for idx, pose in enumerate(drawn):
        lines.append(f'<g class="frame" data-frame="{idx * stride}">')
        for parent, child in BONES:
            (x1, y1) = point(pose[_INDEX[parent]])
            (x2, y2) = point(pose[_INDEX[child]])
            lines.append(
                f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                'stroke="black" stroke-width="2"/>'
            )
        for name in JOINTS:
            (cx, cy) = point(pose[_INDEX[name]])
            lines.append(
                f'<circle class="{name}" cx="{cx:.2f}" cy="{cy:.2f}" r="3" fill="red"/>'
            )
        lines.append("</g>")
    lines.append("</svg>")

    return "\n".join(lines) + "\n"


# ----


def render_svg_file(motion_path: str, out_path: str, stride: int = 4) -> str:
    """
    Description
    -----------

    This function renders a motion blob file to an SVG file.

    Parameters
    ----------

    motion_path: str

        A Python string specifying the motion blob path.

    out_path: str

        A Python string specifying the SVG file path.

    Keywords
    --------

    stride: int, optional

        A Python integer specifying the frame stride.

    Returns
    -------

    svg: str

        A Python string containing the SVG document.

    Raises
    ------

    SVGInterfaceError:

        * raised if the motion blob cannot be read.

    """

    try:
        (frames, _) = motion_interface.read_motion(path=motion_path)

    except MotionInterfaceError as errmsg:
        msg = f"The motion blob {motion_path} could not be rendered. Aborting!!!"
        raise SVGInterfaceError(msg=msg) from errmsg

    svg = render_svg(frames=frames, stride=stride)
    fileio_interface.write_bytes(path=out_path, payload=svg.encode("utf-8"))
    logger.info(msg=f"Rendered {motion_path} to {out_path}.")

    return svg
