# =========================================================================

# Module: synthdata/skeleton_interface.py

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

    skeleton_interface.py

Description
-----------

    This module defines the planar 8-joint skeleton template and the
    forward kinematics mapping a root position and global bone angles
    to joint coordinates.

    Frames are flattened as [x_0, y_0, x_1, y_1, ...] over the joints
    in JOINTS order; units are body-lengths and angles are radians
    measured counter-clockwise from the +x axis.

Functions
---------

    bone_lengths(frames)

        This function returns the per-frame length of every bone.

    forward_kinematics(root, angles)

        This function computes the flattened joint coordinates for
        one or more frames.

    rest_angles()

        This function returns a copy of the rest pose bone angles.

    template_pose()

        This function returns the flattened rest pose.

Author(s)
---------

    unimo_pyutils developers; 02 March 2026

History
-------

    2026-03-02: Initial implementation.

"""

# ----

from typing import Dict

import numpy

# ----

# Define all available attributes.
__all__ = [
    "BONES",
    "BONE_LENGTHS",
    "FRAME_DIM",
    "JOINTS",
    "ROOT_REST",
    "bone_lengths",
    "forward_kinematics",
    "rest_angles",
    "template_pose",
]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

JOINTS = ("root", "spine", "neck", "head", "r_hand", "l_hand", "r_foot", "l_foot")

# (parent, child) pairs; every child has exactly one parent and the
# list is ordered so that parents are resolved first.
BONES = (
    ("root", "spine"),
    ("spine", "neck"),
    ("neck", "head"),
    ("neck", "r_hand"),
    ("neck", "l_hand"),
    ("root", "r_foot"),
    ("root", "l_foot"),
)

# Keyed by the child joint.
BONE_LENGTHS = {
    "spine": 0.3,
    "neck": 0.3,
    "head": 0.25,
    "r_hand": 0.6,
    "l_hand": 0.6,
    "r_foot": 0.9,
    "l_foot": 0.9,
}

FRAME_DIM = 2 * len(JOINTS)

ROOT_REST = (0.0, 0.9)

_REST_ANGLES = {
    "spine": numpy.pi / 2.0,
    "neck": numpy.pi / 2.0,
    "head": numpy.pi / 2.0,
    "r_hand": -numpy.pi / 2.0 - 0.35,
    "l_hand": -numpy.pi / 2.0 + 0.35,
    "r_foot": -numpy.pi / 2.0 - 0.15,
    "l_foot": -numpy.pi / 2.0 + 0.15,
}

# ----


def bone_lengths(frames: numpy.ndarray) -> numpy.ndarray:
    """
    Description
    -----------

    This function returns the per-frame length of every bone.

    Parameters
    ----------

    frames: numpy.ndarray

        A Python numpy.ndarray of shape (T, FRAME_DIM).

    Returns
    -------

    lengths: numpy.ndarray

        A Python numpy.ndarray of shape (T, len(BONES)) ordered as
        BONES.

    """

    joints = numpy.asarray(frames, dtype=numpy.float64).reshape(-1, len(JOINTS), 2)
    index = {name: idx for idx, name in enumerate(JOINTS)}
    lengths = numpy.stack(
        [
            numpy.linalg.norm(joints[:, index[child]] - joints[:, index[parent]], axis=-1)
            for parent, child in BONES
        ],
        axis=-1,
    )

    return lengths


# ----


def forward_kinematics(root: numpy.ndarray, angles: Dict) -> numpy.ndarray:
    """
    Description
    -----------

    This function computes the flattened joint coordinates for one or
    more frames; each child joint is placed at its parent plus the
    bone length along the bone's global angle, so bone lengths are
    exact by construction.

    Parameters
    ----------

    root: numpy.ndarray

        A Python numpy.ndarray of shape (T, 2) containing the root
        joint coordinates.

    angles: dict

        A Python dictionary keyed by the child joint names containing
        numpy.ndarray values of shape (T,) with the global bone
        angles.

    Returns
    -------

    frames: numpy.ndarray

        A Python numpy.ndarray of shape (T, FRAME_DIM).

    """

    root = numpy.asarray(root, dtype=numpy.float64).reshape(-1, 2)
    positions = {"root": root}
    for parent, child in BONES:
        theta = numpy.asarray(angles[child], dtype=numpy.float64).reshape(-1)
        offset = BONE_LENGTHS[child] * numpy.stack(
            [numpy.cos(theta), numpy.sin(theta)], axis=-1
        )
        positions[child] = positions[parent] + offset

    frames = numpy.concatenate([positions[name] for name in JOINTS], axis=-1)

    return frames


# ----


def rest_angles() -> Dict:
    """
    Description
    -----------

    This function returns a copy of the rest pose bone angles keyed by
    the child joint names.

    """

    return dict(_REST_ANGLES)


# ----


def template_pose() -> numpy.ndarray:
    """
    Description
    -----------

    This function returns the flattened rest pose as a numpy.ndarray
    of shape (FRAME_DIM,).

    """

    angles = {key: numpy.array([value]) for key, value in _REST_ANGLES.items()}
    pose = forward_kinematics(root=numpy.array([ROOT_REST]), angles=angles)[0]

    return pose
