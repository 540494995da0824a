# =========================================================================

# Module: tensor/optim_interface.py

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

    optim_interface.py

Description
-----------

    This module contains the Adam optimizer, the cosine learning-rate
    schedule and global-norm gradient clipping.

Classes
-------

    OptimizerState(beta1=0.9, beta2=0.999, eps=1e-8)

        This is the base-class object for the Adam moment
        accumulators.

Functions
---------

    adam_step(params, grads, state, lr)

        This function applies one Adam update in place.

    clip_global_norm(grads, max_norm)

        This function rescales gradients to a maximum global L2 norm.

    cosine_lr(step, total, lr_max, lr_min)

        This function returns the cosine-decayed learning rate.

    global_norm(grads)

        This function returns the global L2 norm of gradients.

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

import math
from dataclasses import dataclass, field
from typing import Dict

import numpy

from tensor.tensor_interface import Tensor
from utils.exceptions_interface import TensorInterfaceError

# ----

# Define all available attributes.
__all__ = [
    "OptimizerState",
    "adam_step",
    "clip_global_norm",
    "collect_grads",
    "cosine_lr",
    "global_norm",
]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----


@dataclass
class OptimizerState:
    """
    Description
    -----------

    This is the base-class object for the Adam moment accumulators;
    accumulators are created lazily with the parameter shapes and the
    step counter increases by one per update.

    """

    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    step: int = 0
    first: Dict[str, numpy.ndarray] = field(default_factory=dict)
    second: Dict[str, numpy.ndarray] = field(default_factory=dict)


# ----


def collect_grads(params: Dict[str, Tensor]) -> Dict[str, numpy.ndarray]:
    """
    Description
    -----------

    This function gathers the gradients of trainable parameters;
    parameters that received no gradient contribute zeros.

    """

    grads = {}
    for name, param in params.items():
        if not param.requires_grad:
            continue
        grads[name] = numpy.zeros_like(param.values) if param.grad is None else param.grad

    return grads


# ----


def adam_step(
    params: Dict[str, Tensor],
    grads: Dict[str, numpy.ndarray],
    state: OptimizerState,
    lr: float,
) -> None:
    """
    Description
    -----------

    This function applies one bias-corrected Adam update to every
    parameter named in grads.

    Parameters
    ----------

    params: dict

        A Python dictionary of named Tensor parameters.

    grads: dict

        A Python dictionary of numpy.ndarray gradients keyed as params.

    state: OptimizerState

        A Python OptimizerState object; updated in place.

    lr: float

        A Python float specifying the learning rate.

    Raises
    ------

    TensorInterfaceError:

        * raised if a gradient shape differs from its parameter shape.

    """

    state.step += 1
    correction1 = 1.0 - state.beta1**state.step
    correction2 = 1.0 - state.beta2**state.step

    for name, grad in grads.items():
        param = params[name]
        if grad.shape != param.shape:
            msg = (
                f"The gradient of {name} has shape {grad.shape} but the parameter has "
                f"shape {param.shape}. Aborting!!!"
            )
            raise TensorInterfaceError(msg=msg)

        first = state.first.get(name, numpy.zeros_like(param.values))
        second = state.second.get(name, numpy.zeros_like(param.values))
        first = state.beta1 * first + (1.0 - state.beta1) * grad
        second = state.beta2 * second + (1.0 - state.beta2) * grad**2
        (state.first[name], state.second[name]) = (first, second)

        param.values = param.values - lr * (first / correction1) / (
            numpy.sqrt(second / correction2) + state.eps
        )


# ----


def cosine_lr(step: int, total: int, lr_max: float, lr_min: float) -> float:
    """
    Description
    -----------

    This function returns lr_min + (lr_max - lr_min) * (1 + cos(pi *
    step / total)) / 2.

    Raises
    ------

    TensorInterfaceError:

        * raised if total < 1 or step is outside [0, total].

    """

    if total < 1 or step < 0 or step > total:
        msg = f"The schedule step {step} is outside [0, {total}]. Aborting!!!"
        raise TensorInterfaceError(msg=msg)

    if step == total:
        return float(lr_min)

    return float(lr_min + 0.5 * (lr_max - lr_min) * (1.0 + math.cos(math.pi * step / total)))


# ----


def global_norm(grads: Dict[str, numpy.ndarray]) -> float:
    return float(math.sqrt(sum(float(numpy.sum(grad**2)) for grad in grads.values())))


def clip_global_norm(grads: Dict[str, numpy.ndarray], max_norm: float) -> Dict[str, numpy.ndarray]:
    """
    Description
    -----------

    This function rescales all gradients by a common factor so that
    their global L2 norm is at most max_norm; gradients already within
    the bound are returned unchanged.

    Raises
    ------

    TensorInterfaceError:

        * raised if max_norm is not positive.

    """

    if max_norm <= 0.0:
        msg = f"The maximum gradient norm must be positive; received {max_norm}. Aborting!!!"
        raise TensorInterfaceError(msg=msg)

    norm = global_norm(grads=grads)
    if norm <= max_norm:
        return grads

    scale = max_norm / norm

    return {name: grad * scale for (name, grad) in grads.items()}
