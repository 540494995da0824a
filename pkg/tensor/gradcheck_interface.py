# =========================================================================

# Module: tensor/gradcheck_interface.py

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

    gradcheck_interface.py

Description
-----------

    This module compares reverse-mode gradients with central finite
    differences.

    The relative error of a coordinate is |analytic - numeric| /
    max(floor, |numeric|); floor defaults to 1e-8. A coordinate whose
    absolute difference is at most atol counts as exact.

Functions
---------

    grad_check(function, point, h=1e-5, floor=1e-8, atol=0.0)

        This function checks the gradient of a function of one array.

    grad_check_params(loss_fn, params, h=1e-5, floor=1e-8, atol=0.0, ...)

        This function checks the gradient of a loss with respect to
        named model parameters.

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

from typing import Callable, Dict

import numpy

from tensor.tensor_interface import Tensor, no_grad
from utils.exceptions_interface import TensorInterfaceError

# ----

# Define all available functions.
__all__ = ["grad_check", "grad_check_params"]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----


def _evaluate(function: Callable, label: str) -> float:
    with no_grad():
        value = function()

    value = float(value.item() if isinstance(value, Tensor) else value)
    if not numpy.isfinite(value):
        msg = f"The function is not finite when perturbing coordinate {label}. Aborting!!!"
        raise TensorInterfaceError(msg=msg)

    return value


def _relative_error(analytic: float, numeric: float, floor: float, atol: float) -> float:
    diff = abs(analytic - numeric)
    if diff <= atol:
        return 0.0

    return diff / max(floor, abs(numeric))


# ----


def grad_check(
    function: Callable[[Tensor], Tensor],
    point: numpy.ndarray,
    h: float = 1e-5,
    floor: float = 1e-8,
    atol: float = 0.0,
) -> float:
    """
    Description
    -----------

    This function compares the reverse-mode gradient of a scalar
    function at a point with central finite differences over every
    coordinate.

    Parameters
    ----------

    function: callable

        A Python callable mapping a Tensor to a scalar Tensor.

    point: numpy.ndarray

        A Python numpy.ndarray specifying the evaluation point.

    Keywords
    --------

    h: float, optional

        A Python float specifying the finite-difference step.

    floor: float, optional

        A Python float specifying the denominator floor.

    atol: float, optional

        A Python float specifying the absolute difference below
        which a coordinate is taken as exact.

    Returns
    -------

    error: float

        A Python float specifying the maximum relative error.

    Raises
    ------

    TensorInterfaceError:

        * raised if an evaluation is not finite; the coordinate index
          is named.

    """

    point = numpy.array(point, dtype=numpy.float64)
    variable = Tensor(point.copy(), requires_grad=True)
    function(variable).backward()
    analytic = (
        numpy.zeros_like(point) if variable.grad is None else variable.grad
    )

    error = 0.0
    for index in numpy.ndindex(*point.shape):
        plus = point.copy()
        plus[index] += h
        minus = point.copy()
        minus[index] -= h
        numeric = (
            _evaluate(lambda: function(Tensor(plus)), str(index))
            - _evaluate(lambda: function(Tensor(minus)), str(index))
        ) / (2.0 * h)
        error = max(error, _relative_error(analytic[index], numeric, floor, atol))

    return error


# ----


def grad_check_params(
    loss_fn: Callable[[], Tensor],
    params: Dict[str, Tensor],
    h: float = 1e-5,
    floor: float = 1e-8,
    atol: float = 0.0,
    max_coords: int = None,
    rng: numpy.random.Generator = None,
) -> float:
    """
    Description
    -----------

    This function compares the reverse-mode gradient of a scalar loss
    with central finite differences over the coordinates of named
    parameters; the parameter values are restored afterwards.

    Parameters
    ----------

    loss_fn: callable

        A Python callable without arguments returning the scalar loss
        Tensor computed from params.

    params: dict

        A Python dictionary of named Tensor parameters.

    Keywords
    --------

    h: float, optional

        A Python float specifying the finite-difference step.

    floor: float, optional

        A Python float specifying the denominator floor.

    atol: float, optional

        A Python float specifying the absolute difference below
        which a coordinate is taken as exact.

    max_coords: int, optional

        A Python integer limiting the number of sampled coordinates
        per parameter; every coordinate is checked if NoneType.

    rng: numpy.random.Generator, optional

        The generator used to sample coordinates.

    Returns
    -------

    error: float

        A Python float specifying the maximum relative error.

    Raises
    ------

    TensorInterfaceError:

        * raised if an evaluation is not finite; the parameter and
          coordinate index are named.

    """

    rng = numpy.random.default_rng(0) if rng is None else rng
    for param in params.values():
        param.zero_grad()
    loss_fn().backward()

    error = 0.0
    for name, param in params.items():
        analytic = numpy.zeros_like(param.values) if param.grad is None else param.grad.copy()
        flat = list(numpy.ndindex(*param.shape))
        if max_coords is not None and len(flat) > max_coords:
            picks = rng.choice(len(flat), size=max_coords, replace=False)
            flat = [flat[pick] for pick in sorted(picks)]

        original = param.values.copy()
        for index in flat:
            label = f"{name}{list(index)}"
            param.values = original.copy()
            param.values[index] += h
            upper = _evaluate(loss_fn, label)
            param.values = original.copy()
            param.values[index] -= h
            lower = _evaluate(loss_fn, label)
            numeric = (upper - lower) / (2.0 * h)
            error = max(error, _relative_error(analytic[index], numeric, floor, atol))
        param.values = original

    return error
