# =========================================================================

# Module: tensor/tensor_interface.py

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

    tensor_interface.py

Description
-----------

    This module contains the dense 64-bit tensor type and its
    reverse-mode automatic differentiation.

    Every kernel computes its forward values with numpy and, when any
    input requires a gradient (and gradients are enabled), records a
    backward rule mapping the output gradient to one gradient per
    input. Calling backward() on a scalar loss walks the recorded
    graph in reverse topological order and accumulates gradients into
    the leaf tensors only; repeated calls accumulate.

    Setting the environment variable UNIMO_TENSOR_DEBUG to a non-empty
    value checks every kernel output for NaN/Inf.

Classes
-------

    Tensor(values, requires_grad=False)

        This is the base-class object for a dense tensor.

    no_grad()

        This is a context manager that disables graph recording.

Functions
---------

    add, sub, mul, div, neg, power, exp, log, sqrt, matmul, tsum,
    mean, transpose, reshape, concat, getitem, embedding, softmax,
    log_softmax, layer_norm, gelu, relu, cross_entropy, conv1d,
    repeat_time, minimum, clip, take_along, detach

        The kernels; see the respective docstrings.

    backward(loss)

        This function populates the gradients of every leaf tensor
        reachable from a scalar loss.

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

# pylint: disable=protected-access
# pylint: disable=too-many-arguments

# ----

import os
from typing import Callable, List, Sequence, Tuple, Union

import numpy

from utils.exceptions_interface import TensorInterfaceError

# ----

# Define all available attributes.
__all__ = [
    "Tensor",
    "add",
    "backward",
    "clip",
    "concat",
    "conv1d",
    "cross_entropy",
    "detach",
    "div",
    "embedding",
    "exp",
    "gelu",
    "getitem",
    "grad_enabled",
    "layer_norm",
    "log",
    "log_softmax",
    "matmul",
    "mean",
    "minimum",
    "mul",
    "neg",
    "no_grad",
    "power",
    "relu",
    "repeat_time",
    "reshape",
    "softmax",
    "sqrt",
    "sub",
    "take_along",
    "transpose",
    "tsum",
]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

_STATE = {"grad_enabled": True}

_DEBUG = bool(os.environ.get("UNIMO_TENSOR_DEBUG", ""))

_GELU_C = numpy.sqrt(2.0 / numpy.pi)

ArrayLike = Union["Tensor", numpy.ndarray, float, int]

# ----


class no_grad:  # pylint: disable=invalid-name
    """
    Description
    -----------

    This is a context manager that disables graph recording; kernels
    evaluated inside it return tensors that do not require gradients.

    """

    def __enter__(self):
        self._previous = _STATE["grad_enabled"]
        _STATE["grad_enabled"] = False
        return self

    def __exit__(self, *args):
        _STATE["grad_enabled"] = self._previous


def grad_enabled() -> bool:
    """Return whether kernels currently record the graph."""

    return _STATE["grad_enabled"]


# ----


class Tensor:
    """
    Description
    -----------

    This is the base-class object for a dense tensor; values are held
    as a 64-bit numpy.ndarray and grad, when populated, has the same
    shape.

    Parameters
    ----------

    values: array-like

        The tensor values.

    Keywords
    --------

    requires_grad: bool, optional

        A Python boolean specifying whether gradients are accumulated
        into this tensor.

    """

    def __init__(self, values, requires_grad: bool = False):
        self.values = numpy.asarray(values, dtype=numpy.float64)
        self.requires_grad = bool(requires_grad)
        self.grad = None
        self._parents: Tuple["Tensor", ...] = ()
        self._backward: Callable = None
        self._kernel = "leaf"

    def __repr__(self) -> str:
        return (
            f"Tensor(shape={self.shape}, kernel={self._kernel}, "
            f"requires_grad={self.requires_grad})"
        )

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.values.shape

    @property
    def ndim(self) -> int:
        return self.values.ndim

    @property
    def size(self) -> int:
        return int(self.values.size)

    def item(self) -> float:
        return float(self.values.reshape(-1)[0])

    def numpy(self) -> numpy.ndarray:
        return self.values

    def zero_grad(self) -> None:
        self.grad = None

    def backward(self) -> None:
        backward(loss=self)

    # Operator sugar.
    def __add__(self, other):
        return add(self, other)

    def __radd__(self, other):
        return add(other, self)

    def __sub__(self, other):
        return sub(self, other)

    def __rsub__(self, other):
        return sub(other, self)

    def __mul__(self, other):
        return mul(self, other)

    def __rmul__(self, other):
        return mul(other, self)

    def __truediv__(self, other):
        return div(self, other)

    def __rtruediv__(self, other):
        return div(other, self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, exponent: float):
        return power(self, exponent)

    def __matmul__(self, other):
        return matmul(self, other)

    def __getitem__(self, index):
        return getitem(self, index)

    def sum(self, axis=None, keepdims: bool = False):
        return tsum(self, axis=axis, keepdims=keepdims)

    def mean(self, axis=None, keepdims: bool = False):
        return mean(self, axis=axis, keepdims=keepdims)

    def reshape(self, *shape):
        if len(shape) == 1 and isinstance(shape[0], (tuple, list)):
            shape = tuple(shape[0])
        return reshape(self, shape)

    def transpose(self, axes: Sequence[int] = None):
        return transpose(self, axes)

    def exp(self):
        return exp(self)

    def log(self):
        return log(self)

    def detach(self):
        return detach(self)


# ----


def _as_tensor(value: ArrayLike) -> Tensor:
    return value if isinstance(value, Tensor) else Tensor(value)


def _make(values: numpy.ndarray, parents: Sequence[Tensor], rule: Callable, kernel: str) -> Tensor:
    # Records the node only when a parent needs a gradient.
    out = Tensor(values)
    out._kernel = kernel
    if _DEBUG and not numpy.all(numpy.isfinite(out.values)):
        msg = f"Kernel {kernel} produced non-finite values. Aborting!!!"
        raise TensorInterfaceError(msg=msg)

    if _STATE["grad_enabled"] and any(parent.requires_grad for parent in parents):
        out.requires_grad = True
        out._parents = tuple(parents)
        out._backward = rule

    return out


def _unbroadcast(grad: numpy.ndarray, shape: Tuple[int, ...]) -> numpy.ndarray:
    # Sums the broadcast dimensions back down to the input shape.
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)

    return grad


def _broadcast_check(kernel: str, a: Tensor, b: Tensor) -> None:
    try:
        numpy.broadcast_shapes(a.shape, b.shape)

    except ValueError as errmsg:
        msg = (
            f"Kernel {kernel} received incompatible shapes {a.shape} and "
            f"{b.shape}. Aborting!!!"
        )
        raise TensorInterfaceError(msg=msg) from errmsg


# ----


def backward(loss: Tensor) -> None:
    """
    Description
    -----------

    This function populates the gradients of every leaf tensor
    reachable from a scalar loss; intermediate gradients are not
    retained and leaf gradients accumulate across calls.

    Parameters
    ----------

    loss: Tensor

        A Python Tensor object holding a single value.

    Raises
    ------

    TensorInterfaceError:

        * raised if the loss holds more than one value.

    """

    if loss.size != 1:
        msg = f"Backward requires a scalar loss; received shape {loss.shape}. Aborting!!!"
        raise TensorInterfaceError(msg=msg)

    if not loss.requires_grad:
        return

    # Iterative depth-first topological sort.
    (order, visited, stack) = ([], set(), [(loss, False)])
    while stack:
        (node, expanded) = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in visited:
            continue
        visited.add(id(node))
        stack.append((node, True))
        for parent in node._parents:
            if parent.requires_grad and id(parent) not in visited:
                stack.append((parent, False))

    grads = {id(loss): numpy.ones_like(loss.values)}
    for node in reversed(order):
        grad = grads.pop(id(node), None)
        if grad is None:
            continue

        if not node._parents:
            node.grad = grad.copy() if node.grad is None else node.grad + grad
            continue

        for parent, parent_grad in zip(node._parents, node._backward(grad)):
            if parent_grad is None or not parent.requires_grad:
                continue
            if id(parent) in grads:
                grads[id(parent)] = grads[id(parent)] + parent_grad
            else:
                grads[id(parent)] = parent_grad


# ----


def add(a: ArrayLike, b: ArrayLike) -> Tensor:
    """Elementwise a + b with broadcasting."""

    (a, b) = (_as_tensor(a), _as_tensor(b))
    _broadcast_check("add", a, b)

    def rule(grad):
        return (_unbroadcast(grad, a.shape), _unbroadcast(grad, b.shape))

    return _make(a.values + b.values, (a, b), rule, "add")


def sub(a: ArrayLike, b: ArrayLike) -> Tensor:
    """Elementwise a - b with broadcasting."""

    (a, b) = (_as_tensor(a), _as_tensor(b))
    _broadcast_check("sub", a, b)

    def rule(grad):
        return (_unbroadcast(grad, a.shape), _unbroadcast(-grad, b.shape))

    return _make(a.values - b.values, (a, b), rule, "sub")


def mul(a: ArrayLike, b: ArrayLike) -> Tensor:
    """Elementwise a * b with broadcasting."""

    (a, b) = (_as_tensor(a), _as_tensor(b))
    _broadcast_check("mul", a, b)

    def rule(grad):
        return (
            _unbroadcast(grad * b.values, a.shape),
            _unbroadcast(grad * a.values, b.shape),
        )

    return _make(a.values * b.values, (a, b), rule, "mul")


def div(a: ArrayLike, b: ArrayLike) -> Tensor:
    """Elementwise a / b with broadcasting."""

    (a, b) = (_as_tensor(a), _as_tensor(b))
    _broadcast_check("div", a, b)

    def rule(grad):
        return (
            _unbroadcast(grad / b.values, a.shape),
            _unbroadcast(-grad * a.values / (b.values**2), b.shape),
        )

    return _make(a.values / b.values, (a, b), rule, "div")


def neg(a: ArrayLike) -> Tensor:
    a = _as_tensor(a)

    return _make(-a.values, (a,), lambda grad: (-grad,), "neg")


def power(a: ArrayLike, exponent: float) -> Tensor:
    """Elementwise a ** exponent for a constant exponent."""

    a = _as_tensor(a)

    def rule(grad):
        return (grad * exponent * a.values ** (exponent - 1.0),)

    return _make(a.values**exponent, (a,), rule, "power")


def exp(a: ArrayLike) -> Tensor:
    a = _as_tensor(a)
    values = numpy.exp(a.values)

    return _make(values, (a,), lambda grad: (grad * values,), "exp")


def log(a: ArrayLike) -> Tensor:
    a = _as_tensor(a)

    return _make(numpy.log(a.values), (a,), lambda grad: (grad / a.values,), "log")


def sqrt(a: ArrayLike) -> Tensor:
    a = _as_tensor(a)
    values = numpy.sqrt(a.values)

    return _make(values, (a,), lambda grad: (grad * 0.5 / values,), "sqrt")


# ----


def matmul(a: ArrayLike, b: ArrayLike) -> Tensor:
    """
    Description
    -----------

    This function computes the (batched) matrix product a @ b; both
    operands must have at least two dimensions and leading dimensions
    broadcast.

    Raises
    ------

    TensorInterfaceError:

        * raised if the inner dimensions differ; both shapes are
          named.

    """

    (a, b) = (_as_tensor(a), _as_tensor(b))
    if a.ndim < 2 or b.ndim < 2 or a.shape[-1] != b.shape[-2]:
        msg = (
            f"Kernel matmul received incompatible shapes {a.shape} and "
            f"{b.shape}. Aborting!!!"
        )
        raise TensorInterfaceError(msg=msg)

    def rule(grad):
        grad_a = grad @ numpy.swapaxes(b.values, -1, -2)
        grad_b = numpy.swapaxes(a.values, -1, -2) @ grad
        return (_unbroadcast(grad_a, a.shape), _unbroadcast(grad_b, b.shape))

    return _make(a.values @ b.values, (a, b), rule, "matmul")


def tsum(a: ArrayLike, axis=None, keepdims: bool = False) -> Tensor:
    """Sum over the axis (all axes if NoneType)."""

    a = _as_tensor(a)

    def rule(grad):
        if axis is not None and not keepdims:
            grad = numpy.expand_dims(grad, axis)
        return (numpy.broadcast_to(grad, a.shape).copy(),)

    return _make(a.values.sum(axis=axis, keepdims=keepdims), (a,), rule, "sum")


def mean(a: ArrayLike, axis=None, keepdims: bool = False) -> Tensor:
    """Mean over the axis (all axes if NoneType)."""

    a = _as_tensor(a)
    count = a.size if axis is None else numpy.prod(
        [a.shape[ax] for ax in numpy.atleast_1d(axis)]
    )

    return div(tsum(a, axis=axis, keepdims=keepdims), float(count))


def transpose(a: ArrayLike, axes: Sequence[int] = None) -> Tensor:
    a = _as_tensor(a)
    axes = tuple(reversed(range(a.ndim))) if axes is None else tuple(axes)
    inverse = tuple(numpy.argsort(axes))

    return _make(
        numpy.transpose(a.values, axes), (a,),
        lambda grad: (numpy.transpose(grad, inverse),), "transpose",
    )


def reshape(a: ArrayLike, shape: Sequence[int]) -> Tensor:
    a = _as_tensor(a)
    try:
        values = a.values.reshape(shape)

    except ValueError as errmsg:
        msg = f"Kernel reshape cannot map shape {a.shape} to {tuple(shape)}. Aborting!!!"
        raise TensorInterfaceError(msg=msg) from errmsg

    return _make(values, (a,), lambda grad: (grad.reshape(a.shape),), "reshape")


def concat(tensors: List[ArrayLike], axis: int = 0) -> Tensor:
    """
    Description
    -----------

    This function concatenates tensors along an axis.

    Raises
    ------

    TensorInterfaceError:

        * raised if the shapes disagree off the concatenation axis.

    """

    tensors = [_as_tensor(item) for item in tensors]
    try:
        values = numpy.concatenate([item.values for item in tensors], axis=axis)

    except ValueError as errmsg:
        msg = (
            "Kernel concat received incompatible shapes "
            f"{[item.shape for item in tensors]}. Aborting!!!"
        )
        raise TensorInterfaceError(msg=msg) from errmsg

    bounds = numpy.cumsum([item.shape[axis] for item in tensors])[:-1]

    def rule(grad):
        return tuple(numpy.split(grad, bounds, axis=axis))

    return _make(values, tensors, rule, "concat")


def getitem(a: ArrayLike, index) -> Tensor:
    """Basic or advanced indexing; repeated indices accumulate."""

    a = _as_tensor(a)

    def rule(grad):
        out = numpy.zeros_like(a.values)
        numpy.add.at(out, index, grad)
        return (out,)

    return _make(a.values[index], (a,), rule, "getitem")


def take_along(a: ArrayLike, indices: numpy.ndarray, axis: int = -1) -> Tensor:
    """
    Description
    -----------

    This function gathers values along an axis (see
    numpy.take_along_axis); indices must have the same number of
    dimensions as a.

    """

    a = _as_tensor(a)
    indices = numpy.asarray(indices, dtype=numpy.int64)
    axis = axis % a.ndim

    def rule(grad):
        out = numpy.zeros_like(a.values)
        grid = list(numpy.indices(indices.shape, sparse=True))
        grid[axis] = indices
        numpy.add.at(out, tuple(grid), grad)
        return (out,)

    return _make(numpy.take_along_axis(a.values, indices, axis=axis), (a,), rule, "take_along")


def embedding(table: ArrayLike, ids: numpy.ndarray) -> Tensor:
    """
    Description
    -----------

    This function looks up rows of an embedding table.

    Raises
    ------

    TensorInterfaceError:

        * raised if an id is outside the table.

    """

    table = _as_tensor(table)
    ids = numpy.asarray(ids, dtype=numpy.int64)
    if ids.size and (ids.min() < 0 or ids.max() >= table.shape[0]):
        msg = (
            f"Kernel embedding received ids in [{ids.min()}, {ids.max()}] for a "
            f"table of shape {table.shape}. Aborting!!!"
        )
        raise TensorInterfaceError(msg=msg)

    def rule(grad):
        out = numpy.zeros_like(table.values)
        numpy.add.at(out, ids, grad)
        return (out,)

    return _make(table.values[ids], (table,), rule, "embedding")


# ----


def softmax(a: ArrayLike, axis: int = -1) -> Tensor:
    """Max-subtracted softmax along an axis."""

    a = _as_tensor(a)
    shifted = numpy.exp(a.values - a.values.max(axis=axis, keepdims=True))
    values = shifted / shifted.sum(axis=axis, keepdims=True)

    def rule(grad):
        return (values * (grad - (grad * values).sum(axis=axis, keepdims=True)),)

    return _make(values, (a,), rule, "softmax")


def log_softmax(a: ArrayLike, axis: int = -1) -> Tensor:
    """Max-subtracted log-softmax along an axis."""

    a = _as_tensor(a)
    shifted = a.values - a.values.max(axis=axis, keepdims=True)
    values = shifted - numpy.log(numpy.exp(shifted).sum(axis=axis, keepdims=True))

    def rule(grad):
        return (grad - numpy.exp(values) * grad.sum(axis=axis, keepdims=True),)

    return _make(values, (a,), rule, "log_softmax")


def layer_norm(x: ArrayLike, gamma: ArrayLike, beta: ArrayLike, eps: float = 1e-5) -> Tensor:
    """
    Description
    -----------

    This function normalizes over the last axis (population variance)
    and applies the elementwise affine gamma, beta.

    """

    (x, gamma, beta) = (_as_tensor(x), _as_tensor(gamma), _as_tensor(beta))
    if gamma.shape != (x.shape[-1],) or beta.shape != (x.shape[-1],):
        msg = (
            f"Kernel layer_norm received shapes {x.shape} and {gamma.shape}/"
            f"{beta.shape}. Aborting!!!"
        )
        raise TensorInterfaceError(msg=msg)

    centered = x.values - x.values.mean(axis=-1, keepdims=True)
    inv_std = 1.0 / numpy.sqrt((centered**2).mean(axis=-1, keepdims=True) + eps)
    xhat = centered * inv_std

    def rule(grad):
        lead = tuple(range(grad.ndim - 1))
        grad_xhat = grad * gamma.values
        grad_x = inv_std * (
            grad_xhat
            - grad_xhat.mean(axis=-1, keepdims=True)
            - xhat * (grad_xhat * xhat).mean(axis=-1, keepdims=True)
        )
        return (grad_x, (grad * xhat).sum(axis=lead), grad.sum(axis=lead))

    return _make(xhat * gamma.values + beta.values, (x, gamma, beta), rule, "layer_norm")


def gelu(a: ArrayLike) -> Tensor:
    """GELU, tanh approximation."""

    a = _as_tensor(a)
    x = a.values
    inner = _GELU_C * (x + 0.044715 * x**3)
    tanh = numpy.tanh(inner)

    def rule(grad):
        dinner = _GELU_C * (1.0 + 3.0 * 0.044715 * x**2)
        return (grad * (0.5 * (1.0 + tanh) + 0.5 * x * (1.0 - tanh**2) * dinner),)

    return _make(0.5 * x * (1.0 + tanh), (a,), rule, "gelu")


def relu(a: ArrayLike) -> Tensor:
    a = _as_tensor(a)
    mask = a.values > 0.0

    return _make(a.values * mask, (a,), lambda grad: (grad * mask,), "relu")


def minimum(a: ArrayLike, b: ArrayLike) -> Tensor:
    """Elementwise minimum; ties route the gradient to a."""

    (a, b) = (_as_tensor(a), _as_tensor(b))
    _broadcast_check("minimum", a, b)
    pick_a = a.values <= b.values

    def rule(grad):
        return (
            _unbroadcast(grad * pick_a, a.shape),
            _unbroadcast(grad * ~pick_a, b.shape),
        )

    return _make(numpy.where(pick_a, a.values, b.values), (a, b), rule, "minimum")


def clip(a: ArrayLike, low: float, high: float) -> Tensor:
    """Elementwise clip; the gradient passes only within [low, high]."""

    a = _as_tensor(a)
    inside = (a.values >= low) & (a.values <= high)

    return _make(numpy.clip(a.values, low, high), (a,), lambda grad: (grad * inside,), "clip")


def detach(a: ArrayLike) -> Tensor:
    """Stop-gradient: same values, no graph edge."""

    a = _as_tensor(a)
    out = Tensor(a.values.copy())
    out._kernel = "detach"

    return out


# ----


def cross_entropy(logits: ArrayLike, targets: numpy.ndarray, mask: numpy.ndarray = None) -> Tensor:
    """
    Description
    -----------

    This function computes the mean negative log-likelihood of the
    target ids over the positions where the mask is true.

    Parameters
    ----------

    logits: Tensor

        A Python Tensor object of shape (..., V).

    targets: numpy.ndarray

        A Python numpy.ndarray of integer ids of shape (...).

    Keywords
    --------

    mask: numpy.ndarray, optional

        A Python numpy.ndarray of booleans of shape (...); every
        position counts if NoneType.

    Returns
    -------

    loss: Tensor

        A Python Tensor object holding the scalar loss.

    Raises
    ------

    TensorInterfaceError:

        * raised if the shapes disagree or every position is masked.

    """

    logits = _as_tensor(logits)
    targets = numpy.asarray(targets, dtype=numpy.int64)
    mask = (
        numpy.ones(targets.shape, dtype=numpy.float64)
        if mask is None
        else numpy.asarray(mask, dtype=numpy.float64)
    )
    if logits.shape[:-1] != targets.shape or mask.shape != targets.shape:
        msg = (
            f"Kernel cross_entropy received shapes {logits.shape} and "
            f"{targets.shape}/{mask.shape}. Aborting!!!"
        )
        raise TensorInterfaceError(msg=msg)

    count = mask.sum()
    if count <= 0.0:
        msg = "Kernel cross_entropy received an all-masked batch. Aborting!!!"
        raise TensorInterfaceError(msg=msg)

    shifted = logits.values - logits.values.max(axis=-1, keepdims=True)
    logp = shifted - numpy.log(numpy.exp(shifted).sum(axis=-1, keepdims=True))
    picked = numpy.take_along_axis(logp, targets[..., None], axis=-1)[..., 0]
    value = -(picked * mask).sum() / count

    def rule(grad):
        probs = numpy.exp(logp)
        grid = list(numpy.indices(targets.shape, sparse=True)) + [targets]
        probs[tuple(grid)] -= 1.0
        return (probs * (mask / count)[..., None] * grad,)

    return _make(numpy.asarray(value), (logits,), rule, "cross_entropy")


# ----


def conv1d(
    x: ArrayLike, weight: ArrayLike, bias: ArrayLike, stride: int = 1, padding: int = 0
) -> Tensor:
    """
    Description
    -----------

    This function computes a 1-D convolution over the time axis of a
    channel-last input using an im2col product.

    Parameters
    ----------

    x: Tensor

        A Python Tensor object of shape (B, T, C_in).

    weight: Tensor

        A Python Tensor object of shape (K, C_in, C_out).

    bias: Tensor

        A Python Tensor object of shape (C_out,).

    Keywords
    --------

    stride: int, optional

        A Python integer specifying the stride.

    padding: int, optional

        A Python integer specifying the zero padding on both ends.

    Returns
    -------

    out: Tensor

        A Python Tensor object of shape (B, T_out, C_out) with
        T_out = (T + 2 padding - K) // stride + 1.

    Raises
    ------

    TensorInterfaceError:

        * raised if the channel counts disagree or the input is
          shorter than the kernel.

    """

    (x, weight, bias) = (_as_tensor(x), _as_tensor(weight), _as_tensor(bias))
    (ksize, c_in, c_out) = weight.shape
    if x.ndim != 3 or x.shape[-1] != c_in or bias.shape != (c_out,):
        msg = (
            f"Kernel conv1d received shapes {x.shape} and {weight.shape}/"
            f"{bias.shape}. Aborting!!!"
        )
        raise TensorInterfaceError(msg=msg)

    (batch, steps, _) = x.shape
    t_out = (steps + 2 * padding - ksize) // stride + 1
    if t_out < 1:
        msg = f"Kernel conv1d input length {steps} is shorter than the kernel {ksize}. Aborting!!!"
        raise TensorInterfaceError(msg=msg)

    padded = numpy.pad(x.values, ((0, 0), (padding, padding), (0, 0)))
    span = stride * (t_out - 1) + 1
    cols = numpy.stack([padded[:, k : k + span : stride, :] for k in range(ksize)], axis=2)
    flat_w = weight.values.reshape(ksize * c_in, c_out)
    values = cols.reshape(batch, t_out, ksize * c_in) @ flat_w + bias.values

    def rule(grad):
        grad_w = numpy.einsum("btk,bto->ko", cols.reshape(batch, t_out, -1), grad)
        grad_cols = (grad @ flat_w.T).reshape(batch, t_out, ksize, c_in)
        grad_padded = numpy.zeros_like(padded)
        for k in range(ksize):
            grad_padded[:, k : k + span : stride, :] += grad_cols[:, :, k, :]
        return (
            grad_padded[:, padding : padding + steps, :],
            grad_w.reshape(weight.shape),
            grad.sum(axis=(0, 1)),
        )

    return _make(values, (x, weight, bias), rule, "conv1d")


def repeat_time(x: ArrayLike, factor: int) -> Tensor:
    """Nearest-neighbour upsampling of the time axis of (B, T, C)."""

    x = _as_tensor(x)
    (batch, steps, channels) = x.shape

    def rule(grad):
        return (grad.reshape(batch, steps, factor, channels).sum(axis=2),)

    return _make(numpy.repeat(x.values, factor, axis=1), (x,), rule, "repeat_time")
