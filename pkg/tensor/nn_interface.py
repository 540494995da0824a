# =========================================================================

# Module: tensor/nn_interface.py

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

    nn_interface.py

Description
-----------

    This module contains the parameter container shared by every
    trainable model and the two layers used throughout.

Classes
-------

    Module()

        This is the base-class object for a named, ordered collection
        of parameters and sub-modules.

    Linear(in_dim, out_dim, rng, bias=True)

        This is the base-class object for an affine map.

    LayerNorm(dim)

        This is the base-class object for a last-axis layer
        normalization with a learned affine.

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

from collections import OrderedDict
from typing import Dict, Iterator, Tuple

import numpy

from tensor.tensor_interface import Tensor, add, layer_norm, matmul
from utils.exceptions_interface import TensorInterfaceError

# ----

# Define all available attributes.
__all__ = ["LayerNorm", "Linear", "Module"]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----


class Module:
    """
    Description
    -----------

    This is the base-class object for a named, ordered collection of
    parameters and sub-modules; parameter names are dotted paths
    ("block0.attn.weight") in registration order.

    """

    def __init__(self):
        self._params: Dict[str, Tensor] = OrderedDict()
        self._buffers: Dict[str, numpy.ndarray] = OrderedDict()
        self._modules: Dict[str, "Module"] = OrderedDict()

    def add_buffer(self, name: str, values: numpy.ndarray) -> None:
        """Registers non-trainable state saved with the parameters."""

        self._buffers[name] = numpy.asarray(values, dtype=numpy.float64)

    def buffer(self, name: str) -> numpy.ndarray:
        return self._buffers[name]

    def set_buffer(self, name: str, values: numpy.ndarray) -> None:
        self._buffers[name] = numpy.asarray(values, dtype=numpy.float64)

    def named_buffers(self, prefix: str = "") -> Iterator[Tuple[str, numpy.ndarray]]:
        for name, values in self._buffers.items():
            yield (f"{prefix}{name}", values)
        for name, module in self._modules.items():
            yield from module.named_buffers(prefix=f"{prefix}{name}.")

    def add_module(self, name: str, module: "Module") -> "Module":
        self._modules[name] = module
        return module

    def add_param(self, name: str, values: numpy.ndarray) -> Tensor:
        param = Tensor(values, requires_grad=True)
        self._params[name] = param
        return param

    def named_parameters(self, prefix: str = "") -> Iterator[Tuple[str, Tensor]]:
        for name, param in self._params.items():
            yield (f"{prefix}{name}", param)
        for name, module in self._modules.items():
            yield from module.named_parameters(prefix=f"{prefix}{name}.")

    def parameters(self) -> Dict[str, Tensor]:
        return OrderedDict(self.named_parameters())

    def zero_grad(self) -> None:
        for param in self.parameters().values():
            param.zero_grad()

    def freeze(self) -> None:
        """Marks every parameter non-trainable."""

        for param in self.parameters().values():
            param.requires_grad = False
            param.zero_grad()

    def num_parameters(self) -> int:
        return int(sum(param.size for param in self.parameters().values()))

    def state_dict(self) -> Dict[str, numpy.ndarray]:
        """Parameters first, then buffers, each in registration order."""

        state = OrderedDict(
            (name, param.values.copy()) for (name, param) in self.named_parameters()
        )
        state.update((name, values.copy()) for (name, values) in self.named_buffers())

        return state

    def _set_buffer_path(self, path: str, values: numpy.ndarray) -> None:
        (head, _, tail) = path.partition(".")
        if tail:
            self._modules[head]._set_buffer_path(tail, values)
        else:
            self.set_buffer(head, values)

    def load_state_dict(self, state: Dict[str, numpy.ndarray]) -> None:
        """
        Description
        -----------

        This method copies a named-parameter table (parameters and
        buffers) into the module.

        Raises
        ------

        TensorInterfaceError:

            * raised if a name is missing, unexpected or has a
              different shape.

        """

        params = self.parameters()
        buffers = OrderedDict(self.named_buffers())
        expected = set(params) | set(buffers)
        missing = sorted(expected - set(state))
        unexpected = sorted(set(state) - expected)
        if missing or unexpected:
            msg = (
                f"The parameter table does not match the model; missing {missing}, "
                f"unexpected {unexpected}. Aborting!!!"
            )
            raise TensorInterfaceError(msg=msg)

        for name in list(params) + list(buffers):
            values = numpy.asarray(state[name], dtype=numpy.float64)
            current = params[name].shape if name in params else buffers[name].shape
            if values.shape != current:
                msg = (
                    f"The parameter {name} has shape {values.shape} but the model "
                    f"expects {current}. Aborting!!!"
                )
                raise TensorInterfaceError(msg=msg)
            if name in params:
                params[name].values = values.copy()
            else:
                self._set_buffer_path(name, values.copy())


# ----


class Linear(Module):
    """
    Description
    -----------

    This is the base-class object for an affine map x @ W + b; W is
    drawn from N(0, 1/in_dim) and b starts at zero.

    """

    def __init__(self, in_dim: int, out_dim: int, rng: numpy.random.Generator, bias: bool = True):
        super().__init__()
        self.weight = self.add_param(
            "weight", rng.normal(0.0, 1.0 / numpy.sqrt(in_dim), size=(in_dim, out_dim))
        )
        self.bias = self.add_param("bias", numpy.zeros(out_dim)) if bias else None

    def __call__(self, x: Tensor) -> Tensor:
        out = matmul(x, self.weight)
        if self.bias is not None:
            out = add(out, self.bias)
        return out


# ----


class LayerNorm(Module):
    def __init__(self, dim: int):
        super().__init__()
        self.gamma = self.add_param("gamma", numpy.ones(dim))
        self.beta = self.add_param("beta", numpy.zeros(dim))

    def __call__(self, x: Tensor) -> Tensor:
        return layer_norm(x, self.gamma, self.beta)
