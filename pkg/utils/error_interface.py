# =========================================================================

# Module: utils/error_interface.py

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

    error_interface.py

Description
-----------

    This module defines the root of the unimo_pyutils exception
    hierarchy; the per-package exceptions in exceptions_interface all
    derive from Error.

    An Error is logged at ERROR level when it is built, so a pipeline
    stage that aborts leaves its message in the run log even when the
    exception is caught further up.

Classes
-------

    Error(msg)

        This is the base-class for all unimo_pyutils exceptions.

Functions
---------

    msg_except_handle(err_cls)

        This function turns a module-level handler into one that
        raises err_cls with the message it is called with.

Author(s)
---------

    unimo_pyutils developers; 02 March 2026

History
-------

    2026-03-02: Initial implementation.

"""

# ----

# pylint: disable=unused-argument

# ----

import functools
from collections.abc import Callable

from utils.logger_interface import Logger

# ----

logger = Logger()

# ----

__all__ = ["Error", "msg_except_handle"]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----


class Error(Exception):
    """
    Description
    -----------

    This is the base-class for all unimo_pyutils exceptions; the
    message is logged and kept as the msg attribute.

    Parameters
    ----------

    msg: str

        A Python string naming what failed and the offending value.

    """

    def __init__(self, msg: str):
        logger.error(msg=msg)
        self.msg = msg
        super().__init__(msg)


# ----


def msg_except_handle(err_cls: type) -> Callable:
    """
    Description
    -----------

    This function returns a decorator for a module's __error__
    handler; the decorated handler raises err_cls(msg=msg) and keeps
    the name and docstring of the function it replaces.

    Parameters
    ----------

    err_cls: type

        A Python Error subclass to be raised.

    Returns
    -------

    decorator: Callable

        A Python decorator.

    """

    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def call_function(msg: str) -> None:
            raise err_cls(msg=msg)

        return call_function

    return decorator
