# =========================================================================

# Module: utils/logger_interface.py

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

    logger_interface.py

Description
-----------

    This module contains wrapper methods for the Python logging
    package.

Classes
-------

    Logger()

        This is the base-class for all Python logging instances.

Author(s)
---------

    unimo_pyutils developers; 02 March 2026

History
-------

    2026-03-02: Initial implementation.

"""

# ----

# pylint: disable=missing-function-docstring

# ----

import logging
import os
import sys

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----

# The environment variable used to set the lowest logger level that
# is written.
LOG_LEVEL_ENV = "UNIMO_LOG_LEVEL"

# ----


class _LevelFormatter(logging.Formatter):
    """
    Description
    -----------

    This is the formatter object which wraps each logger message in the
    color string attributed to its logger level.

    """

    def __init__(self, log_format: str, date_format: str, colors_dict: dict):
        super().__init__(fmt=log_format, datefmt=date_format)
        self.colors_dict = colors_dict

    def format(self, record: logging.LogRecord) -> str:
        msg = super().format(record)
        color = self.colors_dict.get(record.levelname, "")

        return color + msg + self.colors_dict["RESET"]


# ----


class Logger:
    """
    Description
    -----------

    This is the base-class object for all logger-type messages.

    Keywords
    --------

    name: str, optional

        A Python string specifying the name of the Python logging
        object; all Logger instances sharing a name share one stream
        handler.

    """

    def __init__(self, name: str = "unimo"):
        """
        Description
        -----------

        Creates a new Logger object.

        """

        # Define the base-class attributes.
        self.log_format = "%(asctime)s :: %(levelname)s :: %(message)s"
        self.date_format = "%Y-%m-%d %H:%M:%S"
        self.stream = sys.stdout

        # Define the logger object format string colors; note that all
        # supported base-class logger level types must be defined
        # here.
        self.colors_dict = {
            "CRITICAL": "\x1b[1;43m",
            "DEBUG": "\x1b[38;5;46m",
            "INFO": "\x1b[37;21m",
            "ERROR": "\x1b[1;41m",
            "WARNING": "\x1b[38;5;226m",
            "RESET": "\x1b[0m",
        }

        self.log = logging.getLogger(name)
        self.__configure__()

    def __configure__(self) -> None:
        """
        Description
        -----------

        This method attaches the colored stream handler to the Python
        logging object the first time the respective logger name is
        used and (re)defines the logger level from the run-time
        environment.

        """

        if not self.log.handlers:
            handler = logging.StreamHandler(stream=self.stream)
            handler.setFormatter(
                _LevelFormatter(
                    log_format=self.log_format,
                    date_format=self.date_format,
                    colors_dict=self.colors_dict,
                )
            )
            self.log.addHandler(handler)
            self.log.propagate = False

        self.log.setLevel(self.__level__(os.environ.get(LOG_LEVEL_ENV, "info")))

    def __level__(self, level: str) -> int:
        """
        Description
        -----------

        This method defines the logging level object.

        Parameters
        ----------

        level: str

            A Python string defining the logger level; case
            insensitive.

        Returns
        -------

        level_obj: int

            A Python logging level value.

        Raises
        ------

        KeyError:

            * raised if the logger level is not supported.

        """

        # Check that the logger level type is supported.
        if level.upper() not in self.colors_dict or level.upper() == "RESET":
            msg = f"Logger level {level.upper()} not supported. Aborting!!!"
            self.stream.write(
                self.colors_dict["ERROR"] + msg + self.colors_dict["RESET"] + "\n"
            )
            raise KeyError(msg)

        level_obj = getattr(logging, f"{level.upper()}")

        return level_obj

    # The base-class logger CRITICAL level interface.
    def critical(self, msg: str) -> None:
        self.log.critical(msg)

    # The base-class logger DEBUG level interface.
    def debug(self, msg: str) -> None:
        self.log.debug(msg)

    # The base-class logger ERROR level interface.
    def error(self, msg: str) -> None:
        self.log.error(msg)

    # The base-class logger INFO level interface.
    def info(self, msg: str) -> None:
        self.log.info(msg)

    # The base-class logger WARNING level interface.
    def warn(self, msg: str) -> None:
        self.log.warning(msg)
