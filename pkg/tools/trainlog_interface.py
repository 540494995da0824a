# =========================================================================

# Module: tools/trainlog_interface.py

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

    trainlog_interface.py

Description
-----------

    This module contains the per-step training log shared by every
    training loop: each step is appended to a newline-delimited JSON
    file and a one-line summary is logged every log_interval steps.

Classes
-------

    TrainingLog(path, stage, log_interval)

        This is the base-class object for a training log.

Author(s)
---------

    unimo_pyutils developers; 02 March 2026

History
-------

    2026-03-02: Initial implementation.

"""

# ----

import os
from typing import Dict, List

from confs import json_interface
from tools import fileio_interface
from utils.logger_interface import Logger

# ----

# Define all available attributes.
__all__ = ["TrainingLog"]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----


class TrainingLog:
    """
    Description
    -----------

    This is the base-class object for a training log; an existing
    file at path is replaced. When path is NoneType the entries are
    kept in memory only.

    Parameters
    ----------

    path: str

        A Python string specifying the NDJSON log path.

    stage: str

        A Python string naming the stage within the summary lines.

    Keywords
    --------

    log_interval: int, optional

        A Python integer specifying the summary cadence in steps.

    """

    def __init__(self, path: str, stage: str, log_interval: int = 100):
        self.logger = Logger()
        self.path = path
        self.stage = stage
        self.log_interval = log_interval
        self.entries: List[Dict] = []

        if path is not None:
            if os.path.dirname(path):
                fileio_interface.makedirs(path=os.path.dirname(path))
            fileio_interface.removefiles(filelist=[path])

    def record(self, entry: Dict) -> None:
        """
        Description
        -----------

        This method appends one step entry; the entry must carry the
        key "step".

        """

        self.entries.append(entry)
        if self.path is not None:
            json_interface.append_ndjson(ndjson_file=self.path, record=entry)

        step = int(entry["step"])
        if step % self.log_interval == 0:
            fields = ", ".join(
                f"{key}={value:.5g}" if isinstance(value, float) else f"{key}={value}"
                for (key, value) in sorted(entry.items())
                if key != "step" and not isinstance(value, (dict, list))
            )
            self.logger.info(msg=f"{self.stage} step {step}: {fields}")
