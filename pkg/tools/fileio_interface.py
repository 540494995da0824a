# =========================================================================

# Module: tools/fileio_interface.py

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

    fileio_interface.py

Description
-----------

    This module contains functions to perform various file and
    directory tasks.

Functions
---------

    fileexist(path)

        This function will ingest a file-path and check whether the
        respective file-path exists; this function is a wrapper around
        os.path.isfile.

    makedirs(path, force=False)

        This function is a wrapper around os.makedirs and will build
        the directory tree (if needed) and the directory
        leaves/sub-directories.

    read_bytes(path)

        This function reads and returns the contents of a binary file.

    removefiles(filelist)

        This function ingests a list of filenames. The function then
        checks whether the respective filename exists and if so it
        removes it.

    rmdir(path)

        This function will attempt to remove the user specified
        path; if the path does not exist, this function does nothing.

    write_bytes(path, payload)

        This function writes a binary payload to a file; the parent
        directory tree is built if needed.

Author(s)
---------

    unimo_pyutils developers; 02 March 2026

History
-------

    2026-03-02: Initial implementation.

"""

# ----

# pylint: disable=broad-except

# ----

import os
import shutil
from typing import List

from utils.exceptions_interface import FileIOInterfaceError
from utils.logger_interface import Logger

# ----

# Define all available functions.
__all__ = [
    "fileexist",
    "makedirs",
    "read_bytes",
    "removefiles",
    "rmdir",
    "write_bytes",
]

# ----

logger = Logger()

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----


def fileexist(path: str) -> bool:
    """
    Description
    -----------

    This function will ingest a file-path and check whether the
    respective file-path exists; this function is a wrapper around
    os.path.isfile.

    Parameters
    ----------

    path: str

        A Python string containing the file-path.

    Returns
    -------

    exist: bool

        A Python boolean variable specifying whether the file-path
        exists.

    """

    exist = os.path.isfile(path)

    return exist


# ----


def makedirs(path: str, force: bool = False) -> None:
    """
    Description
    -----------

    This function is a wrapper around os.makedirs and will build the
    directory tree (if needed) and the directory
    leaves/sub-directories.

    Parameters
    ----------

    path: str

        A Python string defining the path to the directory to be
        constructed.

    Keywords
    --------

    force: bool, optional

        A Python boolean variable indicating whether any previous
        directories should be forcibly removed prior to constucting
        the directory tree; default is False.

    Raises
    ------

    FileIOInterfaceError:

        * raised if the directory tree cannot be built.

    """

    if os.path.isdir(path) and force:
        rmdir(path)

    try:
        os.makedirs(path, exist_ok=True)

    except OSError as errmsg:
        msg = f"Building directory {path} failed with error {errmsg}. Aborting!!!"
        raise FileIOInterfaceError(msg=msg) from errmsg


# ----


def read_bytes(path: str) -> bytes:
    """
    Description
    -----------

    This function reads and returns the contents of a binary file.

    Parameters
    ----------

    path: str

        A Python string specifying the path to the file.

    Returns
    -------

    payload: bytes

        The file contents.

    Raises
    ------

    FileIOInterfaceError:

        * raised if the file cannot be read.

    """

    try:
        with open(path, "rb") as file:
            payload = file.read()

    except OSError as errmsg:
        msg = f"Reading file {path} failed with error {errmsg}. Aborting!!!"
        raise FileIOInterfaceError(msg=msg) from errmsg

    return payload


# ----


def removefiles(filelist: List) -> None:
    """
    Description
    -----------

    This function ingests a list of filenames; the function then
    checks whether the respective filename exists and if so it removes
    it.

    Parameters
    ----------

    filelist: list

        A Python list containing a list of files to be removed.

    """

    for filename in filelist:
        if os.path.isfile(filename):
            os.remove(filename)


# ----


def rmdir(path: str) -> None:
    """
    Description
    -----------

    This function will attempt to remove the user specified path; if
    the path does not exist, this function does nothing.

    Parameters
    ----------

    path: str

        A Python string specifying the directory tree to be removed.

    """

    try:
        shutil.rmtree(path)

    except FileNotFoundError:
        msg = f"The directory tree {path} does not exist; nothing to be done."
        logger.debug(msg=msg)


# ----


def write_bytes(path: str, payload: bytes) -> None:
    """
    Description
    -----------

    This function writes a binary payload to a file; the parent
    directory tree is built if needed.

    Parameters
    ----------

    path: str

        A Python string specifying the path to the file.

    payload: bytes

        The binary contents to be written.

    Raises
    ------

    FileIOInterfaceError:

        * raised if the file cannot be written.

    """

    dirname = os.path.dirname(path)
    if dirname:
        makedirs(path=dirname)

    try:
        with open(path, "wb") as file:
            file.write(payload)

    except OSError as errmsg:
        msg = f"Writing file {path} failed with error {errmsg}. Aborting!!!"
        raise FileIOInterfaceError(msg=msg) from errmsg
