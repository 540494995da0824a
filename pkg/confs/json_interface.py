# =========================================================================

# Module: confs/json_interface.py

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

    json_interface.py

Description
-----------

    This module contains functions to read and write JavaScript Object
    Notation (JSON) formatted files and newline-delimited JSON
    (NDJSON) record files.

Functions
---------

    append_ndjson(ndjson_file, record)

        This function appends a single record to a newline-delimited
        JSON file.

    dumps_canonical(in_obj)

        This function returns the canonical (sorted keys, compact
        separators) JSON string for a Python object.

    read_json(json_file)

        This function ingests a JSON formatted file and returns a
        Python dictionary containing all attributes of the file.

    read_ndjson(ndjson_file)

        This function ingests a newline-delimited JSON file and
        returns a Python list of records.

    write_json(json_file, in_dict, indent=4)

        This function writes a JSON formatted file using the
        specified Python dictionary.

    write_ndjson(ndjson_file, records)

        This function writes a Python list of records to a
        newline-delimited JSON file in canonical form.

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

import json
from typing import Any, Dict, List

from utils.exceptions_interface import JSONInterfaceError
from utils.logger_interface import Logger

# ----

# Define all available functions.
__all__ = [
    "append_ndjson",
    "dumps_canonical",
    "read_json",
    "read_ndjson",
    "write_json",
    "write_ndjson",
]

# ----

logger = Logger()

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----


def append_ndjson(ndjson_file: str, record: Dict) -> None:
    """
    Description
    -----------

    This function appends a single record to a newline-delimited JSON
    file; the file is created if it does not exist.

    Parameters
    ----------

    ndjson_file: str

        A Python string containing the path to the NDJSON file.

    record: dict

        A Python dictionary containing the record to be appended.

    Raises
    ------

    JSONInterfaceError:

        * raised if an exception is encountered while writing to the
          NDJSON file specified upon entry.

    """

    try:
        with open(ndjson_file, "a", encoding="utf-8") as file:
            file.write(dumps_canonical(in_obj=record) + "\n")

    except Exception as errmsg:
        msg = f"Appending to NDJSON file {ndjson_file} failed with error {errmsg}. Aborting!!!"
        raise JSONInterfaceError(msg=msg) from errmsg


# ----


def dumps_canonical(in_obj: Any) -> str:
    """
    Description
    -----------

    This function returns the canonical JSON string for a Python
    object; keys are sorted and the separators are compact so that
    equal objects always yield byte-identical strings.

    Parameters
    ----------

    in_obj: Any

        A JSON-serializable Python object.

    Returns
    -------

    json_str: str

        A Python string containing the canonical JSON text.

    """

    json_str = json.dumps(in_obj, sort_keys=True, separators=(",", ":"))

    return json_str


# ----


def read_json(json_file: str) -> Dict:
    """
    Description
    -----------

    This function ingests a JavaScript Object Notation (e.g., JSON)
    formatted file and returns a Python dictionary containing all
    attributes of the file.

    Parameters
    ----------

    json_file: str

        A Python string containing the full-path to the JSON file to
        be parsed.

    Returns
    -------

    json_dict: dict

        A Python dictionary containing all attributes contained within
        the ingested JSON file.

    Raises
    ------

    JSONInterfaceError:

        * raised is an exception is encountered while reading from the
          JSON-formatted file specified upon entry.

    """

    msg = f"Reading from JSON-formatted file {json_file}."
    logger.info(msg=msg)

    try:
        with open(json_file, "r", encoding="utf-8") as stream:
            json_dict = json.load(stream)

    except Exception as errmsg:
        msg = f"Reading JSON-formatted file {json_file} failed with error {errmsg}. Aborting!!!"
        raise JSONInterfaceError(msg=msg) from errmsg

    return json_dict


# ----


def read_ndjson(ndjson_file: str) -> List:
    """
    Description
    -----------

    This function ingests a newline-delimited JSON file and returns a
    Python list of records; blank lines are ignored.

    Parameters
    ----------

    ndjson_file: str

        A Python string containing the path to the NDJSON file.

    Returns
    -------

    records: list

        A Python list of Python dictionaries, one per line.

    Raises
    ------

    JSONInterfaceError:

        * raised if an exception is encountered while reading or
          decoding the NDJSON file specified upon entry.

    """

    msg = f"Reading from NDJSON-formatted file {ndjson_file}."
    logger.info(msg=msg)

    try:
        with open(ndjson_file, "r", encoding="utf-8") as stream:
            records = [json.loads(line) for line in stream if line.strip()]

    except Exception as errmsg:
        msg = f"Reading NDJSON-formatted file {ndjson_file} failed with error {errmsg}. Aborting!!!"
        raise JSONInterfaceError(msg=msg) from errmsg

    return records


# ----


def write_json(json_file: str, in_dict: Dict, indent: int = 4) -> None:
    """
    Description
    -----------

    This function writes a JavaScript Object Notation (e.g., JSON)
    formatted file using the specified Python dictionary; keys are
    sorted so that the file contents are deterministic.

    Parameters
    ----------

    json_file: str

        A Python string containing the full-path to the JSON file to
        be written.

    in_dict: dict

        A Python dictionary containing the attributes to be written to
        the JSON file.

    Keywords
    --------

    indent: int, optional

        A Python integer defining the indentation level for the
        attributes within the JSON-formatted file.

    Raises
    ------

    JSONInterfaceError:

        * raised is an exception is encountered while writing to the
          JSON-formatted file specified upon entry.

    """

    msg = f"Writing to JSON-formatted file {json_file}."
    logger.info(msg=msg)

    try:
        with open(json_file, "w", encoding="utf-8") as file:
            json.dump(in_dict, file, indent=indent, sort_keys=True)
            file.write("\n")

    except Exception as errmsg:
        msg = f"Writing JSON-formatted file {json_file} failed with error {errmsg}. Aborting!!!"
        raise JSONInterfaceError(msg=msg) from errmsg


# ----


def write_ndjson(ndjson_file: str, records: List) -> None:
    """
    Description
    -----------

    This function writes a Python list of records to a
    newline-delimited JSON file in canonical form; an existing file is
    overwritten.

    Parameters
    ----------

    ndjson_file: str

        A Python string containing the path to the NDJSON file.

    records: list

        A Python list of Python dictionaries.

    Raises
    ------

    JSONInterfaceError:

        * raised if an exception is encountered while writing to the
          NDJSON file specified upon entry.

    """

    msg = f"Writing {len(records)} records to NDJSON-formatted file {ndjson_file}."
    logger.info(msg=msg)

    try:
        with open(ndjson_file, "w", encoding="utf-8") as file:
            for record in records:
                file.write(dumps_canonical(in_obj=record) + "\n")

    except Exception as errmsg:
        msg = f"Writing NDJSON-formatted file {ndjson_file} failed with error {errmsg}. Aborting!!!"
        raise JSONInterfaceError(msg=msg) from errmsg
