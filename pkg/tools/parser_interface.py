# =========================================================================

# Module: tools/parser_interface.py

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

    parser_interface.py

Description
-----------

    This module contains functions to perform various tasks which
    involve the parsing of dictionaries, lists, and other Python type
    comprehensions.

Functions
---------

    dict_formatter(in_dict)

        This function formats a Python dictionary; all data-type
        conversions of string values are performed within this
        function.

    dict_merge(dict1, dict2)

        This function merges two Python dictionaries and returns a
        generator containing the merged Python dictionary.

    dict_set_path(dict_in, path, value)

        This function defines the value for a period-delimited key
        path (e.g., `sft.lr_max`) within a nested Python dictionary.

    object_define()

        This function defines an empty Python object.

    object_getattr(object_in, key, force=False)

        This function ingests a Python object and a Python attribute
        and returns the value of the respective attribute.

    object_setattr(object_in, key, value)

        This function ingests a Python object and a Python key and
        value pair and defines the attributes for the respective
        object.

    object_todict(object_in)

        This function ingests a Python object and returns a Python
        dictionary containing the contents of the respective object.

    value_formatter(value)

        This function converts a Python string to the Python type it
        spells (integer, float, boolean, NoneType, or string).

Author(s)
---------

    unimo_pyutils developers; 02 March 2026

History
-------

    2026-03-02: Initial implementation.

"""

# ----

# pylint: disable=raise-missing-from

# ----

import types
from typing import Any, Dict, Generator

from utils.exceptions_interface import ParserInterfaceError

# ----

# Define all available functions.
__all__ = [
    "dict_formatter",
    "dict_merge",
    "dict_set_path",
    "object_define",
    "object_getattr",
    "object_setattr",
    "object_todict",
    "value_formatter",
]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----


def dict_formatter(in_dict: Dict) -> Dict:
    """
    Description
    -----------

    This function formats a Python dictionary; all data-type
    conversions of string values are performed within this function;
    nested dictionaries are formatted recursively and the keys are
    sorted.

    Parameters
    ----------

    in_dict: dict

        A standalone Python dictionary to be formatted.

    Returns
    -------

    out_dict: dict

        A standalone Python dictionary which has been formatted.

    """

    out_dict = {}
    for key, value in sorted(in_dict.items(), key=lambda item: item[0]):
        if isinstance(value, dict):
            out_dict[key] = dict_formatter(in_dict=value)
        else:
            out_dict[key] = value_formatter(value=value)

    return out_dict


# ----


def dict_merge(dict1: Dict, dict2: Dict) -> Generator:
    """
    Description
    -----------

    This function merges two Python dictionaries and returns a
    generator containing the merged Python dictionary; values within
    the second Python dictionary take precedence.

    Parameters
    ----------

    dict1: dict

         A Python dictionary to be merged.

    dict2: dict

         A Python dictionary to be merged.

    Returns
    -------

    A Python generator is returned containing the merged Python
    dictionary key and value pairs.

    """

    # Preserve the key order of the first dictionary and append the
    # keys unique to the second.
    keys = list(dict1.keys()) + [key for key in dict2 if key not in dict1]
    for key in keys:
        if key in dict1 and key in dict2:
            if isinstance(dict1[key], dict) and isinstance(dict2[key], dict):
                yield (key, dict(dict_merge(dict1[key], dict2[key])))
            else:
                yield (key, dict2[key])
        elif key in dict1:
            yield (key, dict1[key])
        else:
            yield (key, dict2[key])


# ----


def dict_set_path(dict_in: Dict, path: str, value: Any) -> Dict:
    """
    Description
    -----------

    This function defines the value for a period-delimited key path
    within a nested Python dictionary; intermediate dictionaries are
    created as needed.

    Parameters
    ----------

    dict_in: dict

        A Python dictionary to be updated.

    path: str

        A Python string specifying the period-delimited key path
        (e.g., `sft.lr_max`).

    value: Any

        The value to be assigned.

    Returns
    -------

    dict_in: dict

        The updated Python dictionary.

    Raises
    ------

    ParserInterfaceError:

        * raised if an intermediate key already holds a value that is
          not a Python dictionary.

    """

    keys = path.split(".")
    node = dict_in
    for key in keys[:-1]:
        node = node.setdefault(key, {})
        if not isinstance(node, dict):
            msg = (
                f"The key path {path} traverses the non-dictionary key {key}. "
                "Aborting!!!"
            )
            raise ParserInterfaceError(msg=msg)
    node[keys[-1]] = value

    return dict_in


# ----


def object_define() -> object:
    """
    Description
    -----------

    This function defines an empty Python object.

    Returns
    -------

    empty_obj: object

        An empty Python object.

    """

    # Initialize an empty Python object/namespace.
    empty_obj = types.SimpleNamespace()

    return empty_obj


# ----


def object_getattr(object_in: object, key: str, force: bool = False) -> Any:
    """
    Description
    -----------

    This function ingests a Python object and a Python attribute and
    returns the value of the respective attribute; if force is True
    and the Python object attribute does not exist, this function
    returns NoneType.

    Parameters
    ----------

    object_in: object

        A Python object within which to search for attributes.

    key: str

        A Python string value specifying the attribute to seek.

    Keywords
    --------

    force: bool, optional

        A Python boolean variable; if True and in the absence of the
        respective attribute within the Python object, NoneType is
        returned; otherwise, an ParserInterfaceError is raised.

    Returns
    -------

    value: Any

        The result of the respective attribute search.

    Raises
    ------

    ParserInterfaceError:

        * raised if force is False and the Python object attribute
          does not exist.

    """

    if hasattr(object_in, key):
        return getattr(object_in, key)

    if not force:
        msg = f"The object {object_in} does not contain attribute {key}. Aborting!!!"
        raise ParserInterfaceError(msg=msg)

    return None


# ----


def object_setattr(object_in: object, key: str, value: Any) -> object:
    """
    Description
    -----------

    This function ingests a Python object and a Python key and value
    pair and defines the attributes for the respective object.

    Parameters
    ----------

    object_in: object

        A Python object within which to define the attribute.

    key: str

        A Python string value specifying the attribute to define.

    value: Any

        A Python variable value specifying the value to accompany the
        Python object attribute (key).

    Returns
    -------

    object_out: object

       A Python object containing the user specified key and value
       pair (e.g., attribute).

    """

    object_out = object_in
    setattr(object_out, key, value)

    return object_out


# ----


def object_todict(object_in: object) -> Dict:
    """
    Description
    -----------

    This function ingests a Python object and returns a Python
    dictionary containing the contents of the object.

    Parameters
    ----------

    object_in: object

        A Python object containing specified content.

    Returns
    -------

    dict_out: dict

        A Python dictionary containing the contents of the Python
        object.

    """

    dict_out = dict(vars(object_in))

    return dict_out


# ----


def value_formatter(value: Any) -> Any:
    """
    Description
    -----------

    This function converts a Python string to the Python type it
    spells; strings that parse as numbers become integers (no decimal
    point or exponent) or floats, the strings `none`, `true` and
    `false` (case insensitive) become NoneType and booleans, and all
    other strings are returned unchanged; non-string values pass
    through.

    Parameters
    ----------

    value: Any

        The value to be formatted.

    Returns
    -------

    value: Any

        The formatted value.

    """

    if not isinstance(value, str):
        return value

    try:
        float(value)
        if any(char in value.lower() for char in (".", "e", "n")):
            return float(value)
        return int(value)

    except ValueError:
        if value.lower() == "none":
            return None
        if value.lower() == "true":
            return True
        if value.lower() == "false":
            return False

    return value
