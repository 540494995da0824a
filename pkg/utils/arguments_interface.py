# =========================================================================

# Module: utils/arguments_interface.py

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

    arguments_interface.py

Description
-----------

    This is the base-class object for all command line argument(s)
    parsing.

    The command line takes the form

        user@host:$ python <caller_script>.py <command> [<action>] \\
            [--key value ...] [--set section.key=value ...] \\
            [--seed N] [--force]

    where every `--key value` pair becomes an attribute of the
    returned object and every `--set` assignment becomes an entry of
    the nested configuration overrides.

Classes
-------

    Arguments()

        This is the base-class object for all command line argument(s)
        parsing.

Functions
---------

    config_overrides(assignments)

        This function builds the nested configuration overrides from
        `section.key=value` assignments.

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

from argparse import ArgumentParser
from dataclasses import dataclass
from typing import Dict, List, Sequence

from tools import parser_interface
from utils import schema_interface
from utils.exceptions_interface import ArgumentsInterfaceError

# ----

# Define all available attributes.
__all__ = ["Arguments", "config_overrides"]

# ----

__author__ = "unimo_pyutils developers"
__maintainer__ = "unimo_pyutils developers"

# ----


def config_overrides(assignments: Sequence[str]) -> Dict:
    """
    Description
    -----------

    This function builds a nested Python dictionary from
    `section.key=value` assignments; the values are converted with the
    parser_interface value_formatter rules.

    Parameters
    ----------

    assignments: list

        A Python list of assignment strings.

    Returns
    -------

    overrides: dict

        A Python dictionary of the nested overrides.

    Raises
    ------

    ArgumentsInterfaceError:

        * raised if an assignment is not of the form key=value.

    """

    overrides = {}
    for assignment in assignments or []:
        (path, sep, value) = assignment.partition("=")
        if not sep or not path.strip():
            msg = f"The assignment {assignment} is not of the form section.key=value. Aborting!!!"
            raise ArgumentsInterfaceError(msg=msg)
        parser_interface.dict_set_path(
            dict_in=overrides,
            path=path.strip(),
            value=parser_interface.value_formatter(value=value.strip()),
        )

    return overrides


# ----


@dataclass
class Arguments:
    """
    Description
    -----------

    This is the base-class object for all command line argument(s)
    parsing.

    """

    def run(
        self, argv: List[str] = None, eval_schema: bool = False, cls_schema: Dict = None
    ) -> object:
        """
        Description
        -----------

        This method collects the arguments passed for the command line
        to the respective caller script and builds a Python object
        containing the respective arguments; the attributes command,
        action, seed, force and overrides are always defined.

        Keywords
        --------

        argv: list, optional

            A Python list of the command line arguments; if NoneType,
            sys.argv is parsed.

        eval_schema: bool, optional

            A Python boolean specifying whether to validate the
            `--key value` arguments against cls_schema.

        cls_schema: dict, optional

            A Python dictionary containing the schema.

        Returns
        --------

        options_obj: object

            A Python object containing the command line argument key
            and value pairs.

        Raises
        ------

        ArgumentsInterfaceError:

            * raised if a `--key` has no value or the schema
              validation fails.

        """

        parser = ArgumentParser()
        parser.add_argument("command")
        parser.add_argument("action", nargs="?", default=None)
        parser.add_argument("--set", dest="assignments", action="append", default=[])
        parser.add_argument("--seed", type=int, default=None)
        parser.add_argument("--force", action="store_true")
        (known, args) = parser.parse_known_args(args=argv)

        if len(args) % 2 or any(not item.startswith("-") for item in args[::2]):
            msg = f"The command line arguments {args} are not --key value pairs. Aborting!!!"
            raise ArgumentsInterfaceError(msg=msg)
        (arg_keys, arg_values) = ([item.lstrip("-") for item in args[::2]], args[1::2])

        options_obj = parser_interface.object_define()
        for (key, value) in zip(arg_keys, arg_values):
            options_obj = parser_interface.object_setattr(
                object_in=options_obj, key=key.replace("-", "_"), value=value
            )

        if eval_schema:
            try:
                cls_opts = parser_interface.dict_formatter(
                    in_dict=parser_interface.object_todict(object_in=options_obj)
                )
                schema_interface.validate_opts(cls_schema=cls_schema, cls_opts=cls_opts)
            except Exception as errmsg:
                msg = f"Arguments validation failed with error {errmsg}. Aborting!!!"
                raise ArgumentsInterfaceError(msg=msg) from errmsg

        for (key, value) in (
            ("command", known.command),
            ("action", known.action),
            ("seed", known.seed),
            ("force", known.force),
            ("overrides", config_overrides(assignments=known.assignments)),
        ):
            options_obj = parser_interface.object_setattr(
                object_in=options_obj, key=key, value=value
            )

        return options_obj
