# =========================================================================

# Module: setup.py

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
Script
------

    setup.py

Description
-----------

    This script will attempt to build the unimo_pyutils application
    package.

Functions
---------

    setup(name, version, description, author, license,
          classifiers, install_requires)

        This function provides the interface to the Python setuptools
        setup application; all parameters are specific to the
        respective application.

Author(s)
---------

    unimo_pyutils developers; 02 March 2026

History
-------

    2026-03-02: Initial implementation.

"""

# ----

from setuptools import find_namespace_packages, setup

# ----

# Define the package attributes.
AUTHOR = "unimo_pyutils developers"
LICENSE = "License :: OSI Approved :: LGPL-2.0 License"
NAME = "unimo_pyutils"
VERSION = "0.0.0"

DESCRIPTION = (
    "Desk-scale unified motion generation and captioning: motion tokenization, "
    "supervised fine-tuning and group-relative policy optimization."
)

classifiers = [
    f"Development Status :: Version {VERSION}",
    "Programming Language :: Python :: >= 3.8",
    "Intended Audience :: Science/Research",
    "License :: OSI Approved :: LGPL-2.0 License",
    "Topic :: Software Development :: Libraries :: Python Modules",
]

# ----

# Define the package dependencies.
install_requires = [
    "numpy==1.22.4",
    "pytest==7.2.0",
    "pytest-order==1.0.1",
    "pyyaml==6.0",
    "sacrebleu==2.3.1",
    "schema==0.7.5",
]

# ----

# Install and build the package dependencies and the respective
# package.
setup(
    name=NAME,
    version=VERSION,
    description=DESCRIPTION,
    author=AUTHOR,
    license=LICENSE,
    classifiers=classifiers,
    install_requires=install_requires,
    packages=find_namespace_packages(
        include=[
            f"{pkg}*"
            for pkg in (
                "confs", "embedder", "execute", "ioapps", "metrics",
                "rewards", "synthdata", "tensor", "tokenizer_vq",
                "tools", "training", "utils", "vocab_lm",
            )
        ]
    ),
)
