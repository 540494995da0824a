# =========================================================================

# Module: conftest.py

# Author: unimo_pyutils developers

# =========================================================================

"""
Module
------

    conftest.py

Description
-----------

    This module places the repository root on the module search path
    so the top-level packages import as they do from an installed
    tree; the logger is quietened to warnings unless set otherwise.

"""

# ----

import os
import sys

# ----

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

os.environ.setdefault("UNIMO_LOG_LEVEL", "WARNING")
