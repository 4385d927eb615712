# ====================================================================================================
# C00_set_packages.py
# ----------------------------------------------------------------------------------------------------
# Central import hub for all reusable project dependencies.
#
# Purpose:
#   - Provide a single controlled location for all third-party and standard library imports.
#   - Allow other modules to simplify their imports using:  from core.C00_set_packages import *
#   - Guarantee consistent dependency availability across the screening library, solvers and CLI.
#
# Usage:
#   from core.C00_set_packages import *
#
# ----------------------------------------------------------------------------------------------------
# Author:       Gerry Pidgeon
# Created:      2025-11-18
# Project:      SafeScreen v1.0
# ====================================================================================================


# ====================================================================================================
# 1. SYSTEM IMPORTS
# ----------------------------------------------------------------------------------------------------
# These imports (sys, pathlib.Path) are required to correctly initialise the project environment,
# ensure the core library can be imported safely (including C00_set_packages.py),
# and prevent project-local paths from overriding installed site-packages.
# ----------------------------------------------------------------------------------------------------

# --- Future behaviour & type system enhancements -----------------------------------------------------
from __future__ import annotations           # Future-proof type hinting (PEP 563 / PEP 649)

# --- Required for dynamic path handling and safe importing of core modules ---------------------------
import sys                                   # Python interpreter access (path, environment, runtime)
from pathlib import Path                     # Modern, object-oriented filesystem path handling

# --- Ensure project root DOES NOT override site-packages --------------------------------------------
project_root = str(Path(__file__).resolve().parent.parent)
if project_root not in sys.path:
    sys.path.append(project_root)

# --- Remove '' (current working directory) which can shadow installed packages -----------------------
if "" in sys.path:
    sys.path.remove("")

# --- Prevent creation of __pycache__ folders ---------------------------------------------------------
sys.dont_write_bytecode = True


# ====================================================================================================
# 2. PROJECT IMPORTS
# ----------------------------------------------------------------------------------------------------
# Import anything required from the core library or other project modules.
#
# Notes:
#   - ALWAYS use ABSOLUTE imports.
#       Example: from core.C03_logging_handler import get_logger
#   - DO NOT use relative imports ("from .x import y").
#
#   - IMPORTANT:
#       Core modules MUST import shared packages from:
#           from core.C00_set_packages import *
#
#   - C00 itself must NEVER import from other core modules to avoid circular dependencies.
# ----------------------------------------------------------------------------------------------------


# ====================================================================================================
# 3. STANDARD LIBRARY IMPORTS
# ----------------------------------------------------------------------------------------------------
# Common Python standard-library modules likely to be used across many scripts.
# These are guaranteed to exist in all Python environments.
# ----------------------------------------------------------------------------------------------------

import argparse                                          # Command-line parsing (main/ entry points)
import bisect                                            # Sorted-sequence helpers
import contextlib                                        # Context manager utilities
from copy import deepcopy                                # Deep/shallow copy operations
from dataclasses import dataclass, field, asdict, replace  # Data class decorator and helpers
import datetime as dt                                    # Primary datetime module (aliased)
from enum import Enum                                    # Enumerations (problem variants, rules)
from functools import cached_property                    # Lazily computed immutable attributes
import io                                                # Streams and in-memory buffers
import json                                              # JSON encoding/decoding
import logging                                           # Logging API (configured separately in C03)
import math                                              # Scalar maths (floor, log, sqrt, inf)
import os                                                # OS operations (paths, environment variables)
import shutil                                            # File/folder operations
import time                                              # Timing utilities, perf_counter()

from typing import (
    Any,                # Generic placeholder type - value may be of any type
    Callable,           # Callable[[Args], Return] - function or method type signature
    Dict,               # Dict[K, V] - mutable key/value mapping
    Iterable,           # Iterable[T] - object capable of yielding items one at a time
    List,               # List[T] - ordered, mutable collection
    Literal,            # Literal["A", "B"] - restricts a variable to specific fixed values
    Mapping,            # Mapping[K, V] - read-only key/value mapping interface
    Optional,           # Optional[T] - shorthand for T | None
    Protocol,           # Protocol - structural typing base class (duck-typing interfaces)
    Sequence,           # Sequence[T] - read-only ordered container (tuple/list-like)
    Tuple,              # Tuple[T1, T2] - fixed-length tuple type
    Union               # Union[A, B] - value may be one of several allowed types (pre-PEP 604)
)

from concurrent.futures import (
    ProcessPoolExecutor,                                # Process-based (CPU-bound) task parallelism
    ThreadPoolExecutor                                  # Thread-based parallel task execution
)

# ====================================================================================================
# 4. THIRD-PARTY LIBRARIES
# ----------------------------------------------------------------------------------------------------
# Numerical and data-handling libraries used across screening, solvers and I/O.
# These imports are global because they are used across multiple modules.
# ----------------------------------------------------------------------------------------------------
import numpy as np                                      # (pip install numpy) Numerical computing
import pandas as pd                                     # (pip install pandas) Tabular data analysis

import scipy.sparse as sp                               # (pip install scipy) Sparse CSC/COO matrices
from scipy.optimize import brentq, linprog, minimize_scalar  # Root finding, HiGHS LP, bounded 1-D minimisation
from scipy.special import expit, xlogy                   # Stable logistic sigmoid and x*log(y) with 0*log(0) = 0

import yaml                                             # (pip install pyyaml) YAML configuration parsing

from tqdm import tqdm                                   # (pip install tqdm) Progress bars for loops/tasks
