"""Censored (dynamic Tobit) autoregressions.

Simulation of censored near-unit-root autoregressions, OLS estimation in
ADF form, and unit-root testing with censoring-adjusted critical values.
The heavy lifting happens in the C++ extension module.
"""

from tobitadf._core import *  # noqa: F401,F403
from tobitadf import _core as core  # noqa: F401

__version__ = "0.1.0"
