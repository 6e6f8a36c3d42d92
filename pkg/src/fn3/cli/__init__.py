"""
Command-line interface for fn3.

- main: the ``fn3`` entry point and its subcommands
- config: RunConfig, tolerances and sample counts
- serialize: JSON forms of matrices, coordinates and reports
- suites: the reproducible verification suites
"""

from .config import RunConfig
from .suites import SUITES, SuiteResult, run_suite, run_suites

__all__ = ["RunConfig", "SUITES", "SuiteResult", "run_suite", "run_suites"]
