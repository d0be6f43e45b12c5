"""Bound states, coordinate-correct operators and expectation values."""

import json

from ._core import *  # noqa: F401,F403
from ._core import run_suite_json

__version__ = "0.1.0"


def run_suite(name, tol=None, **params):
    """Run a verification suite and return the report as a dict."""
    return json.loads(run_suite_json(name, {k: str(v) for k, v in params.items()}, tol))
