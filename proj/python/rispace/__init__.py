"""Rearrangement-invariant norms of step functions on (0,1]."""

import json

from ._core import *  # noqa: F401,F403
from ._core import verify as _verify


def verify_report(suite, **kwargs):
    """Run a verification suite and return (passed, report dict)."""
    passed, text = _verify(suite, "json", **kwargs)
    return passed, json.loads(text)
