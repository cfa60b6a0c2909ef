"""Exact spectral sequences, obstruction towers, and symbol calculus.

Thin wrapper over the compiled module: report-producing calls return the same
deterministic JSON bodies as the command line, decoded into plain dicts.
"""

import json as _json

from ._core import Instance, gersten, run
from . import _core as _c

__all__ = ["Instance", "gersten", "run", "validate", "pages", "tower", "secondary", "sq2"]


def validate(instance):
    """Summary of a parsed instance: bounds, groups, metadata."""
    return _json.loads(_c.validate_json(instance))


def pages(instance, r_max=3, threads=1):
    """Pages 2..r_max plus the stable page and the filtered cohomology."""
    return _json.loads(_c.pages_json(instance, r_max, threads))


def tower(instance, cls, degree=None):
    """Successive obstructions of the cocycle `cls`; degree defaults to the declared d."""
    return _json.loads(_c.tower_json(instance, cls, degree))


def secondary(instance):
    """Cokernel pipeline of the instance's secondary block."""
    return _json.loads(_c.secondary_json(instance))


def sq2(ring, twist, cls):
    """Squaring operation and its twist on a ring spec like "a:2,b:2"."""
    return _json.loads(_c.sq2_json(ring, twist, cls))
