"""Equivariant star-shaped quiver representations over binary polyhedral groups.

Artifacts are returned as plain dicts with the same layout as the CLI output.
"""

import json

from . import _core
from ._core import AdestarError, preset_names

__all__ = [
    "AdestarError",
    "classify",
    "exceptional",
    "group",
    "irreps",
    "mckay",
    "orbits",
    "preset_names",
    "rep_at",
    "run",
    "synthesize",
    "trivialize",
    "verify",
]


def _text(system):
    return system if isinstance(system, str) else json.dumps(system)


def run(*args):
    """Run a CLI subcommand; returns (exit code, stdout, stderr)."""
    return _core.run([str(a) for a in args])


def group(kind, n=0):
    return json.loads(_core.group(kind, n))


def irreps(kind, n=0, seed=1):
    return json.loads(_core.irreps(kind, n, seed))


def mckay(kind, n=0):
    return json.loads(_core.mckay(kind, n))


def orbits(kind, n=0):
    return json.loads(_core.orbits(kind, n))


def exceptional(kind, n=0):
    return json.loads(_core.exceptional(kind, n))


def synthesize(preset, seed=1):
    return json.loads(_core.synthesize(preset, seed))


def rep_at(system, point):
    return json.loads(_core.rep_at(_text(system), list(point)))


def classify(system):
    return json.loads(_core.classify(_text(system)))


def verify(system):
    return json.loads(_core.verify(_text(system)))


def trivialize(system, h=0.1):
    return json.loads(_core.trivialize(_text(system), h))
