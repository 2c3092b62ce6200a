"""Python access to the nonrn library.

Rationals are strings "p/q" throughout; structured values are plain dicts
in the same JSON shapes the command-line tool prints.
"""

import json

from . import _core
from ._core import DegenerateInput, MalformedInput, MalformedSystem, SizeLimitExceeded

__all__ = [
    "DegenerateInput",
    "MalformedInput",
    "MalformedSystem",
    "SizeLimitExceeded",
    "add",
    "enumerate_index",
    "eval_f",
    "from_points",
    "pierce",
    "refute",
    "run_command",
    "solve_system",
    "validate",
]


def add(x, y):
    return _core.q1_add(x, y)


def enumerate_index(count):
    return json.loads(_core.enumerate_index(count))


def from_points(points):
    return json.loads(_core.from_points(list(points)))


def validate(element):
    return json.loads(_core.validate(json.dumps(element)))


def eval_f(element, x):
    return _core.eval_f(json.dumps(element), x)


def pierce(elements, size_limit=None, heuristic=False):
    return json.loads(_core.pierce(json.dumps(elements), size_limit, heuristic))


def solve_system(system):
    """Solution as a list of "p/q" strings, or None when unsatisfiable."""
    out = _core.solve_system(json.dumps(system))
    return None if out is None else json.loads(out)


def refute(g, samples, m_max, checkpoints=None, size_limit=None, threads=1):
    return json.loads(_core.refute(g, list(samples), m_max, checkpoints, size_limit, threads))


def run_command(*args):
    """Runs a CLI subcommand in-process; returns (exit code, stdout, stderr)."""
    return _core.run_command([str(a) for a in args])
