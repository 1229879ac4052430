"""Exact k-CTP laboratory: instances, strategies and game values.

Instances and families are plain dicts in the same JSON layout the ``ctp``
command line uses. Exact numbers are "p/q" strings.
"""

import json
from fractions import Fraction

from . import _core
from ._core import CtpError, strategy_names, verify_tags

__all__ = [
    "CtpError",
    "fraction",
    "gen_family",
    "gen_gstar",
    "expect",
    "minimax",
    "run",
    "strategy_names",
    "verify",
    "verify_tags",
]


def _text(value):
    return None if value is None else str(value)


def fraction(text):
    """Parses a rational "p/q" string; surd values raise ValueError."""
    return Fraction(text)


def gen_gstar(k, costs, blocked=(), predicted=(), general=False):
    return json.loads(_core.gen_gstar(k, [str(c) for c in costs], list(blocked), list(predicted), general))


def gen_family(tag, k, epsilon=None, param=None):
    return json.loads(_core.gen_family(tag, k, _text(epsilon), _text(param)))


def run(instance, strategy, epsilon=None, k=None, budget=None, seed=None):
    return json.loads(_core.run(json.dumps(instance), strategy, _text(epsilon), k, budget, seed))


def expect(instance, strategy, epsilon=None, k=None, budget=None):
    return json.loads(_core.expect(json.dumps(instance), strategy, _text(epsilon), k, budget))


def minimax(family, randomized=False, constrained=False):
    return json.loads(_core.minimax(json.dumps(family), randomized, constrained))


def verify(tag, ks=(), epsilons=()):
    return json.loads(_core.verify(tag, list(ks), [str(e) for e in epsilons]))
