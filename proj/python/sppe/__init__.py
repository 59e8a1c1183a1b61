"""Exact second-price pacing equilibria.

Every function takes and returns plain dicts; rationals travel as "p/q"
strings. Use ``fraction`` to turn one into a ``fractions.Fraction``.
"""

import json
from fractions import Fraction

from . import _sppe
from ._sppe import SppeError

__all__ = ["SppeError", "aggregate", "fraction", "gen", "solve", "verify"]


def _dump(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def fraction(value):
    return Fraction(str(value))


def solve(instance, by_types=False, max_goods=4, parallel=1, stats=True):
    return json.loads(_sppe.solve(_dump(instance), by_types, max_goods, parallel, stats))


def verify(instance, equilibrium):
    return json.loads(_sppe.verify(_dump(instance), _dump(equilibrium)))


def aggregate(instance):
    return json.loads(_sppe.aggregate(_dump(instance)))


def gen(n, m, seed=1, types=None, value_range=(1, 100), budget_range=(1, 50), max_denominator=4,
        zero_probability=0.0):
    return json.loads(_sppe.gen(n, m, seed, types, value_range[0], value_range[1], budget_range[0],
                                budget_range[1], max_denominator, zero_probability))
