"""Branch-distance objective functions.

Relational atoms score 0 when satisfied and a positive distance otherwise
(``|a - b| + K`` for ``==``, ``K`` for ``!=``, ``(a - b) + K`` for ``<`` and
``<=``, mirrored for ``>`` and ``>=``).  Compound goals combine atom
distances; ``combinator="corrected"`` sums over ``&&`` and takes the minimum
over ``||`` so that a zero cost means the expression holds.
``combinator="paper"`` swaps the two rules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from walkgen.syntax import And, BoolLit, Or, Rel

MAX_COST = math.inf
COMBINATORS = ("corrected", "paper")


@dataclass(frozen=True)
class FitnessConfig:
    k: float = 1.0
    combinator: str = "corrected"

    def __post_init__(self):
        if not self.k > 0:
            raise ValueError("K must be positive")
        if self.combinator not in COMBINATORS:
            raise ValueError(f"combinator must be one of {COMBINATORS}")


DEFAULT_CONFIG = FitnessConfig()


@dataclass(frozen=True, order=True)
class Cost:
    value: float
    reached: bool = True

    @property
    def covered(self) -> bool:
        return self.reached and self.value == 0


def atom_distance(op: str, a, b, cfg: FitnessConfig = DEFAULT_CONFIG) -> float:
    k = cfg.k
    if op == "==":
        return 0.0 if a == b else float(abs(a - b)) + k
    if op == "!=":
        return 0.0 if a != b else k
    if op == "<":
        return 0.0 if a < b else float(a - b) + k
    if op == "<=":
        return 0.0 if a <= b else float(a - b) + k
    if op == ">":
        return 0.0 if a > b else float(b - a) + k
    if op == ">=":
        return 0.0 if a >= b else float(b - a) + k
    raise ValueError(f"unknown relation {op!r}")


def bool_distance(value: bool, cfg: FitnessConfig = DEFAULT_CONFIG) -> float:
    return 0.0 if value else cfg.k


def combine(op: str, left: float, right: float, cfg: FitnessConfig = DEFAULT_CONFIG) -> float:
    conj = op == "and"
    if op not in ("and", "or"):
        raise ValueError(f"unknown connective {op!r}")
    if (cfg.combinator == "corrected") == conj:
        return left + right
    return min(left, right)


def expr_distance(expr, occurrence, cfg: FitnessConfig = DEFAULT_CONFIG) -> float:
    """Distance of a negation-free goal expression at one decision occurrence."""
    if isinstance(expr, Rel):
        a, b = occurrence.operands[expr.atom]
        return atom_distance(expr.op, a, b, cfg)
    if isinstance(expr, BoolLit):
        return bool_distance(expr.value, cfg)
    if isinstance(expr, And):
        return combine("and", expr_distance(expr.left, occurrence, cfg), expr_distance(expr.right, occurrence, cfg), cfg)
    if isinstance(expr, Or):
        return combine("or", expr_distance(expr.left, occurrence, cfg), expr_distance(expr.right, occurrence, cfg), cfg)
    raise TypeError(f"goal expression must be in negation normal form, got {expr!r}")


def goal_cost(goal, trace, cfg: FitnessConfig = DEFAULT_CONFIG) -> Cost:
    """Best distance of ``goal`` over every occurrence of its decision in ``trace``."""
    best = MAX_COST
    reached = False
    for occ in trace.occurrences:
        if occ.node_id != goal.node_id:
            continue
        reached = True
        best = min(best, expr_distance(goal.expr, occ, cfg))
    return Cost(best, reached)
