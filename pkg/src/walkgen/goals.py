"""Condition/decision coverage goals.

Every decision with ``k`` atomic conditions yields the decision and its
complement plus each atom and its complement.  Complements are put in
negation normal form, and goals that become structurally identical are
merged, so a single-condition decision contributes two goals.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections import defaultdict

from walkgen.syntax import NEGATED_OP, And, BoolLit, Not, Or, ProgramModel, Rel

DECISION = "decision"
CONDITION = "condition"


def push_negation(expr, negate: bool = False):
    """Return an equivalent expression with every ``!`` absorbed.

    De Morgan is applied to ``&&``/``||``, relations are flipped
    (``!(a < b)`` becomes ``a >= b``) and double negations cancel.
    """
    if isinstance(expr, Not):
        return push_negation(expr.operand, not negate)
    if isinstance(expr, Rel):
        if not negate:
            return expr
        return Rel(NEGATED_OP[expr.op], expr.left, expr.right, expr.atom)
    if isinstance(expr, BoolLit):
        return BoolLit(expr.value != negate, expr.atom)
    if isinstance(expr, And):
        left, right = push_negation(expr.left, negate), push_negation(expr.right, negate)
        return Or(left, right) if negate else And(left, right)
    if isinstance(expr, Or):
        left, right = push_negation(expr.left, negate), push_negation(expr.right, negate)
        return And(left, right) if negate else Or(left, right)
    raise TypeError(f"not a condition: {expr!r}")


def negate(expr):
    return push_negation(expr, negate=True)


def has_negation(expr) -> bool:
    if isinstance(expr, Not):
        return True
    if isinstance(expr, (And, Or)):
        return has_negation(expr.left) or has_negation(expr.right)
    return False


@dataclass(frozen=True)
class TestGoal:
    id: int
    node_id: int
    kind: str
    polarity: bool
    expr: object
    atom: int | None = None  # atom index for condition goals

    __test__ = False  # not a pytest class

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "node": self.node_id,
            "kind": self.kind,
            "polarity": "TRUE" if self.polarity else "FALSE",
            "expr_text": str(self.expr),
        }


class GoalSet:
    """Ordered goals with a per-node index."""

    def __init__(self, goals):
        self.goals = list(goals)
        self.by_node = defaultdict(list)
        for g in self.goals:
            self.by_node[g.node_id].append(g)

    def __len__(self):
        return len(self.goals)

    def __iter__(self):
        return iter(self.goals)

    def __getitem__(self, i) -> TestGoal:
        return self.goals[i]

    def find(self, node_id: int, kind: str = DECISION, polarity: bool = True) -> TestGoal:
        for g in self.by_node.get(node_id, ()):
            if g.kind == kind and g.polarity == polarity:
                return g
        # merged away: the surviving goal has the same normalized expression
        for g in self.by_node.get(node_id, ()):
            if g.polarity == polarity:
                return g
        raise KeyError((node_id, kind, polarity))

    def to_list(self) -> list[dict]:
        return [g.to_dict() for g in self.goals]


def extract_goals(model: ProgramModel) -> GoalSet:
    """Expand every decision of ``model`` into its C/D coverage goals."""
    goals = []
    for node in model.decisions:
        candidates = [
            (DECISION, True, push_negation(node.condition), None),
            (DECISION, False, negate(node.condition), None),
        ]
        for atom in node.atoms:
            candidates.append((CONDITION, True, atom, atom.atom))
            candidates.append((CONDITION, False, negate(atom), atom.atom))
        seen = []
        for kind, polarity, expr, atom in candidates:
            if expr in seen:
                continue
            seen.append(expr)
            goals.append(TestGoal(len(goals), node.id, kind, polarity, expr, atom))
    return GoalSet(goals)
