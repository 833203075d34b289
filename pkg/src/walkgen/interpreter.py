"""Tree-walking reference interpreter producing execution traces.

Reals are held as exact :class:`~fractions.Fraction` values.  Division of
reals and assignment into a real variable truncate toward zero at the
destination precision, which keeps results identical to the scaled-integer
arithmetic of :mod:`walkgen.compiler`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from walkgen.syntax import (
    Assign,
    BinOp,
    BoolLit,
    If,
    Neg,
    Num,
    ProgramModel,
    Rel,
    Target,
    Var,
    While,
    compare,
    evaluate_cond,
)

NORMAL = "normal"
RUNTIME_ERROR = "runtime-error"
LOOP_BUDGET_EXCEEDED = "loop-budget-exceeded"

DEFAULT_LOOP_BUDGET = 1_000_000


@dataclass(frozen=True)
class Occurrence:
    """One evaluation of a decision: operand snapshot per atom and the outcome."""

    node_id: int
    operands: tuple  # per atom: (left, right) for relations, (value,) for literals
    outcome: bool

    def atom_truth(self, atom) -> bool:
        if isinstance(atom, BoolLit):
            return atom.value
        left, right = self.operands[atom.atom]
        return compare(atom.op, left, right)


@dataclass
class ExecutionTrace:
    occurrences: list = field(default_factory=list)
    status: str = NORMAL
    targets: list = field(default_factory=list)
    env: dict = field(default_factory=dict, compare=False)  # variable values when execution stopped

    def at(self, node_id: int) -> list:
        return [o for o in self.occurrences if o.node_id == node_id]

    def reached(self, node_id: int) -> bool:
        return any(o.node_id == node_id for o in self.occurrences)


class _Abort(Exception):
    def __init__(self, status):
        self.status = status


def trunc_div(a: int, b: int) -> int:
    """Integer division rounding toward zero."""
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


def trunc_mod(a: int, b: int) -> int:
    """Remainder with the sign of the dividend."""
    return a - b * trunc_div(a, b)


def _truncate(value: Fraction, scale: int) -> Fraction:
    unit = 10**scale
    scaled = value * unit
    return Fraction(trunc_div(scaled.numerator, scaled.denominator), unit)


class Interpreter:
    def __init__(self, model: ProgramModel, loop_budget: int = DEFAULT_LOOP_BUDGET):
        if loop_budget < 1:
            raise ValueError("loop_budget must be positive")
        self.model = model
        self.loop_budget = loop_budget
        self._scales = {v.name: v.scale for v in model.variables}
        self._scales.update({v.name: v.scale for v in model.locals})
        self._kinds = {v.name: ("real" if v.kind == "real" else "int") for v in model.variables}
        self._kinds.update({v.name: v.type for v in model.locals})

    def run(self, raw_input) -> ExecutionTrace:
        """Execute on an input given as scaled integers (one per variable)."""
        env = {}
        for domain, raw in zip(self.model.variables, raw_input):
            env[domain.name] = Fraction(raw, domain.unit) if domain.kind == "real" else raw
        for local in self.model.locals:
            env[local.name] = Fraction(0) if local.type == "real" else 0
        trace = ExecutionTrace(env=env)
        self._env = env
        self._trace = trace
        self._iterations = 0
        try:
            self._block(self.model.body)
        except _Abort as abort:
            trace.status = abort.status
        return trace

    def _block(self, stmts):
        for stmt in stmts:
            self._stmt(stmt)

    def _stmt(self, stmt):
        if isinstance(stmt, Assign):
            value = self._arith(stmt.expr)
            if self._kinds[stmt.name] == "real":
                value = _truncate(Fraction(value), self._scales[stmt.name])
            self._env[stmt.name] = value
        elif isinstance(stmt, If):
            if self._decide(stmt.node_id, stmt.cond):
                self._block(stmt.then)
            else:
                self._block(stmt.orelse)
        elif isinstance(stmt, While):
            while self._decide(stmt.node_id, stmt.cond):
                self._iterations += 1
                if self._iterations > self.loop_budget:
                    raise _Abort(LOOP_BUDGET_EXCEEDED)
                self._block(stmt.body)
        elif isinstance(stmt, Target):
            self._trace.targets.append(stmt.label)

    def _decide(self, node_id, cond) -> bool:
        decision = self.model.decisions[node_id]
        snapshot = []
        for atom in decision.atoms:
            if isinstance(atom, BoolLit):
                snapshot.append((atom.value,))
            else:
                snapshot.append((self._arith(atom.left), self._arith(atom.right)))
        snapshot = tuple(snapshot)

        def truth(atom):
            values = snapshot[atom.atom]
            if isinstance(atom, BoolLit):
                return values[0]
            return compare(atom.op, values[0], values[1])

        outcome = evaluate_cond(cond, truth)
        self._trace.occurrences.append(Occurrence(node_id, snapshot, outcome))
        return outcome

    def _arith(self, expr):
        if isinstance(expr, Num):
            return Fraction(expr.raw, 10**expr.scale) if expr.type == "real" else expr.raw
        if isinstance(expr, Var):
            return self._env[expr.name]
        if isinstance(expr, Neg):
            return -self._arith(expr.operand)
        if isinstance(expr, BinOp):
            a = self._arith(expr.left)
            b = self._arith(expr.right)
            if expr.op == "+":
                return a + b
            if expr.op == "-":
                return a - b
            if expr.op == "*":
                return a * b
            if b == 0:
                raise _Abort(RUNTIME_ERROR)
            if expr.op == "%":
                return trunc_mod(a, b)
            if expr.type == "real":
                return _truncate(Fraction(a) / b, expr.scale)
            return trunc_div(a, b)
        raise TypeError(f"not an arithmetic node: {expr!r}")


def execute(model: ProgramModel, values, loop_budget: int = DEFAULT_LOOP_BUDGET) -> ExecutionTrace:
    """Run ``model`` on an input vector (one in-domain value per variable)."""
    if len(values) != len(model.variables):
        raise ValueError(f"expected {len(model.variables)} inputs, got {len(values)}")
    raw = [d.to_raw(v) for d, v in zip(model.variables, values)]
    return Interpreter(model, loop_budget).run(raw)
