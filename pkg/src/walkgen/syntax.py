"""Syntax tree of the ``.wt`` test-program language.

Arithmetic nodes carry their static type (``"int"``, ``"real"`` or ``"num"``
for untyped integer literals) and, for reals, the decimal scale at which
their raw value is held.  Condition trees are built from :class:`Rel` and
:class:`BoolLit` atoms joined by :class:`And`, :class:`Or` and :class:`Not`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Union

INT32_MIN = -(2**31)
INT32_MAX = 2**31 - 1

NEGATED_OP = {
    "==": "!=",
    "!=": "==",
    "<": ">=",
    ">=": "<",
    ">": "<=",
    "<=": ">",
}


@dataclass(frozen=True)
class VariableDomain:
    """An input variable.  ``kind`` is ``"int32"`` or ``"real"``."""

    name: str
    kind: str = "int32"
    min: Decimal | None = None
    max: Decimal | None = None
    decimals: int = 0

    def __post_init__(self):
        if self.kind == "int32":
            return
        if self.kind != "real":
            raise ValueError(f"unknown variable kind {self.kind!r}")
        if self.min is None or self.max is None:
            raise ValueError(f"{self.name}: real domain needs min and max")
        if not 0 <= self.decimals <= 9:
            raise ValueError(f"{self.name}: decimals must be in [0, 9]")
        if self.min >= self.max:
            raise ValueError(f"{self.name}: min must be below max")
        for bound in (self.min, self.max):
            if (bound * self.unit) != int(bound * self.unit):
                raise ValueError(
                    f"{self.name}: bound {bound} is not a multiple of 10^-{self.decimals}"
                )

    @property
    def unit(self) -> int:
        return 10**self.decimals

    @property
    def raw_min(self) -> int:
        if self.kind == "int32":
            return INT32_MIN
        return int(self.min * self.unit)

    @property
    def raw_max(self) -> int:
        if self.kind == "int32":
            return INT32_MAX
        return int(self.max * self.unit)

    @property
    def scale(self) -> int:
        return self.decimals if self.kind == "real" else 0

    def to_raw(self, value) -> int:
        """Scaled-integer form of a domain value; raises on out-of-domain input."""
        if self.kind == "int32":
            if isinstance(value, bool) or int(value) != value:
                raise ValueError(f"{self.name}: {value!r} is not an integer")
            raw = int(value)
        else:
            scaled = Fraction(str(value)) * self.unit
            if scaled != int(scaled):
                raise ValueError(f"{self.name}: {value!r} has more than {self.decimals} decimals")
            raw = int(scaled)
        if not self.raw_min <= raw <= self.raw_max:
            raise ValueError(f"{self.name}: {value!r} outside domain")
        return raw

    def from_raw(self, raw: int):
        if self.kind == "int32":
            return raw
        return Decimal(raw).scaleb(-self.decimals)

    def describe(self) -> str:
        if self.kind == "int32":
            return "int32"
        return f"real({self.min}, {self.max}, {self.decimals})"


# -- arithmetic ---------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    raw: int
    type: str = "num"  # "num" for integer literals, "real" for decimal literals
    scale: int = 0

    def __str__(self):
        if self.type == "real":
            return str(Decimal(self.raw).scaleb(-self.scale))
        return str(self.raw)


@dataclass(frozen=True)
class Var:
    name: str
    type: str = "int"
    scale: int = 0

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Neg:
    operand: "Arith"
    type: str = "int"
    scale: int = 0

    def __str__(self):
        return f"-{_wrap(self.operand)}"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Arith"
    right: "Arith"
    type: str = "int"
    scale: int = 0

    def __str__(self):
        return f"{_wrap(self.left)} {self.op} {_wrap(self.right)}"


Arith = Union[Num, Var, Neg, BinOp]


def _wrap(expr) -> str:
    return f"({expr})" if isinstance(expr, BinOp) else str(expr)


# -- conditions ---------------------------------------------------------------


@dataclass(frozen=True)
class Rel:
    """Atomic relation ``left op right``; ``atom`` indexes it inside its decision."""

    op: str
    left: Arith
    right: Arith
    atom: int = field(default=-1, compare=False)

    def __str__(self):
        return f"{self.left} {self.op} {self.right}"

    @property
    def scale(self) -> int:
        return max(self.left.scale, self.right.scale)


@dataclass(frozen=True)
class BoolLit:
    value: bool
    atom: int = field(default=-1, compare=False)

    def __str__(self):
        return "true" if self.value else "false"


@dataclass(frozen=True)
class And:
    left: "Cond"
    right: "Cond"

    def __str__(self):
        return f"{_cwrap(self.left, Or)} && {_cwrap(self.right, Or)}"


@dataclass(frozen=True)
class Or:
    left: "Cond"
    right: "Cond"

    def __str__(self):
        return f"{_cwrap(self.left, And)} || {_cwrap(self.right, And)}"


@dataclass(frozen=True)
class Not:
    operand: "Cond"

    def __str__(self):
        return f"!({self.operand})"


Cond = Union[Rel, BoolLit, And, Or, Not]


def _cwrap(cond, other) -> str:
    return f"({cond})" if isinstance(cond, other) else str(cond)


def atoms(cond: Cond) -> list:
    """Atomic conditions of ``cond`` in left-to-right order."""
    if isinstance(cond, (Rel, BoolLit)):
        return [cond]
    if isinstance(cond, Not):
        return atoms(cond.operand)
    return atoms(cond.left) + atoms(cond.right)


def evaluate_cond(cond: Cond, truth) -> bool:
    """Evaluate ``cond`` given ``truth(atom) -> bool`` for its leaves."""
    if isinstance(cond, (Rel, BoolLit)):
        return truth(cond)
    if isinstance(cond, Not):
        return not evaluate_cond(cond.operand, truth)
    if isinstance(cond, And):
        return evaluate_cond(cond.left, truth) and evaluate_cond(cond.right, truth)
    return evaluate_cond(cond.left, truth) or evaluate_cond(cond.right, truth)


def compare(op: str, a, b) -> bool:
    if op == "==":
        return a == b
    if op == "!=":
        return a != b
    if op == "<":
        return a < b
    if op == "<=":
        return a <= b
    if op == ">":
        return a > b
    if op == ">=":
        return a >= b
    raise ValueError(f"unknown relation {op!r}")


# -- statements ---------------------------------------------------------------


@dataclass(frozen=True)
class Assign:
    name: str
    expr: Arith
    line: int = 0


@dataclass(frozen=True)
class If:
    cond: Cond
    node_id: int
    then: tuple
    orelse: tuple = ()
    line: int = 0


@dataclass(frozen=True)
class While:
    cond: Cond
    node_id: int
    body: tuple
    line: int = 0


@dataclass(frozen=True)
class Target:
    label: str
    line: int = 0


Stmt = Union[Assign, If, While, Target]


@dataclass(frozen=True)
class DecisionNode:
    id: int
    condition: Cond
    line: int
    column: int
    kind: str  # "if" or "while"

    @property
    def atoms(self) -> list:
        return atoms(self.condition)


@dataclass(frozen=True)
class LocalVar:
    name: str
    type: str  # "int" or "real"
    scale: int = 0


@dataclass(frozen=True)
class ProgramModel:
    """Parsed program: input variables, locals, body and indexed decisions."""

    variables: tuple
    locals: tuple
    body: tuple
    decisions: tuple
    name: str = "program"
    source: str = field(default="", repr=False, compare=False)

    @property
    def variable_names(self) -> list[str]:
        return [v.name for v in self.variables]

    def decision(self, node_id: int) -> DecisionNode:
        return self.decisions[node_id]

    def targets(self) -> list[str]:
        found = []

        def walk(stmts):
            for s in stmts:
                if isinstance(s, Target):
                    found.append(s.label)
                elif isinstance(s, If):
                    walk(s.then)
                    walk(s.orelse)
                elif isinstance(s, While):
                    walk(s.body)

        walk(self.body)
        return found

    def enclosing_decision(self, label: str) -> tuple[int, bool]:
        """Innermost decision and branch polarity guarding ``target label``."""

        def walk(stmts, guard):
            for s in stmts:
                if isinstance(s, Target) and s.label == label:
                    return guard
                if isinstance(s, If):
                    hit = walk(s.then, (s.node_id, True)) or walk(s.orelse, (s.node_id, False))
                    if hit:
                        return hit
                elif isinstance(s, While):
                    hit = walk(s.body, (s.node_id, True))
                    if hit:
                        return hit
            return None

        hit = walk(self.body, None)
        if hit is None:
            raise KeyError(f"no guarded target {label!r}")
        return hit
