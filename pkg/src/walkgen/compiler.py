"""Compile a program model plus its goal set into plain Python functions.

The search evaluates many thousands of candidate inputs, so instead of
walking the tree and building a trace per run, the program is translated to
Python source in which every decision computes its atom distances inline and
folds each goal's cost into a ``best`` list.  Arithmetic works on raw scaled
integers, with the same truncation rules as :mod:`walkgen.interpreter`.
"""

from __future__ import annotations

from walkgen.fitness import DEFAULT_CONFIG, MAX_COST, FitnessConfig
from walkgen.goals import GoalSet, extract_goals
from walkgen.interpreter import DEFAULT_LOOP_BUDGET, trunc_div, trunc_mod
from walkgen.syntax import NEGATED_OP, And, Assign, BinOp, BoolLit, If, Neg, Not, Num, ProgramModel, Rel, Target, Var, While

STATUS_NORMAL = 0
STATUS_RUNTIME_ERROR = 1
STATUS_LOOP_BUDGET = 2


class _BudgetExceeded(Exception):
    pass


def _idiv(a, b):
    return trunc_div(a, b)


def _imod(a, b):
    return trunc_mod(a, b)


def _rdiv(a, b, mult):
    if b == 0:
        raise ZeroDivisionError
    return trunc_div(a * mult, b)


def _rescale_down(a, div):
    return trunc_div(a, div)


class _Emitter:
    def __init__(self, model: ProgramModel, goals: GoalSet, cfg: FitnessConfig, mode: str):
        self.model = model
        self.goals = goals
        self.cfg = cfg
        self.mode = mode
        self.lines: list[str] = []
        self.scales = {v.name: v.scale for v in model.variables}
        self.scales.update({v.name: v.scale for v in model.locals})
        self.kinds = {v.name: ("real" if v.kind == "real" else "int") for v in model.variables}
        self.kinds.update({v.name: v.type for v in model.locals})

    def emit(self, depth, text):
        self.lines.append("    " * depth + text)

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def align(code, scale, target):
        if target == scale:
            return code
        return f"({code} * {10 ** (target - scale)})"

    def arith(self, expr) -> tuple[str, int]:
        if isinstance(expr, Num):
            return repr(expr.raw), expr.scale
        if isinstance(expr, Var):
            return f"v_{expr.name}", expr.scale
        if isinstance(expr, Neg):
            code, scale = self.arith(expr.operand)
            return f"(-{code})", scale
        if isinstance(expr, BinOp):
            lc, ls = self.arith(expr.left)
            rc, rs = self.arith(expr.right)
            if expr.op in ("+", "-"):
                s = max(ls, rs)
                return f"({self.align(lc, ls, s)} {expr.op} {self.align(rc, rs, s)})", s
            if expr.op == "*":
                return f"({lc} * {rc})", ls + rs
            if expr.op == "%":
                return f"_imod({lc}, {rc})", 0
            if expr.type == "real":
                s = expr.scale
                return f"_rdiv({lc}, {rc}, {10 ** (rs + s - ls)})", s
            return f"_idiv({lc}, {rc})", 0
        raise TypeError(f"not an arithmetic node: {expr!r}")

    # -- decisions ----------------------------------------------------------

    def dist_code(self, op, i, scale):
        left, right = f"_l{i}", f"_r{i}"
        k = repr(float(self.cfg.k))

        def unit(code):
            return f"({code}) / {10 ** scale}" if scale else code

        if op == "==":
            return f"abs({unit(f'{left} - {right}')}) + {k}"
        if op == "!=":
            return k
        if op in ("<", "<="):
            return f"{unit(f'{left} - {right}')} + {k}"
        return f"{unit(f'{right} - {left}')} + {k}"

    def cost_code(self, expr, atoms):
        if isinstance(expr, Rel):
            own = atoms[expr.atom].op == expr.op
            return f"_p{expr.atom}" if own else f"_n{expr.atom}"
        if isinstance(expr, BoolLit):
            return "0.0" if expr.value else repr(float(self.cfg.k))
        parts = [self.cost_code(e, atoms) for e in _flatten(expr)]
        summed = isinstance(expr, And) == (self.cfg.combinator == "corrected")
        if summed:
            return "(" + " + ".join(parts) + ")"
        return "min(" + ", ".join(parts) + ")"

    def truth_code(self, expr, atoms):
        if isinstance(expr, Rel):
            own = atoms[expr.atom].op == expr.op
            return f"_t{expr.atom}" if own else f"(not _t{expr.atom})"
        if isinstance(expr, BoolLit):
            return "True" if expr.value else "False"
        if isinstance(expr, Not):
            return f"(not {self.truth_code(expr.operand, atoms)})"
        joiner = " and " if isinstance(expr, And) else " or "
        return "(" + joiner.join(self.truth_code(e, atoms) for e in _flatten(expr)) + ")"

    def decision(self, depth, node_id, cond):
        """Emit operand evaluation, goal bookkeeping and ``_o = outcome``."""
        node = self.model.decisions[node_id]
        atoms = node.atoms
        for i, atom in enumerate(atoms):
            if isinstance(atom, BoolLit):
                self.emit(depth, f"_t{i} = {atom.value!r}")
                continue
            lc, ls = self.arith(atom.left)
            rc, rs = self.arith(atom.right)
            s = max(ls, rs)
            self.emit(depth, f"_l{i} = {self.align(lc, ls, s)}")
            self.emit(depth, f"_r{i} = {self.align(rc, rs, s)}")
        for i, atom in enumerate(atoms):
            if isinstance(atom, Rel):
                self.emit(depth, f"_t{i} = _l{i} {atom.op} _r{i}")
        goals = self.goals.by_node.get(node_id, [])
        if self.mode == "cost":
            k = repr(float(self.cfg.k))
            for i, atom in enumerate(atoms):
                if isinstance(atom, BoolLit):
                    self.emit(depth, f"_p{i} = 0.0 if _t{i} else {k}")
                    self.emit(depth, f"_n{i} = {k} if _t{i} else 0.0")
                    continue
                s = atom.scale
                neg = NEGATED_OP[atom.op]
                self.emit(depth, f"_p{i} = 0.0 if _t{i} else {self.dist_code(atom.op, i, s)}")
                self.emit(depth, f"_n{i} = {self.dist_code(neg, i, s)} if _t{i} else 0.0")
            for g in goals:
                self.emit(depth, f"_c = {self.cost_code(g.expr, atoms)}")
                self.emit(depth, f"if _c < best[{g.id}]: best[{g.id}] = _c")
        else:
            for g in goals:
                self.emit(depth, f"if {self.truth_code(g.expr, atoms)}: _m |= {1 << g.id}")
        self.emit(depth, f"_o = {self.truth_code(cond, atoms)}")

    # -- statements ---------------------------------------------------------

    def block(self, depth, stmts):
        if not stmts:
            self.emit(depth, "pass")
        for stmt in stmts:
            self.stmt(depth, stmt)

    def stmt(self, depth, stmt):
        if isinstance(stmt, Assign):
            code, scale = self.arith(stmt.expr)
            if self.kinds[stmt.name] == "real":
                target = self.scales[stmt.name]
                if scale <= target:
                    code = self.align(code, scale, target)
                else:
                    code = f"_rescale_down({code}, {10 ** (scale - target)})"
            self.emit(depth, f"v_{stmt.name} = {code}")
        elif isinstance(stmt, If):
            self.decision(depth, stmt.node_id, stmt.cond)
            self.emit(depth, "if _o:")
            self.block(depth + 1, stmt.then)
            if stmt.orelse:
                self.emit(depth, "else:")
                self.block(depth + 1, stmt.orelse)
        elif isinstance(stmt, While):
            self.emit(depth, "while True:")
            self.decision(depth + 1, stmt.node_id, stmt.cond)
            self.emit(depth + 1, "if not _o: break")
            self.emit(depth + 1, "_it += 1")
            self.emit(depth + 1, "if _it > budget: raise _BudgetExceeded")
            self.block(depth + 1, stmt.body)
        elif isinstance(stmt, Target):
            self.emit(depth, "pass")

    def build(self) -> str:
        params = ", ".join(f"v_{v.name}" for v in self.model.variables)
        if self.mode == "cost":
            self.emit(0, f"def _run(best, budget, {params}):")
            self._prologue(1)
            self.emit(1, "try:")
            self.block(2, self.model.body)
            self.emit(1, "except ZeroDivisionError:")
            self.emit(2, f"return {STATUS_RUNTIME_ERROR}")
            self.emit(1, "except _BudgetExceeded:")
            self.emit(2, f"return {STATUS_LOOP_BUDGET}")
            self.emit(1, f"return {STATUS_NORMAL}")
        else:
            # covers a whole batch of inputs per call; reports inputs adding new goals
            self.emit(0, "def _run(budget, acc, columns):")
            self.emit(1, "out = []")
            self.emit(1, "for _k, _in in enumerate(zip(*columns)):")
            self.emit(2, f"{params}, = _in")
            self._prologue(2)
            self.emit(2, "try:")
            self.block(3, self.model.body)
            self.emit(2, "except (ZeroDivisionError, _BudgetExceeded):")
            self.emit(3, "pass")
            self.emit(2, "if _m & ~acc:")
            self.emit(3, "out.append((_k, _m & ~acc, _in))")
            self.emit(3, "acc |= _m")
            self.emit(1, "return out")
        return "\n".join(self.lines) + "\n"

    def _prologue(self, depth):
        for local in self.model.locals:
            self.emit(depth, f"v_{local.name} = 0")
        self.emit(depth, "_it = 0")
        if self.mode == "cover":
            self.emit(depth, "_m = 0")


def _flatten(expr):
    """Operands of a same-connective chain, left to right."""
    kind = type(expr)
    out = []
    for side in (expr.left, expr.right):
        if type(side) is kind:
            out.extend(_flatten(side))
        else:
            out.append(side)
    return out


_NAMESPACE = {
    "_idiv": _idiv,
    "_imod": _imod,
    "_rdiv": _rdiv,
    "_rescale_down": _rescale_down,
    "_BudgetExceeded": _BudgetExceeded,
}


def _compile(source: str, name: str):
    namespace = dict(_NAMESPACE)
    exec(compile(source, f"<walkgen:{name}>", "exec"), namespace)
    return namespace["_run"]


class CompiledProgram:
    """Fast evaluator of every goal cost for raw scaled-integer inputs."""

    def __init__(
        self,
        model: ProgramModel,
        goals: GoalSet | None = None,
        cfg: FitnessConfig = DEFAULT_CONFIG,
        loop_budget: int = DEFAULT_LOOP_BUDGET,
    ):
        self.model = model
        self.goals = goals if goals is not None else extract_goals(model)
        self.cfg = cfg
        self.loop_budget = loop_budget
        self.n_goals = len(self.goals)
        self.cost_source = _Emitter(model, self.goals, cfg, "cost").build()
        self.cover_source = _Emitter(model, self.goals, cfg, "cover").build()
        self._cost_fn = _compile(self.cost_source, model.name)
        self._cover_fn = _compile(self.cover_source, model.name)

    def costs(self, raw) -> list[float]:
        """Per-goal cost; ``MAX_COST`` for goals whose decision was not reached."""
        best = [MAX_COST] * self.n_goals
        self._cost_fn(best, self.loop_budget, *raw)
        return best

    def costs_with_status(self, raw) -> tuple[list[float], int]:
        best = [MAX_COST] * self.n_goals
        status = self._cost_fn(best, self.loop_budget, *raw)
        return best, status

    def covered_mask(self, raw) -> int:
        """Bitmask of goals satisfied at some reached occurrence."""
        hits = self._cover_fn(self.loop_budget, 0, [[v] for v in raw])
        return hits[0][1] if hits else 0

    def cover_batch(self, columns, acc: int = 0) -> list[tuple]:
        """Run one input per row of ``columns`` (one list per variable).

        Returns ``(row, new_goal_mask, input)`` for each input that covers a
        goal absent from ``acc`` and from earlier rows.
        """
        return self._cover_fn(self.loop_budget, acc, columns)
