"""Input checking shared by the estimators, the experiment runner and the CLI."""

from __future__ import annotations

import numbers
import os
from pathlib import Path

import numpy as np

from walkgen.parser import load_program, parse_program
from walkgen.syntax import ProgramModel


def check_program(program, name: str | None = None) -> ProgramModel:
    """Resolve ``program`` to a :class:`ProgramModel`.

    Accepts a model, a built-in benchmark name, a path to a ``.wt`` file or
    DSL source text (anything containing a newline or ``var``).
    """
    from walkgen.benchmarks import BENCHMARKS

    if isinstance(program, ProgramModel):
        return program
    if isinstance(program, os.PathLike):
        return load_program(program)
    if not isinstance(program, str):
        raise TypeError(f"expected a program model, benchmark name, path or source, got {type(program).__name__}")
    if program in BENCHMARKS:
        return BENCHMARKS[program].model()
    if "\n" in program or program.lstrip().startswith(("var ", "#")):
        return parse_program(program, name=name or "program")
    path = Path(program)
    if path.is_file():
        return load_program(path)
    known = ", ".join(sorted(BENCHMARKS))
    raise ValueError(f"{program!r} is neither a benchmark ({known}) nor an existing file")


def check_positive_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def check_probability(value, name: str = "p") -> float:
    if isinstance(value, bool) or not isinstance(value, numbers.Real) or not 0 <= value <= 1:
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
    return float(value)


def check_seed(random_state) -> int:
    """Integer seed from ``None`` (0), an int, or a ``numpy`` Generator."""
    if random_state is None:
        return 0
    if isinstance(random_state, np.random.Generator):
        return int(random_state.integers(0, 2**63 - 1))
    if isinstance(random_state, bool) or not isinstance(random_state, numbers.Integral) or random_state < 0:
        raise ValueError(f"random_state must be None, a non-negative int or a Generator, got {random_state!r}")
    return int(random_state)


def check_input_vectors(X, model: ProgramModel) -> list[tuple]:
    """Validate rows of public input values and convert them to raw tuples.

    Each row needs one value per input variable, inside that variable's
    domain and representable at its precision.
    """
    if isinstance(X, np.ndarray):
        if X.ndim == 1:
            X = X.reshape(1, -1)
        rows = X.tolist()
    else:
        rows = [list(row) for row in X]
    n_vars = len(model.variables)
    out = []
    for i, row in enumerate(rows):
        if len(row) != n_vars:
            raise ValueError(f"row {i} has {len(row)} values, the program takes {n_vars}")
        try:
            out.append(tuple(d.to_raw(v) for d, v in zip(model.variables, row)))
        except (ValueError, TypeError, ArithmeticError) as exc:
            raise ValueError(f"row {i}: {exc}") from None
    return out
