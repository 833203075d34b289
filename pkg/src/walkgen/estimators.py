"""scikit-learn style front end.

A generator is fitted to a *program* rather than to a data matrix: ``fit``
runs the search and stores the covering test suite.  Afterwards
``transform`` maps input rows to their per-goal cost matrix, ``predict``
to per-goal coverage flags, and ``score`` gives the fraction of goals that
a set of rows covers jointly.

>>> gen = WalkTestGenerator(random_state=0).fit("tri-int")
>>> gen.coverage_
1.0
>>> gen.score(gen.test_cases_)
1.0
"""

from __future__ import annotations

from decimal import Decimal

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from walkgen.compiler import CompiledProgram
from walkgen.fitness import COMBINATORS, FitnessConfig
from walkgen.goals import extract_goals
from walkgen.interpreter import DEFAULT_LOOP_BUDGET
from walkgen.search import SearchParams, random_test, walktest
from walkgen.validation import (
    check_input_vectors,
    check_positive_int,
    check_probability,
    check_program,
    check_seed,
)


class _GeneratorMixin:
    def _check_fitness_params(self) -> FitnessConfig:
        if self.combinator not in COMBINATORS:
            raise ValueError(f"combinator must be one of {COMBINATORS}, got {self.combinator!r}")
        if not self.k > 0:
            raise ValueError(f"k must be positive, got {self.k!r}")
        check_positive_int(self.loop_budget, "loop_budget")
        return FitnessConfig(float(self.k), self.combinator)

    def _finish_fit(self, model, goals, cfg, report):
        self.model_ = model
        self.goals_ = goals
        self.program_ = CompiledProgram(model, goals, cfg, self.loop_budget)
        self.report_ = report
        self.n_goals_ = len(goals)
        self.n_features_in_ = len(model.variables)
        self.feature_names_in_ = np.array(model.variable_names, dtype=object)
        self.test_cases_ = [tuple(v if isinstance(v, int) else Decimal(v) for v in row) for row in report.test_cases]
        self.covered_goals_ = np.array(report.covered, dtype=int)
        self.coverage_ = report.coverage
        self.n_evaluations_ = report.evaluations
        return self

    def transform(self, X) -> np.ndarray:
        """Cost of every goal for every row; ``inf`` where the goal's decision is not reached."""
        check_is_fitted(self, "program_")
        rows = check_input_vectors(X, self.model_)
        out = np.empty((len(rows), self.n_goals_))
        for i, raw in enumerate(rows):
            out[i] = self.program_.costs(raw)
        return out

    def predict(self, X) -> np.ndarray:
        """Boolean matrix, ``True`` where a row covers a goal."""
        check_is_fitted(self, "program_")
        rows = check_input_vectors(X, self.model_)
        out = np.zeros((len(rows), self.n_goals_), dtype=bool)
        for i, raw in enumerate(rows):
            mask = self.program_.covered_mask(raw)
            for g in range(self.n_goals_):
                out[i, g] = bool(mask >> g & 1)
        return out

    def score(self, X=None, y=None) -> float:
        """Fraction of goals covered by at least one row of ``X`` (default: the fitted suite)."""
        check_is_fitted(self, "program_")
        if X is None:
            return self.coverage_
        if len(X) == 0:
            return 0.0
        return float(self.predict(X).any(axis=0).mean()) if self.n_goals_ else 1.0


class WalkTestGenerator(_GeneratorMixin, BaseEstimator):
    """Random-walk test generator for condition/decision coverage.

    Parameters
    ----------
    r, t : restarts and random inputs used to seed the pool at each restart.
    m1, m2 : walk starts per operator call and flip steps per start.
    p : chance of taking a random neighbour when no neighbour improves.
    q : pooled inputs kept per goal.
    k : constant added to every unsatisfied relation's distance.
    combinator : ``"corrected"`` (sum over ``&&``, min over ``||``) or ``"paper"``.
    loop_budget : maximum loop iterations per execution.
    random_state : seed; the same seed replays the same run.
    """

    def __init__(
        self,
        r=100,
        t=100,
        m1=5,
        m2=5,
        p=2 / 3,
        q=40,
        k=1.0,
        combinator="corrected",
        loop_budget=DEFAULT_LOOP_BUDGET,
        random_state=None,
    ):
        self.r = r
        self.t = t
        self.m1 = m1
        self.m2 = m2
        self.p = p
        self.q = q
        self.k = k
        self.combinator = combinator
        self.loop_budget = loop_budget
        self.random_state = random_state

    def search_params(self) -> SearchParams:
        for name in ("r", "t", "m1", "m2", "q"):
            check_positive_int(getattr(self, name), name)
        check_probability(self.p)
        self._check_fitness_params()
        return SearchParams(
            r=int(self.r),
            t=int(self.t),
            m1=int(self.m1),
            m2=int(self.m2),
            p=float(self.p),
            q=int(self.q),
            seed=check_seed(self.random_state),
            loop_budget=int(self.loop_budget),
            k=float(self.k),
            combinator=self.combinator,
        )

    def fit(self, program, y=None):
        """Search test cases for ``program`` (model, benchmark name, path or source)."""
        params = self.search_params()
        model = check_program(program)
        goals = extract_goals(model)
        report = walktest(model, goals, params)
        return self._finish_fit(model, goals, params.fitness_config(), report)


class RandomTestGenerator(_GeneratorMixin, BaseEstimator):
    """Uniform random testing, the baseline for :class:`WalkTestGenerator`."""

    def __init__(
        self,
        n_cases=10_000_000,
        k=1.0,
        combinator="corrected",
        loop_budget=DEFAULT_LOOP_BUDGET,
        batch_size=65_536,
        random_state=None,
    ):
        self.n_cases = n_cases
        self.k = k
        self.combinator = combinator
        self.loop_budget = loop_budget
        self.batch_size = batch_size
        self.random_state = random_state

    def fit(self, program, y=None):
        n = check_positive_int(self.n_cases, "n_cases")
        batch = check_positive_int(self.batch_size, "batch_size")
        cfg = self._check_fitness_params()
        model = check_program(program)
        goals = extract_goals(model)
        report = random_test(
            model, goals, n=n, seed=check_seed(self.random_state), cfg=cfg,
            loop_budget=int(self.loop_budget), batch=batch,
        )
        return self._finish_fit(model, goals, cfg, report)
