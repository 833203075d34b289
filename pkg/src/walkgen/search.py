"""Random-walk test generation and the random-test baseline.

``walktest`` restarts up to ``r`` times.  Each restart seeds a fresh
per-goal solution pool with ``t`` random inputs, then makes one walk per
goal still unsolved at that point.  Before each walk the unsolved goals are
re-sorted by pooled cost and :func:`select_goal` picks the target.  Every
evaluation updates the pool for all goals, so goals other than the current
target get improved or covered along the way.

Randomness comes from numpy's PCG64.  The run seed feeds a
``SeedSequence`` whose ``spawn`` gives one independent child stream per
restart, so a (program, params, seed) triple always replays the same run.
"""

from __future__ import annotations

import bisect
import csv
import io
import json
import logging
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from walkgen.compiler import CompiledProgram
from walkgen.encoding import CodecLayout
from walkgen.fitness import MAX_COST, FitnessConfig
from walkgen.goals import GoalSet, extract_goals
from walkgen.interpreter import DEFAULT_LOOP_BUDGET

logger = logging.getLogger(__name__)

RNG_NAME = "numpy.PCG64; SeedSequence(seed).spawn(r), one child stream per restart"


@dataclass
class SearchParams:
    r: int = 100
    t: int = 100
    m1: int = 5
    m2: int = 5
    p: float = 2 / 3
    q: int = 40
    seed: int = 0
    loop_budget: int = DEFAULT_LOOP_BUDGET
    k: float = 1.0
    combinator: str = "corrected"

    def __post_init__(self):
        for name in ("r", "t", "m1", "m2", "q", "loop_budget"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        if not 0 <= self.p <= 1:
            raise ValueError(f"p must lie in [0, 1], got {self.p!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, (int, np.integer)) or self.seed < 0:
            raise ValueError(f"seed must be a non-negative integer, got {self.seed!r}")
        self.fitness_config()

    def fitness_config(self) -> FitnessConfig:
        return FitnessConfig(self.k, self.combinator)


class SolutionPool:
    """Per-goal archive of the ``q`` lowest-cost inputs seen so far.

    Entries of a goal are kept sorted by cost (ties by arrival); a full
    store only admits a strictly better newcomer, which evicts the worst.
    """

    def __init__(self, n_goals: int, q: int = 40):
        if q < 1:
            raise ValueError("pool capacity must be positive")
        self.q = q
        self.n_goals = n_goals
        self.entries: list[list] = [[] for _ in range(n_goals)]
        self._members: list[set] = [set() for _ in range(n_goals)]
        self._seq = 0

    def insert(self, goal: int, raw: tuple, cost: float) -> bool:
        if cost == MAX_COST:
            return False
        store = self.entries[goal]
        if len(store) >= self.q and cost >= store[-1][0]:
            return False
        members = self._members[goal]
        if raw in members:
            return False
        if len(store) >= self.q:
            _, _, evicted = store.pop()
            members.discard(evicted)
        self._seq += 1
        bisect.insort(store, (cost, self._seq, raw))
        members.add(raw)
        return True

    def update(self, raw: tuple, costs, goals) -> list[int]:
        """Offer ``raw`` to every goal in ``goals``; return those it covers."""
        newly = []
        q = self.q
        for g in goals:
            c = costs[g]
            if c == MAX_COST:
                continue
            if c == 0:
                newly.append(g)
            store = self.entries[g]
            if len(store) >= q and c >= store[-1][0]:
                continue
            self.insert(g, raw, c)
        return newly

    def weight(self, goal: int) -> float:
        store = self.entries[goal]
        return store[0][0] if store else MAX_COST

    def count(self, goal: int) -> int:
        return len(self.entries[goal])

    def best(self, goal: int):
        store = self.entries[goal]
        return (store[0][0], store[0][2]) if store else (MAX_COST, None)


def sort_goals(pool: SolutionPool, unsolved) -> list[int]:
    """Ascending weight, then more pooled entries first, then goal id."""
    return sorted(unsolved, key=lambda g: (pool.weight(g), -pool.count(g), g))


def select_goal(pool: SolutionPool, order, i: int) -> int:
    """Goal for the ``i``-th walk of a restart, given the sorted unsolved goals.

    Walks go round-robin over the goals that have a pooled solution, in
    sorted order.  Always taking the head would let a goal stuck on a flat
    cost (a ``!=`` atom scores ``K`` everywhere it fails) absorb every walk.
    With nothing pooled the head is walked from a random start.
    """
    reachable = [g for g in order if pool.weight(g) != MAX_COST]
    if not reachable:
        return order[0]
    return reachable[i % len(reachable)]


def choose_move(neighbor_costs, cost: float, p: float, rng) -> int:
    """Index of the next point among the neighbours.

    An improving step goes to a uniformly chosen best neighbour.  Otherwise,
    with probability ``p`` any neighbour is taken uniformly, else a best one.
    """
    best = min(neighbor_costs)
    optima = [i for i, c in enumerate(neighbor_costs) if c == best]
    if best < cost or rng.random() >= p:
        return optima[int(rng.integers(len(optima)))]
    return int(rng.integers(len(neighbor_costs)))


def random_raw_input(layout_domains, rng) -> tuple:
    return tuple(int(rng.integers(lo, hi, endpoint=True)) for lo, hi in layout_domains)


@dataclass
class SearchReport:
    algorithm: str
    program: str
    n_goals: int
    goals: list  # per-goal dicts: id, node, kind, polarity, expr_text, covered, best_cost, test_case
    test_cases: list  # covering input vectors, JSON-ready values
    timeline: list  # [evaluations, covered] at each coverage increase
    evaluations: int
    restarts: int
    params: dict
    seed: int
    rng: str = RNG_NAME
    elapsed: list = field(default_factory=list)  # wall-clock seconds, parallel to timeline
    wall_time: float = 0.0

    @property
    def covered(self) -> list[int]:
        return [g["id"] for g in self.goals if g["covered"]]

    @property
    def coverage(self) -> float:
        return len(self.covered) / self.n_goals if self.n_goals else 1.0

    @property
    def uncovered(self) -> list[int]:
        return [g["id"] for g in self.goals if not g["covered"]]

    def evaluations_to_full_coverage(self) -> int | None:
        if self.coverage < 1:
            return None
        return self.timeline[-1][0]

    def to_dict(self, include_timing: bool = False) -> dict:
        d = asdict(self)
        d.pop("elapsed")
        d.pop("wall_time")
        d["coverage"] = self.coverage
        d["covered_count"] = len(self.covered)
        if include_timing:
            d["elapsed"] = self.elapsed
            d["wall_time"] = self.wall_time
        return d

    def to_json(self, include_timing: bool = False) -> str:
        """JSON text; without timing it is byte-identical across replays."""
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True)

    def timeline_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["elapsed_ms", "evaluations", "covered", "coverage_pct"])
        for (evals, covered), secs in zip(self.timeline, self.elapsed):
            pct = 100.0 * covered / self.n_goals if self.n_goals else 100.0
            writer.writerow([f"{secs * 1000:.3f}", evals, covered, f"{pct:.4f}"])
        return buf.getvalue()


def _json_value(v):
    if isinstance(v, int):
        return v
    return str(v)


class _Run:
    """Mutable state of one search: coverage, test cases, counters."""

    def __init__(self, model, goals: GoalSet, program: CompiledProgram):
        self.model = model
        self.goals = goals
        self.program = program
        self.n = len(goals)
        self.covered: dict[int, int] = {}  # goal -> index into test_cases
        self.test_cases: list[tuple] = []
        self._case_index: dict[tuple, int] = {}
        self.best = [MAX_COST] * self.n
        self.evaluations = 0
        self.timeline = [(0, 0)]
        self.start = time.perf_counter()
        self.elapsed = [0.0]
        self.unsolved = list(range(self.n))

    def record(self, raw: tuple, newly) -> None:
        index = self._case_index.get(raw)
        if index is None:
            index = len(self.test_cases)
            self.test_cases.append(raw)
            self._case_index[raw] = index
        for g in newly:
            if g not in self.covered:
                self.covered[g] = index
                self.best[g] = 0.0
        self.unsolved = [g for g in self.unsolved if g not in self.covered]
        self.timeline.append((self.evaluations, len(self.covered)))
        self.elapsed.append(time.perf_counter() - self.start)

    def evaluate(self, raw: tuple, pool: SolutionPool):
        costs = self.program.costs(raw)
        self.evaluations += 1
        best = self.best
        for g in self.unsolved:
            if costs[g] < best[g]:
                best[g] = costs[g]
        newly = pool.update(raw, costs, self.unsolved)
        if newly:
            self.record(raw, newly)
        return costs

    def report(self, algorithm: str, params: dict, seed: int, restarts: int, rng: str = RNG_NAME) -> SearchReport:
        goals = []
        for g in self.goals:
            d = g.to_dict()
            d["covered"] = g.id in self.covered
            d["best_cost"] = None if self.best[g.id] == MAX_COST else self.best[g.id]
            d["test_case"] = self.covered.get(g.id)
            goals.append(d)
        cases = [
            [_json_value(dom.from_raw(r)) for dom, r in zip(self.model.variables, raw)]
            for raw in self.test_cases
        ]
        return SearchReport(
            algorithm=algorithm,
            program=self.model.name,
            n_goals=self.n,
            goals=goals,
            test_cases=cases,
            timeline=[list(p) for p in self.timeline],
            evaluations=self.evaluations,
            restarts=restarts,
            params=params,
            seed=seed,
            rng=rng,
            elapsed=self.elapsed,
            wall_time=time.perf_counter() - self.start,
        )


class WalkSearch:
    """One WalkTest run over a compiled program."""

    def __init__(self, model, goals: GoalSet, params: SearchParams, program: CompiledProgram | None = None):
        self.model = model
        self.goals = goals
        self.params = params
        self.program = program or CompiledProgram(model, goals, params.fitness_config(), params.loop_budget)
        self.layout = CodecLayout(model.variables)
        self.domains = [(v.raw_min, v.raw_max) for v in model.variables]
        self.flips = self.layout.flip_positions()
        self.state = _Run(model, goals, self.program)
        self.pool = SolutionPool(len(goals), params.q)
        self.walks = 0

    def random_input(self, rng) -> tuple:
        return random_raw_input(self.domains, rng)

    def seed_pool(self, rng) -> None:
        for _ in range(self.params.t):
            self.state.evaluate(self.random_input(rng), self.pool)

    def random_walk(self, goal: int, rng) -> None:
        """Random-walk operator on one goal; the pool is updated in place."""
        state, pool, layout = self.state, self.pool, self.layout
        params = self.params
        self.walks += 1
        for _ in range(params.m1):
            if goal in state.covered:
                return
            store = pool.entries[goal]
            if store:
                cost, _, raw = store[int(rng.integers(len(store)))]
            else:
                raw = self.random_input(rng)
                cost = state.evaluate(raw, pool)[goal]
            grays = [layout.encode_field(j, v) for j, v in enumerate(raw)]
            current = list(raw)
            for _ in range(params.m2):
                if goal in state.covered:
                    break
                neighbor_costs = []
                moves = []
                for j, mask in self.flips:
                    g = grays[j] ^ mask
                    candidate = current.copy()
                    candidate[j] = layout.decode_field(j, g)
                    candidate = tuple(candidate)
                    neighbor_costs.append(state.evaluate(candidate, pool)[goal])
                    moves.append((j, g, candidate))
                pick = choose_move(neighbor_costs, cost, params.p, rng)
                j, g, candidate = moves[pick]
                grays[j] = g
                current = list(candidate)
                cost = neighbor_costs[pick]

    def run(self) -> SearchReport:
        params = self.params
        state = self.state
        streams = np.random.SeedSequence(params.seed).spawn(params.r)
        restarts = 0
        while len(state.covered) < state.n and restarts < params.r:
            rng = np.random.Generator(np.random.PCG64(streams[restarts]))
            self.pool = SolutionPool(state.n, params.q)
            self.seed_pool(rng)
            budget = len(state.unsolved)
            i = 0
            while state.unsolved and i < budget:
                order = sort_goals(self.pool, state.unsolved)
                self.random_walk(select_goal(self.pool, order, i), rng)
                i += 1
            restarts += 1
            logger.debug("restart %d: %d/%d covered", restarts, len(state.covered), state.n)
        return state.report("walktest", asdict(params), params.seed, restarts)


def walktest(model, goals: GoalSet | None = None, params: SearchParams | None = None) -> SearchReport:
    """Generate C/D-covering test cases for ``model`` by random walk."""
    params = params or SearchParams()
    goals = goals if goals is not None else extract_goals(model)
    return WalkSearch(model, goals, params).run()


def random_test(
    model,
    goals: GoalSet | None = None,
    n: int = 10_000_000,
    seed: int = 0,
    cfg: FitnessConfig | None = None,
    loop_budget: int = DEFAULT_LOOP_BUDGET,
    batch: int = 65_536,
) -> SearchReport:
    """Execute ``n`` uniform random inputs and record which goals they cover."""
    if n < 1:
        raise ValueError("n must be at least 1")
    goals = goals if goals is not None else extract_goals(model)
    cfg = cfg or FitnessConfig()
    program = CompiledProgram(model, goals, cfg, loop_budget)
    state = _Run(model, goals, program)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    domains = [(v.raw_min, v.raw_max) for v in model.variables]
    full = (1 << len(goals)) - 1
    mask = 0
    done = 0
    while done < n and mask != full:
        size = min(batch, n - done)
        columns = [rng.integers(lo, hi, size=size, endpoint=True).tolist() for lo, hi in domains]
        for offset, newly_mask, raw in program.cover_batch(columns, mask):
            state.evaluations = done + offset + 1
            mask |= newly_mask
            state.record(raw, [g for g in range(len(goals)) if newly_mask >> g & 1])
        done += size
        state.evaluations = done
    if mask == full and state.timeline[-1][0]:
        # a sequential run would have stopped at the input completing coverage
        state.evaluations = state.timeline[-1][0]
    params = {"n": n, "loop_budget": loop_budget, "k": cfg.k, "combinator": cfg.combinator}
    return state.report("random", params, seed, 0, rng="numpy.PCG64; SeedSequence(seed), single stream")
