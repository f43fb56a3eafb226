"""Threshold cascade execution: synchronous, asynchronous, irreversible.

A vertex with positive indegree is activated when at least a rho fraction of
its in-neighbors are active and deactivated otherwise; zero-indegree vertices
never change state. The fraction test is exact: with rho = a/b the engine
compares b*count >= a*d_in in integer arithmetic, so threshold boundaries are
never misclassified by floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .graph import Graph, VertexSet
from .rng import RngSeed

REVERSIBLE_SYNC = "reversible-sync"
REVERSIBLE_ASYNC = "reversible-async"
IRREVERSIBLE = "irreversible"
MODES = (REVERSIBLE_SYNC, REVERSIBLE_ASYNC, IRREVERSIBLE)

SCHEDULER_POLICIES = ("round-robin", "uniform-random", "greedy-deactivate", "full-sweep")


def as_rho(value) -> Fraction:
    """Coerce an exact rational threshold in (0, 1]; floats are rejected."""
    if isinstance(value, float):
        raise ValueError("rho must be an exact rational (Fraction, int, or 'a/b')")
    rho = Fraction(value)
    if not 0 < rho <= 1:
        raise ValueError(f"rho must lie in (0, 1], got {rho}")
    return rho


@dataclass(frozen=True)
class ThresholdConfig:
    """Activation fraction rho plus the cascade mode."""

    rho: Fraction
    mode: str = REVERSIBLE_SYNC

    def __post_init__(self):
        object.__setattr__(self, "rho", as_rho(self.rho))
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; expected one of {MODES}")


@dataclass(frozen=True)
class Termination:
    """How a run ended: all_active / fixed_point / cycle / budget_exhausted."""

    kind: str
    round: int | None = None
    entry: int | None = None
    period: int | None = None

    def describe(self) -> str:
        if self.kind == "cycle":
            return f"cycle period {self.period} (entry {self.entry})"
        if self.kind == "budget_exhausted":
            return "budget_exhausted"
        return f"{self.kind} round {self.round}"


@dataclass
class CascadeTrace:
    """Per-round activity history with its termination classification."""

    states: list[VertexSet]
    termination: Termination
    monotone: bool = field(init=False)
    rounds_to_full: int | None = field(init=False)

    def __post_init__(self):
        self.monotone = is_monotone_states(self.states)
        self.rounds_to_full = (
            self.termination.round if self.termination.kind == "all_active" else None
        )

    def dump(self) -> str:
        lines = [f"round {r}: {s.to_hex()}" for r, s in enumerate(self.states)]
        lines.append(f"termination: {self.termination.describe()}")
        return "\n".join(lines) + "\n"


def is_monotone_states(states: list[VertexSet]) -> bool:
    return all(a.issubset(b) for a, b in zip(states, states[1:]))


def is_monotone(trace: CascadeTrace) -> bool:
    """True iff no active vertex is ever deactivated along the trace."""
    return is_monotone_states(trace.states)


def _sync_step_bool(g: Graph, state: np.ndarray, a: int, b: int) -> np.ndarray:
    src, dst = g.edge_arrays()
    counts = np.bincount(dst[state[src]], minlength=g.n)
    d = g.d_in
    nxt = (b * counts >= a * d) & (d > 0)
    zero = d == 0
    nxt[zero] = state[zero]
    return nxt


def sync_step(g: Graph, state: VertexSet, cfg: ThresholdConfig) -> VertexSet:
    """One synchronous update of every vertex from the given state."""
    rho = cfg.rho
    nxt = _sync_step_bool(g, state.to_bool_array(), rho.numerator, rho.denominator)
    return VertexSet.from_bool_array(nxt)


def default_max_rounds(g: Graph) -> int:
    return 4 * g.n + 16


def run_sync(
    g: Graph, seeds: VertexSet, cfg: ThresholdConfig, max_rounds: int | None = None
) -> CascadeTrace:
    """Iterate synchronous rounds until all-active, a repeated state, or budget.

    A repeated state at distance 1 is a fixed point; at distance p >= 2 it is a
    cycle with entry at the first occurrence. States are ints, so repetition is
    detected by exact equality (no hash collisions to confirm).
    """
    if max_rounds is None:
        max_rounds = default_max_rounds(g)
    a, b = cfg.rho.numerator, cfg.rho.denominator
    full = (1 << g.n) - 1
    states = [seeds]
    if seeds.bits == full:
        return CascadeTrace(states, Termination("all_active", round=0))
    seen = {seeds.bits: 0}
    cur = seeds.to_bool_array()
    for r in range(1, max_rounds + 1):
        cur = _sync_step_bool(g, cur, a, b)
        vs = VertexSet.from_bool_array(cur)
        if vs.bits == full:
            states.append(vs)
            return CascadeTrace(states, Termination("all_active", round=r))
        if vs.bits in seen:
            entry = seen[vs.bits]
            period = r - entry
            if period == 1:
                return CascadeTrace(states, Termination("fixed_point", round=entry))
            states.append(vs)
            return CascadeTrace(states, Termination("cycle", entry=entry, period=period))
        states.append(vs)
        seen[vs.bits] = r
    return CascadeTrace(states, Termination("budget_exhausted", round=max_rounds))


def run_irreversible(
    g: Graph, seeds: VertexSet, cfg: ThresholdConfig, max_rounds: int | None = None
) -> CascadeTrace:
    """Synchronous cascade with deactivation forbidden; fixed point within n rounds."""
    if max_rounds is None:
        max_rounds = g.n + 1
    a, b = cfg.rho.numerator, cfg.rho.denominator
    full = (1 << g.n) - 1
    states = [seeds]
    if seeds.bits == full:
        return CascadeTrace(states, Termination("all_active", round=0))
    cur = seeds.to_bool_array()
    for r in range(1, max_rounds + 1):
        cur = _sync_step_bool(g, cur, a, b) | cur
        vs = VertexSet.from_bool_array(cur)
        if vs.bits == full:
            states.append(vs)
            return CascadeTrace(states, Termination("all_active", round=r))
        if vs.bits == states[-1].bits:
            return CascadeTrace(states, Termination("fixed_point", round=r - 1))
        states.append(vs)
    return CascadeTrace(states, Termination("budget_exhausted", round=max_rounds))


def check_seed_stability(g: Graph, seeds: VertexSet, cfg: ThresholdConfig) -> bool:
    """True iff every seed is still active after one synchronous step."""
    return seeds.issubset(sync_step(g, seeds, cfg))


@dataclass(frozen=True)
class Scheduler:
    """Progressive asynchronous update policy.

    Every policy selects only among vertices whose update would change their
    state, so whenever a change is possible one occurs; a run halts exactly at
    quiescence. `uniform-random` draws from the given RngSeed.
    """

    policy: str
    rng: RngSeed | None = None

    def __post_init__(self):
        if self.policy not in SCHEDULER_POLICIES:
            raise ValueError(
                f"unknown scheduler {self.policy!r}; expected one of {SCHEDULER_POLICIES}"
            )


def run_async(
    g: Graph,
    seeds: VertexSet,
    cfg: ThresholdConfig,
    sched: Scheduler,
    max_steps: int | None = None,
) -> CascadeTrace:
    """Asynchronous cascade: each macro-step flips a scheduler-chosen nonempty
    subset of changeable vertices simultaneously, based on the pre-step state.

    Terminates at quiescence (classified all_active or fixed_point) or when the
    step budget runs out. Active-neighbor counts are maintained incrementally.
    """
    if max_steps is None:
        max_steps = default_max_rounds(g)
    a, b = cfg.rho.numerator, cfg.rho.denominator
    n = g.n
    state = seeds.to_bool_array()
    src, dst = g.edge_arrays()
    counts = np.bincount(dst[state[src]], minlength=n)
    d = g.d_in

    def changeable_now(v: int) -> bool:
        dv = d[v]
        if dv == 0:
            return False
        desired = b * counts[v] >= a * dv
        return bool(desired) != bool(state[v])

    changeable = {int(v) for v in np.flatnonzero((d > 0) & ((b * counts >= a * d) != state))}
    states = [seeds]
    gen = sched.rng.generator() if sched.rng is not None else None
    pointer = 0

    def select() -> list[int]:
        if sched.policy == "full-sweep":
            return sorted(changeable)
        if sched.policy == "round-robin":
            later = [v for v in changeable if v >= pointer]
            return [min(later) if later else min(changeable)]
        if sched.policy == "greedy-deactivate":
            deact = [v for v in changeable if state[v]]
            return [min(deact) if deact else min(changeable)]
        ordered = sorted(changeable)
        return [ordered[int(gen.integers(len(ordered)))]]

    for step in range(1, max_steps + 1):
        if not changeable:
            kind = "all_active" if states[-1].is_full() else "fixed_point"
            return CascadeTrace(states, Termination(kind, round=len(states) - 1))
        flips = select()
        if sched.policy == "round-robin":
            pointer = (flips[0] + 1) % n
        touched = set(flips)
        for v in flips:
            if state[v]:
                state[v] = False
                for w in g.out_neighbor_array(v).tolist():
                    counts[w] -= 1
                    touched.add(w)
            else:
                state[v] = True
                for w in g.out_neighbor_array(v).tolist():
                    counts[w] += 1
                    touched.add(w)
        for v in touched:
            if changeable_now(v):
                changeable.add(v)
            else:
                changeable.discard(v)
        states.append(VertexSet.from_bool_array(state))
        if states[-1].is_full():
            return CascadeTrace(states, Termination("all_active", round=len(states) - 1))
    if not changeable:
        kind = "all_active" if states[-1].is_full() else "fixed_point"
        return CascadeTrace(states, Termination(kind, round=len(states) - 1))
    return CascadeTrace(states, Termination("budget_exhausted", round=max_steps))
