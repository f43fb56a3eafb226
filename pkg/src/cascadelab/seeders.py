"""Constructive seed-set selection and the matching closed-form budgets.

Two constructions are provided. The high-degree seeder takes every vertex
whose degree exceeds 1/rho together with a ceil(rho*d) slice of its
neighborhood, which makes the seed set stable under one synchronous step and
turns connectivity into a diameter-round monopoly. The random-repair seeder
samples vertices at rate 8*C*rho and then seeds the in-neighborhoods of the
vertices the sample failed to cover, which forces all-active by round one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .engine import REVERSIBLE_SYNC, ThresholdConfig, as_rho, check_seed_stability
from .graph import Graph, GraphError, VertexSet, is_connected
from .rng import RngSeed

HIGH_DEGREE_CORE = "high-degree-core"
RANDOM_REPAIR = "random-repair"
EXPLICIT = "explicit"


@dataclass
class SeedSet:
    """A vertex subset plus provenance and the bound it was produced under."""

    vertices: VertexSet
    provenance: str
    params: dict = field(default_factory=dict)
    budget: int = 0

    def __len__(self) -> int:
        return len(self.vertices)

    def serialize(self) -> str:
        members = " ".join(str(v) for v in sorted(self.vertices))
        return f"seeds {len(self.vertices)}: {members}".rstrip()


def parse_seed_line(line: str, n: int) -> VertexSet:
    """Parse the `seeds k: v1 v2 ... vk` serialization."""
    head, _, rest = line.partition(":")
    parts = head.split()
    if len(parts) != 2 or parts[0] != "seeds":
        raise ValueError(f"bad seed line: {line!r}")
    members = [int(tok) for tok in rest.split()]
    if len(members) != int(parts[1]):
        raise ValueError(f"seed line count mismatch: {line!r}")
    return VertexSet.from_iterable(n, members)


def _ceil_frac(num: int, den: int) -> int:
    return -((-num) // den)


def seed_selection_order(g: Graph, v: int, rho, current=()) -> list[int]:
    """Deterministic preference order for filling a neighborhood slice:
    neighbors already chosen as seeds, then neighbors in the high-degree core,
    then the rest, each tier in ascending id.
    """
    rho = as_rho(rho)
    a, b = rho.numerator, rho.denominator
    chosen = set(current)
    nbrs = g.out_neighbor_array(v).tolist()
    d = g.d_in

    def tier(u: int) -> int:
        if u in chosen:
            return 0
        if a * int(d[u]) > b:
            return 1
        return 2

    return sorted(nbrs, key=lambda u: (tier(u), u))


def highdeg_seeder(g: Graph, rho) -> SeedSet:
    """Seed the high-degree core plus a ceil(rho*d) slice of each core
    neighborhood; falls back to a single lowest-id core when no degree
    exceeds 1/rho. The output is certified stable before being returned.
    """
    rho = as_rho(rho)
    if g.directed:
        raise GraphError("high-degree seeder requires an undirected graph")
    if g.n < 2:
        raise GraphError("high-degree seeder requires at least two vertices")
    if not is_connected(g):
        raise GraphError("high-degree seeder requires a connected graph")
    a, b = rho.numerator, rho.denominator
    d = g.d_in
    core = np.flatnonzero(a * d > b)
    in_core = np.zeros(g.n, dtype=bool)
    in_core[core] = True
    if core.size == 0:
        core = np.array([0], dtype=np.int64)
    in_seed = np.zeros(g.n, dtype=bool)
    for v in core.tolist():
        in_seed[v] = True
        need = _ceil_frac(a * int(d[v]), b)
        nbrs = g.out_neighbor_array(v)
        # neighbors already seeded count toward the slice; top up by preference:
        # core members first, then ascending id (nbrs is sorted)
        have = int(np.count_nonzero(in_seed[nbrs]))
        if have < need:
            fresh = nbrs[~in_seed[nbrs]]
            order = np.concatenate([fresh[in_core[fresh]], fresh[~in_core[fresh]]])
            for u in order.tolist():
                in_seed[u] = True
                have += 1
                if have >= need:
                    break
        if have < need:
            raise GraphError(f"degree {int(d[v])} vertex cannot supply {need} seeds")
    seeds = VertexSet.from_bool_array(in_seed)
    cfg = ThresholdConfig(rho, REVERSIBLE_SYNC)
    if not check_seed_stability(g, seeds, cfg):
        raise RuntimeError("stability certificate violated by constructed seed set")
    return SeedSet(
        vertices=seeds,
        provenance=HIGH_DEGREE_CORE,
        params={"rho": rho},
        budget=budget_highdeg(g, rho),
    )


def budget_highdeg(g: Graph, rho) -> int:
    """Closed-form bound: 2 + sum over degrees above 1/rho of (ceil(rho*d) + 1)."""
    rho = as_rho(rho)
    a, b = rho.numerator, rho.denominator
    d = g.d_in
    above = d[a * d > b]
    return 2 + int(sum(_ceil_frac(a * int(dv), b) + 1 for dv in above.tolist()))


def random_repair_seeder(g: Graph, rho, C: float, rng: RngSeed) -> SeedSet:
    """Bernoulli(8*C*rho) sample, then repair: also seed every vertex the
    sample leaves at or below its threshold, together with its in-neighborhood.
    Every vertex outside the result strictly clears its threshold, so the
    cascade is all-active by round one. When 8*C*rho >= 1 the whole vertex set
    is returned.
    """
    rho = as_rho(rho)
    if C <= 1:
        raise ValueError(f"C must exceed 1, got {C}")
    a, b = rho.numerator, rho.denominator
    n = g.n
    params = {"rho": rho, "C": C, "rng": rng}
    if 8 * Fraction(C) * rho >= 1:
        return SeedSet(VertexSet.full(n), RANDOM_REPAIR, params, budget=n)
    gen = rng.generator()
    sample = gen.random(n) < 8.0 * C * float(rho)
    src, dst = g.edge_arrays()
    counts = np.bincount(dst[sample[src]], minlength=n)
    d = g.d_in
    failed = b * counts <= a * d  # non-strict: conservative superset
    seeded = sample | failed
    failed_verts = np.flatnonzero(failed)
    for v in failed_verts.tolist():
        seeded[g.in_neighbor_array(v)] = True
    budget = int(np.count_nonzero(sample)) + int((d[failed] + 1).sum())
    return SeedSet(VertexSet.from_bool_array(seeded), RANDOM_REPAIR, params, budget=budget)


def count_low_indegree(g: Graph, rho, C: float) -> int:
    """Number of vertices with indegree below (1/(C*rho)) * ln(e/rho)."""
    rho = as_rho(rho)
    threshold = math.log(math.e / float(rho)) / (C * float(rho))
    return int(np.count_nonzero(g.d_in < threshold))
