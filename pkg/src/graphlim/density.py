"""Homomorphism densities: exact in finite graphs and step graphons, anchored
variants with pinned nodes, and Monte Carlo estimation for black-box kernels.

Exact paths run on integers: weights and values are rescaled by common
denominators once, the sum over block maps is accumulated as a plain integer,
and a single Fraction division at the end restores the exact rational. A
partial product that hits zero prunes its whole subtree, which is what makes
bipartite-like value patterns cheap.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .graphons import BlackBoxKernel, StepGraphon
from .graphs import LabeledMultigraph, connected_node_sets, product, star_multigraph, unlabel
from .rational import format_float, format_rational
from .streams import DOMAIN_MC_COORDS, philox_stream

MAX_MOTIF_NODES = 8
MAX_EXACT_BLOCKS = 64

AnchorAssignment = Mapping[int, int]


@dataclass(frozen=True)
class DensityValue:
    """Either an exact rational or a (mean, stderr, samples) estimate."""

    exact: Fraction | None = None
    estimate: tuple[float, float, int] | None = None

    def __post_init__(self) -> None:
        if (self.exact is None) == (self.estimate is None):
            raise ValueError("exactly one of exact/estimate must be present")
        if self.estimate is not None and self.estimate[1] < 0:
            raise ValueError("stderr must be nonnegative")

    @classmethod
    def from_exact(cls, value: Fraction) -> "DensityValue":
        return cls(exact=value)

    @classmethod
    def from_estimate(cls, mean: float, stderr: float, samples: int) -> "DensityValue":
        return cls(estimate=(mean, stderr, samples))

    def __str__(self) -> str:
        if self.exact is not None:
            return format_rational(self.exact)
        mean, stderr, samples = self.estimate  # type: ignore[misc]
        return f"{format_float(mean)} ± {format_float(stderr)} ({samples})"


def _require_unlabeled(graph: LabeledMultigraph, op: str) -> None:
    if not graph.is_unlabeled:
        raise ValueError(f"{op} needs an unlabeled graph; use anchored_density for labels")


def _check_size(graph: LabeledMultigraph, node_limit: int) -> None:
    if graph.node_count > node_limit:
        raise ValueError(
            f"graph has {graph.node_count} nodes, exceeding the limit {node_limit}"
        )


# -- exact evaluation in a finite graph --------------------------------------


def density_graph(
    motif: LabeledMultigraph,
    graph: LabeledMultigraph,
    *,
    node_limit: int = MAX_MOTIF_NODES,
) -> DensityValue:
    """hom(F,G) / n^|V(F)| for a simple unlabeled host graph G.

    A multigraph motif is allowed: against 0/1 adjacency, multiplicities
    collapse (1^m = 1, 0^m = 0), so only the support of F matters.
    """
    _require_unlabeled(motif, "density_graph")
    if not graph.is_simple or not graph.is_unlabeled:
        raise ValueError("host graph must be simple and unlabeled")
    _check_size(motif, node_limit)
    n = graph.node_count
    adj_sets = [set() for _ in range(n)]
    for u, v, _ in graph.edges:
        adj_sets[u].add(v)
        adj_sets[v].add(u)
    motif_adj = motif.adjacency()
    hom = 1
    for comp in connected_node_sets(motif):
        hom *= _component_hom(comp, motif_adj, adj_sets, n)
        if hom == 0:
            break
    return DensityValue.from_exact(Fraction(hom, n**motif.node_count))


def _bfs_order(comp: list[int], adj: list[dict[int, int]]) -> list[int]:
    order = [comp[0]]
    seen = {comp[0]}
    i = 0
    while i < len(order):
        for y in sorted(adj[order[i]]):
            if y in seen or y not in set(comp):
                continue
            seen.add(y)
            order.append(y)
        i += 1
    return order


def _component_hom(
    comp: list[int],
    motif_adj: list[dict[int, int]],
    adj_sets: list[set[int]],
    n: int,
) -> int:
    order = _bfs_order(comp, motif_adj)
    pos = {x: d for d, x in enumerate(order)}
    prev = [
        [pos[y] for y in motif_adj[x] if y in pos and pos[y] < d]
        for d, x in enumerate(order)
    ]
    k = len(order)
    assign: list[int] = [0] * k
    total = 0

    def rec(d: int) -> None:
        nonlocal total
        ps = prev[d]
        if ps:
            cands = adj_sets[assign[ps[0]]]
            for p in ps[1:]:
                cands = cands & adj_sets[assign[p]]
        else:
            cands = None
        if d == k - 1:
            total += n if cands is None else len(cands)
            return
        for y in range(n) if cands is None else cands:
            assign[d] = y
            rec(d + 1)

    rec(0)
    return total


# -- exact evaluation in a step graphon --------------------------------------


def _scaled_tables(graphon: StepGraphon) -> tuple[int, list[int], int, list[list[int]]]:
    r = math.lcm(*(w.denominator for w in graphon.weights))
    nw = [int(w * r) for w in graphon.weights]
    q = math.lcm(*(v.denominator for row in graphon.values for v in row))
    nv = [[int(v * q) for v in row] for row in graphon.values]
    return r, nw, q, nv


def _component_sum(
    block_count: int,
    nw: list[int],
    prev_pairs: list[list[tuple[int, int]]],
    fixed_rows: list[list[list[int]]],
    pow_tables: dict[int, list[list[int]]],
) -> int:
    """Integer sum over block assignments of one connected piece.

    prev_pairs[d] lists (earlier position, multiplicity); fixed_rows[d] are
    precomputed factor rows from pinned neighbors. Zero partials prune.
    """
    k = len(prev_pairs)
    assign = [0] * k
    acc = 0

    def rec(d: int, partial: int) -> None:
        nonlocal acc
        rows = [pow_tables[m][assign[p]] for p, m in prev_pairs[d]]
        rows.extend(fixed_rows[d])
        if d == k - 1:
            s = 0
            for b in range(block_count):
                f = nw[b]
                if f:
                    for row in rows:
                        f *= row[b]
                        if not f:
                            break
                    else:
                        s += f
            acc += partial * s
            return
        for b in range(block_count):
            f = nw[b]
            if f:
                for row in rows:
                    f *= row[b]
                    if not f:
                        break
                else:
                    assign[d] = b
                    rec(d + 1, partial * f)

    rec(0, 1)
    return acc


def _pow_tables(nv: list[list[int]], mults: set[int]) -> dict[int, list[list[int]]]:
    tables: dict[int, list[list[int]]] = {}
    for m in mults:
        if m == 1:
            tables[1] = nv
        else:
            tables[m] = [[x**m for x in row] for row in nv]
    return tables


def density_exact(
    motif: LabeledMultigraph,
    graphon: StepGraphon,
    *,
    node_limit: int = MAX_MOTIF_NODES,
) -> DensityValue:
    """Sum over all block maps of edge-value products times node weights."""
    _require_unlabeled(motif, "density_exact")
    _check_size(motif, node_limit)
    if graphon.block_count > MAX_EXACT_BLOCKS:
        raise ValueError(
            f"{graphon.block_count} blocks exceed the exact-path limit {MAX_EXACT_BLOCKS}"
        )
    r, nw, q, nv = _scaled_tables(graphon)
    b = graphon.block_count
    adj = motif.adjacency()
    pow_tables = _pow_tables(nv, {m for _, _, m in motif.edges} or {1})
    result = Fraction(1)
    for comp in connected_node_sets(motif):
        order = _bfs_order(comp, adj)
        pos = {x: d for d, x in enumerate(order)}
        prev_pairs = [
            [(pos[y], m) for y, m in adj[x].items() if pos[y] < d]
            for d, x in enumerate(order)
        ]
        acc = _component_sum(b, nw, prev_pairs, [[] for _ in order], pow_tables)
        mult_total = sum(m for x in comp for y, m in adj[x].items() if y > x)
        result *= Fraction(acc, r ** len(order) * q**mult_total)
    return DensityValue.from_exact(result)


def _check_anchor_assignment(
    motif: LabeledMultigraph, anchors: AnchorAssignment, block_count: int
) -> dict[int, int]:
    """Resolve node -> pinned block; every label of the motif must be anchored."""
    for label, block in anchors.items():
        if not 0 <= block < block_count:
            raise ValueError(f"anchor block {block} for label {label} out of range")
    pinned: dict[int, int] = {}
    for node, label in motif.labels:
        if label not in anchors:
            raise ValueError(f"label {label} has no anchor")
        pinned[node] = anchors[label]
    return pinned


def anchored_density(
    motif: LabeledMultigraph,
    graphon: StepGraphon,
    anchors: AnchorAssignment,
    *,
    node_limit: int = MAX_MOTIF_NODES,
) -> DensityValue:
    """Density with labeled nodes pinned to anchor blocks.

    Pinned nodes contribute no weight factor; the sum ranges over the
    unlabeled nodes only. With no labels and no anchors this reduces to
    density_exact.
    """
    _check_size(motif, node_limit)
    if graphon.block_count > MAX_EXACT_BLOCKS:
        raise ValueError(
            f"{graphon.block_count} blocks exceed the exact-path limit {MAX_EXACT_BLOCKS}"
        )
    pinned = _check_anchor_assignment(motif, anchors, graphon.block_count)
    adj = motif.adjacency()
    vals = graphon.values
    result = Fraction(1)
    for u, v, m in motif.edges:
        if u in pinned and v in pinned:
            result *= vals[pinned[u]][pinned[v]] ** m
    if result == 0:
        return DensityValue.from_exact(Fraction(0))
    free = [x for x in range(motif.node_count) if x not in pinned]
    if not free:
        return DensityValue.from_exact(result)
    r, nw, q, nv = _scaled_tables(graphon)
    b = graphon.block_count
    pow_tables = _pow_tables(nv, {m for _, _, m in motif.edges} or {1})
    free_adj = [
        {y: m for y, m in adj[x].items() if y not in pinned} for x in range(motif.node_count)
    ]
    free_graph_comps = _components_of(free, free_adj)
    for comp in free_graph_comps:
        order = _bfs_order(comp, free_adj)
        pos = {x: d for d, x in enumerate(order)}
        prev_pairs = [
            [(pos[y], m) for y, m in free_adj[x].items() if pos[y] < d]
            for d, x in enumerate(order)
        ]
        fixed_rows = [
            [pow_tables[m][pinned[y]] for y, m in adj[x].items() if y in pinned]
            for x in order
        ]
        acc = _component_sum(b, nw, prev_pairs, fixed_rows, pow_tables)
        mult_total = sum(m for x in comp for y, m in free_adj[x].items() if y > x)
        mult_total += sum(m for x in comp for y, m in adj[x].items() if y in pinned)
        result *= Fraction(acc, r ** len(order) * q**mult_total)
    return DensityValue.from_exact(result)


def _components_of(nodes: list[int], adj: list[dict[int, int]]) -> list[list[int]]:
    keep = set(nodes)
    seen: set[int] = set()
    comps = []
    for start in nodes:
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y in keep and y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


# -- mixed moments ------------------------------------------------------------


def mixed_moment(
    graphon: StepGraphon, anchors: Sequence[int], exponents: Sequence[int]
) -> DensityValue:
    """E(prod_i W(X, a_i)^{k_i}) over a weight-distributed block X.

    Computed directly as the weighted sum over blocks, then cross-checked
    against the anchored density of the star multigraph with the same
    exponents (the two routes must agree exactly).
    """
    if len(anchors) != len(exponents):
        raise ValueError("anchors and exponents must have the same length")
    for a in anchors:
        if not 0 <= a < graphon.block_count:
            raise ValueError(f"anchor block {a} out of range")
    if any(k < 0 for k in exponents):
        raise ValueError("exponents must be nonnegative")
    direct = Fraction(0)
    for x in range(graphon.block_count):
        w = graphon.weights[x]
        if w == 0:
            continue
        term = w
        for a, k in zip(anchors, exponents):
            if k:
                term *= graphon.values[x][a] ** k
                if term == 0:
                    break
        direct += term
    if any(exponents):
        star = star_multigraph(list(exponents))
        assignment = {i + 1: a for i, a in enumerate(anchors)}
        via_star = anchored_density(star, graphon, assignment).exact
        if via_star != direct:
            raise RuntimeError(
                f"mixed_moment cross-check failed: {direct} direct vs {via_star} star"
            )
    return DensityValue.from_exact(direct)


# -- Monte Carlo ---------------------------------------------------------------


def _vectorized(kernel: BlackBoxKernel) -> bool:
    probe = np.array([0.25, 0.75])
    try:
        out = np.asarray(kernel.evaluator(probe, probe), dtype=float)
    except Exception:
        return False
    return out.shape == probe.shape


def density_mc(
    motif: LabeledMultigraph,
    kernel: BlackBoxKernel,
    samples: int,
    seed: int,
    *,
    node_limit: int = MAX_MOTIF_NODES,
) -> DensityValue:
    """Plain Monte Carlo over i.i.d. uniform node coordinates.

    Sample s uses coordinates number s*k .. s*k+k-1 of the (seed,
    DOMAIN_MC_COORDS) stream, node index order; the reduction is exact
    float summation, so any sharding of the work gives identical output.
    """
    _require_unlabeled(motif, "density_mc")
    _check_size(motif, node_limit)
    if samples < 2:
        raise ValueError("samples must be at least 2")
    k = motif.node_count
    coords = philox_stream(seed, DOMAIN_MC_COORDS).random((samples, k))
    values = np.ones(samples)
    if _vectorized(kernel):
        for u, v, m in motif.edges:
            w = np.asarray(kernel.evaluator(coords[:, u], coords[:, v]), dtype=float)
            values *= w**m
    else:
        ev = kernel.evaluator
        for s in range(samples):
            row = coords[s]
            acc = 1.0
            for u, v, m in motif.edges:
                acc *= float(ev(row[u], row[v])) ** m
                if acc == 0.0:
                    break
            values[s] = acc
    mean = math.fsum(values) / samples
    var = math.fsum((x - mean) ** 2 for x in values) / (samples - 1)
    stderr = math.sqrt(var / samples)
    return DensityValue.from_estimate(mean, stderr, samples)


# -- the gluing identity --------------------------------------------------------


def product_identity_check(
    f1: LabeledMultigraph,
    f2: LabeledMultigraph,
    graphon: StepGraphon,
    *,
    node_limit: int = MAX_MOTIF_NODES,
) -> tuple[Fraction, Fraction]:
    """Both sides of t(F1 F2, H) = sum over anchor tuples of weighted t_x(F1) t_x(F2).

    F1 and F2 must carry the same label set {1..k}. Returns (lhs, rhs); equality
    is the caller's assertion.
    """
    labels1, labels2 = f1.label_set, f2.label_set
    if labels1 != labels2:
        raise ValueError(f"label sets differ: {sorted(labels1)} vs {sorted(labels2)}")
    k = len(labels1)
    if sorted(labels1) != list(range(1, k + 1)):
        raise ValueError(f"labels must be exactly 1..k, got {sorted(labels1)}")
    if k > node_limit:
        raise ValueError(f"{k} labels exceed the limit {node_limit}")
    glued = unlabel(product(f1, f2))
    lhs = density_exact(glued, graphon, node_limit=max(node_limit, glued.node_count)).exact
    rhs = Fraction(0)
    blocks = range(graphon.block_count)
    for combo in itertools.product(blocks, repeat=k):
        weight = Fraction(1)
        for b in combo:
            weight *= graphon.weights[b]
        if weight == 0:
            continue
        assignment = {i + 1: b for i, b in enumerate(combo)}
        t1 = anchored_density(f1, graphon, assignment).exact
        if t1 == 0:
            continue
        t2 = anchored_density(f2, graphon, assignment).exact
        rhs += weight * t1 * t2
    assert lhs is not None
    return lhs, rhs
