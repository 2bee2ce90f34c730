"""W-random graphs and empirical density convergence.

A sample draws n block indices by weight and then flips one coin per node
pair with the block-pair value as edge probability. Coins are positioned,
not sequential: the pair (i, j), i < j, always consumes variate
j*(j-1)/2 + i of its stream, and vertex i always consumes variate i, so
the graph on n nodes is an induced subgraph of the graph on n' > n nodes
drawn from the same seed. The convergence experiment leans on that
nesting: one child seed per replication reused across all sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .density import density_exact, density_graph
from .graphons import StepGraphon
from .graphs import LabeledMultigraph, connected_node_sets, multigraph
from .rational import format_float
from .streams import (
    DOMAIN_CHILD_SEEDS,
    DOMAIN_SAMPLE_EDGES,
    DOMAIN_SAMPLE_NODES,
    RESOLUTION,
    draw_blocks,
    philox_stream,
    probability_threshold,
    weight_thresholds,
)


def sample_wrandom(graphon: StepGraphon, n: int, seed: int) -> LabeledMultigraph:
    """Simple graph on n nodes with independent edges of block-pair probability.

    Deterministic per (graphon, n, seed); growing n extends the sample
    instead of reshuffling it.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    for row in graphon.values:
        for v in row:
            if v < 0 or v > 1:
                raise ValueError(f"value {v} outside [0,1] cannot be an edge probability")
    blocks = draw_blocks(
        philox_stream(seed, DOMAIN_SAMPLE_NODES),
        weight_thresholds(graphon.weights),
        n,
    )
    if n == 1:
        return multigraph(1, [])
    b = graphon.block_count
    thresh = np.array(
        [[probability_threshold(v) for v in row] for row in graphon.values],
        dtype=np.uint64,
    )
    total = n * (n - 1) // 2
    coins = philox_stream(seed, DOMAIN_SAMPLE_EDGES).integers(
        0, RESOLUTION, size=total, dtype=np.uint64
    )
    j_idx = np.repeat(np.arange(1, n), np.arange(1, n))
    i_idx = np.arange(total) - (j_idx * (j_idx - 1)) // 2
    keep = coins < thresh[blocks[i_idx], blocks[j_idx]]
    edges = [(int(i), int(j), 1) for i, j in zip(i_idx[keep], j_idx[keep])]
    return multigraph(n, edges)


@dataclass(frozen=True)
class SizeStats:
    n: int
    rep_count: int
    median_err: Fraction
    max_err: Fraction

    def __post_init__(self) -> None:
        if self.rep_count < 1:
            raise ValueError("rep_count must be at least 1")
        if self.median_err < 0 or self.max_err < 0:
            raise ValueError("deviations are absolute values")


@dataclass(frozen=True)
class ConvergenceReport:
    motif: LabeledMultigraph
    target: Fraction
    stats: tuple[SizeStats, ...]

    def medians(self) -> list[Fraction]:
        return [s.median_err for s in self.stats]

    def monotone_decreasing(self, *, strict: bool = False) -> bool:
        meds = self.medians()
        if strict:
            return all(a > b for a, b in zip(meds, meds[1:]))
        return all(a >= b for a, b in zip(meds, meds[1:]))


def _exact_median(values: list[Fraction]) -> Fraction:
    ordered = sorted(values)
    mid = len(ordered) // 2
    if len(ordered) % 2:
        return ordered[mid]
    return (ordered[mid - 1] + ordered[mid]) / 2


def convergence_experiment(
    graphon: StepGraphon,
    motif: LabeledMultigraph,
    sizes: list[int],
    reps: int,
    seed: int,
) -> ConvergenceReport:
    """Median and max |t(F, G_n) - t(F, H)| over reps samples per size.

    Replication r uses one child seed at every size, so its samples form
    a nested family and the per-replication errors shrink together rather
    than resampling independently.
    """
    if not motif.is_simple or not motif.is_unlabeled:
        raise ValueError("motif must be a simple unlabeled graph")
    if reps < 1:
        raise ValueError("reps must be at least 1")
    if not sizes:
        raise ValueError("at least one size is required")
    for n in sizes:
        if n < motif.node_count:
            raise ValueError(f"size {n} is smaller than the motif ({motif.node_count})")
    target = density_exact(motif, graphon).exact
    assert target is not None
    child_seeds = [
        int(s)
        for s in philox_stream(seed, DOMAIN_CHILD_SEEDS).integers(
            0, RESOLUTION, size=reps, dtype=np.uint64
        )
    ]
    stats = []
    for n in sizes:
        errs = []
        for child in child_seeds:
            sample = sample_wrandom(graphon, n, child)
            value = density_graph(motif, sample).exact
            assert value is not None
            errs.append(abs(value - target))
        stats.append(SizeStats(n, reps, _exact_median(errs), max(errs)))
    return ConvergenceReport(motif, target, tuple(stats))


def describe_graph(graph: LabeledMultigraph) -> str:
    """Short conventional name: K/C/P/S families, else a size signature."""
    n = graph.node_count
    degs = sorted(
        sum(m for _, m in graph.adjacency()[x].items()) for x in range(n)
    )
    m = graph.total_multiplicity
    if graph.is_simple:
        if m == n * (n - 1) // 2:
            return f"K{n}"
        if n >= 3 and m == n and degs == [2] * n and len(connected_node_sets(graph)) == 1:
            return f"C{n}"
        if n >= 2 and m == n - 1 and degs == [1, 1] + [2] * (n - 2):
            return f"P{n}"
        if n >= 3 and m == n - 1 and degs == [1] * (n - 1) + [n - 1]:
            return f"S{n}"
    return f"g{n}n{m}e"


def to_csv(report: ConvergenceReport) -> str:
    """CSV rows motif,n,rep_count,median_err,max_err with 12-digit floats."""
    lines = ["motif,n,rep_count,median_err,max_err"]
    name = describe_graph(report.motif)
    for s in report.stats:
        lines.append(
            f"{name},{s.n},{s.rep_count},"
            f"{format_float(float(s.median_err))},{format_float(float(s.max_err))}"
        )
    return "\n".join(lines) + "\n"
