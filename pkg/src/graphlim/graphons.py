"""Step graphons: block weights plus a symmetric matrix of exact rational values.

A step graphon is the finite, exactly computable form of a kernel on a
probability space: block i has measure weights[i], and the kernel equals
values[i][j] on the block-i x block-j rectangle. Arbitrary bounded kernels
appear only as BlackBoxKernel, which supports Monte Carlo estimation and
nothing exact.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .graphs import LabeledMultigraph
from .rational import RationalLike, format_rational, parse_rational

DEFAULT_RANGE = (Fraction(0), Fraction(1))


@dataclass(frozen=True)
class StepGraphon:
    weights: tuple[Fraction, ...]
    values: tuple[tuple[Fraction, ...], ...]
    value_range: tuple[Fraction, Fraction] = DEFAULT_RANGE

    def __post_init__(self) -> None:
        validate(self)

    @property
    def block_count(self) -> int:
        return len(self.weights)

    def cumulative(self) -> tuple[Fraction, ...]:
        """Block boundaries 0 = c_0 <= c_1 <= ... <= c_B = 1."""
        cum = [Fraction(0)]
        for w in self.weights:
            cum.append(cum[-1] + w)
        return tuple(cum)


def step_graphon(
    weights: Sequence[RationalLike],
    values: Sequence[Sequence[RationalLike]],
    value_range: tuple[RationalLike, RationalLike] | None = None,
) -> StepGraphon:
    """Coerce loose rational data (ints, "p/q" strings) into a StepGraphon."""
    w = tuple(parse_rational(x) for x in weights)
    v = tuple(tuple(parse_rational(x) for x in row) for row in values)
    if value_range is None:
        rng = DEFAULT_RANGE
    else:
        rng = (parse_rational(value_range[0]), parse_rational(value_range[1]))
    return StepGraphon(w, v, rng)


def validate(graphon: StepGraphon) -> None:
    """Exact invariant check; raises ValueError with a distinct message per rule."""
    w, v = graphon.weights, graphon.values
    lo, hi = graphon.value_range
    if lo > hi:
        raise ValueError(f"value_range is empty: [{lo}, {hi}]")
    if not w:
        raise ValueError("graphon needs at least one block")
    if any(x < 0 for x in w):
        raise ValueError("weights must be nonnegative")
    if sum(w) != 1:
        raise ValueError(f"weights must sum to 1, got {sum(w)}")
    b = len(w)
    if len(v) != b or any(len(row) != b for row in v):
        raise ValueError(f"values must be a {b}x{b} matrix")
    for i in range(b):
        for j in range(i + 1, b):
            if v[i][j] != v[j][i]:
                raise ValueError(f"values asymmetric at ({i},{j})")
    for i in range(b):
        for j in range(b):
            if not lo <= v[i][j] <= hi:
                raise ValueError(f"value {v[i][j]} at ({i},{j}) outside range [{lo}, {hi}]")


def from_graph(graph: LabeledMultigraph) -> StepGraphon:
    """0/1 step graphon of a simple unlabeled graph: n equal blocks, adjacency values."""
    if not graph.is_simple:
        raise ValueError("from_graph needs a simple graph, got a multigraph")
    if not graph.is_unlabeled:
        raise ValueError("from_graph needs an unlabeled graph")
    n = graph.node_count
    w = Fraction(1, n)
    vals = [[Fraction(0)] * n for _ in range(n)]
    for u, v, _ in graph.edges:
        vals[u][v] = vals[v][u] = Fraction(1)
    return StepGraphon((w,) * n, tuple(tuple(row) for row in vals))


def constant(
    c: RationalLike, value_range: tuple[RationalLike, RationalLike] | None = None
) -> StepGraphon:
    cf = parse_rational(c)
    return step_graphon([1], [[cf]], value_range)


def blowup(graphon: StepGraphon, k: int) -> StepGraphon:
    """Split every block into k equal copies; copy c of block i sits at c*B+i.

    The result is a pull-back of the original along a measure preserving
    map, hence weakly isomorphic to it (every density is preserved).
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if k == 1:
        return graphon
    b = graphon.block_count
    w = tuple(graphon.weights[i % b] / k for i in range(b * k))
    v = tuple(
        tuple(graphon.values[i % b][j % b] for j in range(b * k)) for i in range(b * k)
    )
    return StepGraphon(w, v, graphon.value_range)


def affine_rescale(graphon: StepGraphon, a: RationalLike, b: RationalLike) -> StepGraphon:
    """values -> a*values + b entrywise; the declared range follows along."""
    af, bf = parse_rational(a), parse_rational(b)
    if af == 0:
        raise ValueError("a must be nonzero")
    lo, hi = graphon.value_range
    ends = sorted((af * lo + bf, af * hi + bf))
    v = tuple(tuple(af * x + bf for x in row) for row in graphon.values)
    return StepGraphon(graphon.weights, v, (ends[0], ends[1]))


def block_of(graphon: StepGraphon, x: Fraction) -> int:
    """Block whose half-open interval [c_{i-1}, c_i) contains x.

    Zero-weight blocks get empty intervals and are never returned.
    """
    if not 0 <= x < 1:
        raise ValueError(f"coordinate {x} outside [0, 1)")
    cum = graphon.cumulative()
    # rightmost boundary <= x; equal boundaries (weight-0 blocks) are skipped
    return bisect_right(cum, x) - 1


def evaluate(graphon: StepGraphon, x, y) -> Fraction:
    """Kernel value at real coordinates in [0,1); exact rational result.

    Floats convert exactly (they are dyadic rationals), so the block
    convention has no rounding ambiguity.
    """
    xf, yf = Fraction(x), Fraction(y)
    return graphon.values[block_of(graphon, xf)][block_of(graphon, yf)]


@dataclass(frozen=True)
class BlackBoxKernel:
    """Opaque symmetric bounded kernel; Monte Carlo paths only.

    evaluator may accept numpy arrays elementwise (the estimator probes for
    that and falls back to scalar calls), but only scalar behavior is part
    of the contract.
    """

    evaluator: Callable[[float, float], float]
    bound: float = 1.0

    @classmethod
    def from_step_graphon(cls, graphon: StepGraphon) -> "BlackBoxKernel":
        """Float realization of a step graphon, vectorized over arrays."""
        cuts = np.cumsum([float(w) for w in graphon.weights])[:-1]
        vals = np.array([[float(v) for v in row] for row in graphon.values])
        bound = max((abs(float(v)) for row in graphon.values for v in row), default=0.0)

        def evaluator(x, y):
            bx = np.searchsorted(cuts, x, side="right")
            by = np.searchsorted(cuts, y, side="right")
            return vals[bx, by]

        return cls(evaluator=evaluator, bound=bound)


# -- file format -------------------------------------------------------------


def parse_graphon(text: str) -> StepGraphon:
    """Parse the graphon file: {"weights": [...], "values": [[...]], "range": [lo, hi]}."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"graphon file is not valid JSON: {exc}") from None
    if not isinstance(data, dict) or "weights" not in data or "values" not in data:
        raise ValueError('graphon file needs "weights" and "values"')
    weights = data["weights"]
    values = data["values"]
    if not isinstance(weights, list) or not isinstance(values, list):
        raise ValueError('"weights" and "values" must be arrays')
    rng = data.get("range")
    if rng is not None:
        if not isinstance(rng, list) or len(rng) != 2:
            raise ValueError('"range" must be a two-element array')
        rng = (rng[0], rng[1])
    return step_graphon(weights, values, rng)


def serialize_graphon(graphon: StepGraphon) -> str:
    """Inverse of parse_graphon; emits the lower triangle mirrored, lowest terms."""
    b = graphon.block_count
    rows = [
        [format_rational(graphon.values[max(i, j)][min(i, j)]) for j in range(b)]
        for i in range(b)
    ]
    data: dict = {
        "weights": [format_rational(w) for w in graphon.weights],
        "values": rows,
    }
    if graphon.value_range != DEFAULT_RANGE:
        data["range"] = [format_rational(x) for x in graphon.value_range]
    return json.dumps(data, indent=1) + "\n"
