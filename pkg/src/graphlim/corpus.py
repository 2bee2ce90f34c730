"""Bundled test subjects: standard small graphs and a family of step
graphons that covers the interesting shapes (twins, zero-weight padding,
bipartite structure, zero values, uneven weights)."""

from __future__ import annotations

from fractions import Fraction

from .graphons import StepGraphon, blowup, constant, from_graph, step_graphon
from .graphs import LabeledMultigraph, multigraph
from .reduction import twin_reduce


def complete_graph(n: int) -> LabeledMultigraph:
    return multigraph(n, [(i, j, 1) for i in range(n) for j in range(i + 1, n)])


def path_graph(n: int) -> LabeledMultigraph:
    return multigraph(n, [(i, i + 1, 1) for i in range(n - 1)])


def cycle_graph(n: int) -> LabeledMultigraph:
    if n < 3:
        raise ValueError("cycles need at least 3 nodes")
    return multigraph(n, [(i, (i + 1) % n, 1) for i in range(n)])


def star_graph(n: int) -> LabeledMultigraph:
    return multigraph(n, [(0, i, 1) for i in range(1, n)])


def graph_corpus() -> dict[str, LabeledMultigraph]:
    """Simple unlabeled graphs on up to 6 nodes, varied shape and density."""
    paw = multigraph(4, [(0, 1, 1), (0, 2, 1), (1, 2, 1), (2, 3, 1)])
    bull = multigraph(5, [(0, 1, 1), (0, 2, 1), (1, 2, 1), (1, 3, 1), (2, 4, 1)])
    house = multigraph(5, [(0, 1, 1), (0, 2, 1), (1, 2, 1), (1, 3, 1), (2, 4, 1), (3, 4, 1)])
    k3_plus_k2 = multigraph(5, [(0, 1, 1), (0, 2, 1), (1, 2, 1), (3, 4, 1)])
    k33 = multigraph(6, [(i, j, 1) for i in range(3) for j in range(3, 6)])
    prism = multigraph(
        6,
        [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1),
         (0, 3, 1), (1, 4, 1), (2, 5, 1)],
    )
    return {
        "K1": complete_graph(1),
        "K2": complete_graph(2),
        "P3": path_graph(3),
        "K3": complete_graph(3),
        "P4": path_graph(4),
        "C4": cycle_graph(4),
        "S4": star_graph(4),
        "paw": paw,
        "K4": complete_graph(4),
        "C5": cycle_graph(5),
        "bull": bull,
        "house": house,
        "S5": star_graph(5),
        "K3+K2": k3_plus_k2,
        "C6": cycle_graph(6),
        "K33": k33,
        "prism": prism,
    }


def graphon_corpus() -> dict[str, StepGraphon]:
    """Step graphons exercising twins, padding, zeros and uneven weights."""
    return {
        "bipartite": step_graphon(["1/2", "1/2"], [["0", "1"], ["1", "0"]]),
        "uniform_half": constant(Fraction(1, 2)),
        "triangle": from_graph(complete_graph(3)),
        "blocks3": step_graphon(
            ["1/2", "1/3", "1/6"],
            [["1/2", "1/4", "3/4"], ["1/4", "1", "0"], ["3/4", "0", "1/3"]],
        ),
        "twinned": step_graphon(
            ["1/4", "1/4", "1/2"],
            [["1/3", "1/3", "2/3"], ["1/3", "1/3", "2/3"], ["2/3", "2/3", "1/5"]],
        ),
        "padded_bipartite": step_graphon(
            ["1/2", "1/2", "0"],
            [["0", "1", "1/2"], ["1", "0", "1/7"], ["1/2", "1/7", "1"]],
        ),
        "uneven": step_graphon(
            ["1/3", "2/3"], [["1/4", "3/4"], ["3/4", "1/2"]]
        ),
    }


def weakly_isomorphic_pairs() -> list[tuple[str, StepGraphon, StepGraphon]]:
    """Named pairs whose reduced forms coincide, plus how they got that way."""
    corpus = graphon_corpus()
    bip = corpus["bipartite"]
    uneven = corpus["uneven"]
    twinned = corpus["twinned"]
    return [
        ("blowup2-vs-blowup3", blowup(bip, 2), blowup(bip, 3)),
        ("bipartite-vs-padded", bip, corpus["padded_bipartite"]),
        ("twinned-vs-reduced", twinned, twin_reduce(twinned)),
        ("uneven-vs-blowup", uneven, blowup(uneven, 2)),
    ]
