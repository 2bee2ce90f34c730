from fractions import Fraction as F

import pytest
from hypothesis import given

from graphlim import (
    BlackBoxKernel,
    StepGraphon,
    affine_rescale,
    block_of,
    blowup,
    constant,
    evaluate,
    from_graph,
    multigraph,
    parse_graphon,
    serialize_graphon,
    step_graphon,
    validate,
)
from graphlim.corpus import complete_graph, graphon_corpus

from conftest import step_graphons

B = step_graphon(["1/2", "1/2"], [["0", "1"], ["1", "0"]])


def test_validate_distinct_messages():
    with pytest.raises(ValueError, match="nonnegative"):
        step_graphon(["-1/2", "3/2"], [["0", "0"], ["0", "0"]])
    with pytest.raises(ValueError, match="sum to 1"):
        step_graphon(["1/2", "1/3"], [["0", "0"], ["0", "0"]])
    with pytest.raises(ValueError, match="2x2 matrix"):
        step_graphon(["1/2", "1/2"], [["0", "0"]])
    with pytest.raises(ValueError, match="asymmetric"):
        step_graphon(["1/2", "1/2"], [["0", "1"], ["1/2", "0"]])
    with pytest.raises(ValueError, match="outside range"):
        step_graphon(["1/2", "1/2"], [["0", "2"], ["2", "0"]])


def test_from_graph_is_adjacency_with_uniform_weights():
    H = from_graph(complete_graph(3))
    assert H.weights == (F(1, 3),) * 3
    assert H.values[0][1] == F(1) and H.values[0][0] == F(0)
    with pytest.raises(ValueError):
        from_graph(multigraph(2, [(0, 1, 2)]))


def test_constant_and_blowup():
    c = constant(F(2, 3))
    assert c.block_count == 1 and c.values[0][0] == F(2, 3)
    bu = blowup(B, 2)
    assert bu.weights == (F(1, 4),) * 4
    # copy c of block i sits at index c*B+i
    assert bu.values[0][2] == B.values[0][0]
    assert bu.values[0][1] == B.values[0][1]
    assert bu.values[0][3] == B.values[0][1]
    assert blowup(B, 1) == B
    with pytest.raises(ValueError):
        blowup(B, 0)


def test_affine_rescale_tracks_range():
    H = affine_rescale(B, F(1, 2), F(1, 4))
    assert H.values[0][1] == F(3, 4) and H.values[0][0] == F(1, 4)
    assert H.value_range == (F(1, 4), F(3, 4))
    # negative slope flips the endpoints
    Hn = affine_rescale(B, -1, 1)
    assert Hn.value_range == (F(0), F(1))
    with pytest.raises(ValueError):
        affine_rescale(B, 0, 1)


def test_block_of_boundaries():
    H = step_graphon(["1/4", "0", "3/4"], [["0"] * 3] * 3)
    assert block_of(H, F(0)) == 0
    assert block_of(H, F(1, 4)) == 2  # zero-weight block owns no interval
    assert block_of(H, F(99, 100)) == 2
    with pytest.raises(ValueError):
        block_of(H, F(1))
    with pytest.raises(ValueError):
        block_of(H, F(-1, 2))


def test_evaluate_exact():
    assert evaluate(B, F(1, 4), F(3, 4)) == F(1)
    assert evaluate(B, F(1, 4), F(1, 4)) == F(0)
    assert evaluate(B, 0.75, 0.75) == F(0)


def test_serialization_round_trip_and_format_rules():
    text = serialize_graphon(B)
    assert parse_graphon(text) == B
    # files must carry a symmetric matrix
    asym = '{"weights": ["1/2","1/2"], "values": [["0","7"],["1","0"]]}'
    with pytest.raises(ValueError, match="asymmetric"):
        parse_graphon(asym)
    # range only emitted when non-default
    wide = affine_rescale(B, 2, -1)
    assert "range" in serialize_graphon(wide)
    assert "range" not in serialize_graphon(B)
    assert parse_graphon(serialize_graphon(wide)) == wide


@given(step_graphons())
def test_round_trip_random(H):
    assert parse_graphon(serialize_graphon(H)) == H
    validate(H)


def test_black_box_kernel_matches_step_function():
    k = BlackBoxKernel.from_step_graphon(B)
    assert k.evaluator(0.1, 0.9) == 1.0
    assert k.evaluator(0.6, 0.9) == 0.0
    assert k.bound == 1.0


def test_corpus_members_valid():
    for name, H in graphon_corpus().items():
        validate(H)
        assert sum(H.weights) == 1, name
