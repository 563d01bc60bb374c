from fractions import Fraction

import pytest

from genwass import build_quotient, validate_action, validate_metric
from genwass.errors import (
    AsymmetricEntry,
    MissingIdentity,
    NegativeEntry,
    NonzeroDiagonal,
    NotClosed,
    NotIsometry,
    TriangleViolation,
    ZeroOffDiagonal,
)
from genwass.spaces import compose, inverse


def test_two_point_metric_is_valid():
    space = validate_metric(["x", "y"], [[0, 1], [1, 0]])
    assert space.n == 2
    assert space.diameter == 1
    assert space.exact


def test_triangle_violation_names_witnesses():
    with pytest.raises(TriangleViolation) as err:
        validate_metric(["x", "y", "z"], [[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    assert (err.value.i, err.value.j, err.value.k) == (0, 2, 1)


def test_asymmetric_entry():
    with pytest.raises(AsymmetricEntry) as err:
        validate_metric(["x", "y"], [[0, 1], [2, 0]])
    assert (err.value.i, err.value.j) == (0, 1)


def test_nonzero_diagonal():
    with pytest.raises(NonzeroDiagonal):
        validate_metric(["x", "y"], [[1, 1], [1, 0]])


def test_zero_off_diagonal():
    with pytest.raises(ZeroOffDiagonal):
        validate_metric(["x", "y"], [[0, 0], [0, 0]])


def test_negative_entry():
    with pytest.raises(NegativeEntry):
        validate_metric(["x", "y"], [[0, -1], [-1, 0]])


def test_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        validate_metric(["x", "y"], [[0, 1]])


def test_rational_strings_stay_exact():
    space = validate_metric(["x", "y"], [[0, Fraction(3, 2)], [Fraction(3, 2), 0]])
    assert space.exact
    assert space.dist[0][1] == Fraction(3, 2)


def test_float_inference():
    space = validate_metric(["x", "y"], [[0, 1.5], [1.5, 0]])
    assert not space.exact


def test_float_triangle_tolerance_absorbs_rounding():
    # equality case plus a relative wobble below 1e-12 * diameter
    d = 0.1 + 0.2  # 0.30000000000000004
    space = validate_metric(["x", "y", "z"], [[0, 0.1, d], [0.1, 0, 0.2], [d, 0.2, 0]])
    assert not space.exact


def test_swap_action_validates():
    space = validate_metric(["x", "y"], [[0, 1], [1, 0]])
    action = validate_action(space, [(0, 1), (1, 0)])
    assert action.order == 2


def test_missing_identity():
    space = validate_metric(["x", "y"], [[0, 1], [1, 0]])
    with pytest.raises(MissingIdentity):
        validate_action(space, [(1, 0)])


def test_non_isometry_detected():
    # path 1 - 2 - 3 with d(1,2)=1, d(2,3)=2: swapping the endpoints is not isometric
    space = validate_metric(["1", "2", "3"], [[0, 1, 3], [1, 0, 2], [3, 2, 0]])
    with pytest.raises(NotIsometry) as err:
        validate_action(space, [(0, 1, 2), (2, 1, 0)])
    assert err.value.g == "g1"


def test_not_closed():
    # two 4-cycles rotations without their composition
    space = validate_metric(
        ["a", "b", "c", "d"],
        [[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]],
    )
    rot = (1, 2, 3, 0)
    with pytest.raises(NotClosed):
        validate_action(space, [(0, 1, 2, 3), rot])


def test_compose_inverse_helpers():
    g = (1, 2, 0)
    assert compose(g, inverse(g)) == (0, 1, 2)
    assert compose(inverse(g), g) == (0, 1, 2)


def test_quotient_of_swap_is_single_point():
    space = validate_metric(["x", "y"], [[0, 1], [1, 0]])
    action = validate_action(space, [(0, 1), (1, 0)])
    q = build_quotient(action)
    assert q.quotient.n == 1
    assert q.orbits == ((0, 1),)
    assert q.projection == (0, 0)


def test_quotient_of_reflection_on_line():
    space = validate_metric(["-1", "0", "1"], [[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    action = validate_action(space, [(0, 1, 2), (2, 1, 0)])
    q = build_quotient(action)
    assert q.quotient.n == 2
    assert q.orbits == ((0, 2), (1,))
    # the two classes sit at distance min over representatives = 1
    a, b = q.projection[0], q.projection[1]
    assert q.quotient.dist[a][b] == 1


def test_trivial_quotient_is_identity_up_to_relabeling():
    space = validate_metric(["x", "y", "z"], [[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    action = validate_action(space, [(0, 1, 2)])
    q = build_quotient(action)
    assert q.quotient.dist == space.dist
    assert q.projection == (0, 1, 2)


def test_quotient_is_one_lipschitz_exhaustively():
    space = validate_metric(
        ["a", "b", "c", "d"],
        [[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]],
    )
    rot = (1, 2, 3, 0)
    elems = [(0, 1, 2, 3), rot, compose(rot, rot), compose(rot, compose(rot, rot))]
    action = validate_action(space, elems)
    q = build_quotient(action)
    for x in range(space.n):
        for y in range(space.n):
            assert q.quotient.dist[q.projection[x]][q.projection[y]] <= space.dist[x][y]
