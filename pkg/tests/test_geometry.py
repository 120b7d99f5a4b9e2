import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from logic_composer import geometry as geo
from logic_composer.geometry import (
    DegenerateError,
    Triangle,
    UnknownPredicateError,
    angle_at,
    construct,
    predicate,
)

EQUILATERAL = Triangle((0, 0), (1, 0), (0.5, math.sqrt(3) / 2))
RIGHT_AT_A = Triangle((0, 0), (4, 0), (0, 3))


def apex_isosceles_at_a(apex_deg):
    """AC = AB = 1 with angle BAC = apex_deg."""
    a = math.radians(apex_deg)
    return Triangle((0, 0), (1, 0), (math.cos(a), math.sin(a)))


def isosceles_at_c(gamma_deg):
    h = 0.5 / math.tan(math.radians(gamma_deg) / 2)
    return Triangle((0, 0), (1, 0), (0.5, h))


def gamma_triangle(gamma_deg, phi):
    """Apex on the arc seeing AB under gamma_deg; phi picks the point."""
    g = math.radians(gamma_deg)
    R = 0.5 / math.sin(g)
    return Triangle((0, 0), (1, 0), (0.5 + R * math.cos(phi), 0.5 / math.tan(g) + R * math.sin(phi)))


def line_intersection(P1, P2, Q1, Q2):
    a = np.array([[P2[0] - P1[0], Q1[0] - Q2[0]], [P2[1] - P1[1], Q1[1] - Q2[1]]])
    s, _ = np.linalg.solve(a, np.array([Q1[0] - P1[0], Q1[1] - P1[1]]))
    return (P1[0] + s * (P2[0] - P1[0]), P1[1] + s * (P2[1] - P1[1]))


def nine_point_center(tri):
    # independent route: (circumcenter + orthocenter) / 2, both from linear solves
    A, B, C = (np.array(v) for v in tri.points)
    M = np.array([B - A, C - A])
    O = np.linalg.solve(2 * M, np.array([B @ B - A @ A, C @ C - A @ A]))
    H = np.linalg.solve(np.array([C - B, C - A]), np.array([(C - B) @ A, (C - A) @ B]))
    return (O + H) / 2


def test_angle_at_examples():
    for P, Q, R in [(EQUILATERAL.A, EQUILATERAL.B, EQUILATERAL.C), (EQUILATERAL.B, EQUILATERAL.C, EQUILATERAL.A)]:
        assert angle_at(P, Q, R) == pytest.approx(math.pi / 3, abs=1e-15)
    assert angle_at(RIGHT_AT_A.A, RIGHT_AT_A.B, RIGHT_AT_A.C) == pytest.approx(math.atan(3 / 4), abs=1e-15)
    assert angle_at(RIGHT_AT_A.A, RIGHT_AT_A.B, RIGHT_AT_A.C) == pytest.approx(0.6435011, abs=1e-7)
    with pytest.raises(DegenerateError):
        angle_at((1, 1), (1, 1), (2, 3))


def test_angle_clamps_collinear():
    assert angle_at((1, 0), (0, 0), (2, 0)) == 0.0
    assert angle_at((1, 0), (0, 0), (-3, 0)) == pytest.approx(math.pi)


def test_triangle_rejects_degenerate():
    with pytest.raises(DegenerateError):
        Triangle((0, 0), (1, 0), (2, 0))
    with pytest.raises(DegenerateError):
        Triangle((0, 0), (1, 0), (0.5, 1e-8))


def test_construct_group_I_midpoint():
    dp = construct("I", RIGHT_AT_A)
    assert dp.D == (2.0, 1.5)


def test_construct_group_IV_equilateral_center_is_centroid():
    G = construct("IV", EQUILATERAL).G
    assert G == pytest.approx((0.5, math.sqrt(3) / 6), abs=1e-15)


def test_construct_group_II_equilateral_symmetric():
    dp = construct("II", EQUILATERAL)
    assert abs(geo.dist(dp.J, dp.A1) - geo.dist(dp.J, dp.B1)) < 1e-12


@pytest.mark.parametrize("C", [(0.3, 0.8), (-0.4, 0.5), (1.7, 0.2), (0.5, 2.0), (0.9, 0.05)])
def test_constructions_against_independent_routes(C):
    tri = Triangle((0, 0), (1, 0), C)
    A, B, C = tri.points
    dp2 = construct("II", tri)
    # feet lie on their sides and split the angles evenly
    assert abs(geo.cross(geo.sub(dp2.A1, B), geo.sub(C, B))) < 1e-12
    assert abs(geo.cross(geo.sub(dp2.B1, A), geo.sub(C, A))) < 1e-12
    assert angle_at(B, A, dp2.A1) == pytest.approx(angle_at(dp2.A1, A, C), abs=1e-12)
    assert angle_at(A, B, dp2.B1) == pytest.approx(angle_at(dp2.B1, B, C), abs=1e-12)
    # J is where the two bisector lines meet
    assert dp2.J == pytest.approx(line_intersection(A, dp2.A1, B, dp2.B1), abs=1e-12)

    dp3 = construct("III", tri)
    assert abs(geo.dot(geo.sub(C, dp3.H), geo.sub(B, A))) < 1e-12
    assert dp3.H[1] == pytest.approx(0.0, abs=1e-15)

    dp4 = construct("IV", tri)
    G = dp4.G
    rad = [geo.dist(G, dp4[k]) for k in "FDE"]
    assert max(rad) - min(rad) < 1e-12 * max(rad)
    assert G == pytest.approx(tuple(nine_point_center(tri)), abs=1e-12)


def test_group_I_right_angle_closed_form():
    dac = angle_at(construct("I", RIGHT_AT_A).D, RIGHT_AT_A.A, RIGHT_AT_A.C)
    assert dac == pytest.approx(math.acos(1.5 / 2.5), abs=1e-15)
    res = predicate("I", "r", RIGHT_AT_A)
    assert res.holds and res.residual < 1e-12
    assert predicate("I", "q", RIGHT_AT_A).holds
    assert not predicate("I", "p", RIGHT_AT_A).holds


def test_group_I_isosceles_apex_40():
    tri = apex_isosceles_at_a(40)
    A, B, C = tri.points
    assert angle_at(construct("I", tri).D, A, C) == pytest.approx(math.radians(20), abs=1e-12)
    assert angle_at(A, B, C) == pytest.approx(math.radians(70), abs=1e-12)
    assert predicate("I", "r", tri).holds
    assert predicate("I", "p", tri).holds


def test_group_III_equilateral_foot_equals_midpoint():
    dp = construct("III", EQUILATERAL)
    assert dp.M == pytest.approx(dp.H, abs=1e-15)
    assert predicate("III", "r", EQUILATERAL).residual < 1e-15


def test_group_III_right_angle_at_c_holds_both_labelings():
    for phi in (0.3, 1.0, 2.5):
        tri = gamma_triangle(90, phi)
        assert predicate("III", "q", tri).holds
        assert predicate("III", "r", tri).holds
        assert predicate("III", "r", tri.swapped()).holds


def test_group_III_scalene_non_right_fails():
    tri = Triangle((0, 0), (1, 0), (0.3, 0.7))
    assert not predicate("III", "r", tri).holds


def test_group_II_generating_instances():
    assert predicate("II", "r", isosceles_at_c(50)).holds
    tri = gamma_triangle(60, 0.2)
    assert predicate("II", "q", tri).holds and not predicate("II", "p", tri).holds
    assert predicate("II", "r", tri).holds


def test_group_IV_obtuse_isosceles_uses_bisector_line():
    tri = isosceles_at_c(150)
    C, G = tri.C, construct("IV", tri).G
    # G sits beyond C, on the line of the internal bisector
    assert G[1] > C[1]
    assert predicate("IV", "r", tri).holds


def test_predicate_tolerance_contract():
    tri = Triangle((0, 0), (1, 0), (0.3, 0.7))
    res = predicate("I", "r", tri, tol=1.0)
    assert res.holds == (res.residual < 1.0)
    assert predicate("I", "r", tri, tol=res.residual).holds is False


def test_unknown_predicate():
    with pytest.raises(UnknownPredicateError):
        predicate("V", "r", EQUILATERAL)
    with pytest.raises(UnknownPredicateError):
        predicate("I", "s", EQUILATERAL)


coord = st.floats(min_value=-3, max_value=3, allow_nan=False)


@st.composite
def triangles(draw):
    pts = [(draw(coord), draw(coord)) for _ in range(3)]
    assume(geo.is_nondegenerate(*pts, min_area_ratio=1e-3, min_angle=0.05))
    return Triangle(*pts)


@st.composite
def similarities(draw):
    theta = draw(st.floats(min_value=0, max_value=2 * math.pi))
    scale = draw(st.floats(min_value=1e-3, max_value=1e3))
    shift = (scale * draw(st.floats(-100, 100)), scale * draw(st.floats(-100, 100)))
    mirror = draw(st.booleans())
    c, s = math.cos(theta), math.sin(theta)

    def apply(P):
        x, y = P[0], -P[1] if mirror else P[1]
        return (scale * (c * x - s * y) + shift[0], scale * (s * x + c * y) + shift[1])

    return apply


@settings(max_examples=300, deadline=None)
@given(triangles(), similarities())
def test_residuals_similarity_invariant(tri, sim):
    moved = Triangle(*(sim(P) for P in tri.points))
    for g in geo.GROUPS:
        before, after = geo.residuals(g, *tri.points), geo.residuals(g, *moved.points)
        for atom in geo.ATOMS:
            assert after[atom] == pytest.approx(before[atom], abs=1e-10)


@settings(max_examples=300, deadline=None)
@given(triangles())
def test_labeling_invariance(tri):
    sw = tri.swapped()
    # swapping A and B swaps A1 and B1
    d, ds = construct("II", tri), construct("II", sw)
    assert ds.A1 == pytest.approx(d.B1, abs=1e-12)
    assert ds.B1 == pytest.approx(d.A1, abs=1e-12)
    for g in ("II", "III"):
        assert geo.raw_residual(g, "r", *sw.points) == pytest.approx(geo.raw_residual(g, "r", *tri.points), abs=1e-12)
