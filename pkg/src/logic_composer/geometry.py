"""Triangle constructions and residual predicates for the four problem groups.

Points are plain ``(x, y)`` tuples and everything is scalar ``math``; the
Monte-Carlo layer calls these functions millions of times, where numpy's
per-call overhead dominates.

Residuals are scale-free: angle residuals are raw radians, length residuals
are divided by the perimeter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Mapping, Tuple

Point = Tuple[float, float]

GROUPS = ("I", "II", "III", "IV")
ATOMS = ("p", "q", "r")

MIN_AREA_RATIO = 1e-6
MIN_ANGLE = 1e-3


class GeometryError(ValueError):
    pass


class DegenerateError(GeometryError):
    pass


class UnknownPredicateError(GeometryError):
    pass


def sub(u: Point, v: Point) -> Point:
    return (u[0] - v[0], u[1] - v[1])


def dot(u: Point, v: Point) -> float:
    return u[0] * v[0] + u[1] * v[1]


def cross(u: Point, v: Point) -> float:
    return u[0] * v[1] - u[1] * v[0]


def dist(u: Point, v: Point) -> float:
    return math.hypot(u[0] - v[0], u[1] - v[1])


def midpoint(u: Point, v: Point) -> Point:
    return ((u[0] + v[0]) / 2, (u[1] + v[1]) / 2)


def lerp(u: Point, v: Point, s: float) -> Point:
    return ((1 - s) * u[0] + s * v[0], (1 - s) * u[1] + s * v[1])


def angle_at(P: Point, Q: Point, R: Point) -> float:
    """Unsigned angle PQR at vertex Q, in radians."""
    u = sub(P, Q)
    v = sub(R, Q)
    nu = math.hypot(*u)
    nv = math.hypot(*v)
    if nu == 0.0 or nv == 0.0:
        raise DegenerateError("angle vertex coincides with an arm point")
    c = dot(u, v) / (nu * nv)
    return math.acos(max(-1.0, min(1.0, c)))


def circumcenter(P: Point, Q: Point, R: Point) -> Point:
    """Intersection of the perpendicular bisectors of PQ and PR."""
    bx, by = sub(Q, P)
    cx, cy = sub(R, P)
    d = 2.0 * (bx * cy - by * cx)
    if d == 0.0:
        raise DegenerateError("collinear points have no circumcenter")
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    return (P[0] + ux, P[1] + uy)


def foot(P: Point, Q: Point, R: Point) -> Point:
    """Orthogonal projection of P onto line QR."""
    d = sub(R, Q)
    s = dot(sub(P, Q), d) / dot(d, d)
    return (Q[0] + s * d[0], Q[1] + s * d[1])


@dataclass(frozen=True)
class Triangle:
    A: Point
    B: Point
    C: Point

    def __post_init__(self):
        for name in "ABC":
            x, y = getattr(self, name)
            object.__setattr__(self, name, (float(x), float(y)))
        check_nondegenerate(self.A, self.B, self.C)

    @property
    def points(self) -> tuple:
        return (self.A, self.B, self.C)

    @property
    def sides(self) -> tuple:
        """Lengths a = |BC|, b = |CA|, c = |AB|."""
        return (dist(self.B, self.C), dist(self.C, self.A), dist(self.A, self.B))

    @property
    def perimeter(self) -> float:
        return sum(self.sides)

    @property
    def angles(self) -> tuple:
        A, B, C = self.points
        return (angle_at(C, A, B), angle_at(A, B, C), angle_at(B, C, A))

    def swapped(self) -> "Triangle":
        """Same triangle with A and B exchanged."""
        return Triangle(self.B, self.A, self.C)

    def to_list(self) -> list:
        return [list(self.A), list(self.B), list(self.C)]

    @classmethod
    def from_list(cls, pts) -> "Triangle":
        return cls(*(tuple(p) for p in pts))


def degeneracy(A: Point, B: Point, C: Point) -> tuple:
    """(2*|area| / perimeter**2, smallest angle); both large means well-shaped."""
    per = dist(A, B) + dist(B, C) + dist(C, A)
    if per * per == 0.0:  # also catches underflow for subnormal sizes
        return 0.0, 0.0
    ratio = abs(cross(sub(B, A), sub(C, A))) / (per * per)
    try:
        smallest = min(angle_at(C, A, B), angle_at(A, B, C), angle_at(B, C, A))
    except DegenerateError:
        smallest = 0.0
    return ratio, smallest


def is_nondegenerate(A, B, C, min_area_ratio=MIN_AREA_RATIO, min_angle=MIN_ANGLE) -> bool:
    ratio, smallest = degeneracy(A, B, C)
    return ratio >= min_area_ratio and smallest >= min_angle


def check_nondegenerate(A, B, C, min_area_ratio=MIN_AREA_RATIO, min_angle=MIN_ANGLE):
    ratio, smallest = degeneracy(A, B, C)
    if ratio < min_area_ratio or smallest < min_angle:
        raise DegenerateError(
            f"degenerate triangle: area ratio {ratio:.3g}, smallest angle {smallest:.3g} rad"
        )


@dataclass(frozen=True)
class DerivedPoints:
    group: str
    points: Mapping[str, Point] = field(default_factory=dict)

    def __getitem__(self, name: str) -> Point:
        return self.points[name]

    def __getattr__(self, name: str) -> Point:
        try:
            return self.__dict__["points"][name]
        except KeyError:
            raise AttributeError(name) from None


def _incenter_and_feet(A, B, C) -> dict:
    a, b, c = dist(B, C), dist(C, A), dist(A, B)
    s = a + b + c
    J = ((a * A[0] + b * B[0] + c * C[0]) / s, (a * A[1] + b * B[1] + c * C[1]) / s)
    # BA1 : A1C = AB : AC and AB1 : B1C = AB : BC
    A1 = lerp(B, C, c / (b + c))
    B1 = lerp(A, C, c / (a + c))
    return {"A1": A1, "B1": B1, "J": J}


def _construct_points(group: str, A: Point, B: Point, C: Point) -> dict:
    if group == "I":
        return {"D": midpoint(B, C)}
    if group == "II":
        return _incenter_and_feet(A, B, C)
    if group == "III":
        return {"H": foot(C, A, B), "M": midpoint(A, B)}
    if group == "IV":
        F, D, E = midpoint(B, C), midpoint(C, A), midpoint(A, B)
        pts = {"F": F, "D": D, "E": E, "G": circumcenter(F, D, E)}
        pts["J"] = _incenter_and_feet(A, B, C)["J"]
        return pts
    raise UnknownPredicateError(f"unknown group {group!r}")


def construct(group: str, tri: Triangle) -> DerivedPoints:
    if group not in GROUPS:
        raise UnknownPredicateError(f"unknown group {group!r}")
    return DerivedPoints(group, _construct_points(group, *tri.points))


# Signed residuals. Each takes raw vertices plus the constructed points and
# returns a value whose absolute value is the residual. The r residuals change
# sign across the predicate's zero set, which the slice solver relies on.

def _perimeter(A, B, C) -> float:
    return dist(A, B) + dist(B, C) + dist(C, A)


def _iso_at_a(A, B, C, dp):
    return (dist(A, C) - dist(A, B)) / _perimeter(A, B, C)


def _iso_at_c(A, B, C, dp):
    return (dist(A, C) - dist(B, C)) / _perimeter(A, B, C)


def _angle_a(target):
    return lambda A, B, C, dp: angle_at(B, A, C) - target


def _angle_c(target):
    return lambda A, B, C, dp: angle_at(A, C, B) - target


def _r_median(A, B, C, dp):
    return angle_at(dp["D"], A, C) + angle_at(A, B, C) - math.pi / 2


def _r_bisector_feet(A, B, C, dp):
    return (dist(dp["J"], dp["A1"]) - dist(dp["J"], dp["B1"])) / _perimeter(A, B, C)


def _r_altitude_median(A, B, C, dp):
    alpha, beta = angle_at(C, A, B), angle_at(A, B, C)
    sign = 1.0
    if alpha < beta:
        # compare with the alpha >= beta labeling; H and M do not depend on it
        A, B, sign = B, A, -1.0
    return sign * (angle_at(A, C, dp["M"]) - angle_at(B, C, dp["H"]))


def _bisector_direction(A, B, C) -> Point:
    u, v = sub(A, C), sub(B, C)
    nu, nv = math.hypot(*u), math.hypot(*v)
    w = (u[0] / nu + v[0] / nv, u[1] / nu + v[1] / nv)
    nw = math.hypot(*w)
    return (w[0] / nw, w[1] / nw)


def _r_nine_point(A, B, C, dp):
    # signed distance from G to the internal bisector line through C
    w = _bisector_direction(A, B, C)
    return cross(w, sub(dp["G"], C)) / _perimeter(A, B, C)


_SIGNED: Dict[Tuple[str, str], Callable] = {
    ("I", "p"): _iso_at_a,
    ("I", "q"): _angle_a(math.pi / 2),
    ("I", "r"): _r_median,
    ("II", "p"): _iso_at_c,
    ("II", "q"): _angle_c(math.pi / 3),
    ("II", "r"): _r_bisector_feet,
    ("III", "p"): _iso_at_c,
    ("III", "q"): _angle_c(math.pi / 2),
    ("III", "r"): _r_altitude_median,
    ("IV", "p"): _iso_at_c,
    ("IV", "q"): _angle_c(math.pi / 3),
    ("IV", "r"): _r_nine_point,
}

PREDICATE_TEXT = {
    ("I", "p"): "AC = AB",
    ("I", "q"): "angle BAC = 90 deg",
    ("I", "r"): "angle DAC + angle ABC = 90 deg",
    ("II", "p"): "AC = BC",
    ("II", "q"): "angle ACB = 60 deg",
    ("II", "r"): "JA1 = JB1",
    ("III", "p"): "AC = BC",
    ("III", "q"): "angle ACB = 90 deg",
    ("III", "r"): "angle ACM = angle BCH (alpha >= beta)",
    ("IV", "p"): "AC = BC",
    ("IV", "q"): "angle ACB = 60 deg",
    ("IV", "r"): "center G of circle FDE lies on the bisector of angle ACB",
}


def _lookup(group: str, atom: str):
    try:
        return _SIGNED[(group, atom)]
    except KeyError:
        raise UnknownPredicateError(f"unknown predicate {group}.{atom}") from None


def raw_residual(group: str, atom: str, A: Point, B: Point, C: Point, dp=None) -> float:
    """Unsigned residual on raw vertices (no degeneracy check)."""
    return abs(signed_residual(group, atom, A, B, C, dp))


def signed_residual(group: str, atom: str, A: Point, B: Point, C: Point, dp=None) -> float:
    fn = _lookup(group, atom)
    if dp is None:
        dp = _construct_points(group, A, B, C)
    return fn(A, B, C, dp)


@dataclass(frozen=True)
class PredicateResult:
    holds: bool
    residual: float


def predicate(group: str, atom: str, tri: Triangle, dp: DerivedPoints = None, tol: float = 1e-9) -> PredicateResult:
    _lookup(group, atom)
    if dp is None:
        dp = construct(group, tri)
    res = raw_residual(group, atom, *tri.points, dp=dp.points)
    return PredicateResult(res < tol, res)


def residuals(group: str, A: Point, B: Point, C: Point) -> dict:
    """All three atom residuals of ``group`` on raw vertices."""
    dp = _construct_points(group, A, B, C)
    return {atom: raw_residual(group, atom, A, B, C, dp) for atom in ATOMS}
