"""Newton polygons, detected boundary slopes and slope gluing for twisted doubles."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Union

from .laurent import LPoly2, PolynomialError


class _Marker:
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self) -> str:
        return self.name

    def __reduce__(self):
        return (_marker, (self.name,))


def _marker(name: str) -> "_Marker":
    return INF if name == "inf" else EMPTY


INF = _Marker("inf")
EMPTY = _Marker("empty")  # the non-intersection marker in slope pairs

Slope = Union[Fraction, _Marker]


def slope(value) -> Slope:
    if value is INF or value is EMPTY:
        return value
    if isinstance(value, str):
        v = value.strip().lower()
        if v in ("inf", "infinity", "∞", "1/0"):
            return INF
        return Fraction(v)
    return Fraction(value)


def slope_key(s: Slope):
    if s is EMPTY:
        return (2, 0)
    if s is INF:
        return (1, 0)
    return (0, s)


def sorted_slopes(slopes: Iterable[Slope]) -> list[Slope]:
    return sorted(slopes, key=slope_key)


def format_slope(s: Slope) -> str:
    if s is INF:
        return "inf"
    if s is EMPTY:
        return "empty"
    return str(s)


def slope_to_json(s: Slope):
    if isinstance(s, Fraction) and s.denominator == 1:
        return s.numerator
    return format_slope(s)


@dataclass(frozen=True)
class SlopePair:
    mx: Slope
    my: Slope

    def __post_init__(self):
        if self.mx is EMPTY and self.my is EMPTY:
            raise ValueError("a slope pair cannot be empty in both components")


# ---------------------------------------------------------------------------
# Newton polygons

Point = tuple[int, int]


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class NewtonPolygon:
    """Convex hull vertices in counterclockwise order, starting at the lex-least point."""

    vertices: tuple[Point, ...]

    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        if len(v) < 2:
            return []
        if len(v) == 2:
            return [(v[0], v[1])]
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def slopes(self) -> set[Slope]:
        out: set[Slope] = set()
        for (i1, j1), (i2, j2) in self.edges():
            di, dj = i2 - i1, j2 - j1
            out.add(INF if di == 0 else Fraction(dj, di))
        return out


def convex_hull(points: Iterable[Point]) -> NewtonPolygon:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return NewtonPolygon(tuple(pts))
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return NewtonPolygon(tuple(lower[:-1] + upper[:-1]))


def newton_polygon(f: LPoly2) -> NewtonPolygon:
    if f.is_zero():
        raise PolynomialError("Newton polygon of the zero polynomial")
    return convex_hull(e for e, _ in f.items())


def detected_slopes(f: LPoly2) -> set[Slope]:
    """Edge slopes ΔM/ΔL of the Newton polygon; vertical edges give inf."""
    return newton_polygon(f).slopes()


def _angle_half(d: Point) -> int:
    x, y = d
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _angle_cmp(a: Point, b: Point) -> int:
    ha, hb = _angle_half(a), _angle_half(b)
    if ha != hb:
        return ha - hb
    c = a[0] * b[1] - a[1] * b[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def _ccw_edges_from_bottom(poly: NewtonPolygon) -> tuple[Point, list[Point]]:
    v = list(poly.vertices)
    k = min(range(len(v)), key=lambda i: (v[i][1], v[i][0]))
    v = v[k:] + v[:k]
    if len(v) == 1:
        return v[0], []
    if len(v) == 2:
        d = (v[1][0] - v[0][0], v[1][1] - v[0][1])
        return v[0], [d, (-d[0], -d[1])]
    return v[0], [(v[(i + 1) % len(v)][0] - v[i][0], v[(i + 1) % len(v)][1] - v[i][1])
                  for i in range(len(v))]


def minkowski_sum(a: NewtonPolygon, b: NewtonPolygon) -> NewtonPolygon:
    """Minkowski sum by merging the angle-sorted edge sequences."""
    if not a.vertices or not b.vertices:
        raise ValueError("Minkowski sum with an empty polygon")
    sa, ea = _ccw_edges_from_bottom(a)
    sb, eb = _ccw_edges_from_bottom(b)
    edges = sorted(ea + eb, key=cmp_to_key(_angle_cmp))
    pts = [(sa[0] + sb[0], sa[1] + sb[1])]
    for dx, dy in edges:
        x, y = pts[-1]
        pts.append((x + dx, y + dy))
    # the walk may repeat collinear points; the hull pass tidies them up
    return convex_hull(pts)


# ---------------------------------------------------------------------------
# Boundary slopes of twist knots and twisted doubles

def bs_twist(n: int) -> set[Slope]:
    if n <= -1:
        vals = {-4, 0, -4 * n}
    elif n == 0:
        vals = {0}
    elif n == 1:
        vals = {0, -6}
    else:
        vals = {-4, 0, -4 * n - 2}
    return {Fraction(v) for v in vals}


def whitehead_pair_lookup(my: Slope) -> set[Slope]:
    """All mx pairing with ``my`` in the boundary-slope pairs of the Whitehead link.

    The pairs are (2/t, 2t) for t in [0, inf], (-2/t - 2, -2t) for t in [0, 1],
    (-2/t, -2 - 2t) for t in [1, inf] and (-3 + s, -3 - s) for s in [-1, 1],
    together with (0, empty) and (-4, empty).
    """
    if my is EMPTY:
        return {Fraction(0), Fraction(-4)}
    if my is INF:
        # t = inf in the first and third families
        return {Fraction(0)}
    out: set[Slope] = set()
    if my >= 0:
        out.add(INF if my == 0 else 4 / my)
    if -2 <= my <= 0:
        out.add(INF if my == 0 else 4 / my - 2)
    if my <= -4:
        out.add(4 / (my + 2))
    if -4 <= my <= -2:
        out.add(-6 - my)
    return out


def glue_slope(m: Slope, r: int) -> Slope:
    """Image q/(p - qr) of the companion slope p/q under the r-twisted gluing."""
    if m is EMPTY:
        raise ValueError("cannot glue the empty slope")
    if m is INF:
        p, q = 1, 0
    else:
        p, q = m.numerator, m.denominator
    d = p - q * r
    return INF if d == 0 else Fraction(q, d)


def bs_double(r: int, n: int) -> set[Slope]:
    """Boundary slopes of the r-twisted Whitehead double of K(n)."""
    if n == 0:
        raise ValueError("companion K(0) is the unknot; need n != 0")
    out = whitehead_pair_lookup(EMPTY)
    for m in bs_twist(n):
        out |= whitehead_pair_lookup(glue_slope(m, r))
    return out


def predicted_fig8_double_slopes(r: int) -> set[Slope]:
    """Expected Newton-polygon slopes of the distinguished factor for D_r(K(-1))."""
    if r < -4:
        vals = {-4, 0, -4 * r - 16, 16 - 4 * r}
    elif r == -4:
        vals = {-4, 0, 32}
    elif r < 4:
        vals = {-4, 0, -4 * r - 18, 16 - 4 * r}
    elif r == 4:
        vals = {-4, 0, -34}
    else:
        vals = {-4, 0, -4 * r - 18, -4 * r + 14}
    return {Fraction(v) for v in vals}
