"""Satellite composition: connected sums, cables, doubles and expression dispatch."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from . import knotlang as kl
from .families import (
    TWIST_X,
    TWIST_Y,
    KnotTable,
    Unsupported,
    dtk_apoly,
    torus_apoly,
    torus_factor_F,
    twist_apoly,
    _RECURSION,
)
from .laurent import (
    FactoredAPoly,
    GZFactor,
    L,
    LPoly2,
    LPoly3,
    M,
    PolynomialError,
    extension_resultant,
    lift_aux,
    mirror,
    normalize,
    resultant_L,
    subst_M_power,
)


class EngineError(ValueError):
    """A construction whose preconditions fail (typed domain error)."""


class UnverifiedRangeWarning(UserWarning):
    pass


UNKNOT = FactoredAPoly([L - 1])


def _require_gz(A: FactoredAPoly) -> list[GZFactor]:
    try:
        return A.gz_factors()
    except PolynomialError as exc:
        raise EngineError(str(exc)) from None


# ---------------------------------------------------------------------------
# Killing slopes

@dataclass(frozen=True)
class KillingSlopeSet:
    """Killing slopes r with the signs delta of the binomials L*M^r - delta."""

    entries: frozenset[tuple[int, int]]

    @property
    def slopes(self) -> list[int]:
        return sorted({r for r, _ in self.entries})

    def signs(self, r: int) -> set[int]:
        return {d for s, d in self.entries if s == r}

    def __iter__(self):
        return iter(sorted(self.entries))


def killing_slopes(A: FactoredAPoly) -> KillingSlopeSet:
    return KillingSlopeSet(frozenset((g.r, g.delta) for g in _require_gz(A)))


# ---------------------------------------------------------------------------
# Connected sums and cables

def connected_sum_gz(A1: FactoredAPoly, A2: FactoredAPoly) -> FactoredAPoly:
    g1, g2 = _require_gz(A1), _require_gz(A2)
    return FactoredAPoly.from_gz(
        GZFactor(a.r + b.r, a.delta * b.delta) for a, b in product(g1, g2)
    ).reduce()


def connected_sum_multi(As: Sequence[FactoredAPoly]) -> FactoredAPoly:
    gzs = [sorted(set(_require_gz(A)), key=lambda g: (g.r, g.delta)) for A in As]
    out = set()
    for combo in product(*gzs):
        delta = 1
        for g in combo:
            delta *= g.delta
        out.add(GZFactor(sum(g.r for g in combo), delta))
    return FactoredAPoly.from_gz(out)


def _cable_unknot(p: int, q: int) -> FactoredAPoly:
    if abs(p) == 1:
        return UNKNOT
    if abs(p) < q:
        # T(p, q) = T(q, p), with the sign carried by the first entry
        return torus_apoly(q if p > 0 else -q, abs(p))
    return torus_apoly(p, q)


def _is_unknot(A: FactoredAPoly) -> bool:
    return A == UNKNOT


def cable_gz(p: int, q: int, A_C: FactoredAPoly) -> FactoredAPoly:
    gz = _require_gz(A_C)
    if _is_unknot(A_C):
        return _cable_unknot(p, q)
    F = torus_factor_F(p, q)
    inner = [GZFactor(g.r * q * q, g.delta**q) for g in gz]
    return (UNKNOT * F * FactoredAPoly.from_gz(inner)).reduce()


def _split_known_binomials(f: LPoly2, candidates: Iterable[LPoly2]) -> list[LPoly2]:
    """Split ``f`` into the given binomials if they divide it exactly, else keep it whole."""
    rest = f
    parts: list[LPoly2] = []
    for c in candidates:
        while not rest.is_monomial() and c.divides(rest):
            rest = rest.exact_div(c)
            parts.append(c)
    if not rest.is_monomial():
        return [f]
    return parts


def cable_general(p: int, q: int, A_C: FactoredAPoly) -> FactoredAPoly:
    """Cable via the auxiliary-variable resultant, one companion factor at a time."""
    if _is_unknot(A_C):
        return _cable_unknot(p, q)
    F = torus_factor_F(p, q)
    g = LPoly3({(0, 1, 0): 1, (q, 0, 0): -1})  # L - Lbar^q
    parts: list[LPoly2] = []
    for f, _ in A_C.items:
        if f == L - 1:
            continue
        if f.deg_L() == 0:
            parts.append(subst_M_power(f, q))
            continue
        res = resultant_L(lift_aux(subst_M_power(f, q)), g)
        gzf = GZFactor.from_poly(f)
        if gzf is not None:
            predicted = GZFactor(gzf.r * q * q, gzf.delta**q).poly
            parts.extend(_split_known_binomials(normalize(res), [predicted]))
        else:
            parts.append(res)
    return (UNKNOT * F * FactoredAPoly(parts)).reduce()


def winding_extension(f_C: LPoly2, w: int) -> LPoly2:
    if w < 1:
        raise EngineError("winding number must be positive")
    if f_C.deg_L() == 0:
        return normalize(subst_M_power(f_C, w))
    return normalize(extension_resultant(f_C, w))


# ---------------------------------------------------------------------------
# Doubles

def whitehead_double(n: int, A_C: FactoredAPoly) -> FactoredAPoly:
    slopes = killing_slopes(A_C).slopes
    return FactoredAPoly([L - 1] + [twist_apoly(n - r) for r in slopes])


def double_twisted_double(m: int, n: int, A_C: FactoredAPoly,
                          table: KnotTable | None = None) -> FactoredAPoly | Unsupported:
    if m == 1:
        return whitehead_double(n, A_C)
    factors = []
    for r in killing_slopes(A_C).slopes:
        f = dtk_apoly(m, n - r, table)
        if isinstance(f, Unsupported):
            return f
        factors.append(f)
    return UNKNOT * FactoredAPoly(factors).reduce()


FIG8_VERIFIED_RANGE = range(-11, 12)


def _fig8_k_eps(r: int) -> tuple[int, int]:
    if r > 4:
        return r - 4, -1
    if r > -4:
        return 0, 0
    return -r - 4, 1


def fig8_double_P(r: int) -> LPoly2:
    """The distinguished factor P_r of the A-polynomial of D_r(K(-1))."""
    k, eps = _fig8_k_eps(r)
    x, y = TWIST_X, TWIST_Y
    lm2 = L + M**2
    tail = L * (M**2 - 1) ** 3 * (M**2 + 1) * (L - M**4) * x**2 * y * (2 * x**2 - y)
    if eps == -1:
        # y^k / (L + M^2) = M^(4k) (L + M^2)^(4k - 1)
        tail = tail * M ** (4 * k) * lm2 ** (4 * k - 1)
    else:
        tail = tail * y**k * lm2**eps
    head = _RECURSION.raw(r - 4) * _RECURSION.raw(r + 4)
    return normalize(head - tail)


def fig8_double_apoly(r: int) -> FactoredAPoly:
    if r not in FIG8_VERIFIED_RANGE:
        warnings.warn(
            f"D[{r}](K(-1)): formula unverified beyond -11 <= r <= 11; computing anyway",
            UnverifiedRangeWarning,
            stacklevel=2,
        )
    return FactoredAPoly([L - 1, twist_apoly(r), fig8_double_P(r)])


# ---------------------------------------------------------------------------
# Dispatch

@dataclass
class Result:
    apoly: FactoredAPoly
    conjectural: bool = False
    notes: list[str] = field(default_factory=list)


def _unsupported(res: Unsupported) -> EngineError:
    return EngineError(f"unsupported: {res.reason}")


def apoly(e: kl.KnotExpr, table: KnotTable | None = None,
          assume_conjecture: bool = False) -> Result:
    """A-polynomial of a knot expression, recursively composed."""
    notes: list[str] = []
    flags = {"conjectural": False}

    def go(node: kl.KnotExpr) -> FactoredAPoly:
        if isinstance(node, kl.Unknot):
            return UNKNOT
        if isinstance(node, kl.Torus):
            return torus_apoly(node.p, node.q)
        if isinstance(node, kl.Twist):
            canon = kl.twist(node.n)
            if not isinstance(canon, kl.Twist):
                return go(canon)
            return FactoredAPoly([L - 1, twist_apoly(node.n)])
        if isinstance(node, kl.DoubleTwistKnot):
            f = dtk_apoly(node.m, node.n, table)
            if isinstance(f, Unsupported):
                raise _unsupported(f)
            return FactoredAPoly([L - 1, f])
        if isinstance(node, kl.Mirror):
            return go(node.inner).map(mirror)
        if isinstance(node, kl.Sum):
            return connected_sum_gz(_gz_operand(node.left, "connected sum"),
                                    _gz_operand(node.right, "connected sum"))
        if isinstance(node, kl.Cable):
            return cable_gz(node.p, node.q, _gz_operand(node.inner, "cable"))
        if isinstance(node, (kl.WhiteheadDouble, kl.DoubleTwistedDouble)):
            return double(node)
        raise EngineError(f"unknown expression {node!r}")

    def _gz_operand(node: kl.KnotExpr, what: str) -> FactoredAPoly:
        A = go(node)
        try:
            A.gz_factors()
        except PolynomialError as exc:
            raise EngineError(
                f"{what} of {kl.format_expr(node)}: companion not in G_Z ({exc})"
            ) from None
        return A

    def double(node) -> FactoredAPoly:
        inner = node.inner
        m = 1 if isinstance(node, kl.WhiteheadDouble) else node.m
        n = node.n
        if m == 1 and _is_fig8(inner):
            return fig8_double_apoly(n)
        cls = kl.classify(inner)
        A_C = go(inner)
        if cls is not kl.KnotClass.GraphKnot:
            gz = True
            try:
                A_C.gz_factors()
            except PolynomialError:
                gz = False
            if not (assume_conjecture and gz):
                raise EngineError(
                    f"double of {kl.format_expr(inner)}: companion is not a graph knot"
                    + ("" if gz else " and not in G_Z")
                )
            flags["conjectural"] = True
            notes.append(f"conjectural: {kl.format_expr(inner)} is not a graph knot")
        if m == 1:
            return whitehead_double(n, A_C)
        out = double_twisted_double(m, n, A_C, table)
        if isinstance(out, Unsupported):
            raise _unsupported(out)
        return out

    A = go(e)
    return Result(A, flags["conjectural"], notes)


def _is_fig8(node: kl.KnotExpr) -> bool:
    if isinstance(node, kl.Twist):
        return node.n == -1
    if isinstance(node, kl.DoubleTwistKnot):
        return kl.double_twist(node.m, node.n) == kl.Twist(-1)
    return False


def apoly_of(src: str, **kw) -> FactoredAPoly:
    return apoly(kl.parse(src), **kw).apoly
