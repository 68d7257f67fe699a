"""Exact sparse Laurent polynomials over the integers.

``SparsePoly`` is a generic n-variable Laurent polynomial stored as a map from
exponent tuples to Python ints.  ``LPoly2`` specializes it to the two
variables ``L`` and ``M`` and carries the normalization, reduction and
cyclotomic machinery used throughout the package.
"""

from __future__ import annotations

import heapq
import json
import re
from collections import Counter
from dataclasses import dataclass
from functools import reduce as _fold
from math import gcd
from typing import Callable, ClassVar, Iterable, Iterator, Mapping, Sequence


class PolynomialError(ValueError):
    """Raised for domain errors in polynomial operations."""


class NotDivisibleError(PolynomialError):
    pass


Exps = tuple[int, ...]


class SparsePoly:
    """Immutable sparse Laurent polynomial with integer coefficients."""

    nvars: ClassVar[int] = 0
    names: ClassVar[tuple[str, ...]] = ()

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[Exps, int] | None = None):
        if terms:
            self._t = {e: c for e, c in terms.items() if c}
        else:
            self._t = {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exps, int]):
        # trusted constructor: terms already free of zeros
        obj = cls.__new__(cls)
        obj._t = terms
        obj._hash = None
        return obj

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def const(cls, c: int):
        return cls._raw({(0,) * cls.nvars: c} if c else {})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: int = 1):
        if len(exps) != cls.nvars:
            raise PolynomialError(f"expected {cls.nvars} exponents, got {len(exps)}")
        return cls._raw({tuple(exps): c} if c else {})

    @classmethod
    def gen(cls, i: int):
        e = [0] * cls.nvars
        e[i] = 1
        return cls._raw({tuple(e): 1})

    # -- basic protocol --------------------------------------------------
    @property
    def terms(self) -> dict[Exps, int]:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._t == ({(0,) * self.nvars: other} if other else {})
        if not isinstance(other, SparsePoly) or other.nvars != self.nvars:
            return NotImplemented
        return self._t == other._t

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def sort_key(self):
        return tuple(sorted(self._t.items(), reverse=True))

    def _coerce(self, other):
        if isinstance(other, SparsePoly):
            if other.nvars != self.nvars:
                raise PolynomialError("variable count mismatch")
            return other
        if isinstance(other, int):
            return self.const(other)
        return NotImplemented

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._t)
        for e, c in other._t.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._t)
        for e, c in other._t.items():
            v = out.get(e, 0) - c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._raw(out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return self.zero()
            return self._raw({e: c * other for e, c in self._t.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exps, int] = {}
        get = out.get
        n = self.nvars
        if n == 2:
            for (i2, j2), c2 in b.items():
                for (i1, j1), c1 in a.items():
                    k = (i1 + i2, j1 + j2)
                    out[k] = get(k, 0) + c1 * c2
        else:
            for e2, c2 in b.items():
                for e1, c1 in a.items():
                    k = tuple(x + y for x, y in zip(e1, e2))
                    out[k] = get(k, 0) + c1 * c2
        return self._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise PolynomialError("power must be an integer")
        if k < 0:
            if not _is_unit_monomial(self):
                raise PolynomialError("negative powers need a unit monomial")
            return _monomial_inverse(self) ** -k
        result = self.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- structure -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._t

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def degree(self, var: int) -> int:
        if not self._t:
            raise PolynomialError("degree of the zero polynomial")
        return max(e[var] for e in self._t)

    def min_degree(self, var: int) -> int:
        if not self._t:
            raise PolynomialError("degree of the zero polynomial")
        return min(e[var] for e in self._t)

    def min_exps(self) -> Exps:
        if not self._t:
            raise PolynomialError("zero polynomial has no support")
        return tuple(min(e[k] for e in self._t) for k in range(self.nvars))

    def shift(self, exps: Sequence[int]):
        """Multiply by the monomial with the given exponents."""
        return self._raw(
            {tuple(x + y for x, y in zip(e, exps)): c for e, c in self._t.items()}
        )

    def strip_monomial(self):
        """Divide out the largest monomial factor (minimum exponents -> 0)."""
        if not self._t:
            return self
        return self.shift([-m for m in self.min_exps()])

    def leading(self) -> tuple[Exps, int]:
        e = max(self._t)
        return e, self._t[e]

    def content(self) -> int:
        if not self._t:
            raise PolynomialError("content of the zero polynomial")
        return _fold(gcd, (abs(c) for c in self._t.values()))

    def coeffs_in(self, var: int) -> dict[int, "SparsePoly"]:
        """Split into {power of ``var``: coefficient}, coefficients free of ``var``."""
        buckets: dict[int, dict[Exps, int]] = {}
        for e, c in self._t.items():
            k = e[var]
            e2 = e[:var] + (0,) + e[var + 1:]
            buckets.setdefault(k, {})[e2] = c
        return {k: self._raw(v) for k, v in buckets.items()}

    @classmethod
    def from_coeffs(cls, var: int, coeffs: Mapping[int, "SparsePoly"]):
        out: dict[Exps, int] = {}
        for k, p in coeffs.items():
            for e, c in p._t.items():
                e2 = e[:var] + (e[var] + k,) + e[var + 1:]
                out[e2] = out.get(e2, 0) + c
        return cls({e: c for e, c in out.items() if c})

    def map_exponents(self, fn: Callable[[Exps], Exps]):
        out: dict[Exps, int] = {}
        for e, c in self._t.items():
            k = fn(e)
            out[k] = out.get(k, 0) + c
        return type(self)(out)

    def evaluate(self, values: Sequence):
        """Evaluate at a point; ints and Fractions stay exact."""
        total = 0
        for e, c in self._t.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term = term * v**k
            total += term
        return total

    # -- exact division --------------------------------------------------
    def exact_div(self, d: "SparsePoly"):
        """Quotient ``self / d`` over the Laurent ring; raises if inexact."""
        if not d._t:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._t:
            return self
        if len(d._t) == 1:
            (de, dc), = d._t.items()
            out = {}
            for e, c in self._t.items():
                q, r = divmod(c, dc)
                if r:
                    raise NotDivisibleError("coefficient not divisible")
                out[tuple(x - y for x, y in zip(e, de))] = q
            return self._raw(out)
        # shift both into the polynomial ring, divide there, shift back
        fm, dm = self.min_exps(), d.min_exps()
        f = self._t if not any(fm) else {
            tuple(x - y for x, y in zip(e, fm)): c for e, c in self._t.items()}
        g = d._t if not any(dm) else {
            tuple(x - y for x, y in zip(e, dm)): c for e, c in d._t.items()}
        q = _poly_divide(f, g, self.nvars)
        off = tuple(x - y for x, y in zip(fm, dm))
        return self._raw({tuple(x + y for x, y in zip(e, off)): c for e, c in q.items()})

    def divides(self, other: "SparsePoly") -> bool:
        """True iff ``self`` divides ``other`` in the Laurent ring over Z."""
        try:
            other.exact_div(self)
        except NotDivisibleError:
            return False
        return True

    # -- text ------------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Exps, int]]:
        return sorted(self._t.items(), key=lambda t: t[0], reverse=True)

    def to_text(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(self.names, e) if k
            )
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if idx == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_text()!r})"

    @classmethod
    def parse(cls, text: str):
        return parse_poly(text, cls)


def _poly_divide(f: dict, g: dict, n: int) -> dict:
    """Exact division of polynomials (non-negative exponents) in lex order."""
    lg = max(g)
    lc = g[lg]
    rest = [(e, c) for e, c in g.items() if e != lg]
    rem = dict(f)
    heap = [tuple(-x for x in e) for e in rem]
    heapq.heapify(heap)
    q: dict = {}
    while rem:
        while True:
            key = heapq.heappop(heap)
            lt = tuple(-x for x in key)
            if lt in rem:
                break
        c = rem.pop(lt)
        qc, r = divmod(c, lc)
        if r:
            raise NotDivisibleError("leading coefficient not divisible")
        qe = tuple(x - y for x, y in zip(lt, lg))
        if min(qe) < 0:
            raise NotDivisibleError("leading monomial not divisible")
        q[qe] = qc
        for e, gc in rest:
            k = tuple(x + y for x, y in zip(qe, e))
            v = rem.get(k)
            if v is None:
                rem[k] = -qc * gc
                heapq.heappush(heap, tuple(-x for x in k))
            else:
                v -= qc * gc
                if v:
                    rem[k] = v
                else:
                    del rem[k]
    return q


# ---------------------------------------------------------------------------
# Text and JSON formats

_TERM_RE = re.compile(r"\s*([+-]?)\s*([^+-]+(?:\^\s*-\s*\d+[^+-]*)*)")
_FACTOR_RE = re.compile(r"^(?:(\d+)|([A-Za-z]\w*)(?:\^(-?\d+))?)$")


def parse_poly(text: str, cls=None):
    """Parse ``-3*L^2*M^-4 + L - 1`` style text into a polynomial."""
    cls = cls or LPoly2
    names = {n: i for i, n in enumerate(cls.names)}
    src = text.replace(" ", "").replace("\t", "")
    if not src:
        raise PolynomialError("empty polynomial text")
    terms: dict[Exps, int] = {}
    pos = 0
    first = True
    while pos < len(src):
        sign = 1
        if src[pos] in "+-":
            sign = -1 if src[pos] == "-" else 1
            pos += 1
        elif not first:
            raise PolynomialError(f"expected '+' or '-' at position {pos}")
        first = False
        # a term runs to the next +/- that is not an exponent sign
        end = pos
        while end < len(src):
            ch = src[end]
            if ch in "+-" and not (end > 0 and src[end - 1] == "^"):
                break
            end += 1
        body = src[pos:end]
        if not body:
            raise PolynomialError(f"missing term at position {pos}")
        coeff = sign
        exps = [0] * cls.nvars
        for factor in body.split("*"):
            m = _FACTOR_RE.match(factor)
            if not m:
                raise PolynomialError(f"bad factor {factor!r} at position {pos}")
            if m.group(1) is not None:
                coeff *= int(m.group(1))
            else:
                name = m.group(2)
                if name not in names:
                    raise PolynomialError(f"unknown variable {name!r} at position {pos}")
                exps[names[name]] += int(m.group(3)) if m.group(3) else 1
        e = tuple(exps)
        terms[e] = terms.get(e, 0) + coeff
        pos = end
    return cls(terms)


def poly_to_json(f: SparsePoly) -> list:
    return [[str(c), *e] for e, c in f.sorted_terms()]


def poly_from_json(data, cls=None):
    cls = cls or LPoly2
    if not isinstance(data, list):
        raise PolynomialError("polynomial JSON must be an array of triples")
    terms: dict[Exps, int] = {}
    for item in data:
        if not isinstance(item, list) or len(item) != cls.nvars + 1:
            raise PolynomialError(f"bad term {item!r}")
        c, *e = item
        try:
            c = int(c)
        except (TypeError, ValueError):
            raise PolynomialError(f"bad coefficient {c!r}") from None
        if not all(isinstance(x, int) for x in e):
            raise PolynomialError(f"bad exponents in {item!r}")
        terms[tuple(e)] = terms.get(tuple(e), 0) + c
    return cls(terms)


# ---------------------------------------------------------------------------
# Bivariate specialization

class LPoly2(SparsePoly):
    """Laurent polynomial in ``L`` (index 0) and ``M`` (index 1)."""

    nvars = 2
    names = ("L", "M")
    __slots__ = ()

    def deg_L(self) -> int:
        return self.degree(0)

    def deg_M(self) -> int:
        return self.degree(1)

    def subs_monomials(self, l_to: tuple[int, int], m_to: tuple[int, int]) -> "LPoly2":
        """Substitute L -> L^a M^b and M -> L^c M^d."""
        (a, b), (c, d) = l_to, m_to
        return self.map_exponents(lambda e: (a * e[0] + c * e[1], b * e[0] + d * e[1]))

    def __call__(self, l, m):
        return self.evaluate((l, m))


L = LPoly2.gen(0)
M = LPoly2.gen(1)
ONE = LPoly2.const(1)


def normalize(f: LPoly2) -> LPoly2:
    """Canonical representative of ``f`` under multiplication by ±L^a M^b.

    Minimum exponents become 0 and the lex-greatest term (by L, then M)
    gets a positive coefficient.
    """
    if f.is_zero():
        raise PolynomialError("zero polynomial has no normal form")
    g = f.strip_monomial()
    if g.leading()[1] < 0:
        g = -g
    return g


def is_normalized(f: LPoly2) -> bool:
    return not f.is_zero() and f.min_exps() == (0, 0) and f.leading()[1] > 0


def doteq(f: LPoly2, g: LPoly2) -> bool:
    if f.is_zero() or g.is_zero():
        raise PolynomialError("doteq is undefined for the zero polynomial")
    return normalize(f) == normalize(g)


def content(f: LPoly2) -> int:
    return f.content()


def is_primitive(f: LPoly2) -> bool:
    return f.content() == 1


def involution_tau(f: LPoly2) -> LPoly2:
    if f.is_zero():
        raise PolynomialError("involution of the zero polynomial")
    return f.map_exponents(lambda e: (-e[0], -e[1]))


def is_balanced(f: LPoly2) -> bool:
    return doteq(involution_tau(f), f)


def mirror(f: LPoly2) -> LPoly2:
    """Normal form of f(L, M^-1)."""
    if f.is_zero():
        raise PolynomialError("mirror of the zero polynomial")
    return normalize(f.map_exponents(lambda e: (e[0], -e[1])))


def subst_M_power(f: LPoly2, q: int) -> LPoly2:
    if q < 1:
        raise PolynomialError("M-power substitution needs q >= 1")
    return f.map_exponents(lambda e: (e[0], e[1] * q))


def has_even_M(f: LPoly2) -> bool:
    mins = f.min_exps()[1]
    return all((e[1] - mins) % 2 == 0 for e in f._t)


# ---------------------------------------------------------------------------
# Factored A-polynomials

@dataclass(frozen=True)
class GZFactor:
    """The binomial L*M^r - delta."""

    r: int
    delta: int

    def __post_init__(self):
        if self.delta not in (1, -1):
            raise PolynomialError("delta must be +1 or -1")

    @property
    def poly(self) -> LPoly2:
        if self.r >= 0:
            return LPoly2({(1, self.r): 1, (0, 0): -self.delta})
        return LPoly2({(1, 0): 1, (0, -self.r): -self.delta})

    @classmethod
    def from_poly(cls, f: LPoly2) -> "GZFactor | None":
        """Recover (r, delta) if ``f`` ≐ L*M^r - delta, else None."""
        if f.is_zero():
            return None
        g = normalize(f)
        if len(g) != 2:
            return None
        (e1, c1), (e2, c2) = g.sorted_terms()
        if e1[0] != 1 or e2[0] != 0 or c1 != 1 or c2 not in (1, -1):
            return None
        return cls(e1[1] - e2[1], -c2)


def _factor_key(f: LPoly2):
    return (f.deg_L(), f.deg_M(), len(f), f.sort_key())


class FactoredAPoly:
    """Multiset of normalized, non-monomial factors."""

    __slots__ = ("_items",)

    def __init__(self, factors: Iterable[LPoly2] | Mapping[LPoly2, int] = ()):
        counts: Counter = Counter()
        items = factors.items() if isinstance(factors, Mapping) else ((f, 1) for f in factors)
        for f, k in items:
            if k <= 0:
                continue
            g = normalize(f)
            if g.is_monomial():
                if g != ONE:
                    raise PolynomialError(f"constant factor {g} is not a unit")
                continue
            counts[g] += k
        self._items = tuple(sorted(counts.items(), key=lambda t: _factor_key(t[0])))

    @classmethod
    def from_gz(cls, factors: Iterable[GZFactor]) -> "FactoredAPoly":
        return cls(g.poly for g in factors)

    @property
    def items(self) -> tuple[tuple[LPoly2, int], ...]:
        return self._items

    @property
    def factors(self) -> list[LPoly2]:
        return [f for f, k in self._items for _ in range(k)]

    def distinct(self) -> list[LPoly2]:
        return [f for f, _ in self._items]

    def __iter__(self) -> Iterator[LPoly2]:
        return iter(self.factors)

    def __len__(self) -> int:
        return sum(k for _, k in self._items)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FactoredAPoly):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __contains__(self, f: LPoly2) -> bool:
        g = normalize(f)
        return any(g == h for h, _ in self._items)

    def __mul__(self, other: "FactoredAPoly") -> "FactoredAPoly":
        counts = Counter(dict(self._items))
        counts.update(dict(other._items))
        return FactoredAPoly(dict(counts))

    def reduce(self) -> "FactoredAPoly":
        return FactoredAPoly(self.distinct())

    def is_reduced(self) -> bool:
        return all(k == 1 for _, k in self._items)

    def expand(self) -> LPoly2:
        out = ONE
        for f, k in self._items:
            out = out * f**k
        return out

    def gz_factors(self) -> list[GZFactor]:
        """All factors as binomials; raises if any factor is not one."""
        out = []
        for f in self.factors:
            g = GZFactor.from_poly(f)
            if g is None:
                raise PolynomialError(f"companion not in G_Z: factor {f} is not LM^r - delta")
            out.append(g)
        return out

    def map(self, fn: Callable[[LPoly2], LPoly2]) -> "FactoredAPoly":
        counts: Counter = Counter()
        for f, k in self._items:
            counts[normalize(fn(f))] += k
        return FactoredAPoly(dict(counts))

    def to_text(self) -> str:
        if not self._items:
            return "1"
        parts = []
        for f, k in self._items:
            s = f"({f.to_text()})"
            parts.append(s if k == 1 else f"{s}^{k}")
        return " * ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"FactoredAPoly({self.to_text()!r})"

    def to_json(self) -> list:
        return [poly_to_json(f) for f in self.factors]

    @classmethod
    def from_json(cls, data) -> "FactoredAPoly":
        if not isinstance(data, list):
            raise PolynomialError("factored polynomial JSON must be an array")
        return cls(poly_from_json(item) for item in data)


def reduce(A: FactoredAPoly) -> FactoredAPoly:
    return A.reduce()


def expand(A: FactoredAPoly) -> LPoly2:
    return A.expand()


# ---------------------------------------------------------------------------
# Resultants

def bareiss_det(mat: list[list], div: Callable, zero, one):
    """Fraction-free determinant; ``div`` must be exact division in the ring."""
    a = [row[:] for row in mat]
    n = len(a)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if a[k][k] == zero:
            for i in range(k + 1, n):
                if a[i][k] != zero:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return zero
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                x = rowi[j] * akk
                if aik != zero and rowk[j] != zero:
                    x = x - aik * rowk[j]
                rowi[j] = div(x, prev) if prev != one else x
            rowi[k] = zero
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def sylvester_matrix(f: Sequence, g: Sequence, zero) -> list[list]:
    """Sylvester matrix of coefficient lists given highest degree first."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(f) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(g) + [zero] * (size - n - 1 - i))
    return rows


def _is_unit_monomial(p: SparsePoly) -> bool:
    return len(p) == 1 and abs(next(iter(p._t.values()))) == 1


def _monomial_inverse(p: SparsePoly):
    (e, c), = p._t.items()
    return type(p)._raw({tuple(-x for x in e): c})


def _pseudo_rem_by_monomial_lc(f: dict[int, SparsePoly], g: dict[int, SparsePoly], dg: int):
    """Pseudo-remainder of f by g when lc(g) = c * monomial.

    Returns (r, k) with c^k f = q g + r.  Each reduction step scales the
    running remainder by the integer c, so no fractions appear.
    """
    (me, c), = g[dg]._t.items()
    inv = type(g[dg])._raw({tuple(-x for x in me): 1})
    f = dict(f)
    k = 0
    while f and max(f) >= dg:
        top = max(f)
        lead = f.pop(top) * inv
        if c != 1:
            f = {j: p * c for j, p in f.items()}
        k += 1
        for j, gj in g.items():
            if j == dg:
                continue
            idx = top - dg + j
            v = f.get(idx)
            v = -lead * gj if v is None else v - lead * gj
            if v.is_zero():
                f.pop(idx, None)
            else:
                f[idx] = v
    return f, k


def resultant(f: SparsePoly, g: SparsePoly, var: int) -> SparsePoly:
    """Res_var(f, g) via the Sylvester matrix and Bareiss elimination.

    Both inputs are shifted so the minimum power of ``var`` is zero; this only
    changes the result by a unit in the Laurent ring.  When one operand's
    leading coefficient is an integer times a monomial, the other operand is
    first pseudo-reduced modulo it so the determinant stays small:
    with c^k f = q g + r, Res(g, f) = lc(g)^(deg f - deg r) Res(g, r) / c^(k deg g).
    """
    cls = type(f)
    if f.is_zero() or g.is_zero():
        return cls.zero()
    f = f.shift([-f.min_degree(var) if i == var else 0 for i in range(cls.nvars)])
    g = g.shift([-g.min_degree(var) if i == var else 0 for i in range(cls.nvars)])
    fc, gc = f.coeffs_in(var), g.coeffs_in(var)
    df, dg = max(fc), max(gc)
    if df == 0 or dg == 0:
        raise PolynomialError("resultant undefined: an operand has degree 0 in the elimination variable")
    sign = 1
    if dg > df or (dg == df and gc[dg].is_monomial() < fc[df].is_monomial()):
        fc, gc, df, dg = gc, fc, dg, df
        sign = (-1) ** (df * dg)
    if not gc[dg].is_monomial():
        return _sylvester_res(fc, gc, df, dg, cls) * sign
    # now Res(f, g) = sign * (-1)^(df dg) * Res(g, f)
    sign *= (-1) ** (df * dg)
    rc, k = _pseudo_rem_by_monomial_lc(fc, gc, dg)
    if not rc:
        return cls.zero()
    dr = max(rc)
    if dr == 0:
        res = rc[0] ** dg
    else:
        res = _sylvester_res(gc, rc, dg, dr, cls)
    res = res * gc[dg] ** (df - dr)
    (_, c), = gc[dg]._t.items()
    if k and abs(c) != 1:
        res = res.exact_div(cls.const(c ** (k * dg)))
    elif k and c == -1 and (k * dg) % 2:
        res = -res
    return res * sign


def _sylvester_res(fc, gc, df, dg, cls):
    zero = cls.zero()
    one = cls.const(1)
    fl = [fc.get(k, zero) for k in range(df, -1, -1)]
    gl = [gc.get(k, zero) for k in range(dg, -1, -1)]
    mat = sylvester_matrix(fl, gl, zero)
    return bareiss_det(mat, lambda a, b: a.exact_div(b), zero, one)


def int_resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Resultant of integer polynomials given highest degree first."""
    while f and f[0] == 0:
        f = f[1:]
    while g and g[0] == 0:
        g = g[1:]
    if len(f) < 2 or len(g) < 2:
        raise PolynomialError("resultant undefined: an operand has degree 0")
    mat = sylvester_matrix(list(f), list(g), 0)

    def div(a, b):
        q, r = divmod(a, b)
        assert r == 0
        return q

    return bareiss_det(mat, div, 0, 1)


class LPoly3(SparsePoly):
    """Working ring Z[Lbar^±, L^±, M^±]; Lbar is the auxiliary variable."""

    nvars = 3
    names = ("Lbar", "L", "M")
    __slots__ = ()


def lift_aux(f: LPoly2) -> LPoly3:
    """Read the L-slot of ``f`` as the auxiliary variable Lbar."""
    return LPoly3._raw({(e[0], 0, e[1]): c for e, c in f.items()})


def lift_outer(f: LPoly2) -> LPoly3:
    return LPoly3._raw({(0, e[0], e[1]): c for e, c in f.items()})


def resultant_L(f: LPoly3, g: LPoly3) -> LPoly2:
    """Res_Lbar(f, g) as a polynomial in L, M."""
    r = resultant(f, g, 0)
    return LPoly2({(e[1], e[2]): c for e, c in r.items()})


def extension_resultant(f_C: LPoly2, w: int) -> LPoly2:
    """Res_Lbar[f_C(Lbar, M^w), L - Lbar^w] as a polynomial in L, M."""
    if w < 1:
        raise PolynomialError("winding number must be positive")
    f3 = lift_aux(subst_M_power(f_C, w))
    g3 = LPoly3({(0, 1, 0): 1, (w, 0, 0): -1})
    return resultant_L(f3, g3)


# ---------------------------------------------------------------------------
# Cyclotomic structure

def _upoly_divmod_exact(a: list[int], b: list[int]) -> list[int] | None:
    """Quotient of integer polys (lowest degree first) if b | a exactly."""
    a = a[:]
    db = len(b) - 1
    lb = b[-1]
    if len(a) - 1 < db:
        return None
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c == 0:
            continue
        qc, r = divmod(c, lb)
        if r:
            return None
        q[k - db] = qc
        for j in range(db + 1):
            a[k - db + j] -= qc * b[j]
    if any(a[:db]):
        return None
    return q


def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


_CYCLO: dict[int, list[int]] = {}


def cyclotomic(n: int) -> list[int]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    if n in _CYCLO:
        return _CYCLO[n]
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _upoly_divmod_exact(poly, cyclotomic(d))
    _CYCLO[n] = poly
    return poly


def collapse_to_univariate(f: LPoly2) -> tuple[tuple[int, int], list[int]] | None:
    """If the support of f lies on a line, return (direction, coefficients).

    The coefficient list is lowest degree first along the primitive support
    direction; a single-point support gives direction (0, 0).
    """
    pts = sorted(f._t)
    base = pts[0]
    g = 0
    for p in pts[1:]:
        g = gcd(g, gcd(p[0] - base[0], p[1] - base[1]))
    if g == 0:
        return (0, 0), [f._t[base]]
    # primitive direction from the first difference
    dx, dy = (pts[1][0] - base[0]), (pts[1][1] - base[1])
    h = gcd(dx, dy)
    dx, dy = dx // h, dy // h
    coeffs: dict[int, int] = {}
    for p in pts:
        ax, ay = p[0] - base[0], p[1] - base[1]
        if ax * dy != ay * dx:
            return None
        k = ax // dx if dx else ay // dy
        coeffs[k] = f._t[p]
    lo = min(coeffs)
    top = max(coeffs)
    return (dx, dy), [coeffs.get(k + lo, 0) for k in range(top - lo + 1)]


def is_cyclotomic_at_monomial(f: LPoly2) -> bool:
    """True iff f is ± a monomial times cyclotomic polynomials in one monomial."""
    if f.is_zero():
        raise PolynomialError("zero polynomial")
    if not is_primitive(f):
        raise PolynomialError("cyclotomic test requires a primitive polynomial")
    collapsed = collapse_to_univariate(normalize(f))
    if collapsed is None:
        return False
    _, h = collapsed
    d = len(h) - 1
    if d == 0:
        return True
    if h[0] == 0:
        return False
    for n in range(1, 6 * d * d + 1):
        if totient(n) > d:
            continue
        phi = cyclotomic(n)
        while len(h) > 1:
            q = _upoly_divmod_exact(h, phi)
            if q is None:
                break
            h = q
        if len(h) == 1:
            break
    return len(h) == 1 and abs(h[0]) == 1


def poly_dumps(f: SparsePoly) -> str:
    return json.dumps(poly_to_json(f))
