"""Twisted-gluing resultant pipeline for doubles of the figure-eight knot.

The gluing system consists of

* ``f_K,r(M, t, u)`` - the companion's nontrivial factor with L -> u v^-r and
  M -> v, where v is a rational function of (M, t, u) cleared of denominators;
* ``f_W(M, t, u)`` and ``F_W(L, M, t, u)`` - the two relations coming from the
  Whitehead-link pattern.

Eliminating t from (f_K,r, f_W) and from (f_W, F_W), then u from the two
results, gives a bivariate polynomial expected to be P^2 Q^2 up to units.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .families import twist_apoly
from .laurent import (
    LPoly2,
    NotDivisibleError,
    PolynomialError,
    SparsePoly,
    normalize,
    resultant,
)

LV, MV, TV, UV = 0, 1, 2, 3


class MPoly4(SparsePoly):
    """Polynomial in L, M, t, u with integer coefficients."""

    nvars = 4
    names = ("L", "M", "t", "u")
    __slots__ = ()


class UPoly(SparsePoly):
    """Univariate Laurent polynomial in u over the integers."""

    nvars = 1
    names = ("u",)
    __slots__ = ()


class TUPoly(SparsePoly):
    nvars = 2
    names = ("t", "u")
    __slots__ = ()


class ResultantCapError(PolynomialError):
    pass


_L, _M, _t, _u = (MPoly4.gen(i) for i in range(4))


def build_fW() -> MPoly4:
    M, t, u = _M, _t, _u
    return (M**2 * t - M**4 * t - M * u + M**3 * u - M * t**2 * u + 2 * M**3 * t**2 * u
            + t * u**2 - 4 * M**2 * t * u**2 + M**4 * t * u**2 - M**2 * t**3 * u**2
            + M * u**3 - M**3 * u**3 + 2 * M * t**2 * u**3 - M**3 * t**2 * u**3
            - t * u**4 + M**2 * t * u**4)


def build_FW() -> MPoly4:
    L, M, t, u = _L, _M, _t, _u
    return (M * t - M**3 * t - t**2 * u + 2 * M**2 * t**2 * u - 2 * M * t * u**2
            + M**3 * t * u**2 - M * t**3 * u**2 - M**2 * u**3 + L * M**2 * u**3
            + t**2 * u**3 - M**2 * t**2 * u**3 + M * t * u**4)


def build_v_num_den() -> tuple[MPoly4, MPoly4]:
    M, t, u = _M, _t, _u
    num = (-M * t**2 + M**3 * t**2 - t * u + 2 * M**2 * t * u - M**4 * t * u
           + M**2 * t**3 * u + M * u**2 + M * t**2 * u**2 - 2 * M**3 * t**2 * u**2
           - M**2 * t * u**3 + M**4 * t * u**3)
    return num, M * u**2


def build_fKr(C_tilde: LPoly2, r: int) -> MPoly4:
    """C_tilde(u v^-r, v) with v = num/den, denominators cleared, monomials stripped."""
    num, den = build_v_num_den()
    terms = [((i, j), c) for (i, j), c in C_tilde.items()]
    es = [j - r * i for (i, j), _ in terms]
    lo, hi = min(es), max(es)
    num_pows = [MPoly4.const(1)]
    den_pows = [MPoly4.const(1)]
    for _ in range(hi - lo):
        num_pows.append(num_pows[-1] * num)
        den_pows.append(den_pows[-1] * den)
    total = MPoly4.zero()
    for ((i, _), c), e in zip(terms, es):
        total += c * _u**i * num_pows[e - lo] * den_pows[hi - e]
    return total.strip_monomial()


def _to_lpoly2(f: SparsePoly) -> LPoly2:
    """Drop the (vanished) t and u slots of an MPoly4."""
    out = {}
    for e, c in f.items():
        if e[TV] or e[UV]:
            raise PolynomialError("t or u survived elimination")
        out[(e[LV], e[MV])] = c
    return LPoly2(out)


# ---------------------------------------------------------------------------
# Modular evaluation-interpolation for the final elimination

def _primes_below(limit: int, count: int) -> list[int]:
    out = []
    n = limit - 1
    while len(out) < count:
        if n % 2 and all(n % d for d in range(3, int(n**0.5) + 1, 2)):
            out.append(n)
        n -= 2 if n % 2 else 1
    return out


_PRIME_BITS = 31


def _powmod_vec(x: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.ones_like(x)
    base = x % p
    while e:
        if e & 1:
            result = result * base % p
        e >>= 1
        if e:
            base = base * base % p
    return result


def _inv_vec(x: np.ndarray, p: int) -> np.ndarray:
    return _powmod_vec(x, p - 2, p)


def _res_mod_scalar(a: list[int], b: list[int], p: int) -> int:
    """Resultant of univariate polys mod p (highest degree first), formal degrees kept."""
    def trim(v):
        i = 0
        while i < len(v) and v[i] % p == 0:
            i += 1
        return [x % p for x in v[i:]]

    a, b = [x % p for x in a], [x % p for x in b]
    if a[0] == 0 or b[0] == 0:
        raise ZeroDivisionError("leading coefficient vanishes mod p")
    acc = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return acc * pow(b[0], da, p) % p
        inv = pow(b[0], p - 2, p)
        rem = a[:]
        for k in range(da - db + 1):
            q = rem[k] * inv % p
            if q:
                for j in range(db + 1):
                    rem[k + j] = (rem[k + j] - q * b[j]) % p
        rem = trim(rem[da - db + 1:])
        if not rem:
            return 0
        dr = len(rem) - 1
        acc = acc * (-1 if (da * db) % 2 else 1) * pow(b[0], da - dr, p) % p
        a, b = b, rem


def _res_mod_grid(A: list[np.ndarray], B: list[np.ndarray], p: int):
    """Vectorized Euclidean resultant over a grid; returns (values, bad mask).

    Coefficient lists are highest degree first, each entry an array over the
    grid.  Points where a remainder drops degree unexpectedly are flagged.
    """
    shape = np.broadcast_shapes(*(x.shape for x in A + B))
    A = [np.broadcast_to(x, shape) % p for x in A]
    B = [np.broadcast_to(x, shape) % p for x in B]
    bad = np.zeros(shape, dtype=bool)
    acc = np.ones(shape, dtype=np.int64)
    while True:
        da, db = len(A) - 1, len(B) - 1
        bad |= B[0] == 0
        if db == 0:
            return acc * _powmod_vec(B[0], da, p) % p, bad
        inv = _inv_vec(B[0], p)
        rem = [x.copy() for x in A]
        for k in range(da - db + 1):
            q = rem[k] * inv % p
            for j in range(1, db + 1):
                rem[k + j] = (rem[k + j] - q * B[j]) % p
        rem = rem[da - db + 1:]
        dr = db - 1
        sgn = -1 if (da * db) % 2 else 1
        acc = acc * _powmod_vec(B[0], da - dr, p) % p
        if sgn < 0:
            acc = (p - acc) % p
        A, B = B, rem


def _newton_to_monomial(values: np.ndarray, xs: np.ndarray, p: int) -> np.ndarray:
    """Interpolate along the last axis: values at nodes xs -> coefficients (low first)."""
    c = values.copy() % p
    n = len(xs)
    for k in range(1, n):
        diff = (xs[k:] - xs[:-k]) % p
        c[..., k:] = (c[..., k:] - c[..., k - 1:-1]) * _inv_vec(diff, p) % p
    coeffs = np.zeros_like(c)
    coeffs[..., 0] = c[..., n - 1]
    for k in range(n - 2, -1, -1):
        # coeffs <- coeffs * (x - xs[k]) + c_k
        shifted = np.zeros_like(coeffs)
        shifted[..., 1:] = coeffs[..., :-1]
        coeffs = (shifted - coeffs * (xs[k] % p)) % p
        coeffs[..., 0] = (coeffs[..., 0] + c[..., k]) % p
    return coeffs


def _coeff_grid(f: SparsePoly, Ls: np.ndarray, Ms: np.ndarray, p: int) -> list[np.ndarray]:
    """Coefficients of f in u (highest first) evaluated on the grid Ls x Ms."""
    top = f.degree(UV) if f else 0
    dM = max(e[MV] for e, _ in f.items())
    mpow = np.ones((dM + 1, len(Ms)), dtype=np.int64)
    for k in range(1, dM + 1):
        mpow[k] = mpow[k - 1] * Ms % p
    # group by (u-degree, L-degree) and evaluate each M-polynomial on Ms
    rows: dict[tuple[int, int], np.ndarray] = {}
    for e, c in f.items():
        key = (e[UV], e[LV])
        v = rows.get(key)
        term = (c % p) * mpow[e[MV]] % p
        rows[key] = term if v is None else (v + term) % p
    out = [np.zeros((len(Ls), len(Ms)), dtype=np.int64) for _ in range(top + 1)]
    lpow: dict[int, np.ndarray] = {0: np.ones(len(Ls), dtype=np.int64)}
    for (k, i), vec in rows.items():
        if i not in lpow:
            lpow[i] = _powmod_vec(Ls, i, p)
        idx = top - k
        out[idx] = (out[idx] + lpow[i][:, None] * vec[None, :]) % p
    return out


def resultant_u_modular(G: MPoly4, H: MPoly4, rng: random.Random | None = None) -> LPoly2:
    """Res_u(G, H) for G, H in Z[L, M, u] by multi-modular evaluation-interpolation.

    Degree bounds come from the Sylvester matrix, and the number of primes
    from the bound ||Res||_inf <= ||G||_1^deg(H) * ||H||_1^deg(G), so the
    reconstruction is exact.
    """
    rng = rng or random.Random(0)
    m, n = G.degree(UV), H.degree(UV)
    if m == 0 or n == 0:
        raise PolynomialError("resultant undefined: an operand has degree 0 in u")
    if G.min_exps()[UV] or H.min_exps()[UV]:
        raise PolynomialError("strip powers of u before eliminating")

    def coeff_degree(f, var):
        return max(e[var] for e, _ in f.items())

    dL = n * coeff_degree(G, LV) + m * coeff_degree(H, LV)
    dM = n * coeff_degree(G, MV) + m * coeff_degree(H, MV)
    norm1 = lambda f: sum(abs(c) for _, c in f.items())
    bound_bits = n * norm1(G).bit_length() + m * norm1(H).bit_length() + 2
    primes = _primes_below(1 << _PRIME_BITS, bound_bits // (_PRIME_BITS - 1) + 1)
    lcG = G.coeffs_in(UV)[m]
    lcH = H.coeffs_in(UV)[n]

    modulus = 1
    acc = np.zeros((dL + 1, dM + 1), dtype=object)
    for p in primes:
        while True:
            Ls = np.array(rng.sample(range(1, p), dL + 1), dtype=np.int64)
            Ms = np.array(rng.sample(range(1, p), dM + 1), dtype=np.int64)
            if all(np.all(_coeff_grid(lc, Ls, Ms, p)[0]) for lc in (lcG, lcH)):
                break
        Ag = _coeff_grid(G, Ls, Ms, p)
        Bg = _coeff_grid(H, Ls, Ms, p)
        vals, bad = _res_mod_grid(Ag, Bg, p)
        for i, j in zip(*np.nonzero(bad)):
            vals[i, j] = _res_mod_scalar([int(x[i, j]) for x in Ag], [int(x[i, j]) for x in Bg], p)
        # interpolate in M along rows, then in L along columns
        cm = _newton_to_monomial(vals, Ms, p)
        coeffs = _newton_to_monomial(cm.T.copy(), Ls, p).T
        # Garner step
        inv = pow(modulus % p, p - 2, p)
        delta = ((coeffs.astype(object) - acc) % p) * inv % p
        acc = acc + delta * modulus
        modulus *= p
    half = modulus // 2
    out = {}
    for (i, j), v in np.ndenumerate(acc):
        v = int(v)
        if v > half:
            v -= modulus
        if v:
            out[(i, j)] = v
    return LPoly2(out)


# ---------------------------------------------------------------------------
# Pipeline

DEFAULT_CAP = 60


@dataclass
class PipelineResult:
    r: int
    resultant: LPoly2
    first: MPoly4
    second: MPoly4
    steps: list[str] = field(default_factory=list)


def _strip(f: SparsePoly) -> SparsePoly:
    return f.strip_monomial() if f else f


def fig8_companion() -> LPoly2:
    return twist_apoly(-1)


def first_eliminations(C_tilde: LPoly2, r: int) -> tuple[MPoly4, MPoly4]:
    """Res_t(f_K,r, f_W) and Res_t(f_W, F_W), each stripped of monomial factors."""
    f = build_fKr(C_tilde, r)
    fW, FW = build_fW(), build_FW()
    if f.degree(TV) == 0:
        raise PolynomialError("resultant undefined: f_K,r has degree 0 in t")
    R1 = _strip(resultant(f, fW, TV))
    R2 = _strip(resultant(fW, FW, TV))
    return R1, R2


def sylvester_dimension(f: SparsePoly, g: SparsePoly, var: int) -> int:
    return (f.degree(var) - f.min_degree(var)) + (g.degree(var) - g.min_degree(var))


def iterated_resultant(C_tilde: LPoly2 | None = None, r: int = 0, cap: int = DEFAULT_CAP,
                       max_grid: int = 4_000_000) -> PipelineResult:
    """Res_u[Res_t(f_K,r, f_W), Res_t(f_W, F_W)] with monomial factors stripped.

    The final u-elimination uses modular evaluation-interpolation when its
    grid has at most ``max_grid`` points, and fraction-free determinants when
    the Sylvester dimension is within ``cap``; otherwise it refuses.
    """
    C_tilde = fig8_companion() if C_tilde is None else C_tilde
    R1, R2 = first_eliminations(C_tilde, r)
    steps = [f"Res_t(f_K,r, f_W): {len(R1)} terms", f"Res_t(f_W, F_W): {len(R2)} terms"]
    dim = sylvester_dimension(R1, R2, UV)
    m, n = R1.degree(UV), R2.degree(UV)
    gL = n * R1.degree(LV) + m * R2.degree(LV) + 1
    gM = n * R1.degree(MV) + m * R2.degree(MV) + 1
    if gL * gM <= max_grid:
        steps.append(f"Res_u by evaluation-interpolation, dimension {dim}, grid {gL}x{gM}")
        out = resultant_u_modular(R1, R2)
    elif dim <= cap:
        R = _strip(resultant(R1, R2, UV))
        steps.append(f"Res_u by Bareiss, dimension {dim}")
        out = _to_lpoly2(R)
    else:
        raise ResultantCapError(
            f"r={r}: Sylvester dimension {dim} exceeds cap {cap} and the "
            f"interpolation grid {gL}x{gM} is too large; use the pointwise mode")
    if out.is_zero():
        raise PolynomialError("iterated resultant vanished identically")
    return PipelineResult(r, normalize(out), R1, R2, steps)


def divide_out_square(R: LPoly2, P: LPoly2) -> LPoly2 | None:
    """R / P^2 if P^2 divides R exactly, else None."""
    try:
        return R.exact_div(P).exact_div(P)
    except NotDivisibleError:
        return None


# ---------------------------------------------------------------------------
# Pointwise evidence

@dataclass
class PointwiseReport:
    r: int
    trials: int
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    failures: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed == self.trials


def _at_M(f: MPoly4, M0: int, L0: int | None = None) -> TUPoly:
    out: dict = {}
    for e, c in f.items():
        v = c * M0 ** e[MV]
        if e[LV]:
            v *= L0 ** e[LV]
        k = (e[TV], e[UV])
        out[k] = out.get(k, 0) + v
    return TUPoly(out)


def _t_res_to_u(f: TUPoly, g: TUPoly) -> UPoly:
    r = resultant(f, g, 0)
    return UPoly({(e[1],): c for e, c in r.items()})


def _dense(f: UPoly) -> list[int]:
    f = f.strip_monomial()
    d = f.degree(0)
    return [f.terms.get((k,), 0) for k in range(d, -1, -1)]


def evaluate_iterated_resultant(fK: MPoly4, L0: int, M0: int) -> int | None:
    """Iterated resultant at (L0, M0) by integer eliminations; None if degenerate."""
    fW, FW = build_fW(), build_FW()
    a, w, F = _at_M(fK, M0), _at_M(fW, M0), _at_M(FW, M0, L0)
    if a.degree(0) != fK.degree(TV) or w.degree(0) != fW.degree(TV) or F.degree(0) != FW.degree(TV):
        return None
    R1 = _t_res_to_u(a, w)
    R2 = _t_res_to_u(w, F)
    if R1.is_zero() or R2.is_zero():
        return 0
    d1, d2 = _dense(R1), _dense(R2)
    if len(d1) < 2 or len(d2) < 2:
        return None
    return _int_res_reduced(d1, d2)


def _int_res_reduced(a: list[int], b: list[int]) -> int:
    """Integer resultant, pseudo-reducing the longer operand first."""
    if len(a) < len(b):
        sign = (-1) ** ((len(a) - 1) * (len(b) - 1))
        return sign * _int_res_reduced(b, a)
    fa = UPoly({(len(a) - 1 - k,): c for k, c in enumerate(a) if c})
    fb = UPoly({(len(b) - 1 - k,): c for k, c in enumerate(b) if c})
    return resultant(fa, fb, 0).terms.get((0,), 0)


def pointwise_divisibility_evidence(r: int, trials: int = 20, seed: int = 0,
                                    bound: int = 1000) -> PointwiseReport:
    """Check P_r(L0, M0)^2 | Res(L0, M0) at random integer points."""
    from .engine import fig8_double_P

    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    fK = build_fKr(fig8_companion(), r)
    P = fig8_double_P(r)
    report = PointwiseReport(r, trials)
    done = 0
    while done < trials:
        L0 = rng.randint(-bound, bound)
        M0 = rng.randint(-bound, bound)
        p0 = P(L0, M0)
        if p0 == 0 or L0 == 0 or M0 == 0:
            report.skipped += 1
            continue
        value = evaluate_iterated_resultant(fK, L0, M0)
        if value is None:
            report.skipped += 1
            continue
        done += 1
        if value % (p0 * p0) == 0:
            report.passed += 1
        else:
            report.failed += 1
            report.failures.append((L0, M0))
    return report
