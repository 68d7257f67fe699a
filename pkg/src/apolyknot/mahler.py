"""Logarithmic Mahler measure: Gauss-Legendre quadrature and the exact zero test."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .laurent import (
    FactoredAPoly,
    LPoly2,
    PolynomialError,
    is_cyclotomic_at_monomial,
    is_primitive,
    normalize,
)

MIN_NODES = 64
_MAX_EXACT = 2**53
_TINY = 1e-300  # floor for |f| so an exact zero at a node stays finite
# Legendre nodes are symmetric, so on an unrotated grid every L^a M^a - 1
# vanishes on the antidiagonal; rotating the M axis by an irrational part of
# the period leaves the integral of a periodic integrand unchanged
_M_ROTATION = math.pi * (math.sqrt(5.0) - 1.0)


class MahlerError(ValueError):
    pass


@dataclass(frozen=True)
class MahlerEstimate:
    value: float
    nodes_per_dim: int
    convergence_gap: float  # |estimate(N) - estimate(N/2)|

    def __post_init__(self):
        n = self.nodes_per_dim
        if n < MIN_NODES or n & (n - 1):
            raise MahlerError(f"nodes per dimension must be a power of two >= {MIN_NODES}, got {n}")


@lru_cache(maxsize=16)
def _nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    # map [-1, 1] to [0, 2pi] and fold in the 1/(2pi) normalization
    return math.pi * (x + 1.0), w / 2.0


def _dense(f: LPoly2) -> tuple[np.ndarray, int, int]:
    g = f.shift(tuple(-e for e in f.min_exps()))
    C = np.zeros((g.deg_L() + 1, g.deg_M() + 1), dtype=np.float64)
    for (a, b), c in g.items():
        if abs(c) > _MAX_EXACT:
            raise MahlerError(
                f"coefficient {c} exceeds 2^53; use the symbolic test instead")
        C[a, b] = c
    return C, g.deg_L(), g.deg_M()


def _row_sums(C: np.ndarray, n: int) -> list[float]:
    theta, w = _nodes(n)
    zL = np.exp(1j * theta)
    zM = np.exp(1j * (theta + _M_ROTATION))
    Lp = zL[:, None] ** np.arange(C.shape[0])[None, :]
    Mp = zM[:, None] ** np.arange(C.shape[1])[None, :]
    vals = Lp @ C @ Mp.T  # vals[i, j] = f(z_i, z_j)
    logs = np.log(np.maximum(np.abs(vals), _TINY))
    rows = logs * w[None, :]
    # fixed reduction order: each row with fsum, then the rows with fsum
    return [w[i] * math.fsum(rows[i]) for i in range(n)]


def _estimate(C: np.ndarray, n: int) -> float:
    return math.fsum(_row_sums(C, n))


def mahler_numeric(f: LPoly2, nodes: int = 512) -> MahlerEstimate:
    """Tensor Gauss-Legendre estimate of m(f) over the unit torus."""
    if f.is_zero():
        raise MahlerError("Mahler measure of the zero polynomial")
    if nodes < MIN_NODES or nodes & (nodes - 1):
        raise MahlerError(f"nodes must be a power of two >= {MIN_NODES}, got {nodes}")
    C, _, _ = _dense(f)
    hi = _estimate(C, nodes)
    lo = _estimate(C, nodes // 2)
    return MahlerEstimate(hi, nodes, abs(hi - lo))


def mahler_zero_symbolic(A: FactoredAPoly) -> bool:
    """Exact test m(A) = 0: every factor is cyclotomic evaluated on a monomial."""
    out = True
    for f in A.distinct():
        if not is_primitive(f):
            raise MahlerError(f"factor {f} is not primitive")
        out = out and is_cyclotomic_at_monomial(f)
    return out


def _binomial_shape(f: LPoly2) -> tuple[int, int] | None:
    """Exponent difference (dL, dM) if f ≐ L^q M^p - delta with unit coefficients."""
    g = normalize(f)
    if len(g) != 2:
        return None
    (e1, c1), (e2, c2) = g.sorted_terms()
    if abs(c1) != 1 or abs(c2) != 1:
        return None
    dL, dM = e1[0] - e2[0], e1[1] - e2[1]
    if math.gcd(dL, dM) != 1:
        return None
    return dL, dM


def gq_membership(A: FactoredAPoly) -> bool:
    return all(_binomial_shape(f) is not None for f in A.distinct())


def gz_membership(A: FactoredAPoly) -> bool:
    for f in A.distinct():
        s = _binomial_shape(f)
        if s is None or abs(s[0]) != 1:
            return False
    return True


__all__ = [
    "MahlerError",
    "MahlerEstimate",
    "PolynomialError",
    "gq_membership",
    "gz_membership",
    "mahler_numeric",
    "mahler_zero_symbolic",
]
