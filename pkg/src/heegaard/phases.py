"""Exact phase arithmetic and twist-matrix transformations.

Phases are kept as exponents t of the unimodular scalar e^{2*pi*i*t}.  In
rational mode t is a ``Fraction`` and all arithmetic is exact; in float mode
t is a double reduced mod 1 and compared with tolerance ``FLOAT_TOL``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

RATIONAL = "rational"
FLOAT = "float"

FLOAT_TOL = 1e-12

PhaseExponent = Union[Fraction, float]


class DimensionMismatch(ValueError):
    pass


def phase_mod1(t: PhaseExponent) -> PhaseExponent:
    """Reduce an exponent to [0, 1); the represented scalar is unchanged."""
    if isinstance(t, Fraction):
        return t - (t.numerator // t.denominator)
    return t % 1.0


def phase_eq(a: PhaseExponent, b: PhaseExponent, mode: str = RATIONAL) -> bool:
    """Equality of represented scalars, i.e. equality of exponents mod 1."""
    if mode == RATIONAL:
        return phase_mod1(Fraction(a)) == phase_mod1(Fraction(b))
    d = (float(a) - float(b)) % 1.0
    return d < FLOAT_TOL or 1.0 - d < FLOAT_TOL


@dataclass(frozen=True)
class ThetaMatrix:
    """Antisymmetric (N+1)x(N+1) twist matrix.

    Only the strict upper triangle is stored, which makes antisymmetry a
    structural invariant rather than a runtime check.  ``mode`` is uniform
    over all entries.
    """

    n: int                      # number of generators, N+1
    mode: str
    upper: tuple                # tuple of ((j, k), value) with j < k, sorted

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one generator")
        if self.mode not in (RATIONAL, FLOAT):
            raise ValueError(f"unknown mode {self.mode!r}")
        for (j, k), v in self.upper:
            if not (0 <= j < k < self.n):
                raise ValueError(f"bad index pair ({j},{k})")
            if self.mode == RATIONAL and not isinstance(v, Fraction):
                raise TypeError("rational mode requires Fraction entries")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int, mode: str = RATIONAL) -> "ThetaMatrix":
        return cls(n, mode, ())

    @classmethod
    def from_upper(cls, n: int, entries: dict, mode: str = RATIONAL) -> "ThetaMatrix":
        """Build from a {(j, k): value} dict over the strict upper triangle."""
        conv = Fraction if mode == RATIONAL else float
        items = []
        for (j, k), v in entries.items():
            if j == k:
                if v:
                    raise ValueError("diagonal must vanish")
                continue
            if j > k:
                j, k, v = k, j, -v
            v = conv(v)
            if v:
                items.append(((j, k), v))
        return cls(n, mode, tuple(sorted(items)))

    @classmethod
    def random_rational(cls, n: int, seed: int, den: int = 8) -> "ThetaMatrix":
        """Reproducible rational twist with entries j/den, antisymmetrized."""
        rng = random.Random(seed)
        entries = {}
        for j in range(n):
            for k in range(j + 1, n):
                entries[(j, k)] = Fraction(rng.randrange(1 - den, den), den)
        return cls.from_upper(n, entries)

    # -- access ------------------------------------------------------------

    def entry(self, j: int, k: int) -> PhaseExponent:
        if not (0 <= j < self.n and 0 <= k < self.n):
            raise IndexError(f"index out of range: ({j},{k})")
        zero = Fraction(0) if self.mode == RATIONAL else 0.0
        if j == k:
            return zero
        key = (j, k) if j < k else (k, j)
        for kk, v in self.upper:
            if kk == key:
                return v if j < k else -v
        return zero

    def rows(self):
        return [[self.entry(j, k) for k in range(self.n)] for j in range(self.n)]

    def is_zero(self) -> bool:
        return not self.upper

    def __repr__(self):
        return f"ThetaMatrix(n={self.n}, mode={self.mode}, upper={dict(self.upper)})"


def check_dims(theta: ThetaMatrix, *indices: Iterable[int]) -> None:
    for mu in indices:
        if len(mu) != theta.n:
            raise DimensionMismatch(
                f"multi-index of length {len(mu)} against matrix of size {theta.n}")


def cocycle_phase(theta: ThetaMatrix, mu, nu) -> PhaseExponent:
    """Exponent t = (1/2) mu^T theta nu, so the scalar is e^{pi*i*mu^T.theta.nu}."""
    check_dims(theta, mu, nu)
    half = Fraction(1, 2) if theta.mode == RATIONAL else 0.5
    acc = Fraction(0) if theta.mode == RATIONAL else 0.0
    for (j, k), v in theta.upper:
        acc += v * (mu[j] * nu[k] - mu[k] * nu[j])
    return half * acc


def kappa_matrix(theta: ThetaMatrix, i: int) -> ThetaMatrix:
    """Gauge transform: entry (j,k) becomes theta_ij + theta_jk + theta_ki for
    j,k != i, while row/column i is left unchanged."""
    if not 0 <= i < theta.n:
        raise IndexError(f"index {i} out of range")
    entries = {}
    for j in range(theta.n):
        for k in range(j + 1, theta.n):
            if i in (j, k):
                entries[(j, k)] = theta.entry(j, k)
            else:
                entries[(j, k)] = theta.entry(i, j) + theta.entry(j, k) + theta.entry(k, i)
    return ThetaMatrix.from_upper(theta.n, entries, theta.mode)


def kappa_inv_matrix(theta: ThetaMatrix, i: int) -> ThetaMatrix:
    """Inverse of :func:`kappa_matrix` for the same index."""
    if not 0 <= i < theta.n:
        raise IndexError(f"index {i} out of range")
    entries = {}
    for j in range(theta.n):
        for k in range(j + 1, theta.n):
            if i in (j, k):
                entries[(j, k)] = theta.entry(j, k)
            else:
                entries[(j, k)] = -theta.entry(i, j) + theta.entry(j, k) - theta.entry(k, i)
    return ThetaMatrix.from_upper(theta.n, entries, theta.mode)


def kappa_check_matrix(theta: ThetaMatrix, i: int) -> ThetaMatrix:
    """kappa_i(theta) with row and column i deleted (size N matrix).

    The surviving indices are re-packed to 0..N-1 preserving order.
    """
    km = kappa_matrix(theta, i)
    keep = [j for j in range(theta.n) if j != i]
    entries = {}
    for a, ja in enumerate(keep):
        for b in range(a + 1, len(keep)):
            entries[(a, b)] = km.entry(ja, keep[b])
    return ThetaMatrix.from_upper(theta.n - 1, entries, theta.mode)
