"""Truncated Fock representation, relation residuals, and numerical
K-class invariants.

The generators act on l2 of multi-indices mu with 0 <= mu_i <= M by
phase-twisted shifts; anything shifted past the cutoff is dropped.  The
invariant of a projector combines the rank of its circle-averaged symbol
with a regularized trace: the truncated trace of a lift grows like
rank * (M+1)^{N+1}, and the coefficient of (M+1)^N in the remainder is an
integer charge that distinguishes the line-bundle classes.
"""

from __future__ import annotations

import cmath
import os
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
import scipy.sparse as sp

from .algebra import AlgebraElement, Context
from .bundles import ProjectorMatrix
from .phases import ThetaMatrix

DEFAULT_MAX_DIM = 100_000


class UnstableInvariant(RuntimeError):
    pass


def max_dim() -> int:
    return int(os.environ.get("NCG_MAX_DIM", DEFAULT_MAX_DIM))


def _check_dim(n: int, M: int) -> int:
    dim = (M + 1) ** n
    if dim > max_dim():
        raise ValueError(f"truncated dimension {dim} exceeds cap {max_dim()}")
    return dim


@dataclass(frozen=True)
class SparseOperator:
    """Complex sparse matrix on the truncated multi-index basis."""

    n: int
    M: int
    matrix: sp.csr_matrix

    @property
    def dim(self) -> int:
        return (self.M + 1) ** self.n

    def adjoint(self) -> "SparseOperator":
        return SparseOperator(self.n, self.M, self.matrix.conj().T.tocsr())

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        return SparseOperator(self.n, self.M, (self.matrix @ other.matrix).tocsr())

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        return SparseOperator(self.n, self.M, (self.matrix + other.matrix).tocsr())

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        return SparseOperator(self.n, self.M, (self.matrix - other.matrix).tocsr())

    def scale(self, z) -> "SparseOperator":
        return SparseOperator(self.n, self.M, (self.matrix * z).tocsr())

    def trace(self) -> complex:
        return complex(self.matrix.diagonal().sum())

    def norm(self) -> float:
        return float(np.linalg.norm(self.matrix.toarray(), 2))


def _identity(n: int, M: int) -> SparseOperator:
    dim = _check_dim(n, M)
    return SparseOperator(n, M, sp.identity(dim, dtype=complex, format="csr"))


def fock_generator(i: int, M: int, theta: ThetaMatrix) -> SparseOperator:
    """Twisted shift: e_mu -> prod_{j>i} Theta_ij^{mu_j} e_{mu+delta_i}."""
    n = theta.n
    if not 0 <= i < n:
        raise IndexError(f"generator index {i} out of range")
    if M < 1:
        raise ValueError("truncation must be at least 1")
    dim = _check_dim(n, M)
    shape = (M + 1,) * n
    rows, cols, vals = [], [], []
    for col in range(dim):
        mu = np.unravel_index(col, shape)
        if mu[i] + 1 > M:
            continue
        nu = list(mu)
        nu[i] += 1
        t = sum(theta.entry(i, j) * mu[j] for j in range(i + 1, n))
        rows.append(np.ravel_multi_index(nu, shape))
        cols.append(col)
        vals.append(cmath.exp(2j * cmath.pi * float(t)))
    m = sp.coo_matrix((vals, (rows, cols)), shape=(dim, dim), dtype=complex)
    return SparseOperator(n, M, m.tocsr())


def represent(x: AlgebraElement, M: int) -> SparseOperator:
    """Linear extension of W_p W_q* -> S_0^{p_0}...S_N^{p_N} (adjoint word)."""
    ctx = x.ctx
    if ctx.unitary:
        raise ValueError("unitary-slot quotients have no truncated shift model")
    if ctx.kind == "sphere":
        x = x.with_context(ctx.ambient())        # any lift represents the class
        ctx = x.ctx
    gens = [fock_generator(i, M, ctx.theta) for i in range(ctx.n)]
    out = _identity(ctx.n, M).scale(0.0)
    for (p, q), c in x.terms.items():
        word = _identity(ctx.n, M)
        for i in range(ctx.n):
            for _ in range(p[i]):
                word = word @ gens[i]
        tail = _identity(ctx.n, M)
        for i in range(ctx.n):
            for _ in range(q[i]):
                tail = tail @ gens[i]
        out = out + (word @ tail.adjoint()).scale(c.to_complex())
    return out


def _interior_projection(n: int, M: int) -> SparseOperator:
    dim = _check_dim(n, M)
    shape = (M + 1,) * n
    diag = np.zeros(dim)
    for idx in range(dim):
        mu = np.unravel_index(idx, shape)
        if all(v <= M - 2 for v in mu):
            diag[idx] = 1.0
    return SparseOperator(n, M, sp.diags(diag, dtype=complex, format="csr"))


def relation_residual(N: int, theta: ThetaMatrix, M: int) -> float:
    """Largest operator-norm defect of the defining relations on vectors
    supported away from the cutoff boundary."""
    if M < 3:
        raise ValueError("truncation too small to leave an interior")
    if theta.n != N + 1:
        raise ValueError("twist size must be N+1")
    gens = [fock_generator(i, M, theta) for i in range(N + 1)]
    ident = _identity(N + 1, M)
    proj = _interior_projection(N + 1, M)
    worst = 0.0
    for i in range(N + 1):
        d = (gens[i].adjoint() @ gens[i]) - ident
        worst = max(worst, (d @ proj).norm())
    for i in range(N + 1):
        for j in range(N + 1):
            if i == j:
                continue
            ph = cmath.exp(2j * cmath.pi * float(theta.entry(i, j)))
            d1 = (gens[i] @ gens[j]) - (gens[j] @ gens[i]).scale(ph)
            d2 = (gens[i] @ gens[j].adjoint()) \
                - (gens[j].adjoint() @ gens[i]).scale(1 / ph)
            worst = max(worst, (d1 @ proj).norm(), (d2 @ proj).norm())
    return worst


def truncated_trace(x: AlgebraElement, M: int) -> complex:
    """Trace of represent(x, M), evaluated in closed form.

    Only diagonal words contribute: Tr rep(W_p W_p*) counts the multi-indices
    componentwise >= p, which is prod_i max(M+1-p_i, 0).
    """
    total = 0j
    for (p, q), c in x.terms.items():
        if p != q:
            continue
        count = 1
        for v in p:
            count *= max(M + 1 - v, 0)
        total += c.to_complex() * count
    return total


@dataclass(frozen=True)
class ClassInvariant:
    dimension_class: int
    compact_charge: int
    truncations_used: Tuple[int, ...]
    residual: float

    def as_pair(self):
        return (self.dimension_class, self.compact_charge)


def scalar_part(x: AlgebraElement) -> complex:
    """Circle-averaged symbol: W_p W_q* contributes its coefficient when
    p == q (the symbol is then identically 1 on the torus) and 0 otherwise."""
    total = 0j
    for (p, q), c in x.terms.items():
        if p == q:
            total += c.to_complex()
    return total


def class_invariant(e: ProjectorMatrix, m_list: List[int],
                    tol: float = 1e-6) -> ClassInvariant:
    """Numerical K-class data (dimension class, compact charge) of a
    projector over the sphere quotient.

    The compact charge is the coefficient of (M+1)^N in
    Tr rep_M(lift(E)) - d*(M+1)^{N+1}, extracted by polynomial fits over the
    truncation list; it must agree across fits to within ``tol`` and round
    to an integer.
    """
    if not e.entries:
        raise ValueError("empty projector")
    ctx = e.entries[0][0].ctx
    n = ctx.n                       # N + 1
    if len(m_list) < n + 1:
        raise ValueError(f"need at least {n + 1} truncations for degree-{n - 1} fits")
    if sorted(m_list) != list(m_list):
        raise ValueError("truncations must be ascending")
    s = np.array([[scalar_part(x) for x in row] for row in e.entries])
    d = int(np.linalg.matrix_rank(s, tol=1e-9))

    lifted_diag = [e.entries[k][k].with_context(ctx.ambient())
                   for k in range(e.size)]

    def remainder(m: int) -> float:
        tr = sum(truncated_trace(x, m) for x in lifted_diag)
        val = tr - d * (m + 1) ** n
        if abs(val.imag) > tol:
            raise UnstableInvariant(f"non-real regularized trace {val}")
        return val.real

    xs = np.array([m + 1 for m in m_list], dtype=float)
    ys = np.array([remainder(m) for m in m_list])
    deg = n - 1                     # fit degree N, read the leading coefficient

    def fit(idx) -> float:
        return float(np.polyfit(xs[idx], ys[idx], deg)[0])

    full = list(range(len(m_list)))
    estimates = [fit(full)]
    if len(m_list) > deg + 1:
        estimates.append(fit(full[1:]))
        estimates.append(fit(full[:-1]))
    spread = max(estimates) - min(estimates)
    chi = estimates[0]
    off = abs(chi - round(chi))
    if spread > tol or off > tol:
        raise UnstableInvariant(
            f"charge estimate {chi} unstable (spread {spread:.2e}, "
            f"integer distance {off:.2e}) over truncations {m_list}")
    return ClassInvariant(dimension_class=d,
                          compact_charge=int(round(chi)),
                          truncations_used=tuple(m_list),
                          residual=max(spread, off))
