"""Strong connections, line-bundle projectors, and projector pullback.

A strong connection value is a finite sum sum_l a_l (x) r_l of elementary
tensors over the sphere quotient with sum_l a_l r_l = 1 and bidegree
(-n, n).  The associated projector has entries E_kl = r_k a_l; idempotency
follows from the multiplicativity condition alone, so any presentation of
the connection value works and summand merging just shrinks the matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .algebra import (AlgebraElement, Context, ContextMismatch, generator,
                      unit)
from .grading import extend_hom
from .phases import ThetaMatrix


class NonzeroTwist(ValueError):
    pass


class TensorElement:
    """Finite sum of elementary tensors over a common sphere context."""

    __slots__ = ("ctx", "summands")

    def __init__(self, ctx: Context, summands):
        self.ctx = ctx
        pruned = []
        for a, r in summands:
            if a.ctx != ctx or r.ctx != ctx:
                raise ContextMismatch("tensor factors in the wrong context")
            if not (a.is_zero() or r.is_zero()):
                pruned.append((a, r))
        self.summands = pruned

    @classmethod
    def one(cls, ctx: Context) -> "TensorElement":
        return cls(ctx, [(unit(ctx), unit(ctx))])

    def simplify(self) -> "TensorElement":
        """Merge summands whose left factors are exact scalar multiples."""
        # insertion order is kept, so the summand layout is deterministic
        merged: List[Tuple[AlgebraElement, AlgebraElement]] = []
        for a, r in self.summands:
            placed = False
            for idx, (a0, r0) in enumerate(merged):
                lam = _proportionality(a, a0)
                if lam is not None:
                    merged[idx] = (a0, r0 + r.times_coeff(lam))
                    placed = True
                    break
            if not placed:
                merged.append((a, r))
        return TensorElement(self.ctx, merged)

    def contract(self) -> AlgebraElement:
        """Multiplication map: sum_l a_l * r_l."""
        out = AlgebraElement.zero(self.ctx)
        for a, r in self.summands:
            out = out + a * r
        return out

    def map_factors(self, fn) -> "TensorElement":
        return TensorElement(fn(unit(self.ctx)).ctx,
                             [(fn(a), fn(r)) for a, r in self.summands])

    def __len__(self):
        return len(self.summands)


def _proportionality(a: AlgebraElement, b: AlgebraElement):
    """Coeff lam with a == b*lam, or None; only single-phase ratios are
    recognized (sufficient: connection coefficients are phase monomials)."""
    if set(a.terms) != set(b.terms) or not a.terms:
        return None
    m0 = next(iter(a.terms))
    cb = b.terms[m0]
    if not cb.is_single_phase():
        return None
    lam = a.terms[m0] * cb.inverse()
    return lam if a == b.times_coeff(lam) else None


def h_tail(i: int, ctx: Context) -> AlgebraElement:
    """The ordered product of range complements in slots above i."""
    if not 0 <= i < ctx.n:
        raise IndexError(f"index {i} out of range")
    out = unit(ctx)
    for j in range(i + 1, ctx.n):
        g = generator(ctx, j)
        out = out * (unit(ctx) - g * g.star())
    return out


def strong_connection(n: int, N: int, theta: ThetaMatrix) -> TensorElement:
    """Connection value for winding n over the sphere quotient.

    Non-negative windings have the closed form s_0*^n (x) s_0^n; negative
    windings descend one step at a time by multiplying with (s_k (x) 1) on
    the left and (1 (x) s_k* H_k) on the right, summed over k.
    """
    if theta.n != N + 1:
        raise ValueError("twist size must be N+1")
    ctx = Context.sphere(theta)
    if n >= 0:
        s0 = generator(ctx, 0)
        return TensorElement(ctx, [(s0.star() ** n, s0 ** n)]).simplify()
    tails = [generator(ctx, k).star() * h_tail(k, ctx) for k in range(N + 1)]
    conn = TensorElement.one(ctx)
    for _ in range(-n):
        summands = []
        for k in range(N + 1):
            sk = generator(ctx, k)
            for a, r in conn.summands:
                summands.append((sk * a, r * tails[k]))
        conn = TensorElement(ctx, summands).simplify()
    return conn


def verify_connection(conn: TensorElement, n: int) -> bool:
    """Multiplicativity (contracts to 1) and bidegree (-n, n) on every
    summand."""
    if conn.contract() != unit(conn.ctx):
        return False
    for a, r in conn.summands:
        if a.degrees() - {-n} or r.degrees() - {n}:
            return False
    return True


@dataclass(frozen=True)
class ProjectorMatrix:
    """Idempotent matrix of degree-0 sphere-quotient elements, together
    with the connection data (lefts gamma, rights beta) it was built from."""

    winding: int
    entries: Tuple[Tuple[AlgebraElement, ...], ...]
    lefts: Tuple[AlgebraElement, ...] = ()
    rights: Tuple[AlgebraElement, ...] = ()

    @property
    def size(self) -> int:
        return len(self.entries)

    def is_idempotent(self) -> bool:
        return mat_eq(mat_mul(self.entries, self.entries), self.entries)

    def entries_degree_zero(self) -> bool:
        return all(e.degrees() <= {0} for row in self.entries for e in row)


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = a[i][0] * b[0][j]
            for k in range(1, inner):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_eq(a, b) -> bool:
    return (len(a) == len(b)
            and all(len(ra) == len(rb) for ra, rb in zip(a, b))
            and all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb)))


def chern_galois_projector(n: int, N: int, theta: ThetaMatrix) -> ProjectorMatrix:
    """E_kl = r_k a_l from the winding-n connection sum_l a_l (x) r_l."""
    conn = strong_connection(n, N, theta)
    lefts = tuple(a for a, _ in conn.summands)
    rights = tuple(r for _, r in conn.summands)
    entries = tuple(tuple(rk * al for al in lefts) for rk in rights)
    return ProjectorMatrix(n, entries, lefts, rights)


def pullback_hom(x: AlgebraElement) -> AlgebraElement:
    """Untwisted sphere morphism collapsing all generators above 0 to the
    single generator 1 of the three-sphere quotient."""
    if x.ctx.kind != "sphere":
        raise ContextMismatch("expected a sphere-quotient element")
    if not x.ctx.theta.is_zero():
        raise NonzeroTwist("generator collapse respects relations only at zero twist")
    target = Context.sphere(ThetaMatrix.zero(2, x.ctx.mode))
    images = [generator(target, 0)] + [generator(target, 1)] * (x.ctx.n - 1)
    return extend_hom(x, target, images)


@dataclass(frozen=True)
class ConjugationWitness:
    """Invertible G with G * E'' * G^{-1} == E' (+) 0, plus the summand
    permutation that puts the surviving columns first."""

    g: tuple
    g_inv: tuple
    permutation: Tuple[int, ...]
    gamma_beta_is_one: bool
    conjugation_holds: bool


def pullback_projector(e: ProjectorMatrix):
    """Push a projector along the sphere morphism.

    Returns (E', E'', witness): E' is the projector of the pushed-forward
    connection (f (x) f applied to the recorded summands, zero lefts
    dropped), E'' is the entry-wise image of the source projector with the
    summands permuted so the zero-left columns come last, and the witness
    conjugates E' padded by zeros to E''.
    """
    if not e.lefts:
        raise ValueError("projector carries no recorded connection data")
    pushed = [(pullback_hom(a), pullback_hom(r))
              for a, r in zip(e.lefts, e.rights)]
    keep = [l for l, (a, _) in enumerate(pushed) if not a.is_zero()]
    drop = [l for l, (a, _) in enumerate(pushed) if a.is_zero()]
    perm = keep + drop
    gamma_p = [pushed[l][0] for l in keep]
    beta_p = [pushed[l][1] for l in keep]
    rho_p = [pushed[l][1] for l in drop]
    ctx = gamma_p[0].ctx
    m, mp = len(pushed), len(keep)

    e_prime = ProjectorMatrix(
        e.winding,
        tuple(tuple(rk * al for al in gamma_p) for rk in beta_p),
        tuple(gamma_p), tuple(beta_p))
    beta_pp = beta_p + rho_p
    e_pp = ProjectorMatrix(
        e.winding,
        tuple(tuple(beta_pp[k] * (gamma_p[l] if l < mp else AlgebraElement.zero(ctx))
                    for l in range(m)) for k in range(m)))

    # gamma' beta'^T = sum of the surviving a_l r_l; the dropped summands
    # contribute zero, so this is the image of the full contraction
    gb = AlgebraElement.zero(ctx)
    for a, r in zip(gamma_p, beta_p):
        gb = gb + a * r
    gamma_beta_is_one = gb == unit(ctx)

    zero = AlgebraElement.zero(ctx)
    one = unit(ctx)
    g = [[one if i == j else zero for j in range(m)] for i in range(m)]
    g_inv = [[one if i == j else zero for j in range(m)] for i in range(m)]
    for i in range(m - mp):
        for j in range(mp):
            block = rho_p[i] * gamma_p[j]
            g[mp + i][j] = -block
            g_inv[mp + i][j] = block
    g = tuple(tuple(row) for row in g)
    g_inv = tuple(tuple(row) for row in g_inv)

    padded = tuple(tuple(e_prime.entries[i][j] if i < mp and j < mp else zero
                         for j in range(m)) for i in range(m))
    conj = mat_mul(mat_mul(g_inv, padded), g)
    holds = mat_eq(conj, e_pp.entries)
    witness = ConjugationWitness(g, g_inv, tuple(perm),
                                 gamma_beta_is_one, holds)
    return e_prime, e_pp, witness
