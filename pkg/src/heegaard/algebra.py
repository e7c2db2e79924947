"""Monomial calculus for the twisted multi-isometry algebra and its quotients.

Elements live in the dense *-subalgebra spanned by canonical words
W_p W_q* = w_0^{p_0}...w_N^{p_N} w_N^{*q_N}...w_0^{*q_0}, with creations in
ascending generator order and annihilations descending.  The defining
relations are

    w_i w_j   = e^{2*pi*i*theta_ij} w_j w_i,
    w_i w_j*  = e^{-2*pi*i*theta_ij} w_j* w_i   (i != j),
    w_i* w_i  = 1,

so the product of two basis words is a single basis word times a unimodular
phase.  Quotient contexts impose extra relations: unitary slots add
w_s w_s* = 1, and the sphere quotient kills the range-complement product
prod_j (1 - w_j w_j*).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from .coeff import Coeff
from .phases import RATIONAL, ThetaMatrix, check_dims

TOEPLITZ = "toeplitz"
SPHERE = "sphere"

MultiIndex = Tuple[int, ...]


class ContextMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Context:
    """Algebra tag: which relations hold beyond the ambient twisted ones.

    kind "toeplitz" with empty ``unitary`` is the full algebra; nonempty
    ``unitary`` lists the slots whose generator has been made unitary (one
    slot for B_i, two for B_ij).  kind "sphere" is the quotient by the ideal
    generated by prod_j (1 - w_j w_j*).
    """

    kind: str
    theta: ThetaMatrix
    unitary: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in (TOEPLITZ, SPHERE):
            raise ValueError(f"unknown context kind {self.kind!r}")
        if self.kind == SPHERE and self.unitary:
            raise ValueError("sphere context admits no unitary slots")
        if len(set(self.unitary)) != len(self.unitary):
            raise ValueError("repeated unitary slot")
        for s in self.unitary:
            if not 0 <= s < self.theta.n:
                raise IndexError(f"unitary slot {s} out of range")
        object.__setattr__(self, "unitary", tuple(sorted(self.unitary)))

    @property
    def n(self) -> int:
        return self.theta.n

    @property
    def mode(self) -> str:
        return self.theta.mode

    @classmethod
    def toeplitz(cls, theta: ThetaMatrix) -> "Context":
        return cls(TOEPLITZ, theta)

    @classmethod
    def quotient(cls, theta: ThetaMatrix, *slots: int) -> "Context":
        return cls(TOEPLITZ, theta, tuple(slots))

    @classmethod
    def sphere(cls, theta: ThetaMatrix) -> "Context":
        return cls(SPHERE, theta)

    def ambient(self) -> "Context":
        """The plain algebra with the same twist (all extra relations dropped)."""
        return Context(TOEPLITZ, self.theta)


def _zero_phase(theta: ThetaMatrix):
    return Fraction(0) if theta.mode == RATIONAL else 0.0


def _normal_order(theta: ThetaMatrix, letters):
    """Rewrite a word into creations-ascending / stars-descending form.

    ``letters`` is a list of (index, is_star).  Returns (phase exponent, p, q).
    Each step applies one defining relation, so the accumulated phase is exact
    in rational mode.
    """
    word = list(letters)
    phase = _zero_phase(theta)
    # move stars right past creations, cancelling matched w_i* w_i pairs
    moved = True
    while moved:
        moved = False
        idx = 0
        while idx + 1 < len(word):
            (a, sa), (b, sb) = word[idx], word[idx + 1]
            if sa and not sb:
                if a == b:
                    del word[idx:idx + 2]
                    idx = max(idx - 1, 0)
                else:
                    # w_a* w_b = e^{2 pi i theta_ba} w_b w_a*
                    phase += theta.entry(b, a)
                    word[idx], word[idx + 1] = (b, sb), (a, sa)
                    idx += 1
                moved = True
            else:
                idx += 1
    p = [0] * theta.n
    q = [0] * theta.n
    cre = []
    for a, sa in word:
        if sa:
            q[a] += 1
        else:
            cre.append(a)
            p[a] += 1
    # sorting the creation block ascending: each adjacent swap of w_a w_b
    # with a > b contributes theta_ab; count inversions exactly
    for pos, a in enumerate(cre):
        for b in cre[pos + 1:]:
            if a > b:
                phase += theta.entry(a, b)
    # the star block is the adjoint picture: sorting w_a* w_b* with a < b
    # to descending contributes theta_ab per inversion; the incoming star
    # letters are in word order, stars of the left factor first
    stars = [a for a, sa in word if sa]
    for pos, a in enumerate(stars):
        for b in stars[pos + 1:]:
            if a < b:
                phase += theta.entry(a, b)
    return phase, tuple(p), tuple(q)


def _mono_product(theta: ThetaMatrix, p, q, r, t):
    """(W_p W_q*)(W_r W_t*) = phase * W_p' W_q'*; returns (phase, p', q')."""
    letters = []
    for i in range(theta.n):
        letters.extend([(i, False)] * p[i])
    for j in reversed(range(theta.n)):
        letters.extend([(j, True)] * q[j])
    for i in range(theta.n):
        letters.extend([(i, False)] * r[i])
    for j in reversed(range(theta.n)):
        letters.extend([(j, True)] * t[j])
    return _normal_order(theta, letters)


def _unitary_reduce(theta: ThetaMatrix, slots, p, q):
    """Cancel w_s w_s* pairs in unitary slots; returns (phase, p', q').

    Cancelling one pair in slot s moves the innermost w_s right past the
    higher-index creations and the matching w_s* left past the higher-index
    stars, for a net exponent sum_{j>s} theta_sj (p_j - q_j) per pair.
    """
    phase = _zero_phase(theta)
    p = list(p)
    q = list(q)
    for s in slots:
        k = min(p[s], q[s])
        if k:
            shift = _zero_phase(theta)
            for j in range(s + 1, theta.n):
                shift += theta.entry(s, j) * (p[j] - q[j])
            phase += k * shift
            p[s] -= k
            q[s] -= k
    return phase, tuple(p), tuple(q)


class AlgebraElement:
    """Finite linear combination of canonical monomials in a fixed context."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms: Dict[Tuple[MultiIndex, MultiIndex], Coeff]):
        self.ctx = ctx
        self.terms = {m: c for m, c in terms.items() if not c.is_zero()}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ctx: Context) -> "AlgebraElement":
        return cls(ctx, {})

    @classmethod
    def unit(cls, ctx: Context) -> "AlgebraElement":
        z = (0,) * ctx.n
        return cls(ctx, {(z, z): Coeff.one(ctx.mode)})

    @classmethod
    def monomial(cls, ctx: Context, p, q, coeff=None) -> "AlgebraElement":
        p, q = tuple(p), tuple(q)
        check_dims(ctx.theta, p, q)
        if any(v < 0 for v in p + q):
            raise ValueError("multi-index entries must be non-negative")
        c = coeff if coeff is not None else Coeff.one(ctx.mode)
        return _canonicalize(ctx, {(p, q): c})

    # -- linear structure --------------------------------------------------

    def _check(self, other: "AlgebraElement"):
        if self.ctx != other.ctx:
            raise ContextMismatch(f"contexts differ: {self.ctx} vs {other.ctx}")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return AlgebraElement(self.ctx, terms)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, w) -> "AlgebraElement":
        return AlgebraElement(self.ctx, {m: c.scale(w) for m, c in self.terms.items()})

    def times_coeff(self, c: Coeff) -> "AlgebraElement":
        return AlgebraElement(self.ctx, {m: cc * c for m, cc in self.terms.items()})

    def times_phase(self, t) -> "AlgebraElement":
        return AlgebraElement(self.ctx, {m: c.times_phase(t) for m, c in self.terms.items()})

    # -- multiplicative structure -----------------------------------------

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        theta = self.ctx.theta
        terms: Dict[Tuple[MultiIndex, MultiIndex], Coeff] = {}
        for (p, q), c1 in self.terms.items():
            for (r, t), c2 in other.terms.items():
                phase, pp, qq = _mono_product(theta, p, q, r, t)
                c = (c1 * c2).times_phase(phase)
                key = (pp, qq)
                terms[key] = terms[key] + c if key in terms else c
        return _canonicalize(self.ctx, terms)

    def star(self) -> "AlgebraElement":
        # (W_p W_q*)* = W_q W_p* is already canonical, so no reordering phase
        return _canonicalize(self.ctx,
                             {(q, p): c.conj() for (p, q), c in self.terms.items()})

    def __pow__(self, k: int) -> "AlgebraElement":
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = AlgebraElement.unit(self.ctx)
        for _ in range(k):
            out = out * self
        return out

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if self.ctx != other.ctx:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("AlgebraElement is not hashable")

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mc[0])

    def degrees(self):
        """Set of total U(1)-degrees |p| - |q| present."""
        return {sum(p) - sum(q) for p, q in self.terms}

    def with_context(self, ctx: Context) -> "AlgebraElement":
        """Reinterpret the same combination of words in another context.

        Moving toward a quotient re-canonicalizes; moving toward the ambient
        algebra is a (non-canonical) lift of representatives.
        """
        if ctx.theta != self.ctx.theta:
            raise ContextMismatch("contexts carry different twist matrices")
        return _canonicalize(ctx, dict(self.terms))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = [f"{c!r}*W{list(p)}W{list(q)}^*" for (p, q), c in self.sorted_terms()]
        return " + ".join(bits)


def _canonicalize(ctx: Context,
                  terms: Dict[Tuple[MultiIndex, MultiIndex], Coeff]) -> AlgebraElement:
    """Apply the context's extra relations term-wise and prune zeros."""
    if ctx.unitary:
        reduced: Dict[Tuple[MultiIndex, MultiIndex], Coeff] = {}
        for (p, q), c in terms.items():
            phase, pp, qq = _unitary_reduce(ctx.theta, ctx.unitary, p, q)
            key = (pp, qq)
            c = c.times_phase(phase)
            reduced[key] = reduced[key] + c if key in reduced else c
        terms = reduced
    if ctx.kind == SPHERE:
        terms = _sphere_normalize(ctx.theta, terms)
    return AlgebraElement(ctx, terms)


def generator(ctx: Context, i: int) -> AlgebraElement:
    if not 0 <= i < ctx.n:
        raise IndexError(f"generator index {i} out of range")
    p = tuple(1 if j == i else 0 for j in range(ctx.n))
    return AlgebraElement.monomial(ctx, p, (0,) * ctx.n)


def unit(ctx: Context) -> AlgebraElement:
    return AlgebraElement.unit(ctx)


def sphere_defect(ctx: Context) -> AlgebraElement:
    """prod_i (1 - w_i w_i*) expanded in the monomial basis.

    In the sphere context this normalizes to 0 by construction.
    """
    out = AlgebraElement.unit(ctx)
    for i in range(ctx.n):
        g = generator(ctx, i)
        out = out * (AlgebraElement.unit(ctx) - g * g.star())
    return out


def compact_matrix_unit(p, q, ctx: Context) -> AlgebraElement:
    """W_p R W_q* with R the range-complement product; these multiply as
    matrix units up to a unimodular scalar."""
    left = AlgebraElement.monomial(ctx, p, (0,) * ctx.n)
    right = AlgebraElement.monomial(ctx, q, (0,) * ctx.n).star()
    return left * sphere_defect(ctx) * right


# -- sphere-quotient normal form ------------------------------------------

_REWRITE_CACHE: Dict[tuple, dict] = {}


def _interior(p, q) -> bool:
    return all(min(a, b) >= 1 for a, b in zip(p, q))


def _sphere_rewrite(theta: ThetaMatrix, p, q):
    """Express the fully-interior word W_p W_q* through smaller words.

    W_{p-1} R W_{q-1}* vanishes in the quotient; expanding R and solving for
    the top term (which is W_p W_q* times an invertible phase) rewrites the
    word through terms of strictly smaller total degree.
    """
    key = (theta, p, q)
    hit = _REWRITE_CACHE.get(key)
    if hit is not None:
        return hit
    ctx = Context.toeplitz(theta)
    ones = (1,) * theta.n
    pm = tuple(a - 1 for a in p)
    qm = tuple(a - 1 for a in q)
    expr = (AlgebraElement.monomial(ctx, pm, (0,) * theta.n)
            * sphere_defect(ctx)
            * AlgebraElement.monomial(ctx, qm, (0,) * theta.n).star())
    top = expr.terms.get((p, q))
    if top is None:
        raise AssertionError("top term missing from range-complement expansion")
    inv = top.inverse()
    repl = {m: (-(c * inv)) for m, c in expr.terms.items() if m != (p, q)}
    _REWRITE_CACHE[key] = repl
    return repl


def _sphere_normalize(theta: ThetaMatrix, terms):
    work = {m: c for m, c in terms.items() if not c.is_zero()}
    while True:
        target = None
        for m in work:
            if _interior(*m):
                target = m
                break
        if target is None:
            return work
        c = work.pop(target)
        for m, w in _sphere_rewrite(theta, *target).items():
            cc = c * w
            if m in work:
                s = work[m] + cc
                if s.is_zero():
                    del work[m]
                else:
                    work[m] = s
            elif not cc.is_zero():
                work[m] = cc
