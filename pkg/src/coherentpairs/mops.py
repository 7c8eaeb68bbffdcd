"""Monic orthogonal polynomial sequences and three-term recurrences.

Generation is monic Gram-Schmidt on 1, x, ..., x^N under the bilinear form
(f, g) -> <u, f g>.  A vanishing pivot p_n = <u, P_n^2> is exactly the
vanishing of the n-th Hankel minor and raises QuasiDefiniteViolation.

Two recurrence conventions are supported:

  "std"   P_{n+1} = (x - b_n) P_n - c_n P_{n-1}          (c_0 = <u, 1>)
  "flip"  the same b_n with every c_n negated; this is the x-expansion
          view x*P_n = P_{n+1} + b_n P_n - c_n P_{n-1} used by the
          coefficient-solver tables.

Converting between the two maps b -> b, c -> -c and round-trips exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateNorm, QuasiDefiniteViolation
from .functionals import MomentFunctional, strongly_classical_companion
from .polynomials import P_ONE, P_X, Poly
from .scalars import ONE, ZERO

STD = "std"
FLIP = "flip"


def inner(u: MomentFunctional, f: Poly, g: Poly) -> Fraction:
    """<u, f g> by moment expansion."""
    return u.apply(f * g)


@dataclass(frozen=True)
class Mops:
    """A monic orthogonal sequence with its norms p_n = <u, P_n^2>."""

    source: MomentFunctional
    polys: tuple
    norms: tuple

    @property
    def depth(self) -> int:
        return len(self.polys) - 1

    def __getitem__(self, n: int) -> Poly:
        return self.polys[n]


def generate(u: MomentFunctional, depth: int) -> Mops:
    """Monic Gram-Schmidt to the requested depth."""
    if depth < 0:
        raise QuasiDefiniteViolation("depth must be nonnegative", index=depth)
    polys = [P_ONE]
    norms = [u.moment(0)]
    if norms[0] == 0:
        raise QuasiDefiniteViolation("norm pivot p_n vanished", index=0)
    for n in range(1, depth + 1):
        p = Poly.monomial(n)
        for k in range(n):
            coef = inner(u, p, polys[k]) / norms[k]
            if coef != 0:
                p = p - polys[k].scale(coef)
        norm = inner(u, p, p)
        if norm == 0:
            raise QuasiDefiniteViolation("norm pivot p_n vanished", index=n)
        polys.append(p)
        norms.append(norm)
    return Mops(source=u, polys=tuple(polys), norms=tuple(norms))


@dataclass(frozen=True)
class RecurrencePair:
    """Three-term recurrence coefficients with a convention tag."""

    b: tuple
    c: tuple
    convention: str = STD

    def to(self, convention: str) -> "RecurrencePair":
        if convention not in (STD, FLIP):
            raise ValueError(f"unknown recurrence convention {convention!r}")
        if convention == self.convention:
            return self
        return RecurrencePair(b=self.b, c=tuple(-x for x in self.c), convention=convention)

    def __len__(self):
        return len(self.b)


def recurrence(m: Mops, convention: str = STD) -> RecurrencePair:
    """Recurrence coefficients b_n = <u, x P_n^2>/p_n and c_n = p_n/p_{n-1}."""
    u = m.source
    b = []
    c = [u.moment(0)]
    for n in range(m.depth):
        xpn = m.polys[n].shift_x()
        b.append(inner(u, xpn, m.polys[n]) / m.norms[n])
        if n >= 1:
            c.append(m.norms[n] / m.norms[n - 1])
    pair = RecurrencePair(b=tuple(b), c=tuple(c), convention=STD)
    return pair.to(convention)


def derivative_sequence(m: Mops):
    """Q_n = P'_{n+1}/(n+1), monic of degree n, for n = 0..depth-1."""
    return [m.polys[n + 1].derivative().scale(Fraction(1, n + 1))
            for n in range(m.depth)]


def antiderivative_sequence(m: Mops, u1: MomentFunctional):
    """For strongly classical u1: (w, T) with T the MOPS of w and T'_{n+1}/(n+1) = R_n.

    m must be the MOPS of u1.  NotStronglyClassical propagates from the
    companion construction.
    """
    w = strongly_classical_companion(u1)
    t = generate(w, m.depth + 1)
    return w, list(t.polys)


def from_orthogonality(polys, scale=ONE) -> MomentFunctional:
    """The functional u with <u, 1> = scale and <u, P_n> = 0 for 1 <= n <= depth.

    Given monic polynomials P_0..P_N this pins moments a_0..a_N; an OPS
    determines its orthogonalizing functional exactly up to this scale.
    """
    if scale == 0:
        raise DegenerateNorm("scale <u, 1> must be nonzero", index=0)
    moments = [scale]
    for n in range(1, len(polys)):
        p = polys[n]
        acc = ZERO
        for k in range(n):
            acc += p.coeff(k) * moments[k]
        moments.append(-acc / p.coeff(n))
    return MomentFunctional.from_moments(moments)
