"""Companion functionals through a degree-2 identity A(x) v = D(x) u.

Given a functional u and degree-2 polynomials A and D, the companion v has
moments satisfying the two-step linear recurrence <A v, x^n> = <D u, x^n>;
the two free initial moments are exactly the point-mass degrees of freedom
at the roots of A.  When A factors over the rationals, the companion
decomposes as a divided base functional plus point masses, and the
decomposition is recovered by moment matching.

The point-mass constants (M0, M1, M2) of a relation dataset come from the
expansion of <A v, Q_n> through the relation: M_k = <A v, R_k> vanishes
for k >= 3 because deg(A) = 2, and requiring the expansion to obey its own
two-term recursion from n = 3 on pins M0 and M1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coherence import CoherenceData
from .errors import InvalidParameter, SingularMkSystem, ZeroM2
from .functionals import ClassicalFamily, MomentFunctional
from .mops import inner
from .polynomials import Poly
from .scalars import ZERO, rat, sqrt_rational


def av_q_pairing(cd: CoherenceData, m_values, n: int) -> Fraction:
    """<A v, Q_n> expanded through the relation, as a combination of M_k.

    m_values maps k -> M_k = <A v, R_k> (missing keys count as zero).
    The expansion follows the relation recursively:

        <A v, Q_n> = M_n - d[n-1] M_{n-1} - e[n-2] M_{n-2}
                     + sigma[n-1] <A v, Q_{n-1}> + tau[n-2] <A v, Q_{n-2}>.
    """
    vals = []
    for k in range(n + 1):
        acc = m_values.get(k, ZERO)
        if k - 1 >= 0:
            acc -= cd.d[k - 1] * m_values.get(k - 1, ZERO)
            acc += cd.sigma[k - 1] * vals[k - 1]
        if k - 2 >= 0:
            acc -= cd.e[k - 2] * m_values.get(k - 2, ZERO)
            acc += cd.tau[k - 2] * vals[k - 2]
        vals.append(acc)
    return vals[n]


@dataclass
class CompanionSpec:
    """A solved companion description."""

    A: Poly
    D: Poly
    M0: Fraction
    M1: Fraction
    M2: Fraction
    delta_terms: list


def solve_mk(cd: CoherenceData, A: Poly, v: MomentFunctional, rseq):
    """Solve for (M0, M1, M2) of a three-term relation dataset.

    M2 = <A v, R_2> is computed directly and must be nonzero; M0, M1 solve
    the 2x2 system that kills <A v, Q_3> and <A v, Q_4>.  The value
    <A v, Q_2> is then checked against e[2] M2 / tau[2], which the
    three-term structure forces; a mismatch raises SingularMkSystem.
    """
    if A.degree != 2:
        raise InvalidParameter("the multiplier A must have degree 2")
    if len(cd.tau) < 3 or cd.tau[2] == 0 or len(cd.e) < 3 or cd.e[2] == 0:
        raise InvalidParameter("solve_mk needs a three-term dataset (tau_2, e_2 nonzero)")
    if len(cd.sigma) < 4 or len(cd.d) < 4 or len(rseq) < 3:
        raise InvalidParameter("solve_mk needs sigma, d to index 3 and R to degree 2")
    m2 = inner(v, A, rseq[2])
    if m2 == 0:
        raise ZeroM2("<A v, R_2> = 0")

    def row(n):
        """<A v, Q_n> = coef0*M0 + coef1*M1 + const(M2) with M_k>=3 = 0."""
        base = av_q_pairing(cd, {2: m2}, n)
        c0 = av_q_pairing(cd, {0: Fraction(1)}, n)
        c1 = av_q_pairing(cd, {1: Fraction(1)}, n)
        return c0, c1, base

    a0, a1, a2 = row(3)
    b0, b1, b2 = row(4)
    det = a0 * b1 - a1 * b0
    if det == 0:
        raise SingularMkSystem("the 2x2 system for (M0, M1) is singular")
    m0 = (-a2 * b1 + a1 * b2) / det
    m1 = (-a0 * b2 + a2 * b0) / det
    check = av_q_pairing(cd, {0: m0, 1: m1, 2: m2}, 2)
    expected = cd.e[2] * m2 / cd.tau[2]
    if check != expected:
        raise SingularMkSystem(
            f"<A v, Q_2> = {check} disagrees with e_2 M_2 / tau_2 = {expected}")
    return m0, m1, m2


class CompanionFunctional(MomentFunctional):
    """Moments generated by the two-step recurrence <A v, x^n> = <D u, x^n>.

    A is normalized monic (the scale is absorbed into D), so with A = x^2
    + a1 x + a0 the moments obey m_{n+2} = <u, D~ x^n> - a1 m_{n+1}
    - a0 m_n seeded by the two free initial moments.
    """

    __slots__ = ("u", "A", "D", "_moments")

    def __init__(self, u, A, D, m0, m1):
        super().__init__(base=[])
        self.u = u
        self.A = A
        self.D = D
        self._moments = [rat(m0), rat(m1)]

    def _moment_uncached(self, n):
        lead = self.A.leading
        a1 = self.A.coeff(1) / lead
        a0 = self.A.coeff(0) / lead
        dd = self.D.scale(Fraction(1) / lead)
        while len(self._moments) < n + 1:
            k = len(self._moments) - 2
            rhs = self.u.apply(dd * Poly.monomial(k))
            self._moments.append(rhs - a1 * self._moments[k + 1] - a0 * self._moments[k])
        return self._moments[n]

    def descriptor(self):
        from .polynomials import to_strings
        from .scalars import format_rational
        return {"companion_of": self.u.descriptor(),
                "A": to_strings(self.A), "D": to_strings(self.D),
                "m0": format_rational(self._moments[0]),
                "m1": format_rational(self._moments[1])}


def companion_from_ad(u: MomentFunctional, A: Poly, D: Poly, m0, m1) -> MomentFunctional:
    """The functional v with A v = D u, seeded by its first two moments.

    The map (m0, m1) -> v is affine; differencing two outputs isolates the
    pure point-mass solutions supported at the roots of A.
    """
    if A.degree != 2:
        raise InvalidParameter("the multiplier A must have degree 2")
    return CompanionFunctional(u, A, D, m0, m1)


def verify_companion(u: MomentFunctional, v: MomentFunctional,
                     A: Poly, D: Poly, depth: int):
    """Residuals <A v - D u, x^k> for k = 0..depth (all zero iff A v = D u)."""
    av = v.mul_poly(A)
    du = u.mul_poly(D)
    return [av.moment(k) - du.moment(k) for k in range(depth + 1)]


def _rational_roots_deg2(A: Poly):
    """Roots of a degree-2 polynomial when both lie in the rationals."""
    a, b, c = A.coeff(2), A.coeff(1), A.coeff(0)
    disc = b * b - 4 * a * c
    root = sqrt_rational(disc)
    if root is None:
        return None
    return ((-b + root) / (2 * a), (-b - root) / (2 * a))


def delta_decomposition(v: MomentFunctional, u: MomentFunctional,
                        A: Poly, D: Poly, depth: int):
    """Decompose a companion as base + point masses at the roots of A.

    When A and D are proportional the base is the matching multiple of u
    itself; otherwise the base is D u divided by the linear factors of A
    with the standard division convention (each division forces the new
    zeroth moment to 0).  Returns (base, terms) with terms a list of
    (point, order, weight) in the plain-evaluation convention (order-1
    weights multiply p'(point)), points in descending order, or None when
    A has no rational roots.  The decomposition is verified against v's
    moments up to depth.
    """
    roots = _rational_roots_deg2(A)
    if roots is None:
        return None
    r1, r2 = sorted(roots, reverse=True)
    lead = A.leading
    if A.scale(Fraction(1) / lead) == D.scale(Fraction(1) / D.leading) and D.degree == 2:
        base = u.mul_poly(Poly.constant(D.leading / lead))
    else:
        base = u.mul_poly(D.scale(Fraction(1) / lead)).div_linear(r1).div_linear(r2)
    w0 = v.moment(0) - base.moment(0)
    w1 = v.moment(1) - base.moment(1)
    if r1 == r2:
        # kernel {delta_r, delta'_r}: moments M r^n + W n r^(n-1)
        M = w0
        W = w1 - M * r1
        terms = [(r1, 0, M), (r1, 1, W)]
    else:
        # kernel {delta_r1, delta_r2}
        M = (w1 - r2 * w0) / (r1 - r2)
        N = w0 - M
        terms = [(r1, 0, M), (r2, 0, N)]
    probe = base
    for point, order, weight in terms:
        probe = probe.add_delta(point, order, weight)
    for k in range(depth + 1):
        if probe.moment(k) != v.moment(k):
            raise InvalidParameter(
                f"delta decomposition failed to reproduce moment {k}; "
                "the pair (A, D) does not match the supplied functionals")
    return base, terms


def classify_modification(family: ClassicalFamily, D: Poly):
    """Degree report for the product D * phi of the family's Pearson pair.

    For deg(D) = 2 the degree is 2 for hermite, 3 for laguerre and 4 for
    jacobi or bessel.
    """
    product = D * family.phi
    return {"family": family.kind, "deg_D": D.degree,
            "deg_D_phi": product.degree}
