"""Extended generalized coherent pairs: fitting, structure, solvers.

The central object is the four-family relation between two monic sequences
R and Q (coefficients at negative indices are zero):

    R_n - d[n-1] R_{n-1} - e[n-2] R_{n-2}
        = Q_n - sigma[n-1] Q_{n-1} - tau[n-2] Q_{n-2},     n >= 0.

When both sequences also satisfy three-term recurrences in the std
convention -- pairs (b, c) for Q and (beta, gamma) for R -- the eight
coefficient families obey a closed system of structure identities.  The
exact formulas below were validated against real data: companion pairs
built from a degree-2 functional identity satisfy every one of them
identically, and no variant with other signs or dropped factors does.

Structure coefficients (std convention; terms with negative indices drop):

    A_n = beta_n + d_n - d_{n-1}          D_n = b_n + sigma_n - sigma_{n-1}
    B_n = gamma_n - beta_{n-1} d_{n-1} + e_{n-1} - e_{n-2}
          - e_{n-2} gamma_{n-2} / e_{n-3}
    E_n = c_n - b_{n-1} sigma_{n-1} + tau_{n-1} - tau_{n-2}
          - tau_{n-2} c_{n-2} / tau_{n-3}
    C_n = d_{n-1} gamma_{n-1} + e_{n-2} beta_{n-2}
          - (e_{n-2} gamma_{n-2} / e_{n-3}) d_{n-2}
    F_n = sigma_{n-1} c_{n-1} + tau_{n-2} b_{n-2}
          - (tau_{n-2} c_{n-2} / tau_{n-3}) sigma_{n-2}
    G_n = tau_{n-2} c_{n-2} - (e_{n-2} gamma_{n-2} / e_{n-3}) tau_{n-3}

with boundary values B_0 = E_0 = C_0 = C_1 = F_0 = F_1 = G_0 = G_1 = G_2
= 0.  Valid data always has A_n = D_n and, from n = 3 on, G_n = 0.  The
nonzero-A branch works with the combinations K_n = B_n + d_{n-1} A_n
(R side) = E_n + sigma_{n-1} A_n (Q side) and X_n = C_n - e_{n-2} A_n
= F_n - tau_{n-2} A_n.

Any internally consistent dataset is realizable: rebuilding R from the
relation against a concrete orthogonal Q makes R satisfy its three-term
recurrence, so R is itself a monic orthogonal sequence for the functional
it determines.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (DivisionByZeroCoefficient, InconsistentStructure,
                     InvalidParameter, UnderdeterminedInitials)
from .linsolve import solve_tall
from .mops import STD, RecurrencePair
from .polynomials import Poly
from .scalars import ONE, ZERO, rat

CASE_I_1_I = "CaseI1i"
CASE_II_1_I = "CaseII1i"
REDUCED_TWO_TERM = "ReducedToTwoTerm"
TRIVIAL_R_EQ_Q = "Trivial(R=Q)"
INCONSISTENT = "Inconsistent"


@dataclass
class CoherenceData:
    """Relation coefficients (sigma, tau, d, e), each indexed from 0."""

    sigma: list
    tau: list
    d: list
    e: list

    @property
    def three_term(self) -> bool:
        """True when e_n tau_n != 0 for every stored index n >= 1."""
        pairs = list(zip(self.e[1:], self.tau[1:]))
        return bool(pairs) and all(e != 0 and t != 0 for e, t in pairs)

    def __eq__(self, other):
        return (isinstance(other, CoherenceData)
                and list(self.sigma) == list(other.sigma)
                and list(self.tau) == list(other.tau)
                and list(self.d) == list(other.d)
                and list(self.e) == list(other.e))


def reconstruct_partner(qseq, cd: CoherenceData, depth: int):
    """Rebuild R_0..R_depth from the relation against a concrete Q."""
    rseq = [qseq[0]]
    for n in range(1, depth + 1):
        p = qseq[n]
        if n - 1 < len(cd.sigma):
            p = p - qseq[n - 1].scale(cd.sigma[n - 1])
        if 0 <= n - 2 < len(cd.tau):
            p = p - qseq[n - 2].scale(cd.tau[n - 2])
        if n - 1 < len(cd.d):
            p = p + rseq[n - 1].scale(cd.d[n - 1])
        if 0 <= n - 2 < len(cd.e):
            p = p + rseq[n - 2].scale(cd.e[n - 2])
        rseq.append(p)
    return rseq


def fit_relation(rseq, qseq, depth: int, pins=None):
    """Fit the relation coefficients from the two monic sequences.

    Solves the window system at each n = 1..depth.  The lowest windows do
    not pin every unknown (the same freedom that makes the solvers' initial
    values free), so undetermined slots take the caller's pinned value,
    default zero; the returned report lists them as (name, index) pairs.

    Returns (CoherenceData, residuals, free_slots); residuals[n-1] is the
    polynomial defect of the window at n, zero exactly when the relation
    holds there.
    """
    pins = pins or {}
    sigma, tau, d, e = [], [], [], []
    residuals, free_slots = [], []
    for n in range(1, depth + 1):
        target = rseq[n] - qseq[n]
        rn1 = rseq[n - 1]
        rn2 = rseq[n - 2] if n >= 2 else Poly()
        qn1 = qseq[n - 1]
        qn2 = qseq[n - 2] if n >= 2 else Poly()
        # target = d*R_{n-1} + e*R_{n-2} - sigma*Q_{n-1} - tau*Q_{n-2}
        columns = [rn1, rn2, qn1.scale(-1), qn2.scale(-1)]
        rows = [[col.coeff(k) for col in columns] for k in range(n - 1, -1, -1)]
        rhs = [target.coeff(k) for k in range(n - 1, -1, -1)]
        colpins = {2: pins.get(("sigma", n - 1), ZERO),
                   3: pins.get(("tau", n - 2), ZERO)}
        sol, free, _ = solve_tall(rows, rhs, 4, pins=colpins)
        d.append(sol[0])
        sigma.append(sol[2])
        if n >= 2:
            e.append(sol[1])
            tau.append(sol[3])
        for idx in free:
            name = ("d", "e", "sigma", "tau")[idx]
            pos = n - 1 if idx in (0, 2) else n - 2
            if pos >= 0:
                free_slots.append((name, pos))
        defect = target - (rn1.scale(sol[0]) + rn2.scale(sol[1])
                           - qn1.scale(sol[2]) - qn2.scale(sol[3]))
        residuals.append(defect)
    return CoherenceData(sigma=sigma, tau=tau, d=d, e=e), residuals, free_slots


def _ratio(num, den, index, name):
    """num/den with the zero-numerator shortcut; zero pivots raise."""
    if num == 0:
        return ZERO
    if den == 0:
        raise DivisionByZeroCoefficient(f"zero pivot {name}", index=index)
    return num / den


@dataclass
class StructureCoeffs:
    """Structure families, lists aligned at index 0 with boundary zeros."""

    A: list
    B: list
    C: list
    D: list
    E: list
    F: list
    G: list
    K_r: list
    K_q: list
    X_r: list
    X_q: list
    depth: int


def structure_coeffs(cd: CoherenceData, q_rec: RecurrencePair,
                     r_rec: RecurrencePair, depth=None) -> StructureCoeffs:
    """Evaluate every structure family on the given dataset.

    Both recurrence pairs are converted to the std convention internally.
    Tail ratios with a vanishing numerator are zero without dividing; a
    genuine zero divisor raises DivisionByZeroCoefficient.
    """
    q = q_rec.to(STD)
    r = r_rec.to(STD)
    b, c = list(q.b), list(q.c)
    beta, gamma = list(r.b), list(r.c)
    sig, tau, d, e = list(cd.sigma), list(cd.tau), list(cd.d), list(cd.e)
    limit = min(len(b), len(beta), len(sig), len(d), len(c), len(gamma)) - 1
    limit = min(limit, len(tau), len(e))
    if depth is not None:
        limit = min(limit, depth)
    if limit < 0:
        raise InvalidParameter("not enough data to form structure coefficients")

    def at(seq, k):
        return seq[k] if 0 <= k < len(seq) else ZERO

    A = [beta[0] + d[0]]
    D = [b[0] + sig[0]]
    B, E, C, F, G = [ZERO], [ZERO], [ZERO], [ZERO], [ZERO]
    K_r, K_q, X_r, X_q = [ZERO], [ZERO], [ZERO], [ZERO]
    for n in range(1, limit + 1):
        A.append(beta[n] + d[n] - d[n - 1])
        D.append(b[n] + sig[n] - sig[n - 1])
        e_tail = (_ratio(at(e, n - 2) * at(gamma, n - 2), at(e, n - 3), n, "e_{n-3}")
                  if n >= 3 else ZERO)
        t_tail = (_ratio(at(tau, n - 2) * at(c, n - 2), at(tau, n - 3), n, "tau_{n-3}")
                  if n >= 3 else ZERO)
        Bn = gamma[n] - beta[n - 1] * d[n - 1] + at(e, n - 1) - at(e, n - 2) - e_tail
        En = c[n] - b[n - 1] * sig[n - 1] + at(tau, n - 1) - at(tau, n - 2) - t_tail
        B.append(Bn)
        E.append(En)
        if n >= 2:
            Cn = (d[n - 1] * gamma[n - 1] + at(e, n - 2) * beta[n - 2]
                  - e_tail * at(d, n - 2))
            Fn = (sig[n - 1] * c[n - 1] + at(tau, n - 2) * b[n - 2]
                  - t_tail * at(sig, n - 2))
        else:
            Cn = Fn = ZERO
        C.append(Cn)
        F.append(Fn)
        G.append(at(tau, n - 2) * at(c, n - 2) - e_tail * at(tau, n - 3)
                 if n >= 3 else ZERO)
        K_r.append(Bn + d[n - 1] * A[n])
        K_q.append(En + sig[n - 1] * A[n])
        X_r.append(Cn - at(e, n - 2) * A[n] if n >= 2 else ZERO)
        X_q.append(Fn - at(tau, n - 2) * A[n] if n >= 2 else ZERO)
    return StructureCoeffs(A=A, B=B, C=C, D=D, E=E, F=F, G=G,
                           K_r=K_r, K_q=K_q, X_r=X_r, X_q=X_q, depth=limit)


@dataclass
class CaseVerdict:
    tag: str
    detail: str = ""


def classify(sc: StructureCoeffs) -> CaseVerdict:
    """Walk the structure decision tree.

    Raises InconsistentStructure when an identity every valid dataset must
    satisfy fails: A_n != D_n, a one-sided K or X mismatch, or a nonzero
    G_n where the branch requires it to vanish.
    """
    if sc.depth < 5:
        raise InvalidParameter("classification needs structure coefficients to depth >= 5")
    for n in range(sc.depth + 1):
        if sc.A[n] != sc.D[n]:
            raise InconsistentStructure("A_n != D_n", index=n)
    zero_a = [n for n in range(sc.depth + 1) if sc.A[n] == 0]
    if len(zero_a) == sc.depth + 1:
        for n in range(1, sc.depth + 1):
            if sc.B[n] != sc.E[n]:
                raise InconsistentStructure("B_n != E_n under A=D=0", index=n)
        if any(sc.B[n] != 0 for n in range(1, sc.depth + 1)):
            return CaseVerdict(REDUCED_TWO_TERM, "B=E nonzero: relation shortens")
        for n in range(2, sc.depth + 1):
            if sc.C[n] != sc.F[n]:
                raise InconsistentStructure("C_n != F_n under A=D=0, B=E=0", index=n)
        if any(sc.C[n] != 0 for n in range(2, sc.depth + 1)):
            return CaseVerdict(TRIVIAL_R_EQ_Q, "C=F nonzero forces R=Q")
        for n in range(3, sc.depth + 1):
            if sc.G[n] != 0:
                raise InconsistentStructure("G_n != 0 in the zero-A branch", index=n)
        return CaseVerdict(CASE_I_1_I)
    if zero_a:
        raise InconsistentStructure("mixed zero pattern in A_n", index=zero_a[0])
    for n in range(1, sc.depth + 1):
        if sc.K_r[n] != sc.K_q[n]:
            raise InconsistentStructure("K mismatch between the two sides", index=n)
    if any(sc.K_r[n] != 0 for n in range(1, sc.depth + 1)):
        return CaseVerdict(REDUCED_TWO_TERM, "K nonzero: relation shortens")
    for n in range(2, sc.depth + 1):
        if sc.X_r[n] != sc.X_q[n]:
            raise InconsistentStructure("X mismatch between the two sides", index=n)
    if any(sc.X_r[n] != 0 for n in range(2, sc.depth + 1)):
        return CaseVerdict(TRIVIAL_R_EQ_Q, "X nonzero forces R=Q")
    for n in range(3, sc.depth + 1):
        if sc.G[n] != 0:
            raise InconsistentStructure("G_n != 0 in the nonzero-A branch", index=n)
    return CaseVerdict(CASE_II_1_I)


@dataclass
class CaseSolution:
    """A full eight-family dataset with its self-verification verdict."""

    cd: CoherenceData
    q_rec: RecurrencePair
    r_rec: RecurrencePair
    structure: StructureCoeffs
    verdict: CaseVerdict


def _finish(cd, b, c, beta, gamma, expect, verify) -> CaseSolution:
    q_rec = RecurrencePair(b=tuple(b), c=tuple(c), convention=STD)
    r_rec = RecurrencePair(b=tuple(beta), c=tuple(gamma), convention=STD)
    sc = structure_coeffs(cd, q_rec, r_rec)
    try:
        verdict = classify(sc)
    except (InconsistentStructure, InvalidParameter) as exc:
        if verify:
            raise
        verdict = CaseVerdict(INCONSISTENT, str(exc))
    if verify and verdict.tag != expect:
        raise InconsistentStructure(
            f"solver input is not a consistent dataset: classified {verdict.tag}, "
            f"expected {expect}")
    return CaseSolution(cd=cd, q_rec=q_rec, r_rec=r_rec, structure=sc, verdict=verdict)


def _partner_side(x, y, u, v, p0, q0):
    """Derive the partner triple of a zero-A dataset.

    Inputs: one side's relation coefficients (x, y) (sigma/tau-like), that
    same side's recurrence (u, v) (b/c-like; the index-0 entry of v is
    never read), and the other side's relation initials (p0, q0).

    Outputs (r, s, p, q): the partner recurrence (beta/gamma-like, with
    s[0] = 1 as a pure normalization the identities never consume) and the
    partner relation coefficients (d/e-like).  Recursion order per level
    n >= 1: r_n, s_{n+1}, q_{n+1}, p_{n+1}.
    """
    count = len(x)
    r = [-p0]
    s = [ONE, r[0] * p0 - q0]
    if s[1] == 0:
        raise DivisionByZeroCoefficient("partner pivot s_1 vanished", index=1)
    p = [p0, -q0 * r[0] / s[1]]
    if y[0] == 0:
        raise DivisionByZeroCoefficient("zero pivot y_0", index=0)
    q = [q0]
    if count >= 2 and len(y) >= 2 and len(v) >= 2:
        q.append(_ratio(q0 * y[1] * v[1], s[1] * y[0], 1, "s_1*y_0"))
    for n in range(1, count - 1):
        if n >= len(q):
            break
        r.append(p[n - 1] - p[n])
        tail = _ratio(q[n - 1] * s[n - 1], q[n - 2], n + 1, "q_{n-2}") if n >= 2 else ZERO
        s.append(r[n] * p[n] - q[n] + q[n - 1] + tail)
        if s[n + 1] == 0:
            raise DivisionByZeroCoefficient("partner pivot s vanished", index=n + 1)
        if n + 1 <= count - 2 and n + 1 < len(y) and n + 1 < len(v):
            q.append(_ratio(q[n] * y[n + 1] * v[n + 1], s[n + 1] * y[n], n + 1, "s*y"))
        ptail = _ratio(q[n] * s[n], q[n - 1], n + 1, "q_{n-1}")
        p.append(_ratio(ptail * p[n] - q[n] * r[n], s[n + 1], n + 1, "s_{n+1}"))
    if len(p) >= 2 and len(r) < len(p):
        r.append(p[-2] - p[-1])
    return r, s, p, q


def solve_case1(sigma, tau, d0, e0, verify=True) -> CaseSolution:
    """Given (sigma, tau), derive the remaining three pairs.

    b comes from first differences of sigma, c from the Q-side window
    relation, then the partner recursion yields (beta, gamma, d, e) seeded
    at (d0, e0).  The input pair must itself be consistent (its own side
    closure must hold); solutions are re-verified before being returned.
    The index-0 entries of the produced c and gamma are conventional
    normalizations, not determined by the relation.
    """
    sigma = [rat(v) for v in sigma]
    tau = [rat(v) for v in tau]
    d0, e0 = rat(d0), rat(e0)
    count = len(sigma)
    if len(tau) < count - 1:
        raise UnderdeterminedInitials("tau must reach index len(sigma)-2")
    b = [-sigma[0]]
    for n in range(1, count):
        b.append(sigma[n - 1] - sigma[n])
    c = [ONE, b[0] * sigma[0] - tau[0]]
    if count >= 3:
        c.append(b[1] * sigma[1] + tau[0] - tau[1])
    for n in range(3, count):
        tail = _ratio(tau[n - 2] * c[n - 2], tau[n - 3], n, "tau_{n-3}")
        c.append(b[n - 1] * sigma[n - 1] + tau[n - 2] - tau[n - 1] + tail)
    beta, gamma, d, e = _partner_side(sigma, tau, b, c, d0, e0)
    cd = CoherenceData(sigma=sigma, tau=tau[:count - 1], d=d, e=e)
    return _finish(cd, b, c, beta, gamma, CASE_I_1_I, verify)


def solve_case2(q_rec: RecurrencePair, sigma0, d0, e0, verify=True) -> CaseSolution:
    """Given the Q-side recurrence (b, c), derive the remaining pairs.

    sigma follows by first differences from sigma0, tau from the Q-side
    window relation, then the partner recursion with (d0, e0).  For
    arbitrary (b, c, sigma0) the produced dataset satisfies every identity
    except possibly the sigma-side closure; verification rejects such
    input unless verify=False, in which case the verdict records it.
    """
    q = q_rec.to(STD)
    sigma0, d0, e0 = rat(sigma0), rat(d0), rat(e0)
    count = min(len(q.b), len(q.c))
    b, c = list(q.b)[:count], list(q.c)[:count]
    sigma = [sigma0]
    for n in range(1, count):
        sigma.append(sigma[n - 1] - b[n])
    tau = [b[0] * sigma[0] - c[1]]
    if count >= 3:
        tau.append(tau[0] + b[1] * sigma[1] - c[2])
    for n in range(3, count):
        tail = _ratio(tau[n - 2] * c[n - 2], tau[n - 3], n, "tau_{n-3}")
        tau.append(tau[n - 2] + b[n - 1] * sigma[n - 1] - c[n] + tail)
    beta, gamma, d, e = _partner_side(sigma, tau, b, c, d0, e0)
    cd = CoherenceData(sigma=sigma, tau=tau, d=d, e=e)
    return _finish(cd, b, c, beta, gamma, CASE_I_1_I, verify)


def solve_case3(r_rec: RecurrencePair, d0, e0, sigma0, tau0, verify=True) -> CaseSolution:
    """Given the R-side recurrence (beta, gamma), derive the remaining pairs.

    d follows by first differences from d0 and e from the R-side window
    relation seeded at e0; the mirrored partner recursion then produces
    (b, c, sigma, tau).  The source text lists only (d0, e0) as initials,
    but the mirrored chain cannot start without (sigma0, tau0), so they
    are part of the signature.
    """
    r = r_rec.to(STD)
    d0, e0, sigma0, tau0 = rat(d0), rat(e0), rat(sigma0), rat(tau0)
    count = min(len(r.b), len(r.c))
    beta, gamma = list(r.b)[:count], list(r.c)[:count]
    d = [d0]
    for n in range(1, count):
        d.append(d[n - 1] - beta[n])
    e = [e0]
    if count >= 3:
        e.append(e[0] - gamma[2] + beta[1] * d[1])
    for n in range(3, count):
        tail = _ratio(e[n - 2] * gamma[n - 2], e[n - 3], n, "e_{n-3}")
        e.append(e[n - 2] - gamma[n] + beta[n - 1] * d[n - 1] + tail)
    b, c, sigma, tau = _partner_side(d, e, beta, gamma, sigma0, tau0)
    cd = CoherenceData(sigma=sigma, tau=tau, d=d, e=e)
    return _finish(cd, b, c, beta, gamma, CASE_I_1_I, verify)


def solve_case4(d, e, sigma0, tau0, verify=True) -> CaseSolution:
    """Given (d, e), derive the remaining three pairs.

    beta comes from first differences of d, gamma from the R-side window
    relation, then the mirrored partner recursion with (sigma0, tau0).
    """
    d = [rat(v) for v in d]
    e = [rat(v) for v in e]
    sigma0, tau0 = rat(sigma0), rat(tau0)
    count = len(d)
    if len(e) < count - 1:
        raise UnderdeterminedInitials("e must reach index len(d)-2")
    beta = [-d[0]]
    for n in range(1, count):
        beta.append(d[n - 1] - d[n])
    gamma = [ONE, beta[0] * d[0] - e[0]]
    if count >= 3:
        gamma.append(beta[1] * d[1] - e[1] + e[0])
    for n in range(3, count):
        tail = _ratio(e[n - 2] * gamma[n - 2], e[n - 3], n, "e_{n-3}")
        gamma.append(beta[n - 1] * d[n - 1] - e[n - 1] + e[n - 2] + tail)
    b, c, sigma, tau = _partner_side(d, e, beta, gamma, sigma0, tau0)
    cd = CoherenceData(sigma=sigma, tau=tau, d=d[:count], e=e[:count - 1])
    return _finish(cd, b, c, beta, gamma, CASE_I_1_I, verify)


CASE_SOLVERS = {1: solve_case1, 2: solve_case2, 3: solve_case3, 4: solve_case4}


def _require_initials(initials, names):
    missing = [k for k in names if k not in initials]
    if missing:
        raise UnderdeterminedInitials(
            "supplied initials do not close the recursion", missing=missing)
    return [rat(initials[k]) for k in names]


def _norm_rec(given, b_key, c_key):
    if isinstance(given, RecurrencePair):
        pair = given.to(STD)
        return list(pair.b), list(pair.c)
    pair = RecurrencePair(b=tuple(rat(v) for v in given[b_key]),
                          c=tuple(rat(v) for v in given[c_key]),
                          convention=given.get("convention", STD)).to(STD)
    return list(pair.b), list(pair.c)


def solve_case_ii(given_r, given_q, initials=None, verify=True) -> CaseSolution:
    """Two-pair solver for the nonzero-A branch.

    given_r: a RecurrencePair (or {"beta","gamma"[,"convention"]}) or a
    {"d","e"} mapping; given_q: a RecurrencePair (or {"b","c"}) or a
    {"sigma","tau"} mapping.  Required initials depend on the combination:

        (d,e)+(b,c)              sigma0, tau0
        (d,e)+(sigma,tau)        b0
        (beta,gamma)+(b,c)       d0, e0
        (beta,gamma)+(sigma,tau) d0, e0

    Outputs are verified to classify as the nonzero-A three-term branch;
    data that also satisfies the zero-A relations is rejected because the
    branch requires A_n != 0 for all n.
    """
    initials = initials or {}
    d = e = beta = gamma = b = c = sigma = tau = None
    if isinstance(given_r, RecurrencePair) or "beta" in given_r:
        beta, gamma = _norm_rec(given_r, "beta", "gamma")
    elif "d" in given_r and "e" in given_r:
        d = [rat(v) for v in given_r["d"]]
        e = [rat(v) for v in given_r["e"]]
    else:
        raise UnderdeterminedInitials("given_r must hold {d,e} or {beta,gamma}")
    if isinstance(given_q, RecurrencePair) or "b" in given_q:
        b, c = _norm_rec(given_q, "b", "c")
    elif "sigma" in given_q and "tau" in given_q:
        sigma = [rat(v) for v in given_q["sigma"]]
        tau = [rat(v) for v in given_q["tau"]]
    else:
        raise UnderdeterminedInitials("given_q must hold {b,c} or {sigma,tau}")

    if d is not None and b is not None:
        sigma0, tau0 = _require_initials(initials, ["sigma0", "tau0"])
        sigma, tau, A = _combo_sigma_tau_from_bc(b, c, sigma0, tau0)
        beta, gamma = _combo_partner_rec(d, e, A)
    elif beta is not None and sigma is not None:
        d0, e0 = _require_initials(initials, ["d0", "e0"])
        d, e, A = _combo_d_e_from_betagamma(beta, gamma, d0, e0)
        b, c = _combo_partner_rec(sigma, tau, A)
    elif d is not None and sigma is not None:
        (b0,) = _require_initials(initials, ["b0"])
        b, c, beta, gamma = _combo_mixed_de_st(d, e, sigma, tau, b0)
    else:
        d0, e0 = _require_initials(initials, ["d0", "e0"])
        d, e, sigma, tau = _combo_mixed_rec_rec(beta, gamma, b, c, d0, e0)

    count = min(len(b), len(beta), len(sigma), len(d), len(c), len(gamma))
    cd = CoherenceData(sigma=sigma[:count], tau=tau[:count - 1],
                       d=d[:count], e=e[:count - 1])
    return _finish(cd, b[:count], c[:count], beta[:count], gamma[:count],
                   CASE_II_1_I, verify)


def _combo_sigma_tau_from_bc(b, c, sigma0, tau0):
    """(sigma, tau) and the leading family A from a given (b, c)."""
    count = min(len(b), len(c))
    if sigma0 == 0 or tau0 == 0:
        raise DivisionByZeroCoefficient("initials sigma0, tau0 must be nonzero", index=0)
    sigma = [sigma0, (b[0] * sigma0 - c[1] - tau0) / sigma0 + sigma0 - b[1]]
    tau = [tau0]
    A = [b[0] + sigma0, b[1] + sigma[1] - sigma[0]]
    for n in range(2, count):
        t_tail = (_ratio(tau[n - 2] * c[n - 2], tau[n - 3], n, "tau_{n-3}")
                  if n >= 3 else ZERO)
        head = sigma[n - 1] * c[n - 1] + tau[n - 2] * b[n - 2] \
            - (t_tail * sigma[n - 2] if n >= 3 else ZERO)
        sigma.append(_ratio(head, tau[n - 2], n, "tau_{n-2}") - b[n] + sigma[n - 1])
        A.append(b[n] + sigma[n] - sigma[n - 1])
        tau.append(tau[n - 2] - c[n] + b[n - 1] * sigma[n - 1] + t_tail
                   - sigma[n - 1] * A[n])
    return sigma, tau, A


def _combo_d_e_from_betagamma(beta, gamma, d0, e0):
    """Mirror: (d, e) and the leading family A from a given (beta, gamma)."""
    count = min(len(beta), len(gamma))
    if d0 == 0 or e0 == 0:
        raise DivisionByZeroCoefficient("initials d0, e0 must be nonzero", index=0)
    d = [d0, (beta[0] * d0 - gamma[1] - e0) / d0 + d0 - beta[1]]
    e = [e0]
    A = [beta[0] + d0, beta[1] + d[1] - d[0]]
    for n in range(2, count):
        e_tail = (_ratio(e[n - 2] * gamma[n - 2], e[n - 3], n, "e_{n-3}")
                  if n >= 3 else ZERO)
        head = d[n - 1] * gamma[n - 1] + e[n - 2] * beta[n - 2] \
            - (e_tail * d[n - 2] if n >= 3 else ZERO)
        d.append(_ratio(head, e[n - 2], n, "e_{n-2}") - beta[n] + d[n - 1])
        A.append(beta[n] + d[n] - d[n - 1])
        e.append(e[n - 2] - gamma[n] + beta[n - 1] * d[n - 1] + e_tail
                 - d[n - 1] * A[n])
    return d, e, A


def _combo_partner_rec(x, y, A):
    """The partner recurrence (r, s) from relation coefficients and A.

    For x, y = (d, e): r, s = (beta, gamma); for x, y = (sigma, tau):
    r, s = (b, c).  s[0] is a conventional normalization.
    """
    count = min(len(x), len(A))
    r = [A[0] - x[0]]
    s = [ONE]
    for n in range(1, count):
        r.append(A[n] - x[n] + x[n - 1])
        tail = (_ratio(y[n - 2] * s[n - 2], y[n - 3], n, "y_{n-3}")
                if n >= 3 else ZERO)
        ym1 = y[n - 1] if n - 1 < len(y) else ZERO
        ym2 = y[n - 2] if n >= 2 else ZERO
        s.append(r[n - 1] * x[n - 1] - ym1 + ym2 + tail - x[n - 1] * A[n])
    return r, s


def _combo_mixed_de_st(d, e, sigma, tau, b0):
    """(b, c, beta, gamma) from (d, e) + (sigma, tau), seeded at b0."""
    count = min(len(d), len(sigma))
    beta = [b0 + sigma[0] - d[0]]
    b = [b0]
    gamma = [ONE]
    c = [ONE]
    for n in range(1, count - 1):
        if n >= len(tau) or n >= len(e):
            break
        e_tail = (_ratio(e[n - 2] * gamma[n - 2], e[n - 3], n, "e_{n-3}")
                  if n >= 3 else ZERO)
        t_tail = (_ratio(tau[n - 2] * c[n - 2], tau[n - 3], n, "tau_{n-3}")
                  if n >= 3 else ZERO)
        em1 = e[n - 1] if n - 1 < len(e) else ZERO
        em2 = e[n - 2] if n >= 2 else ZERO
        tm1 = tau[n - 1] if n - 1 < len(tau) else ZERO
        tm2 = tau[n - 2] if n >= 2 else ZERO
        # gamma_n = g0 + g1*A_n and c_n = k0 + k1*A_n (R/Q-side K relations);
        # the cross relation G pins c_n = gfac*gamma_n; A_n = b_n + const_a.
        g0 = beta[n - 1] * d[n - 1] - em1 + em2 + e_tail
        g1 = -d[n - 1]
        k0 = b[n - 1] * sigma[n - 1] - tm1 + tm2 + t_tail
        k1 = -sigma[n - 1]
        const_a = sigma[n] - sigma[n - 1]
        if e[n - 1] == 0 or tau[n] == 0:
            raise DivisionByZeroCoefficient("zero pivot e_{n-1} or tau_n", index=n)
        gfac = e[n] * tau[n - 1] / (e[n - 1] * tau[n])
        lin = gfac * g1 - k1
        if lin == 0:
            raise DivisionByZeroCoefficient("mixed-combo level solve is singular", index=n)
        bn = (k0 + k1 * const_a - gfac * (g0 + g1 * const_a)) / lin
        b.append(bn)
        An = bn + const_a
        beta.append(An - d[n] + d[n - 1])
        gamma.append(g0 + g1 * An)
        c.append(k0 + k1 * An)
    return b, c, beta, gamma


def _combo_mixed_rec_rec(beta, gamma, b, c, d0, e0):
    """(d, e, sigma, tau) from (beta, gamma) + (b, c), seeded at (d0, e0)."""
    count = min(len(beta), len(b), len(gamma), len(c))
    if d0 == 0:
        raise DivisionByZeroCoefficient("initial d0 must be nonzero", index=0)
    sigma0 = beta[0] + d0 - b[0]
    d, e, sigma = [d0], [e0], [sigma0]
    A1 = (beta[0] * d0 - gamma[1] - e0) / d0
    d.append(A1 - beta[1] + d0)
    sigma.append(A1 - b[1] + sigma0)
    tau = [b[0] * sigma0 - c[1] - sigma0 * A1]
    for n in range(2, count - 1):
        e_tail = (_ratio(e[n - 2] * gamma[n - 2], e[n - 3], n, "e_{n-3}")
                  if n >= 3 else ZERO)
        t_tail = (_ratio(tau[n - 2] * c[n - 2], tau[n - 3], n, "tau_{n-3}")
                  if n >= 3 else ZERO)
        # e_{n-1} and tau_{n-1} are affine in A_n; the cross relation G at
        # n+1 (tau_{n-1} c_{n-1} e_{n-2} = e_{n-1} gamma_{n-1} tau_{n-2})
        # then pins A_n.
        e0n = e[n - 2] - gamma[n] + beta[n - 1] * d[n - 1] + e_tail
        e1n = -d[n - 1]
        t0n = tau[n - 2] - c[n] + b[n - 1] * sigma[n - 1] + t_tail
        t1n = -sigma[n - 1]
        lhs1 = c[n - 1] * e[n - 2]
        rhs1 = gamma[n - 1] * tau[n - 2]
        lin = t1n * lhs1 - e1n * rhs1
        if lin == 0:
            raise DivisionByZeroCoefficient("mixed-combo level solve is singular", index=n)
        An = (e0n * rhs1 - t0n * lhs1) / lin
        e.append(e0n + e1n * An)
        tau.append(t0n + t1n * An)
        d.append(An - beta[n] + d[n - 1])
        sigma.append(An - b[n] + sigma[n - 1])
    return d, e, sigma, tau


def polys_from_recurrence(pair: RecurrencePair, depth: int):
    """Monic polynomials built from a three-term recurrence.

    In the std convention P_{n+1} = (x - b_n) P_n - c_n P_{n-1}; any pair
    with nonzero c_n (n >= 1) defines a monic orthogonal sequence.
    """
    p = pair.to(STD)
    polys = [Poly([ONE])]
    x = Poly([ZERO, ONE])
    for n in range(depth):
        nxt = (x - Poly([p.b[n]])) * polys[n]
        if n >= 1:
            nxt = nxt - polys[n - 1].scale(p.c[n])
        polys.append(nxt)
    return polys


def make_nonzero_a_dataset_for(q_rec: RecurrencePair, sigma0, tau0, d0, e0) -> CaseSolution:
    """A consistent nonzero-A dataset on top of a given Q-side recurrence.

    The recurrence pair (b, c) is free data of the identity system, so any
    real recurrence extends to a consistent dataset with four free scalars
    (sigma0, tau0, d0, e0).  Because the produced dataset shares the actual
    recurrence of Q, the partner R rebuilt from the relation against that
    Q satisfies its own three-term recurrence, i.e. the pair is realizable.
    """
    q = q_rec.to(STD)
    b, c = list(q.b), list(q.c)
    sigma0, tau0, d0, e0 = rat(sigma0), rat(tau0), rat(d0), rat(e0)
    sigma, tau, A = _combo_sigma_tau_from_bc(b, c, sigma0, tau0)
    count = len(A)
    beta = [A[0] - d0]
    gamma = [ONE, beta[0] * d0 - e0 - d0 * A[1]]
    if gamma[1] == 0:
        raise DivisionByZeroCoefficient("induced gamma_1 vanished; pick other seeds", index=1)
    d = [d0, e0 * (A[2] - beta[0]) / gamma[1]]
    e = [e0, _ratio(tau[1] * c[1] * e0, gamma[1] * tau[0], 1, "gamma_1*tau_0")]
    beta.append(A[1] - d[1] + d[0])
    for n in range(2, count):
        g_tail = (_ratio(e[n - 2] * gamma[n - 2], e[n - 3], n, "e_{n-3}")
                  if n >= 3 else ZERO)
        gamma.append(beta[n - 1] * d[n - 1] - e[n - 1] + e[n - 2] + g_tail
                     - d[n - 1] * A[n])
        if gamma[n] == 0:
            raise DivisionByZeroCoefficient("induced gamma vanished", index=n)
        if n + 1 < count:
            # X relation at n+1 pins d_n, then the A family pins beta_n
            e_tail = _ratio(e[n - 1] * gamma[n - 1], e[n - 2], n + 1, "e_{n-2}")
            d.append((e_tail * d[n - 1] + e[n - 1] * A[n + 1]
                      - e[n - 1] * beta[n - 1]) / gamma[n])
            beta.append(A[n] - d[n] + d[n - 1])
            if n < len(tau) and n < len(c):
                e.append(_ratio(tau[n] * c[n] * e[n - 1], gamma[n] * tau[n - 1],
                                n, "gamma*tau"))
    count = min(len(b), len(beta), len(sigma), len(d), len(c), len(gamma))
    cd = CoherenceData(sigma=sigma[:count], tau=tau[:count - 1],
                       d=d[:count], e=e[:count - 1])
    return _finish(cd, b[:count], c[:count], beta[:count], gamma[:count],
                   CASE_II_1_I, True)


# -- consistent-dataset generators -------------------------------------------

def make_zero_a_dataset(sigma0, tau, d0, e0) -> CaseSolution:
    """A fully consistent zero-A dataset from free seeds.

    Free data: sigma0, the whole tau sequence (nonzero entries), and the
    partner initials (d0, e0).  The Q side closes under its own window
    relations, the partner side follows; the result classifies as the
    three-term zero-A branch by construction.
    """
    tau = [rat(v) for v in tau]
    sigma0, d0, e0 = rat(sigma0), rat(d0), rat(e0)
    count = len(tau) + 1
    sigma = [sigma0]
    b = [-sigma0]
    c = [ONE, b[0] * sigma0 - tau[0]]
    if c[1] == 0:
        raise DivisionByZeroCoefficient("pivot c_1 vanished", index=1)
    sigma.append(-tau[0] * b[0] / c[1])
    for n in range(1, count - 1):
        b.append(sigma[n - 1] - sigma[n])
        tail = (_ratio(tau[n - 1] * c[n - 1], tau[n - 2], n + 1, "tau_{n-2}")
                if n >= 2 else ZERO)
        if n + 1 < count:
            c.append(b[n] * sigma[n] - tau[n] + tau[n - 1] + tail)
            if c[n + 1] == 0:
                raise DivisionByZeroCoefficient("pivot c vanished", index=n + 1)
            ptail = _ratio(tau[n] * c[n], tau[n - 1], n + 1, "tau_{n-1}")
            sigma.append((ptail * sigma[n] - tau[n] * b[n]) / c[n + 1])
    b.append(sigma[count - 2] - sigma[count - 1])
    beta, gamma, d, e = _partner_side(sigma, tau, b, c, d0, e0)
    cd = CoherenceData(sigma=sigma, tau=tau[:count - 1], d=d, e=e)
    return _finish(cd, b, c, beta, gamma, CASE_I_1_I, True)


def make_nonzero_a_dataset(d, e, beta0, beta1, sigma0, c1) -> CaseSolution:
    """A fully consistent nonzero-A dataset from free seeds.

    Free data: the sequences (d, e) (nonzero e entries) and the scalars
    beta0, beta1, sigma0, c1.  Group one closes under the R-side K and X
    relations, group two under their Q-side mirrors plus the cross
    relation G.
    """
    d = [rat(v) for v in d]
    e = [rat(v) for v in e]
    beta0, beta1, sigma0, c1 = rat(beta0), rat(beta1), rat(sigma0), rat(c1)
    count = len(d)
    beta = [beta0, beta1]
    A = [beta0 + d[0], beta1 + d[1] - d[0]]
    gamma = [ONE, beta0 * d[0] - e[0] - d[0] * A[1]]
    for n in range(2, count):
        e_tail = (_ratio(e[n - 2] * gamma[n - 2], e[n - 3], n, "e_{n-3}")
                  if n >= 3 else ZERO)
        head = d[n - 1] * gamma[n - 1] + e[n - 2] * beta[n - 2] \
            - (e_tail * d[n - 2] if n >= 3 else ZERO)
        beta.append(_ratio(head, e[n - 2], n, "e_{n-2}") - d[n] + d[n - 1])
        A.append(beta[n] + d[n] - d[n - 1])
        em1 = e[n - 1] if n - 1 < len(e) else ZERO
        gamma.append(beta[n - 1] * d[n - 1] - em1 + e[n - 2] + e_tail
                     - d[n - 1] * A[n])
    if c1 == 0:
        raise DivisionByZeroCoefficient("seed c1 must be nonzero", index=1)
    b = [A[0] - sigma0]
    sigma = [sigma0]
    tau = [b[0] * sigma0 - c1 - sigma0 * A[1]]
    if tau[0] == 0:
        raise DivisionByZeroCoefficient("induced tau0 vanished; pick other seeds", index=0)
    c = [ONE, c1]
    if count >= 3:
        sigma.append(tau[0] * (A[2] - b[0]) / c1)
        b.append(A[1] - sigma[1] + sigma[0])
    for n in range(2, count - 1):
        if n - 1 >= len(e):
            break
        tau.append(_ratio(e[n - 1] * gamma[n - 1] * tau[n - 2],
                          c[n - 1] * e[n - 2], n - 1, "c*e"))
        t_tail = (_ratio(tau[n - 2] * c[n - 2], tau[n - 3], n, "tau_{n-3}")
                  if n >= 3 else ZERO)
        c.append(b[n - 1] * sigma[n - 1] - tau[n - 1] + tau[n - 2] + t_tail
                 - sigma[n - 1] * A[n])
        if c[n] == 0:
            raise DivisionByZeroCoefficient("pivot c vanished", index=n)
        if n + 1 >= len(A):
            break
        ptail = _ratio(tau[n - 1] * c[n - 1], tau[n - 2], n, "tau_{n-2}")
        sigma.append((ptail * sigma[n - 1] - tau[n - 1] * b[n - 1]
                      + tau[n - 1] * A[n + 1]) / c[n])
        b.append(A[n] - sigma[n] + sigma[n - 1])
    count = min(len(b), len(beta), len(sigma), len(d), len(c), len(gamma))
    cd = CoherenceData(sigma=sigma[:count], tau=tau[:count - 1],
                       d=d[:count], e=e[:count - 1])
    return _finish(cd, b[:count], c[:count], beta[:count], gamma[:count],
                   CASE_II_1_I, True)


# -- degeneracy ---------------------------------------------------------------

@dataclass
class DegeneracyReport:
    hypothesis: str
    applies: bool
    r_equals_q: bool
    coefficients_collapse: bool
    moment_recursions_hold: bool


def degenerate_check(cd: CoherenceData, u, u1, depth: int) -> DegeneracyReport:
    """Certify the relation collapse R = Q forced by matching initials.

    u is the functional of the Q side, u1 of the R side.  Hypotheses, in
    checking order: the two-term sub-case (e = tau = 0 with sigma0 = d0),
    the symmetric sub-case (sigma = d = 0 with tau0 = e0), and matching
    initials (sigma0 = d0 and tau0 = e0).  Under any of them the moment
    recursions obtained by pairing the relation with u and u1 force
    <u, R_n> = <u1, Q_n> = 0 for n >= 1, hence R = Q and coefficientwise
    collapse; this check evaluates all of that on actual data.
    """
    from .mops import generate

    two_term = all(v == 0 for v in cd.e) and all(v == 0 for v in cd.tau)
    symmetric = all(v == 0 for v in cd.sigma) and all(v == 0 for v in cd.d)
    if two_term and cd.sigma and cd.d and cd.sigma[0] == cd.d[0]:
        hypothesis, applies = "two-term", True
    elif symmetric and cd.tau and cd.e and cd.tau[0] == cd.e[0]:
        hypothesis, applies = "symmetric", True
    elif (cd.sigma and cd.d and cd.tau and cd.e
          and cd.sigma[0] == cd.d[0] and cd.tau[0] == cd.e[0]):
        hypothesis, applies = "matching-initials", True
    else:
        return DegeneracyReport("none", False, False, False, False)

    qseq = list(generate(u, depth).polys)
    rseq = list(generate(u1, depth).polys)
    r_equals_q = all(qseq[n] == rseq[n] for n in range(depth + 1))
    collapse = (list(cd.sigma) == list(cd.d)) and (list(cd.tau) == list(cd.e))

    ok = True
    uR = [u.apply(p) for p in rseq]
    u1Q = [u1.apply(p) for p in qseq]
    if depth >= 1:
        ok &= uR[1] == (cd.d[0] - cd.sigma[0]) * uR[0]
        ok &= u1Q[1] == (cd.sigma[0] - cd.d[0]) * u1Q[0]
    if depth >= 2 and len(cd.d) > 1 and cd.e and cd.tau:
        ok &= uR[2] == cd.d[1] * uR[1] + (cd.e[0] - cd.tau[0]) * uR[0]
        ok &= u1Q[2] == cd.sigma[1] * u1Q[1] + (cd.tau[0] - cd.e[0]) * u1Q[0]
    for n in range(3, depth + 1):
        if n - 1 < len(cd.d) and n - 2 < len(cd.e):
            ok &= uR[n] == cd.d[n - 1] * uR[n - 1] + cd.e[n - 2] * uR[n - 2]
            ok &= u1Q[n] == cd.sigma[n - 1] * u1Q[n - 1] + cd.tau[n - 2] * u1Q[n - 2]
    return DegeneracyReport(hypothesis, applies, r_equals_q, collapse, ok)
