from fractions import Fraction as F

import pytest

import coherentpairs as cp
from coherentpairs import (MomentFunctional, Poly, ZeroM2,
                           classify_modification, companion_from_ad,
                           delta_decomposition, fit_relation, generate,
                           solve_mk, verify_companion)
from coherentpairs.companion import av_q_pairing
from coherentpairs.coherence import CoherenceData


def _display_iv(cd, m):
    """Hand-coded expansion of <A v, Q_3> in the point-mass constants."""
    s, t, d, e = cd.sigma, cd.tau, cd.d, cd.e
    return (m[3] + (s[2] - d[2]) * m[2]
            + (s[2] * (s[1] - d[1]) + (t[1] - e[1])) * m[1]
            + (s[2] * (s[1] * (s[0] - d[0]) + (t[0] - e[0]))
               + t[1] * (s[0] - d[0])) * m[0])


def _display_v(cd, m):
    """Hand-coded expansion of <A v, Q_4>."""
    s, t, d, e = cd.sigma, cd.tau, cd.d, cd.e
    return (m[4] - d[3] * m[3] + (t[2] - e[2]) * m[2]
            + t[2] * (s[1] - d[1]) * m[1]
            + t[2] * (s[1] * (s[0] - d[0]) + (t[0] - e[0])) * m[0])


class TestPairingExpansion:
    def test_matches_hand_written_displays(self):
        import itertools
        vals = itertools.cycle([F(1, 2), F(-2, 3), F(3, 5), F(1), F(-1, 7), F(4, 3)])
        n = 6
        cd = CoherenceData(sigma=[next(vals) for _ in range(n)],
                           tau=[next(vals) for _ in range(n - 1)],
                           d=[next(vals) for _ in range(n)],
                           e=[next(vals) for _ in range(n - 1)])
        m = {k: next(vals) for k in range(5)}
        assert av_q_pairing(cd, m, 3) == _display_iv(cd, m)
        # the classical display for n = 4 is the recursion reduced modulo
        # the n = 3 display, so the two agree up to sigma_3 times it
        assert av_q_pairing(cd, m, 4) == _display_v(cd, m) \
            + cd.sigma[3] * _display_iv(cd, m)
        assert av_q_pairing(cd, m, 0) == m[0]
        assert av_q_pairing(cd, m, 1) == m[1] + (cd.sigma[0] - cd.d[0]) * m[0]


class TestSolveMk:
    def test_on_companion_pair(self, companion_pair):
        u, v, A, D = companion_pair
        qm = generate(u, 12)
        rm = generate(v, 12)
        cd, resid, _ = fit_relation(list(rm.polys), list(qm.polys), 12)
        assert all(r.is_zero for r in resid)
        m0, m1, m2 = solve_mk(cd, A, v, list(rm.polys))
        av = v.mul_poly(A)
        assert m0 == av.apply(rm.polys[0])
        assert m1 == av.apply(rm.polys[1])
        assert m2 == av.apply(rm.polys[2])
        # independent re-evaluation through the actual moments
        assert av.apply(qm.polys[3]) == 0
        assert av.apply(qm.polys[4]) == 0
        assert av.apply(qm.polys[2]) == cd.e[2] * m2 / cd.tau[2]

    def test_solved_values_kill_displays(self, jacobi_q):
        import itertools
        stream = itertools.cycle([F(1, 2), F(2, 3), F(-1, 5), F(3, 7), F(1), F(-2, 9)])
        tau = [next(stream) for _ in range(9)]
        ds = cp.make_zero_a_dataset(next(stream), tau, next(stream), next(stream))
        rseq = cp.reconstruct_partner(list(jacobi_q.polys), ds.cd, 9)
        u1 = cp.from_orthogonality(rseq, scale=1)
        A = Poly([1, -2, 1])
        m0, m1, m2 = solve_mk(ds.cd, A, u1, rseq)
        m = {0: m0, 1: m1, 2: m2}
        assert _display_iv(ds.cd, {**m, 3: F(0)}) == 0
        assert _display_v(ds.cd, {**m, 3: F(0), 4: F(0)}) == 0
        assert av_q_pairing(ds.cd, m, 2) == ds.cd.e[2] * m2 / ds.cd.tau[2]

    def test_degenerate_collapse_forces_zero(self):
        # sigma = d and tau = e componentwise: the homogeneous system
        n = 8
        vals = [F(k + 1, k + 2) for k in range(n)]
        cd = CoherenceData(sigma=list(vals), tau=list(vals[:n - 1]),
                           d=list(vals), e=list(vals[:n - 1]))
        m2 = F(5, 3)
        c0, c1 = F(0), F(0)
        # displays reduce to M_3 + 0*M's = 0 and M_4 - d3 M3 = 0; the solve
        # sees a singular system unless handled; verify by direct expansion
        assert _display_iv(cd, {0: F(1), 1: F(0), 2: F(0), 3: F(0)}) == 0
        assert _display_iv(cd, {0: F(0), 1: F(1), 2: F(0), 3: F(0)}) == 0

    def test_m2_never_vanishes_for_true_mops(self, companion_pair):
        # <v, A R_2> = lc(A) r_2 by orthogonality, so any degree-2 A works
        u, v, A, D = companion_pair
        rm = generate(v, 4)
        for trial in (Poly([0, 0, 1]), Poly([5, -3, F(2, 7)]), A):
            assert v.apply(trial * rm.polys[2]) == trial.coeff(2) * rm.norms[2]

    def test_zero_m2_detected_on_junk_input(self, companion_pair):
        # replacing R_2 by a polynomial that A v annihilates trips the guard
        u, v, A, D = companion_pair
        qm = generate(u, 10)
        rm = generate(v, 10)
        cd, _, _ = fit_relation(list(rm.polys), list(qm.polys), 10)
        av = v.mul_poly(A)
        t0 = av.apply(Poly([1]))
        junk = Poly([-av.apply(Poly([0, 0, 1])) / t0, 0, 1])
        assert av.apply(junk) == 0
        rseq = list(rm.polys)
        rseq[2] = junk
        with pytest.raises(ZeroM2):
            solve_mk(cd, A, v, rseq)


class TestCompanionFromAD:
    def test_identity_modification(self, jacobi21):
        u = jacobi21
        A = Poly([1, 0, 1])
        v = companion_from_ad(u, A, A, u.moment(0), u.moment(1))
        for n in range(12):
            assert v.moment(n) == u.moment(n)

    def test_verify_to_depth_30(self, companion_pair):
        u, v, A, D = companion_pair
        assert all(r == 0 for r in verify_companion(u, v, A, D, 30))

    def test_affine_in_initials(self, jacobi21):
        u = jacobi21
        A = Poly([1, -2, 1])
        D = Poly([1, 2, 1])
        v1 = companion_from_ad(u, A, D, F(1), F(0))
        v2 = companion_from_ad(u, A, D, F(2), F(1, 3))
        # the difference solves A h = 0: point masses at the double root 1
        diff0 = v2.moment(0) - v1.moment(0)
        diff1 = v2.moment(1) - v1.moment(1)
        w = diff1 - diff0
        for n in range(12):
            expected = diff0 + w * n  # M*1^n + W*n*1^(n-1)
            assert v2.moment(n) - v1.moment(n) == expected

    def test_perturbed_delta_residual_pattern(self, companion_pair):
        u, v, A, D = companion_pair
        off_root = F(2)
        v_bad = v.add_delta(off_root, 0, 1)
        residuals = verify_companion(u, v_bad, A, D, 10)
        for k in range(11):
            assert residuals[k] == A(off_root) * off_root**k

    def test_root_delta_invisible(self, companion_pair):
        u, v, A, D = companion_pair
        v_shift = v.add_delta(1, 0, F(7))  # at the double root of A
        assert all(r == 0 for r in verify_companion(u, v_shift, A, D, 12))


class TestDeltaDecomposition:
    def test_double_root_weights(self, companion_pair):
        u, v, A, D = companion_pair
        base, terms = delta_decomposition(v, u, A, D, 25)
        g0 = v.moment(0)
        b0 = v.moment(1) / v.moment(0)
        assert terms[0] == (F(1), 0, g0)
        assert terms[1] == (F(1), 1, -(g0 * (1 - b0)))
        assert base.moment(0) == 0 and base.moment(1) == 0

    def test_proportional_pair_uses_plain_base(self, jacobi21):
        u = jacobi21
        A = Poly([1, 0, -1])
        a0, a1 = u.moment(0), u.moment(1)
        v = companion_from_ad(u, A, A, (a0 - a1) / 2, (a0 + a1) / 2)
        base, terms = delta_decomposition(v, u, A, A, 25)
        g0 = v.moment(0)
        b0 = v.moment(1) / v.moment(0)
        assert terms[0] == (F(1), 0, g0 * (1 - b0) / 2)
        assert terms[1] == (F(-1), 0, -g0 * (1 + b0) / 2)
        assert [base.moment(n) for n in range(6)] == [u.moment(n) for n in range(6)]

    def test_laguerre_side_double_root(self):
        # (1+x)^2 u = x^2 u_L(2): the unknown u decomposes at -1
        uL2 = MomentFunctional.classical("laguerre", alpha=2, a0=2)
        A = Poly([1, 2, 1])
        D = Poly([0, 0, 1])
        m0, m1 = F(5, 7), F(-1, 3)
        uu = companion_from_ad(uL2, A, D, m0, m1)
        assert all(r == 0 for r in verify_companion(uL2, uu, A, D, 30))
        base, terms = delta_decomposition(uu, uL2, A, D, 25)
        c0 = uu.moment(0)
        b0 = uu.moment(1) / uu.moment(0)
        assert terms[0] == (F(-1), 0, c0)
        assert terms[1] == (F(-1), 1, c0 * (1 + b0))

    def test_irrational_roots_skip(self, jacobi21):
        u = jacobi21
        A = Poly([-2, 0, 1])  # x^2 - 2
        v = companion_from_ad(u, A, Poly([1, 2, 1]), F(1), F(0))
        assert all(r == 0 for r in verify_companion(u, v, A, Poly([1, 2, 1]), 20))
        assert delta_decomposition(v, u, A, Poly([1, 2, 1]), 20) is None


class TestClassifyModification:
    def test_degree_table(self):
        D = Poly([1, 2, 1])
        pairs = [
            (MomentFunctional.classical("hermite", a0=1), 2),
            (MomentFunctional.classical("laguerre", alpha=2, a0=1), 3),
            (MomentFunctional.classical("jacobi", alpha=1, beta=0, a0=2), 4),
            (MomentFunctional.classical("bessel", alpha=1, a0=1), 4),
        ]
        for u, expected in pairs:
            report = classify_modification(u.family, D)
            assert report["deg_D_phi"] == expected
            assert report["deg_D"] == 2
