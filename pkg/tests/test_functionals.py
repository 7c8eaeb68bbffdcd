import math
from fractions import Fraction as F

import pytest

import coherentpairs as cp
from coherentpairs import (InvalidParameter, MomentFunctional,
                           NotStronglyClassical, Poly, pearson_check,
                           strongly_classical_companion)


class TestClassicalMoments:
    def test_hermite_odd_and_a4(self):
        u = MomentFunctional.classical("hermite", a0=1)
        assert u.moment(1) == 0
        assert u.moment(3) == 0
        assert u.moment(4) == F(3, 4)

    def test_hermite_closed_form(self):
        u = MomentFunctional.classical("hermite", a0=1)
        for k in range(8):
            expected = F(math.factorial(2 * k), 4**k * math.factorial(k))
            assert u.moment(2 * k) == expected

    def test_laguerre_gamma_oracle(self):
        u = MomentFunctional.classical("laguerre", alpha=2, a0=2)
        for n in range(9):
            assert u.moment(n) == math.factorial(n + 2)
        assert u.moment(1) == 6

    def test_jacobi_against_integral(self):
        # weight (1-x) on [-1, 1]: a_n = int x^n (1-x) dx
        u = MomentFunctional.classical("jacobi", alpha=1, beta=0, a0=2)
        for n in range(10):
            even = F(2, n + 1) if n % 2 == 0 else F(0)
            odd = F(-2, n + 2) if n % 2 == 1 else F(0)
            assert u.moment(n) == even + odd

    def test_bessel_recurrence(self):
        u = MomentFunctional.classical("bessel", alpha=1, a0=1)
        vals = [F(1)]
        for n in range(8):
            vals.append(F(-2) * vals[n] / (n + 3))
        assert [u.moment(n) for n in range(9)] == vals

    def test_admissibility(self):
        with pytest.raises(InvalidParameter):
            MomentFunctional.classical("laguerre", alpha=-1)
        with pytest.raises(InvalidParameter):
            MomentFunctional.classical("bessel", alpha=-2)
        with pytest.raises(InvalidParameter):
            MomentFunctional.classical("jacobi", alpha=F(1, 2), beta=F(-5, 2))
        with pytest.raises(InvalidParameter):
            MomentFunctional.classical("nosuch")

    def test_explicit_moments_bounds(self):
        u = MomentFunctional.from_moments([1, 0, 0])
        assert u.moment(2) == 0
        with pytest.raises(InvalidParameter):
            u.moment(3)


class TestCalculus:
    def test_derive_moments(self):
        u = MomentFunctional.classical("hermite", a0=1)
        du = u.derive()
        assert du.moment(0) == 0
        for n in range(1, 8):
            assert du.moment(n) == -n * u.moment(n - 1)

    def test_mul_poly_identity(self):
        u = MomentFunctional.classical("laguerre", alpha=F(1, 2), a0=1)
        same = u.mul_poly(Poly([1]))
        assert [same.moment(n) for n in range(8)] == [u.moment(n) for n in range(8)]

    def test_mul_poly_square_matches_second_moment(self):
        u = MomentFunctional.classical("hermite", a0=1)
        assert u.mul_poly(Poly([0, 0, 1])).moment(0) == F(1, 2)

    def test_div_linear_definition(self):
        u = MomentFunctional.from_moments([1, 0, 0, 0, 0])
        v = u.div_linear(2)
        assert v.moment(0) == 0
        assert v.moment(1) == 1
        assert v.moment(2) == 2
        assert v.moment(3) == 4

    def test_div_then_mul_round_trip(self):
        u = MomentFunctional.classical("jacobi", alpha=2, beta=1, a0=F(4, 3))
        c = F(3, 7)
        back = u.div_linear(c).mul_poly(Poly([-c, 1]))
        for n in range(10):
            assert back.moment(n) == u.moment(n)

    def test_derive_mul_consistency(self):
        # <(phi u)', p> = -<u, phi p'> for assorted p
        u = MomentFunctional.classical("laguerre", alpha=1, a0=1)
        phi = Poly([0, 1])
        lhs = u.mul_poly(phi).derive()
        for p in (Poly([1, 2, 3]), Poly([0, 0, 0, 1]), Poly([F(1, 3), 0, 0, 0, F(2, 5)])):
            assert lhs.apply(p) == -u.apply(phi * p.derivative())

    def test_add_delta_order0(self):
        z = MomentFunctional.zero(depth=6)
        d = z.add_delta(1, 0, 1)
        assert all(d.moment(n) == 1 for n in range(7))

    def test_add_delta_order1_plain_derivative(self):
        z = MomentFunctional.zero(depth=6)
        d = z.add_delta(1, 1, 1)
        assert d.apply(Poly([0, 1])) == 1          # p = x: p'(1) = 1
        assert d.moment(0) == 0
        assert d.moment(3) == 3                    # (x^3)'(1) = 3

    def test_add_delta_order_validation(self):
        with pytest.raises(InvalidParameter):
            MomentFunctional.zero().add_delta(1, 2, 1)


class TestPearson:
    def test_catalog_families(self):
        cases = [
            MomentFunctional.classical("hermite", a0=1),
            MomentFunctional.classical("laguerre", alpha=F(1, 2), a0=1),
            MomentFunctional.classical("bessel", alpha=1, a0=1),
            MomentFunctional.classical("jacobi", alpha=1, beta=0, a0=2),
            MomentFunctional.classical("jacobi", alpha=2, beta=1, a0=1),
        ]
        for u in cases:
            fam = u.family
            assert all(r == 0 for r in pearson_check(u, fam.phi, fam.psi, 20))

    def test_jacobi10_pair_written_out(self):
        u = MomentFunctional.classical("jacobi", alpha=1, beta=0, a0=1)
        phi = Poly([1, 0, -1])
        psi = Poly([-1, -3])
        assert all(r == 0 for r in pearson_check(u, phi, psi, 10))

    def test_wrong_pair_detected(self):
        u = MomentFunctional.classical("hermite", a0=1)
        res = pearson_check(u, Poly([1]), Poly([0, -3]), 2)
        assert res[1] != 0

    def test_zero_pair_rejected(self):
        u = MomentFunctional.classical("hermite", a0=1)
        with pytest.raises(InvalidParameter):
            pearson_check(u, Poly(), Poly(), 4)


class TestStronglyClassical:
    def test_jacobi_shift(self):
        u = MomentFunctional.classical("jacobi", alpha=2, beta=1, a0=F(4, 3))
        w = strongly_classical_companion(u)
        fam = w.family
        assert fam.kind == "jacobi" and fam.alpha == 1 and fam.beta == 0
        phi = u.family.phi
        for n in range(12):
            assert w.mul_poly(phi).moment(n) == u.moment(n)
        shifted_psi = u.family.psi - phi.derivative()
        assert all(r == 0 for r in pearson_check(w, phi, shifted_psi, 12))

    def test_hermite_self(self):
        u = MomentFunctional.classical("hermite", a0=F(2, 3))
        w = strongly_classical_companion(u)
        assert w.family.kind == "hermite"
        assert [w.moment(n) for n in range(6)] == [u.moment(n) for n in range(6)]

    def test_laguerre_excluded(self):
        u = MomentFunctional.classical("laguerre", alpha=0, a0=1)
        with pytest.raises(NotStronglyClassical):
            strongly_classical_companion(u)

    def test_modified_rejected(self):
        u = MomentFunctional.classical("hermite", a0=1).derive()
        with pytest.raises(NotStronglyClassical):
            strongly_classical_companion(u)


def test_descriptor_round_trip():
    u = (MomentFunctional.classical("jacobi", alpha=1, beta=0, a0=2)
         .mul_poly(Poly([1, 0, -1]))
         .div_linear(F(1, 2))
         .add_delta(1, 1, F(-3, 4)))
    desc = u.descriptor()
    assert desc["family"] == "jacobi"
    assert [m["op"] for m in desc["mods"]] == ["mul_poly", "div_linear", "add_delta"]
