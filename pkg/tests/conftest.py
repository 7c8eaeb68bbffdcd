from fractions import Fraction as F

import pytest

import coherentpairs as cp


@pytest.fixture(scope="session")
def jacobi10():
    """The weight-(1-x) jacobi functional with total mass 2."""
    return cp.MomentFunctional.classical("jacobi", alpha=1, beta=0, a0=2)


@pytest.fixture(scope="session")
def jacobi21(jacobi10):
    """The functional of jacobi10's derivative sequence: phi * u0.

    Built in its native classical form (same moments as the mul_poly
    construction, checked in test_mops) so the companion machinery can
    read its family data.
    """
    return cp.MomentFunctional.classical("jacobi", alpha=2, beta=1, a0=F(4, 3))


@pytest.fixture(scope="session")
def jacobi_q(jacobi21):
    """The derivative-side monic sequence and norms, depth 17."""
    return cp.generate(jacobi21, 17)


@pytest.fixture(scope="session")
def companion_pair(jacobi21):
    """A genuine extended three-term coherent pair built from a degree-2
    identity: A v = D u with A = (1-x)^2, D = (1+x)^2."""
    A = cp.Poly([1, -2, 1])
    D = cp.Poly([1, 2, 1])
    v = cp.companion_from_ad(jacobi21, A, D, F(7, 3), F(1, 2))
    return jacobi21, v, A, D
