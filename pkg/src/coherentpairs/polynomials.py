"""Dense univariate polynomials over exact rationals.

Coefficients are stored low degree first as a tuple of Fractions; the
leading coefficient of a nonzero polynomial is never zero, and the zero
polynomial has degree -1.  Instances are immutable and hashable, so they
can be shared freely between threads.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import ONE, ZERO, format_rational, rat


def _trim(coeffs):
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    """Immutable dense polynomial with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        object.__setattr__(self, "coeffs", _trim([rat(c) for c in coeffs]))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([rat(c)])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([ZERO] * k + [rat(c)])

    @property
    def degree(self) -> int:
        """Degree with the convention deg(0) = -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, k: int) -> Fraction:
        """Coefficient of x**k (zero beyond the degree)."""
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero or other.is_zero:
            return Poly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    def scale(self, c) -> "Poly":
        """Multiply by a scalar."""
        c = rat(c)
        return Poly([c * a for a in self.coeffs])

    def shift_x(self) -> "Poly":
        """Multiply by x."""
        if self.is_zero:
            return self
        return Poly((ZERO,) + self.coeffs)

    def divmod(self, other: "Poly"):
        """Exact polynomial division: (quotient, remainder) with deg(r) < deg(other)."""
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        quo = [ZERO] * (dq + 1)
        lead = other.leading
        for k in range(dq, -1, -1):
            factor = rem[k + other.degree] / lead
            quo[k] = factor
            if factor != 0:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= factor * b
        return Poly(quo), Poly(rem[: max(other.degree, 0)])

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x) -> Fraction:
        """Exact Horner evaluation."""
        x = rat(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "Poly":
        if self.is_zero:
            raise ZeroDivisionError("the zero polynomial cannot be made monic")
        return self.scale(ONE / self.leading)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c != 0:
                terms.append(f"{format_rational(c)}*x^{i}")
        return "Poly(" + " + ".join(terms) + ")"


P_ZERO = Poly()
P_ONE = Poly([ONE])
P_X = Poly([ZERO, ONE])


def from_strings(items) -> Poly:
    """Build a polynomial from a low-to-high list of rational strings."""
    return Poly([rat(s) for s in items])


def to_strings(p: Poly):
    """Serialize coefficients low-to-high as "num/den" strings."""
    return [format_rational(c) for c in p.coeffs]
