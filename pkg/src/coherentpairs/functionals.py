"""Moment functionals.

A moment functional is described by a base (one of the four classical
families, generated through its first-order moment recurrence, or an
explicit stored moment list) plus a stack of modifications: formal
derivative, polynomial multiplication, division by a linear factor, and
added point masses.  All moments are exact rationals and are memoized per
instance; memoization is observationally pure, so concurrent readers always
see identical values.

Point-mass convention: ``add_delta(c, order=0, w)`` adds ``w * p(c)`` to the
functional's action and ``add_delta(c, order=1, w)`` adds ``w * p'(c)``
(plain derivative evaluation, no distributional sign).  Front-ends that
speak the delta-prime notation of weighted-measure displays map onto this
primitive with the sign absorbed into the stored weight.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidParameter, NotStronglyClassical
from .polynomials import P_ONE, Poly
from .scalars import ONE, ZERO, format_rational, rat

HERMITE = "hermite"
LAGUERRE = "laguerre"
BESSEL = "bessel"
JACOBI = "jacobi"

_FAMILIES = (HERMITE, LAGUERRE, BESSEL, JACOBI)


def _is_nonpositive_integer(q: Fraction) -> bool:
    return q.denominator == 1 and q <= 0


class ClassicalFamily:
    """One of the four classical functionals, given by its Pearson pair.

    The pair (phi, psi) is fixed per family:

      hermite   phi = 1        psi = -2x
      laguerre  phi = x        psi = -x + alpha + 1
      bessel    phi = x^2      psi = (alpha + 2)x + 2
      jacobi    phi = 1 - x^2  psi = beta - alpha - (alpha + beta + 2)x

    Moments follow from <u, psi*x^n + n*phi*x^(n-1)> = 0 seeded at a0.
    """

    __slots__ = ("kind", "alpha", "beta", "a0")

    def __init__(self, kind, alpha=None, beta=None, a0=1):
        if kind not in _FAMILIES:
            raise InvalidParameter(f"unknown classical family {kind!r}")
        self.kind = kind
        self.alpha = rat(alpha) if alpha is not None else None
        self.beta = rat(beta) if beta is not None else None
        self.a0 = rat(a0)
        self._validate()

    def _validate(self):
        a, b = self.alpha, self.beta
        if self.kind == HERMITE:
            if a is not None or b is not None:
                raise InvalidParameter("hermite takes no parameters")
        elif self.kind == LAGUERRE:
            if a is None or b is not None:
                raise InvalidParameter("laguerre takes exactly one parameter alpha")
            if _is_nonpositive_integer(a + 1):
                raise InvalidParameter("laguerre needs alpha not in {-1,-2,...}")
        elif self.kind == BESSEL:
            if a is None or b is not None:
                raise InvalidParameter("bessel takes exactly one parameter alpha")
            if _is_nonpositive_integer(a + 2):
                raise InvalidParameter("bessel needs alpha not in {-2,-3,...}")
        else:
            if a is None or b is None:
                raise InvalidParameter("jacobi takes parameters alpha and beta")
            for q in (a, b, a + b + 1):
                if _is_nonpositive_integer(q + 1):
                    raise InvalidParameter(
                        "jacobi needs alpha, beta, alpha+beta+1 not in {-1,-2,...}")

    @property
    def phi(self) -> Poly:
        if self.kind == HERMITE:
            return Poly([1])
        if self.kind == LAGUERRE:
            return Poly([0, 1])
        if self.kind == BESSEL:
            return Poly([0, 0, 1])
        return Poly([1, 0, -1])

    @property
    def psi(self) -> Poly:
        if self.kind == HERMITE:
            return Poly([0, -2])
        if self.kind == LAGUERRE:
            return Poly([self.alpha + 1, -1])
        if self.kind == BESSEL:
            return Poly([2, self.alpha + 2])
        return Poly([self.beta - self.alpha, -(self.alpha + self.beta + 2)])

    def moment_step(self, n: int, moments) -> Fraction:
        """a_{n+1} from a_0..a_n via the Pearson moment recurrence."""
        a, b = self.alpha, self.beta
        prev = moments[n - 1] if n >= 1 else ZERO
        if self.kind == HERMITE:
            return Fraction(n, 2) * prev
        if self.kind == LAGUERRE:
            return (n + a + 1) * moments[n]
        if self.kind == BESSEL:
            pivot = n + a + 2
            if pivot == 0:
                raise InvalidParameter(f"bessel moment pivot vanished at n={n}")
            return Fraction(-2) * moments[n] / pivot
        pivot = n + a + b + 2
        if pivot == 0:
            raise InvalidParameter(f"jacobi moment pivot vanished at n={n}")
        return (n * prev + (b - a) * moments[n]) / pivot

    def descriptor(self):
        out = {"family": self.kind}
        if self.alpha is not None:
            out["alpha"] = format_rational(self.alpha)
        if self.beta is not None:
            out["beta"] = format_rational(self.beta)
        out["a0"] = format_rational(self.a0)
        return out

    def __repr__(self):
        params = [p for p in (self.alpha, self.beta) if p is not None]
        inner = ",".join(str(p) for p in params)
        return f"ClassicalFamily({self.kind}{'(' + inner + ')' if inner else ''}, a0={self.a0})"


class MomentFunctional:
    """A moment sequence generator: base plus an optional modification.

    Modifications chain by wrapping: each derived functional keeps a
    reference to its source, so the stack is the chain of wrappers.
    """

    __slots__ = ("base", "source", "mod", "_cache")

    def __init__(self, base=None, source=None, mod=None):
        self.base = base          # ClassicalFamily | list of Fractions | None
        self.source = source      # parent MomentFunctional for modified ones
        self.mod = mod            # ("derivative",) | ("mul_poly", Poly) | ...
        self._cache = {}

    # -- constructors ------------------------------------------------------

    @classmethod
    def classical(cls, kind, alpha=None, beta=None, a0=1) -> "MomentFunctional":
        return cls(base=ClassicalFamily(kind, alpha, beta, a0))

    @classmethod
    def from_family(cls, family: ClassicalFamily) -> "MomentFunctional":
        return cls(base=family)

    @classmethod
    def from_moments(cls, moments) -> "MomentFunctional":
        return cls(base=[rat(m) for m in moments])

    @classmethod
    def zero(cls, depth=0) -> "MomentFunctional":
        return cls(base=[ZERO] * max(depth + 1, 1))

    # -- the calculus ------------------------------------------------------

    def derive(self) -> "MomentFunctional":
        """u': <u', p> = -<u, p'>, so moment n is -n * a_{n-1}."""
        return MomentFunctional(source=self, mod=("derivative",))

    def mul_poly(self, phi: Poly) -> "MomentFunctional":
        """phi*u: moment n is sum_k phi_k a_{n+k}."""
        return MomentFunctional(source=self, mod=("mul_poly", phi))

    def div_linear(self, c) -> "MomentFunctional":
        """(x-c)^{-1} u with <(x-c)^{-1}u, p> = <u, (p(x)-p(c))/(x-c)>."""
        return MomentFunctional(source=self, mod=("div_linear", rat(c)))

    def add_delta(self, c, order, weight) -> "MomentFunctional":
        """Add weight * p(c) (order 0) or weight * p'(c) (order 1)."""
        if order not in (0, 1):
            raise InvalidParameter("point-mass order must be 0 or 1")
        return MomentFunctional(source=self, mod=("add_delta", rat(c), order, rat(weight)))

    # -- evaluation --------------------------------------------------------

    def moment(self, n: int) -> Fraction:
        """Exact n-th moment <u, x^n>."""
        if n < 0:
            raise InvalidParameter("moment index must be nonnegative")
        hit = self._cache.get(n)
        if hit is not None:
            return hit
        value = self._moment_uncached(n)
        self._cache[n] = value
        return value

    def _moment_uncached(self, n: int) -> Fraction:
        if self.mod is None:
            if isinstance(self.base, ClassicalFamily):
                return self._classical_moment(n)
            if n >= len(self.base):
                raise InvalidParameter(
                    f"explicit moment list holds {len(self.base)} moments, index {n} requested")
            return self.base[n]
        kind = self.mod[0]
        if kind == "derivative":
            return -n * self.source.moment(n - 1) if n >= 1 else ZERO
        if kind == "mul_poly":
            phi = self.mod[1]
            return sum((ck * self.source.moment(n + k) for k, ck in enumerate(phi.coeffs)), ZERO)
        if kind == "div_linear":
            c = self.mod[1]
            acc, power = ZERO, ONE
            for k in range(n - 1, -1, -1):
                acc += power * self.source.moment(k)
                power *= c
            return acc
        c, order, w = self.mod[1], self.mod[2], self.mod[3]
        base = self.source.moment(n)
        if order == 0:
            return base + w * c**n
        return base + (w * n * c ** (n - 1) if n >= 1 else ZERO)

    def _classical_moment(self, n: int) -> Fraction:
        fam = self.base
        moments = [fam.a0]
        for k in range(n):
            moments.append(fam.moment_step(k, moments))
        return moments[n]

    def apply(self, p: Poly) -> Fraction:
        """<u, p> by moment expansion."""
        return sum((ck * self.moment(k) for k, ck in enumerate(p.coeffs)), ZERO)

    # -- introspection -----------------------------------------------------

    @property
    def family(self):
        """The classical base family, or None for explicit-moment bases."""
        root = self
        while root.source is not None:
            root = root.source
        return root.base if isinstance(root.base, ClassicalFamily) else None

    @property
    def mods(self):
        """The modification stack, outermost last."""
        stack, node = [], self
        while node.source is not None:
            stack.append(node.mod)
            node = node.source
        return tuple(reversed(stack))

    def descriptor(self):
        """Serializable description: base plus ordered modification stack."""
        root = self
        chain = []
        while root.source is not None:
            chain.append(root.mod)
            root = root.source
        chain.reverse()
        if isinstance(root.base, ClassicalFamily):
            out = root.base.descriptor()
        else:
            out = {"moments": [format_rational(m) for m in root.base]}
        mods = []
        for mod in chain:
            if mod[0] == "derivative":
                mods.append({"op": "derivative"})
            elif mod[0] == "mul_poly":
                mods.append({"op": "mul_poly",
                             "coeffs": [format_rational(c) for c in mod[1].coeffs]})
            elif mod[0] == "div_linear":
                mods.append({"op": "div_linear", "c": format_rational(mod[1])})
            else:
                mods.append({"op": "add_delta", "point": format_rational(mod[1]),
                             "order": mod[2], "weight": format_rational(mod[3])})
        if mods:
            out["mods"] = mods
        return out

    def __repr__(self):
        return f"MomentFunctional({self.descriptor()})"


def pearson_check(u: MomentFunctional, phi: Poly, psi: Poly, depth: int):
    """Residuals <(phi u)' - psi u, x^k> for k = 0..depth.

    All zero exactly when the pair (phi, psi) satisfies the Pearson
    equation for u up to the tested depth.
    """
    if phi.is_zero and psi.is_zero:
        raise InvalidParameter("pearson_check needs (phi, psi) != (0, 0)")
    phiu = u.mul_poly(phi)
    psiu = u.mul_poly(psi)
    out = []
    for k in range(depth + 1):
        lhs = -k * phiu.moment(k - 1) if k >= 1 else ZERO
        out.append(lhs - psiu.moment(k))
    return out


_STRONG_EXCLUDED = "alpha not in {0,-1,-2,...}"


def strongly_classical_companion(u: MomentFunctional) -> MomentFunctional:
    """The classical w with phi*w = u, when u is strongly classical.

    Strong classicality requires, on top of admissibility: jacobi
    alpha, beta, alpha+beta not in {0,-1,...}; laguerre and bessel
    alpha not in {0,-1,...}; hermite always.  The returned w satisfies
    (phi w)' = (psi - phi')w and phi*w = u exactly, including scale.
    """
    fam = u.family
    if fam is None or u.mods:
        raise NotStronglyClassical("companion is defined for unmodified classical functionals")
    if fam.kind == HERMITE:
        return MomentFunctional.from_family(ClassicalFamily(HERMITE, a0=fam.a0))
    if fam.kind == LAGUERRE:
        if _is_nonpositive_integer(fam.alpha):
            raise NotStronglyClassical(f"laguerre: {_STRONG_EXCLUDED}")
        shifted = ClassicalFamily(LAGUERRE, alpha=fam.alpha - 1, a0=ONE)
    elif fam.kind == BESSEL:
        if _is_nonpositive_integer(fam.alpha):
            raise NotStronglyClassical(f"bessel: {_STRONG_EXCLUDED}")
        shifted = ClassicalFamily(BESSEL, alpha=fam.alpha - 2, a0=ONE)
    else:
        for q in (fam.alpha, fam.beta, fam.alpha + fam.beta):
            if _is_nonpositive_integer(q):
                raise NotStronglyClassical(
                    "jacobi: alpha, beta, alpha+beta not in {0,-1,-2,...}")
        shifted = ClassicalFamily(JACOBI, alpha=fam.alpha - 1, beta=fam.beta - 1, a0=ONE)
    unit = MomentFunctional.from_family(shifted)
    mass = unit.mul_poly(fam.phi).moment(0)
    if mass == 0:
        raise NotStronglyClassical("companion mass of phi*w vanished")
    scaled = ClassicalFamily(shifted.kind, alpha=shifted.alpha, beta=shifted.beta,
                             a0=fam.a0 / mass)
    return MomentFunctional.from_family(scaled)
