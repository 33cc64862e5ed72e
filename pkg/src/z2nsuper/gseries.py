"""Truncated formal power series in the nonzero-degree variables.

The local model of a superdomain: coefficients are CoeffExprs in the base
coordinates, monomials are exponent vectors over the formal variables in the
signature's canonical order, and multiplication follows the scalar-product
sign rule.  Self-odd variables (sign_factor(d, d) == -1) are nilpotent and
carry exponent 0 or 1; self-even nonzero-degree variables are not nilpotent
and are bounded only by the truncation order K.
"""

from __future__ import annotations

from fractions import Fraction

from .coeffexpr import CoeffExpr, normalize_expr
from .degrees import Degree, is_self_odd, sign_factor

INFINITY = float("inf")


class SignatureMismatch(ValueError):
    pass


class OrderError(ValueError):
    pass


def mono_order(mu):
    return sum(mu)


def mono_degree(sig, mu):
    d = Degree.zero(sig.n)
    for k, deg in zip(mu, sig.formal_degrees()):
        if k % 2:
            d = d + deg
    return d


def mul_monomials(sig, mu, nu):
    """Multiply canonical monomials; returns (sign, mono) or None when killed.

    The sign accumulates one scalar-product factor per transposition needed to
    interleave the nu-word into the mu-word; a self-odd variable appearing
    with total exponent >= 2 kills the product.
    """
    degs = sig.formal_degrees()
    out = []
    for a, (ka, kb) in enumerate(zip(mu, nu)):
        total = ka + kb
        if total >= 2 and is_self_odd(degs[a]):
            return None
        out.append(total)
    swaps = 0
    for a in range(len(mu)):
        if not mu[a]:
            continue
        for b in range(a):
            if nu[b]:
                dot = sum(x * y for x, y in zip(degs[a], degs[b]))
                swaps += mu[a] * nu[b] * dot
    return (-1 if swaps % 2 else 1), tuple(out)


class GSeries:
    """A truncated formal power series over a fixed signature."""

    __slots__ = ("sig", "order", "terms")

    def __init__(self, sig, order, terms=None):
        self.sig = sig
        self.order = order
        clean = {}
        for mu, c in (terms or {}).items():
            c = normalize_expr(c)
            if c.is_zero():
                continue
            if mono_order(mu) > order:
                continue
            clean[tuple(mu)] = c
        self.terms = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, sig, order):
        return cls(sig, order, {})

    @classmethod
    def from_coeff(cls, sig, order, c):
        c = _as_coeff(c)
        mu = (0,) * sig.nformal
        return cls(sig, order, {mu: c})

    @classmethod
    def one(cls, sig, order):
        return cls.from_coeff(sig, order, 1)

    @classmethod
    def generator(cls, sig, name, order):
        """The series of a single variable (base or formal)."""
        if sig.is_base(name):
            return cls.from_coeff(sig, order, CoeffExpr.var(name))
        mu = [0] * sig.nformal
        mu[sig.formal_index(name)] = 1
        return cls(sig, order, {tuple(mu): CoeffExpr.rational(1)})

    @classmethod
    def monomial(cls, sig, order, mu, coeff=1):
        return cls(sig, order, {tuple(mu): _as_coeff(coeff)})

    # -- structure --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def epsilon(self):
        """The coefficient of the empty monomial (the augmentation)."""
        from .coeffexpr import ZERO

        return self.terms.get((0,) * self.sig.nformal, ZERO)

    def j_order(self):
        """Minimal monomial order over nonzero terms; +inf for the zero series."""
        if not self.terms:
            return INFINITY
        return min(mono_order(mu) for mu in self.terms)

    def truncate(self, k):
        if k > self.order:
            raise OrderError(
                "cannot raise truncation order from %d to %d" % (self.order, k)
            )
        return GSeries(self.sig, k, {mu: c for mu, c in self.terms.items() if mono_order(mu) <= k})

    def slice_order(self, k):
        """The pure order-k part, at the same truncation order."""
        return GSeries(
            self.sig, self.order, {mu: c for mu, c in self.terms.items() if mono_order(mu) == k}
        )

    def homogeneous_degree(self):
        """The common Z2^n degree of all terms, or None when inhomogeneous.

        The zero series is homogeneous of every degree; it reports the zero
        degree.
        """
        deg = None
        for mu in self.terms:
            d = mono_degree(self.sig, mu)
            if deg is None:
                deg = d
            elif deg != d:
                return None
        return deg if deg is not None else Degree.zero(self.sig.n)

    def is_homogeneous(self, d):
        return all(mono_degree(self.sig, mu) == Degree(d) for mu in self.terms)

    def map_coeffs(self, fn):
        return GSeries(self.sig, self.order, {mu: fn(c) for mu, c in self.terms.items()})

    def coeff_of(self, mu):
        from .coeffexpr import ZERO

        return self.terms.get(tuple(mu), ZERO)

    # -- ring operations --------------------------------------------------

    def _check_sig(self, other):
        if self.sig != other.sig:
            raise SignatureMismatch("series over different signatures")

    def __add__(self, other):
        other = self._coerce(other)
        self._check_sig(other)
        order = min(self.order, other.order)
        out = {mu: c for mu, c in self.terms.items() if mono_order(mu) <= order}
        for mu, c in other.terms.items():
            if mono_order(mu) <= order:
                out[mu] = out.get(mu, CoeffExpr.rational(0)) + c
        return GSeries(self.sig, order, out)

    __radd__ = __add__

    def __neg__(self):
        return self.map_coeffs(lambda c: -c)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        self._check_sig(other)
        order = min(self.order, other.order)
        out = {}
        for mu, cmu in self.terms.items():
            omu = mono_order(mu)
            for nu, cnu in other.terms.items():
                if omu + mono_order(nu) > order:
                    continue
                hit = mul_monomials(self.sig, mu, nu)
                if hit is None:
                    continue
                sign, rho = hit
                c = cmu * cnu
                if sign < 0:
                    c = -c
                out[rho] = out.get(rho, CoeffExpr.rational(0)) + c
        return GSeries(self.sig, order, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = GSeries.one(self.sig, self.order)
        for _ in range(k):
            out = out * self
        return out

    def _coerce(self, x):
        if isinstance(x, GSeries):
            return x
        if isinstance(x, (int, Fraction, CoeffExpr)):
            return GSeries.from_coeff(self.sig, self.order, x)
        raise TypeError("cannot coerce %r to GSeries" % (x,))

    def __eq__(self, other):
        return (
            isinstance(other, GSeries)
            and self.sig == other.sig
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.sig, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    # -- derivatives ------------------------------------------------------

    def left_partial(self, name):
        """Graded left partial derivative with respect to a variable.

        For a base coordinate this differentiates the coefficients.  For a
        formal variable it satisfies the left Leibniz rule
        d(fg) = (df)g + sign(deg u, deg f) f (dg).
        """
        if self.sig.is_base(name):
            return self.map_coeffs(lambda c: c.diff(name))
        iu = self.sig.formal_index(name)
        degs = self.sig.formal_degrees()
        du = degs[iu]
        out = {}
        for mu, c in self.terms.items():
            if not mu[iu]:
                continue
            swaps = 0
            for b in range(iu):
                if mu[b]:
                    swaps += mu[b] * sum(x * y for x, y in zip(du, degs[b]))
            sign = -1 if swaps % 2 else 1
            coeff = c * (sign * mu[iu])
            rho = list(mu)
            rho[iu] -= 1
            rho = tuple(rho)
            out[rho] = out.get(rho, CoeffExpr.rational(0)) + coeff
        return GSeries(self.sig, self.order, out)

    # -- printing ---------------------------------------------------------

    def __str__(self):
        from .formats import print_series

        return print_series(self)

    def __repr__(self):
        return "GSeries(%s; K=%d)" % (str(self), self.order)


def _as_coeff(c):
    if isinstance(c, CoeffExpr):
        return c
    if isinstance(c, (int, Fraction)):
        return CoeffExpr.rational(c)
    raise TypeError("not a coefficient: %r" % (c,))


def normal_form(word, sig, order):
    """Normal-order a word of factors into a canonical GSeries.

    Each factor is a variable name (base or formal) or a coefficient
    (CoeffExpr / rational).  Signs accumulate per the commutation rule;
    squares of self-odd variables vanish.
    """
    out = GSeries.one(sig, order)
    for factor in word:
        if isinstance(factor, str):
            out = out * GSeries.generator(sig, factor, order)
        else:
            out = out * factor
    return out


def multiply(a, b):
    return a * b


def epsilon(a):
    return a.epsilon()


def j_order(a):
    return a.j_order()


def truncate(a, k):
    return a.truncate(k)
