"""Symbolic smooth coefficient functions of the base coordinates.

A CoeffExpr is kept permanently in canonical form: a linear combination, with
exact rational coefficients, of power products of atomic factors.  Atoms are
either base-coordinate symbols or opaque smooth-function applications
f[alpha](a1, ..., am) carrying a formal derivative multi-index alpha.  Formal
differentiation implements linearity, the Leibniz rule, and the chain rule on
opaque applications; equality is syntactic equality of canonical forms.
"""

from __future__ import annotations

from fractions import Fraction


class UnboundSymbol(KeyError):
    """An opaque symbol has no polynomial realization during evaluation."""


class Var:
    """A base-coordinate symbol."""

    __slots__ = ("name", "_key")

    def __init__(self, name):
        self.name = name
        self._key = (0, name)

    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Var) and self.name == other.name

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return "Var(%s)" % self.name


class App:
    """An opaque smooth-function application f^(alpha)(a1, ..., am).

    alpha is the multi-index of formal partial derivatives in the argument
    slots; the arguments are CoeffExprs.
    """

    __slots__ = ("func", "alpha", "args", "_key")

    def __init__(self, func, alpha, args):
        self.func = func
        self.alpha = tuple(int(a) for a in alpha)
        self.args = tuple(args)
        if len(self.alpha) != len(self.args):
            raise ValueError(
                "derivative multi-index length %d != argument count %d"
                % (len(self.alpha), len(self.args))
            )
        self._key = (1, func, self.alpha, tuple(a.key() for a in self.args))

    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, App) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return "App(%s,%s,%r)" % (self.func, self.alpha, self.args)


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError("expected an exact rational, got %r" % (x,))


class CoeffExpr:
    """A normalized coefficient expression.

    Stored as a mapping from power-product monomials (sorted tuples of
    (atom, exponent)) to nonzero Fractions.  All constructors and operations
    keep this representation canonical, so == is the engine's equality test.
    """

    __slots__ = ("_terms", "_key", "_hash")

    def __init__(self, terms):
        # terms: dict mono -> Fraction; zero coefficients removed here.
        clean = {m: c for m, c in terms.items() if c != 0}
        self._terms = clean
        # fully structural key: atoms are replaced by their own keys so the
        # tuples stay totally ordered even when nested inside App arguments
        self._key = tuple(
            sorted((_mono_key(m), (c.numerator, c.denominator)) for m, c in clean.items())
        )
        self._hash = hash(self._key)

    # -- constructors -----------------------------------------------------

    @staticmethod
    def rational(q):
        q = Fraction(q)
        if q == 0:
            return ZERO
        return CoeffExpr({(): q})

    @staticmethod
    def var(name):
        return CoeffExpr({((Var(name), 1),): Fraction(1)})

    @staticmethod
    def app(func, args, alpha=None):
        args = tuple(a if isinstance(a, CoeffExpr) else CoeffExpr.rational(a) for a in args)
        if alpha is None:
            alpha = (0,) * len(args)
        atom = App(func, alpha, args)
        return CoeffExpr({((atom, 1),): Fraction(1)})

    # -- basic structure --------------------------------------------------

    def key(self):
        return self._key

    def is_zero(self):
        return not self._terms

    def as_rational(self):
        """The value as a Fraction if the expression is constant, else None."""
        if not self._terms:
            return Fraction(0)
        if len(self._terms) == 1 and () in self._terms:
            return self._terms[()]
        return None

    def terms(self):
        return dict(self._terms)

    def atoms(self):
        out = set()
        for mono in self._terms:
            for atom, _ in mono:
                out.add(atom)
        return out

    def opaque_names(self):
        """Names of all opaque function symbols occurring anywhere in the tree."""
        out = set()
        for atom in self.atoms():
            if isinstance(atom, App):
                out.add(atom.func)
                for a in atom.args:
                    out |= a.opaque_names()
        return out

    def __eq__(self, other):
        return isinstance(other, CoeffExpr) and self._key == other._key

    def __hash__(self):
        return self._hash

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return CoeffExpr(out)

    __radd__ = __add__

    def __neg__(self):
        return CoeffExpr({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return CoeffExpr(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    # -- calculus ---------------------------------------------------------

    def diff(self, name):
        """Formal partial derivative with respect to the base coordinate `name`."""
        out = ZERO
        for mono, coeff in self._terms.items():
            for i, (atom, power) in enumerate(mono):
                if power > 1:
                    rest = mono[:i] + ((atom, power - 1),) + mono[i + 1 :]
                else:
                    rest = mono[:i] + mono[i + 1 :]
                datom = _atom_diff(atom, name)
                if datom.is_zero():
                    continue
                out = out + CoeffExpr({rest: coeff * power}) * datom
        return out

    def evaluate(self, point, realizations=None):
        """Exact rational value at a point, with polynomial realizations for opaques.

        point: mapping coordinate name -> rational.  realizations: mapping
        opaque symbol name -> CoeffExpr in placeholder variables t0, t1, ...
        (one per argument slot), containing no opaque symbols itself.
        Derivative indices are applied exactly to the realization.
        """
        realizations = realizations or {}
        total = Fraction(0)
        for mono, coeff in self._terms.items():
            val = coeff
            for atom, power in mono:
                val *= _atom_eval(atom, point, realizations) ** power
            total += val
        return total

    def substitute_vars(self, mapping):
        """Replace base-coordinate symbols by CoeffExprs (formal composition)."""
        out = ZERO
        for mono, coeff in self._terms.items():
            term = CoeffExpr.rational(coeff)
            for atom, power in mono:
                term = term * _atom_subst_vars(atom, mapping) ** power
            out = out + term
        return out

    def substitute_app(self, func, handler):
        """Replace every application of the opaque symbol `func`.

        handler(alpha, args) -> CoeffExpr receives the derivative multi-index
        and the (already substituted) argument tuple.
        """
        out = ZERO
        for mono, coeff in self._terms.items():
            term = CoeffExpr.rational(coeff)
            for atom, power in mono:
                term = term * _atom_subst_app(atom, func, handler) ** power
            out = out + term
        return out

    # -- printing ---------------------------------------------------------

    def __str__(self):
        from .exprio import print_coeff

        return print_coeff(self)

    def __repr__(self):
        return "CoeffExpr(%s)" % str(self)


def _coerce(x):
    if isinstance(x, CoeffExpr):
        return x
    if isinstance(x, (int, Fraction)):
        return CoeffExpr.rational(x)
    raise TypeError("cannot coerce %r to CoeffExpr" % (x,))


def _mono_key(mono):
    return tuple((atom.key(), power) for atom, power in mono)


def _mono_mul(m1, m2):
    powers = {}
    order = []
    for atom, p in m1 + m2:
        if atom not in powers:
            powers[atom] = 0
            order.append(atom)
        powers[atom] += p
    merged = [(atom, powers[atom]) for atom in order]
    merged.sort(key=lambda ap: ap[0].key())
    return tuple(merged)


def _atom_diff(atom, name):
    if isinstance(atom, Var):
        return ONE if atom.name == name else ZERO
    # chain rule on an opaque application
    out = ZERO
    for j, arg in enumerate(atom.args):
        darg = arg.diff(name)
        if darg.is_zero():
            continue
        alpha = list(atom.alpha)
        alpha[j] += 1
        bumped = CoeffExpr({((App(atom.func, alpha, atom.args), 1),): Fraction(1)})
        out = out + bumped * darg
    return out


def _atom_eval(atom, point, realizations):
    if isinstance(atom, Var):
        if atom.name not in point:
            raise UnboundSymbol("no value for coordinate %r" % atom.name)
        return Fraction(point[atom.name])
    if atom.func not in realizations:
        raise UnboundSymbol("no realization for opaque symbol %r" % atom.func)
    real = realizations[atom.func]
    for j, k in enumerate(atom.alpha):
        for _ in range(k):
            real = real.diff("t%d" % j)
    argvals = {"t%d" % j: arg.evaluate(point, realizations) for j, arg in enumerate(atom.args)}
    return real.evaluate(argvals, realizations)


def _atom_subst_vars(atom, mapping):
    if isinstance(atom, Var):
        return mapping.get(atom.name, CoeffExpr.var(atom.name))
    args = tuple(a.substitute_vars(mapping) for a in atom.args)
    return CoeffExpr({((App(atom.func, atom.alpha, args), 1),): Fraction(1)})


def _atom_subst_app(atom, func, handler):
    if isinstance(atom, Var):
        return CoeffExpr.var(atom.name)
    args = tuple(a.substitute_app(func, handler) for a in atom.args)
    if atom.func == func:
        return handler(atom.alpha, args)
    return CoeffExpr({((App(atom.func, atom.alpha, args), 1),): Fraction(1)})


ZERO = CoeffExpr({})
ONE = CoeffExpr({(): Fraction(1)})


def normalize_expr(e):
    """Identity on the canonical representation; kept as the public entry point."""
    return _coerce(e)


def differentiate(e, name):
    return _coerce(e).diff(name)


def evaluate(e, point, realizations=None):
    return _coerce(e).evaluate(point, realizations)
