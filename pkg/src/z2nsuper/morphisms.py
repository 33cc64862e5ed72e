"""Degree-preserving morphisms of superdomains.

A Morphism is stored contravariantly: it maps each target variable to its
image series over the source.  Pulling back a coefficient function composes
it with the base map and Taylor-expands in the higher-order part of the
degree-0 images; pulling back a formal variable substitutes its image.
"""

from __future__ import annotations

from fractions import Fraction

from .coeffexpr import CoeffExpr, normalize_expr
from .degrees import Degree, enumerate_nonzero_degrees, is_self_odd, sign_factor
from .gseries import GSeries, SignatureMismatch, mono_degree, mono_order


class MorphismError(ValueError):
    pass


class SingularBlock(MorphismError):
    """The linear part of a formal-variable block is not invertible."""


def enumerate_monomials(sig, max_order, degree=None):
    """All canonical exponent vectors of order <= max_order, optionally of a
    fixed total Z2^n degree.  Self-odd variables are capped at exponent 1."""
    degs = sig.formal_degrees()
    caps = [1 if is_self_odd(d) else max_order for d in degs]
    out = []

    def rec(i, acc, budget):
        if i == len(degs):
            out.append(tuple(acc))
            return
        for k in range(0, min(caps[i], budget) + 1):
            rec(i + 1, acc + [k], budget - k)

    rec(0, [], max_order)
    if degree is not None:
        degree = Degree(degree)
        out = [mu for mu in out if mono_degree(sig, mu) == degree]
    return out


class Morphism:
    """A degree-preserving superdomain morphism given by target-variable images."""

    def __init__(self, source, target, images, order):
        if source.n != target.n:
            raise SignatureMismatch("source and target have different n")
        self.source = source
        self.target = target
        self.order = order
        self.images = {}
        for name, deg in target.variables():
            if name not in images:
                raise MorphismError("missing image for target variable %r" % name)
            img = images[name]
            if not isinstance(img, GSeries):
                raise MorphismError("image of %r is not a series" % name)
            if img.sig != source:
                raise SignatureMismatch("image of %r is not over the source" % name)
            if img.order > order:
                img = img.truncate(order)
            elif img.order < order:
                raise MorphismError(
                    "image of %r has order %d < morphism order %d"
                    % (name, img.order, order)
                )
            for mu in img.terms:
                if mono_degree(source, mu) != deg:
                    raise MorphismError(
                        "image of %r (degree %s) has off-degree monomial %r"
                        % (name, deg, mu)
                    )
            self.images[name] = img
        extra = set(images) - set(self.images)
        if extra:
            raise MorphismError("images for unknown variables: %s" % sorted(extra))

    # -- structure --------------------------------------------------------

    def base_map(self):
        """epsilon of the degree-0 images: target base coordinate -> CoeffExpr."""
        return {bn: self.images[bn].epsilon() for bn in self.target.base_names}

    def is_base_identity(self):
        if len(self.source.base_names) != len(self.target.base_names):
            return False
        for sn, tn in zip(self.source.base_names, self.target.base_names):
            if self.images[tn].epsilon() != CoeffExpr.var(sn):
                return False
        return True

    @classmethod
    def identity(cls, sig, order):
        images = {nm: GSeries.generator(sig, nm, order) for nm, _ in sig.variables()}
        return cls(sig, sig, images, order)

    def __eq__(self, other):
        return (
            isinstance(other, Morphism)
            and self.source == other.source
            and self.target == other.target
            and self.images == other.images
        )

    def map_images(self, fn):
        return Morphism(
            self.source, self.target, {v: fn(s) for v, s in self.images.items()}, self.order
        )

    # -- pullback ---------------------------------------------------------

    def pullback_coeff(self, c, order=None):
        """Pull back a coefficient function of the target base coordinates.

        Substitutes the base map and Taylor-expands in the j_order >= 1 part
        of the degree-0 images; finite because of truncation.
        """
        c = normalize_expr(c)
        order = self.order if order is None else min(order, self.order)
        base = self.target.base_names
        amap = {bn: self.images[bn].epsilon() for bn in base}
        nil = {
            bn: (self.images[bn] - GSeries.from_coeff(self.source, self.order, amap[bn])).truncate(order)
            for bn in base
        }
        result = [GSeries.zero(self.source, order)]

        def rec(i, deriv, prod, fact):
            if deriv.is_zero() or prod.is_zero():
                return
            if i == len(base):
                coeff = deriv.substitute_vars(amap) * Fraction(1, fact)
                result[0] = result[0] + prod * coeff
                return
            bn = base[i]
            k = 0
            while True:
                rec(i + 1, deriv, prod, fact)
                k += 1
                prod = prod * nil[bn]
                if prod.is_zero():
                    break
                deriv = deriv.diff(bn)
                if deriv.is_zero():
                    break
                fact = fact * k

        rec(0, c, GSeries.one(self.source, order), 1)
        return result[0]

    def pullback(self, f):
        """Pull back a series over the target to a series over the source."""
        if f.sig != self.target:
            raise SignatureMismatch("series is not over the morphism target")
        order = min(self.order, f.order)
        out = GSeries.zero(self.source, order)
        fvars = self.target.formal_names
        powers = {}
        for mu, c in f.terms.items():
            part = self.pullback_coeff(c, order)
            for a, k in enumerate(mu):
                if not k:
                    continue
                key = (a, k)
                if key not in powers:
                    powers[key] = self.images[fvars[a]].truncate(order) ** k
                part = part * powers[key]
            out = out + part
        return out


def make_morphism(source, target, images, order):
    return Morphism(source, target, images, order)


def compose(m2, m1):
    """The morphism whose pullback is pullback(m1) after pullback(m2)."""
    if m1.target != m2.source:
        raise SignatureMismatch("compose: target of first != source of second")
    order = min(m1.order, m2.order)
    images = {v: m1.pullback(img) for v, img in m2.images.items()}
    return Morphism(m1.source, m2.target, images, order)


# -- inversion ------------------------------------------------------------


def _invert_rational_matrix(M):
    """Invert a matrix of Fractions by Gaussian elimination; None if singular."""
    nn = len(M)
    aug = [[Fraction(M[i][j]) for j in range(nn)] + [Fraction(int(i == j)) for j in range(nn)] for i in range(nn)]
    for col in range(nn):
        piv = next((r for r in range(col, nn) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(nn):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[nn:] for row in aug]


def invert(m, base_inverse=None):
    """Formal inverse of a morphism by filtered fixed-point iteration.

    The linear part of the formal-variable images must be rational per degree
    block.  When the base map is not the identity, a symbolic inverse must be
    supplied as base_inverse: source base coordinate -> CoeffExpr over the
    target base coordinates.
    """
    src, tgt, K = m.source, m.target, m.order
    if base_inverse is None:
        if not m.is_base_identity():
            raise MorphismError(
                "base map is not the coordinate identity; supply base_inverse"
            )
        base_inverse = {
            sn: CoeffExpr.var(tn) for sn, tn in zip(src.base_names, tgt.base_names)
        }

    # positional matching of formal variables per degree block
    blocks = {}
    for d in enumerate_nonzero_degrees(src.n, "lex"):
        tvars = [nm for nm in tgt.formal_names if tgt.degree_of(nm) == d]
        svars = [nm for nm in src.formal_names if src.degree_of(nm) == d]
        if len(tvars) != len(svars):
            raise SignatureMismatch("source and target differ in degree %s count" % d)
        if tvars:
            blocks[d] = (tvars, svars)

    Minv = {}
    for d, (tvars, svars) in blocks.items():
        M = []
        for tv in tvars:
            row = []
            for sv in svars:
                mu = [0] * src.nformal
                mu[src.formal_index(sv)] = 1
                q = m.images[tv].coeff_of(mu).as_rational()
                if q is None:
                    raise SingularBlock(
                        "linear block of degree %s is not rational; cannot invert" % d
                    )
                row.append(q)
            M.append(row)
        inv = _invert_rational_matrix(M)
        if inv is None:
            raise SingularBlock("linear block of degree %s is singular" % d)
        Minv[d] = inv

    def linear_guess():
        images = {}
        for sn, tn in zip(src.base_names, tgt.base_names):
            images[sn] = GSeries.from_coeff(tgt, K, base_inverse[sn])
        for d, (tvars, svars) in blocks.items():
            inv = Minv[d]
            for i, sv in enumerate(svars):
                acc = GSeries.zero(tgt, K)
                for j, tv in enumerate(tvars):
                    if inv[i][j] != 0:
                        acc = acc + GSeries.generator(tgt, tv, K) * inv[i][j]
                images[sv] = acc
        return Morphism(tgt, src, images, K)

    psi = linear_guess()
    # nonlinear parts of the forward images
    h_base = {}
    for sn, tn in zip(src.base_names, tgt.base_names):
        img = m.images[tn]
        h_base[tn] = img - GSeries.from_coeff(src, K, img.epsilon())
    h_formal = {}
    for d, (tvars, svars) in blocks.items():
        for tv in tvars:
            img = m.images[tv]
            lin = GSeries.zero(src, K)
            for sv in svars:
                mu = [0] * src.nformal
                mu[src.formal_index(sv)] = 1
                lin = lin + GSeries.monomial(src, K, mu, img.coeff_of(mu))
            h_formal[tv] = img - lin

    for _ in range(K):
        images = {}
        # base coordinates: b_i evaluated at (x' - psi*(n_i)) via Taylor shift
        shift = {tn: -psi.pullback(h_base[tn]) for tn in tgt.base_names}
        for sn in src.base_names:
            images[sn] = _taylor_shift(base_inverse[sn], tgt, shift, K)
        for d, (tvars, svars) in blocks.items():
            inv = Minv[d]
            rhs = {}
            for tv in tvars:
                rhs[tv] = GSeries.generator(tgt, tv, K) - psi.pullback(h_formal[tv])
            for i, sv in enumerate(svars):
                acc = GSeries.zero(tgt, K)
                for j, tv in enumerate(tvars):
                    if inv[i][j] != 0:
                        acc = acc + rhs[tv] * inv[i][j]
                images[sv] = acc
        new_psi = Morphism(tgt, src, images, K)
        if new_psi == psi:
            break
        psi = new_psi
    return psi


def _taylor_shift(expr, sig, shifts, order):
    """Evaluate a coefficient expression at identity-plus-shift arguments.

    shifts: base coordinate name -> GSeries over sig with j_order >= 1.
    """
    base = list(shifts)
    result = [GSeries.zero(sig, order)]

    def rec(i, deriv, prod, fact):
        if deriv.is_zero() or prod.is_zero():
            return
        if i == len(base):
            result[0] = result[0] + prod * (deriv * Fraction(1, fact))
            return
        bn = base[i]
        k = 0
        while True:
            rec(i + 1, deriv, prod, fact)
            k += 1
            prod = prod * shifts[bn]
            if prod.is_zero():
                break
            deriv = deriv.diff(bn)
            if deriv.is_zero():
                break
            fact = fact * k

    rec(0, normalize_expr(expr), GSeries.one(sig, order), 1)
    return result[0]


# -- Jacobian -------------------------------------------------------------


class JacobianMatrix:
    """Graded Jacobian: rows are target variables, columns source variables.

    Every nonzero entry must be homogeneous of degree
    deg(target row) + deg(source column).
    """

    def __init__(self, morphism):
        self.morphism = morphism
        self.rows = [nm for nm, _ in morphism.target.variables()]
        self.cols = [nm for nm, _ in morphism.source.variables()]
        self.entries = {}
        for tv in self.rows:
            img = morphism.images[tv]
            for sv in self.cols:
                self.entries[(tv, sv)] = img.left_partial(sv)

    def entry(self, tv, sv):
        return self.entries[(tv, sv)]

    def expected_degree(self, tv, sv):
        return self.morphism.target.degree_of(tv) + self.morphism.source.degree_of(sv)

    def block_violations(self):
        bad = []
        for (tv, sv), e in self.entries.items():
            if not e.is_homogeneous(self.expected_degree(tv, sv)):
                bad.append((tv, sv, e))
        return bad

    def check_blocks(self):
        return not self.block_violations()


def jacobian(m):
    jac = JacobianMatrix(m)
    bad = jac.block_violations()
    if bad:  # impossible for a validated morphism; defensive
        tv, sv, _ = bad[0]
        raise MorphismError("Jacobian entry (%s, %s) violates its degree block" % (tv, sv))
    return jac


# -- the general coordinate-transformation template -----------------------


def transformation_template(sig, order, coeff_prefix="c"):
    """Admissible monomial shapes for the most general coordinate change.

    For each variable of the signature, all monomials of order <= K whose
    total degree matches the variable's degree, each paired with a fresh
    opaque coefficient symbol of the base coordinates.  Returns
    (shapes, morphism) where shapes maps variable name -> list of exponent
    vectors and the morphism carries the symbolic general transformation.
    """
    shapes = {}
    images = {}
    base_args = [CoeffExpr.var(bn) for bn in sig.base_names]
    for name, deg in sig.variables():
        monos = enumerate_monomials(sig, order, degree=deg)
        monos.sort(key=lambda mu: (mono_order(mu), mu))
        shapes[name] = monos
        acc = GSeries.zero(sig, order)
        for idx, mu in enumerate(monos):
            sym = CoeffExpr.app("%s_%s_%d" % (coeff_prefix, name, idx), base_args)
            acc = acc + GSeries.monomial(sig, order, mu, sym)
        images[name] = acc
    return shapes, Morphism(sig, sig, images, order)
