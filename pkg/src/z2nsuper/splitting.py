"""Constructive splitting of a supermanifold atlas into its graded-bundle model.

The pipeline builds, order by order up to the truncation K:

  1. an embedding of the smooth functions into the structure algebra,
     chartwise, repairing overlap mismatches (which are derivations of pure
     order k+1) by a Cech coboundary correction with the partition of unity;
  2. a lift of the degree-shifted frame (a right inverse of J -> J/J^2 as
     modules over the embedded smooth functions), by the same order-raising
     scheme;
  3. the per-chart isomorphism onto the split model assembled from the two,
     together with a verification report.
"""

from __future__ import annotations

from fractions import Fraction

from .atlas import Atlas, Report, build_split_model, extract_bundle, validate_atlas
from .coeffexpr import CoeffExpr, normalize_expr
from .degrees import enumerate_nonzero_degrees
from .gseries import GSeries, mono_order
from .morphisms import Morphism, compose


class SplittingError(RuntimeError):
    pass


class MissingPartition(SplittingError):
    """The coboundary step needs a partition of unity on the atlas."""


# -- the embedding family -------------------------------------------------


class EmbeddingFamily:
    """Per chart, a degree-0 unital algebra morphism from smooth functions,
    represented by its values on the chart's base coordinates."""

    def __init__(self, atlas, values, order):
        self.atlas = atlas
        self.values = values  # chart -> {base var -> GSeries}
        self.order = order

    @classmethod
    def identity(cls, atlas, order):
        sig = atlas.signature
        values = {
            u: {bn: GSeries.generator(sig, bn, order) for bn in sig.base_names}
            for u in atlas.charts
        }
        return cls(atlas, values, order)

    def as_morphism(self, chart):
        """The canonical extension of the chart values to a full morphism.

        Reinterprets x^i -> x^i + (higher) as a coordinate substitution that
        fixes the formal variables; applying its pullback to a coefficient
        function is the embedding itself.
        """
        sig = self.atlas.signature
        images = dict(self.values[chart])
        for fn in sig.formal_names:
            images[fn] = GSeries.generator(sig, fn, self.order)
        return Morphism(sig, sig, images, self.order)

    def apply(self, chart, expr):
        """The embedding of a coefficient function into the chart algebra."""
        return self.as_morphism(chart).pullback_coeff(normalize_expr(expr))

    def at_order(self, order):
        """Reinterpret the family at a different truncation order.

        Raising the order is the canonical extension of the underlying
        morphisms (values are reused verbatim); lowering truncates.
        """
        sig = self.atlas.signature
        values = {
            u: {bn: GSeries(sig, order, s.terms) for bn, s in per.items()}
            for u, per in self.values.items()
        }
        return EmbeddingFamily(self.atlas, values, order)

    def corrected(self, eta):
        """Add a 0-cochain of pure-order derivation values to the chart values."""
        values = {
            u: {bn: s + eta[u][bn] if u in eta else s for bn, s in per.items()}
            for u, per in self.values.items()
        }
        return EmbeddingFamily(self.atlas, values, self.order)


def extend_embedding_chartwise(family, chart, order):
    """The canonical order-(k+1) extension of one chart's embedding values."""
    sig = family.atlas.signature
    return {bn: GSeries(sig, order, s.terms) for bn, s in family.values[chart].items()}


# -- mismatch derivations -------------------------------------------------


def mismatch_on(family, pair, expr, order=None):
    """phi_U(f) minus the transported phi_V(f) on an overlap, for a
    coefficient function f written in U coordinates."""
    atlas = family.atlas
    u, v = pair
    order = family.order if order is None else order
    t_uv = atlas.transition(u, v)
    t_vu = atlas.transition(v, u)
    base_vu = t_vu.base_map()  # U base coordinates as functions of V
    expr = normalize_expr(expr)
    in_v = expr.substitute_vars(base_vu)
    left = family.apply(u, expr).truncate(order)
    right = t_uv.pullback(family.apply(v, in_v)).truncate(order)
    return atlas.reduce_series(left - right)


def cocycle_mismatch(family, pair, order):
    """The overlap mismatch on the base coordinates; must be pure order k+1.

    Returns {base var -> GSeries over chart U}, the values of the degree-0
    derivation omega_{k+1,UV}.
    """
    atlas = family.atlas
    sig = atlas.signature
    out = {}
    for bn in sig.base_names:
        d = mismatch_on(family, pair, CoeffExpr.var(bn), order)
        low = GSeries(sig, order, {mu: c for mu, c in d.terms.items() if mono_order(mu) < order})
        if not low.is_zero():
            raise SplittingError(
                "mismatch on %s for pair %s has terms below order %d; "
                "input family is inconsistent" % (bn, pair, order)
            )
        if not d.is_homogeneous(sig.degree_of(bn)):
            raise SplittingError("mismatch on %s for pair %s is not degree 0" % (bn, pair))
        out[bn] = d
    return out


def transport_derivation(atlas, u, v, omega_v, order):
    """Express a derivation given by V-chart values on the U chart.

    Chain rule through the base transition, then coordinate transport of the
    values through T_UV.
    """
    sig = atlas.signature
    t_uv = atlas.transition(u, v)
    t_vu = atlas.transition(v, u)
    base_vu = t_vu.base_map()  # U base coordinates as functions of the V chart
    out = {}
    for bn in sig.base_names:
        expr_v = base_vu[bn]
        acc = GSeries.zero(sig, order)
        for bv in sig.base_names:
            d = expr_v.diff(bv)
            if d.is_zero():
                continue
            acc = acc + omega_v[bv].truncate(order) * d
        out[bn] = atlas.reduce_series(t_uv.pullback(acc).truncate(order))
    return out


def solve_coboundary(atlas, omegas, order):
    """A 0-cochain eta with (delta eta) = omega, via the partition of unity.

    omegas: ordered pair -> {base var -> GSeries}, expressed on the first
    chart of each pair.  eta_U = -sum_W rho_W omega_UW.
    """
    if not atlas.partition:
        raise MissingPartition(
            "a partition of unity is required to trivialize the overlap cocycle"
        )
    sig = atlas.signature
    etas = {}
    for u in atlas.charts:
        acc = {bn: GSeries.zero(sig, order) for bn in sig.base_names}
        for w in atlas.charts:
            if w == u:
                continue
            rho = atlas.partition[w]
            if (u, w) not in omegas:
                raise SplittingError(
                    "no mismatch data for pair (%s, %s); declare the overlap "
                    "or a zero cocycle for it" % (u, w)
                )
            om = omegas[(u, w)]
            for bn in sig.base_names:
                acc[bn] = acc[bn] - om[bn] * rho
        etas[u] = {bn: atlas.reduce_series(s) for bn, s in acc.items()}
    return etas


def check_cocycle(atlas, omegas, order, report, tag):
    """Antisymmetry on pairs and the triple identity on the declared nerve."""
    sig = atlas.signature
    for (u, v) in omegas:
        if (v, u) not in omegas:
            continue
        back = transport_derivation(atlas, u, v, omegas[(v, u)], order)
        ok = all(
            atlas.reduce_series(omegas[(u, v)][bn] + back[bn]).is_zero()
            for bn in sig.base_names
        )
        report.add("%s antisymmetry %s%s" % (tag, u, v), ok)
    for (u, v, w) in atlas.triples:
        if (u, v) not in omegas or (v, w) not in omegas or (u, w) not in omegas:
            continue
        t_vw = transport_derivation(atlas, u, v, omegas[(v, w)], order)
        ok = all(
            atlas.reduce_series(
                omegas[(u, v)][bn] + t_vw[bn] - omegas[(u, w)][bn]
            ).is_zero()
            for bn in sig.base_names
        )
        report.add("%s triple-cocycle %s,%s,%s" % (tag, u, v, w), ok)


def check_coboundary(atlas, omegas, etas, order, report, tag):
    """delta eta = omega symbolically under the partition relation."""
    sig = atlas.signature
    for (u, v) in omegas:
        eta_v_on_u = transport_derivation(atlas, u, v, etas[v], order)
        ok = all(
            atlas.reduce_series(
                omegas[(u, v)][bn] - (eta_v_on_u[bn] - etas[u][bn])
            ).is_zero()
            for bn in sig.base_names
        )
        report.add("%s coboundary %s%s" % (tag, u, v), ok)


# -- stage 1: the base embedding ------------------------------------------


def build_base_embedding(atlas, order, report=None):
    """Iterate extend -> mismatch -> coboundary correction up to the order."""
    report = Report() if report is None else report
    family = EmbeddingFamily.identity(atlas, 1)
    pairs = [(u, v) for (u, v) in atlas.transitions if u != v]
    for k in range(1, order):
        family = family.at_order(k + 1)
        if not pairs:
            continue
        omegas = {pair: cocycle_mismatch(family, pair, k + 1) for pair in pairs}
        if all(all(s.is_zero() for s in om.values()) for om in omegas.values()):
            report.add("embedding order %d: no mismatch" % (k + 1), True)
            continue
        check_cocycle(atlas, omegas, k + 1, report, "embedding order %d" % (k + 1))
        etas = solve_coboundary(atlas, omegas, k + 1)
        check_coboundary(atlas, omegas, etas, k + 1, report, "embedding order %d" % (k + 1))
        family = family.corrected(etas)
        residual = {pair: cocycle_mismatch(family, pair, k + 1) for pair in pairs}
        ok = all(all(s.is_zero() for s in om.values()) for om in residual.values())
        report.add("embedding order %d: consistency after correction" % (k + 1), ok)
    for u in atlas.charts:
        sig = atlas.signature
        ok = all(
            family.values[u][bn].epsilon() == CoeffExpr.var(bn) for bn in sig.base_names
        )
        report.add("epsilon o phi = id on %s" % u, ok)
    return family, report


# -- stage 2: the module splitting ----------------------------------------


def frame_matrix(atlas, u, v):
    """[xi^U_a] in the V frame: the linear block rows of T_VU, per formal var.

    Returns {U formal var -> [(V formal var, CoeffExpr over V)]}.
    """
    sig = atlas.signature
    t_vu = atlas.transition(v, u)
    out = {}
    for fa in sig.formal_names:
        img = t_vu.images[fa]
        row = []
        for fb in sig.formal_names:
            mu = [0] * sig.nformal
            mu[sig.formal_index(fb)] = 1
            c = img.coeff_of(mu)
            if not c.is_zero():
                row.append((fb, c))
        out[fa] = row
    return out


def lift_mismatch(atlas, family, lifts, pair, order):
    """Per U formal variable: lift_U(xi_a) minus the transported V-side lift
    of the same frame section; pure order `order`, homogeneous."""
    sig = atlas.signature
    u, v = pair
    t_uv = atlas.transition(u, v)
    rows = frame_matrix(atlas, u, v)
    out = {}
    for fa in sig.formal_names:
        acc = GSeries.zero(sig, family.order)
        for fb, h in rows[fa]:
            acc = acc + lifts[v][fb] * family.apply(v, h)
        transported = t_uv.pullback(acc).truncate(family.order)
        d = atlas.reduce_series(lifts[u][fa] - transported)
        low = GSeries(sig, family.order,
                      {mu: c for mu, c in d.terms.items() if mono_order(mu) < order})
        if not low.is_zero():
            raise SplittingError(
                "frame-lift mismatch on %s for pair %s below order %d" % (fa, pair, order)
            )
        out[fa] = d.slice_order(order)
    return out


def build_module_splitting(atlas, family, order, report=None):
    """A right inverse of J -> J/J^2 on the chart frames, corrected order by
    order with the partition of unity."""
    report = Report() if report is None else report
    sig = atlas.signature
    lifts = {
        u: {fa: GSeries.generator(sig, fa, order) for fa in sig.formal_names}
        for u in atlas.charts
    }
    pairs = [(u, v) for (u, v) in atlas.transitions if u != v]
    for k in range(1, order):
        if not pairs:
            break
        mism = {pair: lift_mismatch(atlas, family, lifts, pair, k + 1) for pair in pairs}
        if all(all(s.is_zero() for s in mm.values()) for mm in mism.values()):
            report.add("frame lift order %d: no mismatch" % (k + 1), True)
            continue
        if not atlas.partition:
            raise MissingPartition(
                "a partition of unity is required to correct the frame lift"
            )
        for u in atlas.charts:
            for w in atlas.charts:
                if w == u:
                    continue
                if (u, w) not in mism:
                    raise SplittingError(
                        "no frame-lift mismatch data for pair (%s, %s)" % (u, w)
                    )
                rho = atlas.partition[w]
                for fa in sig.formal_names:
                    lifts[u][fa] = lifts[u][fa] - mism[(u, w)][fa] * rho
        lifts = {
            u: {fa: atlas.reduce_series(s) for fa, s in per.items()}
            for u, per in lifts.items()
        }
        resid = {pair: lift_mismatch(atlas, family, lifts, pair, k + 1) for pair in pairs}
        ok = all(all(s.is_zero() for s in mm.values()) for mm in resid.values())
        report.add("frame lift order %d: consistency after correction" % (k + 1), ok)
    for u in atlas.charts:
        ok = True
        for fa in sig.formal_names:
            mu = [0] * sig.nformal
            mu[sig.formal_index(fa)] = 1
            lin = lifts[u][fa].truncate(1) if order >= 1 else lifts[u][fa]
            ok = ok and lin == GSeries.monomial(sig, min(1, order), mu, 1)
            ok = ok and lifts[u][fa].is_homogeneous(sig.degree_of(fa))
        report.add("frame lift on %s projects to the identity on J/J^2" % u, ok)
    return lifts, report


# -- stage 3: assembly and verification -----------------------------------


class SplittingResult:
    def __init__(self, atlas, bundle, split_atlas, family, lifts, iso, report):
        self.atlas = atlas
        self.bundle = bundle
        self.split_atlas = split_atlas
        self.family = family
        self.lifts = lifts
        self.iso = iso  # chart -> Morphism (split chart -> atlas chart)
        self.report = report


def assemble_iso(atlas, family, lifts, order):
    """Per-chart morphisms onto the split model of the extracted bundle.

    The embedding provides the coefficient images, the frame lifts the
    formal-variable images; multiplicativity on symmetric powers is then the
    pullback of the assembled coordinate morphism.
    """
    sig = atlas.signature
    bundle = extract_bundle(atlas)
    split_atlas = build_split_model(
        bundle, order, triples=atlas.triples, partition=atlas.partition
    )
    iso = {}
    for u in atlas.charts:
        images = dict(family.values[u])
        for fa in sig.formal_names:
            images[fa] = lifts[u][fa]
        iso[u] = Morphism(sig, sig, images, order)
    return bundle, split_atlas, iso


def verify_iso(atlas, split_atlas, iso, order, report=None):
    """Unitality, degree preservation, multiplicativity on generators,
    intertwining of the two atlases, and invertibility modulo J^(K+1)."""
    report = Report() if report is None else report
    sig = atlas.signature
    for u in atlas.charts:
        m = iso[u]
        one = GSeries.one(sig, order)
        report.add("iso %s: unital" % u, m.pullback(one) == one)
        ok = all(
            m.images[nm].is_homogeneous(d) for nm, d in sig.variables()
        )
        report.add("iso %s: degree-preserving" % u, ok)
        gens = [GSeries.generator(sig, nm, order) for nm, _ in sig.variables()]
        mult_ok = True
        for i in range(len(gens)):
            for j in range(i, len(gens)):
                lhs = m.pullback(gens[i] * gens[j])
                rhs = m.pullback(gens[i]) * m.pullback(gens[j])
                if not atlas.reduce_series(lhs - rhs).is_zero():
                    mult_ok = False
        report.add("iso %s: multiplicative on generators" % u, mult_ok)
        inv_ok = True
        for fa in sig.formal_names:
            mu = [0] * sig.nformal
            mu[sig.formal_index(fa)] = 1
            diag = m.images[fa].coeff_of(mu)
            if diag.as_rational() in (None, Fraction(0)):
                inv_ok = False
        report.add("iso %s: invertible modulo J^%d" % (u, order + 1), inv_ok)
    for (u, v) in atlas.transitions:
        if u == v:
            continue
        # the iso expresses split coordinates over atlas coordinates, so its
        # pullback maps split functions into the atlas; the two ways around
        # the overlap square must agree
        lhs = compose(split_atlas.transition(u, v), iso[u])
        rhs = compose(iso[v], atlas.transition(u, v))
        resid = None
        for nm, _ in sig.variables():
            d = atlas.reduce_series(lhs.images[nm] - rhs.images[nm])
            if not d.is_zero():
                from .formats import print_series

                resid = "%s: %s" % (nm, print_series(d))
                break
        report.add("iso intertwines transitions on (%s, %s)" % (u, v),
                   resid is None, resid or "")
    # the split side is in block-diagonal normal form by construction; assert
    bd_ok = True
    for (u, v), m in split_atlas.transitions.items():
        for fa in sig.formal_names:
            img = m.images[fa]
            for mu in img.terms:
                if mono_order(mu) != 1:
                    bd_ok = False
                for b, k in enumerate(mu):
                    if k and sig.degree_of(sig.formal_names[b]) != sig.degree_of(fa):
                        bd_ok = False
    report.add("split-model transitions are block diagonal", bd_ok)
    return report


def verify_result(atlas, iso, order, report=None):
    """Re-check a splitting result against its atlas from the iso data alone.

    The embedding family and frame lifts are read off the per-chart morphisms;
    every verification is recomputed, so a corrupted correction term surfaces
    as a localized residual.
    """
    report = Report() if report is None else report
    sig = atlas.signature
    family = EmbeddingFamily(
        atlas,
        {u: {bn: iso[u].images[bn] for bn in sig.base_names} for u in atlas.charts},
        order,
    )
    lifts = {
        u: {fa: iso[u].images[fa] for fa in sig.formal_names} for u in atlas.charts
    }
    for u in atlas.charts:
        ok = all(
            family.values[u][bn].epsilon() == CoeffExpr.var(bn) for bn in sig.base_names
        )
        report.add("epsilon o phi = id on %s" % u, ok)
    for (u, v) in atlas.transitions:
        if u == v:
            continue
        resid = None
        for bn in sig.base_names:
            d = mismatch_on(family, (u, v), CoeffExpr.var(bn))
            if not d.is_zero():
                from .formats import print_series

                resid = "%s: %s" % (bn, print_series(d))
                break
        report.add("embedding consistency on (%s, %s)" % (u, v), resid is None, resid or "")
        rows = frame_matrix(atlas, u, v)
        t_uv = atlas.transition(u, v)
        resid = None
        for fa in sig.formal_names:
            acc = GSeries.zero(sig, order)
            for fb, h in rows[fa]:
                acc = acc + lifts[v][fb] * family.apply(v, h)
            d = atlas.reduce_series(lifts[u][fa] - t_uv.pullback(acc).truncate(order))
            if not d.is_zero():
                from .formats import print_series

                resid = "%s: %s" % (fa, print_series(d))
                break
        report.add("frame-lift consistency on (%s, %s)" % (u, v), resid is None, resid or "")
    bundle = extract_bundle(atlas)
    split_atlas = build_split_model(
        bundle, order, triples=atlas.triples, partition=atlas.partition
    )
    report = verify_iso(atlas, split_atlas, iso, order, report)
    return report


def split(atlas, order):
    """The full pipeline: validate, embed, lift, assemble, verify."""
    report = Report()
    vrep = validate_atlas(atlas)
    report.extend(vrep)
    if not vrep.passed:
        raise SplittingError("atlas gluing data is inconsistent:\n%s" % vrep)
    family, report = build_base_embedding(atlas, order, report)
    lifts, report = build_module_splitting(atlas, family, order, report)
    bundle, split_atlas, iso = assemble_iso(atlas, family, lifts, order)
    report = verify_iso(atlas, split_atlas, iso, order, report)
    return SplittingResult(atlas, bundle, split_atlas, family, lifts, iso, report)
