"""Supermanifolds as finite atlases of superdomain charts.

The base manifold is combinatorial: named charts over a shared signature, a
declared nerve of ordered overlap pairs and triples, and one transition
morphism per ordered pair.  T_UV maps chart-V coordinates to series over
chart U, so its pullback carries functions written in U coordinates to V...
read contravariantly: T_UV.images give the V variables in terms of U.
Partitions of unity are symbolic chart-indexed coefficients whose sum is
declared to be 1 and enforced by eagerly rewriting one chosen symbol.
"""

from __future__ import annotations

from fractions import Fraction

from .coeffexpr import CoeffExpr, normalize_expr
from .degrees import Degree, Signature, enumerate_nonzero_degrees
from .gseries import GSeries, mono_order
from .morphisms import Morphism, compose


class AtlasError(ValueError):
    pass


class CheckResult:
    """A single named verification outcome."""

    def __init__(self, name, passed, detail=""):
        self.name = name
        self.passed = passed
        self.detail = detail

    def __repr__(self):
        return "[%s] %s%s" % ("pass" if self.passed else "FAIL", self.name,
                              (": " + self.detail) if self.detail else "")


class Report:
    def __init__(self, checks=None):
        self.checks = list(checks or [])

    def add(self, name, passed, detail=""):
        self.checks.append(CheckResult(name, passed, detail))

    def extend(self, other):
        self.checks.extend(other.checks)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def __str__(self):
        return "\n".join(repr(c) for c in self.checks)


class Atlas:
    """Charts over a shared signature, glued by transition morphisms."""

    def __init__(self, signature, order, charts, pairs, triples, transitions, partition=None):
        self.signature = signature
        self.order = order
        self.charts = list(charts)
        self.pairs = [tuple(p) for p in pairs]
        self.triples = [tuple(t) for t in triples]
        self.transitions = dict(transitions)
        self.partition = dict(partition) if partition else None
        names = set(self.charts)
        for u, v in self.pairs:
            if u not in names or v not in names:
                raise AtlasError("pair (%s, %s) names an unknown chart" % (u, v))
        for pair in self.transitions:
            if tuple(pair) not in self.pairs:
                raise AtlasError("transition for undeclared pair %s" % (pair,))
        if self.partition is not None and set(self.partition) != names:
            raise AtlasError("partition must assign every chart")

    def transition(self, u, v):
        """T_UV, the morphism expressing chart-V coordinates over chart U."""
        if u == v:
            return Morphism.identity(self.signature, self.order)
        try:
            return self.transitions[(u, v)]
        except KeyError:
            raise AtlasError("no transition declared for pair (%s, %s)" % (u, v)) from None

    # -- partition of unity ----------------------------------------------

    def partition_reduce(self, expr):
        """Rewrite the last chart's partition symbol via sum(rho) = 1.

        Only applies when the partition functions are opaque applications of
        the base coordinates; other coefficient data is left untouched.
        """
        if not self.partition:
            return normalize_expr(expr)
        last = self.charts[-1]
        target = self.partition[last]
        tterms = target.terms()
        if len(tterms) != 1:
            return normalize_expr(expr)
        (mono, c0), = tterms.items()
        if c0 != 1 or len(mono) != 1 or mono[0][1] != 1:
            return normalize_expr(expr)
        atom = mono[0][0]
        from .coeffexpr import App, Var

        if not isinstance(atom, App) or any(atom.alpha):
            return normalize_expr(expr)
        argnames = []
        for a in atom.args:
            t = a.terms()
            if len(t) == 1:
                (m, c), = t.items()
                if c == 1 and len(m) == 1 and m[0][1] == 1 and isinstance(m[0][0], Var):
                    argnames.append(m[0][0].name)
                    continue
            return normalize_expr(expr)
        replacement = CoeffExpr.rational(1)
        for u in self.charts[:-1]:
            replacement = replacement - self.partition[u]

        def handler(alpha, args):
            out = replacement
            for j, k in enumerate(alpha):
                for _ in range(k):
                    out = out.diff(argnames[j])
            return out.substitute_vars(dict(zip(argnames, args)))

        return normalize_expr(expr).substitute_app(atom.func, handler)

    def reduce_series(self, s):
        return s.map_coeffs(self.partition_reduce)

    def series_is_zero(self, s):
        return self.reduce_series(s).is_zero()


def validate_atlas(atlas):
    """Identity, inverse, and triple-cocycle conditions modulo J^(K+1)."""
    report = Report()
    ident = Morphism.identity(atlas.signature, atlas.order)
    for (u, v), m in sorted(atlas.transitions.items()):
        if u == v:
            report.add("identity-transition %s%s" % (u, v), m == ident)
    done = set()
    for (u, v) in sorted(atlas.transitions):
        if u == v or (v, u) in done:
            continue
        done.add((u, v))
        if (v, u) not in atlas.transitions:
            report.add(
                "inverse-condition %s<->%s" % (u, v),
                False,
                "reverse transition not declared",
            )
            continue
        c = compose(atlas.transition(v, u), atlas.transition(u, v))
        resid = _residual(atlas, c, ident)
        report.add("inverse-condition %s<->%s" % (u, v), resid is None, resid or "")
    for u, v, w in atlas.triples:
        lhs = compose(atlas.transition(v, w), atlas.transition(u, v))
        rhs = atlas.transition(u, w)
        resid = _residual(atlas, lhs, rhs)
        report.add("triple-cocycle %s,%s,%s" % (u, v, w), resid is None, resid or "")
    return report


def _residual(atlas, m1, m2):
    """None when equal after partition reduction; else the first offending image."""
    for name, _ in atlas.signature.variables():
        diff = atlas.reduce_series(m1.images[name] - m2.images[name])
        if not diff.is_zero():
            from .formats import print_series

            return "%s: %s" % (name, print_series(diff))
    return None


class GradedBundleData:
    """A Z2^n\\{0}-graded vector bundle by transition data on a nerve.

    For each nonzero degree (canonical lex index k) and ordered pair (U, V),
    an invertible q_k x q_k matrix of CoeffExprs; base transitions map each
    base coordinate to a CoeffExpr over the other chart.
    """

    def __init__(self, signature, charts, pairs, matrices, base_transitions=None):
        self.signature = signature
        self.charts = list(charts)
        self.pairs = [tuple(p) for p in pairs]
        # matrices: (u, v) -> {degree: [[CoeffExpr]]}
        self.matrices = {
            pair: {d: [[normalize_expr(e) for e in row] for row in mat] for d, mat in per.items()}
            for pair, per in matrices.items()
        }
        # missing base transitions default to the coordinate identity
        self.base_transitions = {}
        for pair in self.matrices:
            given = (base_transitions or {}).get(pair, {})
            self.base_transitions[pair] = {
                bn: normalize_expr(given[bn]) if bn in given else CoeffExpr.var(bn)
                for bn in signature.base_names
            }

    def degrees_present(self):
        sig = self.signature
        return [d for d in enumerate_nonzero_degrees(sig.n, "lex")
                if any(sig.degree_of(nm) == d for nm in sig.formal_names)]

    def block_vars(self, d):
        sig = self.signature
        return [nm for nm in sig.formal_names if sig.degree_of(nm) == d]

    def __eq__(self, other):
        return (
            isinstance(other, GradedBundleData)
            and self.signature == other.signature
            and self.charts == other.charts
            and sorted(self.pairs) == sorted(other.pairs)
            and self.matrices == other.matrices
            and self.base_transitions == other.base_transitions
        )


def build_split_model(bundle, order, triples=(), partition=None):
    """The split-model atlas of a graded vector bundle.

    Transitions act linearly on the formal variables through the per-degree
    matrices and by the base transitions on the base coordinates, so they are
    block diagonal per degree (the split normal form).
    """
    sig = bundle.signature
    transitions = {}
    for (u, v) in bundle.pairs:
        if u == v:
            continue
        images = {}
        base = bundle.base_transitions.get((u, v))
        for bn in sig.base_names:
            if base and bn in base:
                images[bn] = GSeries.from_coeff(sig, order, base[bn])
            else:
                images[bn] = GSeries.generator(sig, bn, order)
        for d in bundle.degrees_present():
            vars_d = bundle.block_vars(d)
            mat = bundle.matrices[(u, v)][d]
            for i, tv in enumerate(vars_d):
                acc = GSeries.zero(sig, order)
                for j, sv in enumerate(vars_d):
                    g = normalize_expr(mat[i][j])
                    if not g.is_zero():
                        acc = acc + GSeries.generator(sig, sv, order) * g
                if acc.is_zero():
                    raise AtlasError(
                        "degree-%s block row %d of pair (%s, %s) is zero" % (d, i, u, v)
                    )
                images[tv] = acc
        transitions[(u, v)] = Morphism(sig, sig, images, order)
    return Atlas(sig, order, bundle.charts, bundle.pairs, list(triples), transitions, partition)


def extract_bundle(atlas):
    """Reduce each transition modulo J^2: the graded-bundle cocycle of the atlas."""
    sig = atlas.signature
    matrices = {}
    base_transitions = {}
    for (u, v), m in atlas.transitions.items():
        if u == v:
            continue
        per_degree = {}
        for d in enumerate_nonzero_degrees(sig.n, "lex"):
            vars_d = [nm for nm in sig.formal_names if sig.degree_of(nm) == d]
            if not vars_d:
                continue
            mat = []
            for tv in vars_d:
                row = []
                img = m.images[tv]
                for sv in vars_d:
                    mu = [0] * sig.nformal
                    mu[sig.formal_index(sv)] = 1
                    row.append(img.coeff_of(mu))
                mat.append(row)
            per_degree[d] = mat
        matrices[(u, v)] = per_degree
        base_transitions[(u, v)] = m.base_map()
    bundle = GradedBundleData(
        sig, atlas.charts, [p for p in atlas.pairs if p[0] != p[1] and p in atlas.transitions],
        matrices, base_transitions,
    )
    return bundle
