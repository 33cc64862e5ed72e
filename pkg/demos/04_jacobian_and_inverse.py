"""Graded Jacobians, the block law, and formal inversion.

Every entry of the Jacobian of a degree-preserving morphism is homogeneous
of degree deg(target row) + deg(source column): the matrix decomposes into
degree blocks.  Morphisms with invertible linear part invert exactly modulo
J^(K+1) by filtered fixed-point iteration.
"""

from z2nsuper import GSeries, Morphism, Signature, compose, invert, jacobian

sig = Signature(2, [("x", "00"), ("y", "11"), ("xi", "01"), ("eta", "10")])
K = 4

y = GSeries.generator(sig, "y", K)
xi = GSeries.generator(sig, "xi", K)
eta = GSeries.generator(sig, "eta", K)

m = Morphism(sig, sig, {
    "x": GSeries.generator(sig, "x", K) + y ** 2,
    "y": y + xi * eta,
    "xi": xi,
    "eta": eta + y * xi,   # degree 10 = 11 + 01
}, K)

print("Morphism: x' = x + y^2,  y' = y + xi eta,  xi' = xi,  eta' = eta + y xi")
print()

jac = jacobian(m)
print("Graded Jacobian (rows: target variables, columns: source variables):")
for tv in jac.rows:
    for sv in jac.cols:
        e = jac.entry(tv, sv)
        if not e.is_zero():
            print("  d%s/d%s = %-14s  degree block %s" %
                  (tv, sv, str(e), jac.expected_degree(tv, sv)))
print()
print("Block law holds:", jac.check_blocks())
print()

minv = invert(m)
print("Formal inverse sends the variables to:")
for nm, _ in sig.variables():
    print("  %s -> %s" % (nm, minv.images[nm]))
print()

ident = Morphism.identity(sig, K)
print("inverse o m == id:", compose(minv, m) == ident)
print("m o inverse == id:", compose(m, minv) == ident)
