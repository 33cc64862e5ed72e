"""Morphisms and Taylor pullbacks.

A morphism maps each target variable to a degree-matching series over the
source.  Pulling back a smooth coefficient function F through a base image
x' = x + (nilpotent) expands F as a finite Taylor series in the nilpotent
part -- exactly, with rational coefficients.
"""

from z2nsuper import CoeffExpr, GSeries, Morphism, Signature, compose

sig = Signature(2, [("x", "00"), ("y", "11"), ("xi", "01"), ("eta", "10")])
K = 6

y2 = GSeries.generator(sig, "y", K) ** 2
m = Morphism(sig, sig, {
    "x": GSeries.generator(sig, "x", K) + y2,
    "y": GSeries.generator(sig, "y", K),
    "xi": GSeries.generator(sig, "xi", K),
    "eta": GSeries.generator(sig, "eta", K),
}, K)

print("Coordinate change: x' = x + y^2 at truncation K = 6")
print()

F = GSeries.from_coeff(sig, K, CoeffExpr.app("F", [CoeffExpr.var("x")]))
print("Pullback of an opaque smooth function F(x'):")
print("  ", m.pullback(F))
print()
print("The expansion stops by itself: y^8 exceeds the truncation, so only")
print("derivatives up to F''' appear, each with its exact 1/alpha! factor.")
print()

G = GSeries.generator(sig, "xi", K) * CoeffExpr.app("g", [CoeffExpr.var("x")])
print("Pullback is an algebra morphism; on  g(x') xi  it gives:")
print("  ", m.pullback(G))
print()

c = compose(m, m)
print("Composition (m after m) sends x to:")
print("  ", c.images["x"])
