"""Exact truncated power series over a graded signature.

Series live over a signature: degree-0 base coordinates carry symbolic
smooth coefficients, nonzero-degree formal variables generate the algebra
under the sign rule, and everything is exact modulo J^(K+1) for a chosen
truncation order K.
"""

from fractions import Fraction

from z2nsuper import CoeffExpr, GSeries, Signature, normal_form

sig = Signature(2, [("x", "00"), ("y", "11"), ("xi", "01"), ("eta", "10")])
K = 4

x = CoeffExpr.var("x")
y = GSeries.generator(sig, "y", K)
xi = GSeries.generator(sig, "xi", K)
eta = GSeries.generator(sig, "eta", K)

print("Signature:", sig)
print()

print("xi and eta are self-odd, so they square to zero:")
print("  xi^2  =", xi * xi)
print("y has degree 11 (self-even): its powers survive up to the cutoff K=4:")
print("  y^4   =", y ** 4)
print("  y^5   =", y ** 5, " (killed by truncation only)")
print()

print("Noncommutativity is tracked exactly:")
print("  xi * y       =", xi * y)
print("  y * xi       =", y * xi)
print("  xi*y + y*xi  =", xi * y + y * xi)
print()

print("Words normal-order with the correct Koszul sign:")
print("  normal_form([eta, y, xi]) =", normal_form(["eta", "y", "xi"], sig, K))
print()

s = GSeries.one(sig, K) + xi * eta * CoeffExpr.app("f", [x])
print("A unit plus nilpotent part:  s =", s)
print("  s^2 =", s * s)
print("  s^3 =", s ** 3)
print()

t = GSeries.from_coeff(sig, K, x) + y * Fraction(1, 2)
print("Mixed series:  t =", t)
print("  t * s =", t * s)
print("  augmentation epsilon(t) =", t.epsilon())
print("  J-adic order of (t - epsilon(t)) =", (t - GSeries.from_coeff(sig, K, t.epsilon())).j_order())
