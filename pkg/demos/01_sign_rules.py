"""Degrees and the scalar-product sign rule.

Z2^n-graded commutative algebra generalizes supercommutativity: the
commutation sign between homogeneous elements is (-1)^<a, b> with <., .>
the bit-vector dot product.  For n >= 2 this produces phenomena impossible
in the super world: even elements that anticommute and odd elements that
commute.
"""

from z2nsuper import Degree, enumerate_nonzero_degrees, is_self_odd, parity, sign_factor

print("All nonzero degrees of Z2^2, canonical (lex) order:")
for d in enumerate_nonzero_degrees(2):
    print("  %s  parity=%s  self-odd=%s" % (d, parity(d), is_self_odd(d)))

print()
print("Hallmark sign-rule cases in Z2^3:")
cases = [
    ("110", "101", "both even, yet they anticommute"),
    ("100", "010", "both odd, yet they commute"),
    ("110", "110", "even self-pair: squares do not vanish"),
    ("100", "100", "odd self-pair: squares vanish"),
]
for a, b, why in cases:
    s = sign_factor(Degree.parse(a), Degree.parse(b))
    print("  <%s, %s> -> %+d   (%s)" % (a, b, s, why))

print()
print("Full sign table for n = 2:")
degs = [Degree.parse(t) for t in ("00", "01", "10", "11")]
print("      " + "  ".join(str(d) for d in degs))
for a in degs:
    row = "  ".join("%+d" % sign_factor(a, b) for b in degs)
    print("  %s  %s" % (a, row))
