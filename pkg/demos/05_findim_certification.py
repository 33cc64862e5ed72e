"""Graded-commutativity certification of finite-dimensional algebras.

The quaternions are famously noncommutative -- but they become graded
commutative for the scalar-product sign rule once i, j, k carry the three
even nonzero degrees of Z2^3.  The engine both certifies a given degree
assignment and searches for all of them exhaustively.
"""

from z2nsuper import (
    Degree,
    check_graded_commutative,
    clifford_algebra,
    quaternion_algebra,
    search_degree_assignments,
)

H = quaternion_algebra()
print("Quaternion structure constants: i*j = k, j*i = -k, i^2 = -1, ...")
print()

asg = {"one": Degree.parse("000"), "i": Degree.parse("011"),
       "j": Degree.parse("101"), "k": Degree.parse("110")}
ok, violations = check_graded_commutative(H, asg)
print("Assignment i->011, j->101, k->110 certifies:", ok)
print()

print("All certifying assignments over Z2^3 (exhaustive search):")
for found in search_degree_assignments(H, 3):
    print("  " + "  ".join("%s:%s" % (lb, found[lb]) for lb in H.labels))
print()
print("Over Z2^1 (classical super) there are none:",
      search_degree_assignments(H, 1))
print()

bad = {"one": Degree.parse("000"), "i": Degree.parse("100"),
       "j": Degree.parse("010"), "k": Degree.parse("110")}
ok, violations = check_graded_commutative(H, bad)
print("Odd degrees on i and j fail (they would have to commute):", not ok)
def show(prod):
    return " + ".join("%s %s" % (c, H.labels[k]) for k, c in sorted(prod.items()))


for i, j, pij, pji in violations[:2]:
    print("  violation: %s*%s = %s but %s*%s = %s" % (i, j, show(pij), j, i, show(pji)))
print()

cl = clifford_algebra(1, 1)
print("Cl(1,1) (dim %d) also certifies over Z2^3: %d assignments" %
      (cl.dim, len(search_degree_assignments(cl, 3))))
