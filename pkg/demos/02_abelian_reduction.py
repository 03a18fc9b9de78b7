"""
Reducing a translation action
=============================

R acts on T*R^2 by moving q0; the momentum map is p0 (labels are 0-based,
as in the printed output). The cohomology at ghost
number zero should look like polynomials in the remaining pair (q1, p1), and
the deformed restriction should turn the quantized product into plain Moyal
in those variables.
"""

from brst.homology import (DeformedRestriction, brst_cohomology, brst_quotient,
                           check_restriction_properties, reduced_monomials, reduced_star)
from brst.manifest import load_manifest
from brst.weyl import PolyObservable, moyal_star

manifest = load_manifest("abelian-t2")
ctx = manifest.context(order=3, poly_degree=3)

print("degree  dim H  dim H~  reduced monomials  H~ -> H")
for d in range(4):
    H = brst_cohomology(0, ctx, d)
    Q = brst_quotient(0, ctx, d, cohomology=H)
    iso = Q.comparison["injective"] and Q.comparison["surjective"]
    want = len(reduced_monomials(manifest.lie, manifest.constrained, d))
    print(f"{d:>6}  {H.dim:>5}  {Q.dim:>6}  {want:>17}  {'iso' if iso else 'no'}")

# representatives at degree 2
H = brst_cohomology(0, ctx, 2)
for rep in H.representatives():
    print("  class of", rep)

# the deformed restriction and its defining properties
res = DeformedRestriction(manifest.lie, manifest.constrained, 3)
for name, (ok, witness) in check_restriction_properties(res, 4).items():
    print(f"{name:<30} {'ok' if ok else witness}")

q0 = PolyObservable.q(0, 2, 3)
p0 = PolyObservable.p(0, 2, 3)
print("restriction of q0 p0 =", res(q0.pointwise(p0)))

# reduced product against Moyal in (q1, p1)
q1 = PolyObservable.q(1, 2, 3)
p1 = PolyObservable.p(1, 2, 3)
u, v = p1.pointwise(p1), q1.pointwise(q1)
print("u *red v =", reduced_star(res, u, v))
print("u * v    =", moyal_star(u, v))
