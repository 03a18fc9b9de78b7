"""
Positive functionals and the GNS module
=======================================

The scalar-part functional on the deformed Grassmann algebra is positive in
the ring order. Its GNS module is the form space, with the inner product
rescaled by powers of 2λ.
"""

from brst.grassmann import MetricData, Multivector
from brst.positivity import (delta_functional, gns_construct, gns_intertwiner, hermitian_pair,
                             intertwiner_is_isometric, matrix_model, harmonic_space,
                             positivity_witness)

metric = MetricData.identity(2)
delta = delta_functional(2, 4)

# a Hermitian element and a vector that detects it
h = hermitian_pair((0,), (1,), (0, 1), 4)
b, value = positivity_witness(h, metric)
print("h        =", h)
print("witness  =", b)
print("value    =", value)

space = gns_construct(delta, metric)
print()
print(space)
print("Gel'fand ideal rank", space.ideal.dim, "with", len(space.ideal.torsion()),
      "torsion generators")
for i, rep in enumerate(space.representatives):
    print(f"  psi_{i} = {rep}   <psi, psi> = {space.gram[i][i]}")
verdict, pivots = space.is_positive_definite()
print("positive definite:", verdict)

T, rank = gns_intertwiner(space)
print("intertwiner solutions:", rank, " isometric:", intertwiner_is_isometric(space, T)[0])

# harmonic space for a nilpotent 3x3 differential
hr = harmonic_space(matrix_model([[1, 0, 0], [0, 1, 0], [0, 0, 1]],
                                 [[0, 0, 1], [0, 0, 0], [0, 0, 0]], 3))
print()
print("harmonic dim", hr.dim, " cohomology dim", hr.cohomology_dim, " agree", hr.agree)
print("harmonic vectors:", hr.harmonic.generators())
