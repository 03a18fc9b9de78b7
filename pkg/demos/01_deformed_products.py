"""
Deformed products on the two factors
====================================

The ghost factor carries a deformed wedge product and the phase-space factor
the Moyal product. Both are exact: coefficients are Gaussian rationals and the
formal parameter is truncated at a fixed order.
"""

from brst import Multivector, PolyObservable
from brst.grassmann import MetricData, circ_std, involution_star, rho_std, wedge
from brst.weyl import moyal_star, poisson_bracket

N = 3

# one ghost and one antighost
e_up = Multivector.ghost(0, N)
e_dn = Multivector.antighost(0, N)

# the plain wedge anticommutes, the deformed one picks up a scalar
print("e_0 ^ e^0      =", wedge(e_dn, e_up))
print("e_0 o e^0      =", circ_std(e_dn, e_up))
print("e^0 o e_0      =", circ_std(e_up, e_dn))

# acting on forms: ghosts wedge in, antighosts contract with a factor 2iλ
form = Multivector.ghost(0, N)
print("rho(e_0) e^0   =", rho_std(e_dn, form))

# the involution with the identity metric
metric = MetricData.identity(1)
print("(e^0)*         =", involution_star(e_up, metric))

# Moyal product on T*R
q = PolyObservable.q(0, 1, N)
p = PolyObservable.p(0, 1, N)
print()
print("q * p          =", moyal_star(q, p))
print("p * q          =", moyal_star(p, q))
print("{q, p}         =", poisson_bracket(q, p))
print("q^2 * p^2      =", moyal_star(q.pointwise(q), p.pointwise(p)))
