"""Exact quantum BRST computations at desk scale.

Coefficients live in Q(i)[λ]/(λ^(N+1)); observables are polynomials on
T*R^n with the Moyal product; the Grassmann factor carries the standard
ordered product. On top of these sit the BRST differentials, sector-wise
cohomology and BRST quotient, deformed restriction and reduced products,
and positivity / GNS constructions for the deformed Grassmann algebra.
"""

from .errors import (BrstError, CapacityError, ConfigurationError, ContainmentError,
                     DomainError, LiftingError, ManifestError, NotAUnit)
from .scalars import FormalScalar, gauss
from .grassmann import (MetricData, Multivector, circ_std, gamma, inner_product,
                        involution_star, rho_std, wedge)
from .weyl import LieData, PolyObservable, moyal_star, poisson_bracket
from .algebra import (BrstContext, BrstElement, adjoint_brst, brst_involution, classical_brst,
                      quantum_brst, quantum_koszul, star_std)
from .linalg import SubspaceBasis, intersection, kernel, image, quotient_basis, smith
from .homology import (brst_cohomology, brst_quotient, deformed_restriction, reduced_star,
                       SectorBasis)
from .positivity import (delta_functional, gns_construct, harmonic_space, positivity_witness)
from .manifest import Manifest, load_manifest, shipped_fixtures
from .report import Entry, Report, emit_report, parse_report
from .suites import run, run_suite

__version__ = "0.1.0"
