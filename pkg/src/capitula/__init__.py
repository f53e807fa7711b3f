"""capitula: exact calculators for capitulation kernels, ambiguous divisor
classes and the cohomology of S-units, with a brute-force function-field
oracle over small Artin-Schreier and Kummer curves.

The package is organized around six pieces: `abelian` (Smith normal form
and finite abelian group arithmetic), `cohomology` (Tate cohomology of
cyclic and small abelian groups), `profile` (local data of a Galois
extension of global fields), `formulas` (the theorem-level calculators),
`fforacle` (the curve oracle) and `cli`/`verify` (front end and the
cross-verification suites).
"""

from .abelian import AbHom, FinAbGroup, cokernel, ell_rank, image_order, kernel, \
    smith_normal_form, sum_map_kernel
from .cohomology import AbelianGroup, Cyclic, GModule, h1_cyclic, h2_cyclic, \
    h_general, herbrand_quotient, hom_g_dual, multiplicative_group_module, tate_h0
from .errors import CapitulaError, DegenerateExtensionError, HypothesisError, \
    InconsistencyError, ResourceError, UnsupportedError, ValidationError
from .profile import ExtensionProfile, FunctionField, GroupShape, NumberField, \
    PlaceProfile, compute_D_n0, compute_dv, profile_from_json, profile_to_json, validate

__version__ = "0.1.0"
