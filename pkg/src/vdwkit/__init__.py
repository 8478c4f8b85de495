"""Ground-state van der Waals potentials of polarizable and magnetizable
atoms near macroscopic bodies: half spaces, bulk media and spheres.

All quantities are in reduced units: lengths in lambda_bar = c/omega_ref,
imaginary frequencies as u = xi/omega_ref, energies in hbar*omega_ref.
"""

from .errors import (NonConvergenceError, QuadratureNonConvergence,
                     SeriesNonConvergence)
from .halfspace import (HalfSpaceScene, halfspace_Ue, halfspace_Ue_nonretarded,
                        halfspace_Ue_retarded, halfspace_Um)
from .pair_kernels import (BulkScene, PotentialBreakdown, bulk_pair_nonretarded,
                           bulk_pair_potential, bulk_pair_retarded,
                           freespace_pair_potential, g_kernel, h_kernel)
from .quadrature import QuadratureSpec, integrate_interval, integrate_semi_infinite
from .response import (AtomModel, LocalFieldContext, MaterialModel,
                       ReducedUnits, atom_alpha_iu, atom_beta_iu, eps_iu,
                       lf_electric, lf_magnetic, mu_iu, refractive_iu)
from .specfun import (LegendreEval, ScaledBessel, double_factorial,
                      legendre_pn_dpn, modified_spherical_bessel)
from .sphere import (K1Components, MieTermCache, SphereScene,
                     k1_tensor_components, mie_coefficients, sphere_Uee_Umm_numeric,
                     sphere_Uem, sphere_Uem_large, sphere_Uem_small, sphere_Ume)

__version__ = "0.1.0"

__all__ = [
    "AtomModel", "BulkScene", "HalfSpaceScene", "K1Components", "LegendreEval",
    "LocalFieldContext", "MaterialModel", "MieTermCache", "NonConvergenceError",
    "PotentialBreakdown", "QuadratureNonConvergence", "QuadratureSpec",
    "ReducedUnits", "ScaledBessel", "SeriesNonConvergence", "SphereScene",
    "atom_alpha_iu", "atom_beta_iu", "bulk_pair_nonretarded",
    "bulk_pair_potential", "bulk_pair_retarded", "double_factorial", "eps_iu",
    "freespace_pair_potential", "g_kernel", "h_kernel", "halfspace_Ue",
    "halfspace_Ue_nonretarded", "halfspace_Ue_retarded", "halfspace_Um",
    "integrate_interval", "integrate_semi_infinite", "k1_tensor_components",
    "legendre_pn_dpn", "lf_electric", "lf_magnetic", "mie_coefficients",
    "modified_spherical_bessel", "mu_iu", "refractive_iu",
    "sphere_Uee_Umm_numeric", "sphere_Uem", "sphere_Uem_large",
    "sphere_Uem_small", "sphere_Ume",
]
