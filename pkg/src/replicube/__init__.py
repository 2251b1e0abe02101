"""replicube: a numerical laboratory for polymatrix replicators on the
cube, built around a one-parameter family with Shilnikov-type chaos."""

from .core import (MU_MIN, MU_MAX, PolymatrixGame, build_family_matrix,
                   general_vector_field, cube_vector_field, cube_jacobian,
                   embed, project, load_game)
from .equilibria import (Equilibrium, EigenData, closed_form_equilibria,
                         closed_form_eigenvalues, eigen_analysis,
                         numeric_equilibria, plane_residual,
                         existence_interval, interior_location)
from .bifurcation import (BifurcationEvent, scan, refine, classify_case,
                          hopf_values, belyakov_value, hopf_cycle_check,
                          TRANSCRITICAL_VALUES)
from .flow import (Trajectory, OmegaLimitReport, integrate,
                   integrate_with_tangents, classify_omega_limit,
                   default_section)
from .lyapunov import (LyapunovSpectrum, initial_condition, spectrum, sweep,
                       estimate_mu_SA, THRESHOLD)
from .geometry import (ManifoldTrace, SectionMap, shilnikov_condition,
                       trace_unstable, trace_stable, heteroclinic_probe,
                       homoclinic_proximity, poincare_map)

__version__ = "0.1.0"
