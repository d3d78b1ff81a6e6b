"""1D effective QED of the hydrogen-like atom with contact interactions.

Exact Dirac states of the delta-well atom, the vacuum-polarization density
by spectral, commutator and resolvent routes, the Uehling-type first-order
density, vacuum charge bookkeeping, and the four first-order QED
corrections to the bound-state energy.  Hartree atomic units throughout.
"""

from .model import (
    ModelParams,
    DerivedParams,
    Spinor,
    Branch,
    Parity,
    StateLabel,
    derive,
    nonrel_expansion,
    dispersion,
    bound_spinor,
    free_state,
    phase_shifts,
    scattering_state,
    boundary_matrix,
    electron_density_matrix,
)
from .quadrature import QuadratureError, QuadratureSpec, QuadResult
from .vacuum import (
    vp_density,
    vp_density_matrix,
    vp_density_commutator,
    vp_current,
    vacuum_charge_summary,
)
from .green import (
    free_resolvent,
    resolvent_correction,
    vp_density_green,
    uehling_density,
    vacuum_numbers,
)
from .energy import EnergyBreakdown, breakdown, total_vp_correction

__version__ = "0.1.0"

__all__ = [
    "ModelParams",
    "DerivedParams",
    "Spinor",
    "Branch",
    "Parity",
    "StateLabel",
    "derive",
    "nonrel_expansion",
    "dispersion",
    "bound_spinor",
    "free_state",
    "phase_shifts",
    "scattering_state",
    "boundary_matrix",
    "electron_density_matrix",
    "QuadratureError",
    "QuadratureSpec",
    "QuadResult",
    "vp_density",
    "vp_density_matrix",
    "vp_density_commutator",
    "vp_current",
    "vacuum_charge_summary",
    "free_resolvent",
    "resolvent_correction",
    "vp_density_green",
    "uehling_density",
    "vacuum_numbers",
    "EnergyBreakdown",
    "breakdown",
    "total_vp_correction",
    "__version__",
]
