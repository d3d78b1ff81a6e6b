"""Closed-form states of the 1D relativistic hydrogen-like atom.

The electron is a two-component Dirac spinor on the line, with Hamiltonian
c*sigma1*p_x + sigma3*m*c^2 plus an attractive contact potential -Z*delta(x).
The contact term acts through a unitary jump matrix M at the origin,
psi(0+) = M psi(0-), with mixing angle theta fixed by tan(theta/2) = Z/(2c).

Everything here is analytic: the single bound state, the free and scattered
continuum states of both energy branches and parities, their phase shifts,
and the occupied-orbital density matrix.  Hartree atomic units throughout;
sgn(0) = 0 by convention, so one-sided origin limits are provided separately
for boundary-condition checks.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

__all__ = [
    "ModelParams",
    "DerivedParams",
    "Dispersion",
    "Spinor",
    "Branch",
    "Parity",
    "StateLabel",
    "PhaseShifts",
    "RestExpansion",
    "derive",
    "nonrel_expansion",
    "dispersion",
    "bound_spinor",
    "bound_origin_limits",
    "free_state",
    "phase_shifts",
    "scattering_state",
    "scattering_origin_limits",
    "boundary_matrix",
    "electron_density_matrix",
    "electron_density",
    "electron_current",
]


def sgn(x: float) -> float:
    """Sign function with sgn(0) = 0."""
    if x > 0.0:
        return 1.0
    if x < 0.0:
        return -1.0
    return 0.0


@dataclass(frozen=True)
class ModelParams:
    """Physical inputs: nuclear charge Z, speed of light c, electron mass m.

    Valid window 0 <= Z <= 2c (bound-state energy stays non-negative);
    construction rejects anything outside it.
    """

    Z: float
    c: float = 137.036
    m: float = 1.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.Z) and math.isfinite(self.c) and math.isfinite(self.m)):
            raise ValueError("parameters must be finite")
        if self.c <= 0.0:
            raise ValueError("c must be positive")
        if self.m <= 0.0:
            raise ValueError("m must be positive")
        if not 0.0 <= self.Z <= 2.0 * self.c:
            raise ValueError(f"Z must lie in [0, 2c] = [0, {2.0 * self.c}]; got {self.Z}")

    @property
    def mc2(self) -> float:
        """Rest energy m*c^2."""
        return self.m * self.c * self.c


@dataclass(frozen=True)
class DerivedParams:
    """Closed-form quantities of the bound state.

    lam       : coupling ratio Z/(2c), in [0, 1]
    theta     : origin jump angle, tan(theta/2) = lam
    kappa     : bound-state decay constant 2*m*c*lam/(1+lam^2)
    amplitude : bound-state normalization sqrt(kappa/(1+lam^2))
    energy    : bound-state energy m*c^2*(1-lam^2)/(1+lam^2)
    """

    params: ModelParams
    lam: float
    theta: float
    kappa: float
    amplitude: float
    energy: float


def derive(params: ModelParams) -> DerivedParams:
    """Derived bound-state parameters from the physical inputs."""
    lam = params.Z / (2.0 * params.c)
    denom = 1.0 + lam * lam
    kappa = 2.0 * params.m * params.c * lam / denom
    return DerivedParams(
        params=params,
        lam=lam,
        theta=2.0 * math.atan(lam),
        kappa=kappa,
        amplitude=math.sqrt(kappa / denom),
        energy=params.mc2 * (1.0 - lam * lam) / denom,
    )


class RestExpansion(NamedTuple):
    """Large-c expansion of the bound-state energy, term by term."""

    rest: float
    nonrel: float
    leading_correction: float


def nonrel_expansion(params: ModelParams) -> RestExpansion:
    """Rest energy, non-relativistic binding and leading relativistic correction.

    The expansion is m*c^2 - m*Z^2/2 + m*Z^4/(8 c^2) + O(1/c^4); note the
    positive sign of the 1/c^2 term, opposite to the 3D Coulomb atom.
    """
    m, Z, c = params.m, params.Z, params.c
    return RestExpansion(params.mc2, -m * Z * Z / 2.0, m * Z**4 / (8.0 * c * c))


# ---------------------------------------------------------------------------
# Continuum kinematics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Dispersion:
    """Relativistic kinematics of a continuum mode with momentum k >= 0.

    energy          : eps_k = sqrt(k^2 c^2 + m^2 c^4)
    s               : small-component ratio k*c/(eps_k + m*c^2), in [0, 1)
    amplitude       : symmetry-adapted normalization sqrt((eps_k+mc^2)/(2 pi eps_k))
    plane_amplitude : plane-wave normalization sqrt((eps_k+mc^2)/(4 pi eps_k))
    """

    k: float
    energy: float
    s: float
    amplitude: float
    plane_amplitude: float


def dispersion(params: ModelParams, k: float) -> Dispersion:
    if k < 0.0:
        raise ValueError("momentum k must be non-negative")
    mc2 = params.mc2
    eps = math.hypot(k * params.c, mc2)
    ratio = (eps + mc2) / eps
    return Dispersion(
        k=k,
        energy=eps,
        s=k * params.c / (eps + mc2),
        amplitude=math.sqrt(ratio / (2.0 * math.pi)),
        plane_amplitude=math.sqrt(ratio / (4.0 * math.pi)),
    )


class Branch(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


class Parity(Enum):
    GERADE = "gerade"
    UNGERADE = "ungerade"


@dataclass(frozen=True)
class StateLabel:
    branch: Branch
    parity: Parity


@dataclass(frozen=True)
class Spinor:
    """Two-component wavefunction value: large (upper) and small (lower)."""

    upper: complex
    lower: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.upper, self.lower], dtype=complex)

    def density(self) -> float:
        return abs(self.upper) ** 2 + abs(self.lower) ** 2


# ---------------------------------------------------------------------------
# Bound state
# ---------------------------------------------------------------------------

def bound_spinor(d: DerivedParams, x: float) -> Spinor:
    """Bound-state wavefunction A*(1, i*lam*sgn(x))^T * exp(-kappa*|x|).

    Unit-normalized analytically.  Z=0 has no bound state and is rejected.
    """
    if d.kappa == 0.0:
        raise ValueError("no bound state for Z = 0")
    env = d.amplitude * math.exp(-d.kappa * abs(x))
    return Spinor(env, 1j * d.lam * sgn(x) * env)


def bound_origin_limits(d: DerivedParams) -> tuple[Spinor, Spinor]:
    """One-sided origin limits (psi(0+), psi(0-)) of the bound state."""
    if d.kappa == 0.0:
        raise ValueError("no bound state for Z = 0")
    a = d.amplitude
    return Spinor(a, 1j * d.lam * a), Spinor(a, -1j * d.lam * a)


# ---------------------------------------------------------------------------
# Free continuum states
# ---------------------------------------------------------------------------

def _free_components(disp: Dispersion, label: StateLabel, x: float) -> Spinor:
    a, s, k = disp.amplitude, disp.s, disp.k
    if label.branch is Branch.POSITIVE:
        if label.parity is Parity.GERADE:
            return Spinor(a * math.cos(k * x), 1j * a * s * math.sin(k * x))
        return Spinor(a * math.sin(k * x), -1j * a * s * math.cos(k * x))
    if label.parity is Parity.GERADE:
        return Spinor(1j * a * s * math.cos(k * x), a * math.sin(k * x))
    return Spinor(-1j * a * s * math.sin(k * x), a * math.cos(k * x))


def _k_zero_allowed(label: StateLabel) -> bool:
    # the k=0 member exists only where the closed form does not vanish identically
    return (label.branch, label.parity) in (
        (Branch.POSITIVE, Parity.GERADE),
        (Branch.NEGATIVE, Parity.UNGERADE),
    )


def free_state(params: ModelParams, label: StateLabel, k: float, x: float) -> Spinor:
    """Generalized free eigenfunction of the requested branch and parity.

    Positive branch carries energy +eps_k, negative branch -eps_k.  k = 0 is
    admitted only for the (positive, gerade) and (negative, ungerade)
    families; the other two closed forms vanish identically there.
    """
    if k < 0.0:
        raise ValueError("momentum k must be non-negative")
    if k == 0.0 and not _k_zero_allowed(label):
        raise ValueError(f"k = 0 excluded for {label.branch.value}/{label.parity.value}")
    return _free_components(dispersion(params, k), label, x)


# ---------------------------------------------------------------------------
# Scattering states and phase shifts
# ---------------------------------------------------------------------------

class PhaseShifts(NamedTuple):
    plus: float
    minus: float


def phase_shifts(params: ModelParams, k: float) -> PhaseShifts:
    """Scattering phase shifts tan(delta_k^+-) = lam*(eps_k +- m c^2)/(k c).

    The k -> 0 limits (pi/2, 0) are returned at k = 0 so continuum scans can
    include the endpoint.  Both shifts vanish identically at Z = 0.
    """
    if k < 0.0:
        raise ValueError("momentum k must be non-negative")
    lam = params.Z / (2.0 * params.c)
    if lam == 0.0:
        return PhaseShifts(0.0, 0.0)
    if k == 0.0:
        return PhaseShifts(math.pi / 2.0, 0.0)
    disp = dispersion(params, k)
    mc2 = params.mc2
    kc = k * params.c
    # eps_k - mc^2 = k^2 c^2/(eps_k + mc^2) avoids cancellation at small k
    return PhaseShifts(
        math.atan(lam * (disp.energy + mc2) / kc),
        math.atan(lam * kc / (disp.energy + mc2)),
    )


def _scattering_components(disp: Dispersion, shifts: PhaseShifts,
                           label: StateLabel, x: float) -> Spinor:
    a, s, k = disp.amplitude, disp.s, disp.k
    ax, sx = abs(x), sgn(x)
    if label.branch is Branch.POSITIVE:
        if label.parity is Parity.GERADE:
            ph = k * ax + shifts.plus
            return Spinor(a * math.cos(ph), 1j * a * s * sx * math.sin(ph))
        ph = k * ax + shifts.minus
        return Spinor(a * sx * math.sin(ph), -1j * a * s * math.cos(ph))
    if label.parity is Parity.GERADE:
        ph = k * ax - shifts.minus
        return Spinor(1j * a * s * math.cos(ph), a * sx * math.sin(ph))
    ph = k * ax - shifts.plus
    return Spinor(-1j * a * s * sx * math.sin(ph), a * math.cos(ph))


def scattering_state(params: ModelParams, label: StateLabel, k: float, x: float) -> Spinor:
    """Continuum eigenfunction in the presence of the contact potential.

    Reduces to free_state when Z = 0 (all phase shifts vanish).  Requires
    k > 0; the distorted families have no k = 0 member.
    """
    if k <= 0.0:
        raise ValueError("momentum k must be positive")
    return _scattering_components(dispersion(params, k), phase_shifts(params, k), label, x)


def scattering_origin_limits(params: ModelParams, label: StateLabel,
                             k: float) -> tuple[Spinor, Spinor]:
    """One-sided origin limits (psi(0+), psi(0-)) of a scattering state."""
    if k <= 0.0:
        raise ValueError("momentum k must be positive")
    disp = dispersion(params, k)
    shifts = phase_shifts(params, k)
    a, s = disp.amplitude, disp.s
    if label.branch is Branch.POSITIVE:
        if label.parity is Parity.GERADE:
            cos_d, sin_d = math.cos(shifts.plus), math.sin(shifts.plus)
            return (Spinor(a * cos_d, 1j * a * s * sin_d),
                    Spinor(a * cos_d, -1j * a * s * sin_d))
        cos_d, sin_d = math.cos(shifts.minus), math.sin(shifts.minus)
        return (Spinor(a * sin_d, -1j * a * s * cos_d),
                Spinor(-a * sin_d, -1j * a * s * cos_d))
    if label.parity is Parity.GERADE:
        cos_d, sin_d = math.cos(shifts.minus), math.sin(shifts.minus)
        return (Spinor(1j * a * s * cos_d, -a * sin_d),
                Spinor(1j * a * s * cos_d, a * sin_d))
    cos_d, sin_d = math.cos(shifts.plus), math.sin(shifts.plus)
    return (Spinor(1j * a * s * sin_d, a * cos_d),
            Spinor(-1j * a * s * sin_d, a * cos_d))


# ---------------------------------------------------------------------------
# Boundary matrix and occupied-orbital densities
# ---------------------------------------------------------------------------

def boundary_matrix(params: ModelParams) -> np.ndarray:
    """Unitary origin jump matrix [[cos t, i sin t], [i sin t, cos t]], tan(t/2) = Z/(2c)."""
    theta = 2.0 * math.atan(params.Z / (2.0 * params.c))
    ct, st = math.cos(theta), math.sin(theta)
    return np.array([[ct, 1j * st], [1j * st, ct]], dtype=complex)


def electron_density_matrix(d: DerivedParams, x: float) -> np.ndarray:
    """Local 2x2 density matrix of the occupied bound orbital.

    Trace is the density kappa*exp(-2 kappa |x|); the associated current
    tr[c*sigma1*n(x)] vanishes identically.
    """
    if d.kappa == 0.0:
        raise ValueError("no bound state for Z = 0")
    lam = d.lam
    pref = d.kappa / (1.0 + lam * lam) * math.exp(-2.0 * d.kappa * abs(x))
    off = 1j * lam * sgn(x)
    return pref * np.array([[1.0, -off], [off, lam * lam]], dtype=complex)


def electron_density(d: DerivedParams, x: float) -> float:
    """Bound-orbital density kappa*exp(-2 kappa |x|)."""
    if d.kappa == 0.0:
        raise ValueError("no bound state for Z = 0")
    return d.kappa * math.exp(-2.0 * d.kappa * abs(x))


def electron_current(d: DerivedParams, x: float) -> float:
    """Bound-orbital current density tr[c*sigma1*n(x)]; identically zero."""
    n = electron_density_matrix(d, x)
    current = d.params.c * (n[0, 1] + n[1, 0])
    return float(current.real)


# convenience: kinematics used across modules ------------------------------

def eps_k(params: ModelParams, k: float) -> float:
    """Continuum energy sqrt(k^2 c^2 + m^2 c^4)."""
    return math.hypot(k * params.c, params.mc2)


ALL_LABELS = tuple(
    StateLabel(branch, parity) for branch in Branch for parity in Parity
)
