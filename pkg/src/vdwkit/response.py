"""Material dispersion, atomic response spectra and local-field factors.

Everything downstream works in reduced units: frequencies u = xi/omega_ref
on the imaginary axis, lengths in lambda_bar = c/omega_ref, energies in
hbar*omega_ref.  In these units the duality transformation is an exact
field swap: (electric <-> magnetic resonance parameters) for materials
and (a0 <-> b0) for atoms.

All evaluators accept scalars or numpy arrays for u.
"""

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from scipy.constants import c as _c_si


@dataclass(frozen=True)
class ReducedUnits:
    """Reference frequency fixing the unit system.

    Lengths are measured in lambda_bar = c/omega_ref, imaginary
    frequencies as u = xi/omega_ref, energies as U/(hbar*omega_ref).
    """

    omega_ref: float

    def __post_init__(self):
        if self.omega_ref <= 0:
            raise ValueError("omega_ref must be positive")

    @property
    def lambda_bar(self) -> float:
        """Reduced wavelength c/omega_ref in metres."""
        return _c_si / self.omega_ref


@dataclass(frozen=True)
class MaterialModel:
    """Permittivity and permeability on the imaginary frequency axis.

    Single-resonance model for each response:
        eps(iu) = 1 + wpe^2 / (wte^2 + u^2 + ge*u)
    and likewise mu(iu) with (wpm, wtm, gm).  A resonance left unset
    means that response is identically 1.  perfect_mirror is a limit
    flag: eps is reported as inf and kernels that support it take the
    analytic limit of their reflection factors instead.
    """

    variant: str = "vacuum"
    wpe: Optional[float] = None
    wte: Optional[float] = None
    ge: float = 0.0
    wpm: Optional[float] = None
    wtm: Optional[float] = None
    gm: float = 0.0

    def __post_init__(self):
        if self.variant not in ("vacuum", "drude_lorentz", "perfect_mirror"):
            raise ValueError(f"unknown material variant {self.variant!r}")
        if self.variant == "drude_lorentz" and self.wpe is None and self.wpm is None:
            raise ValueError("drude_lorentz material needs at least one resonance")
        for name in ("wpe", "wte", "wpm", "wtm"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ValueError(f"{name} must be positive, got {v}")

    @classmethod
    def vacuum(cls) -> "MaterialModel":
        return cls(variant="vacuum")

    @classmethod
    def perfect_mirror(cls) -> "MaterialModel":
        return cls(variant="perfect_mirror")

    @classmethod
    def drude_lorentz(cls, wpe=None, wte=None, ge=0.0,
                      wpm=None, wtm=None, gm=0.0) -> "MaterialModel":
        return cls(variant="drude_lorentz", wpe=wpe, wte=wte, ge=ge,
                   wpm=wpm, wtm=wtm, gm=gm)

    @property
    def is_vacuum(self) -> bool:
        return self.variant == "vacuum"

    @property
    def is_mirror(self) -> bool:
        return self.variant == "perfect_mirror"

    def dual(self) -> "MaterialModel":
        """Swap the electric and magnetic resonance profiles."""
        if self.variant != "drude_lorentz":
            return self
        return replace(self, wpe=self.wpm, wte=self.wtm, ge=self.gm,
                       wpm=self.wpe, wtm=self.wte, gm=self.ge)


def eps_iu(m: MaterialModel, u):
    """Relative permittivity eps(iu) >= 1."""
    u = np.asarray(u, dtype=float)
    if m.variant == "vacuum" or (m.variant == "drude_lorentz" and m.wpe is None):
        return np.ones_like(u)[()] if u.ndim else 1.0
    if m.variant == "perfect_mirror":
        out = np.full_like(u, np.inf)
        return out[()] if u.ndim else np.inf
    val = 1.0 + m.wpe ** 2 / (m.wte ** 2 + u * u + m.ge * u)
    return val[()] if u.ndim else float(val)


def mu_iu(m: MaterialModel, u):
    """Relative permeability mu(iu) >= 1."""
    u = np.asarray(u, dtype=float)
    if m.variant != "drude_lorentz" or m.wpm is None:
        return np.ones_like(u)[()] if u.ndim else 1.0
    val = 1.0 + m.wpm ** 2 / (m.wtm ** 2 + u * u + m.gm * u)
    return val[()] if u.ndim else float(val)


def refractive_iu(m: MaterialModel, u):
    """n(iu) = sqrt(eps*mu)."""
    return np.sqrt(eps_iu(m, u) * mu_iu(m, u))


@dataclass(frozen=True)
class AtomModel:
    """Isotropic two-level atom response in reduced units.

    a(u) = a0/(1+(u/u_A)^2) is the dimensionless polarizability
    alpha/(4 pi eps0 lambda_bar^3) and b(u) = b0/(1+(u/u_A)^2) the
    dimensionless magnetizability mu0*beta/(4 pi lambda_bar^3).
    """

    a0: float = 0.0
    b0: float = 0.0
    resonance: float = 1.0

    def __post_init__(self):
        if self.a0 < 0 or self.b0 < 0:
            raise ValueError("static responses must be non-negative")
        if self.resonance <= 0:
            raise ValueError("resonance frequency must be positive")

    def dual(self) -> "AtomModel":
        return replace(self, a0=self.b0, b0=self.a0)


def atom_alpha_iu(atom: AtomModel, u):
    """Dimensionless polarizability a(u)."""
    u = np.asarray(u, dtype=float)
    val = atom.a0 / (1.0 + (u / atom.resonance) ** 2)
    return val[()] if u.ndim else float(val)


def atom_beta_iu(atom: AtomModel, u):
    """Dimensionless magnetizability b(u)."""
    u = np.asarray(u, dtype=float)
    val = atom.b0 / (1.0 + (u / atom.resonance) ** 2)
    return val[()] if u.ndim else float(val)


@dataclass(frozen=True)
class LocalFieldContext:
    """Real-cavity local-field correction switch for an embedding host."""

    host: MaterialModel
    enabled: bool = True


def lf_electric(m: MaterialModel, u):
    """Electric local-field factor 3*eps/(2*eps+1), in [1, 3/2)."""
    e = eps_iu(m, u)
    return 3.0 * e / (2.0 * e + 1.0)


def lf_magnetic(m: MaterialModel, u):
    """Magnetic local-field factor 3/(2*mu+1), in (0, 1]."""
    mu = mu_iu(m, u)
    return 3.0 / (2.0 * mu + 1.0)
