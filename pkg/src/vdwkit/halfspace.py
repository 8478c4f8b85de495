"""Single-atom potential near a magnetoelectric half space.

The electric part is the double integral (reduced units, z in lambda_bar)

    U_e = (1/2pi) Int_0^inf du u^3 a(u) Int_1^inf dv e^{-2uvz}
          [ r_s(u, v) - (2v^2 - 1) r_p(u, v) ]

with r_s = (mu*v - w)/(mu*v + w), r_p = (eps*v - w)/(eps*v + w) and
w = sqrt(v^2 - 1 + eps*mu), all responses at imaginary frequency u.
The inner variable v runs over the propagating and evanescent branches
after the wave-vector substitution that removes the q -> 0 singularity.
The magnetic part is the same functional on the dual scene (electric
and magnetic roles swapped), which realizes the duality principle by
construction.

For a perfect mirror the limits r_p -> 1, r_s -> -1 are taken
analytically rather than through a large permittivity.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from .quadrature import QuadratureSpec, integrate_interval, integrate_semi_infinite
from .response import AtomModel, MaterialModel, atom_alpha_iu, eps_iu, mu_iu


@dataclass(frozen=True)
class HalfSpaceScene:
    """Atom at distance z (in lambda_bar) from a planar wall."""

    wall: MaterialModel
    atom: AtomModel
    z: float

    def __post_init__(self):
        if self.z <= 0:
            raise ValueError("atom-surface distance must be positive")

    def dual(self) -> "HalfSpaceScene":
        return HalfSpaceScene(wall=self.wall.dual(), atom=self.atom.dual(),
                              z=self.z)


def _reflection_bracket(wall: MaterialModel, u: float, v):
    """r_s - (2v^2 - 1) r_p for an array of v at fixed u."""
    if wall.is_mirror:
        return -2.0 * v * v
    e = eps_iu(wall, u)
    m = mu_iu(wall, u)
    w = np.sqrt(v * v - 1.0 + e * m)
    # rationalized numerators avoid the x*v - w cancellation at large v
    em1 = e * m - 1.0
    rs = ((m * m - 1.0) * v * v - em1) / (m * v + w) ** 2
    rp = ((e * e - 1.0) * v * v - em1) / (e * v + w) ** 2
    return rs - (2.0 * v * v - 1.0) * rp


def halfspace_Ue(scene: HalfSpaceScene,
                 spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Electric single-atom potential; negative for an electric wall."""
    if scene.wall.is_vacuum:
        return 0.0
    z = scene.z
    inner_spec = replace(spec, rel_tol=max(0.1 * spec.rel_tol, 1e-13))

    def outer(u_arr):
        out = np.empty_like(u_arr)
        for i, u in enumerate(u_arr):
            if u == 0.0:
                out[i] = 0.0
                continue
            # substitute s = 2uz(v - 1) so the exponential decays on a
            # unit scale regardless of how small uz is
            scale = 2.0 * u * z

            def inner(s):
                v = 1.0 + s / scale
                return np.exp(-s) * _reflection_bracket(scene.wall, u, v)

            val, _ = integrate_semi_infinite(inner, inner_spec)
            out[i] = (u ** 3 * atom_alpha_iu(scene.atom, u)
                      * math.exp(-scale) / scale * val)
        return out

    val, _ = integrate_semi_infinite(outer, spec)
    return val / (2.0 * np.pi)


def halfspace_Um(scene: HalfSpaceScene,
                 spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Magnetic single-atom potential: the electric part of the dual scene."""
    return halfspace_Ue(scene.dual(), spec)


def halfspace_Ue_nonretarded(scene: HalfSpaceScene,
                             spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Leading z^-3 term of the electric potential at small z."""
    z = scene.z
    wall = scene.wall
    if wall.is_vacuum:
        return 0.0

    def f(u):
        if wall.is_mirror:
            ratio = 1.0
        else:
            e = eps_iu(wall, u)
            ratio = (e - 1.0) / (e + 1.0)
        return atom_alpha_iu(scene.atom, u) * ratio

    val, _ = integrate_semi_infinite(f, spec)
    return -val / (4.0 * np.pi * z ** 3)


def halfspace_Ue_retarded(scene: HalfSpaceScene,
                          spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Retarded z^-4 limit with all responses at their static values."""
    z = scene.z
    wall = scene.wall
    if wall.is_vacuum:
        return 0.0

    def f(v):
        if wall.is_mirror:
            rp = np.ones_like(v)
            rs = -np.ones_like(v)
        else:
            e = eps_iu(wall, 0.0)
            m = mu_iu(wall, 0.0)
            w = np.sqrt(v * v - 1.0 + e * m)
            rs = (m * v - w) / (m * v + w)
            rp = (e * v - w) / (e * v + w)
        v2 = v * v
        return (2.0 / v2 - 1.0 / (v2 * v2)) * rp - rs / (v2 * v2)

    val, _ = integrate_interval(f, 1.0, np.inf, spec)
    return -3.0 * scene.atom.a0 * val / (16.0 * np.pi * z ** 4)
