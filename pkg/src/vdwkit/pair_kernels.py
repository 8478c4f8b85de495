"""Two-atom van der Waals potentials in free space and in a bulk medium.

Each channel is a single imaginary-frequency integral in reduced units
(lengths in lambda_bar, energies in hbar*omega_ref):

    U_ee = -(1/pi) l^-6 Int du a_A a_B C_ee(u) g(n u l)
    U_em = +(1/pi) l^-4 Int du u^2 a_A b_B C_em(u) h(n u l)
    U_me = +(1/pi) l^-4 Int du u^2 b_A a_B C_em(u) h(n u l)
    U_mm = -(1/pi) l^-6 Int du b_A b_B C_mm(u) g(n u l)

with kernels g(x) = e^{-2x}(3+6x+5x^2+2x^3+x^4) and
h(x) = e^{-2x}(1+2x+x^2).  The medium factors C are

    corrected:    C_ee = 81 eps^2/(2eps+1)^4,
                  C_em = 81 eps^2 mu^2/[(2eps+1)^2 (2mu+1)^2],
                  C_mm = 81 mu^2/(2mu+1)^4
    uncorrected:  C_ee = 1/eps^2,  C_em = mu^2,  C_mm = mu^2

The corrected set combines the real-cavity local-field factors with the
bulk propagation factors and restores duality symmetry; the uncorrected
set violates it whenever eps != mu.  The reduced prefactors are locked
by the retarded and nonretarded limit tests.
"""

from dataclasses import dataclass, field

import numpy as np

from .quadrature import QuadratureSpec, integrate_semi_infinite
from .response import (AtomModel, LocalFieldContext, MaterialModel,
                       atom_alpha_iu, atom_beta_iu, eps_iu, mu_iu,
                       refractive_iu)


def g_kernel(x):
    """Retardation kernel of the ee and mm channels; g(0) = 3."""
    x = np.asarray(x, dtype=float)
    return np.exp(-2.0 * x) * (3.0 + x * (6.0 + x * (5.0 + x * (2.0 + x))))


def h_kernel(x):
    """Retardation kernel of the mixed channels; h(0) = 1."""
    x = np.asarray(x, dtype=float)
    return np.exp(-2.0 * x) * (1.0 + x * (2.0 + x))


@dataclass(frozen=True)
class BulkScene:
    """Two atoms at separation l inside an infinite host medium."""

    host: MaterialModel
    atom_a: AtomModel
    atom_b: AtomModel
    separation_l: float
    lf: LocalFieldContext = None

    def __post_init__(self):
        if self.separation_l <= 0:
            raise ValueError("separation must be positive")
        if self.host.is_mirror:
            raise ValueError("perfect_mirror is not a valid bulk host")
        if self.lf is None:
            object.__setattr__(self, "lf", LocalFieldContext(self.host, True))
        elif self.lf.enabled and self.lf.host is not self.host:
            raise ValueError("local-field context must wrap the scene host")

    def dual(self) -> "BulkScene":
        """Swap electric and magnetic roles everywhere in the scene."""
        host = self.host.dual()
        return BulkScene(host=host, atom_a=self.atom_a.dual(),
                         atom_b=self.atom_b.dual(),
                         separation_l=self.separation_l,
                         lf=LocalFieldContext(host, self.lf.enabled))

    def exchange(self) -> "BulkScene":
        """Swap the two atoms."""
        return BulkScene(host=self.host, atom_a=self.atom_b,
                         atom_b=self.atom_a, separation_l=self.separation_l,
                         lf=self.lf)


@dataclass(frozen=True)
class PotentialBreakdown:
    """The four channel values plus total, in units of hbar*omega_ref."""

    u_ee: float
    u_em: float
    u_me: float
    u_mm: float
    total: float
    meta: dict = field(default_factory=dict)

    @classmethod
    def from_channels(cls, u_ee, u_em, u_me, u_mm, meta=None):
        return cls(u_ee=u_ee, u_em=u_em, u_me=u_me, u_mm=u_mm,
                   total=u_ee + u_em + u_me + u_mm, meta=meta or {})


def _medium_factors(scene: BulkScene, u):
    """(C_ee, C_em, C_mm) at imaginary frequency u."""
    e = eps_iu(scene.host, u)
    m = mu_iu(scene.host, u)
    if scene.lf.enabled:
        fe = (2.0 * e + 1.0) ** 2
        fm = (2.0 * m + 1.0) ** 2
        c_ee = 81.0 * e * e / (fe * fe)
        c_mm = 81.0 * m * m / (fm * fm)
        c_em = 81.0 * e * e * m * m / (fe * fm)
    else:
        c_ee = 1.0 / (e * e)
        c_em = m * m
        c_mm = m * m
    return c_ee, c_em, c_mm


def _channel_integrals(scene: BulkScene, spec: QuadratureSpec, kernel_mode: str):
    """Integrate the four channels; kernel_mode selects full or static kernels."""
    a_atom, b_atom = scene.atom_a, scene.atom_b
    l = scene.separation_l

    def make(channel):
        def f(u):
            c_ee, c_em, c_mm = _medium_factors(scene, u)
            if kernel_mode == "full":
                n = refractive_iu(scene.host, u)
                gv = g_kernel(n * u * l)
                hv = h_kernel(n * u * l)
            else:
                gv, hv = 3.0, 1.0
            if channel == "ee":
                return atom_alpha_iu(a_atom, u) * atom_alpha_iu(b_atom, u) * c_ee * gv
            if channel == "em":
                return u * u * atom_alpha_iu(a_atom, u) * atom_beta_iu(b_atom, u) * c_em * hv
            if channel == "me":
                return u * u * atom_beta_iu(a_atom, u) * atom_alpha_iu(b_atom, u) * c_em * hv
            return atom_beta_iu(a_atom, u) * atom_beta_iu(b_atom, u) * c_mm * gv
        return f

    vals, errs = {}, {}
    inv_l4 = l ** -4
    inv_l6 = l ** -6
    sign_scale = {"ee": -inv_l6 / np.pi, "em": inv_l4 / np.pi,
                  "me": inv_l4 / np.pi, "mm": -inv_l6 / np.pi}
    for ch in ("ee", "em", "me", "mm"):
        v, e = integrate_semi_infinite(make(ch), spec)
        vals[ch] = sign_scale[ch] * v
        errs[ch] = abs(sign_scale[ch]) * e
    return PotentialBreakdown.from_channels(
        vals["ee"], vals["em"], vals["me"], vals["mm"],
        meta={"err_" + ch: errs[ch] for ch in errs})


def bulk_pair_potential(scene: BulkScene,
                        spec: QuadratureSpec = QuadratureSpec()) -> PotentialBreakdown:
    """Full four-channel potential of two atoms in a bulk host."""
    return _channel_integrals(scene, spec, "full")


def bulk_pair_nonretarded(scene: BulkScene,
                          spec: QuadratureSpec = QuadratureSpec()) -> PotentialBreakdown:
    """Nonretarded limit: kernels at their static values g(0)=3, h(0)=1."""
    return _channel_integrals(scene, spec, "static")


def bulk_pair_retarded(scene: BulkScene) -> PotentialBreakdown:
    """Retarded limit: closed form with all responses at u = 0.

    The frequency integral localizes at u ~ 1/(n l); for large l the
    spectra and medium factors sit at their static values and the kernel
    integrals give Int g = 23/4 and Int x^2 h = 7/4.
    """
    l = scene.separation_l
    c_ee0, c_em0, c_mm0 = _medium_factors(scene, 0.0)
    n0 = float(refractive_iu(scene.host, 0.0))
    a0a, b0a = scene.atom_a.a0, scene.atom_a.b0
    a0b, b0b = scene.atom_b.a0, scene.atom_b.b0
    pref = l ** -7 / (4.0 * np.pi)
    u_ee = -23.0 * pref * a0a * a0b * c_ee0 / n0
    u_mm = -23.0 * pref * b0a * b0b * c_mm0 / n0
    u_em = 7.0 * pref * a0a * b0b * c_em0 / n0 ** 3
    u_me = 7.0 * pref * b0a * a0b * c_em0 / n0 ** 3
    return PotentialBreakdown.from_channels(u_ee, u_em, u_me, u_mm)


def freespace_pair_potential(atom_a: AtomModel, atom_b: AtomModel, l: float,
                             spec: QuadratureSpec = QuadratureSpec()) -> PotentialBreakdown:
    """Vacuum specialization; the reference potential for sphere ratios."""
    host = MaterialModel.vacuum()
    scene = BulkScene(host=host, atom_a=atom_a, atom_b=atom_b,
                      separation_l=l, lf=LocalFieldContext(host, True))
    return bulk_pair_potential(scene, spec)
