"""Two-atom potentials in the presence of a magnetoelectric sphere.

The scattering coefficients of the sphere are evaluated at imaginary
frequency with real arithmetic throughout.  Writing x0 = u*R and
x = n_r(iu)*u*R, the reduced coefficients are

    bt^M = [mu*Ri'(x0) i_n(x) - Ri'(x) i_n(x0)]
           / [mu*Rk'(x0) i_n(x) - Ri'(x) kt_n(x0)]

and bt^N with eps in place of mu, where Ri', Rk' are the Riccati
derivatives of the modified spherical Bessel pair (module specfun).
The physical coefficients at imaginary frequency are (-1)^n bt; the
alternating phase cancels in every product with the outgoing-wave
factors Q, so only bt and positive kt-mantissas appear below.

The mixed-channel potential splits into a free-space part, a cross
term U1 and a pure scattering term U2.  Both are built from six
single series over the scattering order n,

    s1 = sum (2n+1) bt^M Qt   Pn'      s2 = sum (2n+1) bt^N Qt   Pn'
    s3 = sum  c_n   bt^M Qt^B Fn       s4 = sum  c_n   bt^M Qt^B Pn'
    s5 = sum  c_n   bt^N Qt^A Fn       s6 = sum  c_n   bt^N Qt^A Pn'

with c_n = (2n+1)/(n(n+1)), Qt the product of third-kind functions at
the two atom radii and Qt^A, Qt^B the variants with one Riccati
derivative.  All products are assembled exponent-first; the combined
terms decay like exp(-u(r_a + r_b - 2R)) times a geometric factor.

The ee and mm channels use a generic numeric tensor-trace path through
the vector-wave expansion of the scattering Green tensor (associated
Legendre sums over m), with the mm channel obtained by the exact
bt^M <-> bt^N swap.
"""

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import gammaln, lpmn

from .errors import SeriesNonConvergence
from .pair_kernels import freespace_pair_potential
from .quadrature import QuadratureSpec, integrate_semi_infinite
from .response import (AtomModel, MaterialModel, atom_alpha_iu, atom_beta_iu,
                       eps_iu, mu_iu, refractive_iu)
from .specfun import (legendre_table, log_i_scaled, log_k_scaled,
                      log_ri_scaled, log_rk_scaled)

_SERIES_HARD_CAP = 200_000


@dataclass(frozen=True)
class SphereScene:
    """Two atoms outside a homogeneous sphere centred at the origin."""

    sphere: MaterialModel
    radius_R: float
    atom_a: AtomModel
    atom_b: AtomModel
    r_a: float
    r_b: float
    theta: float

    def __post_init__(self):
        if self.radius_R <= 0:
            raise ValueError("sphere radius must be positive")
        if self.r_a <= self.radius_R or self.r_b <= self.radius_R:
            raise ValueError("both atoms must lie outside the sphere")
        if not 0.0 <= self.theta <= np.pi:
            raise ValueError(f"angular separation {self.theta} outside [0, pi]")
        if self.chord_l <= 0:
            raise ValueError("atoms must be at distinct positions")

    @property
    def gamma(self) -> float:
        return math.cos(self.theta)

    @property
    def chord_l(self) -> float:
        ra, rb = self.r_a, self.r_b
        return math.sqrt(max(ra * ra + rb * rb - 2.0 * ra * rb * self.gamma, 0.0))

    @property
    def l_a(self) -> float:
        return self.r_b * self.gamma - self.r_a

    @property
    def l_b(self) -> float:
        return self.r_a * self.gamma - self.r_b

    def dual(self) -> "SphereScene":
        return replace(self, sphere=self.sphere.dual(),
                       atom_a=self.atom_a.dual(), atom_b=self.atom_b.dual())

    def exchange(self) -> "SphereScene":
        return replace(self, atom_a=self.atom_b, atom_b=self.atom_a,
                       r_a=self.r_b, r_b=self.r_a)


# ---------------------------------------------------------------------------
# Scattering coefficients and outgoing-wave products, log domain


def _log_mie_arrays(sphere: MaterialModel, R: float, u: float, n_max: int):
    """(sign, log|bt^M|, sign, log|bt^N|) for n = 1..n_max (index 0 = n=1)."""
    e = float(eps_iu(sphere, u))
    m = float(mu_iu(sphere, u))
    if e == 1.0 and m == 1.0:
        z = np.zeros(n_max)
        neg = np.full(n_max, -np.inf)
        return z, neg, z.copy(), neg.copy()
    x0 = u * R
    nr = math.sqrt(e * m)
    x = nr * x0
    li0 = log_i_scaled(n_max + 1, x0)
    li1 = log_i_scaled(n_max + 1, x)
    lri0 = log_ri_scaled(n_max, x0, li0)
    lri1 = log_ri_scaled(n_max, x, li1)
    lk0 = log_k_scaled(n_max, x0)
    lrk0 = log_rk_scaled(n_max, x0, lk0)
    sl = slice(1, n_max + 1)

    def coeff(c):
        t1 = math.log(c) + lri0[sl] + li1[sl]
        t2 = lri1[sl] + li0[sl]
        hi = np.maximum(t1, t2)
        diff = np.exp(t1 - hi) - np.exp(t2 - hi)
        sign_n = np.sign(diff)
        with np.errstate(divide="ignore"):
            log_num = hi + np.log(np.abs(diff))
        log_den = np.logaddexp(math.log(c) + lrk0[sl] + li1[sl],
                               lri1[sl] + lk0[sl])
        # denominator is -(...) e^{x-x0}; numerator (...) e^{x+x0}
        return -sign_n, log_num - log_den + 2.0 * x0

    sgn_m, log_m = coeff(m)
    sgn_n, log_n = coeff(e)
    return sgn_m, log_m, sgn_n, log_n


def _log_q_arrays(u: float, r_a: float, r_b: float, n_max: int):
    """Scaled logs of Qt, Qt^A, Qt^B for n = 1..n_max; Qt^A, Qt^B < 0.

    Returned logs are of the absolute values; the common decay factor
    exp(-u(r_a + r_b)) is included.
    """
    xa, xb = u * r_a, u * r_b
    lka = log_k_scaled(n_max, xa)
    lkb = log_k_scaled(n_max, xb)
    lrka = log_rk_scaled(n_max, xa, lka)
    lrkb = log_rk_scaled(n_max, xb, lkb)
    sl = slice(1, n_max + 1)
    damp = -(xa + xb)
    lq = lka[sl] + lkb[sl] + damp
    lqa = lkb[sl] + lrka[sl] + damp
    lqb = lka[sl] + lrkb[sl] + damp
    return lq, lqa, lqb


@dataclass(frozen=True)
class MieTermCache:
    """Per-frequency series data shared by the mixed-channel sums."""

    u: float
    n_max: int
    s1: float
    s2: float
    s3: float
    s4: float
    s5: float
    s6: float


def mie_coefficients(sphere: MaterialModel, R: float, u: float, n: int):
    """Real scattering coefficients B_n^M(iu), B_n^N(iu) of the sphere."""
    if u <= 0:
        raise ValueError("u must be positive")
    if n < 1:
        raise ValueError("order must be >= 1")
    sgn_m, log_m, sgn_n, log_n = _log_mie_arrays(sphere, R, u, n)
    for lg in (log_m[n - 1], log_n[n - 1]):
        if lg > 705.0:
            raise OverflowError(f"scattering coefficient overflow at n={n}, uR={u * R}")
    parity = -1.0 if n % 2 else 1.0
    bm = parity * sgn_m[n - 1] * math.exp(log_m[n - 1])
    bn = parity * sgn_n[n - 1] * math.exp(log_n[n - 1])
    return float(bm), float(bn)


def _six_sums(scene: SphereScene, u: float, rel_tol: float, n_start: int):
    """Evaluate s1..s6 with adaptive truncation; returns a MieTermCache."""
    # beyond this decay scale every product underflows to exact zero
    if u * (scene.r_a + scene.r_b - 2.0 * scene.radius_R) > 500.0:
        return MieTermCache(u, 0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    n_lo = max(10, math.ceil(u * max(scene.r_a, scene.r_b)) + 15)
    n_max = max(n_start, n_lo, 30)
    gamma = scene.gamma
    while True:
        n = np.arange(1, n_max + 1, dtype=float)
        sgn_m, log_m, sgn_n, log_n = _log_mie_arrays(scene.sphere, scene.radius_R,
                                                     u, n_max)
        lq, lqa, lqb = _log_q_arrays(u, scene.r_a, scene.r_b, n_max)
        _, dp, f = legendre_table(n_max, gamma)
        dp, f = dp[1:], f[1:]
        two_n1 = 2.0 * n + 1.0
        c_n = two_n1 / (n * (n + 1.0))
        # Qt^A and Qt^B carry an overall minus sign
        tm_q = sgn_m * np.exp(log_m + lq)
        tn_q = sgn_n * np.exp(log_n + lq)
        tm_qb = -sgn_m * np.exp(log_m + lqb)
        tn_qa = -sgn_n * np.exp(log_n + lqa)
        terms = (two_n1 * tm_q * dp, two_n1 * tn_q * dp,
                 c_n * tm_qb * f, c_n * tm_qb * dp,
                 c_n * tn_qa * f, c_n * tn_qa * dp)
        tail = max(4, n_max // 8)
        scale = max(np.sum(np.abs(t)) for t in terms)
        tail_mag = max(np.sum(np.abs(t[-tail:])) for t in terms)
        if scale == 0.0 or tail_mag <= 0.1 * rel_tol * scale:
            vals = [float(np.sum(t)) for t in terms]
            return MieTermCache(u, n_max, *vals)
        if n_max >= _SERIES_HARD_CAP:
            raise SeriesNonConvergence(
                f"series not converged at u={u:.6g} with n_max={n_max}",
                n_reached=n_max, tail_magnitude=tail_mag / scale)
        n_max = min(2 * n_max, _SERIES_HARD_CAP)


# ---------------------------------------------------------------------------
# Tensor components in the shared spherical coordinate system


@dataclass(frozen=True)
class K1Components:
    """Nonzero components of the scattering and free-space coupling tensors.

    Ordering of the pairs: (r_B,phi_A), (theta_B,phi_A), (phi_B,r_A),
    (phi_B,theta_A).
    """

    k1_rphi: float
    k1_thetaphi: float
    k1_phir: float
    k1_phitheta: float
    k0_rphi: float
    k0_thetaphi: float
    k0_phir: float
    k0_phitheta: float


def k1_tensor_components(scene: SphereScene, u: float, n_max: int = 30,
                         rel_tol: float = 1e-9) -> K1Components:
    """Series components of the mixed coupling tensor at frequency u."""
    if u <= 0:
        raise ValueError("u must be positive")
    c = _six_sums(scene, u, rel_tol, n_max)
    ra, rb = scene.r_a, scene.r_b
    st = math.sin(scene.theta)
    pref1 = -u / (4.0 * np.pi * ra * rb)
    l = scene.chord_l
    pref0 = math.exp(-u * l) * (1.0 + u * l) / (4.0 * np.pi * l ** 3)
    return K1Components(
        k1_rphi=pref1 * ra * st * c.s1,
        k1_thetaphi=pref1 * (ra * c.s3 - rb * c.s6),
        k1_phir=pref1 * rb * st * c.s2,
        k1_phitheta=pref1 * (rb * c.s5 - ra * c.s4),
        k0_rphi=pref0 * ra * st,
        k0_thetaphi=pref0 * scene.l_b,
        k0_phir=pref0 * rb * st,
        k0_phitheta=pref0 * scene.l_a,
    )


def k0_spherical_to_cartesian(r_a: float, r_b: float, theta_a: float,
                              theta_b: float, u: float) -> np.ndarray:
    """Free-space coupling tensor K(r_B, r_A, iu) from its four spherical
    components, assembled into Cartesian form via the local bases."""
    theta = theta_a + theta_b
    gamma = math.cos(theta)
    l = math.sqrt(r_a ** 2 + r_b ** 2 - 2.0 * r_a * r_b * gamma)
    l_a = r_b * gamma - r_a
    l_b = r_a * gamma - r_b
    pref0 = math.exp(-u * l) * (1.0 + u * l) / (4.0 * np.pi * l ** 3)
    st = math.sin(theta)
    er_a, eth_a, eph_a = _local_basis(theta_a, 0.0)
    er_b, eth_b, eph_b = _local_basis(theta_b, np.pi)
    out = np.outer(er_b, eph_a) * (r_a * st)
    out += np.outer(eth_b, eph_a) * l_b
    out += np.outer(eph_b, er_a) * (r_b * st)
    out += np.outer(eph_b, eth_a) * l_a
    return pref0 * out


def k0_cartesian_direct(pos_a: np.ndarray, pos_b: np.ndarray, u: float) -> np.ndarray:
    """Free-space coupling tensor K(r_B, r_A, iu) in closed Cartesian form:
    the single curl of the scalar-propagator tensor."""
    d = np.asarray(pos_b, dtype=float) - np.asarray(pos_a, dtype=float)
    l = float(np.linalg.norm(d))
    e = d / l
    cross = np.array([[0.0, -e[2], e[1]],
                      [e[2], 0.0, -e[0]],
                      [-e[1], e[0], 0.0]])
    return -math.exp(-u * l) * (1.0 + u * l) / (4.0 * np.pi * l ** 2) * cross


def _local_basis(theta: float, phi: float):
    """Cartesian unit vectors (e_r, e_theta, e_phi) at angles (theta, phi)."""
    st, ct = math.sin(theta), math.cos(theta)
    sp, cp = math.sin(phi), math.cos(phi)
    er = np.array([st * cp, st * sp, ct])
    eth = np.array([ct * cp, ct * sp, -st])
    eph = np.array([-sp, cp, 0.0])
    return er, eth, eph


# ---------------------------------------------------------------------------
# Mixed-channel potential


def sphere_Uem(scene: SphereScene, spec: QuadratureSpec = QuadratureSpec(),
               n_max: int = 30):
    """Mixed electric-magnetic potential near the sphere.

    Returns (u1, u2, u0, total): cross term, pure scattering term,
    free-space reference and their sum, in units of hbar*omega_ref.
    """
    ra, rb, l = scene.r_a, scene.r_b, scene.chord_l
    la, lb = scene.l_a, scene.l_b
    sin2 = math.sin(scene.theta) ** 2
    cache: dict = {}

    def sums(u):
        key = float(u)
        if key not in cache:
            cache[key] = _six_sums(scene, key, spec.rel_tol, n_max)
        return cache[key]

    def spectra(u):
        return (u * u * atom_alpha_iu(scene.atom_a, u)
                * atom_beta_iu(scene.atom_b, u))

    def f1(u_arr):
        out = np.empty_like(u_arr)
        for i, u in enumerate(u_arr):
            if u == 0.0 or spectra(u) == 0.0:
                out[i] = 0.0
                continue
            c = sums(u)
            s = (sin2 * (ra * ra * c.s1 + rb * rb * c.s2)
                 + ra * (lb * c.s3 - la * c.s4)
                 + rb * (la * c.s5 - lb * c.s6))
            out[i] = spectra(u) * u * math.exp(-l * u) * (1.0 + l * u) * s
        return out

    def f2(u_arr):
        out = np.empty_like(u_arr)
        for i, u in enumerate(u_arr):
            if u == 0.0 or spectra(u) == 0.0:
                out[i] = 0.0
                continue
            c = sums(u)
            s = (sin2 * (ra * ra * c.s1 ** 2 + rb * rb * c.s2 ** 2)
                 + (ra * c.s3 - rb * c.s6) ** 2
                 + (rb * c.s5 - ra * c.s4) ** 2)
            out[i] = spectra(u) * u * u * s
        return out

    if scene.sphere.is_vacuum:
        u1 = u2 = 0.0
    else:
        v1, _ = integrate_semi_infinite(f1, spec)
        v2, _ = integrate_semi_infinite(f2, spec)
        u1 = -v1 / (np.pi * l ** 3 * ra * rb)
        u2 = v2 / (2.0 * np.pi * ra * ra * rb * rb)
    u0 = freespace_pair_potential(scene.atom_a, scene.atom_b, l, spec).u_em
    return u1, u2, u0, u0 + u1 + u2


def sphere_Ume(scene: SphereScene, spec: QuadratureSpec = QuadratureSpec(),
               n_max: int = 30):
    """Magnetic-electric channel: the mixed potential of the exchanged scene."""
    return sphere_Uem(scene.exchange(), spec, n_max)


# ---------------------------------------------------------------------------
# ee and mm channels via the numeric trace of the scattering Green tensor


@np.errstate(over="ignore", invalid="ignore")
def _scattering_green(scene: SphereScene, u: float, rel_tol: float,
                      n_start: int, swap: bool) -> np.ndarray:
    """Dimensionless scattering Green tensor G1(r_B, r_A, iu), Cartesian.

    Assembled from the vector-wave expansion with explicit m-sums; the
    alternating phases cancel against those of the scattering
    coefficients, leaving the real form

        G1 = (-u/4pi) sum_n c_n [bt^M sum_mp M~M~ - bt^N sum_mp N~N~].

    swap=True exchanges bt^M and bt^N, which turns the result into the
    tensor governing the mm channel (up to the -(u)^2 factor applied by
    the caller's integrand).
    """
    if not 0.0 < scene.theta < np.pi:
        raise ValueError("numeric trace path requires theta strictly inside (0, pi)")
    theta = 0.5 * scene.theta
    ra, rb = scene.r_a, scene.r_b
    # every term decays at least as exp(-u(r_a + r_b - 2R)); far beyond
    # that scale the tensor is zero to double precision
    if u * (ra + rb - 2.0 * scene.radius_R) > 100.0:
        return np.zeros((3, 3))
    xa, xb = u * ra, u * rb
    ct, st = math.cos(theta), math.sin(theta)
    basis_a = _local_basis(theta, 0.0)
    basis_b = _local_basis(theta, np.pi)
    ea = np.stack(basis_a)  # rows: e_r, e_theta, e_phi
    eb = np.stack(basis_b)

    n_max = max(n_start, math.ceil(u * max(ra, rb)) + 15, 20)
    out = np.zeros((3, 3))
    n_done = 0
    # unnormalized associated Legendre values overflow beyond this order
    n_cap = 600
    while True:
        sgn_m, log_m, sgn_n, log_n = _log_mie_arrays(scene.sphere, scene.radius_R,
                                                     u, n_max)
        if swap:
            sgn_m, log_m, sgn_n, log_n = sgn_n, log_n, sgn_m, log_m
        lka = log_k_scaled(n_max, xa)
        lkb = log_k_scaled(n_max, xb)
        # both atoms share the polar angle theta = Theta/2
        p_all, dp_all = lpmn(n_max, n_max, ct)  # shape (m+1, n+1)
        dtheta_all = -st * dp_all
        block = np.zeros((3, 3))
        tail_abs = []
        for n in range(n_done + 1, n_max + 1):
            m = np.arange(n + 1)
            # fold sqrt((n-m)!/(n+m)!) into the Legendre values per point
            w_half = np.exp(0.5 * (gammaln(n - m + 1) - gammaln(n + m + 1)))
            pbar = p_all[: n + 1, n] * w_half
            dpbar = dtheta_all[: n + 1, n] * w_half
            weight = np.where(m == 0, 1.0, 2.0)
            # combine exponents before evaluating: kt grows and bt decays
            lamp = lka[n] - xa + lkb[n] - xb
            amp_m = sgn_m[n - 1] * math.exp(log_m[n - 1] + lamp)
            amp_n = sgn_n[n - 1] * math.exp(log_n[n - 1] + lamp) / (xa * xb)
            rho_a = -(n + xa * math.exp(lka[n - 1] - lka[n]))
            rho_b = -(n + xb * math.exp(lkb[n - 1] - lkb[n]))
            c_n = (2.0 * n + 1.0) / (n * (n + 1.0))
            tm = np.zeros((3, 3))
            tn = np.zeros((3, 3))
            # azimuths: atom A at phi = 0, atom B at phi = pi
            sa, ca_ = np.sin(m * 0.0), np.cos(m * 0.0)
            sb, cb_ = np.sin(m * np.pi), np.cos(m * np.pi)
            mp_over = m * pbar / st
            for p in (1, -1):
                    if p == 1:
                        ma_loc = np.stack([np.zeros(n + 1), -mp_over * sa, -dpbar * ca_])
                        mb_loc = np.stack([np.zeros(n + 1), -mp_over * sb, -dpbar * cb_])
                        va_loc = np.stack([n * (n + 1.0) * pbar * ca_,
                                           rho_a * dpbar * ca_, -rho_a * mp_over * sa])
                        vb_loc = np.stack([n * (n + 1.0) * pbar * cb_,
                                           rho_b * dpbar * cb_, -rho_b * mp_over * sb])
                    else:
                        ma_loc = np.stack([np.zeros(n + 1), mp_over * ca_, -dpbar * sa])
                        mb_loc = np.stack([np.zeros(n + 1), mp_over * cb_, -dpbar * sb])
                        va_loc = np.stack([n * (n + 1.0) * pbar * sa,
                                           rho_a * dpbar * sa, rho_a * mp_over * ca_])
                        vb_loc = np.stack([n * (n + 1.0) * pbar * sb,
                                           rho_b * dpbar * sb, rho_b * mp_over * cb_])
                    ma = ea.T @ ma_loc  # (3, m) Cartesian vectors
                    mb = eb.T @ mb_loc
                    va = ea.T @ va_loc
                    vb = eb.T @ vb_loc
                    tm += np.einsum("m,im,jm->ij", weight, mb, ma)
                    tn += np.einsum("m,im,jm->ij", weight, vb, va)
            contrib = c_n * (amp_m * tm - amp_n * tn)
            block += contrib
            tail_abs.append(abs(c_n) * (abs(amp_m) * np.abs(tm).sum()
                                        + abs(amp_n) * np.abs(tn).sum()))
        if not np.all(np.isfinite(block)):
            raise SeriesNonConvergence(
                f"Green tensor series lost precision at u={u:.6g}, n_max={n_max}",
                n_reached=n_max, tail_magnitude=math.inf)
        out += block
        scale = np.abs(out).sum() + 1e-300
        n_tail = max(3, (n_max - n_done) // 8)
        tail_mag = float(np.sum(tail_abs[-n_tail:]))
        if tail_mag <= 0.1 * rel_tol * scale:
            break
        if n_max >= n_cap:
            raise SeriesNonConvergence(
                f"Green tensor series not converged at u={u:.6g}",
                n_reached=n_max, tail_magnitude=tail_mag / scale)
        n_done = n_max
        n_max = min(2 * n_max, n_cap)
    return (-u / (4.0 * np.pi)) * out


def _freespace_green(scene: SphereScene, u: float) -> np.ndarray:
    """Dimensionless free-space Green tensor G0(r_B, r_A, iu), Cartesian."""
    theta = 0.5 * scene.theta
    pa = scene.r_a * np.array([math.sin(theta), 0.0, math.cos(theta)])
    pb = scene.r_b * np.array([-math.sin(theta), 0.0, math.cos(theta)])
    d = pb - pa
    rho = float(np.linalg.norm(d))
    e = d / rho
    x = u * rho
    a_pol = 1.0 + x + x * x
    b_pol = 3.0 + 3.0 * x + x * x
    pref = math.exp(-x) / (4.0 * np.pi * u * u * rho ** 3)
    return pref * (a_pol * np.eye(3) - b_pol * np.outer(e, e))


def sphere_Uee_Umm_numeric(scene: SphereScene,
                           spec: QuadratureSpec = QuadratureSpec(),
                           n_max: int = 30):
    """Body-induced parts of the ee and mm channels by numeric trace.

    Returns (u_ee_b, u_mm_b).  The mm value is the ee functional with
    the two scattering coefficient families exchanged and the magnetic
    spectra in place of the electric ones, realizing the duality
    mapping exactly.
    """
    if scene.sphere.is_vacuum:
        return 0.0, 0.0

    def make(swap):
        def f(u_arr):
            out = np.empty_like(u_arr)
            for i, u in enumerate(u_arr):
                if u == 0.0:
                    out[i] = 0.0
                    continue
                if swap:
                    sp = (atom_beta_iu(scene.atom_a, u)
                          * atom_beta_iu(scene.atom_b, u))
                else:
                    sp = (atom_alpha_iu(scene.atom_a, u)
                          * atom_alpha_iu(scene.atom_b, u))
                if sp == 0.0:
                    out[i] = 0.0
                    continue
                g1 = _scattering_green(scene, u, spec.rel_tol, n_max, swap)
                g0 = _freespace_green(scene, u)
                out[i] = u ** 4 * sp * (2.0 * np.sum(g0 * g1) + np.sum(g1 * g1))
            return out
        return f

    v_ee, _ = integrate_semi_infinite(make(False), spec)
    v_mm, _ = integrate_semi_infinite(make(True), spec)
    return -8.0 * np.pi * v_ee, -8.0 * np.pi * v_mm


# ---------------------------------------------------------------------------
# Limiting cases


def sphere_Uem_large(scene: SphereScene,
                     spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Mixed potential for atoms close to a large sphere.

    Valid when both atom-surface gaps are small compared to R and the
    atom separation is small compared to R; the sphere then acts like a
    wall with static-image reflection factors under the J integrals.
    """
    R = scene.radius_R
    da = scene.r_a - R
    db = scene.r_b - R
    l = scene.chord_l
    if not (da < 0.2 * R and db < 0.2 * R):
        raise ValueError("large-sphere limit requires atom-surface gaps << R")
    if not l < 0.2 * R:
        raise ValueError("large-sphere limit requires atom separation << R")
    X = R * scene.theta
    d_plus = db + da
    d_minus = db - da
    l_plus = math.sqrt(X * X + d_plus * d_plus)

    def j_integral(k, m):
        def f(u):
            e = eps_iu(scene.sphere, u)
            mu = mu_iu(scene.sphere, u)
            re = (e - 1.0) / (e + 1.0)
            rm = (mu - 1.0) / (mu + 1.0)
            return (u * u * atom_alpha_iu(scene.atom_a, u)
                    * atom_beta_iu(scene.atom_b, u) * re ** k * rm ** m)
        val, _ = integrate_semi_infinite(f, spec)
        return val

    j10 = j_integral(1, 0)
    j01 = j_integral(0, 1)
    j20 = j_integral(2, 0)
    j02 = j_integral(0, 2)
    j11 = j_integral(1, 1)
    lp2 = (l_plus + d_plus) ** 2
    brace = (2.0 * l_plus * lp2 * ((X * X - d_minus * d_plus) * j10
                                   + (X * X + d_minus * d_plus) * j01)
             + l ** 3 * (2.0 * l_plus ** 2 + X * X) * (j20 + j02)
             + 4.0 * l ** 3 * (X * X - l_plus * d_plus) * j11)
    return brace / (2.0 * np.pi * l ** 3 * l_plus ** 4 * lp2)


def sphere_Uem_small(scene: SphereScene,
                     spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Mixed body-induced potential for a small sphere.

    The sphere enters only through its Clausius-Mossotti polarizability
    and magnetizability; substituting arbitrary static response factors
    turns this into the nonadditive three-atom potential.
    """
    R = scene.radius_R
    ra, rb = scene.r_a, scene.r_b
    if not (R < 0.2 * ra and R < 0.2 * rb):
        raise ValueError("small-sphere limit requires R << r_a, r_b")
    l = scene.chord_l
    la, lb = scene.l_a, scene.l_b
    g = scene.gamma
    sin2 = math.sin(scene.theta) ** 2

    def f(u):
        e = eps_iu(scene.sphere, u)
        m = mu_iu(scene.sphere, u)
        e_cm = (e - 1.0) / (e + 2.0)
        m_cm = (m - 1.0) / (m + 2.0)
        xa, xb = ra * u, rb * u
        apol_a = 1.0 + xa + xa * xa
        apol_b = 1.0 + xb + xb * xb
        brace = ((2.0 * rb * (1.0 + xa) * sin2 + (lb - la * g) * apol_a)
                 * (1.0 + xb) * rb * e_cm
                 + (2.0 * ra * (1.0 + xb) * sin2 + (la - lb * g) * apol_b)
                 * (1.0 + xa) * ra * m_cm)
        return (u * u * atom_alpha_iu(scene.atom_a, u)
                * atom_beta_iu(scene.atom_b, u)
                * np.exp(-(ra + rb + l) * u) * (1.0 + l * u) * brace)

    val, _ = integrate_semi_infinite(f, spec)
    return R ** 3 * val / (np.pi * l ** 3 * ra ** 3 * rb ** 3)
