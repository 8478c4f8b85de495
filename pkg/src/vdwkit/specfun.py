"""Real-valued special functions for the geometry kernels.

Legendre polynomials with derivatives, and modified spherical Bessel
functions of the first and third kind with overflow-safe exponential
scaling.  The scaled pair is

    i_n(x) * exp(-x)        (first kind, growing like exp(x)/2x)
    kt_n(x) * exp(+x)       (third kind, decaying like exp(-x)/x)

where kt_n = (2/pi) k_n so that kt_0(x) = exp(-x)/x.  Alongside the
values we carry the Riccati derivatives [x f(x)]' under the same
scaling, since the scattering coefficients are built from those.

All series work internally in the log domain; the public constructors
exponentiate at the end and raise OverflowError only if even the scaled
mantissa leaves the double range.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, ive, kve, logsumexp

_LN2 = np.log(2.0)

# exp() under/overflow thresholds for IEEE doubles
_LOG_MIN = -745.0
_LOG_MAX = 709.0


def double_factorial(n: int) -> float:
    """n!! as a float, with the convention (-1)!! = 1."""
    if n < -1:
        raise ValueError(f"double factorial undefined for n={n}")
    if n <= 0:
        return 1.0
    if n > 300:
        return float(np.exp(log_double_factorial(n)))
    out = 1.0
    for k in range(n, 1, -2):
        out *= k
    return out


def log_double_factorial(n: int) -> float:
    """ln(n!!), valid for large n where n!! itself overflows."""
    if n < -1:
        raise ValueError(f"double factorial undefined for n={n}")
    if n <= 0:
        return 0.0
    if n % 2 == 1:
        k = (n - 1) // 2
        return gammaln(n + 1) - k * _LN2 - gammaln(k + 1)
    k = n // 2
    return k * _LN2 + gammaln(k + 1)


# ---------------------------------------------------------------------------
# Legendre polynomials


@dataclass(frozen=True)
class LegendreEval:
    """P_n, P_n' and the combination F_n = n(n+1)P_n - gamma*P_n'."""

    order: int
    argument: float
    p: float
    dp: float
    f: float


def legendre_table(n_max: int, gamma: float):
    """Arrays (p, dp, f) of P_n(gamma), P_n'(gamma), F_n(gamma), n = 0..n_max.

    Upward three-term recurrence for P_n; the derivative follows from
    (1 - gamma^2) P_n' = n (P_{n-1} - gamma P_n), with the closed form
    P_n'(+-1) = (+-1)^(n+1) n(n+1)/2 at the endpoints.
    """
    if not -1.0 <= gamma <= 1.0:
        raise ValueError(f"Legendre argument {gamma} outside [-1, 1]")
    n = np.arange(n_max + 1, dtype=float)
    p = np.empty(n_max + 1)
    p[0] = 1.0
    if n_max >= 1:
        p[1] = gamma
    for k in range(1, n_max):
        p[k + 1] = ((2 * k + 1) * gamma * p[k] - k * p[k - 1]) / (k + 1)
    dp = np.zeros(n_max + 1)
    one_m_g2 = 1.0 - gamma * gamma
    if one_m_g2 > 0.0:
        dp[1:] = n[1:] * (p[:-1] - gamma * p[1:]) / one_m_g2
    else:
        sgn = 1.0 if gamma > 0 else -1.0
        # P_n'(+1) = n(n+1)/2, P_n'(-1) = (-1)^(n+1) n(n+1)/2
        dp[1:] = n[1:] * (n[1:] + 1) / 2.0
        if sgn < 0:
            dp[1::2] *= 1.0
            dp[2::2] *= -1.0
    f = n * (n + 1) * p - gamma * dp
    return p, dp, f


def legendre_pn_dpn(n: int, gamma: float) -> LegendreEval:
    """Evaluate P_n, P_n' and F_n at a single order n >= 1."""
    if n < 1:
        raise ValueError(f"Legendre order must be >= 1, got {n}")
    p, dp, f = legendre_table(n, gamma)
    return LegendreEval(order=n, argument=gamma, p=p[n], dp=dp[n], f=f[n])


# ---------------------------------------------------------------------------
# Modified spherical Bessel functions, log domain

# ive() underflows to 0 around |log| ~ 700; below this threshold the
# scaled value has lost precision to the subnormal range, so switch to
# the explicit series.
_IVE_FLOOR = 1e-290


def _log_i_series(n: int, x: float) -> float:
    """ln i_n(x) from the ascending series, for the n >> x regime.

    i_n(x) = sum_m x^(n+2m) / (2^m m! (2n+2m+1)!!); the terms peak near
    m* ~ x^2/(4n) and decay fast when n is not small compared to x.
    """
    m_peak = x * x / (4.0 * n + 6.0)
    m_hi = int(m_peak + 20 + 10.0 * np.sqrt(m_peak + 1.0))
    m = np.arange(m_hi + 1, dtype=float)
    odd = 2 * n + 2 * m + 1  # (2k+1)!! with k = n + m
    k = n + m
    log_odd_df = gammaln(odd + 1) - k * _LN2 - gammaln(k + 1)
    log_terms = (n + 2 * m) * np.log(x) - m * _LN2 - gammaln(m + 1) - log_odd_df
    return float(logsumexp(log_terms))


def log_i_scaled(n_max: int, x: float) -> np.ndarray:
    """ln(i_n(x) e^{-x}) for n = 0..n_max."""
    if x <= 0.0:
        raise ValueError(f"argument must be positive, got x={x}")
    nu = np.arange(n_max + 1) + 0.5
    scaled = ive(nu, x)  # I_nu(x) e^{-x}
    pref = 0.5 * np.log(np.pi / (2.0 * x))
    out = np.full(n_max + 1, -np.inf)
    ok = scaled > _IVE_FLOOR
    out[ok] = pref + np.log(scaled[ok])
    for idx in np.nonzero(~ok)[0]:
        out[idx] = _log_i_series(int(idx), x) - x
    return out


def log_k_scaled(n_max: int, x: float) -> np.ndarray:
    """ln(kt_n(x) e^{+x}) for n = 0..n_max, kt_n = (2/pi) k_n."""
    if x <= 0.0:
        raise ValueError(f"argument must be positive, got x={x}")
    nu = np.arange(n_max + 1) + 0.5
    scaled = kve(nu, x)  # K_nu(x) e^{+x}
    pref = 0.5 * np.log(2.0 / (np.pi * x))
    out = np.empty(n_max + 1)
    finite = np.isfinite(scaled)
    out[finite] = pref + np.log(scaled[finite])
    if not np.all(finite):
        # kve overflows for large order; continue with the upward
        # recurrence kt_{n+1} = ((2n+1)/x) kt_n + kt_{n-1}, renormalized
        first_bad = int(np.nonzero(~finite)[0][0])
        if first_bad < 2:
            raise OverflowError(f"third-kind mantissa overflow at n={first_bad}, x={x}")
        log_scale = max(out[first_bad - 1], out[first_bad - 2])
        a = np.exp(out[first_bad - 2] - log_scale)
        b = np.exp(out[first_bad - 1] - log_scale)
        for n in range(first_bad - 1, n_max):
            a, b = b, ((2 * n + 1) / x) * b + a
            if b > 1e250:
                a /= b
                log_scale += np.log(b)
                b = 1.0
            out[n + 1] = log_scale + np.log(b)
    return out


def log_ri_scaled(n_max: int, x: float, li: np.ndarray | None = None) -> np.ndarray:
    """ln([x i_n(x)]' e^{-x}) via [x i_n]' = (n+1) i_n + x i_{n+1}."""
    if li is None or len(li) < n_max + 2:
        li = log_i_scaled(n_max + 1, x)
    n = np.arange(n_max + 1, dtype=float)
    return np.logaddexp(np.log(n + 1) + li[: n_max + 1], np.log(x) + li[1 : n_max + 2])


def log_rk_scaled(n_max: int, x: float, lk: np.ndarray | None = None) -> np.ndarray:
    """ln|[x kt_n(x)]'| e^{+x}-scaled; the derivative itself is negative.

    [x kt_n]' = -(n kt_n + x kt_{n-1}) for n >= 1, and [x kt_0]' = -e^{-x}.
    """
    if lk is None or len(lk) < n_max + 1:
        lk = log_k_scaled(n_max, x)
    out = np.empty(n_max + 1)
    out[0] = 0.0  # |[x kt_0]'| e^{x} = 1
    if n_max >= 1:
        n = np.arange(1, n_max + 1, dtype=float)
        out[1:] = np.logaddexp(np.log(n) + lk[1 : n_max + 1], np.log(x) + lk[: n_max])
    return out


@dataclass(frozen=True)
class ScaledBessel:
    """Exponentially scaled modified spherical Bessel values at one (n, x).

    mantissa_first_kind   = i_n(x) e^{-x}
    mantissa_third_kind   = kt_n(x) e^{+x}
    mantissa_first_deriv  = [x i_n(x)]' e^{-x}
    mantissa_third_deriv  = [x kt_n(x)]' e^{+x}   (negative)
    """

    order: int
    argument: float
    mantissa_first_kind: float
    mantissa_third_kind: float
    mantissa_first_deriv: float
    mantissa_third_deriv: float


def modified_spherical_bessel(n: int, x: float) -> ScaledBessel:
    """Scaled first- and third-kind values and Riccati derivatives."""
    if n < 0:
        raise ValueError(f"order must be >= 0, got n={n}")
    if x <= 0.0:
        raise ValueError(f"argument must be positive, got x={x}")
    li = log_i_scaled(n + 1, x)
    lk = log_k_scaled(n, x)
    lri = log_ri_scaled(n, x, li)
    lrk = log_rk_scaled(n, x, lk)
    logs = (li[n], lk[n], lri[n], lrk[n])
    for lg in logs:
        if not _LOG_MIN < lg < _LOG_MAX:
            raise OverflowError(f"scaled mantissa out of range at n={n}, x={x}")
    return ScaledBessel(
        order=n,
        argument=x,
        mantissa_first_kind=float(np.exp(logs[0])),
        mantissa_third_kind=float(np.exp(logs[1])),
        mantissa_first_deriv=float(np.exp(logs[2])),
        mantissa_third_deriv=-float(np.exp(logs[3])),
    )
