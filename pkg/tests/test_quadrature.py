"""Adaptive quadrature contract: analytic battery, transforms, failure modes."""

import numpy as np
import pytest

from vdwkit import (AtomModel, BulkScene, LocalFieldContext, MaterialModel,
                    QuadratureSpec, bulk_pair_potential, integrate_interval,
                    integrate_semi_infinite)
from vdwkit.errors import QuadratureNonConvergence

BATTERY = [
    (lambda u: np.exp(-u), 1.0),
    (lambda u: 1.0 / (1.0 + u * u), np.pi / 2),
    (lambda u: u * u * np.exp(-2.0 * u), 0.25),
    (lambda u: u ** 3 * np.exp(-u), 6.0),
    (lambda u: np.exp(-u) * np.cos(3.0 * u), 0.1),
]


class TestSemiInfinite:
    @pytest.mark.parametrize("f,exact", BATTERY)
    def test_battery_default_spec(self, f, exact):
        spec = QuadratureSpec()
        val, err = integrate_semi_infinite(f, spec)
        assert val == pytest.approx(exact, rel=1e-9)
        assert err >= 0.0

    @pytest.mark.parametrize("transform", ["rational", "exp"])
    def test_transform_independence(self, transform):
        spec = QuadratureSpec(rel_tol=1e-9, transform=transform)
        for f, exact in BATTERY:
            val, _ = integrate_semi_infinite(f, spec)
            assert abs(val - exact) <= 10.0 * spec.rel_tol * abs(exact)

    def test_transform_independence_kernel_integrand(self):
        # one real kernel integrand: mixed-channel bulk potential at l = 1
        host = MaterialModel.drude_lorentz(wpe=2.0, wte=1.0, ge=0.01,
                                           wpm=1.0, wtm=0.8, gm=0.01)
        scene = BulkScene(host=host, atom_a=AtomModel(a0=1.0, b0=0.2),
                          atom_b=AtomModel(a0=0.5, b0=0.7), separation_l=1.0,
                          lf=LocalFieldContext(host, True))
        vals = [bulk_pair_potential(scene, QuadratureSpec(transform=t)).u_em
                for t in ("rational", "exp")]
        assert vals[0] == pytest.approx(vals[1], rel=1e-8)

    def test_tolerance_monotonicity(self):
        for f, exact in BATTERY:
            errors = []
            for rel_tol in (1e-5, 5e-6, 2.5e-6, 1.25e-6):
                val, _ = integrate_semi_infinite(f, QuadratureSpec(rel_tol=rel_tol))
                errors.append(abs(val - exact))
            for coarse, fine in zip(errors, errors[1:]):
                assert fine <= coarse + 1e-15

    def test_error_estimate_is_bound(self):
        for f, exact in BATTERY:
            val, err = integrate_semi_infinite(f, QuadratureSpec(rel_tol=1e-7))
            assert abs(val - exact) <= max(err, 1e-13 * abs(exact))


class TestInterval:
    def test_finite_intervals(self):
        assert integrate_interval(lambda x: x * x, 0.0, 1.0)[0] == pytest.approx(1 / 3, rel=1e-10)
        val, _ = integrate_interval(lambda v: 2.0 / v ** 2 - 1.0 / v ** 4, 1.0, np.inf)
        assert val == pytest.approx(5.0 / 3.0, rel=1e-9)
        assert integrate_interval(lambda v: v ** -4.0, 1.0, np.inf)[0] == pytest.approx(1 / 3, rel=1e-9)

    def test_offset_semi_infinite(self):
        val, _ = integrate_interval(lambda u: np.exp(-u), 2.0, np.inf)
        assert val == pytest.approx(np.exp(-2.0), rel=1e-9)

    def test_empty_interval(self):
        with pytest.raises(ValueError):
            integrate_interval(lambda x: x, 1.0, 1.0)


class TestFailureModes:
    def test_non_convergence_reports_panel(self):
        spec = QuadratureSpec(rel_tol=1e-13, abs_tol=1e-300, max_subdivisions=10)
        with pytest.raises(QuadratureNonConvergence) as exc_info:
            integrate_semi_infinite(lambda u: 1.0 / (1.0 + (u - 5.0) ** 2) ** 0.51
                                    * np.exp(-0.001 * u), spec)
        err = exc_info.value
        assert err.worst_panel is not None
        assert err.err_estimate > 0.0

    def test_nan_integrand_rejected(self):
        def bad(u):
            return np.where(u > 1.0, np.nan, 1.0) * np.exp(-u)
        with pytest.raises(ValueError):
            integrate_semi_infinite(bad, QuadratureSpec())

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(rel_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(max_subdivisions=5)
        with pytest.raises(ValueError):
            QuadratureSpec(transform="chebyshev")
