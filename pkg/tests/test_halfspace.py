"""Single-atom potential near a half space: limits, duality, monotonicity."""

import numpy as np
import pytest

from vdwkit import (AtomModel, HalfSpaceScene, MaterialModel, QuadratureSpec,
                    halfspace_Ue, halfspace_Ue_nonretarded,
                    halfspace_Ue_retarded, halfspace_Um)

SPEC = QuadratureSpec(rel_tol=1e-9)

ATOM = AtomModel(a0=1e-3, b0=4e-4, resonance=1.3)
WALL = MaterialModel.drude_lorentz(wpe=0.9, wte=1.0, ge=0.03,
                                   wpm=0.4, wtm=0.8, gm=0.02)


class TestElectricPart:
    def test_vacuum_wall_is_zero(self):
        scene = HalfSpaceScene(wall=MaterialModel.vacuum(), atom=ATOM, z=1.0)
        assert halfspace_Ue(scene, SPEC) == 0.0

    def test_negative_for_electric_wall(self):
        wall = MaterialModel.drude_lorentz(wpe=2.0, wte=1.0)
        for z in (0.01, 0.5, 10.0):
            assert halfspace_Ue(HalfSpaceScene(wall, ATOM, z), SPEC) < 0.0

    def test_mirror_retarded_constant(self):
        # retarded mirror value: U_e * z^4 -> -3 a0 / (8 pi)
        mirror = MaterialModel.perfect_mirror()
        target = -3.0 * ATOM.a0 / (8.0 * np.pi)
        for z in (100.0, 400.0):
            val = halfspace_Ue(HalfSpaceScene(mirror, ATOM, z), SPEC) * z ** 4
            assert val == pytest.approx(target, rel=0.01)

    def test_retarded_closed_form_vs_full(self):
        for z in (100.0, 300.0):
            scene = HalfSpaceScene(WALL, ATOM, z)
            full = halfspace_Ue(scene, SPEC)
            closed = halfspace_Ue_retarded(scene, SPEC)
            assert full == pytest.approx(closed, rel=1e-3)

    def test_nonretarded_slope(self):
        zs = (0.001, 0.01)
        vals = [abs(halfspace_Ue(HalfSpaceScene(WALL, ATOM, z), SPEC))
                for z in zs]
        slope = np.log(vals[1] / vals[0]) / np.log(zs[1] / zs[0])
        assert slope == pytest.approx(-3.0, abs=0.05)

    def test_nonretarded_closed_form_vs_full(self):
        scene = HalfSpaceScene(WALL, ATOM, 0.002)
        full = halfspace_Ue(scene, SPEC)
        closed = halfspace_Ue_nonretarded(scene, SPEC)
        assert full == pytest.approx(closed, rel=0.02)

    def test_mirror_nonretarded_ratio(self):
        scene = HalfSpaceScene(MaterialModel.perfect_mirror(), ATOM, 0.002)
        ratio = halfspace_Ue(scene, SPEC) / halfspace_Ue_nonretarded(scene, SPEC)
        assert ratio == pytest.approx(1.0, abs=0.02)

    def test_monotone_decay(self):
        wall = MaterialModel.drude_lorentz(wpe=2.0, wte=1.0)
        zs = np.geomspace(0.05, 5.0, 12)
        vals = [abs(halfspace_Ue(HalfSpaceScene(wall, ATOM, z), SPEC))
                for z in zs]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_asymptote_dominance(self):
        # deep in each regime the matching asymptote is close and the
        # opposite one is far off
        wall = MaterialModel.drude_lorentz(wpe=2.0, wte=1.0)
        near_scene = HalfSpaceScene(wall, ATOM, 0.001)
        full = halfspace_Ue(near_scene, SPEC)
        assert halfspace_Ue_nonretarded(near_scene, SPEC) == pytest.approx(
            full, rel=1e-3)
        assert abs(halfspace_Ue_retarded(near_scene, SPEC) / full - 1.0) > 0.5
        far_scene = HalfSpaceScene(wall, ATOM, 100.0)
        full = halfspace_Ue(far_scene, SPEC)
        assert halfspace_Ue_retarded(far_scene, SPEC) == pytest.approx(
            full, rel=1e-2)
        assert abs(halfspace_Ue_nonretarded(far_scene, SPEC) / full - 1.0) > 0.5


class TestMagneticPart:
    def test_dual_identity_bitwise(self):
        scene = HalfSpaceScene(WALL, ATOM, 0.7)
        assert halfspace_Um(scene, SPEC) == halfspace_Ue(scene.dual(), SPEC)

    def test_total_duality_invariant(self):
        scene = HalfSpaceScene(WALL, ATOM, 0.4)
        total = halfspace_Ue(scene, SPEC) + halfspace_Um(scene, SPEC)
        dual_total = (halfspace_Ue(scene.dual(), SPEC)
                      + halfspace_Um(scene.dual(), SPEC))
        assert dual_total == pytest.approx(total, rel=1e-12)

    def test_repulsive_for_magnetizable_atom_at_electric_wall(self):
        wall = MaterialModel.drude_lorentz(wpe=3.0, wte=1.0)
        atom = AtomModel(a0=0.0, b0=1e-3)
        scene = HalfSpaceScene(wall, atom, 0.005)
        assert halfspace_Um(scene, SPEC) > 0.0


class TestSceneValidation:
    def test_rejects_nonpositive_distance(self):
        with pytest.raises(ValueError):
            HalfSpaceScene(wall=WALL, atom=ATOM, z=0.0)
