"""Command-line front end: config parsing, sweeps, CSV output, self test.

Configs are flat ``key = value`` documents with ``#`` comments and
dot-namespaced keys, for example::

    command = sphere
    host.wpe = 3
    host.wte = 1
    host.ge = 0.001
    sphere.radius_R = 1
    r_a = 1.03
    r_b = 1.03
    atom_a.a0 = 1
    atom_b.b0 = 1
    sweep.variable = theta
    sweep.start = 0.01
    sweep.stop = 3.14159
    sweep.count = 60
    sweep.spacing = linear

Exit codes: 0 success, 1 config error, 2 numeric non-convergence,
3 internal error.
"""

import argparse
import csv
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .errors import NonConvergenceError
from .halfspace import HalfSpaceScene, halfspace_Ue, halfspace_Um, halfspace_Ue_retarded
from .pair_kernels import (BulkScene, bulk_pair_potential,
                           freespace_pair_potential)
from .quadrature import QuadratureSpec, integrate_semi_infinite
from .response import (AtomModel, LocalFieldContext, MaterialModel, eps_iu,
                       lf_electric, lf_magnetic)
from .sphere import (SphereScene, k0_cartesian_direct,
                     k0_spherical_to_cartesian, sphere_Uem, sphere_Ume)


class ConfigError(ValueError):
    pass


_GEOMETRY_COMMANDS = ("freespace", "bulk", "halfspace", "sphere")
_COMMANDS = _GEOMETRY_COMMANDS + ("sweep", "selftest")

_MATERIAL_FIELDS = ("variant", "wpe", "wte", "ge", "wpm", "wtm", "gm")
_ATOM_FIELDS = ("a0", "b0", "resonance")

_KNOWN_KEYS = {"command", "l", "r_a", "r_b", "theta", "bulk.l",
               "halfspace.z", "sphere.radius_R", "lf.enabled", "output",
               "sweep.variable", "sweep.start", "sweep.stop", "sweep.count",
               "sweep.spacing", "sweep.command",
               "quadrature.rel_tol", "quadrature.abs_tol",
               "quadrature.max_subdivisions", "quadrature.transform"}
for _prefix in ("host", "wall"):
    _KNOWN_KEYS.update(f"{_prefix}.{f}" for f in _MATERIAL_FIELDS)
for _prefix in ("atom", "atom_a", "atom_b"):
    _KNOWN_KEYS.update(f"{_prefix}.{f}" for f in _ATOM_FIELDS)

_STRING_KEYS = {"command", "host.variant", "wall.variant", "sweep.variable",
                "sweep.spacing", "sweep.command", "quadrature.transform",
                "output"}
_BOOL_KEYS = {"lf.enabled"}

_SWEEPABLE = {"l", "bulk.l", "halfspace.z", "r_a", "r_b", "theta"}


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    count: int
    spacing: str = "linear"

    def points(self):
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class RunConfig:
    command: str
    values: dict
    sweep: Optional[SweepSpec]
    quad: QuadratureSpec
    output: Optional[str] = None


def parse_config(text: str) -> RunConfig:
    """Parse and validate a key=value config document."""
    values = {}
    lines = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = _parse_value(key, val, lineno)
        lines[key] = lineno

    def bad(key, msg):
        loc = f"line {lines[key]}: " if key in lines else ""
        return ConfigError(f"{loc}{msg}")

    command = values.pop("command", None)
    if command is None:
        raise ConfigError("missing required key 'command'")
    if command not in _COMMANDS:
        raise bad("command", f"unknown command {command!r}")

    sweep = None
    if any(k.startswith("sweep.") for k in values):
        for req in ("sweep.variable", "sweep.start", "sweep.stop", "sweep.count"):
            if req not in values:
                raise ConfigError(f"missing required key {req!r}")
        var = values.pop("sweep.variable")
        if var not in _SWEEPABLE:
            raise bad("sweep.variable", f"cannot sweep over {var!r}")
        count = values.pop("sweep.count")
        if not float(count).is_integer() or int(count) < 2:
            raise bad("sweep.count", "sweep.count must be an integer >= 2")
        spacing = values.pop("sweep.spacing", "linear")
        if spacing not in ("linear", "log"):
            raise bad("sweep.spacing", f"unknown spacing {spacing!r}")
        start, stop = values.pop("sweep.start"), values.pop("sweep.stop")
        if spacing == "log" and (start <= 0 or stop <= 0):
            raise bad("sweep.start", "log spacing requires positive bounds")
        sweep = SweepSpec(var, float(start), float(stop), int(count), spacing)

    if command == "sweep":
        target = values.pop("sweep.command", None)
        if target is None:
            raise ConfigError("command=sweep requires 'sweep.command'")
        if target not in _GEOMETRY_COMMANDS:
            raise bad("sweep.command", f"cannot sweep command {target!r}")
        if sweep is None:
            raise ConfigError("command=sweep requires a sweep block")
        command = target
    else:
        values.pop("sweep.command", None)

    quad_kwargs = {}
    for short in ("rel_tol", "abs_tol", "max_subdivisions", "transform"):
        key = f"quadrature.{short}"
        if key in values:
            v = values.pop(key)
            quad_kwargs[short] = int(v) if short == "max_subdivisions" else v
    try:
        quad = QuadratureSpec(**quad_kwargs)
    except ValueError as exc:
        raise ConfigError(f"invalid quadrature spec: {exc}") from exc

    output = values.pop("output", None)
    if command != "selftest":
        swept = sweep.variable if sweep is not None else None
        _validate_scene_keys(command, values, bad, swept)
    return RunConfig(command=command, values=values, sweep=sweep, quad=quad,
                     output=output)


def _parse_value(key, val, lineno):
    if key in _STRING_KEYS:
        return val
    if key in _BOOL_KEYS:
        if val.lower() in ("true", "1", "yes"):
            return True
        if val.lower() in ("false", "0", "no"):
            return False
        raise ConfigError(f"line {lineno}: key {key!r} expects a boolean")
    try:
        return float(val)
    except ValueError:
        raise ConfigError(f"line {lineno}: key {key!r} expects a number, "
                          f"got {val!r}") from None


_REQUIRED = {"freespace": ("l",), "bulk": ("bulk.l",),
             "halfspace": ("halfspace.z",),
             "sphere": ("sphere.radius_R", "r_a", "r_b", "theta")}


def _validate_scene_keys(command, values, bad, swept=None):
    for req in _REQUIRED[command]:
        if req == swept:
            continue
        if req not in values:
            raise ConfigError(f"missing required key {req!r} for command "
                              f"{command!r}")
    if "theta" in values and not 0.0 <= values["theta"] <= math.pi:
        raise bad("theta", f"theta = {values['theta']} outside [0, pi]")
    for key in ("l", "bulk.l", "halfspace.z", "sphere.radius_R", "r_a", "r_b"):
        if key in values and values[key] <= 0:
            raise bad(key, f"{key} must be positive")


# ---------------------------------------------------------------------------
# Scene construction


def _material_from(values, prefix) -> MaterialModel:
    fields = {f: values.get(f"{prefix}.{f}") for f in _MATERIAL_FIELDS}
    variant = fields.pop("variant", None)
    has_resonance = any(fields[f] is not None for f in ("wpe", "wpm"))
    if variant is None:
        variant = "drude_lorentz" if has_resonance else "vacuum"
    if variant == "vacuum":
        return MaterialModel.vacuum()
    if variant == "perfect_mirror":
        return MaterialModel.perfect_mirror()
    if variant != "drude_lorentz":
        raise ConfigError(f"unknown material variant {variant!r}")
    kwargs = {k: v for k, v in fields.items() if v is not None}
    try:
        return MaterialModel.drude_lorentz(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _atom_from(values, prefix) -> AtomModel:
    kwargs = {f: values[f"{prefix}.{f}"] for f in _ATOM_FIELDS
              if f"{prefix}.{f}" in values}
    try:
        return AtomModel(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


# ---------------------------------------------------------------------------
# Row evaluation (top level so sweeps can run in worker processes)


def _fmt(x: float) -> str:
    return repr(float(x))


def _compute_row(args):
    command, values, quad, nmax, var, var_value = args
    if var is not None:
        values = dict(values)
        values[var] = var_value
    if command == "freespace":
        atom_a = _atom_from(values, "atom_a")
        atom_b = _atom_from(values, "atom_b")
        pb = freespace_pair_potential(atom_a, atom_b, values["l"], quad)
        err = max(pb.meta.values()) if pb.meta else 0.0
        return [values["l"], pb.u_ee, pb.u_em, pb.u_me, pb.u_mm, pb.total, err]
    if command == "bulk":
        host = _material_from(values, "host")
        scene = BulkScene(host=host, atom_a=_atom_from(values, "atom_a"),
                          atom_b=_atom_from(values, "atom_b"),
                          separation_l=values["bulk.l"],
                          lf=LocalFieldContext(host, values.get("lf.enabled", True)))
        pb = bulk_pair_potential(scene, quad)
        err = max(pb.meta.values()) if pb.meta else 0.0
        return [values["bulk.l"], pb.u_ee, pb.u_em, pb.u_me, pb.u_mm, pb.total, err]
    if command == "halfspace":
        scene = HalfSpaceScene(wall=_material_from(values, "wall"),
                               atom=_atom_from(values, "atom"),
                               z=values["halfspace.z"])
        ue = halfspace_Ue(scene, quad)
        um = halfspace_Um(scene, quad)
        err = quad.rel_tol * (abs(ue) + abs(um)) + quad.abs_tol
        return [values["halfspace.z"], ue, um, ue + um, err]
    if command == "sphere":
        scene = SphereScene(sphere=_material_from(values, "host"),
                            radius_R=values["sphere.radius_R"],
                            atom_a=_atom_from(values, "atom_a"),
                            atom_b=_atom_from(values, "atom_b"),
                            r_a=values["r_a"], r_b=values["r_b"],
                            theta=values["theta"])
        u1, u2, u0_em, em_total = sphere_Uem(scene, quad, nmax)
        _, _, u0_me, me_total = sphere_Ume(scene, quad, nmax)
        pb0 = freespace_pair_potential(scene.atom_a, scene.atom_b,
                                       scene.chord_l, quad)
        ratio = em_total / u0_em if u0_em != 0.0 else math.nan
        err = quad.rel_tol * max(abs(em_total), abs(me_total)) + quad.abs_tol
        return [values["theta"], pb0.u_ee, pb0.u_em, pb0.u_me, pb0.u_mm,
                em_total, me_total, ratio, err]
    raise RuntimeError(f"unhandled command {command!r}")


_HEADERS = {
    "freespace": ["l", "u_ee", "u_em", "u_me", "u_mm", "total", "err_estimate"],
    "bulk": ["l", "u_ee", "u_em", "u_me", "u_mm", "total", "err_estimate"],
    "halfspace": ["z", "u_e", "u_m", "total", "err_estimate"],
    "sphere": ["theta", "u_ee_0", "u_em_0", "u_me_0", "u_mm_0",
               "u_em_total", "u_me_total", "ratio_em", "err_estimate"],
}

_DEFAULT_VAR = {"freespace": "l", "bulk": "bulk.l", "halfspace": "halfspace.z",
                "sphere": "theta"}


def run(config: RunConfig, nmax: int = 30, threads: int = 1,
        stream=None) -> int:
    """Execute a parsed config, writing CSV to the configured output."""
    if config.command == "selftest":
        ok = selftest(stream or sys.stdout)
        return 0 if ok else 2

    if config.sweep is not None:
        var = config.sweep.variable
        points = list(config.sweep.points())
    else:
        var = None
        points = [None]

    header = list(_HEADERS[config.command])
    if var is not None:
        header[0] = var.split(".")[-1]
    tasks = [(config.command, config.values, config.quad, nmax, var, pt)
             for pt in points]
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_compute_row, tasks))
    else:
        rows = [_compute_row(t) for t in tasks]

    close = False
    if stream is None:
        if config.output:
            stream = open(config.output, "w", newline="")
            close = True
        else:
            stream = sys.stdout
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(x) for x in row])
    finally:
        if close:
            stream.close()
    return 0


# ---------------------------------------------------------------------------
# Self test


def _check_quadrature():
    spec = QuadratureSpec()
    checks = [
        (integrate_semi_infinite(lambda u: np.exp(-u), spec)[0], 1.0),
        (integrate_semi_infinite(lambda u: 1.0 / (1.0 + u * u), spec)[0], np.pi / 2),
        (integrate_semi_infinite(lambda u: u * u * np.exp(-2 * u), spec)[0], 0.25),
    ]
    return all(abs(got - want) <= 1e-8 * abs(want) for got, want in checks)


def _check_specfun():
    from .specfun import legendre_pn_dpn, modified_spherical_bessel
    ok = abs(legendre_pn_dpn(3, 0.5).p + 0.4375) < 1e-14
    sb = modified_spherical_bessel(0, 1.0)
    ok &= abs(sb.mantissa_first_kind - math.sinh(1.0) * math.exp(-1.0)) < 1e-12
    for n in (0, 3, 10):
        for x in (0.5, 5.0, 50.0):
            b = modified_spherical_bessel(n, x)
            wron = (b.mantissa_first_deriv * b.mantissa_third_kind
                    - b.mantissa_first_kind * b.mantissa_third_deriv)
            ok &= abs(wron - 1.0 / x) < 1e-12 / x
    return bool(ok)


def _check_response():
    m = MaterialModel.drude_lorentz(wpe=3.0, wte=1.0, ge=0.001)
    ok = abs(eps_iu(m, 0.0) - 10.0) < 1e-12
    v = MaterialModel.vacuum()
    ok &= lf_electric(v, 1.0) == 1.0 and lf_magnetic(v, 1.0) == 1.0
    return bool(ok)


def _check_bulk_duality():
    rng = np.random.default_rng(7)
    ok = True
    for _ in range(3):
        host = MaterialModel.drude_lorentz(
            wpe=rng.uniform(0.5, 3), wte=rng.uniform(0.5, 2), ge=0.01,
            wpm=rng.uniform(0.5, 3), wtm=rng.uniform(0.5, 2), gm=0.01)
        scene = BulkScene(host=host,
                          atom_a=AtomModel(a0=1.0, b0=0.3),
                          atom_b=AtomModel(a0=0.5, b0=0.8),
                          separation_l=rng.uniform(0.5, 2.0),
                          lf=LocalFieldContext(host, True))
        t1 = bulk_pair_potential(scene).total
        t2 = bulk_pair_potential(scene.dual()).total
        ok &= abs(t1 - t2) <= 1e-10 * abs(t1)
    return bool(ok)


def _check_halfspace():
    wall = MaterialModel.perfect_mirror()
    atom = AtomModel(a0=1.0)
    vals = [halfspace_Ue_retarded(HalfSpaceScene(wall, atom, z)) * z ** 4
            for z in (100.0, 400.0)]
    ok = abs(vals[0] - vals[1]) < 1e-6 * abs(vals[0])
    ok &= abs(vals[0] + 3.0 / (8.0 * np.pi)) < 1e-6
    scene = HalfSpaceScene(MaterialModel.drude_lorentz(wpe=2.0, wte=1.0),
                           AtomModel(a0=0.0, b0=1.0), 0.5)
    ok &= halfspace_Um(scene) == halfspace_Ue(scene.dual())
    return bool(ok)


def _check_sphere_basics():
    rng = np.random.default_rng(11)
    ok = True
    for _ in range(5):
        r_a, r_b = rng.uniform(0.8, 2.0, 2)
        th_a, th_b = rng.uniform(0.1, 1.4, 2)
        u = rng.uniform(0.2, 3.0)
        ksph = k0_spherical_to_cartesian(r_a, r_b, th_a, th_b, u)
        theta = th_a + th_b
        pa = r_a * np.array([math.sin(th_a), 0.0, math.cos(th_a)])
        pb = r_b * np.array([-math.sin(th_b), 0.0, math.cos(th_b)])
        kcart = k0_cartesian_direct(pa, pb, u)
        ok &= np.max(np.abs(ksph - kcart)) <= 1e-12 * np.max(np.abs(kcart))
    scene = SphereScene(sphere=MaterialModel.vacuum(), radius_R=0.5,
                        atom_a=AtomModel(a0=1.0, b0=0.2),
                        atom_b=AtomModel(a0=0.4, b0=1.0),
                        r_a=1.0, r_b=1.2, theta=1.0)
    u1, u2, u0, total = sphere_Uem(scene)
    ok &= u1 == 0.0 and u2 == 0.0 and total == u0
    mag = MaterialModel.drude_lorentz(wpm=2.0, wtm=1.0)
    scene2 = replace(scene, sphere=mag)
    ok &= sphere_Ume(scene2) == sphere_Uem(scene2.exchange())
    return bool(ok)


_SELFTEST_GROUPS = [
    ("quadrature", _check_quadrature),
    ("specfun", _check_specfun),
    ("response", _check_response),
    ("bulk-duality", _check_bulk_duality),
    ("halfspace", _check_halfspace),
    ("sphere-basics", _check_sphere_basics),
]


def selftest(stream=sys.stdout) -> bool:
    """Run the invariant battery; prints pass/fail per group."""
    all_ok = True
    for name, check in _SELFTEST_GROUPS:
        try:
            ok = check()
        except Exception as exc:  # a crashed group is a failure, not an abort
            print(f"FAIL {name} ({exc})", file=stream)
            all_ok = False
            continue
        print(("PASS" if ok else "FAIL") + f" {name}", file=stream)
        all_ok &= ok
    return all_ok


# ---------------------------------------------------------------------------
# Entry point


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="vdw",
        description="Ground-state van der Waals potentials near macroscopic bodies")
    parser.add_argument("command", choices=_COMMANDS)
    parser.add_argument("--config", help="path to a key=value config file")
    parser.add_argument("--tol", type=float, help="override quadrature rel_tol")
    parser.add_argument("--nmax", type=int, default=30,
                        help="initial series truncation order")
    parser.add_argument("--out", help="CSV output path (default stdout)")
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args(argv)

    try:
        if args.command == "selftest" and args.config is None:
            config = RunConfig(command="selftest", values={}, sweep=None,
                               quad=QuadratureSpec())
        else:
            if args.config is None:
                raise ConfigError(f"command {args.command!r} requires --config")
            with open(args.config) as fh:
                text = fh.read()
            config = parse_config(text)
            if config.command != args.command and args.command != "sweep":
                raise ConfigError(
                    f"config command {config.command!r} does not match "
                    f"CLI command {args.command!r}")
        if args.tol is not None:
            config = replace(config, quad=replace(config.quad, rel_tol=args.tol))
        if args.out is not None:
            config = replace(config, output=args.out)
    except (ConfigError, OSError) as exc:
        print(f"error: code=1 kind=config msg={exc}", file=sys.stderr)
        return 1

    try:
        return run(config, nmax=args.nmax, threads=args.threads)
    except NonConvergenceError as exc:
        print(f"error: code=2 kind=nonconvergence msg={exc}", file=sys.stderr)
        return 2
    except (ValueError, ConfigError) as exc:
        print(f"error: code=1 kind=config msg={exc}", file=sys.stderr)
        return 1
    except Exception as exc:
        print(f"error: code=3 kind=internal msg={exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
