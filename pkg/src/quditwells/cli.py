"""Command-line front end.

Subcommands build well systems from flags or a JSON config file, run the
library, and emit deterministic JSON/CSV artifacts (optionally with
rendered figures next to them):

    spectrum    eigenvalues, degeneracy groups, analytic residual
    evolve      CSV trace of amplitudes and populations
    revival     revival-period search report
    synth       gate synthesis reports (two-step, five-step, su3, commuting)
    pulse-plan  SFQ pulse schedules
    oracle      continuum grid solver validations
    validate    seeded self-check battery over the library invariants

Exit codes: 0 success, 2 usage/config error, 3 validation failure.
Config files supply defaults; explicit flags win. Identical config and
seed produce byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from quditwells import __version__
from quditwells import continuum as cont
from quditwells import dynamics as dyn
from quditwells import gates
from quditwells import serialization as ser
from quditwells import wells
from quditwells.operators import global_phase_distance, hermitian_eig, is_unitary

SPECTRUM_RESIDUAL_TOL = 1e-9


class UsageError(Exception):
    """Bad flags, malformed config, invalid input data (exit 2)."""


class ValidationFailure(Exception):
    """A requested check failed (exit 3)."""


# ---------------------------------------------------------------------------
# shared plumbing
# ---------------------------------------------------------------------------

def _json_arg(value: str, what: str):
    text = value
    if value.startswith("@"):
        try:
            with open(value[1:]) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {what} file: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON for {what}: {exc}") from exc


def _merge_config(args: argparse.Namespace, defaults: dict) -> dict:
    """defaults, overridden by --config file values, overridden by flags."""
    file_cfg = {}
    if getattr(args, "config", None):
        loaded = _json_arg("@" + args.config, "--config")
        if not isinstance(loaded, dict):
            raise UsageError("--config must contain a JSON object")
        unknown = set(loaded) - set(defaults)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        file_cfg = loaded
    merged = dict(defaults)
    merged.update(file_cfg)
    for key in defaults:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    return merged


# artifact routing is not part of the computation, so the reproducibility
# header leaves it out: identical physics config => identical bytes
_ROUTING_KEYS = ("output", "figures", "wavefunctions")


def _embedded(cfg: dict) -> dict:
    return {k: v for k, v in cfg.items() if k not in _ROUTING_KEYS}


def _emit(cfg: dict, text: str) -> None:
    path = cfg.get("output")
    if path:
        ser.write_text_atomic(path, text)
    else:
        sys.stdout.write(text)


def _figure_path(cfg: dict, suffix: str) -> str:
    path = cfg.get("output")
    if not path:
        raise UsageError("--figures requires --output")
    stem = path.rsplit(".", 1)[0]
    return f"{stem}{suffix}.png"


def _build_system(cfg: dict) -> tuple[wells.HamiltonianSpec, np.ndarray]:
    spec_kwargs = {"topology": cfg["topology"], "nu": cfg["nu"]}
    if cfg.get("delta_eps") is not None:
        spec_kwargs["delta_eps"] = cfg["delta_eps"]
    if cfg.get("d") is not None:
        spec_kwargs["d"] = cfg["d"]
    if cfg.get("matrix") is not None:
        data = cfg["matrix"]
        if isinstance(data, str):
            data = _json_arg(data, "--matrix")
        spec_kwargs["custom_matrix"] = ser.matrix_from_json(data)
    try:
        spec = wells.HamiltonianSpec(**spec_kwargs)
        h = wells.build_hamiltonian(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if cfg.get("perturb") is not None:
        data = cfg["perturb"]
        if isinstance(data, str):
            data = _json_arg(data, "--perturb")
        try:
            pspec = ser.perturbation_spec_from_json(data)
            h = h + wells.build_perturbation(pspec, dim=h.shape[0])
        except (KeyError, ValueError) as exc:
            raise UsageError(f"invalid perturbation: {exc}") from exc
    return spec, h


def _initial_state(cfg: dict, dim: int) -> np.ndarray:
    if cfg.get("amplitudes") is not None:
        data = cfg["amplitudes"]
        if isinstance(data, str):
            data = _json_arg(data, "--amplitudes")
        psi = ser.vector_from_json(data)
        if psi.size != dim:
            raise UsageError(f"state has {psi.size} amplitudes, system dimension is {dim}")
        if abs(np.linalg.norm(psi) ** 2 - 1.0) > 1e-9:
            raise UsageError(f"custom state is not normalized: |psi|^2 = {np.linalg.norm(psi)**2}")
        return psi
    name = cfg["state"]
    if name.startswith("well-"):
        try:
            k = int(name[5:])
        except ValueError as exc:
            raise UsageError(f"bad state preset {name!r}") from exc
        if not 0 <= k < dim:
            raise UsageError(f"well index {k} out of range for dimension {dim}")
        return dyn.basis_state(dim, k)
    if name == "uniform":
        return dyn.uniform_state(dim)
    if name in ("current-plus", "current-minus"):
        return dyn.current_state(dim, +1 if name.endswith("plus") else -1)
    raise UsageError(f"unknown state preset {name!r}")


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

SPECTRUM_DEFAULTS = {
    "topology": "symmetric-double", "nu": 1.0, "delta_eps": None, "d": None,
    "matrix": None, "perturb": None, "group_tol": None,
    "output": None, "figures": False,
}


def cmd_spectrum(args: argparse.Namespace) -> int:
    cfg = _merge_config(args, SPECTRUM_DEFAULTS)
    cfg["command"] = "spectrum"
    spec, h = _build_system(cfg)
    spectrum = hermitian_eig(h, group_tol=cfg["group_tol"])

    analytic = None
    residual = None
    if spec.topology is not wells.Topology.CUSTOM and cfg.get("perturb") is None:
        analytic = wells.analytic_spectrum(spec)
        residual = float(np.max(np.abs(spectrum.eigenvalues - analytic)))

    doc = {
        "config": _embedded(cfg),
        "eigenvalues": list(spectrum.eigenvalues),
        "degeneracy_groups": [list(g) for g in spectrum.degeneracy_groups],
        "group_tol": spectrum.group_tol,
        "analytic": None if analytic is None else list(analytic),
        "residual": residual,
    }
    _emit(cfg, ser.dumps_artifact(doc))
    if cfg["figures"]:
        from quditwells import plots

        plots.save_level_diagram(_figure_path(cfg, "_levels"), spectrum.eigenvalues, analytic)
    if residual is not None and residual > SPECTRUM_RESIDUAL_TOL:
        raise ValidationFailure(
            f"numeric spectrum deviates from the closed form by {residual:.3e}"
        )
    return 0


# ---------------------------------------------------------------------------
# evolve
# ---------------------------------------------------------------------------

EVOLVE_DEFAULTS = {
    "topology": "symmetric-double", "nu": 1.0, "delta_eps": None, "d": None,
    "matrix": None, "perturb": None, "state": "well-0", "amplitudes": None,
    "t_max": 10.0, "n_steps": 200, "hbar": 1.0,
    "output": None, "figures": False,
}


def cmd_evolve(args: argparse.Namespace) -> int:
    cfg = _merge_config(args, EVOLVE_DEFAULTS)
    cfg["command"] = "evolve"
    if cfg["n_steps"] < 1:
        raise UsageError("n_steps must be >= 1 (zero-length time grid)")
    if not cfg["t_max"] > 0:
        raise UsageError("t_max must be positive")
    spec, h = _build_system(cfg)
    psi0 = _initial_state(cfg, h.shape[0])

    times = np.linspace(0.0, cfg["t_max"], cfg["n_steps"] + 1)
    w, v = np.linalg.eigh(h)
    coeff = v.conj().T @ psi0
    amps = (v @ (np.exp(-1j * np.outer(w, times) / cfg["hbar"]) * coeff[:, None])).T

    _emit(cfg, ser.trace_csv(times, amps, _embedded(cfg)))
    if cfg["figures"]:
        from quditwells import plots

        plots.save_population_trace(
            _figure_path(cfg, "_populations"), times, np.abs(amps) ** 2
        )
    return 0


# ---------------------------------------------------------------------------
# revival
# ---------------------------------------------------------------------------

REVIVAL_DEFAULTS = {
    "topology": "periodic-triple", "nu": 1.0, "delta_eps": None, "d": None,
    "matrix": None, "perturb": None, "hbar": 1.0, "tol": 1e-9,
    "max_harmonic": 4096, "output": None,
}


def cmd_revival(args: argparse.Namespace) -> int:
    cfg = _merge_config(args, REVIVAL_DEFAULTS)
    cfg["command"] = "revival"
    spec, h = _build_system(cfg)
    report = dyn.revival_period(
        h, hbar=cfg["hbar"], tol=cfg["tol"], max_harmonic=cfg["max_harmonic"]
    )
    doc = {
        "config": _embedded(cfg),
        "found": report.found,
        "period": report.period,
        "fidelity_at_period": report.fidelity_at_period,
        "search_bound": report.search_bound,
        "base_gap": report.base_gap,
        "harmonics": None if report.harmonics is None else list(report.harmonics),
        "phase_distance": report.phase_distance,
    }
    _emit(cfg, ser.dumps_artifact(doc))
    return 0


# ---------------------------------------------------------------------------
# synth
# ---------------------------------------------------------------------------

SYNTH_DEFAULTS = {
    "target": None, "matrix": None, "method": "two-step",
    "axis": None, "angle": None, "nu": 1.0, "eps": 0.05,
    "omega": None, "pulses_per_step": 1,
    "output": None,
}

_NAMED_TARGETS = {
    "hadamard": lambda: gates.qft(2),
    "not": lambda: np.array([[0, 1], [1, 0]], dtype=complex),
    "identity": lambda: np.eye(2, dtype=complex),
    "qft3": lambda: gates.qft(3),
    "x01": lambda: gates.ternary_x_gates()[0],
    "x02": lambda: gates.ternary_x_gates()[1],
    "x12": lambda: gates.ternary_x_gates()[2],
}


def _target_matrix(cfg: dict) -> np.ndarray:
    if cfg.get("matrix") is not None:
        data = cfg["matrix"]
        if isinstance(data, str):
            data = _json_arg(data, "--matrix")
        m = ser.matrix_from_json(data)
    elif cfg.get("target"):
        name = cfg["target"]
        if name not in _NAMED_TARGETS:
            raise UsageError(
                f"unknown target {name!r}; known: {sorted(_NAMED_TARGETS)}"
            )
        m = _NAMED_TARGETS[name]()
    else:
        raise UsageError("synth needs --target or --matrix")
    if not is_unitary(m, 1e-10):
        raise UsageError("target matrix is not unitary")
    return m


def _axis_angle_of(cfg: dict, target: np.ndarray) -> gates.AxisAngle:
    if cfg.get("axis") is not None:
        try:
            n = np.array([float(p) for p in str(cfg["axis"]).split(",")], dtype=float)
            n = n / np.linalg.norm(n)
        except ValueError as exc:
            raise UsageError(f"bad --axis: {exc}") from exc
        if cfg.get("angle") is None:
            raise UsageError("--axis requires --angle")
        return gates.AxisAngle(axis=tuple(n), angle=float(cfg["angle"]))
    if target.shape != (2, 2):
        raise UsageError("five-step synthesis needs a 2x2 target or --axis/--angle")
    eta = np.angle(np.linalg.det(target)) / 2
    s = np.exp(-1j * eta) * target
    w = float(s[0, 0].real)
    vec = np.array([-s[1, 0].imag, s[1, 0].real, -s[0, 0].imag])
    norm = np.linalg.norm(vec)
    if norm < 1e-14:
        return gates.AxisAngle(axis=(0.0, 0.0, 1.0), angle=0.0 if w > 0 else 2 * np.pi)
    return gates.AxisAngle(axis=tuple(vec / norm), angle=2 * np.arctan2(norm, w))


def _train_schedule(angles, omega: float, pulses_per_step: int) -> gates.PulseSchedule:
    """One SFQ sub-train per nontrivial step, spaced at the precession period."""
    period = 2 * np.pi / omega
    events = []
    t = 0.0
    for angle in angles:
        if abs(angle) < 1e-12:
            continue
        for _ in range(pulses_per_step):
            events.append(gates.PulseEvent(t, "Phi_x", 1.0))
            t += period
    total = events[-1].time if events else 0.0
    return gates.PulseSchedule(events=tuple(events), total_duration=total)


def cmd_synth(args: argparse.Namespace) -> int:
    cfg = _merge_config(args, SYNTH_DEFAULTS)
    cfg["command"] = "synth"
    method = cfg["method"]
    doc: dict = {"config": _embedded(cfg), "method": method}
    schedule = None

    if method == "two-step":
        target = _target_matrix(cfg)
        if target.shape != (2, 2):
            raise UsageError("two-step synthesis needs a 2x2 target")
        try:
            dec = gates.decompose_two_step(target)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        report = gates.GateReport.compare(
            target, gates.two_step_matrix(dec),
            parameters={
                "theta1": dec.theta1, "phi1": dec.phi1,
                "theta2": dec.theta2, "phi2": dec.phi2, "eta": dec.eta,
            },
        )
        if cfg.get("omega") is not None:
            schedule = _train_schedule(
                [dec.phi1, dec.phi2], cfg["omega"], cfg["pulses_per_step"]
            )
    elif method == "five-step":
        target = _target_matrix(cfg) if cfg.get("axis") is None else None
        axis_angle = _axis_angle_of(cfg, target if target is not None else np.eye(2))
        report = gates.euler_five_step(axis_angle)
        if cfg.get("omega") is not None:
            p = report.parameters
            steps = [p["psi_prime"], p["theta"], p["alpha"], p["theta"], p["psi_prime"]]
            schedule = _train_schedule(steps, cfg["omega"], cfg["pulses_per_step"])
    elif method == "su3":
        target = _target_matrix(cfg)
        if target.shape != (3, 3):
            raise UsageError("su3 synthesis needs a 3x3 target")
        try:
            dec = gates.su3_decompose(target)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        report = gates.GateReport.compare(target, dec.matrix(), parameters={"phase": dec.phase})
        doc["factors"] = {
            "r01": ser.matrix_to_json(dec.r01),
            "r02": ser.matrix_to_json(dec.r02),
            "r12": ser.matrix_to_json(dec.r12),
        }
    elif method == "commuting":
        name = cfg.get("target")
        if name not in ("x01", "x02", "x12"):
            raise UsageError("commuting synthesis targets one of x01, x02, x12")
        i = {"x01": 1, "x02": 2, "x12": 3}[name]
        nu, eps_req = cfg["nu"], cfg["eps"]
        # whole revival cycles with eps adjusted so eps * T_total = pi/2 exactly
        cycles = max(1, round(3 * nu / (4 * eps_req)))
        eps = 3 * nu / (4 * cycles)
        report = gates.commuting_gate(i, eps, cycles, nu=nu)
        doc["requested_eps"] = eps_req
        doc["eps"] = eps
        doc["cycles"] = cycles
        doc["eps_t_total"] = eps * report.parameters["t_total"]
        t_rev = report.parameters["t_rev"]
        events = tuple(
            gates.PulseEvent(k * t_rev, "Phi_c", 1.0) for k in range(cycles)
        )
        schedule = gates.PulseSchedule(events=events, total_duration=(cycles - 1) * t_rev)
        report = gates.GateReport.compare(
            gates.ternary_x_gates()[i - 1], report.achieved, report.parameters
        )
    else:
        raise UsageError(f"unknown method {method!r}")

    doc["report"] = ser.gate_report_to_json(report)
    doc["schedule"] = None if schedule is None else ser.pulse_schedule_to_json(schedule)
    _emit(cfg, ser.dumps_artifact(doc))
    return 0


# ---------------------------------------------------------------------------
# pulse-plan
# ---------------------------------------------------------------------------

PULSE_DEFAULTS = {
    "kind": "resonant-z", "omega": None, "omegas": None, "n_pulses": 1,
    "output": None,
}


def cmd_pulse_plan(args: argparse.Namespace) -> int:
    cfg = _merge_config(args, PULSE_DEFAULTS)
    cfg["command"] = "pulse-plan"
    kind = cfg["kind"].replace("-", "_")
    if kind == "resonant_z":
        if cfg.get("omega") is None:
            raise UsageError("resonant-z needs --omega")
        omega_seq = [cfg["omega"]]
    elif kind == "axis_tilt":
        if cfg.get("omegas") is None:
            raise UsageError("axis-tilt needs --omegas w1,w2,...")
        raw = cfg["omegas"]
        omega_seq = [float(p) for p in str(raw).split(",")] if isinstance(raw, str) else list(raw)
    else:
        raise UsageError(f"unknown pulse kind {cfg['kind']!r}")
    try:
        sched = gates.sfq_schedule(kind, omega_seq, cfg["n_pulses"])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    doc = {"config": _embedded(cfg), "schedule": ser.pulse_schedule_to_json(sched)}
    _emit(cfg, ser.dumps_artifact(doc))
    return 0


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------

ORACLE_DEFAULTS = {
    "periodic": False, "d": 3, "v0": 120.0, "l": 1.0, "a": 0.25, "tilt": 0.0,
    "n_points": 1024, "k": 6, "m": 1.0, "hbar": 1.0,
    "threshold": 0.05, "strict": False,
    "wavefunctions": None, "output": None, "figures": False,
}


def cmd_oracle(args: argparse.Namespace) -> int:
    cfg = _merge_config(args, ORACLE_DEFAULTS)
    cfg["command"] = "oracle"
    m, hbar = cfg["m"], cfg["hbar"]
    try:
        if cfg["periodic"]:
            pot = cont.periodic_d_well(cfg["d"], cfg["v0"], cfg["l"], cfg["a"])
            d_band = cfg["d"]
        elif cfg["tilt"]:
            pot = cont.asymmetric_square_double_well(cfg["v0"], cfg["l"], cfg["a"], cfg["tilt"])
            d_band = 2
        else:
            pot = cont.square_double_well(cfg["v0"], cfg["l"], cfg["a"])
            d_band = 2
        k = max(cfg["k"], d_band + 1)
        sol = cont.solve_grid(pot, cfg["n_points"], k, m, hbar)
        reduction = cont.validate_reduction(sol, d_band, threshold=cfg["threshold"])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc

    doc = {
        "config": _embedded(cfg),
        "potential": ser.potential_to_json(pot),
        "grid": ser.grid_solution_to_json(sol),
        "reduction": {
            "in_band_spread": reduction.in_band_spread,
            "band_gap": reduction.band_gap,
            "ratio": reduction.ratio,
            "passed": reduction.passed,
            "threshold": reduction.threshold,
        },
    }

    failures = [] if reduction.passed else ["gap hierarchy"]
    if cfg["periodic"]:
        fit = cont.band_fit(sol.eigenvalues, cfg["d"])
        doc["band_fit"] = {
            "center": fit.center, "nu_eff": fit.nu_eff,
            "residual": fit.residual, "bandwidth": fit.bandwidth,
            "relative_residual": fit.residual / fit.bandwidth if fit.bandwidth else None,
        }
        if cfg["figures"]:
            from quditwells import plots

            plots.save_band_fit(_figure_path(cfg, "_band"), cfg["d"], sol.eigenvalues, fit)
    else:
        try:
            nu_eff, psi_l, psi_r = cont.effective_two_level(sol)
            right = sol.x > (sol.x[0] + sol.x[-1]) / 2
            doc["two_level"] = {
                "nu_eff": nu_eff,
                "right_weight_psi_r": float(np.sum(psi_r[right] ** 2) * sol.spacing),
            }
        except ValueError as exc:
            doc["two_level"] = {"error": str(exc)}
            failures.append("two-level reduction")
            nu_eff = None
        if not cfg["tilt"] and nu_eff is not None:
            energy = float((sol.eigenvalues[0] + sol.eigenvalues[1]) / 2)
            wkb = cont.wkb_tunneling(pot, energy, m, hbar, formula="square")
            doc["wkb"] = {
                "formula": wkb.formula,
                "nu": wkb.nu,
                "barrier_integral": wkb.barrier_integral,
                "energy": energy,
                "relative_error_vs_grid": abs(wkb.nu - nu_eff) / nu_eff,
            }
        if cfg["tilt"]:
            try:
                model = cont.asymmetric_model(pot, m, hbar, n_points=cfg["n_points"])
                model_gap = 2 * np.hypot(model.delta_eps / 2, model.nu)
                grid_gap = float(sol.eigenvalues[1] - sol.eigenvalues[0])
                doc["asymmetric"] = {
                    "nu": model.nu, "delta_eps": model.delta_eps,
                    "prefactor": model.prefactor, "theta": model.theta,
                    "one_well_gap": model.one_well_gap,
                    "model_gap": float(model_gap), "grid_gap": grid_gap,
                    "relative_gap_error": abs(model_gap - grid_gap) / grid_gap,
                }
            except ValueError as exc:
                doc["asymmetric"] = {"error": str(exc)}
                failures.append("asymmetric regime")
        if cfg["figures"]:
            from quditwells import plots

            plots.save_potential_and_states(_figure_path(cfg, "_potential"), pot, sol)

    _emit(cfg, ser.dumps_artifact(doc))
    if cfg["wavefunctions"]:
        ser.write_text_atomic(cfg["wavefunctions"], ser.wavefunction_csv(sol, _embedded(cfg)))
    if cfg["strict"] and failures:
        raise ValidationFailure("; ".join(failures))
    return 0


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------

VALIDATE_DEFAULTS = {
    "seed": 1234, "two_step": 200, "five_step": 200, "su3": 100,
    "output": None,
}


def cmd_validate(args: argparse.Namespace) -> int:
    cfg = _merge_config(args, VALIDATE_DEFAULTS)
    cfg["command"] = "validate"
    rng = np.random.default_rng(cfg["seed"])
    checks = []

    def record(name: str, passed: bool, detail: float | str) -> None:
        checks.append({"name": name, "passed": bool(passed), "detail": detail})

    worst = 0.0
    for spec in [
        wells.HamiltonianSpec(topology=t, nu=nu, d=d, delta_eps=de)
        for t, nu, d, de in [
            ("symmetric-double", 1.0, 2, 0.0),
            ("asymmetric-double", 1.0, 2, 2.0),
            ("periodic-triple", 0.7, 3, 0.0),
            ("fully-connected", 1.3, 6, 0.0),
            ("cyclic", 1.0, 8, 0.0),
        ]
    ]:
        e_num = hermitian_eig(wells.build_hamiltonian(spec)).eigenvalues
        worst = max(worst, float(np.max(np.abs(e_num - wells.analytic_spectrum(spec)))))
    record("analytic spectra", worst <= 1e-12, worst)

    worst = 0.0
    for d in range(3, 9):
        h = wells.build_hamiltonian(wells.HamiltonianSpec(topology="cyclic", d=d))
        j = wells.cyclic_current(d)
        worst = max(worst, float(np.max(np.abs(h @ j - j @ h))))
    record("cyclic current commutes", worst <= 1e-12, worst)

    expected = {2: True, 3: True, 4: True, 5: False, 6: True}
    ok = True
    for d, want in expected.items():
        rep = dyn.revival_period(
            wells.build_hamiltonian(wells.HamiltonianSpec(topology="cyclic", d=d)),
            max_harmonic=10**4,
        )
        ok = ok and (rep.found == want)
    record("revival detection", ok, "d=2,3,4,6 revive; d=5 does not")

    worst = 0.0
    for _ in range(cfg["two_step"]):
        u = gates.haar_unitary(2, rng)
        dec = gates.decompose_two_step(u)
        worst = max(worst, global_phase_distance(u, gates.two_step_matrix(dec)))
    record("two-step round trip", worst <= 1e-9, worst)

    worst = 0.0
    for _ in range(cfg["five_step"]):
        aa = gates.AxisAngle.from_spherical(
            rng.uniform(0, np.pi), rng.uniform(-np.pi, np.pi), rng.uniform(-2 * np.pi, 2 * np.pi)
        )
        worst = max(worst, gates.euler_five_step(aa).phase_distance)
    record("five-step round trip", worst <= 1e-9, worst)

    worst = 0.0
    for _ in range(cfg["su3"]):
        u = gates.haar_unitary(3, rng)
        dec = gates.su3_decompose(u)
        worst = max(worst, global_phase_distance(u, dec.matrix()))
    record("su3 round trip", worst <= 1e-9, worst)

    worst = 0.0
    for _ in range(10):
        i = int(rng.integers(1, 4))
        eps = float(rng.uniform(0.01, 0.2))
        cycles = int(rng.integers(1, 12))
        worst = max(worst, gates.commuting_gate(i, eps, cycles).phase_distance)
    record("commuting gate exactness", worst <= 1e-11, worst)

    worst = 0.0
    for d in range(2, 7):
        f = gates.qft(d)
        worst = max(worst, float(np.max(np.abs(f.conj().T @ f - np.eye(d)))))
        worst = max(worst, float(np.max(np.abs(np.linalg.matrix_power(f, 4) - np.eye(d)))))
    record("fourier gate identities", worst <= 1e-12, worst)

    doc = {"config": _embedded(cfg), "checks": checks, "passed": all(c["passed"] for c in checks)}
    _emit(cfg, ser.dumps_artifact(doc))
    if not doc["passed"]:
        failed = [c["name"] for c in checks if not c["passed"]]
        raise ValidationFailure("failed checks: " + ", ".join(failed))
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_system_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--topology", choices=[t.value for t in wells.Topology])
    p.add_argument("--nu", type=float)
    p.add_argument("--delta-eps", dest="delta_eps", type=float)
    p.add_argument("--d", type=int)
    p.add_argument("--matrix", help="custom Hamiltonian as JSON [[re,im],...] rows or @file")
    p.add_argument("--perturb", help="perturbation spec as JSON or @file")


def _add_output_flags(p: argparse.ArgumentParser, figures: bool = False) -> None:
    p.add_argument("--config", help="JSON config file; explicit flags override it")
    p.add_argument("-o", "--output", help="artifact path (default: stdout)")
    if figures:
        p.add_argument("--figures", action="store_const", const=True,
                       help="render matplotlib figures next to the artifact")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quditwells",
        description="Coupled-well qudit simulation and gate synthesis.",
    )
    parser.add_argument("--version", action="version", version=f"quditwells {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("spectrum", help="eigenvalues and degeneracy structure")
    _add_system_flags(p)
    p.add_argument("--group-tol", dest="group_tol", type=float)
    _add_output_flags(p, figures=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("evolve", help="CSV evolution trace")
    _add_system_flags(p)
    p.add_argument("--state", help="well-k | uniform | current-plus | current-minus")
    p.add_argument("--amplitudes", help="custom state as JSON [re,im] list or @file")
    p.add_argument("--t-max", dest="t_max", type=float)
    p.add_argument("--n-steps", dest="n_steps", type=int)
    p.add_argument("--hbar", type=float)
    _add_output_flags(p, figures=True)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("revival", help="revival period search")
    _add_system_flags(p)
    p.add_argument("--hbar", type=float)
    p.add_argument("--tol", type=float)
    p.add_argument("--max-harmonic", dest="max_harmonic", type=int)
    _add_output_flags(p)
    p.set_defaults(func=cmd_revival)

    p = sub.add_parser("synth", help="gate synthesis report")
    p.add_argument("--target", help="|".join(sorted(_NAMED_TARGETS)))
    p.add_argument("--matrix", help="explicit unitary target as JSON or @file")
    p.add_argument("--method", choices=["two-step", "five-step", "su3", "commuting"])
    p.add_argument("--axis", help="rotation axis x,y,z (five-step)")
    p.add_argument("--angle", type=float, help="rotation angle (five-step)")
    p.add_argument("--nu", type=float, help="tunneling amplitude (commuting)")
    p.add_argument("--eps", type=float, help="requested perturbation strength (commuting)")
    p.add_argument("--omega", type=float, help="attach an SFQ schedule at this frequency")
    p.add_argument("--pulses-per-step", dest="pulses_per_step", type=int)
    _add_output_flags(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("pulse-plan", help="SFQ pulse schedule")
    p.add_argument("--kind", choices=["resonant-z", "axis-tilt"])
    p.add_argument("--omega", type=float, help="fixed frequency (resonant-z)")
    p.add_argument("--omegas", help="per-step frequencies w1,w2,... (axis-tilt)")
    p.add_argument("--n-pulses", dest="n_pulses", type=int)
    _add_output_flags(p)
    p.set_defaults(func=cmd_pulse_plan)

    p = sub.add_parser("oracle", help="continuum grid validations")
    p.add_argument("--double", action="store_const", const=False, dest="periodic",
                   help="square double well (default)")
    p.add_argument("--periodic", action="store_const", const=True, dest="periodic",
                   help="periodic d-well ring")
    p.add_argument("--d", type=int)
    p.add_argument("--v0", type=float)
    p.add_argument("--l", type=float)
    p.add_argument("--a", type=float)
    p.add_argument("--tilt", type=float, help="left well floor offset (asymmetric)")
    p.add_argument("--n-points", dest="n_points", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=float)
    p.add_argument("--hbar", type=float)
    p.add_argument("--threshold", type=float)
    p.add_argument("--strict", action="store_const", const=True,
                   help="exit 3 on regime violations")
    p.add_argument("--wavefunctions", help="also write eigenfunctions CSV here")
    _add_output_flags(p, figures=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("validate", help="seeded library self-checks")
    p.add_argument("--seed", type=int)
    p.add_argument("--two-step", dest="two_step", type=int)
    p.add_argument("--five-step", dest="five_step", type=int)
    p.add_argument("--su3", type=int)
    _add_output_flags(p)
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValidationFailure as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
