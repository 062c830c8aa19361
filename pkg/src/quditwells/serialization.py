"""JSON encodings of the toolkit's domain objects and artifact writing.

Complex matrices and vectors are serialized as nested [re, im] pairs.
Artifacts are JSON documents with sorted keys (byte-stable for identical
inputs) carrying the producing config under the "config" key; floats use
Python's shortest round-trip repr, and CSV cells are written with 17
significant digits, so every number round-trips exactly.
"""

from __future__ import annotations

import json
import os
import tempfile
from typing import Any

import numpy as np

from quditwells.continuum import GridSolution, PiecewisePotential
from quditwells.gates import GateReport, PulseEvent, PulseSchedule
from quditwells.wells import HamiltonianSpec, PerturbationSpec, Topology


def fmt17(x: float) -> str:
    """17-significant-digit decimal form; round-trips float64 exactly."""
    return format(float(x), ".17g")


def matrix_to_json(m) -> list:
    a = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def matrix_from_json(data) -> np.ndarray:
    rows = []
    for row in data:
        rows.append([complex(re, im) for re, im in row])
    return np.array(rows, dtype=complex)


def vector_to_json(v) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=complex)]


def vector_from_json(data) -> np.ndarray:
    return np.array([complex(re, im) for re, im in data], dtype=complex)


def hamiltonian_spec_to_json(spec: HamiltonianSpec) -> dict:
    out: dict[str, Any] = {"topology": spec.topology.value, "nu": spec.nu}
    if spec.topology is Topology.ASYMMETRIC_DOUBLE:
        out["delta_eps"] = spec.delta_eps
    if spec.topology in (Topology.FULLY_CONNECTED, Topology.CYCLIC_CHAIN):
        out["d"] = spec.d
    if spec.topology is Topology.CUSTOM:
        out["custom_matrix"] = matrix_to_json(spec.custom_matrix)
    return out


def hamiltonian_spec_from_json(data: dict) -> HamiltonianSpec:
    kwargs: dict[str, Any] = {"topology": Topology(data["topology"])}
    for key in ("nu", "delta_eps", "d"):
        if key in data and data[key] is not None:
            kwargs[key] = data[key]
    if data.get("custom_matrix") is not None:
        kwargs["custom_matrix"] = matrix_from_json(data["custom_matrix"])
    return HamiltonianSpec(**kwargs)


def perturbation_spec_to_json(spec: PerturbationSpec) -> dict:
    out: dict[str, Any] = {"kind": spec.kind.value, "epsilon": spec.epsilon}
    if spec.tilts is not None:
        out["tilts"] = list(spec.tilts)
    if spec.coefficients is not None:
        out["coefficients"] = list(spec.coefficients)
    if spec.d is not None:
        out["d"] = spec.d
    return out


def perturbation_spec_from_json(data: dict) -> PerturbationSpec:
    return PerturbationSpec(
        kind=data["kind"],
        epsilon=data.get("epsilon", 1.0),
        tilts=tuple(data["tilts"]) if data.get("tilts") is not None else None,
        coefficients=(
            tuple(data["coefficients"]) if data.get("coefficients") is not None else None
        ),
        d=data.get("d"),
    )


def pulse_schedule_to_json(sched: PulseSchedule) -> dict:
    return {
        "events": [
            {"time": e.time, "channel": e.channel, "area": e.area} for e in sched.events
        ],
        "total_duration": sched.total_duration,
    }


def pulse_schedule_from_json(data: dict) -> PulseSchedule:
    events = tuple(
        PulseEvent(time=e["time"], channel=e["channel"], area=e["area"])
        for e in data["events"]
    )
    return PulseSchedule(events=events, total_duration=data["total_duration"])


def gate_report_to_json(report: GateReport) -> dict:
    return {
        "target": matrix_to_json(report.target),
        "achieved": matrix_to_json(report.achieved),
        "phase_distance": report.phase_distance,
        "parameters": {k: float(v) for k, v in report.parameters.items()},
    }


def potential_to_json(pot: PiecewisePotential) -> dict:
    domain: dict[str, Any]
    if pot.periodic:
        domain = {"kind": "periodic", "length": pot.length}
        if pot.cell_count > 1:
            domain["cell_count"] = pot.cell_count
    else:
        domain = {"kind": "hard-wall", "x_min": pot.x_min, "x_max": pot.x_max}
    return {"domain": domain, "segments": [list(s) for s in pot.segments]}


def potential_from_json(data: dict) -> PiecewisePotential:
    periodic = data["domain"]["kind"] == "periodic"
    return PiecewisePotential(
        segments=tuple(tuple(s) for s in data["segments"]),
        periodic=periodic,
        cell_count=data["domain"].get("cell_count", 1),
    )


def grid_solution_to_json(sol: GridSolution, include_vectors: bool = False) -> dict:
    out: dict[str, Any] = {
        "n_points": sol.n_points,
        "spacing": sol.spacing,
        "eigenvalues": [float(e) for e in sol.eigenvalues],
        "periodic": sol.periodic,
    }
    if include_vectors:
        out["x"] = [float(v) for v in sol.x]
        out["eigenvectors"] = [[float(v) for v in row] for row in sol.eigenvectors]
    return out


def jsonable(obj):
    """Recursively convert numpy scalars/arrays to plain Python values."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def dumps_artifact(doc: dict) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, newline end."""
    return json.dumps(jsonable(doc), sort_keys=True, indent=2) + "\n"


def write_text_atomic(path: str, text: str) -> None:
    """Write via a temp file in the destination directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def trace_csv(times, amplitudes, config: dict) -> str:
    """CSV evolution trace: t, Re a_i, Im a_i, populations.

    The producing config is embedded as a leading '# config: ...' comment.
    """
    amps = np.asarray(amplitudes, dtype=complex)
    d = amps.shape[1]
    header = (
        ["t"]
        + [f"re_a{i}" for i in range(d)]
        + [f"im_a{i}" for i in range(d)]
        + [f"pop_{i}" for i in range(d)]
    )
    lines = ["# config: " + json.dumps(jsonable(config), sort_keys=True)]
    lines.append(",".join(header))
    for t, row in zip(times, amps):
        cells = [fmt17(t)]
        cells += [fmt17(z.real) for z in row]
        cells += [fmt17(z.imag) for z in row]
        cells += [fmt17(abs(z) ** 2) for z in row]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def wavefunction_csv(sol: GridSolution, config: dict) -> str:
    """CSV eigenfunction table: x, psi_0 .. psi_{k-1}."""
    k = sol.eigenvectors.shape[0]
    lines = ["# config: " + json.dumps(jsonable(config), sort_keys=True)]
    lines.append(",".join(["x"] + [f"psi_{i}" for i in range(k)]))
    for j, x in enumerate(sol.x):
        cells = [fmt17(x)] + [fmt17(sol.eigenvectors[i][j]) for i in range(k)]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
