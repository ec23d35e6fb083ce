"""Command-line front end.

Every subcommand assembles a run report carrying the command name, a
digest of its inputs, the tolerances in effect, the seed (when the
command is stochastic), structured results, and residuals.  JSON output
is canonical (sorted keys) and contains no timing, so reruns with the
same inputs and seed are byte-identical; wall time is reported in the
text format only.

Exit codes: 0 for success or a positive verdict, 1 for a mathematically
valid negative verdict (state set compatible, set is not a SIC, purity
checks fail), 2 for usage or input errors.

JSON schemas (complex numbers are ``[re, im]`` pairs):

* state sets: ``{"dim": d, "kets": [[[re, im], ...], ...]}`` or
  ``{"dim": d, "matrices": [[[[re, im], ...], ...], ...]}`` (row-major)
* probability vectors: ``{"dim": d, "probabilities": [...]}``
* built-ins by name: ``hesse`` (SIC), ``cfs-example`` (state triple),
  ``hesse-mub`` (orthogonality graph)
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import __version__
from .compat import (
    StateSet,
    WitnessSearchConfig,
    cfs_example_kets,
    qutrit_triple_criterion,
    witness_search,
)
from .contextuality import cabello_criterion, hesse_mub_graph
from .mub import build_mub_set, covering_table, covering_witness, verify_mub_set
from .purity import (
    distribution_indices,
    enumerate_min_entropy_pure_states,
    qbic_check_general,
    qbic_check_hesse,
    quadratic_purity_check,
    triple_product_table,
)
from .qmath import DEFAULT_TOL, validate_density_matrix
from .sicgen import SicSet, builtin_sic, hesse_sic, is_sic, sic_probabilities
from .wigner import (
    line_marginals,
    negativity,
    phase_point_operators,
    wigner_from_sic_probabilities,
    wigner_of_density,
)

#: Environment variable overriding the default tolerance.
TOL_ENV_VAR = "SICMUB_TOL"


class UsageError(Exception):
    """Bad input or usage; maps to exit code 2."""


def encode_complex(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def encode_ket(v) -> list[list[float]]:
    return [encode_complex(z) for z in np.asarray(v, dtype=complex)]


def encode_matrix(m) -> list[list[list[float]]]:
    return [[encode_complex(z) for z in row] for row in np.asarray(m, dtype=complex)]


def decode_complex(pair) -> complex:
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise UsageError(f"complex entries must be [re, im] pairs, got {pair!r}")
    return complex(float(pair[0]), float(pair[1]))


def decode_ket(entries, dim: int) -> np.ndarray:
    if len(entries) != dim:
        raise UsageError(f"ket has {len(entries)} entries, expected {dim}")
    return np.array([decode_complex(p) for p in entries], dtype=complex)


def decode_matrix(rows, dim: int) -> np.ndarray:
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise UsageError(f"matrix must be {dim}x{dim} row-major")
    return np.array([[decode_complex(p) for p in row] for row in rows], dtype=complex)


def _load_json(path: str) -> tuple[Any, bytes]:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(raw.decode("utf-8")), raw
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def load_state_file(path: str) -> tuple[int, list[np.ndarray], bytes]:
    """Read a state-set file; returns (dim, density matrices, raw bytes)."""
    doc, raw = _load_json(path)
    if not isinstance(doc, dict) or "dim" not in doc:
        raise UsageError(f"{path}: expected an object with a 'dim' field")
    dim = int(doc["dim"])
    rhos: list[np.ndarray] = []
    if "kets" in doc:
        for entries in doc["kets"]:
            ket = decode_ket(entries, dim)
            norm = np.linalg.norm(ket)
            if abs(norm - 1.0) > 1e-8:
                raise UsageError(f"{path}: ket is not normalized (norm {norm!r})")
            rhos.append(np.outer(ket, ket.conj()))
    elif "matrices" in doc:
        for rows in doc["matrices"]:
            rhos.append(decode_matrix(rows, dim))
    else:
        raise UsageError(f"{path}: expected a 'kets' or 'matrices' field")
    if not rhos:
        raise UsageError(f"{path}: no states found")
    return dim, rhos, raw


def _principal_ket(rho: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Extract the ket of a rank-1 density matrix (error if mixed)."""
    w, v = np.linalg.eigh((rho + rho.conj().T) / 2.0)
    if abs(w[-1] - 1.0) > tol:
        raise UsageError(f"state is not pure (largest eigenvalue {w[-1]!r}); the criterion needs pure states")
    return v[:, -1]


def _digest(*parts: bytes) -> str:
    h = hashlib.sha256()
    for part in parts:
        h.update(part)
    return h.hexdigest()


@dataclass
class RunReport:
    """Deterministic report body plus wall time (text output only)."""

    command: str
    inputs_digest: str
    tolerances: dict[str, float]
    results: dict[str, Any]
    residuals: dict[str, float] = field(default_factory=dict)
    seed: int | None = None
    wall_time_s: float | None = None

    def json_body(self) -> dict[str, Any]:
        # Wall time is intentionally excluded: JSON reports are
        # byte-identical across reruns with the same inputs and seed.
        return {
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "seed": self.seed,
            "tolerances": self.tolerances,
            "results": self.results,
            "residuals": self.residuals,
            "version": __version__,
        }

    def to_json(self) -> str:
        return json.dumps(self.json_body(), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        if self.seed is not None:
            lines.append(f"seed: {self.seed}")
        for name, value in sorted(self.tolerances.items()):
            lines.append(f"tolerance {name}: {value:g}")
        lines.extend(_text_lines("", self.results))
        for name, value in sorted(self.residuals.items()):
            lines.append(f"residual {name}: {value:.3e}")
        lines.append(f"inputs digest: {self.inputs_digest}")
        if self.wall_time_s is not None:
            lines.append(f"wall time: {self.wall_time_s:.3f} s")
        return "\n".join(lines) + "\n"


def _is_number_grid(value: Any) -> bool:
    return (
        isinstance(value, list)
        and value
        and all(isinstance(row, list) and row and all(isinstance(x, (int, float)) for x in row) for row in value)
    )


def _text_lines(prefix: str, value: Any) -> list[str]:
    if isinstance(value, dict):
        lines = []
        for key in value:
            lines.extend(_text_lines(f"{prefix}{key}.", value[key]))
        return lines
    if _is_number_grid(value):
        header = prefix.rstrip(".")
        return [f"{header}:"] + ["  " + "  ".join(f"{x:+.6f}" for x in row) for row in value]
    return [f"{prefix.rstrip('.')}: {_short(value)}"]


def _short(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, list) and len(value) > 12:
        return f"[{len(value)} entries]"
    return str(value)


def _tol_default() -> float:
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError as exc:
        raise UsageError(f"{TOL_ENV_VAR}={raw!r} is not a number") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sicmub",
        description="Qutrit SIC-POVM geometry: compatibility certificates, MUBs, Wigner functions, contextuality.",
    )
    parser.add_argument("--version", action="version", version=f"sicmub {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, formats=("text", "json")) -> None:
        p.add_argument("--tol", type=float, default=None, help="numerical tolerance (default from SICMUB_TOL or 1e-10)")
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--output", default=None, help="write the report to a file instead of stdout")

    p = sub.add_parser("verify-sic", help="check a projector set against the SIC overlap condition")
    p.add_argument("--builtin", default=None, help="built-in SIC id (hesse)")
    p.add_argument("--input", default=None, help="JSON file with dim and kets/matrices")
    p.add_argument("--emit-states", action="store_true", help="include the projectors in the results (reusable as an --input document)")
    common(p, formats=("text", "json", "csv"))

    p = sub.add_parser("compat", help="post-Peierls compatibility")
    csub = p.add_subparsers(dest="compat_command", required=True)

    pt = csub.add_parser("triple", help="exact PP-ODOP criterion for three pure qutrit states")
    pt.add_argument("--states", required=True, help="'cfs-example' or a JSON state file")
    pt.add_argument("--criterion", action="store_true", help="apply the ternary overlap criterion (default behavior)")
    common(pt)

    ps = csub.add_parser("search", help="seeded witness search over von Neumann bases")
    ps.add_argument("--states", required=True, help="'cfs-example' or a JSON state file")
    ps.add_argument("--restarts", type=int, default=32)
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--threshold", type=float, default=1e-10, help="success threshold on the PP functional")
    ps.add_argument("--max-iters", type=int, default=200)
    common(ps)

    p = sub.add_parser("mubs", help="mutually unbiased bases from the Hesse SIC")
    msub = p.add_subparsers(dest="mubs_command", required=True)
    pb = msub.add_parser("build", help="construct the four MUBs")
    common(pb)
    pv = msub.add_parser("verify", help="verify the MUB conditions")
    common(pv)
    pc = msub.add_parser("cover", help="witnessing striations for SIC triples")
    pc.add_argument("--triple", default=None, help="comma-separated indices, e.g. 0,1,4 (default: all 84)")
    common(pc, formats=("text", "json", "csv"))

    p = sub.add_parser("wigner", help="discrete Wigner function of a state")
    p.add_argument("--state", required=True, help="JSON file with one ket or one density matrix")
    common(p, formats=("text", "json", "csv"))

    p = sub.add_parser("purity", help="purity conditions on a SIC probability vector")
    p.add_argument("--probs", required=True, help="JSON file with dim and probabilities")
    p.add_argument("--bits", action="store_true", help="report Shannon entropy in bits instead of nats")
    common(p)

    p = sub.add_parser("min-entropy", help="minimal-entropy pure states")
    esub = p.add_subparsers(dest="min_entropy_command", required=True)
    pe = esub.add_parser("enumerate", help="enumerate the 12 three-zero pure states")
    common(pe)

    p = sub.add_parser("graph", help="orthogonality graph and chromatic contextuality test")
    p.add_argument("--builtin", default="hesse-mub", help="built-in graph id (hesse-mub)")
    p.add_argument("--chromatic", action="store_true", help="compute the exact chromatic number and verdict")
    p.add_argument("--dim", type=int, default=3, help="Hilbert-space dimension for the verdict")
    common(p, formats=("text", "json", "edges"))

    return parser


def _emit(report: RunReport, args, csv_rows: list[list[Any]] | None = None) -> None:
    if args.format == "json":
        payload = report.to_json()
    elif args.format == "csv":
        if csv_rows is None:
            raise UsageError(f"command {report.command} has no tabular CSV form")
        payload = "\n".join(",".join(str(c) for c in row) for row in csv_rows) + "\n"
    elif args.format == "edges":
        # plain edge-list export: one "label label" line per edge
        payload = "\n".join(f"{a} {b}" for a, b in report.results["edges"]) + "\n"
    else:
        payload = report.to_text()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _load_states_arg(source: str) -> tuple[int, list[np.ndarray], str]:
    """Resolve --states: builtin name or file path."""
    if source == "cfs-example":
        kets = cfs_example_kets()
        rhos = [np.outer(v, v.conj()) for v in kets]
        return 3, rhos, _digest(b"builtin:cfs-example")
    dim, rhos, raw = load_state_file(source)
    return dim, rhos, _digest(raw)


def _cmd_verify_sic(args) -> tuple[int, RunReport, list[list[Any]] | None]:
    tol = args.tol if args.tol is not None else _tol_default()
    if (args.builtin is None) == (args.input is None):
        raise UsageError("verify-sic needs exactly one of --builtin or --input")
    if args.builtin is not None:
        try:
            sic = builtin_sic(args.builtin)
        except KeyError as exc:
            raise UsageError(str(exc)) from exc
        digest = _digest(f"builtin:{args.builtin}".encode())
    else:
        dim, rhos, raw = load_state_file(args.input)
        arr = np.array(rhos)
        if arr.shape[0] != dim * dim:
            raise UsageError(f"a SIC in dimension {dim} needs {dim * dim} states, got {arr.shape[0]}")
        try:
            sic = SicSet(dim=dim, projectors=arr)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        digest = _digest(raw)
    check = is_sic(sic, tol=tol)
    gram = np.einsum("iab,jba->ij", np.asarray(sic.projectors), np.asarray(sic.projectors)).real
    results: dict[str, Any] = {"dim": sic.dim, "is_sic": check.passed, "max_gram_residual": check.max_residual}
    if args.emit_states:
        results["sic"] = {"dim": sic.dim, "matrices": [encode_matrix(p) for p in np.asarray(sic.projectors)]}
    report = RunReport(
        command="verify-sic",
        inputs_digest=digest,
        tolerances={"tol": tol},
        results=results,
        residuals={"max_gram_residual": check.max_residual},
    )
    csv_rows = [[f"{x:.17g}" for x in row] for row in gram]
    return (0 if check.passed else 1), report, csv_rows


def _cmd_compat_triple(args) -> tuple[int, RunReport, None]:
    tol = args.tol if args.tol is not None else _tol_default()
    dim, rhos, digest = _load_states_arg(args.states)
    if len(rhos) != 3:
        raise UsageError(f"the ternary criterion needs exactly 3 states, got {len(rhos)}")
    if dim != 3:
        raise UsageError(f"the ternary criterion applies to qutrits, got dimension {dim}")
    kets = [_principal_ket(rho) for rho in rhos]
    try:
        verdict = qutrit_triple_criterion(kets[0], kets[1], kets[2])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    label = verdict.verdict + (" (saturated)" if verdict.saturated else "")
    report = RunReport(
        command="compat triple",
        inputs_digest=digest,
        tolerances={"tol": tol, "saturation_tol": 1e-9},
        results={
            "verdict": label,
            "incompatible": verdict.incompatible,
            "saturated": verdict.saturated,
            "overlaps_squared": [float(x) for x in verdict.overlaps],
            "overlap_sum": verdict.overlap_sum,
            "boundary_lhs": verdict.boundary_lhs,
            "boundary_rhs": verdict.boundary_rhs,
        },
        residuals={"saturation_gap": abs(verdict.boundary_lhs - verdict.boundary_rhs)},
    )
    return (0 if verdict.incompatible else 1), report, None


def _cmd_compat_search(args) -> tuple[int, RunReport, None]:
    tol = args.tol if args.tol is not None else _tol_default()
    dim, rhos, digest = _load_states_arg(args.states)
    if len(rhos) < 2:
        raise UsageError("the witness search needs at least 2 states")
    try:
        states = StateSet(dim=dim, rhos=np.array(rhos))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    cfg = WitnessSearchConfig(
        restarts=args.restarts,
        max_iters=args.max_iters,
        seed=args.seed,
        success_threshold=args.threshold,
    )
    result = witness_search(states, cfg)
    report = RunReport(
        command="compat search",
        inputs_digest=digest,
        tolerances={"tol": tol, "success_threshold": args.threshold},
        seed=args.seed,
        results={
            "value": result.value,
            "success": result.success,
            "best_restart": result.best_restart,
            "restarts_run": len(result.history),
            "basis_kets": [encode_ket(v) for v in np.asarray(result.basis)],
            "history": [
                {"restart": r.restart, "start_value": r.start_value, "final_value": r.final_value, "cycles": r.cycles}
                for r in result.history
            ],
        },
        residuals={"pp_functional": result.value},
    )
    return (0 if result.success else 1), report, None


def _cmd_mubs(args) -> tuple[int, RunReport, list[list[Any]] | None]:
    tol = args.tol if args.tol is not None else _tol_default()
    sic = hesse_sic()
    mubs = build_mub_set(sic)
    digest = _digest(b"builtin:hesse")
    if args.mubs_command == "build":
        results = {
            "striations": [["".join(map(str, t)) for t in striation] for striation in mubs.striations],
            "prob_vectors": [[list(map(float, v)) for v in block] for block in np.asarray(mubs.prob_vectors)],
            "projectors": [[encode_matrix(p) for p in block] for block in np.asarray(mubs.projectors)],
        }
        check = verify_mub_set(mubs, tol=tol)
        report = RunReport(
            command="mubs build",
            inputs_digest=digest,
            tolerances={"tol": tol},
            results=results,
            residuals=check.residuals(),
        )
        return 0, report, None
    if args.mubs_command == "verify":
        check = verify_mub_set(mubs, tol=tol)
        report = RunReport(
            command="mubs verify",
            inputs_digest=digest,
            tolerances={"tol": tol},
            results={"passed": check.passed},
            residuals=check.residuals(),
        )
        return (0 if check.passed else 1), report, None
    # cover
    if args.triple is not None:
        try:
            triple = tuple(int(x) for x in args.triple.split(","))
        except ValueError as exc:
            raise UsageError(f"--triple must be comma-separated integers, got {args.triple!r}") from exc
        try:
            striations = covering_witness(triple, mubs, sic, tol=1e-10)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        results = {"triple": list(triple), "witnessing_striations": striations}
        rows = [["triple", "witnessing_striations"], ["".join(map(str, triple)), " ".join(map(str, striations))]]
        exit_code = 0 if striations else 1
    else:
        table = covering_table(mubs, sic, tol=1e-10)
        results = {
            "table": [
                {"triple": "".join(map(str, t)), "witnessing_striations": w} for t, w in table
            ],
            "all_covered": all(w for _, w in table),
        }
        rows = [["triple", "witnessing_striations"]] + [
            ["".join(map(str, t)), " ".join(map(str, w))] for t, w in table
        ]
        exit_code = 0 if results["all_covered"] else 1
    report = RunReport(
        command="mubs cover",
        inputs_digest=digest,
        tolerances={"tol": tol, "pp_zero_tol": 1e-10},
        results=results,
    )
    return exit_code, report, rows


def _cmd_wigner(args) -> tuple[int, RunReport, list[list[Any]] | None]:
    tol = args.tol if args.tol is not None else _tol_default()
    dim, rhos, raw = load_state_file(args.state)
    if len(rhos) != 1:
        raise UsageError(f"wigner expects exactly one state, got {len(rhos)}")
    if dim != 3:
        raise UsageError(f"the discrete Wigner function is implemented for qutrits, got dimension {dim}")
    rho = rhos[0]
    check = validate_density_matrix(rho, tol=max(tol, 1e-8))
    if not check.passed:
        raise UsageError(f"input is not a valid density matrix: {check.residuals()}")
    sic = hesse_sic()
    mubs = build_mub_set(sic)
    probs = sic_probabilities(rho, sic)
    w = wigner_from_sic_probabilities(probs)
    ops = phase_point_operators(mubs)
    w_ops = wigner_of_density(rho, ops)
    cross_residual = float(np.max(np.abs(w - w_ops)))
    marginals = line_marginals(w)
    report = RunReport(
        command="wigner",
        inputs_digest=_digest(raw),
        tolerances={"tol": tol},
        results={
            "wigner": [float(x) for x in w],
            "grid": [[float(x) for x in w[3 * r : 3 * r + 3]] for r in range(3)],
            "negativity": negativity(w),
            "line_probabilities": {"".join(map(str, line)): q for line, q in sorted(marginals.items())},
            "sic_probabilities": [float(x) for x in probs],
        },
        residuals={"phase_point_cross_check": cross_residual},
    )
    csv_rows = [[f"{w[3 * r + c]:.17g}" for c in range(3)] for r in range(3)]
    return 0, report, csv_rows


def _cmd_purity(args) -> tuple[int, RunReport, None]:
    tol = args.tol if args.tol is not None else _tol_default()
    doc, raw = _load_json(args.probs)
    if not isinstance(doc, dict) or "probabilities" not in doc:
        raise UsageError(f"{args.probs}: expected an object with a 'probabilities' field")
    probs = np.asarray(doc["probabilities"], dtype=float)
    dim = int(doc.get("dim", 3))
    if probs.shape != (dim * dim,):
        raise UsageError(f"{args.probs}: expected {dim * dim} probabilities, got {probs.shape}")
    if abs(probs.sum() - 1.0) > 1e-8 or probs.min() < -1e-12:
        raise UsageError(f"{args.probs}: not a probability vector (sum {probs.sum()!r}, min {probs.min()!r})")
    sic = builtin_sic("hesse") if dim == 3 else None
    quadratic = quadratic_purity_check(probs, tol=tol)
    results: dict[str, Any] = {
        "quadratic": {"passed": quadratic.passed, "value": quadratic.value, "target": quadratic.target},
    }
    residuals = {"quadratic": quadratic.residual}
    pure = quadratic.passed
    if dim == 3:
        hesse_form = qbic_check_hesse(probs, tol=tol)
        general = qbic_check_general(probs, triple_product_table(sic), tol=tol)
        results["qbic_hesse"] = {"passed": hesse_form.passed, "value": hesse_form.value}
        results["qbic_general"] = {"passed": general.passed, "value": general.value, "target": general.target}
        residuals["qbic_hesse"] = hesse_form.residual
        residuals["qbic_general"] = general.residual
        pure = pure and hesse_form.passed and general.passed
    indices = distribution_indices(probs)
    entropy = indices.shannon_entropy_nats / np.log(2.0) if args.bits else indices.shannon_entropy_nats
    results["indices"] = {
        "effective_number": indices.effective_number,
        "shannon_entropy_" + ("bits" if args.bits else "nats"): float(entropy),
        "zero_count": indices.zero_count,
        "zero_bound": indices.zero_bound,
        "zero_bound_satisfied": indices.zero_bound_satisfied,
    }
    results["pure"] = pure
    report = RunReport(
        command="purity",
        inputs_digest=_digest(raw),
        tolerances={"tol": tol},
        results=results,
        residuals=residuals,
    )
    return (0 if pure else 1), report, None


def _cmd_min_entropy(args) -> tuple[int, RunReport, None]:
    tol = args.tol if args.tol is not None else _tol_default()
    survivors = enumerate_min_entropy_pure_states(tol=tol)
    report = RunReport(
        command="min-entropy enumerate",
        inputs_digest=_digest(b"builtin:hesse"),
        tolerances={"tol": tol},
        results={
            "count": len(survivors),
            "states": [
                {"triple": "".join(map(str, t)), "probabilities": [float(x) for x in p]} for t, p in survivors
            ],
        },
    )
    return 0, report, None


def _cmd_graph(args) -> tuple[int, RunReport, None]:
    tol = args.tol if args.tol is not None else 1e-9
    if args.builtin != "hesse-mub":
        raise UsageError(f"unknown built-in graph {args.builtin!r}; available: hesse-mub")
    graph = hesse_mub_graph(tol=tol)
    edges = graph.edges()
    results: dict[str, Any] = {
        "labels": list(graph.labels),
        "edges": [[graph.labels[i], graph.labels[j]] for i, j in edges],
        "n_vertices": graph.n,
        "n_edges": len(edges),
    }
    exit_code = 0
    if args.chromatic:
        verdict = cabello_criterion(graph, args.dim)
        results["chromatic_number"] = verdict.chromatic_number
        results["dim"] = verdict.dim
        results["contextual"] = verdict.contextual
        results["coloring"] = {graph.labels[i]: c for i, c in enumerate(verdict.coloring.assignment)}
        exit_code = 0 if verdict.contextual else 1
    report = RunReport(
        command="graph",
        inputs_digest=_digest(f"builtin:{args.builtin}".encode()),
        tolerances={"orthogonality_tol": tol},
        results=results,
    )
    return exit_code, report, None


def _run(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    if args.command == "verify-sic":
        handler = _cmd_verify_sic
    elif args.command == "compat":
        handler = _cmd_compat_triple if args.compat_command == "triple" else _cmd_compat_search
    elif args.command == "mubs":
        handler = _cmd_mubs
    elif args.command == "wigner":
        handler = _cmd_wigner
    elif args.command == "purity":
        handler = _cmd_purity
    elif args.command == "min-entropy":
        handler = _cmd_min_entropy
    else:
        handler = _cmd_graph
    code, report, csv_rows = handler(args)
    report.wall_time_s = time.perf_counter() - start
    _emit(report, args, csv_rows)
    return code


def main(argv=None) -> int:
    """Console entry point; returns the process exit code."""
    try:
        return _run(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2
    except BrokenPipeError:  # pragma: no cover
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
