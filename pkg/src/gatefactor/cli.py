"""Command-line front end and file formats.

Matrix files are JSON documents ``{"dim": 2|4, "entries": [[re, im], ...]}``
with entries row-major; floats are written in Python's shortest lossless
form, so a write/parse cycle is exact.

Circuit files are line-oriented UTF-8::

    lines <n>
    gate <label> <line> [<line2>] inline <re,im pairs, row-major>
    gate <label> <line> [<line2>] file <path-to-matrix.json>

`#` starts a comment, blank lines are ignored, line indices are 1-based
(converted to the 0-based IR indices on load).  Relative matrix paths are
resolved against the circuit file.

Exit codes: 0 success or positive verdict, 2 negative verdict (not
self-inverse / genuine 2-qubit), 1 any error.  Random instances come from
numpy's seeded PCG64 generator, so every report can be replayed from the
seed it quotes.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, GateInstance, metrics, optimize
from .factorize import FactorPair
from .matcore import DEFAULT_TOL, Tolerance, _frozen, as_matrix, tensor2x2
from .separability import (
    SeparabilityReport,
    Verdict,
    analyze,
    separability_oracle,
)
from .single_qubit import CanonicalSingleQubit, canonicalize, classify_hermitian, realize


class ParseError(ValueError):
    """Malformed matrix or circuit file; message carries file/line context."""


class DimensionError(ParseError):
    """Matrix dimension is not 2 or 4, or the entry count does not match."""


class LineIndexError(ParseError):
    """Circuit line index out of range or duplicated within a gate."""


@dataclass(frozen=True)
class CliConfig:
    tolerance: Tolerance
    json_output: bool
    seed: int


# ---------------------------------------------------------------------------
# matrix files


def matrix_to_json(m: np.ndarray) -> dict:
    return {
        "dim": m.shape[0],
        "entries": [[float(z.real), float(z.imag)] for z in m.flat],
    }


def matrix_from_json(doc, context: str = "matrix") -> np.ndarray:
    if not isinstance(doc, dict):
        raise ParseError(f"{context}: expected a JSON object")
    dim = doc.get("dim")
    if dim not in (2, 4):
        raise DimensionError(f"{context}: dim must be 2 or 4, got {dim!r}")
    entries = doc.get("entries")
    if not isinstance(entries, list) or len(entries) != dim * dim:
        have = len(entries) if isinstance(entries, list) else "none"
        raise DimensionError(f"{context}: expected {dim * dim} entries, got {have}")
    values = []
    for k, pair in enumerate(entries):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) for x in pair)
        ):
            raise ParseError(f"{context}: entry {k} must be a [re, im] number pair")
        values.append(complex(pair[0], pair[1]))
    try:
        return as_matrix(np.array(values, dtype=np.complex128).reshape(dim, dim))
    except ValueError as exc:
        raise ParseError(f"{context}: {exc}") from exc


def parse_matrix_file(path: str) -> np.ndarray:
    """Load a matrix file; unitarity is checked by the consuming command,
    not here."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    return matrix_from_json(doc, context=str(path))


def write_matrix_file(path: str, m: np.ndarray) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_json(m), fh, indent=1)
        fh.write("\n")


# ---------------------------------------------------------------------------
# circuit files


def _parse_gate_line(tokens: list[str], num_lines: int, base_dir: str, where: str):
    if len(tokens) < 4:
        raise ParseError(f"{where}: gate needs a label, line indices and a matrix")
    label = tokens[1]
    idx = 2
    lines: list[int] = []
    while idx < len(tokens) and tokens[idx] not in ("inline", "file"):
        try:
            lines.append(int(tokens[idx]))
        except ValueError as exc:
            raise ParseError(f"{where}: bad line index {tokens[idx]!r}") from exc
        idx += 1
    if len(lines) not in (1, 2):
        raise ParseError(f"{where}: a gate takes 1 or 2 line indices, got {len(lines)}")
    for l in lines:
        if not 1 <= l <= num_lines:
            raise LineIndexError(f"{where}: line {l} outside 1..{num_lines}")
    if len(set(lines)) != len(lines):
        raise LineIndexError(f"{where}: duplicate line index in {lines}")
    if idx >= len(tokens):
        raise ParseError(f"{where}: missing 'inline' or 'file' matrix source")
    source = tokens[idx]
    dim = 2 ** len(lines)
    if source == "inline":
        pairs = tokens[idx + 1 :]
        if len(pairs) != dim * dim:
            raise ParseError(
                f"{where}: inline matrix needs {dim * dim} re,im pairs, got {len(pairs)}"
            )
        values = []
        for pair in pairs:
            parts = pair.split(",")
            try:
                re_s, im_s = parts
                values.append(complex(float(re_s), float(im_s)))
            except ValueError as exc:
                raise ParseError(f"{where}: bad entry {pair!r}") from exc
        matrix = as_matrix(np.array(values).reshape(dim, dim))
    else:
        if len(tokens) != idx + 2:
            raise ParseError(f"{where}: 'file' takes exactly one path")
        ref = tokens[idx + 1]
        if not os.path.isabs(ref):
            ref = os.path.join(base_dir, ref)
        matrix = parse_matrix_file(ref)
        if matrix.shape[0] != dim:
            raise ParseError(
                f"{where}: matrix file is {matrix.shape[0]}x{matrix.shape[0]}, "
                f"gate spans {len(lines)} line(s)"
            )
    return GateInstance(tuple(l - 1 for l in lines), matrix, label)


def parse_circuit_file(path: str) -> Circuit:
    base_dir = os.path.dirname(os.path.abspath(path))
    with open(path, "r", encoding="utf-8") as fh:
        raw_lines = fh.readlines()
    num_lines: int | None = None
    gates: list[GateInstance] = []
    for lineno, raw in enumerate(raw_lines, 1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        tokens = text.split()
        where = f"{path}:{lineno}"
        if tokens[0] == "lines":
            if num_lines is not None:
                raise ParseError(f"{where}: duplicate 'lines' directive")
            try:
                num_lines = int(tokens[1])
            except (IndexError, ValueError) as exc:
                raise ParseError(f"{where}: 'lines' needs one integer") from exc
            if num_lines < 1:
                raise ParseError(f"{where}: need at least one line")
        elif tokens[0] == "gate":
            if num_lines is None:
                raise ParseError(f"{where}: 'gate' before 'lines'")
            gates.append(_parse_gate_line(tokens, num_lines, base_dir, where))
        else:
            raise ParseError(f"{where}: unknown directive {tokens[0]!r}")
    if num_lines is None:
        raise ParseError(f"{path}: missing 'lines' directive")
    return Circuit(num_lines, tuple(gates))


def write_circuit_file(path: str, c: Circuit) -> None:
    def fmt(z: complex) -> str:
        return f"{z.real!r},{z.imag!r}"

    out = [f"lines {c.num_lines}"]
    if c.global_phase:
        out.append(f"# accumulated global phase: {c.global_phase!r} rad")
    for k, g in enumerate(c.gates):
        label = "".join(g.label.split()) or f"g{k}"
        lines = " ".join(str(l + 1) for l in g.lines)
        entries = " ".join(fmt(complex(z)) for z in g.matrix.flat)
        out.append(f"gate {label} {lines} inline {entries}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(out) + "\n")


# ---------------------------------------------------------------------------
# random instances

_CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128
)


def _random_single(rng: np.random.Generator) -> np.ndarray:
    p = CanonicalSingleQubit(
        theta=rng.uniform(0.0, math.pi / 2),
        phi0=rng.uniform(-math.pi, math.pi),
        phi1=rng.uniform(-math.pi, math.pi),
        phi2=rng.uniform(-math.pi, math.pi),
    )
    return realize(p)


def gen_random(kind: str, seed: int) -> np.ndarray:
    """Deterministic random gate of the requested kind (PCG64 stream).

    `single` draws canonical angles uniformly; `separable` tensors two such
    gates under a random global phase; `genuine` sandwiches a CNOT between
    random local gates and re-draws in the (measure-zero) event the oracle
    does not confirm non-separability."""
    rng = np.random.default_rng(seed)
    if kind == "single":
        return _random_single(rng)
    if kind == "separable":
        m = tensor2x2(_random_single(rng), _random_single(rng))
        return _frozen(np.exp(1j * rng.uniform(-math.pi, math.pi)) * m)
    if kind == "genuine":
        while True:
            m = (
                tensor2x2(_random_single(rng), _random_single(rng))
                @ _CNOT
                @ tensor2x2(_random_single(rng), _random_single(rng))
            )
            residual, _, _ = separability_oracle(m)
            if residual > DEFAULT_TOL.eps_match:
                return _frozen(m)
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# reports


def _emit(doc: dict, cfg: CliConfig) -> None:
    if cfg.json_output:
        print(json.dumps(doc, indent=2))
        return
    for key, value in doc.items():
        print(f"{key}: {value}")


def report_to_json(report: SeparabilityReport) -> dict:
    doc = {
        "global_phase": report.global_phase,
        "condition1_diag": report.condition1_diag,
        "condition1_antidiag": report.condition1_antidiag,
        "tests": [
            {"passed": t.passed, "residual": t.residual} for t in report.tests
        ],
        "det_conditions": [
            {"passed": t.passed, "residual": t.residual}
            for t in report.det_conditions
        ],
        "free_phases": list(report.free_phases),
        "oracle_residual": report.oracle_residual,
        "verdict": report.verdict.value,
        "factors": None,
    }
    if report.factors is not None:
        doc["factors"] = _factors_to_json(report.factors)
    return doc


def _factors_to_json(fp: FactorPair) -> dict:
    return {
        "u1": matrix_to_json(fp.u1),
        "u2": matrix_to_json(fp.u2),
        "phase_split": fp.phase_split,
        "residual": fp.residual,
    }


# ---------------------------------------------------------------------------
# commands


def _require_dim(m: np.ndarray, dim: int, path: str) -> np.ndarray:
    if m.shape[0] != dim:
        raise DimensionError(
            f"{path}: expected a {dim}x{dim} matrix, got {m.shape[0]}x{m.shape[0]}"
        )
    return m


def _cmd_canon(args, cfg: CliConfig) -> int:
    m = _require_dim(parse_matrix_file(args.matrix), 2, args.matrix)
    p = canonicalize(m, cfg.tolerance)
    _emit({"theta": p.theta, "phi0": p.phi0, "phi1": p.phi1, "phi2": p.phi2}, cfg)
    return 0


def _cmd_hermitian(args, cfg: CliConfig) -> int:
    m = _require_dim(parse_matrix_file(args.matrix), 2, args.matrix)
    h = classify_hermitian(m, cfg.tolerance)
    if h is None:
        _emit({"hermitian": False}, cfg)
        return 2
    _emit(
        {
            "hermitian": True,
            "theta": h.theta,
            "phi2": h.phi2,
            "sign": h.sign,
            "identity": h.identity,
        },
        cfg,
    )
    return 0


def _cmd_separable(args, cfg: CliConfig) -> int:
    m = _require_dim(parse_matrix_file(args.matrix), 4, args.matrix)
    report = analyze(m, cfg.tolerance)
    _emit(report_to_json(report), cfg)
    return 0 if report.verdict is Verdict.SEPARABLE else 2


def _cmd_factor(args, cfg: CliConfig) -> int:
    m = _require_dim(parse_matrix_file(args.matrix), 4, args.matrix)
    report = analyze(m, cfg.tolerance)
    if report.verdict is not Verdict.SEPARABLE:
        _emit(report_to_json(report), cfg)
        return 2
    fp = report.factors
    _emit(
        {
            "u1": matrix_to_json(fp.u1),
            "u2": matrix_to_json(fp.u2),
            "global_phase": report.global_phase,
            "residual": fp.residual,
        },
        cfg,
    )
    return 0


def _metrics_to_json(m) -> dict:
    return {
        "gate_count": m.gate_count,
        "quantum_cost": m.quantum_cost,
        "width": m.width,
        "depth": m.depth,
    }


def _cmd_optimize(args, cfg: CliConfig) -> int:
    c = parse_circuit_file(args.circuit)
    c.validate_gates(cfg.tolerance)
    optimized, before, after = optimize(c, cfg.tolerance)
    root, _ = os.path.splitext(args.circuit)
    out_path = root + ".opt.txt"
    write_circuit_file(out_path, optimized)
    _emit(
        {
            "before": _metrics_to_json(before),
            "after": _metrics_to_json(after),
            "output": out_path,
        },
        cfg,
    )
    return 0


def _cmd_gen(args, cfg: CliConfig) -> int:
    m = gen_random(args.kind, cfg.seed)
    doc = {"seed": cfg.seed, "kind": args.kind, "matrix": matrix_to_json(m)}
    if args.output:
        write_matrix_file(args.output, m)
        doc["path"] = args.output
    _emit(doc, cfg)
    return 0


_COMMANDS = {
    "canon": _cmd_canon,
    "hermitian": _cmd_hermitian,
    "separable": _cmd_separable,
    "factor": _cmd_factor,
    "optimize": _cmd_optimize,
    "gen": _cmd_gen,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--eps-unitary", type=float, default=None, metavar="E")
    common.add_argument("--eps-match", type=float, default=None, metavar="E")
    common.add_argument("--eps-roundtrip", type=float, default=None, metavar="E")
    common.add_argument("--seed", type=int, default=0, help="PCG64 seed")

    parser = argparse.ArgumentParser(
        prog="gatefactor",
        description="Canonical forms, separability tests and circuit optimization "
        "for 1- and 2-qubit gates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text, arg, meta in (
        ("canon", "canonical angles of a 1-qubit gate", "matrix", "MATRIX_JSON"),
        ("hermitian", "classify a 1-qubit gate as self-inverse", "matrix", "MATRIX_JSON"),
        ("separable", "test a 2-qubit gate for separability", "matrix", "MATRIX_JSON"),
        ("factor", "reconstruct the factors of a separable gate", "matrix", "MATRIX_JSON"),
        ("optimize", "optimize a circuit file", "circuit", "CIRCUIT_TXT"),
    ):
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.add_argument(arg, metavar=meta)
    gen = sub.add_parser("gen", help="generate a random gate", parents=[common])
    gen.add_argument("kind", choices=("single", "separable", "genuine"))
    gen.add_argument("-o", "--output", default=None, help="also write a matrix file")
    return parser


def dispatch(argv: list[str]) -> int:
    """Run one command line; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse prints usage to stderr itself
        return 0 if exc.code == 0 else 1
    try:
        tol = Tolerance(
            eps_unitary=args.eps_unitary
            if args.eps_unitary is not None
            else DEFAULT_TOL.eps_unitary,
            eps_match=args.eps_match
            if args.eps_match is not None
            else DEFAULT_TOL.eps_match,
            eps_roundtrip=args.eps_roundtrip
            if args.eps_roundtrip is not None
            else DEFAULT_TOL.eps_roundtrip,
        )
        cfg = CliConfig(tolerance=tol, json_output=args.json, seed=args.seed)
        return _COMMANDS[args.command](args, cfg)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
