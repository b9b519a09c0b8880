"""Gate-list circuit IR, optimization passes, and cost metrics.

A circuit is an ordered list of gate instances over numbered lines
(0-based internally; the text format is 1-based).  For a 2-qubit gate the
first line index is the most significant tensor factor.  Three passes are
provided: replacing separable 2-qubit gates by their factors, cancelling
adjacent inverse pairs, and absorbing 1-qubit gates into neighbouring
2-qubit gates.  `optimize` combines them greedily, accepting only rewrites
that worsen no cost metric.

Quantum cost counts the gates that survive absorption: every 2-qubit gate,
plus 1-qubit gates on lines no 2-qubit gate touches (those have nothing to
absorb them).
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .matcore import DEFAULT_TOL, Tolerance, _frozen, require_gate
from .separability import Verdict, analyze


class TooManyLinesError(ValueError):
    """The unitary verifier is bounded to 4 lines."""


@dataclass(frozen=True)
class GateInstance:
    """One gate application: 1 or 2 distinct line indices and its matrix."""

    lines: tuple[int, ...]
    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        arity = len(self.lines)
        if arity not in (1, 2):
            raise ValueError("a gate acts on 1 or 2 lines")
        if len(set(self.lines)) != arity:
            raise ValueError(f"duplicate line in {self.lines}")
        if any(l < 0 for l in self.lines):
            raise ValueError("line indices must be nonnegative")
        if self.matrix.shape != (2**arity, 2**arity):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not match arity {arity}"
            )

    @property
    def arity(self) -> int:
        return len(self.lines)


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over `num_lines` lines, with a phase accumulator
    collecting the scalars stripped by cancellation."""

    num_lines: int
    gates: tuple[GateInstance, ...] = ()
    global_phase: float = 0.0

    def __post_init__(self):
        if self.num_lines < 1:
            raise ValueError("a circuit needs at least one line")
        for g in self.gates:
            if any(l >= self.num_lines for l in g.lines):
                raise ValueError(
                    f"gate {g.label!r} uses line outside 0..{self.num_lines - 1}"
                )

    def validate_gates(self, tol: Tolerance = DEFAULT_TOL) -> None:
        """Check every gate matrix is unitary within tolerance."""
        for g in self.gates:
            require_gate(g.matrix, tol)


@dataclass(frozen=True)
class CostMetrics:
    gate_count: int
    quantum_cost: int
    width: int
    depth: int


def metrics(c: Circuit) -> CostMetrics:
    """Gate count, quantum cost, width (lines touched), and depth (longest
    dependency chain)."""
    two_qubit_lines: set[int] = set()
    for g in c.gates:
        if g.arity == 2:
            two_qubit_lines.update(g.lines)
    quantum_cost = sum(
        1
        for g in c.gates
        if g.arity == 2 or g.lines[0] not in two_qubit_lines
    )
    touched = {l for g in c.gates for l in g.lines}
    line_depth: dict[int, int] = {}
    depth = 0
    for g in c.gates:
        d = 1 + max((line_depth.get(l, 0) for l in g.lines))
        for l in g.lines:
            line_depth[l] = d
        depth = max(depth, d)
    return CostMetrics(
        gate_count=len(c.gates),
        quantum_cost=quantum_cost,
        width=len(touched),
        depth=depth,
    )


_SWAP4 = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128
)


def _on_lines(g: GateInstance, lines: tuple[int, ...]) -> np.ndarray:
    """Express g's matrix with its line tuple reordered to `lines`."""
    if g.lines == lines:
        return g.matrix
    return _SWAP4 @ g.matrix @ _SWAP4


def _decompose_at(c: Circuit, index: int, tol: Tolerance) -> Circuit | None:
    """Replace the 2-qubit gate at `index` by its factors when separable."""
    g = c.gates[index]
    report = analyze(g.matrix, tol)
    if report.verdict is not Verdict.SEPARABLE:
        return None
    fp = report.factors
    u1 = _frozen(np.exp(1j * report.global_phase) * fp.u1)
    g1 = GateInstance((g.lines[0],), u1, label=f"{g.label}.a")
    g2 = GateInstance((g.lines[1],), fp.u2, label=f"{g.label}.b")
    gates = c.gates[:index] + (g1, g2) + c.gates[index + 1 :]
    return replace(c, gates=gates)


def pass_decompose(c: Circuit, tol: Tolerance = DEFAULT_TOL) -> Circuit:
    """Split every separable 2-qubit gate into its two 1-qubit factors
    (the stripped global phase is attached to the first factor)."""
    cur = c
    index = 0
    while index < len(cur.gates):
        g = cur.gates[index]
        if g.arity == 2:
            decomposed = _decompose_at(cur, index, tol)
            if decomposed is not None:
                cur = decomposed
                index += 2
                continue
        index += 1
    return cur


def _scalar_identity_phase(prod: np.ndarray, tol: Tolerance) -> float | None:
    """If prod is a unit scalar times the identity (within eps_match),
    return the scalar's phase, else None."""
    s = complex(prod[0, 0])
    if abs(abs(s) - 1.0) > tol.eps_match:
        return None
    if np.abs(prod - s * np.eye(prod.shape[0])).max() > tol.eps_match:
        return None
    return float(np.angle(s))


def pass_cancel_inverses(c: Circuit, tol: Tolerance = DEFAULT_TOL) -> Circuit:
    """Remove adjacent gate pairs whose product is a scalar identity.

    Two gates can cancel when they act on the same line set and no gate in
    between touches any of those lines; the stripped scalar phase goes into
    the circuit-level accumulator.  Runs to a fixed point."""
    gates = list(c.gates)
    phase = c.global_phase
    changed = True
    while changed:
        changed = False
        for i in range(len(gates)):
            gi = gates[i]
            lines_set = set(gi.lines)
            for j in range(i + 1, len(gates)):
                gj = gates[j]
                if not (set(gj.lines) & lines_set):
                    continue
                # first later gate touching any shared line: it either
                # cancels gi or blocks it
                if set(gj.lines) == lines_set:
                    prod = _on_lines(gj, gi.lines) @ gi.matrix
                    s = _scalar_identity_phase(prod, tol)
                    if s is not None:
                        del gates[j]
                        del gates[i]
                        phase += s
                        changed = True
                break
            if changed:
                break
    return replace(c, gates=tuple(gates), global_phase=phase)


def _embed_single(u: np.ndarray, position: int) -> np.ndarray:
    """Lift a 1-qubit matrix onto one factor of a 2-qubit gate."""
    eye = np.eye(2, dtype=np.complex128)
    return np.kron(u, eye) if position == 0 else np.kron(eye, u)


def pass_absorb(c: Circuit, tol: Tolerance = DEFAULT_TOL) -> Circuit:
    """Fold 1-qubit gates into adjacent 2-qubit gates sharing their line.

    A gate preceding the 2-qubit gate multiplies on the input side, a
    following one on the output side; with neighbours on both sides the
    earlier wins.  Runs to a fixed point."""
    gates = list(c.gates)
    changed = True
    while changed:
        changed = False
        for i, g in enumerate(gates):
            if g.arity != 1:
                continue
            line = g.lines[0]
            prev = next(
                (j for j in range(i - 1, -1, -1) if line in gates[j].lines), None
            )
            nxt = next(
                (j for j in range(i + 1, len(gates)) if line in gates[j].lines), None
            )
            if prev is not None and gates[prev].arity == 2:
                target, output_side = prev, True
            elif nxt is not None and gates[nxt].arity == 2:
                target, output_side = nxt, False
            else:
                continue
            host = gates[target]
            lifted = _embed_single(g.matrix, host.lines.index(line))
            merged = lifted @ host.matrix if output_side else host.matrix @ lifted
            gates[target] = GateInstance(
                host.lines, _frozen(merged), label=f"{host.label}+{g.label}"
            )
            del gates[i]
            changed = True
            break
    return replace(c, gates=tuple(gates))


def _dominates(after: CostMetrics, before: CostMetrics) -> bool:
    return (
        after.gate_count <= before.gate_count
        and after.quantum_cost <= before.quantum_cost
        and after.width <= before.width
        and after.depth <= before.depth
    )


def optimize(
    c: Circuit, tol: Tolerance = DEFAULT_TOL
) -> tuple[Circuit, CostMetrics, CostMetrics]:
    """Shrink a circuit with decomposition and cancellation, keeping only
    rewrites that worsen no metric.

    Each step tries plain cancellation, then the decomposition of a single
    separable 2-qubit gate followed by cancellation; a step is committed
    only when no cost metric increases (splitting a gate whose factors
    cannot cancel or absorb anywhere would raise the gate count, so such
    splits are rolled back).  The emitted circuit keeps its decomposed,
    cancelled form; absorption is reflected in the quantum-cost metric."""
    before = metrics(c)
    cur = c
    while True:
        step = None
        cancelled = pass_cancel_inverses(cur, tol)
        if len(cancelled.gates) < len(cur.gates) and _dominates(
            metrics(cancelled), metrics(cur)
        ):
            step = cancelled
        else:
            for idx, g in enumerate(cur.gates):
                if g.arity != 2:
                    continue
                decomposed = _decompose_at(cur, idx, tol)
                if decomposed is None:
                    continue
                candidate = pass_cancel_inverses(decomposed, tol)
                if _dominates(metrics(candidate), metrics(cur)):
                    step = candidate
                    break
        if step is None:
            break
        cur = step
    return cur, before, metrics(cur)


def _embed(g: GateInstance, num_lines: int) -> np.ndarray:
    """Full-circuit matrix of one gate (identity on untouched lines)."""
    dim = 1 << num_lines
    k = g.arity
    shifts = [num_lines - 1 - l for l in g.lines]
    mask = 0
    for s in shifts:
        mask |= 1 << s
    out = np.zeros((dim, dim), dtype=np.complex128)
    for row in range(dim):
        grow = 0
        for s in shifts:
            grow = (grow << 1) | ((row >> s) & 1)
        rest = row & ~mask
        for gcol in range(1 << k):
            col = rest
            for idx, s in enumerate(shifts):
                col |= ((gcol >> (k - 1 - idx)) & 1) << s
            out[row, col] = g.matrix[grow, gcol]
    return out


def circuit_unitary(c: Circuit) -> np.ndarray:
    """Dense unitary of the whole circuit, most-significant-line-first.

    Bounded to 4 lines; wider circuits raise TooManyLinesError."""
    if c.num_lines > 4:
        raise TooManyLinesError(f"verifier supports at most 4 lines, got {c.num_lines}")
    dim = 1 << c.num_lines
    m = np.exp(1j * c.global_phase) * np.eye(dim, dtype=np.complex128)
    for g in c.gates:
        m = _embed(g, c.num_lines) @ m
    return _frozen(m)


def phase_aligned_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Max-entry distance between a and e^{i*phi} b, with phi chosen
    analytically from the largest-modulus entry of b."""
    idx = np.unravel_index(np.abs(b).argmax(), b.shape)
    ref = complex(b[idx])
    if abs(ref) == 0.0:
        return float(np.abs(a).max())
    phi = np.angle(complex(a[idx]) / ref) if abs(complex(a[idx])) > 0 else 0.0
    return float(np.abs(a - np.exp(1j * phi) * b).max())
