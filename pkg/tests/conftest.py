import numpy as np
import pytest

from gatefactor.circuit import Circuit, GateInstance
from gatefactor.cli import gen_random
from gatefactor.single_qubit import CanonicalSingleQubit, realize

X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128
)


def random_params(rng) -> CanonicalSingleQubit:
    return CanonicalSingleQubit(
        theta=rng.uniform(0.0, np.pi / 2),
        phi0=rng.uniform(-np.pi, np.pi),
        phi1=rng.uniform(-np.pi, np.pi),
        phi2=rng.uniform(-np.pi, np.pi),
    )


def random_single(rng) -> np.ndarray:
    return realize(random_params(rng))


def random_circuit(seed: int, num_lines: int = 3, max_gates: int = 8) -> Circuit:
    """Random circuit mixing single, separable and genuine gates, with a
    bias toward immediate inverse pairs so cancellation has work to do."""
    rng = np.random.default_rng(seed)
    gates: list[GateInstance] = []
    while len(gates) < int(rng.integers(0, max_gates + 1)):
        kind = ["single", "separable", "genuine"][int(rng.integers(3))]
        child = int(rng.integers(2**63))
        if kind == "single":
            lines = (int(rng.integers(num_lines)),)
            matrix = gen_random("single", child)
        else:
            pair = rng.choice(num_lines, size=2, replace=False)
            lines = (int(pair[0]), int(pair[1]))
            matrix = gen_random(kind, child)
        gates.append(GateInstance(lines, matrix, label=f"{kind}{len(gates)}"))
        if gates and rng.random() < 0.3:
            g = gates[-1]
            gates.append(
                GateInstance(g.lines, g.matrix.conj().T.copy(), label=g.label + "'")
            )
    return Circuit(num_lines, tuple(gates[:max_gates]))


@pytest.fixture
def rng():
    return np.random.default_rng(20250810)
