"""Dense exact simulation of graph states.

Independent oracle for Pauli expectations, and the only evaluator for
non-Pauli observables such as single-qubit rotations.  Amplitude index
convention: vertex i (in the graph's canonical vertex order) is bit i of
the amplitude index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .graph import Graph
from .pauli import PauliString

DEFAULT_CAP = 14

PAULI_MATRICES: dict[str, np.ndarray] = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class StateVector:
    """An n-qubit state as a dense complex amplitude array."""

    n: int
    amplitudes: np.ndarray
    vertices: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.amplitudes.shape != (1 << self.n,):
            raise ValueError("amplitude array has the wrong length")
        norm = float(np.linalg.norm(self.amplitudes))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state is not normalized (norm {norm})")

    def qubit(self, v: str) -> int:
        return self.vertices.index(v)


@dataclass(frozen=True)
class Observable:
    """A scalar coefficient times a tensor product of per-vertex 2x2
    Hermitian factors (identity on absent vertices)."""

    coefficient: float
    factors: tuple[tuple[str, tuple[tuple[complex, ...], ...]], ...]

    @staticmethod
    def make(
        factors: Mapping[str, np.ndarray], coefficient: float = 1.0
    ) -> "Observable":
        items = []
        for v, mat in sorted(factors.items()):
            arr = np.asarray(mat, dtype=complex)
            if arr.shape != (2, 2):
                raise ValueError(f"factor at {v!r} is not 2x2")
            if not np.allclose(arr, arr.conj().T, atol=1e-12):
                raise ValueError(f"factor at {v!r} is not Hermitian")
            items.append((str(v), tuple(tuple(row) for row in arr)))
        return Observable(coefficient=float(coefficient), factors=tuple(items))

    def factor_arrays(self) -> list[tuple[str, np.ndarray]]:
        return [(v, np.array(mat, dtype=complex)) for v, mat in self.factors]


def observable_from_pauli(
    letters: Mapping[str, str] | PauliString, coefficient: float = 1.0
) -> Observable:
    """Pauli product (no phase) as an Observable."""
    items = (
        letters.as_dict() if isinstance(letters, PauliString) else dict(letters)
    )
    return Observable.make(
        {v: PAULI_MATRICES[l] for v, l in items.items() if l != "I"},
        coefficient=coefficient,
    )


def graph_state(g: Graph, cap: int = DEFAULT_CAP) -> StateVector:
    """|+>^n with a controlled-Z applied across every edge."""
    n = len(g.vertices)
    if n > cap:
        raise ValueError(f"graph has {n} vertices; cap is {cap}")
    dim = 1 << n
    amplitudes = np.full(dim, 1.0 / math.sqrt(dim), dtype=complex)
    idx = np.arange(dim)
    for u, v in sorted(g.edges):
        i, j = g.index[u], g.index[v]
        both = ((idx >> i) & 1) & ((idx >> j) & 1)
        amplitudes[both == 1] *= -1.0
    return StateVector(n=n, amplitudes=amplitudes, vertices=g.vertices)


def apply_observable(sv: StateVector, obs: Observable) -> np.ndarray:
    """O|psi> via sparse per-factor contraction (never a 2^n x 2^n matrix)."""
    psi = sv.amplitudes.reshape([2] * sv.n)
    for v, mat in obs.factor_arrays():
        axis = sv.n - 1 - sv.qubit(v)  # C-order: axis 0 is the top bit
        psi = np.moveaxis(
            np.tensordot(mat, psi, axes=([1], [axis])), 0, axis
        )
    return obs.coefficient * psi.reshape(-1)


def expect(
    sv: StateVector, obs: Observable | Iterable[Observable]
) -> float:
    """<psi|O|psi> for an observable or a sum of observable terms."""
    terms = [obs] if isinstance(obs, Observable) else list(obs)
    value = 0.0 + 0.0j
    for term in terms:
        value += np.vdot(sv.amplitudes, apply_observable(sv, term))
    if abs(value.imag) > 1e-10:
        raise ValueError(f"expectation has imaginary part {value.imag}")
    return float(value.real)


def pauli_expectation(sv: StateVector, letters: Mapping[str, str]) -> float:
    """Expectation of a phaseless Pauli product; cross-oracle for the exact
    stabilizer arithmetic."""
    return expect(sv, observable_from_pauli(letters))


def rotation_observable(theta: float) -> np.ndarray:
    """cos(theta/2) Z + sin(theta/2) Y."""
    return (
        math.cos(theta / 2) * PAULI_MATRICES["Z"]
        + math.sin(theta / 2) * PAULI_MATRICES["Y"]
    )


def chsh_operator(theta1: float, theta2: float) -> tuple[Observable, ...]:
    """Four-term Bell operator on the 4-path (vertices "1".."4").

    The bracket whose terms ignore vertex 3 carries the relative minus sign
    between the two rotation settings; the bracket acting on all four
    vertices carries the plus.  At (pi/2, 3*pi/2) the brackets collapse to
    sqrt(2) times the stabilizer elements Z1 X2 X4 and Y1 X2 X3 Y4, so the
    graph-state expectation is 2*sqrt(2).
    """
    x = PAULI_MATRICES["X"]
    y = PAULI_MATRICES["Y"]
    r1 = rotation_observable(theta1)
    r2 = rotation_observable(theta2)
    return (
        Observable.make({"1": r1, "2": x, "4": x}, coefficient=1.0),
        Observable.make({"1": r2, "2": x, "4": x}, coefficient=-1.0),
        Observable.make({"1": r1, "2": x, "3": x, "4": y}, coefficient=1.0),
        Observable.make({"1": r2, "2": x, "3": x, "4": y}, coefficient=1.0),
    )


def dump_amplitudes(sv: StateVector) -> bytes:
    """Little-endian (re, im) float64 pairs, amplitude-index ordered."""
    out = np.empty(2 * len(sv.amplitudes), dtype="<f8")
    out[0::2] = sv.amplitudes.real
    out[1::2] = sv.amplitudes.imag
    return out.tobytes()
