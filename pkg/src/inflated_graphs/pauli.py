"""Signed Pauli-product algebra and graph-state stabilizer machinery.

Phases are tracked exactly as integer exponents of i (mod 4).  Letters are
stored sparsely: a vertex absent from a string carries the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .graph import Graph

LETTERS = ("I", "X", "Y", "Z")

# (a, b) -> (phase exponent of i, product letter) for single-qubit a*b.
_MUL = {
    ("X", "Y"): (1, "Z"),
    ("Y", "X"): (3, "Z"),
    ("Y", "Z"): (1, "X"),
    ("Z", "Y"): (3, "X"),
    ("Z", "X"): (1, "Y"),
    ("X", "Z"): (3, "Y"),
}

_PHASE_TOKEN = {0: "+1", 1: "+i", 2: "-1", 3: "-i"}
_TOKEN_PHASE = {t: p for p, t in _PHASE_TOKEN.items()}


def letter_mul(a: str, b: str) -> tuple[int, str]:
    if a == "I":
        return 0, b
    if b == "I":
        return 0, a
    if a == b:
        return 0, "I"
    return _MUL[(a, b)]


@dataclass(frozen=True)
class PauliString:
    """A phase i**phase times a sparse tensor product of Pauli letters."""

    phase: int = 0
    letters: tuple[tuple[str, str], ...] = ()

    @staticmethod
    def from_dict(letters: Mapping[str, str], phase: int = 0) -> "PauliString":
        items = tuple(
            sorted((v, l) for v, l in letters.items() if l != "I")
        )
        for _, l in items:
            if l not in LETTERS:
                raise ValueError(f"invalid Pauli letter {l!r}")
        return PauliString(phase=phase % 4, letters=items)

    def letter(self, v: str) -> str:
        return self.as_dict().get(v, "I")

    def as_dict(self) -> dict[str, str]:
        return dict(self.letters)

    @property
    def sign(self) -> int:
        """The real sign, for strings with phase exponent 0 or 2."""
        if self.phase == 0:
            return 1
        if self.phase == 2:
            return -1
        raise ValueError(f"phase i**{self.phase} is not a real sign")

    def is_identity_letters(self) -> bool:
        return not self.letters

    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)

    def __str__(self) -> str:
        body = " ".join(f"{l}@{v}" for v, l in self.letters)
        return _PHASE_TOKEN[self.phase] + (f" {body}" if body else "")


IDENTITY = PauliString()


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Product with exact phase tracking."""
    phase = (a.phase + b.phase) % 4
    letters = a.as_dict()
    for v, lb in b.letters:
        p, l = letter_mul(letters.get(v, "I"), lb)
        phase = (phase + p) % 4
        if l == "I":
            letters.pop(v, None)
        else:
            letters[v] = l
    return PauliString(phase=phase, letters=tuple(sorted(letters.items())))


def commutes(a: PauliString, b: PauliString) -> bool:
    """True iff the two strings commute as operators."""
    bd = b.as_dict()
    anti = 0
    for v, la in a.letters:
        lb = bd.get(v, "I")
        if lb != "I" and lb != la:
            anti ^= 1
    return anti == 0


def parse(text: str) -> PauliString:
    """Parse the text form, e.g. ``"-1 X@1 Z@2"``."""
    parts = text.split()
    if not parts or parts[0] not in _TOKEN_PHASE:
        raise ValueError(f"missing phase token in {text!r}")
    letters = {}
    for item in parts[1:]:
        l, _, v = item.partition("@")
        if not v or l not in LETTERS:
            raise ValueError(f"bad letter assignment {item!r}")
        letters[v] = l
    return PauliString.from_dict(letters, phase=_TOKEN_PHASE[parts[0]])


def generator_element(g: Graph, v: str) -> PauliString:
    """X on v, Z on each neighbor of v: the graph-state generator at v."""
    g.require_vertex(v)
    letters = {v: "X"}
    letters.update({u: "Z" for u in g.neighbors[v]})
    return PauliString.from_dict(letters)


def subset_to_pauli(g: Graph, subset: frozenset[str] | set[str]) -> PauliString:
    """Pauli form of the stabilizer element generated by a vertex subset.

    Uses the local rule: with delta marking subset membership and
    t = (sum of neighboring deltas) mod 4, the local factor at each vertex is
    i**(delta*t) X**delta Z**t.
    """
    for v in subset:
        g.require_vertex(v)
    phase = 0
    letters: dict[str, str] = {}
    for u in g.vertices:
        delta = 1 if u in subset else 0
        t = sum(1 for w in g.neighbors[u] if w in subset) % 4
        if delta:
            letters[u] = "Y" if t % 2 else "X"
            if t >= 2:
                phase = (phase + 2) % 4
        elif t % 2:
            letters[u] = "Z"
    return PauliString.from_dict(letters, phase=phase)


def pauli_to_subset(
    g: Graph, p: PauliString | Mapping[str, str]
) -> tuple[frozenset[str], int] | None:
    """Invert subset_to_pauli for a phaseless Pauli product.

    Returns (subset, sign) with subset_to_pauli(subset) == sign * p, or None
    when p is proportional to no stabilizer element.  The subset is forced
    letter-by-letter (X and Y imply membership), then consistency is checked.
    """
    letters = p.as_dict() if isinstance(p, PauliString) else dict(p)
    for v in letters:
        g.require_vertex(v)
    subset = frozenset(v for v, l in letters.items() if l in ("X", "Y"))
    phase = 0
    for u in g.vertices:
        delta = 1 if u in subset else 0
        t = sum(1 for w in g.neighbors[u] if w in subset) % 4
        if delta:
            expected = "Y" if t % 2 else "X"
            if t >= 2:
                phase = (phase + 2) % 4
        else:
            expected = "Z" if t % 2 else "I"
        if letters.get(u, "I") != expected:
            return None
    return subset, (1 if phase == 0 else -1)


def expectation(g: Graph, m: PauliString | Mapping[str, str]) -> int:
    """Exact graph-state expectation of a Pauli measurement: -1, 0 or +1."""
    decomposition = pauli_to_subset(g, m)
    if decomposition is None:
        return 0
    return decomposition[1]
