"""Finite-state transducers multiplying line averages by 2 or 1/3, their
translation to Wang tiles, and the 12- and 13-tile sets they generate.

A transducer reads letter pairs (a, b) with a on the bottom edge and b
on the top edge.  Transition arrows follow the automaton pictures:
M2 satisfies to = from + 2a - b, M13 satisfies to = from + a - 3b
(letter 0' has numeric value 0 everywhere).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .core import (
    DomainError,
    EdgeColor,
    L0,
    L0P,
    L1,
    L2,
    LETTER,
    M13_STATES,
    M2_STATES,
    StructuralError,
    Tile,
    TileSet,
)


@dataclass(frozen=True)
class Transition:
    """source --(input, output)--> target, input read on the bottom edge."""

    source: int
    input: EdgeColor
    output: EdgeColor
    target: int


@dataclass(frozen=True)
class Transducer:
    automaton: str  # vertical color family, "M2" or "M13"
    state_count: int
    transitions: tuple[Transition, ...]
    bottom_alphabet: frozenset[EdgeColor]
    top_alphabet: frozenset[EdgeColor]

    def __post_init__(self):
        seen = set()
        for t in self.transitions:
            if not (0 <= t.source < self.state_count and 0 <= t.target < self.state_count):
                raise StructuralError(f"state out of range in {t}")
            if t.input.kind != LETTER or t.output.kind != LETTER:
                raise StructuralError("transducer letters must be Letter colors")
            if t.input not in self.bottom_alphabet or t.output not in self.top_alphabet:
                raise StructuralError(f"letters of {t} outside the declared alphabets")
            if t in seen:
                raise StructuralError(f"duplicate transition {t}")
            seen.add(t)

    @property
    def states(self) -> Sequence[EdgeColor]:
        return M2_STATES if self.automaton == "M2" else M13_STATES


def balance_defect(tr: Transition, automaton: str) -> int:
    """Deviation of a transition from its automaton's state-update rule:
    to - from - (2a - b) for M2, to - from - (a - 3b) for M13 (multiples
    of 3 are allowed there, states being thirds)."""
    a, b = tr.input.value, tr.output.value
    if automaton == "M2":
        return tr.target - tr.source - (2 * a - b)
    return tr.target - tr.source - (a - 3 * b)


def is_balanced(t: Transducer) -> bool:
    allowed = {0} if t.automaton == "M2" else {0, 3, -3}
    return all(balance_defect(tr, t.automaton) in allowed for tr in t.transitions)


def build_m2() -> Transducer:
    """Doubling automaton: 2 states, 6 transitions; accepts (B_x, B_2x)."""
    trans = (
        Transition(0, L0, L0, 0),
        Transition(1, L0, L0, 1),
        Transition(0, L1, L2, 0),
        Transition(1, L1, L2, 1),
        Transition(0, L1, L1, 1),
        Transition(1, L0, L1, 0),
    )
    return Transducer("M2", 2, trans, frozenset({L0, L1}), frozenset({L0, L1, L2}))


def build_m13() -> Transducer:
    """Dividing-by-3 automaton: 3 states (thirds), 6 transitions; accepts
    (B_x, B_{x/3}) for slopes x in [1, 2]."""
    trans = (
        Transition(0, L1, L0, 1),
        Transition(1, L1, L0, 2),
        Transition(2, L1, L1, 0),
        Transition(1, L2, L1, 0),
        Transition(2, L2, L1, 1),
        Transition(0, L2, L0, 2),
    )
    return Transducer("M13", 3, trans, frozenset({L1, L2}), frozenset({L0, L1}))


def build_culik_m2() -> Transducer:
    """Doubling automaton with the extra letter 0': above a 0 there is
    0' or 1, above a 0' always a 1.  2 states, 7 transitions."""
    trans = (
        Transition(0, L0, L0P, 0),
        Transition(1, L0, L0P, 1),
        Transition(0, L1, L2, 0),
        Transition(1, L1, L2, 1),
        Transition(0, L1, L1, 1),
        Transition(1, L0P, L1, 0),
        Transition(1, L0, L1, 0),
    )
    return Transducer("M2", 2, trans, frozenset({L0, L0P, L1}), frozenset({L0P, L1, L2}))


def transducer_to_tiles(t: Transducer) -> list[Tile]:
    """One tile per transition: west=source, east=target, south=input,
    north=output."""
    states = t.states
    return [
        Tile(north=tr.output, east=states[tr.target], south=tr.input, west=states[tr.source])
        for tr in t.transitions
    ]


def tile_to_transition(tile: Tile) -> Transition:
    """Read a tile back as a transition of its vertical-color automaton."""
    return Transition(tile.west.value, tile.south, tile.north, tile.east.value)


@lru_cache(maxsize=None)
def kari12() -> TileSet:
    """The 12-tile aperiodic-candidate set (doubling + dividing automata).
    It admits the identically-null periodic tiling."""
    return TileSet("kari12", transducer_to_tiles(build_m2()) + transducer_to_tiles(build_m13()))


@lru_cache(maxsize=None)
def culik13() -> TileSet:
    """The 13-tile aperiodic set: doubling automaton with 0' plus the
    dividing automaton."""
    return TileSet(
        "culik13", transducer_to_tiles(build_culik_m2()) + transducer_to_tiles(build_m13())
    )


BUILTIN_TILESETS = {"kari12": kari12, "culik13": culik13}


def verify_run(
    t: Transducer, bottom: Sequence[EdgeColor], top: Sequence[EdgeColor]
) -> set[tuple[int, ...]]:
    """All state sequences q_0..q_n realizing (bottom, top) as a run of
    `t`, starting anywhere; empty set means rejection.  Finite-window
    semantics: no wraparound."""
    if len(bottom) != len(top):
        raise DomainError(f"length mismatch: {len(bottom)} bottom vs {len(top)} top letters")
    step: dict[tuple[int, EdgeColor, EdgeColor], list[int]] = {}
    for tr in t.transitions:
        step.setdefault((tr.source, tr.input, tr.output), []).append(tr.target)
    runs = [(q,) for q in range(t.state_count)]
    for a, b in zip(bottom, top):
        runs = [run + (q,) for run in runs for q in step.get((run[-1], a, b), ())]
        if not runs:
            break
    return set(runs)
