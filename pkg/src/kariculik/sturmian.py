"""Exact Beatty/Sturmian words, orbits of the x -> 2x / x/3 map on
[1/3, 2], the conjugate circle rotation, and certified tiling synthesis.

All slopes and orbit values are exact rationals; Beatty letters and
automaton states come from arbitrary-precision integer floors, never
from floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .automata import culik13, kari12
from .core import DomainError, L0P, Patch, TileSet

Rational = Fraction

DOUBLE = "double"
THIRD = "third"

_LOW = Fraction(1, 3)
_HIGH = Fraction(2)


@dataclass(frozen=True)
class Orbit:
    """values[i+1] = 2*values[i] (double) or values[i]/3 (third); every
    value stays in [1/3, 2]."""

    values: tuple[Fraction, ...]
    steps: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.values)


def step_kind(x: Fraction) -> str:
    """Canonical branch choice: double iff x < 1 (x = 1 takes third)."""
    return DOUBLE if x < 1 else THIRD


def apply_step(x: Fraction, kind: str) -> Fraction:
    return 2 * x if kind == DOUBLE else x / 3


def orbit(x0, n: int, steps: Sequence[str] | None = None) -> Orbit:
    """Length-(n+1) orbit of x0 under the canonical policy, or under an
    explicit step list (validated against the [1/3, 2] invariant)."""
    x = Fraction(x0)
    if not _LOW <= x <= _HIGH:
        raise DomainError(f"orbit seed {x} outside [1/3, 2]")
    if n < 0:
        raise DomainError("orbit length must be >= 0")
    if steps is not None:
        steps = tuple(steps)
        if len(steps) != n:
            raise DomainError(f"expected {n} steps, got {len(steps)}")
    values = [x]
    taken = []
    for i in range(n):
        kind = steps[i] if steps is not None else step_kind(x)
        if kind == DOUBLE:
            if x > 1:
                raise DomainError(f"step {i}: double at {x} leaves [1/3, 2]")
        elif kind == THIRD:
            if x < 1:
                raise DomainError(f"step {i}: third at {x} leaves [1/3, 2]")
        else:
            raise DomainError(f"step {i}: unknown step kind {kind!r}")
        x = apply_step(x, kind)
        values.append(x)
        taken.append(kind)
    return Orbit(tuple(values), tuple(taken))


def beatty_word(x, k0: int, length: int) -> list[int]:
    """Letter values B_x(k) = floor(x(k+1)) - floor(xk) for
    k = k0 .. k0+length-1, computed with exact integer floors."""
    x = Fraction(x)
    if x < 0:
        raise DomainError("Beatty slope must be >= 0")
    if length < 0:
        raise DomainError("length must be >= 0")
    p, q = x.numerator, x.denominator
    m = (p * k0) % q
    out = []
    for _ in range(length):
        letter, m = divmod(m + p, q)
        out.append(letter)
    return out


def row_states(x, op: str, k0: int, length: int) -> list[int]:
    """Closed-form automaton states along a row of slope x.

    double (x in [1/3, 1], reading (B_x, B_2x)):
        q_k = 1 + 2*floor(xk) - floor(2xk), in {0, 1};
    third (x in [1, 2], reading (B_x, B_{x/3})):
        s_k = floor(xk) - 3*floor(xk/3), in {0, 1, 2}.
    """
    x = Fraction(x)
    if op == DOUBLE:
        if not _LOW <= x <= 1:
            raise DomainError(f"double rows need slope in [1/3, 1], got {x}")
    elif op == THIRD:
        if not 1 <= x <= _HIGH:
            raise DomainError(f"third rows need slope in [1, 2], got {x}")
    else:
        raise DomainError(f"unknown row operation {op!r}")
    if length < 0:
        raise DomainError("length must be >= 0")
    p, q = x.numerator, x.denominator
    floor0, m = divmod(p * k0, q)
    out = []
    floor_k = floor0
    for _ in range(length):
        if op == DOUBLE:
            out.append(1 - (2 * m >= q))
        else:
            out.append(floor_k % 3)
        letter, m = divmod(m + p, q)
        floor_k += letter
    return out


@lru_cache(maxsize=8)
def _double_lut(ts: TileSet) -> np.ndarray:
    """[q, a, b, south_is_primed] -> tile id for doubling rows (-1: no tile)."""
    lut = np.full((2, 2, 3, 2), -1, dtype=np.int32)
    for i, t in enumerate(ts.tiles):
        if t.west.automaton != "M2":
            continue
        q, a, b = t.west.value, t.south.value, t.north.value
        primed = (1,) if t.south == L0P else ((0,) if a == 0 else (0, 1))
        for sp in primed:
            lut[q, a, b, sp] = i
    return lut


@lru_cache(maxsize=8)
def _third_lut(ts: TileSet) -> np.ndarray:
    """[s, a-1, b] -> tile id for dividing rows (-1: no tile)."""
    lut = np.full((3, 2, 2), -1, dtype=np.int32)
    for i, t in enumerate(ts.tiles):
        if t.west.automaton != "M13":
            continue
        lut[t.west.value, t.south.value - 1, t.north.value] = i
    return lut


def _resolve_tileset(ts) -> tuple[TileSet, bool]:
    if isinstance(ts, str):
        if ts == "kari12":
            return kari12(), False
        if ts == "culik13":
            return culik13(), True
    elif isinstance(ts, TileSet):
        if ts == kari12():
            return kari12(), False
        if ts == culik13():
            return culik13(), True
    raise DomainError("synthesis targets the kari12 or culik13 tileset")


def synthesize(o: Orbit, cols: int, k0: int = 0, tileset="kari12") -> Patch:
    """Tiling patch with one row per orbit value: row i carries the
    Sturmian word of values[i] on the bottom and of values[i+1] on top,
    with states from the closed forms.  The final row's branch is chosen
    canonically when the orbit has no step for it.

    Over culik13, letters of value 0 written by a doubling row become 0'
    (so 0' appears exactly on horizontal edges between two doubling
    rows), which is forced: the doubling automaton with 0' never writes
    a plain 0.
    """
    if cols < 0:
        raise DomainError("cols must be >= 0")
    ts, is_culik = _resolve_tileset(tileset)
    lut_d = _double_lut(ts)
    lut_t = _third_lut(ts)
    grid = np.empty((len(o.values), cols), dtype=np.int32)
    below_double = False
    for i, x in enumerate(o.values):
        kind = o.steps[i] if i < len(o.steps) else step_kind(x)
        a = np.array(beatty_word(x, k0, cols), dtype=np.int32)
        b = np.array(beatty_word(apply_step(x, kind), k0, cols), dtype=np.int32)
        q = np.array(row_states(x, kind, k0, cols + 1), dtype=np.int32)
        if kind == DOUBLE:
            primed = ((a == 0) & below_double & is_culik).astype(np.int32)
            ids = lut_d[q[:-1], a, b, primed]
        else:
            ids = lut_t[q[:-1], a - 1, b]
        if ids.size and ids.min() < 0:
            raise AssertionError(f"no tile for row {i}; synthesis invariant broken")
        grid[i] = ids
        below_double = kind == DOUBLE
    return Patch(ts, grid)


_LOG3 = math.log(3)
_LOG6 = math.log(6)


def phi(x) -> float:
    """Conjugacy map [1/3, 2] -> unit circle: (log x + log 3)/log 6 mod 1."""
    if isinstance(x, Fraction):
        if x <= 0:
            raise DomainError("phi needs x > 0")
        lg = math.log(x.numerator) - math.log(x.denominator)
    else:
        if x <= 0:
            raise DomainError("phi needs x > 0")
        lg = math.log(x)
    return ((lg + _LOG3) / _LOG6) % 1.0


def rho() -> float:
    """Rotation angle log 2 / log 6 of the conjugate circle rotation."""
    return math.log(2) / _LOG6


def return_time_bound(a: float, alpha: float, cap: int = 10**6) -> int:
    """Upper bound on iterations of the interval map between two visits
    to a width-alpha interval: find the smallest N >= 1 whose rotation
    offset beta = frac(N*rho) lands in (0, alpha/2), return N*ceil(1/beta).
    The anchor `a` only positions the interval; the offset is independent
    of it."""
    if not 0 < alpha <= 1:
        raise DomainError("interval width must be in (0, 1]")
    r = rho()
    for n in range(1, cap + 1):
        beta = (n * r) % 1.0
        if 0.0 < beta < alpha / 2:
            return n * math.ceil(1 / beta)
    raise DomainError(f"no return found within {cap} iterations")
