"""Cylindricity: rings (cyclically valid rows) of a width-n cylinder,
the ring-stacking graph, and the torus / longest-stack search.

A cycle in the stacking graph yields a torus, i.e. a periodic tiling of
the plane; an acyclic graph bounds the tileable cylinder height, which
is evidence (not proof) of aperiodicity.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import DomainError, Patch, TileSet, Violation, validate_patch

RING_GUARD = 6


@dataclass(frozen=True)
class Ring:
    """Cyclically valid row of tiles: east(tile_i) = west(tile_{i+1 mod n})."""

    width: int
    tiles: tuple[int, ...]


def enumerate_rings(ts: TileSet, n: int, allow_large: bool = False) -> list[Ring]:
    """All width-n rings over `ts`, lexicographic; rotations of a ring
    are distinct rings."""
    if n < 1:
        raise DomainError("ring width must be >= 1")
    if n > RING_GUARD and not allow_large:
        raise DomainError(
            f"ring enumeration guarded to n <= {RING_GUARD}; pass allow_large to override"
        )
    rows = _kernels.cyclic_rows(n, ts.right_ok)
    return [Ring(n, tuple(int(t) for t in row)) for row in rows]


@dataclass(frozen=True)
class CylindricityResult:
    """Either a torus witness (infinite) or the maximal stack height
    with a witness stack of rings, bottom-up."""

    infinite: bool
    height: int | None
    witness: tuple[Ring, ...]

    def __str__(self) -> str:
        if self.infinite:
            return f"INFINITE (torus of {len(self.witness)} ring(s))"
        return f"{self.height}"


def _stack_graph(ts: TileSet, rings: list[Ring]) -> list[list[int]]:
    north = ts.north_codes
    south = ts.south_codes
    by_south: dict[bytes, list[int]] = {}
    for j, ring in enumerate(rings):
        key = south[np.array(ring.tiles, dtype=np.int32)].tobytes()
        by_south.setdefault(key, []).append(j)
    succ = []
    for ring in rings:
        key = north[np.array(ring.tiles, dtype=np.int32)].tobytes()
        succ.append(by_south.get(key, []))
    return succ


def _shortest_cycle(succ: list[list[int]]) -> list[int] | None:
    """Node sequence of a shortest directed cycle, or None if acyclic."""
    best: list[int] | None = None
    for start in range(len(succ)):
        parent = {start: -1}
        queue = deque([start])
        found = None
        while queue:
            u = queue.popleft()
            if best is not None and len(best) <= _depth(parent, u) + 1:
                continue
            for v in succ[u]:
                if v == start:
                    found = u
                    queue.clear()
                    break
                if v not in parent:
                    parent[v] = u
                    queue.append(v)
        if found is not None:
            cycle = [found]
            while cycle[-1] != start:
                cycle.append(parent[cycle[-1]])
            cycle.reverse()
            if best is None or len(cycle) < len(best):
                best = cycle
    return best


def _depth(parent: dict[int, int], u: int) -> int:
    d = 0
    while parent[u] != -1:
        u = parent[u]
        d += 1
    return d


def _longest_path(succ: list[list[int]]) -> list[int]:
    """Longest node path in a DAG (graph must be acyclic)."""
    n = len(succ)
    indeg = [0] * n
    for u in range(n):
        for v in succ[u]:
            indeg[v] += 1
    order = deque(u for u in range(n) if indeg[u] == 0)
    topo = []
    while order:
        u = order.popleft()
        topo.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                order.append(v)
    assert len(topo) == n, "graph has a cycle"
    length = [1] * n
    prev = [-1] * n
    for u in topo:
        for v in succ[u]:
            if length[u] + 1 > length[v]:
                length[v] = length[u] + 1
                prev[v] = u
    end = max(range(n), key=lambda u: (length[u], -u))
    path = [end]
    while prev[path[-1]] != -1:
        path.append(prev[path[-1]])
    path.reverse()
    return path


def cylindricity(ts: TileSet, n: int, allow_large: bool = False) -> CylindricityResult:
    """Maximal height of a tileable width-n cylinder portion, or a torus
    witness when some ring stack closes into a cycle."""
    rings = enumerate_rings(ts, n, allow_large)
    if not rings:
        return CylindricityResult(False, 0, ())
    succ = _stack_graph(ts, rings)
    cycle = _shortest_cycle(succ)
    if cycle is not None:
        return CylindricityResult(True, None, tuple(rings[i] for i in cycle))
    path = _longest_path(succ)
    return CylindricityResult(False, len(path), tuple(rings[i] for i in path))


def witness_patch(ts: TileSet, rings, repeats: int = 1) -> Patch:
    """Materialize a ring stack as a patch (rows bottom-up)."""
    rows = [ring.tiles for ring in rings] * repeats
    if not rows:
        raise DomainError("empty ring stack")
    return Patch(ts, rows)


def torus_violations(p: Patch) -> list[Violation]:
    """Flat violations plus the wraparound checks: east of the last
    column against west of the first, north of the top row against south
    of the bottom row."""
    found = list(validate_patch(p))
    for r in range(p.rows):
        left = p.tile_at(r, p.cols - 1)
        right = p.tile_at(r, 0)
        if left.east != right.west:
            found.append(Violation("h", (r, p.cols - 1), (r, 0), (left.east, right.west)))
    for c in range(p.cols):
        lower = p.tile_at(p.rows - 1, c)
        upper = p.tile_at(0, c)
        if lower.north != upper.south:
            found.append(Violation("v", (p.rows - 1, c), (0, c), (lower.north, upper.south)))
    return found
