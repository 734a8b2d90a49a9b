"""Wang-tile data model: edge colors, tiles, tilesets, patches and the
local validity / counting / matching operations on them.

Rows of a patch are indexed bottom-up: row 0 is the bottom row and
"above" means increasing row index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels


class DomainError(ValueError):
    """Input outside an operation's documented domain."""


class StructuralError(ValueError):
    """Malformed value (e.g. a tile id out of range), as opposed to a
    mere tiling-validity violation."""


LETTER = "letter"
STATE = "state"


@dataclass(frozen=True)
class EdgeColor:
    """One edge color: a letter (horizontal edges) or an automaton state
    (vertical edges).  `value` is the numeric letter value (0' counts as 0)
    or the state index; letters and states never compare equal."""

    kind: str
    token: str
    value: int
    automaton: str | None = None

    def __str__(self) -> str:
        return self.token


L0 = EdgeColor(LETTER, "L0", 0)
L0P = EdgeColor(LETTER, "L0p", 0)
L1 = EdgeColor(LETTER, "L1", 1)
L2 = EdgeColor(LETTER, "L2", 2)
LETTERS = (L0, L0P, L1, L2)

M2_STATES = (EdgeColor(STATE, "M2.0", 0, "M2"), EdgeColor(STATE, "M2.1", 1, "M2"))
M13_STATES = (
    EdgeColor(STATE, "M13.0", 0, "M13"),
    EdgeColor(STATE, "M13.1", 1, "M13"),
    EdgeColor(STATE, "M13.2", 2, "M13"),
)

COLORS = LETTERS + M2_STATES + M13_STATES
COLOR_BY_TOKEN = {c.token: c for c in COLORS}
COLOR_CODE = {c: i for i, c in enumerate(COLORS)}


@dataclass(frozen=True)
class Tile:
    """Unit square with letters on north/south and states on east/west."""

    north: EdgeColor
    east: EdgeColor
    south: EdgeColor
    west: EdgeColor

    def __post_init__(self):
        if self.north.kind != LETTER or self.south.kind != LETTER:
            raise StructuralError("north/south edges must carry letters")
        if self.east.kind != STATE or self.west.kind != STATE:
            raise StructuralError("east/west edges must carry states")
        if self.east.automaton != self.west.automaton:
            raise StructuralError("east and west states must belong to one automaton")

    def __str__(self) -> str:
        return f"[N={self.north} E={self.east} S={self.south} W={self.west}]"


class TileSet:
    """Ordered set of distinct tiles; tile ids are positions (0-based)."""

    def __init__(self, name: str, tiles: Iterable[Tile]):
        self.name = name
        self.tiles = tuple(tiles)
        self._id_of: dict[Tile, int] = {}
        for i, t in enumerate(self.tiles):
            if t in self._id_of:
                raise StructuralError(f"duplicate tile at ids {self._id_of[t]} and {i}")
            self._id_of[t] = i
        self._luts: dict[str, np.ndarray] | None = None

    def __len__(self) -> int:
        return len(self.tiles)

    def __getitem__(self, tile_id: int) -> Tile:
        return self.tiles[tile_id]

    def __iter__(self):
        return iter(self.tiles)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TileSet)
            and self.name == other.name
            and self.tiles == other.tiles
        )

    def __hash__(self) -> int:
        return hash((self.name, self.tiles))

    def __repr__(self) -> str:
        return f"TileSet({self.name!r}, {len(self)} tiles)"

    def id_of(self, tile: Tile) -> int:
        try:
            return self._id_of[tile]
        except KeyError:
            raise DomainError(f"tile {tile} not in tileset {self.name}") from None

    # Integer lookup tables shared by the scan kernels; index is the tile id.
    def _lut(self, which: str) -> np.ndarray:
        if self._luts is None:
            n = np.array([COLOR_CODE[t.north] for t in self.tiles], dtype=np.int32)
            e = np.array([COLOR_CODE[t.east] for t in self.tiles], dtype=np.int32)
            s = np.array([COLOR_CODE[t.south] for t in self.tiles], dtype=np.int32)
            w = np.array([COLOR_CODE[t.west] for t in self.tiles], dtype=np.int32)
            nv = np.array([t.north.value for t in self.tiles], dtype=np.int32)
            sv = np.array([t.south.value for t in self.tiles], dtype=np.int32)
            right = np.ascontiguousarray((e[:, None] == w[None, :]).astype(np.uint8))
            up = np.ascontiguousarray((n[:, None] == s[None, :]).astype(np.uint8))
            self._luts = {
                "north": n, "east": e, "south": s, "west": w,
                "north_value": nv, "south_value": sv,
                "right_ok": right, "up_ok": up,
            }
        return self._luts[which]

    @property
    def north_codes(self) -> np.ndarray:
        return self._lut("north")

    @property
    def east_codes(self) -> np.ndarray:
        return self._lut("east")

    @property
    def south_codes(self) -> np.ndarray:
        return self._lut("south")

    @property
    def west_codes(self) -> np.ndarray:
        return self._lut("west")

    @property
    def north_values(self) -> np.ndarray:
        return self._lut("north_value")

    @property
    def south_values(self) -> np.ndarray:
        return self._lut("south_value")

    @property
    def right_ok(self) -> np.ndarray:
        return self._lut("right_ok")

    @property
    def up_ok(self) -> np.ndarray:
        return self._lut("up_ok")


class Patch:
    """Finite rows x cols grid of tile ids over one tileset.  Cells are
    immutable after construction; row 0 is the bottom row."""

    def __init__(self, tileset: TileSet, cells):
        arr = np.asarray(cells, dtype=np.int32)
        if arr.ndim != 2:
            raise StructuralError(f"patch cells must be 2-D, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= len(tileset)):
            raise StructuralError(
                f"tile id out of range 0..{len(tileset) - 1} in patch cells"
            )
        arr = arr.copy()
        arr.setflags(write=False)
        self.tileset = tileset
        self.cells = arr

    @property
    def rows(self) -> int:
        return self.cells.shape[0]

    @property
    def cols(self) -> int:
        return self.cells.shape[1]

    def tile_at(self, row: int, col: int) -> Tile:
        return self.tileset[int(self.cells[row, col])]

    def subpatch(self, row: int, col: int, rows: int, cols: int) -> "Patch":
        if row < 0 or col < 0 or row + rows > self.rows or col + cols > self.cols:
            raise DomainError("subpatch out of bounds")
        return Patch(self.tileset, self.cells[row : row + rows, col : col + cols])

    def south_letter_values(self, row: int) -> np.ndarray:
        """Letter values (0' counts as 0) along the given row's south edge."""
        return self.tileset.south_values[self.cells[row]]

    def north_letter_values(self, row: int) -> np.ndarray:
        return self.tileset.north_values[self.cells[row]]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Patch)
            and self.tileset == other.tileset
            and self.cells.shape == other.cells.shape
            and bool(np.array_equal(self.cells, other.cells))
        )

    def __hash__(self) -> int:
        return hash((self.tileset, self.cells.shape, self.cells.tobytes()))

    def __repr__(self) -> str:
        return f"Patch({self.rows}x{self.cols} over {self.tileset.name})"


@dataclass(frozen=True)
class Violation:
    """One mismatching shared edge between two adjacent cells.

    kind "h": `a` is left of `b` and east(a) != west(b);
    kind "v": `a` is below `b` and north(a) != south(b).
    Positions are (row, col) with row 0 at the bottom.
    """

    kind: str
    a: tuple[int, int]
    b: tuple[int, int]
    colors: tuple[EdgeColor, EdgeColor]

    def __str__(self) -> str:
        side = ("E", "W") if self.kind == "h" else ("N", "S")
        return (
            f"{self.kind} {self.a}-{self.b}: "
            f"{side[0]}={self.colors[0]} vs {side[1]}={self.colors[1]}"
        )


def validate_patch(p: Patch) -> list[Violation]:
    """All mismatching adjacent edges of `p`, in row-major scan order
    (per cell: the east edge first, then the north edge)."""
    ts = p.tileset
    if p.cells.size and (p.cells.min() < 0 or p.cells.max() >= len(ts)):
        raise StructuralError("tile id out of range")
    h, v = _kernels.mismatch_scan(
        p.cells, ts.east_codes, ts.west_codes, ts.north_codes, ts.south_codes
    )
    found = []
    for r, c in h:
        r, c = int(r), int(c)
        found.append(
            Violation("h", (r, c), (r, c + 1), (p.tile_at(r, c).east, p.tile_at(r, c + 1).west))
        )
    for r, c in v:
        r, c = int(r), int(c)
        found.append(
            Violation("v", (r, c), (r + 1, c), (p.tile_at(r, c).north, p.tile_at(r + 1, c).south))
        )
    found.sort(key=lambda viol: (viol.a[0], viol.a[1], viol.kind != "h"))
    return found


NAIVE_GUARD = 4


def count_patterns(ts: TileSet, n: int, method: str = "transfer", allow_large: bool = False) -> int:
    """Number of locally valid n x n patches over `ts` (an upper bound for
    the number of patterns occurring in infinite tilings).

    method "naive" enumerates cell by cell with pruning (guarded to
    n <= 4 unless allow_large); "transfer" enumerates valid single rows
    and counts length-n paths of the row-compatibility relation.
    """
    if n < 1:
        raise DomainError("pattern size must be >= 1")
    if method == "naive":
        if n > NAIVE_GUARD and not allow_large:
            raise DomainError(
                f"naive counting guarded to n <= {NAIVE_GUARD}; pass allow_large to override"
            )
        return _kernels.count_squares(n, ts.right_ok, ts.up_ok)
    if method != "transfer":
        raise DomainError(f"unknown counting method {method!r}")
    rows = _kernels.valid_rows(n, ts.right_ok)
    if len(rows) == 0:
        return 0
    south = ts.south_codes
    north = ts.north_codes
    by_south: dict[bytes, list[int]] = {}
    for i, row in enumerate(rows):
        by_south.setdefault(south[row].tobytes(), []).append(i)
    successors = [by_south.get(north[row].tobytes(), ()) for row in rows]
    counts = [1] * len(rows)  # stacks of height 1 ending at each row
    for _ in range(n - 1):
        nxt = [0] * len(rows)
        for i, cnt in enumerate(counts):
            if cnt:
                for j in successors[i]:
                    nxt[j] += cnt
        counts = nxt
    return sum(counts)


def find_occurrences(hay: Patch, needle: Patch) -> list[tuple[int, int]]:
    """Bottom-left anchors of exact (tile-id) occurrences of `needle` in
    `hay`; overlaps allowed; row-major order."""
    if hay.tileset != needle.tileset:
        raise DomainError("hay and needle must reference the same tileset")
    if needle.rows > hay.rows or needle.cols > hay.cols:
        raise DomainError("needle larger than hay")
    if needle.cells.size == 0:
        raise DomainError("empty needle")
    anchors = _kernels.find_matches(hay.cells, needle.cells)
    return [(int(r), int(c)) for r, c in anchors]


def border_profile(p: Patch):
    """(south letters, north letters, west states, east states) of `p`,
    read left-to-right resp. bottom-to-top.  Two patches are border-equal
    iff the four components are equal."""
    south = tuple(p.tile_at(0, c).south for c in range(p.cols)) if p.rows else ()
    north = tuple(p.tile_at(p.rows - 1, c).north for c in range(p.cols)) if p.rows else ()
    west = tuple(p.tile_at(r, 0).west for r in range(p.rows)) if p.cols else ()
    east = tuple(p.tile_at(r, p.cols - 1).east for r in range(p.rows)) if p.cols else ()
    return south, north, west, east
