"""Substitutive pairs of the 13-tile set, flip sites, the 0 1^a 0 case
analysis, and desk-scale entropy bounds.

A substitutive pair is two different same-size valid patches with
identical border color profiles; swapping one for the other inside any
valid patch preserves validity.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .core import (
    DomainError,
    L0,
    L1,
    L2,
    M13_STATES,
    M2_STATES,
    Patch,
    Tile,
    TileSet,
    border_profile,
    count_patterns,
    find_occurrences,
    validate_patch,
)
from .automata import culik13

log = logging.getLogger(__name__)


def is_substitutive_pair(left: Patch, right: Patch) -> bool:
    """Same dimensions, equal border profiles, different cells, both
    individually violation-free."""
    if left.tileset != right.tileset:
        return False
    if (left.rows, left.cols) != (right.rows, right.cols):
        return False
    if np.array_equal(left.cells, right.cells):
        return False
    if border_profile(left) != border_profile(right):
        return False
    return not validate_patch(left) and not validate_patch(right)


@dataclass(frozen=True)
class SubstitutivePair:
    left: Patch
    right: Patch
    name: str = ""

    def __post_init__(self):
        if not is_substitutive_pair(self.left, self.right):
            raise DomainError(f"patches do not form a substitutive pair ({self.name or '?'})")

    def element(self, orientation: str) -> Patch:
        return self.left if orientation == "left" else self.right

    def partner(self, orientation: str) -> Patch:
        return self.right if orientation == "left" else self.left


@dataclass(frozen=True)
class FlipSite:
    """Occurrence of one element of a substitutive pair, anchored at its
    bottom-left cell."""

    anchor: tuple[int, int]
    pair: SubstitutivePair
    orientation: str  # which element is present: "left" or "right"


_M2 = M2_STATES
_M13 = M13_STATES

# (west, east, south, north) per cell; rows bottom-up, cells left-to-right.
_CATALOG_COLORS = {
    "A1": (
        [
            [(_M2[0], _M2[0], L1, L2), (_M2[0], _M2[1], L1, L1)],
            [(_M13[0], _M13[2], L2, L0), (_M13[2], _M13[0], L1, L1)],
        ],
        [
            [(_M2[0], _M2[1], L1, L1), (_M2[1], _M2[1], L1, L2)],
            [(_M13[0], _M13[1], L1, L0), (_M13[1], _M13[0], L2, L1)],
        ],
    ),
    "A2": (
        [
            [(_M2[0], _M2[0], L1, L2), (_M2[0], _M2[1], L1, L1)],
            [(_M13[2], _M13[1], L2, L1), (_M13[1], _M13[2], L1, L0)],
        ],
        [
            [(_M2[0], _M2[1], L1, L1), (_M2[1], _M2[1], L1, L2)],
            [(_M13[2], _M13[0], L1, L1), (_M13[0], _M13[2], L2, L0)],
        ],
    ),
}


def _patch_from_colors(ts: TileSet, grid) -> Patch:
    ids = [
        [ts.id_of(Tile(north=n, east=e, south=s, west=w)) for (w, e, s, n) in row]
        for row in grid
    ]
    return Patch(ts, ids)


def catalog(ts: TileSet | None = None) -> list[SubstitutivePair]:
    """The two 2x2 substitutive pairs of the 13-tile set (they also exist
    over the 12-tile set).  Raises DomainError if `ts` lacks the tiles."""
    ts = ts if ts is not None else culik13()
    return [
        SubstitutivePair(_patch_from_colors(ts, left), _patch_from_colors(ts, right), name)
        for name, (left, right) in _CATALOG_COLORS.items()
    ]


PAIR_SEARCH_GUARD = 3


def search_pairs(ts: TileSet, k: int, allow_large: bool = False) -> list[SubstitutivePair]:
    """All k x k substitutive pairs over `ts` by complete enumeration of
    locally valid k x k patches; unordered pairs, lexicographically
    smaller patch first, sorted."""
    if k < 1:
        raise DomainError("pair size must be >= 1")
    if k > PAIR_SEARCH_GUARD and not allow_large:
        raise DomainError(
            f"pair search guarded to k <= {PAIR_SEARCH_GUARD}; pass allow_large to override"
        )
    grids = _kernels.valid_squares(k, ts.right_ok, ts.up_ok)
    south = ts.south_codes
    north = ts.north_codes
    west = ts.west_codes
    east = ts.east_codes
    groups: dict[bytes, list[int]] = {}
    for i, g in enumerate(grids):
        key = (
            south[g[0]].tobytes()
            + north[g[-1]].tobytes()
            + west[g[:, 0]].tobytes()
            + east[g[:, -1]].tobytes()
        )
        groups.setdefault(key, []).append(i)
    pairs = []
    for members in groups.values():
        for ai in range(len(members)):
            for bi in range(ai + 1, len(members)):
                ga = grids[members[ai]]
                gb = grids[members[bi]]
                if tuple(ga.ravel()) > tuple(gb.ravel()):
                    ga, gb = gb, ga
                pairs.append(SubstitutivePair(Patch(ts, ga), Patch(ts, gb)))
    pairs.sort(key=lambda pr: (tuple(pr.left.cells.ravel()), tuple(pr.right.cells.ravel())))
    return pairs


def find_flip_sites(p: Patch, pairs: Sequence[SubstitutivePair] | None = None) -> list[FlipSite]:
    """Every occurrence of a catalog element in the violation-free patch
    `p`, in row-major anchor order."""
    if validate_patch(p):
        raise DomainError("patch has violations; flips are defined on valid patches")
    if pairs is None:
        pairs = catalog(p.tileset)
    sites = []
    for pair in pairs:
        for orientation in ("left", "right"):
            for anchor in find_occurrences(p, pair.element(orientation)):
                sites.append(FlipSite(anchor, pair, orientation))
    sites.sort(key=lambda s: (s.anchor, s.pair.name, s.orientation))
    return sites


def apply_flip(p: Patch, site: FlipSite) -> Patch:
    """Replace the element present at `site` by its partner.  Border
    equality makes the result violation-free; applying the same site
    twice is the identity."""
    element = site.pair.element(site.orientation)
    r, c = site.anchor
    er, ec = element.rows, element.cols
    if r + er > p.rows or c + ec > p.cols or not np.array_equal(
        p.cells[r : r + er, c : c + ec], element.cells
    ):
        raise DomainError(f"stale flip site at {site.anchor}: element not present")
    cells = p.cells.copy()
    cells[r : r + er, c : c + ec] = site.pair.partner(site.orientation).cells
    return Patch(p.tileset, cells)


def _select_disjoint(sites: Iterable[FlipSite], rows: int, cols: int) -> list[FlipSite]:
    taken = np.zeros((rows, cols), dtype=bool)
    chosen = []
    for site in sorted(sites, key=lambda s: s.anchor):
        r, c = site.anchor
        er, ec = site.pair.left.rows, site.pair.left.cols
        if not taken[r : r + er, c : c + ec].any():
            taken[r : r + er, c : c + ec] = True
            chosen.append(site)
    return chosen


def disjoint_flip_density(p: Patch) -> tuple[int, float]:
    """Greedy bottom-to-top, left-to-right count of pairwise-disjoint
    flip sites, and that count divided by the patch area."""
    area = p.rows * p.cols
    if area == 0:
        return 0, 0.0
    chosen = _select_disjoint(find_flip_sites(p), p.rows, p.cols)
    return len(chosen), len(chosen) / area


def _runs_with_alpha(values, alpha_min: int) -> list[tuple[int, int]]:
    zeros = [i for i, v in enumerate(values) if v == 0]
    runs = []
    for lead, trail in zip(zeros, zeros[1:]):
        alpha = trail - lead - 1
        if alpha >= alpha_min and all(values[i] == 1 for i in range(lead + 1, trail)):
            runs.append((lead, alpha))
    return runs


def locate_runs(values, alpha_min: int = 4) -> list[int]:
    """Positions of the leading 0 of maximal patterns 0 1^a 0 with
    a >= alpha_min; `values` are letter values (0' counts as 0)."""
    return [pos for pos, _ in _runs_with_alpha(list(values), alpha_min)]


@dataclass(frozen=True)
class CaseViolation:
    """A 0 1^a 0 run with no catalog occurrence in the window above it."""

    row: int
    col: int
    alpha: int


def case_check(p: Patch, alpha_min: int = 4) -> list[CaseViolation]:
    """For every 0 1^a 0 run (a >= alpha_min) on a row's top letter line,
    look for a catalog occurrence anchored in the two rows above, within
    the run's column span widened by 2; report runs where none is found.
    Runs with fewer than 3 rows above them are skipped with a warning.
    """
    if validate_patch(p):
        raise DomainError("case check is defined on violation-free patches")
    pairs = catalog(p.tileset)
    anchors: set[tuple[int, int]] = set()
    for pair in pairs:
        for orientation in ("left", "right"):
            anchors.update(find_occurrences(p, pair.element(orientation)))
    violations = []
    skipped = 0
    for r in range(p.rows):
        line = p.north_letter_values(r)
        runs = _runs_with_alpha(line.tolist(), alpha_min)
        if not runs:
            continue
        if r + 3 >= p.rows:
            skipped += len(runs)
            continue
        for lead, alpha in runs:
            lo = max(0, lead - 2)
            hi = min(p.cols - 2, lead + alpha + 2)
            hit = any(
                (ar, ac) in anchors
                for ar in (r + 1, r + 2)
                for ac in range(lo, hi + 1)
            )
            if not hit:
                violations.append(CaseViolation(r, lead, alpha))
    if skipped:
        log.warning("case_check: skipped %d runs with fewer than 3 rows above", skipped)
    return violations


def _min_disjoint_in_window(sites: list[FlipSite], rows: int, cols: int, n: int) -> int:
    if n < 2 or rows < n or cols < n:
        return 0
    marks = np.zeros((rows, cols), dtype=np.int64)
    for site in sites:
        marks[site.anchor] = 1
    # anchor (r, c) fits an n-window at (wr, wc) iff it lies in the
    # (n-1) x (n-1) block starting there
    win = np.cumsum(np.cumsum(marks, axis=0), axis=1)
    pad = np.zeros((rows + 1, cols + 1), dtype=np.int64)
    pad[1:, 1:] = win
    m = n - 1
    counts = (
        pad[m : rows + 1, m : cols + 1]
        - pad[m : rows + 1, : cols + 1 - m]
        - pad[: rows + 1 - m, m : cols + 1]
        + pad[: rows + 1 - m, : cols + 1 - m]
    )
    counts = counts[: rows - n + 1, : cols - n + 1]
    return int(counts.min())


def entropy_bounds(ts: TileSet, sample: Patch, n: int) -> tuple[float, float]:
    """Lower/upper bounds on log2(pattern count)/n^2.

    Upper: locally admissible count from the transfer method.  Lower:
    the larger of the distinct n x n sub-patches observed in `sample`
    and 2^(disjoint flip sites guaranteed in every n x n window).
    """
    if n < 1:
        raise DomainError("window size must be >= 1")
    if sample.rows < n or sample.cols < n:
        raise DomainError("sample smaller than the requested window")
    if sample.tileset != ts:
        raise DomainError("sample tiled over a different tileset")
    upper_count = count_patterns(ts, n, "transfer", allow_large=True)
    windows = np.lib.stride_tricks.sliding_window_view(sample.cells, (n, n))
    flat = windows.reshape(-1, n * n)
    observed = len(np.unique(flat, axis=0))
    sites = _select_disjoint(find_flip_sites(sample), sample.rows, sample.cols)
    guaranteed = 2 ** _min_disjoint_in_window(sites, sample.rows, sample.cols, n)
    lower = math.log2(max(observed, guaranteed)) / (n * n)
    upper = math.log2(upper_count) / (n * n)
    return lower, upper
