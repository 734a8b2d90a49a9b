"""Pure-Python (numpy) implementations of the grid scan/enumeration
kernels.  Same contracts as the compiled versions in _gridcore.pyx;
selected as a fallback by _kernels.
"""

import numpy as np

IMPLEMENTATION = "python"


def mismatch_scan(cells, east, west, north, south):
    """(horizontal, vertical) mismatch positions of a tile-id grid.

    Horizontal entry (r, c): east(cells[r, c]) != west(cells[r, c+1]);
    vertical entry (r, c): north(cells[r, c]) != south(cells[r+1, c]).
    Both arrays are in row-major order.
    """
    if cells.size == 0 or cells.shape[1] == 0:
        empty = np.empty((0, 2), dtype=np.int64)
        return empty, empty
    h = np.argwhere(east[cells[:, :-1]] != west[cells[:, 1:]])
    v = np.argwhere(north[cells[:-1, :]] != south[cells[1:, :]])
    return h, v


def _square_dfs(n, right_ok, up_ok, collect):
    """Backtracking scan over locally valid n x n id grids, row-major
    from the bottom-left cell.  Returns the count; appends flat grids
    to `collect` when a list is given."""
    size = len(right_ok)
    total = n * n
    grid = [0] * total
    count = 0
    pos = 0
    candidate = 0
    while pos >= 0:
        placed = False
        while candidate < size:
            r, c = divmod(pos, n)
            if c and not right_ok[grid[pos - 1], candidate]:
                candidate += 1
                continue
            if r and not up_ok[grid[pos - n], candidate]:
                candidate += 1
                continue
            grid[pos] = candidate
            placed = True
            break
        if not placed:
            pos -= 1
            candidate = grid[pos] + 1 if pos >= 0 else 0
            continue
        if pos == total - 1:
            count += 1
            if collect is not None:
                collect.append(list(grid))
            candidate = grid[pos] + 1
        else:
            pos += 1
            candidate = 0
    return count


def count_squares(n, right_ok, up_ok):
    """Count locally valid n x n id grids."""
    return _square_dfs(n, right_ok, up_ok, None)


def valid_squares(n, right_ok, up_ok):
    """All locally valid n x n id grids, lexicographic, as an
    (m, n, n) int32 array with axis 1 running bottom-up."""
    grids = []
    _square_dfs(n, right_ok, up_ok, grids)
    out = np.array(grids, dtype=np.int32).reshape(-1, n, n)
    return out


def valid_rows(n, right_ok):
    """All horizontally valid length-n id rows, lexicographic, (m, n) int32."""
    size = len(right_ok)
    rows = []
    row = [0] * n

    def extend(pos):
        if pos == n:
            rows.append(list(row))
            return
        for t in range(size):
            if pos == 0 or right_ok[row[pos - 1], t]:
                row[pos] = t
                extend(pos + 1)

    extend(0)
    return np.array(rows, dtype=np.int32).reshape(-1, n)


def cyclic_rows(n, right_ok):
    """All cyclically valid length-n id rows (rotations distinct),
    lexicographic, (m, n) int32."""
    size = len(right_ok)
    rows = []
    row = [0] * n

    def extend(pos):
        if pos == n:
            if right_ok[row[n - 1], row[0]]:
                rows.append(list(row))
            return
        for t in range(size):
            if pos == 0 or right_ok[row[pos - 1], t]:
                row[pos] = t
                extend(pos + 1)

    extend(0)
    return np.array(rows, dtype=np.int32).reshape(-1, n)


def find_matches(hay, needle):
    """Anchors (r, c) where `needle` occurs in `hay` as an exact id match,
    row-major, (m, 2) int64."""
    nr, nc = needle.shape
    hr, hc = hay.shape
    out_r = hr - nr + 1
    out_c = hc - nc + 1
    if out_r <= 0 or out_c <= 0:
        return np.empty((0, 2), dtype=np.int64)
    hit = np.ones((out_r, out_c), dtype=bool)
    for dr in range(nr):
        for dc in range(nc):
            hit &= hay[dr : dr + out_r, dc : dc + out_c] == needle[dr, dc]
    return np.argwhere(hit)
