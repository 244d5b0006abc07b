"""Discrete-topology predicates on pictures and pixel curves.

Connectivity vocabulary: two pixels are *4-adjacent* when they differ by one
in exactly one coordinate and *diagonally adjacent* (``D``) when they differ
by one in both; 8-adjacency is either.
"""
from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError

N4 = ((-1, 0), (0, -1), (0, 1), (1, 0))
N8 = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))


class Adjacency(enum.Enum):
    FOUR = "4"
    DIAGONAL = "D"
    NONE = "none"


class SelfIntersection(enum.Enum):
    SIMPLE = "simple"
    SELF_CROSSING = "self-crossing"
    OVERLAPPING = "overlapping"


def chebyshev(p, q):
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def adjacency_kind(p, q):
    if p == q:
        raise InvalidArgumentError(f"adjacency of {p} with itself is undefined")
    dy, dx = abs(p[0] - q[0]), abs(p[1] - q[1])
    if dy + dx == 1:
        return Adjacency.FOUR
    if dy == 1 and dx == 1:
        return Adjacency.DIAGONAL
    return Adjacency.NONE


@dataclass(frozen=True)
class DiscreteCurve:
    """An ordered pixel list whose consecutive entries are 8-adjacent.

    A closed curve is stored without repeating its first point; pass the
    repeated endpoint if convenient and it is dropped.
    """

    points: tuple
    closed: bool = False

    def __post_init__(self):
        pts = tuple((int(y), int(x)) for y, x in self.points)
        if self.closed and len(pts) > 1 and pts[0] == pts[-1]:
            pts = pts[:-1]
        for a, b in zip(pts, pts[1:]):
            if chebyshev(a, b) != 1:
                raise InvalidArgumentError(
                    f"consecutive points {a} and {b} are not 8-adjacent")
        if self.closed and len(pts) > 1 and chebyshev(pts[-1], pts[0]) != 1:
            raise InvalidArgumentError("closed curve endpoints are not 8-adjacent")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def is_injective(self):
        return len(set(self.points)) == len(self.points)

    def reversed(self):
        return DiscreteCurve(self.points[::-1], self.closed)

    def steps(self):
        """Consecutive point pairs, including the closing pair for closed curves."""
        pts = self.points
        pairs = list(zip(pts, pts[1:]))
        if self.closed and len(pts) > 1:
            pairs.append((pts[-1], pts[0]))
        return pairs


def is_connected_picture(img):
    """True when the black set is a single 8-connected component."""
    grid = img.padded
    total = img.black_count()
    if total == 0:
        raise InvalidArgumentError("picture has no black pixels")
    start = img.black_pixels()[0]
    seen = np.zeros(grid.shape, dtype=bool)
    seen[start] = True
    stack = [start]
    reached = 1
    while stack:
        y, x = stack.pop()
        for dy, dx in N8:
            q = (y + dy, x + dx)
            if grid[q] and not seen[q]:
                seen[q] = True
                reached += 1
                stack.append(q)
    return reached == total


def thickness_at(img, p):
    """Side of the largest all-black square that contains ``p``."""
    if not img.is_black(p):
        raise InvalidArgumentError(f"{p} is not a black pixel")
    # summed-area table over the 1-based padded grid
    sat = np.zeros((img.rows + 2, img.cols + 2), dtype=np.int64)
    sat[1:, 1:] = img.padded[1:, 1:].cumsum(0).cumsum(1)

    def full(ty, tx, k):
        by, bx = ty + k - 1, tx + k - 1
        if ty < 1 or tx < 1 or by > img.rows or bx > img.cols:
            return False
        s = sat[by, bx] - sat[ty - 1, bx] - sat[by, tx - 1] + sat[ty - 1, tx - 1]
        return s == k * k

    py, px = p
    k = 1
    while any(full(ty, tx, k + 1)
              for ty in range(py - k, py + 1)
              for tx in range(px - k, px + 1)):
        k += 1
    return k


def _has_square(pixels):
    for y, x in pixels:
        if (y, x + 1) in pixels and (y + 1, x) in pixels and (y + 1, x + 1) in pixels:
            return True
    return False


def is_locally_thin(curve, img=None):
    """Whether every index lies in a thin window of at least four points.

    Thinness is monotone under restriction, so a cover by thin intervals of
    length >= 4 exists exactly when each index is inside some thin window
    of length 4. Closed curves use cyclic windows.
    """
    if not curve.is_injective():
        raise InvalidArgumentError("locally thin is defined for injective curves")
    if img is not None:
        for p in curve:
            if not img.canvas.contains(p):
                raise InvalidArgumentError(f"{p} lies outside the canvas")
    pts = curve.points
    n = len(pts)
    if n < 4:
        return False
    starts = range(n) if curve.closed else range(n - 3)
    covered = [False] * n
    for s in starts:
        window = [(s + k) % n for k in range(4)]
        if not _has_square({pts[i] for i in window}):
            for i in window:
                covered[i] = True
    return all(covered)


def _crossing_pairs(curve):
    pts = curve.points
    n = len(pts)
    if curve.closed:
        return [(i, (i + 1) % n) for i in range(n)] if n > 1 else []
    return [(i, i + 1) for i in range(n - 1)]


def _has_self_crossing(curve):
    pts = curve.points
    pairs = _crossing_pairs(curve)
    by_pixel = defaultdict(list)
    for k, (i, _) in enumerate(pairs):
        by_pixel[pts[i]].append(k)
    for k, (i, j) in enumerate(pairs):
        a, b = pts[i], pts[j]
        candidates = set()
        for dy in (-1, 0, 1):
            for dx in (-1, 0, 1):
                candidates.update(by_pixel.get((a[0] + dy, a[1] + dx), ()))
        for m in candidates:
            if m <= k:
                continue
            i2, j2 = pairs[m]
            if {i, j} & {i2, j2}:
                continue
            c, d = pts[i2], pts[j2]
            if {a, b} == {c, d}:
                continue
            union = list({a, b, c, d})
            if all(chebyshev(u, v) <= 1 for u in union for v in union):
                return True
    return False


def _has_overlapping(curve):
    pts = curve.points
    n = len(pts)
    if curve.closed:
        return n == 2 or len(set(pts)) < n
    first, last = {}, {}
    for i, p in enumerate(pts):
        first.setdefault(p, i)
        last[p] = i
    # shrinking I to [k-1, k] and J to [k, k+1] preserves the inclusion, so
    # those two-point witnesses are enough
    for k in range(1, n - 1):
        if last[pts[k - 1]] >= k or first[pts[k + 1]] <= k:
            return True
    return False


def classify_self_intersection(curve):
    if len(curve) == 0:
        raise InvalidArgumentError("empty curve")
    if _has_self_crossing(curve):
        return SelfIntersection.SELF_CROSSING
    if _has_overlapping(curve):
        return SelfIntersection.OVERLAPPING
    return SelfIntersection.SIMPLE


def detect_spikes(curve):
    """Indices of vertical or horizontal spikes.

    A spike at ``i`` needs the two points on either side to share ``i``'s
    column (vertical) or row (horizontal) with ``i`` a one-sided extremum of
    the other coordinate over that five-point window.
    """
    pts = curve.points
    n = len(pts)
    if n < 5:
        return []
    if curve.closed:
        centres = range(n)
    else:
        centres = range(2, n - 2)
    found = []
    for i in centres:
        y, x = pts[i]
        window = [pts[(i + k) % n] for k in (-2, -1, 1, 2)]
        if all(q[1] == x for q in window):
            ys = [q[0] for q in window]
            if all(v >= y for v in ys) or all(v <= y for v in ys):
                found.append(i)
                continue
        if all(q[0] == y for q in window):
            xs = [q[1] for q in window]
            if all(v >= x for v in xs) or all(v <= x for v in xs):
                found.append(i)
    return found
