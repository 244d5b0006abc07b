"""Connectivity and thickness reduction: replace a picture by its Lego curve.

The Lego curve of a connected picture is a closed 4-connected pixel loop
that hugs the picture from outside. It uses black pixels where it can and
borrows white L-pixels where two black pixels touch only diagonally. Once
spikes are lopped off, the curve can be filled row by row without the
ambiguities that thick or self-touching pictures cause.

The trace is a crack-following walk along pixel edges with black on the
left. Vertices are pixel corners: vertex ``(vy, vx)`` is the top-left corner
of pixel ``(vy, vx)``. Headings are 0=E, 1=S, 2=W, 3=N.
"""
from __future__ import annotations

import warnings as _warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DegenerateInputError, PreconditionError
from .raster import Cell, LocatingMatrix
from .scanfill import fill_curve
from .steps import _tick
from .topology import is_connected_picture

_HEADINGS = ((0, 1), (1, 0), (0, -1), (-1, 0))
_N4 = ((-1, 0), (1, 0), (0, -1), (0, 1))


@dataclass(frozen=True)
class Corner:
    """A right turn of the walk, where black pixels meet only diagonally.

    ``index`` is the position of the inserted white pixel in the raw walk,
    ``inserted`` that pixel (behind-right of the vertex) and ``alternative``
    the pixel on the other side of the diagonal (ahead-left).
    """

    index: int
    inserted: tuple
    alternative: tuple


@dataclass(frozen=True, eq=False)
class LegoCurve:
    points: tuple
    lpixels: frozenset
    source: object
    corners: tuple = ()
    exterior_border: frozenset = frozenset()
    warnings: tuple = field(default=())

    def __len__(self):
        return len(self.points)


@dataclass
class TraceState:
    """Cursor of the walk: heading (rotation count mod 4), vertex and step index."""

    orientation: int
    vertex: tuple
    start_pixel: tuple
    cursor: int = 0

    def cells(self):
        """Pixels behind-left, behind-right, ahead-left and ahead-right of the vertex."""
        vy, vx = self.vertex
        # offsets of the four pixels around a vertex, per heading
        return _AROUND[self.orientation](vy, vx)


_AROUND = (
    lambda vy, vx: ((vy - 1, vx - 1), (vy, vx - 1), (vy - 1, vx), (vy, vx)),   # E
    lambda vy, vx: ((vy - 1, vx), (vy - 1, vx - 1), (vy, vx), (vy, vx - 1)),   # S
    lambda vy, vx: ((vy, vx), (vy - 1, vx), (vy, vx - 1), (vy - 1, vx - 1)),   # W
    lambda vy, vx: ((vy, vx - 1), (vy, vx), (vy - 1, vx - 1), (vy - 1, vx)),   # N
)


def _check_picture(img):
    if not img.border_is_white():
        raise PreconditionError("image must have a white frame; call ensure_frame first")
    count = img.black_count()
    if count == 0:
        raise DegenerateInputError("the picture is empty")
    if count == 1:
        raise DegenerateInputError("the picture consists of a single pixel")
    if not is_connected_picture(img):
        raise PreconditionError("the picture is not 8-connected")


def _walk(img, steps=None):
    """Raw walk: ``(points, corners, border)`` before deduplication."""
    grid = img.padded
    start = img.black_pixels()[0]
    state = TraceState(orientation=1, vertex=start, start_pixel=start)
    home = (state.vertex, state.orientation)
    points = [start]
    corners = []
    border = set()
    while True:
        dy, dx = _HEADINGS[state.orientation]
        state.vertex = (state.vertex[0] + dy, state.vertex[1] + dx)
        state.cursor += 1
        bl, br, al, ar = state.cells()
        border.add(br)
        if grid[ar]:
            corners.append(Corner(len(points), br, al))
            points.append(br)
            points.append(ar)
            state.orientation = (state.orientation + 1) % 4
        elif grid[al]:
            points.append(al)
        else:
            state.orientation = (state.orientation - 1) % 4
        if (state.vertex, state.orientation) == home:
            break
    _tick(steps, state.cursor)
    return points, corners, border


def _dedupe(points):
    out = []
    for p in points:
        if not out or out[-1] != p:
            out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def _lpixels(points, img, border):
    grid = img.padded
    return frozenset(p for p in points if not grid[p] and p in border)


def trace_lego_curve(img, steps=None):
    """Trace the closed 4-connected curve around a framed, 8-connected picture.

    Starts at the topmost, then leftmost, black pixel. White pixels are
    inserted wherever two black pixels touch only at a corner; the inserted
    pixels that border the exterior are the curve's L-pixels. Spikes are
    left in place (see :func:`prune_spikes`).

    Raises
    ------
    PreconditionError
        Unframed or disconnected picture.
    DegenerateInputError
        Empty or single-pixel picture.
    """
    _check_picture(img)
    raw, corners, border = _walk(img, steps)
    points = _dedupe(raw)
    border = frozenset(border)
    return LegoCurve(tuple(points), _lpixels(points, img, border), img,
                     tuple(corners), border)


def _outside(points, shape, steps=None):
    """Pixels reachable from the frame without crossing ``points``, by span filling."""
    rows, cols = shape
    wall = np.zeros((rows + 2, cols + 2), dtype=bool)
    for p in points:
        wall[p] = True
    wall[0, :] = wall[-1, :] = wall[:, 0] = wall[:, -1] = True
    seen = wall.copy()
    out = np.zeros_like(wall)
    seeds = [(y, x) for y in range(1, rows + 1) for x in (1, cols)]
    seeds += [(y, x) for x in range(1, cols + 1) for y in (1, rows)]
    _tick(steps, rows * cols)
    while seeds:
        y, x = seeds.pop()
        if seen[y, x]:
            continue
        lo = x
        while not seen[y, lo - 1]:
            lo -= 1
        hi = x
        while not seen[y, hi + 1]:
            hi += 1
        seen[y, lo:hi + 1] = True
        out[y, lo:hi + 1] = True
        for ny in (y - 1, y + 1):
            span = ~seen[ny, lo:hi + 1]
            # push the first pixel of each unseen stretch above and below
            starts = np.nonzero(span & ~np.concatenate(([False], span[:-1])))[0]
            seeds.extend((ny, lo + int(s)) for s in starts)
    return out[1:-1, 1:-1], wall[1:-1, 1:-1]


def _trapped(points, curve, choice, steps=None):
    """White pockets cut off from the frame next to an inserted pixel."""
    shape = curve.source.canvas.shape
    outside, on_curve = _outside(points, shape, steps)
    cut_off = ~outside & ~on_curve
    seeds = []
    for k, corner in enumerate(curve.corners):
        if choice[k] != corner.inserted:
            continue
        y, x = corner.inserted
        for dy, dx in _N4:
            q = (y + dy - 1, x + dx - 1)
            if 0 <= q[0] < shape[0] and 0 <= q[1] < shape[1] and cut_off[q]:
                seeds.append(q)
    trapped = np.zeros(shape, dtype=bool)
    while seeds:
        y, x = seeds.pop()
        if trapped[y, x]:
            continue
        trapped[y, x] = True
        for dy, dx in _N4:
            ny, nx = y + dy, x + dx
            if 0 <= ny < shape[0] and 0 <= nx < shape[1] and cut_off[ny, nx] \
                    and not trapped[ny, nx]:
                seeds.append((ny, nx))
    return trapped


def repair_trapped_lpixels(curve, img=None, steps=None, max_rounds=32):
    """Reroute corners whose inserted pixel seals off part of the exterior.

    An inserted pixel can close a narrow gap and cut a white pocket off from
    the frame even though the pocket belongs to the exterior. Each such
    corner is switched to the pixel on the other side of the diagonal, which
    keeps the curve 4-connected and reopens the pocket. Rounds repeat until
    nothing is trapped; a curve that still traps pixels afterwards carries a
    warning.
    """
    if img is not None and img is not curve.source and img != curve.source:
        raise PreconditionError("curve was traced from a different image")
    if not curve.corners:
        return curve
    raw = _walk(curve.source)[0]
    choice = [c.inserted for c in curve.corners]
    points = list(curve.points)
    rerouted = False
    for _ in range(max_rounds):
        trapped = _trapped(points, curve, choice, steps)
        if not trapped.any():
            break
        changed = False
        for k, corner in enumerate(curve.corners):
            y, x = corner.inserted
            if choice[k] == corner.inserted \
                    and any(trapped[y + dy - 1, x + dx - 1] for dy, dx in _N4):
                choice[k] = corner.alternative
                raw[corner.index] = corner.alternative
                changed = True
        if not changed:
            break
        rerouted = True
        points = _dedupe(raw)
    notes = curve.warnings
    if trapped.any():
        msg = "some exterior pixels remain sealed off by the curve"
        _warnings.warn(msg, RuntimeWarning, stacklevel=2)
        notes = notes + (msg,)
    if not rerouted:
        return replace(curve, warnings=notes)
    return replace(curve, points=tuple(points),
                   lpixels=_lpixels(points, curve.source, curve.exterior_border),
                   warnings=notes)


def _reduce(points):
    """Cancel every immediate reversal ``a, b, a`` (cyclically) down to ``a``."""
    stack = []
    for p in points:
        if len(stack) >= 2 and stack[-2] == p:
            stack.pop()
        elif not stack or stack[-1] != p:
            stack.append(p)
    while len(stack) > 2:
        if stack[-1] == stack[1]:
            # ..., a | b, a, ...  ->  drop the trailing a and the leading b
            stack.pop()
            stack.pop(0)
        elif stack[-2] == stack[0]:
            stack.pop()
            stack.pop()
        else:
            break
    while len(stack) > 1 and stack[0] == stack[-1]:
        stack.pop()
    return stack


def prune_spikes(curve):
    """Lop off out-and-back excursions until no spike is left.

    On a 4-connected curve every spike apex is preceded and followed by the
    same pixel, so cancelling all such reversals leaves a spike-free curve.

    Raises
    ------
    DegenerateInputError
        When fewer than three points survive (bare segments).
    """
    points = _reduce(list(curve.points))
    if len(points) <= 2:
        raise DegenerateInputError(
            "the picture has no enclosed area; nothing is left after removing spikes")
    if len(points) == len(curve.points):
        return curve
    kept = set(points)
    return replace(curve, points=tuple(points),
                   lpixels=frozenset(p for p in curve.lpixels if p in kept))


def lego_curve(img, steps=None):
    """Trace, repair and prune in one call."""
    curve = trace_lego_curve(img, steps)
    curve = repair_trapped_lpixels(curve, img, steps)
    return prune_spikes(curve)


def _components(img):
    """Black 8-components of ``img``, each as an image on the same canvas."""
    grid = img.padded
    label = np.zeros(grid.shape, dtype=np.int32)
    parts = []
    for start in img.black_pixels():
        if label[start]:
            continue
        label[start] = len(parts) + 1
        members = [start]
        stack = [start]
        while stack:
            y, x = stack.pop()
            for dy in (-1, 0, 1):
                for dx in (-1, 0, 1):
                    q = (y + dy, x + dx)
                    if grid[q] and not label[q]:
                        label[q] = label[start]
                        members.append(q)
                        stack.append(q)
        parts.append(members)
    if len(parts) == 1:
        return [img]
    return [type(img).from_points(img.rows, img.cols, members, framed=True)
            for members in parts]


def cotra_fill(img, steps=None):
    """Locating matrix of a framed picture computed through its Lego curve.

    Black pixels are PICTURE, the curve's L-pixels are LPIXEL, and white
    pixels inside the curve (including white curve pixels that are not
    L-pixels) are INTERIOR.

    A disconnected picture is filled one 8-component at a time: a white
    pixel enclosed by the picture is enclosed by a single component, so the
    union of the per-component interiors is exact, and an L-pixel of one
    component that another component encloses becomes INTERIOR. Components
    without enclosed area (single pixels, bare segments) contribute nothing
    and add a warning instead of raising.
    """
    if not img.border_is_white():
        raise PreconditionError("image must have a white frame; call ensure_frame first")
    black = img.pixels.astype(bool)
    interior = np.zeros(black.shape, dtype=bool)
    lmask = np.zeros(black.shape, dtype=bool)
    notes = []
    if not black.any():
        notes.append("degenerate picture: the picture is empty")
    for part in (_components(img) if black.any() else []):
        try:
            curve = lego_curve(part, steps)
        except DegenerateInputError as exc:
            notes.append(f"degenerate picture: {exc}")
            continue
        inside, on_curve = fill_curve(list(curve.points), img.canvas, steps)
        own = np.zeros(black.shape, dtype=bool)
        for y, x in curve.lpixels:
            own[y - 1, x - 1] = True
        interior |= inside | (on_curve & ~own)
        lmask |= own
        notes.extend(curve.warnings)
    interior &= ~black
    cells = np.zeros(black.shape, dtype=np.uint8)
    cells[lmask & ~interior] = int(Cell.LPIXEL)
    cells[interior] = int(Cell.INTERIOR)
    cells[black] = int(Cell.PICTURE)
    return LocatingMatrix(img.canvas, cells, warnings=tuple(notes))
