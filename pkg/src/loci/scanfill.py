"""Filling Up Algorithm: row scans over entry/exit pixels with extremum skipping.

Each row is scanned left to right. White pixels next to black runs are
marked as entry (I), exit (O) or both (X). Every black run between an entry
and an exit is then classified by how the curve leaves it vertically: a run
whose two vertical attachments lie on opposite rows is a CROSSING and
toggles the inside/outside parity, a run whose attachments both lie on the
same row is a local EXTREMUM and is jumped over. White spans met with odd
parity are interior.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, MalformedCurveError, PreconditionError
from .raster import Cell, LocatingMatrix
from .steps import _tick


class Mark(enum.Enum):
    I = "i"
    O = "o"
    X = "x"


class RunKind(enum.Enum):
    CROSSING = "crossing"
    EXTREMUM = "extremum"


@dataclass(frozen=True)
class RowMarks:
    row: int
    marks: tuple  # ((column, Mark), ...), columns strictly increasing

    def columns(self, kind=None):
        return [c for c, k in self.marks if kind is None or k is kind]


@dataclass(frozen=True)
class RunClass:
    row: int
    start: int
    end: int
    cls: RunKind
    up: int = 0
    down: int = 0


def find_io_pixels(img, y, steps=None):
    """Entry/exit marks of row ``y`` (1-based)."""
    if not 1 <= y <= img.rows:
        raise InvalidArgumentError(f"row {y} outside 1..{img.rows}")
    row = img.padded[y]
    _tick(steps, img.cols)
    white = row[1:-1] == 0
    entry = white & (row[2:] == 1)
    exit_ = white & (row[:-2] == 1)
    marks = []
    for x in np.nonzero(entry | exit_)[0]:
        if entry[x] and exit_[x]:
            kind = Mark.X
        elif entry[x]:
            kind = Mark.I
        else:
            kind = Mark.O
        marks.append((int(x) + 1, kind))
    return RowMarks(y, tuple(marks))


def runs_from_marks(marks):
    """Black runs ``(start, end)`` delimited by a row's entry/exit marks.

    Assumes a framed row, where the marks alternate and begin with an entry.
    """
    runs = []
    start = None
    for col, kind in marks.marks:
        if kind in (Mark.O, Mark.X) and start is not None:
            runs.append((start, col - 1))
            start = None
        if kind in (Mark.I, Mark.X):
            start = col + 1
    return runs


def _attachments(row, start, end):
    """Number of distinct black runs of ``row`` touching columns start..end."""
    count = 0
    for x in range(start, end + 1):
        if row[x] and (x == start or not row[x - 1]):
            count += 1
    return count


def classify_run(img, y, run, strict=True, steps=None):
    """Classify the maximal black run ``run=(start, end)`` of row ``y``.

    Attachments are the black runs of rows ``y-1`` and ``y+1`` that share a
    column with the run. Exactly two are expected; with ``strict=False`` any
    other count is resolved by the parity of the upward attachments instead
    of raising.
    """
    start, end = run
    grid = img.padded
    if start > end or not grid[y, start:end + 1].all() \
            or grid[y, start - 1] or grid[y, end + 1]:
        raise InvalidArgumentError(f"({y}, {start}..{end}) is not a maximal black run")
    _tick(steps, 2 * (end - start + 1))
    up = _attachments(grid[y - 1], start, end)
    down = _attachments(grid[y + 1], start, end)
    if up + down != 2:
        if strict:
            raise MalformedCurveError(
                f"row {y}: run {start}..{end} has {up + down} vertical "
                f"attachments ({up} above, {down} below); expected 2",
                row=y, run=run)
        kind = RunKind.CROSSING if up % 2 else RunKind.EXTREMUM
    else:
        kind = RunKind.CROSSING if up == 1 else RunKind.EXTREMUM
    return RunClass(y, start, end, kind, up, down)


def _require_frame(img):
    if not img.border_is_white():
        raise PreconditionError("image must have a white frame; call ensure_frame first")


def fua_fill(img, strict=True, steps=None):
    """Fill a framed picture row by row and return its locating matrix.

    Parameters
    ----------
    img : BinaryImage
        Framed image whose black set is a thin, 4-connected, spike-free curve.
    strict : bool
        Raise :class:`MalformedCurveError` on runs that do not have exactly
        two vertical attachments. When False such runs are classified by the
        parity of their upward attachments, which is what the CLI falls back
        to for arbitrary pictures.
    steps : StepCounter, optional
        Receives the number of pixel visits.
    """
    _require_frame(img)
    cells = img.pixels.astype(np.uint8) * int(Cell.PICTURE)
    interior = int(Cell.INTERIOR)
    for y in range(2, img.rows):
        marks = find_io_pixels(img, y, steps)
        parity = 0
        runs = runs_from_marks(marks)
        for k, run in enumerate(runs):
            try:
                rc = classify_run(img, y, run, strict, steps)
            except MalformedCurveError as exc:
                raise MalformedCurveError(
                    f"{exc} - the picture needs CoTRA", row=y, run=run) from None
            if rc.cls is RunKind.CROSSING:
                parity ^= 1
            if parity and k + 1 < len(runs):
                gap_start, gap_end = run[1] + 1, runs[k + 1][0] - 1
                cells[y - 1, gap_start - 1:gap_end] = interior
                _tick(steps, gap_end - gap_start + 1)
    return LocatingMatrix(img.canvas, cells)


# -- curve-driven variant ----------------------------------------------------

def curve_stays(points):
    """Split a closed 4-connected curve into per-row stays.

    A stay is a maximal run of consecutive curve points on one row. Returns
    ``(row, min_col, max_col, kind)`` tuples, where ``kind`` compares the row
    the curve arrives from with the row it leaves to. Curves lying on a
    single row have no stays.
    """
    n = len(points)
    first = next((i for i in range(n) if points[i][0] != points[i - 1][0]), None)
    if first is None:
        return []
    stays = []
    i = first
    done = 0
    while done < n:
        y = points[i % n][0]
        came_from = points[(i - 1) % n][0]
        lo = hi = points[i % n][1]
        j = i
        while points[(j + 1) % n][0] == y:
            j += 1
            x = points[j % n][1]
            lo, hi = min(lo, x), max(hi, x)
        goes_to = points[(j + 1) % n][0]
        kind = RunKind.CROSSING if came_from != goes_to else RunKind.EXTREMUM
        stays.append((y, lo, hi, kind))
        done += j - i + 1
        i = j + 1
    return stays


def fill_curve(points, canvas, steps=None):
    """Inside/outside masks for the pixels of a closed 4-connected curve.

    Runs of the rasterised curve are classified by the curve's own order
    instead of by image adjacency, so overlapping or doubled-back stretches
    are handled: two coincident crossings cancel, as they should.

    Returns
    -------
    inside : numpy.ndarray of bool
        Pixels off the curve with odd crossing parity.
    on_curve : numpy.ndarray of bool
    """
    rows, cols = canvas.shape
    on_curve = np.zeros((rows + 2, cols + 2), dtype=bool)
    for y, x in points:
        if not canvas.contains((y, x)):
            raise InvalidArgumentError(f"curve point {(y, x)} outside the canvas")
        on_curve[y, x] = True
    for a, b in zip(points, points[1:] + points[:1]):
        if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1:
            raise InvalidArgumentError(f"curve step {a} -> {b} is not 4-connected")
    _tick(steps, len(points))
    toggles = np.zeros((rows + 2, cols + 3), dtype=np.int8)
    for y, lo, hi, kind in curve_stays(points):
        if kind is RunKind.CROSSING:
            toggles[y, hi + 1] ^= 1
    _tick(steps, rows * cols)
    parity = np.bitwise_xor.accumulate(toggles, axis=1)[:, :cols + 2]
    inside = (parity == 1) & ~on_curve
    return inside[1:-1, 1:-1], on_curve[1:-1, 1:-1]
