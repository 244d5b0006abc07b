"""Ground truth by seed fill, plus reproducible test pictures.

Nothing here shares code with the scanline fill or the boundary tracer: the
exterior is found by a plain worklist flood from the frame, so agreement
between the two families is evidence rather than tautology.
"""
from __future__ import annotations

import enum
import random
from collections import deque
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidArgumentError, PreconditionError
from .raster import BinaryImage, Canvas, save_binary_image

_N4 = ((-1, 0), (1, 0), (0, -1), (0, 1))
_N8 = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))


def _to_set(mask):
    ys, xs = np.nonzero(mask)
    return {(int(y) + 1, int(x) + 1) for y, x in zip(ys, xs)}


def exterior_mask(img):
    """Boolean mask of white pixels 4-connected to the frame through white pixels."""
    black = img.pixels.astype(bool)
    rows, cols = black.shape
    ext = np.zeros_like(black)
    work = deque()
    for y in range(rows):
        for x in (0, cols - 1):
            if not black[y, x] and not ext[y, x]:
                ext[y, x] = True
                work.append((y, x))
    for x in range(cols):
        for y in (0, rows - 1):
            if not black[y, x] and not ext[y, x]:
                ext[y, x] = True
                work.append((y, x))
    while work:
        y, x = work.popleft()
        for dy, dx in _N4:
            ny, nx = y + dy, x + dx
            if 0 <= ny < rows and 0 <= nx < cols and not black[ny, nx] \
                    and not ext[ny, nx]:
                ext[ny, nx] = True
                work.append((ny, nx))
    return ext


def flood_exterior(img):
    return _to_set(exterior_mask(img))


def interior_mask(img):
    return ~img.pixels.astype(bool) & ~exterior_mask(img)


def oracle_interior(img):
    """Canvas minus picture minus exterior."""
    return _to_set(interior_mask(img))


def lpixel_set(img):
    """Exterior pixels with a black horizontal and a black vertical neighbour.

    Those two neighbours are diagonal to each other, which is exactly the
    L-pixel condition; every such pixel is also an entry or exit pixel.
    """
    ext = exterior_mask(img)
    g = img.padded
    out = set()
    for y, x in _to_set(ext):
        if (g[y, x - 1] or g[y, x + 1]) and (g[y - 1, x] or g[y + 1, x]):
            out.add((y, x))
    return out


@dataclass(frozen=True)
class RegionPartition:
    exterior: frozenset
    interior: frozenset
    picture: frozenset


def partition(img):
    ext = exterior_mask(img)
    black = img.pixels.astype(bool)
    return RegionPartition(frozenset(_to_set(ext)),
                           frozenset(_to_set(~black & ~ext)),
                           frozenset(_to_set(black)))


def white_components(img):
    """Label the 4-connected white components; returns (labels, count)."""
    black = img.pixels.astype(bool)
    rows, cols = black.shape
    labels = np.zeros(black.shape, dtype=np.int32)
    count = 0
    for sy in range(rows):
        for sx in range(cols):
            if black[sy, sx] or labels[sy, sx]:
                continue
            count += 1
            labels[sy, sx] = count
            work = [(sy, sx)]
            while work:
                y, x = work.pop()
                for dy, dx in _N4:
                    ny, nx = y + dy, x + dx
                    if 0 <= ny < rows and 0 <= nx < cols and not black[ny, nx] \
                            and not labels[ny, nx]:
                        labels[ny, nx] = count
                        work.append((ny, nx))
    return labels, count


def jordan_check(img):
    """Check the two-component split for a picture where every pixel has two neighbours.

    The hypothesis is read with 4-neighbours: every black pixel must touch
    exactly two other black pixels horizontally or vertically.
    """
    if not img.border_is_white():
        raise PreconditionError("image must be framed")
    g = img.padded.astype(np.int32)
    degree = g[:-2, 1:-1] + g[2:, 1:-1] + g[1:-1, :-2] + g[1:-1, 2:]
    bad = sorted(_to_set(img.pixels.astype(bool) & (degree != 2)))
    if bad or img.black_count() == 0:
        raise PreconditionError(
            f"pixels without exactly two neighbours: {bad[:20]}"
            + (" ..." if len(bad) > 20 else ""))
    labels, count = white_components(img)
    if count != 2:
        return False
    outer = labels[0, 0]
    return bool((labels == outer).any() and (labels == 3 - outer).any())


# -- generators --------------------------------------------------------------

class PictureKind(enum.Enum):
    RECTILINEAR_SIMPLE = "rectilinear_simple"
    RANDOM_CONNECTED = "random_connected"
    DEGENERATE = "degenerate"


_COARSE = 3  # pixels per coarse cell of a rectilinear blob


def gen_test_picture(seed, rows, cols, kind):
    """Deterministic framed test picture of the requested kind.

    RECTILINEAR_SIMPLE outlines a random hole-free union of 3x3 blocks, so
    every black pixel has exactly two 4-neighbours and the outline never
    touches itself. RANDOM_CONNECTED grows an 8-connected blob pixel by
    pixel. DEGENERATE cycles through a single pixel, horizontal and vertical
    segments, and a diagonal chain.
    """
    kind = PictureKind(kind)
    if rows < 8 or cols < 8:
        raise InvalidArgumentError(f"pictures need at least 8x8 pixels, got {rows}x{cols}")
    rng = random.Random(f"{kind.value}:{seed}:{rows}:{cols}")
    if kind is PictureKind.RECTILINEAR_SIMPLE:
        arr = _rectilinear(rng, rows, cols)
    elif kind is PictureKind.RANDOM_CONNECTED:
        arr = _random_connected(rng, rows, cols)
    else:
        arr = _degenerate(rng, seed, rows, cols)
    return BinaryImage(Canvas(rows, cols), arr, framed=True)


def _coarse_blob(rng, R, C):
    grid = np.zeros((R + 2, C + 2), dtype=bool)
    start = (rng.randint(1, R), rng.randint(1, C))
    grid[start] = True
    cells = [start]
    target = rng.randint(1, max(1, R * C * 6 // 10))
    attempts = 0
    while len(cells) < target and attempts < 50 * target:
        attempts += 1
        y, x = rng.choice(cells)
        dy, dx = rng.choice(_N4)
        q = (y + dy, x + dx)
        if 1 <= q[0] <= R and 1 <= q[1] <= C and not grid[q]:
            grid[q] = True
            cells.append(q)
    # close holes and diagonal-only contacts until neither remains
    while True:
        changed = False
        outside = exterior_mask(BinaryImage.from_array(grid))
        holes = ~grid & ~outside
        if holes.any():
            grid |= holes
            changed = True
        for y in range(R + 1):
            for x in range(C + 1):
                a, b = grid[y, x], grid[y, x + 1]
                c, d = grid[y + 1, x], grid[y + 1, x + 1]
                if a and d and not b and not c:
                    grid[y, x + 1] = True
                    changed = True
                elif b and c and not a and not d:
                    if y >= 1 and x >= 1:
                        grid[y, x] = True
                    else:
                        grid[y + 1, x + 1] = True
                    changed = True
        if not changed:
            return grid[1:-1, 1:-1]


def _rectilinear(rng, rows, cols):
    s = _COARSE
    R, C = (rows - 2) // s, (cols - 2) // s
    coarse = _coarse_blob(rng, R, C)
    blob = np.zeros((rows, cols), dtype=bool)
    y0 = 1 + ((rows - 2) - s * R) // 2
    x0 = 1 + ((cols - 2) - s * C) // 2
    for r, c in zip(*np.nonzero(coarse)):
        blob[y0 + s * r:y0 + s * r + s, x0 + s * c:x0 + s * c + s] = True
    pad = np.pad(blob, 1)
    touches_outside = np.zeros_like(blob)
    for dy, dx in _N8:
        touches_outside |= ~pad[1 + dy:1 + dy + rows, 1 + dx:1 + dx + cols]
    return (blob & touches_outside).astype(np.uint8)


def _random_connected(rng, rows, cols):
    arr = np.zeros((rows, cols), dtype=np.uint8)
    inner = (rows - 2) * (cols - 2)
    start = (rng.randint(1, rows - 2), rng.randint(1, cols - 2))
    arr[start] = 1
    pixels = [start]
    target = rng.randint(max(2, inner // 10), max(2, inner * 45 // 100))
    while len(pixels) < target:
        y, x = rng.choice(pixels)
        dy, dx = rng.choice(_N8)
        ny, nx = y + dy, x + dx
        if 1 <= ny < rows - 1 and 1 <= nx < cols - 1 and not arr[ny, nx]:
            arr[ny, nx] = 1
            pixels.append((ny, nx))
    return arr


def _degenerate(rng, seed, rows, cols):
    arr = np.zeros((rows, cols), dtype=np.uint8)
    y = rng.randint(1, rows - 2)
    x = rng.randint(1, cols - 2)
    variant = seed % 4
    if variant == 0:
        arr[y, x] = 1
    elif variant == 1:
        a, b = sorted(rng.sample(range(1, cols - 1), 2))
        arr[y, a:b + 1] = 1
    elif variant == 2:
        a, b = sorted(rng.sample(range(1, rows - 1), 2))
        arr[a:b + 1, x] = 1
    else:
        length = rng.randint(2, min(rows, cols) - 2)
        y0 = rng.randint(1, rows - 1 - length)
        x0 = rng.randint(1, cols - 1 - length)
        step = rng.choice((1, -1))
        for k in range(length):
            xx = x0 + k if step == 1 else x0 + length - 1 - k
            arr[y0 + k, xx] = 1
    return arr


def dump_corpus(directory, cases, plain=True):
    """Write generated pictures as PBM files named ``<kind>-<seed>-<rows>x<cols>.pbm``.

    ``cases`` is an iterable of ``(seed, rows, cols, kind)`` tuples.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for seed, rows, cols, kind in cases:
        kind = PictureKind(kind)
        img = gen_test_picture(seed, rows, cols, kind)
        path = directory / f"{kind.value}-{seed}-{rows}x{cols}.pbm"
        path.write_bytes(save_binary_image(img, plain))
        written.append(path)
    return written
