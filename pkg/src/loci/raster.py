"""Canvas, binary images, locating matrices and their Netpbm/CSV encodings.

Public coordinates are 1-based ``(y, x)`` pairs with ``y`` growing downward.
Arrays are stored 0-based; :attr:`BinaryImage.padded` adds a one-cell
zero border so that ``padded[y, x]`` addresses pixel ``(y, x)`` directly and
neighbour lookups never fall off the canvas.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    InvalidArgumentError,
    MalformedHeaderError,
    TruncatedDataError,
    UnsupportedFormatError,
)

WHITE = 0
BLACK = 1

DEFAULT_THRESHOLD = 128


class Cell(enum.IntEnum):
    """Class codes stored in a :class:`LocatingMatrix`."""

    EXTERIOR = 0
    PICTURE = 1
    INTERIOR = 2
    LPIXEL = 3


# RGB triples used by the PPM encoder.
CELL_COLOURS = {
    Cell.EXTERIOR: (255, 255, 255),
    Cell.PICTURE: (0, 0, 0),
    Cell.INTERIOR: (255, 255, 0),
    Cell.LPIXEL: (255, 0, 255),
}


@dataclass(frozen=True)
class Canvas:
    rows: int
    cols: int

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise InvalidArgumentError(
                f"canvas must be at least 1x1, got {self.rows}x{self.cols}")

    @property
    def shape(self):
        return (self.rows, self.cols)

    def contains(self, p):
        y, x = p
        return 1 <= y <= self.rows and 1 <= x <= self.cols

    def is_frame(self, p):
        y, x = p
        return y in (1, self.rows) or x in (1, self.cols)


def _frozen(arr, dtype=np.uint8):
    out = np.array(arr, dtype=dtype, copy=True)
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class BinaryImage:
    """A black/white bitmap on a canvas; the black set is the picture.

    Parameters
    ----------
    canvas : Canvas
    pixels : numpy.ndarray
        ``rows x cols`` array of 0 (white) and 1 (black). Copied and frozen.
    framed : bool
        True when the caller guarantees a white one-pixel frame.
    """

    canvas: Canvas
    pixels: np.ndarray
    framed: bool = False

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.shape != self.canvas.shape:
            raise InvalidArgumentError(
                f"pixel array shape {arr.shape} does not match canvas "
                f"{self.canvas.shape}")
        arr = _frozen(arr != 0)
        object.__setattr__(self, "pixels", arr)
        if self.framed and not self.border_is_white():
            raise InvalidArgumentError("framed image has a black border pixel")

    @classmethod
    def from_array(cls, arr, framed=False):
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise InvalidArgumentError("expected a 2-D array")
        return cls(Canvas(*arr.shape), arr, framed)

    @classmethod
    def from_points(cls, rows, cols, points, framed=False):
        """Build an image whose black set is ``points`` (1-based)."""
        arr = np.zeros((rows, cols), dtype=np.uint8)
        for y, x in points:
            arr[y - 1, x - 1] = BLACK
        return cls(Canvas(rows, cols), arr, framed)

    @classmethod
    def from_text(cls, text, framed=False):
        """Parse an ASCII drawing: ``#`` (or ``1``) is black, anything else white."""
        lines = [ln.strip() for ln in text.strip().splitlines()]
        width = max(len(ln) for ln in lines)
        arr = np.zeros((len(lines), width), dtype=np.uint8)
        for y, ln in enumerate(lines):
            for x, ch in enumerate(ln):
                arr[y, x] = ch in "#1"
        return cls.from_array(arr, framed)

    @cached_property
    def padded(self):
        arr = np.pad(self.pixels, 1)
        arr.flags.writeable = False
        return arr

    @property
    def rows(self):
        return self.canvas.rows

    @property
    def cols(self):
        return self.canvas.cols

    def is_black(self, p):
        """Colour test for a 1-based pixel; anything off-canvas reads as white."""
        y, x = p
        if not (0 <= y <= self.rows + 1 and 0 <= x <= self.cols + 1):
            return False
        return bool(self.padded[y, x])

    def black_pixels(self):
        ys, xs = np.nonzero(self.pixels)
        return [(int(y) + 1, int(x) + 1) for y, x in zip(ys, xs)]

    def black_count(self):
        return int(self.pixels.sum())

    def border_is_white(self):
        p = self.pixels
        return not (p[0].any() or p[-1].any() or p[:, 0].any() or p[:, -1].any())

    def with_pixels(self, points, colour):
        """Copy of this image with ``points`` painted ``colour``."""
        arr = self.pixels.copy()
        for y, x in points:
            arr[y - 1, x - 1] = colour
        return BinaryImage(self.canvas, arr, self.framed and self.border_is_white())

    def __eq__(self, other):
        if not isinstance(other, BinaryImage):
            return NotImplemented
        return (self.canvas == other.canvas
                and np.array_equal(self.pixels, other.pixels))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class LocatingMatrix:
    """Per-pixel classification of a canvas into the four :class:`Cell` codes."""

    canvas: Canvas
    cells: np.ndarray
    warnings: tuple = field(default=())

    def __post_init__(self):
        arr = np.asarray(self.cells)
        if arr.shape != self.canvas.shape:
            raise InvalidArgumentError("cell array does not match canvas")
        if arr.size and (arr.min() < 0 or arr.max() > max(Cell)):
            raise InvalidArgumentError("cell codes must be in 0..3")
        object.__setattr__(self, "cells", _frozen(arr))
        object.__setattr__(self, "warnings", tuple(self.warnings))

    @classmethod
    def from_image(cls, img):
        """Matrix with black pixels as PICTURE and everything else EXTERIOR."""
        return cls(img.canvas, img.pixels * int(Cell.PICTURE))

    def at(self, p):
        y, x = p
        if not self.canvas.contains(p):
            raise InvalidArgumentError(f"{p} is outside the {self.canvas.rows}x"
                                       f"{self.canvas.cols} canvas")
        return Cell(int(self.cells[y - 1, x - 1]))

    def count(self, cls):
        return int((self.cells == int(cls)).sum())

    def coords(self, cls):
        ys, xs = np.nonzero(self.cells == int(cls))
        return {(int(y) + 1, int(x) + 1) for y, x in zip(ys, xs)}

    def mask(self, cls):
        return self.cells == int(cls)

    def __eq__(self, other):
        if not isinstance(other, LocatingMatrix):
            return NotImplemented
        return (self.canvas == other.canvas
                and np.array_equal(self.cells, other.cells))

    __hash__ = None


# -- Netpbm input ------------------------------------------------------------

_WHITESPACE = b" \t\n\r\v\f"


class _Scanner:
    """Token reader for Netpbm headers (whitespace and ``#`` comments)."""

    def __init__(self, data):
        self.data = data
        self.pos = 0

    def skip(self):
        data = self.data
        while self.pos < len(data):
            ch = data[self.pos:self.pos + 1]
            if ch in _WHITESPACE:
                self.pos += 1
            elif ch == b"#":
                end = data.find(b"\n", self.pos)
                self.pos = len(data) if end < 0 else end + 1
            else:
                break

    def integer(self, what):
        self.skip()
        start = self.pos
        data = self.data
        while self.pos < len(data) and data[self.pos:self.pos + 1].isdigit():
            self.pos += 1
        if self.pos == start:
            if start >= len(data):
                raise TruncatedDataError(f"file ends before {what}", start)
            raise MalformedHeaderError(f"expected an integer for {what}", start)
        if self.pos < len(data) and data[self.pos:self.pos + 1] not in _WHITESPACE \
                and data[self.pos:self.pos + 1] != b"#":
            raise MalformedHeaderError(f"bad character after {what}", self.pos)
        return int(data[start:self.pos]), start


def load_binary_image(data, threshold=DEFAULT_THRESHOLD):
    """Decode a P1/P2/P4/P5 Netpbm file into an (unframed) binary image.

    Bitmaps map bit 1 to black. Graymaps map a sample to black when it is
    darker than ``threshold`` on a 0-255 scale, i.e. when
    ``value * 255 < threshold * maxval``.
    """
    if isinstance(data, str):
        data = data.encode("ascii")
    data = bytes(data)
    if not 0 <= threshold <= 255:
        raise InvalidArgumentError(f"threshold must be in 0..255, got {threshold}")
    if len(data) < 2:
        raise TruncatedDataError("file too short for a magic number", 0)
    magic = data[:2]
    if magic in (b"P3", b"P6", b"P7"):
        raise UnsupportedFormatError(
            f"unsupported Netpbm type {magic.decode()}; expected P1, P2, P4 or P5", 0)
    if magic not in (b"P1", b"P2", b"P4", b"P5"):
        raise MalformedHeaderError(f"not a Netpbm file (magic {magic!r})", 0)

    sc = _Scanner(data)
    sc.pos = 2
    if sc.pos < len(data) and data[2:3] not in _WHITESPACE and data[2:3] != b"#":
        raise MalformedHeaderError("magic number must be followed by whitespace", 2)
    width, off = sc.integer("width")
    if width < 1:
        raise MalformedHeaderError("width must be positive", off)
    height, off = sc.integer("height")
    if height < 1:
        raise MalformedHeaderError("height must be positive", off)
    maxval = 1
    if magic in (b"P2", b"P5"):
        maxval, off = sc.integer("maxval")
        if not 1 <= maxval <= 65535:
            raise MalformedHeaderError("maxval must be in 1..65535", off)

    count = width * height
    if magic == b"P1":
        values = _plain_bits(sc, count)
        black = values == 1
    elif magic == b"P2":
        values = _plain_samples(sc, count, maxval)
        black = values * 255 < threshold * maxval
    else:
        start = sc.pos + 1  # exactly one whitespace byte precedes the raster
        if sc.pos >= len(data):
            raise TruncatedDataError("missing raster data", sc.pos)
        if magic == b"P4":
            black = _packed_bits(data, start, width, height)
        else:
            values = _raw_samples(data, start, count, maxval)
            black = values * 255 < threshold * maxval
    arr = np.asarray(black, dtype=np.uint8).reshape(height, width)
    return BinaryImage(Canvas(height, width), arr)


def _plain_bits(sc, count):
    out = np.zeros(count, dtype=np.int64)
    data = sc.data
    n = 0
    while n < count:
        sc.skip()
        if sc.pos >= len(data):
            raise TruncatedDataError(
                f"expected {count} bits, found {n}", sc.pos)
        ch = data[sc.pos:sc.pos + 1]
        if ch not in (b"0", b"1"):
            raise MalformedHeaderError(f"invalid bit character {ch!r}", sc.pos)
        out[n] = ch == b"1"
        n += 1
        sc.pos += 1
    return out


def _plain_samples(sc, count, maxval):
    out = np.zeros(count, dtype=np.int64)
    for n in range(count):
        sc.skip()
        if sc.pos >= len(sc.data):
            raise TruncatedDataError(
                f"expected {count} samples, found {n}", sc.pos)
        value, off = sc.integer("sample")
        if value > maxval:
            raise MalformedHeaderError(
                f"sample {value} exceeds maxval {maxval}", off)
        out[n] = value
    return out


def _packed_bits(data, start, width, height):
    row_bytes = (width + 7) // 8
    need = row_bytes * height
    if len(data) - start < need:
        raise TruncatedDataError(
            f"P4 raster needs {need} bytes, found {max(0, len(data) - start)}",
            len(data))
    raw = np.frombuffer(data, dtype=np.uint8, count=need, offset=start)
    bits = np.unpackbits(raw.reshape(height, row_bytes), axis=1)
    return bits[:, :width]


def _raw_samples(data, start, count, maxval):
    width = 1 if maxval < 256 else 2
    need = count * width
    if len(data) - start < need:
        raise TruncatedDataError(
            f"P5 raster needs {need} bytes, found {max(0, len(data) - start)}",
            len(data))
    dtype = np.uint8 if width == 1 else np.dtype(">u2")
    values = np.frombuffer(data, dtype=dtype, count=count, offset=start)
    values = values.astype(np.int64)
    if values.size and values.max() > maxval:
        bad = int(np.argmax(values > maxval))
        raise MalformedHeaderError(
            f"sample exceeds maxval {maxval}", start + bad * width)
    return values


# -- framing -----------------------------------------------------------------

def ensure_frame(img):
    """Guarantee a white one-pixel frame, padding by one on every side if needed."""
    if img.border_is_white():
        if img.framed:
            return img
        return BinaryImage(img.canvas, img.pixels, framed=True)
    arr = np.pad(img.pixels, 1)
    return BinaryImage(Canvas(img.rows + 2, img.cols + 2), arr, framed=True)


# -- output ------------------------------------------------------------------

FORMATS = ("pgm", "ppm", "csv")


def save_locating_matrix(m, format):
    """Encode a locating matrix as P2 (codes), P6 (colours) or CSV bytes."""
    cells = m.cells
    rows, cols = cells.shape
    if format == "pgm":
        lines = [f"P2\n{cols} {rows}\n3\n"]
        lines.extend(" ".join(str(int(v)) for v in row) + "\n" for row in cells)
        return "".join(lines).encode("ascii")
    if format == "ppm":
        lut = np.array([CELL_COLOURS[c] for c in Cell], dtype=np.uint8)
        header = f"P6\n{cols} {rows}\n255\n".encode("ascii")
        return header + lut[cells].tobytes()
    if format == "csv":
        return "".join(",".join(str(int(v)) for v in row) + "\n"
                       for row in cells).encode("ascii")
    raise InvalidArgumentError(f"unknown format {format!r}; choose from {FORMATS}")


def save_binary_image(img, plain=True):
    """Encode a binary image as PBM, plain (P1) or packed (P4)."""
    rows, cols = img.pixels.shape
    if plain:
        body = "".join(" ".join(str(int(v)) for v in row) + "\n" for row in img.pixels)
        return f"P1\n{cols} {rows}\n{body}".encode("ascii")
    packed = np.packbits(img.pixels.astype(np.uint8), axis=1)
    return f"P4\n{cols} {rows}\n".encode("ascii") + packed.tobytes()
