"""Command-line front end: ``loci fill``, ``loci locate`` and ``loci bench``."""
from __future__ import annotations

import argparse
import os
import sys
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import cotra, oracle
from .errors import LociError, MalformedCurveError, NetpbmError
from .raster import (
    DEFAULT_THRESHOLD,
    FORMATS,
    Canvas,
    Cell,
    ensure_frame,
    load_binary_image,
    save_locating_matrix,
)
from .scanfill import fua_fill
from .steps import StepCounter

PROMPT = "Try CoTRA? Yes = 1; No = any key"

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


@dataclass
class RunReport:
    input_path: str
    fua_seconds: float
    canvas: Canvas
    interior_count: int
    cotra_seconds: float | None = None
    warnings: list = field(default_factory=list)
    outputs: list = field(default_factory=list)

    def lines(self):
        out = [f"input: {self.input_path}",
               f"canvas: {self.canvas.rows}x{self.canvas.cols}",
               f"fua_seconds: {self.fua_seconds:.6f}"]
        if self.cotra_seconds is not None:
            out.append(f"cotra_seconds: {self.cotra_seconds:.6f}")
        out.append(f"interior_count: {self.interior_count}")
        out.extend(f"wrote: {p}" for p in self.outputs)
        return out


class UsageError(Exception):
    pass


def _format_list(text):
    names = [t.strip() for t in text.split(",") if t.strip()]
    bad = [n for n in names if n not in FORMATS]
    if bad or not names:
        raise argparse.ArgumentTypeError(
            f"formats must be a comma list drawn from {', '.join(FORMATS)}")
    return list(dict.fromkeys(names))


def _threshold(text):
    value = int(text)
    if not 0 <= value <= 255:
        raise argparse.ArgumentTypeError("threshold must be in 0..255")
    return value


def _sizes(text):
    try:
        sizes = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("sizes must be integers") from None
    if not sizes or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise argparse.ArgumentTypeError("sizes must be strictly increasing")
    if sizes[0] < 8:
        raise argparse.ArgumentTypeError("sizes must be at least 8")
    return sizes


def _load(path, threshold):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return ensure_frame(load_binary_image(data, threshold))
    except NetpbmError as exc:
        raise UsageError(f"{path}: {exc}") from None


def write_atomic(path, data):
    """Write ``data`` so that ``path`` is either absent, old, or complete."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.",
                               suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fua(img, warnings):
    try:
        return fua_fill(img)
    except MalformedCurveError as exc:
        warnings.append(f"FUA assumptions fail ({exc}); filled by attachment parity")
        return fua_fill(img, strict=False)


def _cotra(img, warnings):
    matrix = cotra.cotra_fill(img)
    warnings.extend(matrix.warnings)
    return matrix


def _ask(stdin, stdout):
    print(PROMPT, file=stdout, flush=True)
    answer = stdin.readline()
    return answer.strip() == "1"


def run_fill(input_path, use_cotra=False, interactive=False,
             threshold=DEFAULT_THRESHOLD, out=None, formats=("csv",),
             stdin=None, stdout=None):
    """Fill one image with FUA and optionally CoTRA, writing matrix files."""
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    img = _load(input_path, threshold)
    warnings = []
    t0 = time.perf_counter()
    fua_matrix = _fua(img, warnings)
    fua_seconds = time.perf_counter() - t0
    if interactive and not use_cotra:
        use_cotra = _ask(stdin, stdout)
    cotra_matrix = cotra_seconds = None
    if use_cotra:
        t0 = time.perf_counter()
        cotra_matrix = _cotra(img, warnings)
        cotra_seconds = time.perf_counter() - t0
    prefix = Path(out) if out else Path(input_path).with_suffix("")
    outputs = []
    for fmt in formats:
        for tag, matrix in (("fua", fua_matrix), ("cotra", cotra_matrix)):
            if matrix is None:
                continue
            path = prefix.parent / f"{prefix.name}.{tag}.{fmt}"
            write_atomic(path, save_locating_matrix(matrix, fmt))
            outputs.append(str(path))
    final = cotra_matrix if cotra_matrix is not None else fua_matrix
    return RunReport(str(input_path), fua_seconds, img.canvas,
                     final.count(Cell.INTERIOR), cotra_seconds, warnings, outputs)


def run_locate(input_path, y, x, use_cotra=False, threshold=DEFAULT_THRESHOLD):
    """Class of pixel ``(y, x)`` of the framed image, plus any warnings."""
    img = _load(input_path, threshold)
    if not img.canvas.contains((y, x)):
        raise UsageError(f"({y}, {x}) is outside the {img.rows}x{img.cols} canvas")
    warnings = []
    matrix = _cotra(img, warnings) if use_cotra else _fua(img, warnings)
    return matrix.at((y, x)), warnings


def run_bench(sizes, kind=oracle.PictureKind.RECTILINEAR_SIMPLE, reps=3, seed=0,
              stdout=None):
    """Time both fills on square pictures of each side length; CSV to ``stdout``.

    Repetition ``r`` uses the picture generated from ``seed + r``; times,
    step counts and interior sizes are averaged over the repetitions.
    """
    stdout = stdout or sys.stdout
    print("side,pixels,fua_seconds,fua_steps,cotra_seconds,cotra_steps,interior_count",
          file=stdout)
    rows = []
    for side in sizes:
        fua_time = cotra_time = 0.0
        fua_total = cotra_total = interior = 0
        for r in range(reps):
            img = oracle.gen_test_picture(seed + r, side, side, kind)
            fua_steps, cotra_steps = StepCounter(), StepCounter()
            t0 = time.perf_counter()
            fua_fill(img, strict=False, steps=fua_steps)
            t1 = time.perf_counter()
            matrix = cotra.cotra_fill(img, steps=cotra_steps)
            t2 = time.perf_counter()
            fua_time += t1 - t0
            cotra_time += t2 - t1
            fua_total += fua_steps.count
            cotra_total += cotra_steps.count
            interior += matrix.count(Cell.INTERIOR)
        row = (side, side * side, fua_time / reps, fua_total / reps,
               cotra_time / reps, cotra_total / reps, interior / reps)
        rows.append(row)
        print("{},{},{:.6f},{:.1f},{:.6f},{:.1f},{:.1f}".format(*row),
              file=stdout, flush=True)
    return rows


def build_parser():
    parser = argparse.ArgumentParser(
        prog="loci",
        description="Locate pixels of a binary image as interior, exterior or picture.")
    sub = parser.add_subparsers(dest="command", required=True)

    fill = sub.add_parser("fill", help="fill an image and write locating matrices")
    fill.add_argument("input", help="PBM or PGM image")
    fill.add_argument("--cotra", action="store_true", help="also run CoTRA")
    fill.add_argument("--interactive", action="store_true",
                      help="ask whether to run CoTRA after the FUA fill")
    fill.add_argument("--threshold", type=_threshold, default=DEFAULT_THRESHOLD,
                      help="grey levels below this are black (default %(default)s)")
    fill.add_argument("--out", help="output prefix (default: input path without extension)")
    fill.add_argument("--format", type=_format_list, default=["csv"],
                      help="comma list of pgm, ppm, csv (default csv)")

    locate = sub.add_parser("locate", help="print the class of one pixel")
    locate.add_argument("input")
    locate.add_argument("y", type=int)
    locate.add_argument("x", type=int)
    locate.add_argument("--cotra", action="store_true")
    locate.add_argument("--threshold", type=_threshold, default=DEFAULT_THRESHOLD)

    bench = sub.add_parser("bench", help="scaling benchmark, CSV on stdout")
    bench.add_argument("--sizes", type=_sizes, default=[64, 128, 256],
                       help="comma list of square side lengths (default 64,128,256)")
    bench.add_argument("--kind", type=oracle.PictureKind,
                       default=oracle.PictureKind.RECTILINEAR_SIMPLE,
                       choices=list(oracle.PictureKind), metavar="KIND",
                       help="rectilinear_simple, random_connected or degenerate")
    bench.add_argument("--reps", type=int, default=3)
    bench.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "fill":
            report = run_fill(args.input, args.cotra, args.interactive,
                              args.threshold, args.out, args.format)
            for line in report.lines():
                print(line)
            warnings = report.warnings
        elif args.command == "locate":
            cls, warnings = run_locate(args.input, args.y, args.x, args.cotra,
                                       args.threshold)
            print(cls.name)
        else:
            if args.reps < 1:
                parser.error("--reps must be at least 1")
            run_bench(args.sizes, args.kind, args.reps, args.seed)
            warnings = []
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"loci: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LociError as exc:
        print(f"loci: error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
