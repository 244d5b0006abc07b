import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import (
    NESTED,
    PINCH,
    PLAIN_RING,
    REFERENCE_LPIXELS,
    RING,
    SELF_TOUCHING,
    WHISKER_RING,
    picture,
    random_picture,
    reference_picture,
)
from loci import (
    BinaryImage,
    Cell,
    DegenerateInputError,
    DiscreteCurve,
    PictureKind,
    PreconditionError,
    StepCounter,
    cotra_fill,
    detect_spikes,
    flood_exterior,
    fua_fill,
    gen_test_picture,
    lego_curve,
    lpixel_set,
    oracle_interior,
    prune_spikes,
    repair_trapped_lpixels,
    trace_lego_curve,
)
from loci.oracle import exterior_mask


def cyclic_equal(a, b):
    a, b = list(a), list(b)
    if len(a) != len(b):
        return False
    if not a:
        return True
    k = b.index(a[0]) if a[0] in b else -1
    return k >= 0 and b[k:] + b[:k] == a


def corpus(count=120):
    for seed in range(count):
        kind = (PictureKind.RANDOM_CONNECTED, PictureKind.RECTILINEAR_SIMPLE)[seed % 2]
        yield gen_test_picture(seed, 8 + seed % 57, 8 + (seed * 7) % 57, kind)


def test_ring_trace():
    curve = trace_lego_curve(RING)
    ring = [(2, 2), (2, 3), (2, 4), (3, 4), (4, 4), (4, 3), (4, 2), (3, 2)]
    assert cyclic_equal(curve.points, ring) or cyclic_equal(curve.points, ring[::-1])
    assert curve.lpixels == frozenset()
    assert repair_trapped_lpixels(curve, RING).points == curve.points
    assert prune_spikes(curve).points == curve.points


def test_diagonal_pair():
    img = picture("......\n......\n..#...\n...#..\n......\n......")
    curve = lego_curve(img)
    assert set(curve.points) == {(3, 3), (3, 4), (4, 4), (4, 3)}
    assert curve.lpixels <= {(3, 4), (4, 3)}
    repaired = repair_trapped_lpixels(trace_lego_curve(img), img)
    assert repaired.points == trace_lego_curve(img).points


def test_pinch_lpixels_are_the_exterior_lpixels():
    curve = lego_curve(PINCH)
    assert curve.lpixels == lpixel_set(PINCH) == {(4, 5), (5, 4)}


def test_reference_lpixels():
    curve = lego_curve(reference_picture())
    assert curve.lpixels == REFERENCE_LPIXELS


def test_reference_fixture_is_consistent():
    img = reference_picture()
    assert img.canvas.shape == (11, 24)
    assert lpixel_set(img) == REFERENCE_LPIXELS
    for p in [(7, 7)] + [(8, x) for x in range(7, 15)]:
        assert img.is_black(p)


def test_whisker_tip_is_pruned():
    traced = trace_lego_curve(WHISKER_RING)
    assert (2, 4) in traced.points
    curve = prune_spikes(traced)
    assert (2, 4) not in curve.points
    assert detect_spikes(DiscreteCurve(curve.points, closed=True)) == []
    # the whisker base leaves two L-pixels, so the curve bridges over the ring's top
    plain = set(lego_curve(PLAIN_RING).points)
    assert set(curve.points) == plain - {(4, 4)} | {(3, 3), (3, 4), (3, 5)}
    assert curve.lpixels == lpixel_set(WHISKER_RING) == {(3, 3), (3, 5)}


@pytest.mark.parametrize("text", [
    "...\n.#.\n.#.\n.#.\n...",
    ".......\n.#####.\n.......",
])
def test_bare_segments_are_degenerate(text):
    img = picture(text)
    with pytest.raises(DegenerateInputError):
        lego_curve(img)
    m = cotra_fill(img)
    assert m.count(Cell.INTERIOR) == 0
    assert m.warnings and "degenerate" in m.warnings[0]


def test_diagonal_chain_has_empty_interior():
    img = picture("......\n.#....\n..#...\n...#..\n......")
    curve = lego_curve(img)
    assert curve.lpixels == lpixel_set(img)
    m = cotra_fill(img)
    assert m.count(Cell.INTERIOR) == 0
    assert m.count(Cell.LPIXEL) == 4


def test_single_pixel():
    img = picture("...\n.#.\n...")
    with pytest.raises(DegenerateInputError):
        trace_lego_curve(img)
    assert cotra_fill(img).count(Cell.INTERIOR) == 0


def test_trace_preconditions():
    two = picture("......\n.#..#.\n......")
    with pytest.raises(PreconditionError):
        trace_lego_curve(two)
    with pytest.raises(PreconditionError):
        trace_lego_curve(BinaryImage.from_array(np.ones((3, 3))))


def test_ring_fill():
    m = cotra_fill(RING)
    assert m.coords(Cell.INTERIOR) == {(3, 3)}
    assert m.count(Cell.PICTURE) == 8
    assert m.count(Cell.EXTERIOR) == 16


def test_self_touching_polygon_matches_oracle():
    assert cotra_fill(SELF_TOUCHING).coords(Cell.INTERIOR) == oracle_interior(SELF_TOUCHING)
    assert fua_fill(SELF_TOUCHING, strict=False).coords(Cell.INTERIOR) != \
        oracle_interior(SELF_TOUCHING)


def test_thick_blob():
    blob = picture("""
        ..........
        ..####....
        .######...
        .######...
        .#######..
        ...###.#..
        ...#####..
        ..........
    """)
    m = cotra_fill(blob)
    assert m.coords(Cell.PICTURE) == set(blob.black_pixels())
    assert m.coords(Cell.INTERIOR) == oracle_interior(blob) == {(6, 7)}


def test_nested_rings_are_filled_per_component():
    m = cotra_fill(NESTED)
    assert m.coords(Cell.INTERIOR) == oracle_interior(NESTED)
    assert not m.warnings


def test_lpixel_of_an_enclosed_component_is_interior():
    img = picture("""
        ..........
        .########.
        .#......#.
        .#.#....#.
        .#..#...#.
        .#......#.
        .########.
        ..........
    """)
    m = cotra_fill(img)
    assert m.coords(Cell.INTERIOR) == oracle_interior(img)
    assert m.count(Cell.LPIXEL) == 0


def test_repair_reopens_sealed_pockets():
    repaired = 0
    for seed in range(80):
        img = gen_test_picture(seed, 8 + seed % 57, 8 + (seed * 7) % 57,
                               PictureKind.RANDOM_CONNECTED)
        traced = trace_lego_curve(img)
        fixed = repair_trapped_lpixels(traced, img)
        if fixed.points != traced.points:
            repaired += 1
            assert not fixed.warnings
            assert fixed.lpixels < traced.lpixels
            raster = BinaryImage.from_points(img.rows, img.cols, fixed.points)
            outside = exterior_mask(raster) & ~img.pixels.astype(bool)
            lmask = np.zeros_like(outside)
            for y, x in fixed.lpixels:
                lmask[y - 1, x - 1] = True
            assert np.array_equal(outside | lmask, exterior_mask(img))
    assert repaired > 0


def test_repair_rejects_a_foreign_image():
    with pytest.raises(PreconditionError):
        repair_trapped_lpixels(trace_lego_curve(RING), PINCH)


@pytest.mark.parametrize("img", list(corpus()), ids=lambda img: f"{img.rows}x{img.cols}")
def test_curve_invariants(img):
    try:
        curve = lego_curve(img)
    except DegenerateInputError:
        return
    pts = list(curve.points)
    assert len(pts) >= 3
    for a, b in zip(pts, pts[1:] + pts[:1]):
        assert abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1
    assert detect_spikes(DiscreteCurve(pts, closed=True)) == []
    assert curve.lpixels <= lpixel_set(img)
    interior = oracle_interior(img)
    for p in pts:
        assert img.is_black(p) or p in curve.lpixels or p in interior
    raster = BinaryImage.from_points(img.rows, img.cols, pts)
    ext = (flood_exterior(raster) - set(img.black_pixels())) | curve.lpixels
    assert ext == flood_exterior(img)
    assert cotra_fill(img).coords(Cell.INTERIOR) == interior


@pytest.mark.parametrize("seed", range(40))
def test_curve_is_rotation_invariant(seed):
    kind = (PictureKind.RANDOM_CONNECTED, PictureKind.RECTILINEAR_SIMPLE)[seed % 2]
    img = gen_test_picture(seed, 10 + seed % 25, 9 + seed % 17, kind)
    turned = BinaryImage.from_array(np.rot90(img.pixels), framed=True)
    try:
        points = set(lego_curve(img).points)
    except DegenerateInputError:
        return
    cols = img.cols
    back = {(x, cols + 1 - y) for y, x in lego_curve(turned).points}
    assert back == points


@pytest.mark.parametrize("seed", range(30))
def test_agrees_with_fua_without_lpixels(seed):
    img = gen_test_picture(seed, 12 + seed, 14, PictureKind.RECTILINEAR_SIMPLE)
    if lpixel_set(img):
        img = picture("\n".join(["." * 9] + [".#######."] + [".#.....#."] * 4
                                 + [".#######."] + ["." * 9]))
    assert cotra_fill(img) == fua_fill(img)


def test_steps_are_counted():
    steps = StepCounter()
    cotra_fill(RING, steps=steps)
    assert steps.count > 0


@settings(max_examples=300, deadline=None)
@given(st.integers(3, 14), st.integers(3, 14), st.floats(0.1, 0.8), st.integers(0, 2**32))
def test_fill_matches_oracle_on_arbitrary_bitmaps(rows, cols, density, seed):
    img = random_picture(seed, rows, cols, density)
    m = cotra_fill(img)
    assert m.coords(Cell.INTERIOR) == oracle_interior(img)
    assert m.coords(Cell.PICTURE) == set(img.black_pixels())
    assert m.coords(Cell.LPIXEL) <= lpixel_set(img)
