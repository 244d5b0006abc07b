"""Locate pixels as interior, exterior or picture in digital binary images."""

from .cotra import (
    LegoCurve,
    TraceState,
    cotra_fill,
    lego_curve,
    prune_spikes,
    repair_trapped_lpixels,
    trace_lego_curve,
)
from .errors import (
    DegenerateInputError,
    InvalidArgumentError,
    LociError,
    MalformedCurveError,
    MalformedHeaderError,
    NetpbmError,
    PreconditionError,
    TruncatedDataError,
    UnsupportedFormatError,
)
from .oracle import (
    PictureKind,
    RegionPartition,
    dump_corpus,
    flood_exterior,
    gen_test_picture,
    jordan_check,
    lpixel_set,
    oracle_interior,
    partition,
)
from .raster import (
    BinaryImage,
    Canvas,
    Cell,
    LocatingMatrix,
    ensure_frame,
    load_binary_image,
    save_binary_image,
    save_locating_matrix,
)
from .scanfill import RowMarks, RunClass, RunKind, classify_run, find_io_pixels, fua_fill
from .steps import StepCounter
from .topology import (
    DiscreteCurve,
    SelfIntersection,
    adjacency_kind,
    classify_self_intersection,
    detect_spikes,
    is_connected_picture,
    is_locally_thin,
    thickness_at,
)

__version__ = "0.1.0"
