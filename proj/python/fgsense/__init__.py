"""Binary compressed-sensing measurement matrices from finite geometry."""

from ._fgsense import (
    BinaryMatrix,
    Field,
    analyze,
    build_matrix,
    bundle_sizes,
    contained_count,
    containing_count,
    flat_count,
    point_count,
    read_bmm,
    run_suite,
    simulate,
    simulate_gaussian,
    write_bmm,
)

__all__ = [
    "BinaryMatrix",
    "Field",
    "analyze",
    "build_matrix",
    "bundle_sizes",
    "contained_count",
    "containing_count",
    "flat_count",
    "point_count",
    "read_bmm",
    "run_suite",
    "simulate",
    "simulate_gaussian",
    "write_bmm",
]
