"""Grid kernels: packed-bitmask subset statistics.

Two interchangeable backends: a Cython extension for boxes of at most 64
cells and a pure-Python twin with no size limit.  The compiled backend is
selected at import when it built successfully; set ``LATTICE_INEQ_PURE=1``
to force the pure backend.  Large boxes silently route to the pure backend
either way.
"""

import os

from . import _pure

_compiled = None
if not os.environ.get("LATTICE_INEQ_PURE"):
    try:
        from . import _grid as _compiled  # type: ignore[attr-defined]
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "pure"

_COMPILED_CELL_LIMIT = 64

pack = _pure.pack
unpack = _pure.unpack
cell_count = _pure.cell_count
strides = _pure.strides


def subset_stats(mask, dims):
    """(size, crossings, proj_size, proj_min, proj_max, shadow_size) per axis."""
    if _compiled is not None and cell_count(dims) <= _COMPILED_CELL_LIMIT:
        return _compiled.subset_stats(mask, dims)
    return _pure.subset_stats(mask, dims)


def subset_boundary(mask, dims):
    """Total boundary edge count of the packed subset."""
    if _compiled is not None and cell_count(dims) <= _COMPILED_CELL_LIMIT:
        return _compiled.subset_boundary(mask, dims)
    return _pure.subset_boundary(mask, dims)


def backends():
    """Importable backends, for parity tests and benchmarks."""
    out = {"pure": _pure}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out
