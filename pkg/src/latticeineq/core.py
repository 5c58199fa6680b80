"""Sparse functions, finite sets and the discrete calculus on Z^n.

Values are exact rationals (`fractions.Fraction`).  Quantities that stay
rational (1-norms of differences, boundary edge counts, projection masses)
are computed exactly; fractional powers and logarithms live on the float
track.  Float-track sums always iterate entries in lexicographic key order,
which makes them deterministic and bit-stable under translation.

Axis indices are 1-based throughout: ``i`` ranges over ``1..dim``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Union

from .errors import DegenerateInputError, DomainError, InvalidInputError

Point = tuple  # tuple of ints, length = ambient dimension
Rational = Union[int, Fraction]

ZERO = Fraction(0)
HALF = Fraction(1, 2)


def as_fraction(value) -> Fraction:
    """Coerce an exact value to Fraction.

    Accepts int, Fraction and strings ("3/4", "0.25", "-2"); decimal strings
    parse exactly as scaled integers.  Floats are rejected: they would
    silently poison the exact track.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidInputError("boolean is not a lattice value")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"cannot parse rational value {value!r}") from exc
    raise InvalidInputError(
        f"expected an exact rational (int, Fraction or string), got {type(value).__name__}"
    )


def _check_dim(dim) -> int:
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InvalidInputError(f"dimension must be a positive integer, got {dim!r}")
    return dim


def _check_axis(dim: int, i) -> int:
    """Validate a 1-based axis index; return the 0-based offset."""
    if not isinstance(i, int) or isinstance(i, bool) or not 1 <= i <= dim:
        raise InvalidInputError(f"axis {i!r} out of range 1..{dim}")
    return i - 1


def _check_point(dim: int, z) -> Point:
    if not isinstance(z, tuple) or len(z) != dim:
        raise InvalidInputError(f"point {z!r} does not have dimension {dim}")
    for c in z:
        if not isinstance(c, int) or isinstance(c, bool):
            raise InvalidInputError(f"point {z!r} has a non-integer coordinate")
    return z


def _check_exponent(p) -> Fraction:
    """Validate p > 0; returns it as an exact Fraction (floats convert exactly)."""
    if isinstance(p, (int, Fraction)) and not isinstance(p, bool):
        q = Fraction(p)
    elif isinstance(p, float):
        if not math.isfinite(p):
            raise InvalidInputError(f"exponent must be finite, got {p!r}")
        q = Fraction(p)
    else:
        raise InvalidInputError(f"exponent must be a positive number, got {p!r}")
    if q <= 0:
        raise InvalidInputError(f"exponent must be positive, got {p!r}")
    return q


def _drop(z: Point, ax: int) -> Point:
    return z[:ax] + z[ax + 1:]


class SparseFunction:
    """A finitely supported rational-valued function on Z^n.

    Zero entries are pruned at construction, so the stored keys *are* the
    support.  Entries are kept in lexicographic key order.  Instances are
    immutable by convention; per-axis difference and max-projection results
    are cached on first use.
    """

    __slots__ = ("dim", "_entries", "_diffs", "_projs", "_sigmas", "_hash")

    def __init__(self, dim: int, entries: Union[Mapping, Iterable] = ()):
        self.dim = _check_dim(dim)
        if isinstance(entries, Mapping):
            entries = entries.items()
        acc: dict = {}
        for z, v in entries:
            z = _check_point(self.dim, z)
            v = as_fraction(v)
            w = acc.get(z, ZERO) + v
            if w:
                acc[z] = w
            else:
                acc.pop(z, None)
        self._entries = {z: acc[z] for z in sorted(acc)}
        self._diffs: dict = {}
        self._projs: dict = {}
        self._sigmas: dict = {}
        self._hash = None

    @classmethod
    def _from_clean(cls, dim: int, entries: dict) -> "SparseFunction":
        """Internal fast path: `entries` already validated, pruned, unsorted ok."""
        f = object.__new__(cls)
        f.dim = dim
        f._entries = {z: entries[z] for z in sorted(entries)}
        f._diffs = {}
        f._projs = {}
        f._sigmas = {}
        f._hash = None
        return f

    # -- basic queries -----------------------------------------------------

    def value(self, z: Point) -> Fraction:
        return self._entries.get(z, ZERO)

    __call__ = value

    def items(self):
        """Entries as (point, value) pairs in lexicographic key order."""
        return self._entries.items()

    def support(self) -> frozenset:
        return frozenset(self._entries)

    def support_size(self) -> int:
        return len(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def is_nonnegative(self) -> bool:
        return all(v > 0 for v in self._entries.values())

    # -- derived functions ---------------------------------------------------

    def abs(self) -> "SparseFunction":
        return SparseFunction._from_clean(
            self.dim, {z: abs(v) for z, v in self._entries.items()}
        )

    def __neg__(self) -> "SparseFunction":
        return SparseFunction._from_clean(
            self.dim, {z: -v for z, v in self._entries.items()}
        )

    def scaled(self, c) -> "SparseFunction":
        c = as_fraction(c)
        if not c:
            return SparseFunction._from_clean(self.dim, {})
        return SparseFunction._from_clean(
            self.dim, {z: c * v for z, v in self._entries.items()}
        )

    def translate(self, shift: Point) -> "SparseFunction":
        shift = _check_point(self.dim, tuple(shift))
        return SparseFunction._from_clean(
            self.dim,
            {tuple(a + b for a, b in zip(z, shift)): v for z, v in self._entries.items()},
        )

    # -- dunder plumbing -----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SparseFunction):
            return NotImplemented
        return self.dim == other.dim and self._entries == other._entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, tuple(self._entries.items())))
        return self._hash

    def __repr__(self):
        shown = ", ".join(f"{z}: {v}" for z, v in list(self._entries.items())[:4])
        more = "" if len(self._entries) <= 4 else f", ... ({len(self._entries)} entries)"
        return f"SparseFunction(dim={self.dim}, {{{shown}{more}}})"


class LatticeSet:
    """A finite subset of Z^n."""

    __slots__ = ("dim", "points")

    def __init__(self, dim: int, points: Iterable = ()):
        self.dim = _check_dim(dim)
        pts = set()
        for z in points:
            pts.add(_check_point(self.dim, tuple(z)))
        self.points = frozenset(pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.sorted_points())

    def __contains__(self, z) -> bool:
        return z in self.points

    def __eq__(self, other):
        if not isinstance(other, LatticeSet):
            return NotImplemented
        return self.dim == other.dim and self.points == other.points

    def __hash__(self):
        return hash((self.dim, self.points))

    def sorted_points(self) -> list:
        return sorted(self.points)

    def translate(self, shift: Point) -> "LatticeSet":
        shift = _check_point(self.dim, tuple(shift))
        return LatticeSet(
            self.dim, (tuple(a + b for a, b in zip(z, shift)) for z in self.points)
        )

    def bounding_intervals(self) -> list:
        """Per-axis (min, max) over the points; empty set -> error."""
        if not self.points:
            raise DegenerateInputError("empty set has no bounding box")
        lo = [min(z[ax] for z in self.points) for ax in range(self.dim)]
        hi = [max(z[ax] for z in self.points) for ax in range(self.dim)]
        return list(zip(lo, hi))

    def __repr__(self):
        return f"LatticeSet(dim={self.dim}, {len(self.points)} points)"


@dataclass(frozen=True)
class Cuboid:
    """Product of integer intervals prod_i [a_i, b_i]."""

    intervals: tuple

    def __post_init__(self):
        ivs = tuple(tuple(iv) for iv in self.intervals)
        if not ivs:
            raise InvalidInputError("cuboid needs at least one interval")
        for iv in ivs:
            if len(iv) != 2:
                raise InvalidInputError(f"interval {iv!r} must be an (a, b) pair")
            a, b = iv
            for c in (a, b):
                if not isinstance(c, int) or isinstance(c, bool):
                    raise InvalidInputError(f"interval {iv!r} has a non-integer endpoint")
            if a > b:
                raise InvalidInputError(f"empty interval [{a}, {b}] in cuboid")
        object.__setattr__(self, "intervals", ivs)

    @classmethod
    def from_sides(cls, sides: Iterable[int], origin: Optional[Point] = None) -> "Cuboid":
        sides = tuple(sides)
        if origin is None:
            origin = (0,) * len(sides)
        if any(s < 1 for s in sides):
            raise InvalidInputError(f"cuboid sides must be >= 1, got {sides}")
        return cls(tuple((o, o + s - 1) for o, s in zip(origin, sides)))

    @property
    def dim(self) -> int:
        return len(self.intervals)

    def sides(self) -> tuple:
        return tuple(b - a + 1 for a, b in self.intervals)

    @property
    def is_cube(self) -> bool:
        sides = self.sides()
        return all(s == sides[0] for s in sides)

    def size(self) -> int:
        return math.prod(self.sides())

    def points(self) -> LatticeSet:
        def gen(ivs):
            if not ivs:
                yield ()
                return
            (a, b), rest = ivs[0], ivs[1:]
            for tail in gen(rest):
                for c in range(a, b + 1):
                    yield (c,) + tail

        return LatticeSet(self.dim, gen(self.intervals))


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def indicator(region: Union[LatticeSet, Cuboid], scale: Rational = 1) -> SparseFunction:
    """The function equal to `scale` on the region and 0 elsewhere."""
    if isinstance(region, Cuboid):
        region = region.points()
    lam = as_fraction(scale)
    if not lam:
        raise InvalidInputError("indicator scale must be nonzero")
    if not region.points:
        raise DegenerateInputError("indicator of the empty set")
    return SparseFunction._from_clean(region.dim, {z: lam for z in region.points})


def partial_difference(f: SparseFunction, i: int) -> SparseFunction:
    """Forward difference along axis i: g(z) = f(z + e_i) - f(z).

    Results are cached on `f` per axis.
    """
    ax = _check_axis(f.dim, i)
    g = f._diffs.get(ax)
    if g is None:
        acc: dict = {}
        for z, v in f._entries.items():
            zm = z[:ax] + (z[ax] - 1,) + z[ax + 1:]
            w = acc.get(zm, ZERO) + v
            if w:
                acc[zm] = w
            else:
                del acc[zm]
            w = acc.get(z, ZERO) - v
            if w:
                acc[z] = w
            else:
                del acc[z]
        g = SparseFunction._from_clean(f.dim, acc)
        f._diffs[ax] = g
    return g


def axis_variation(f: SparseFunction, i: int) -> Fraction:
    """Exact 1-norm of the forward difference along axis i (cached)."""
    ax = _check_axis(f.dim, i)
    sigma = f._sigmas.get(ax)
    if sigma is None:
        g = partial_difference(f, i)
        sigma = sum((abs(v) for v in g._entries.values()), ZERO)
        f._sigmas[ax] = sigma
    return sigma


def norm(f: SparseFunction, p) -> Union[Fraction, float]:
    """p-norm (sum of |f|^p) ** (1/p) under the counting measure.

    Exact (Fraction) for p = 1; float track otherwise.  The zero function has
    norm 0.
    """
    q = _check_exponent(p)
    if f.is_zero():
        return ZERO if q == 1 else 0.0
    if q == 1:
        return sum((abs(v) for v in f._entries.values()), ZERO)
    pf = float(q)
    total = 0.0
    for v in f._entries.values():
        total += float(abs(v)) ** pf
    return total ** (1.0 / pf)


def diff_norm(f: SparseFunction, p) -> Union[Fraction, float]:
    """(sum_i ||forward difference along axis i||_p^p) ** (1/p).

    Exact for p = 1, where it equals the total variation over lattice edges.
    """
    q = _check_exponent(p)
    if q == 1:
        return sum((axis_variation(f, i) for i in range(1, f.dim + 1)), ZERO)
    pf = float(q)
    total = 0.0
    for i in range(1, f.dim + 1):
        g = partial_difference(f, i)
        for v in g._entries.values():
            total += float(abs(v)) ** pf
    return total ** (1.0 / pf) if total else 0.0


def max_projection(f: SparseFunction, i: int) -> SparseFunction:
    """Drop coordinate i and take the maximum of f over the dropped axis.

    Defined for nonnegative f on Z^n with n >= 2; the result lives on
    Z^(n-1) and is supported on the drop-axis image of supp f.
    """
    if f.dim < 2:
        raise InvalidInputError("max projection needs ambient dimension >= 2")
    ax = _check_axis(f.dim, i)
    cached = f._projs.get(ax)
    if cached is not None:
        return cached
    out: dict = {}
    for z, v in f._entries.items():
        if v < 0:
            raise DomainError("max projection requires a nonnegative function")
        key = _drop(z, ax)
        if v > out.get(key, ZERO):
            out[key] = v
    g = SparseFunction._from_clean(f.dim - 1, out)
    f._projs[ax] = g
    return g


def coord_projection(A: LatticeSet, i: int) -> frozenset:
    """The set of i-th coordinates of points of A."""
    ax = _check_axis(A.dim, i)
    return frozenset(z[ax] for z in A.points)


def shadow_projection(A: LatticeSet, i: int) -> frozenset:
    """Image of A under dropping coordinate i (a set of (n-1)-tuples)."""
    ax = _check_axis(A.dim, i)
    return frozenset(_drop(z, ax) for z in A.points)


def boundary_edges(A: LatticeSet) -> list:
    """Lattice edges with exactly one endpoint in A, as (inside, outside) pairs."""
    edges = []
    pts = A.points
    for z in A.sorted_points():
        for ax in range(A.dim):
            for step in (-1, 1):
                nb = z[:ax] + (z[ax] + step,) + z[ax + 1:]
                if nb not in pts:
                    edges.append((z, nb))
    return edges


def boundary_count(A: LatticeSet) -> int:
    """Number of lattice edges with exactly one endpoint in A.

    Equals the exact 1-norm of the differential of the indicator of A.
    """
    count = 0
    pts = A.points
    for z in pts:
        for ax in range(A.dim):
            lo = z[:ax] + (z[ax] - 1,) + z[ax + 1:]
            hi = z[:ax] + (z[ax] + 1,) + z[ax + 1:]
            count += (lo not in pts) + (hi not in pts)
    return count


def entropy(f: SparseFunction, p) -> float:
    """sum over supp f of f^p * log(f^p), float track.

    The sum runs over the support only, so 0·log 0 never arises.  Requires a
    nonnegative function.
    """
    q = _check_exponent(p)
    pf = float(q)
    total = 0.0
    for _, v in f.items():
        if v < 0:
            raise DomainError("entropy requires a nonnegative function")
        x = float(v)
        total += pf * (x ** pf) * math.log(x)
    return total


@dataclass(frozen=True)
class LineBoundCheck:
    """Outcome of the per-line bound max |f| <= (1/2) * variation along a line.

    `worst_line` is the (n-1)-tuple of untouched coordinates of the line with
    the smallest margin; all quantities are exact rationals.
    """

    ok: bool
    axis: int
    lines_checked: int
    worst_line: Optional[Point]
    worst_max: Fraction
    worst_half_variation: Fraction

    @property
    def margin(self) -> Fraction:
        return self.worst_half_variation - self.worst_max


def pointwise_line_bound(f: SparseFunction, i: int) -> LineBoundCheck:
    """Verify, on every line parallel to axis i meeting supp f, that the
    maximum of |f| is at most half the 1-variation of f along the line.

    Exact rational arithmetic; lines not meeting the support are skipped.
    """
    ax = _check_axis(f.dim, i)
    maxima: dict = {}
    for z, v in f._entries.items():
        key = _drop(z, ax)
        a = abs(v)
        if a > maxima.get(key, ZERO):
            maxima[key] = a
    variation: dict = {}
    for z, v in partial_difference(f, i)._entries.items():
        key = _drop(z, ax)
        variation[key] = variation.get(key, ZERO) + abs(v)

    ok = True
    worst_key = None
    worst_max = ZERO
    worst_half = ZERO
    worst_margin = None
    for key in sorted(maxima):
        half = HALF * variation.get(key, ZERO)
        margin = half - maxima[key]
        if margin < 0:
            ok = False
        if worst_margin is None or margin < worst_margin:
            worst_margin = margin
            worst_key = key
            worst_max = maxima[key]
            worst_half = half
    return LineBoundCheck(
        ok=ok,
        axis=i,
        lines_checked=len(maxima),
        worst_line=worst_key,
        worst_max=worst_max,
        worst_half_variation=worst_half,
    )
