# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid kernels: subset statistics on <=64-cell boxes.

Same contract as the pure backend, restricted to bitmasks that fit a single
64-bit word.  Shadows and 1-D projections are accumulated as bitsets, which
also fit in a word because their index spaces divide the cell count.
"""

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

DEF MAX_AXES = 8


def subset_stats(unsigned long long mask, tuple dims):
    cdef int n = len(dims)
    if n < 1 or n > MAX_AXES:
        raise ValueError(f"dims must have 1..{MAX_AXES} axes")
    cdef long long d[MAX_AXES]
    cdef long long st[MAX_AXES]
    cdef long long runs[MAX_AXES]
    cdef long long pmin[MAX_AXES]
    cdef long long pmax[MAX_AXES]
    cdef unsigned long long projbits[MAX_AXES]
    cdef unsigned long long shadowbits[MAX_AXES]
    cdef long long total = 1
    cdef int ax
    for ax in range(n):
        d[ax] = dims[ax]
        if d[ax] < 1:
            raise ValueError("box sides must be >= 1")
        st[ax] = total
        total *= d[ax]
        runs[ax] = 0
        pmin[ax] = 0
        pmax[ax] = 0
        projbits[ax] = 0
        shadowbits[ax] = 0
    if total > 64:
        raise ValueError("compiled kernel handles at most 64 cells")

    cdef long long idx, rem, c, low, high, sidx, size = 0
    cdef bint first = 1
    for idx in range(total):
        if not (mask >> idx) & 1:
            continue
        size += 1
        rem = idx
        for ax in range(n):
            c = rem % d[ax]
            rem //= d[ax]
            if first:
                pmin[ax] = c
                pmax[ax] = c
            else:
                if c < pmin[ax]:
                    pmin[ax] = c
                if c > pmax[ax]:
                    pmax[ax] = c
            projbits[ax] |= 1ULL << c
            # index of the cell with coordinate ax removed
            low = idx % st[ax]
            high = idx / (st[ax] * d[ax])
            sidx = low + st[ax] * high
            shadowbits[ax] |= 1ULL << sidx
            if c == 0 or not (mask >> (idx - st[ax])) & 1:
                runs[ax] += 1
        first = 0

    if size == 0:
        return (
            0,
            (0,) * n,
            (0,) * n,
            (0,) * n,
            (0,) * n,
            (0,) * n,
        )
    return (
        size,
        tuple(2 * runs[ax] for ax in range(n)),
        tuple(__builtin_popcountll(projbits[ax]) for ax in range(n)),
        tuple(pmin[ax] for ax in range(n)),
        tuple(pmax[ax] for ax in range(n)),
        tuple(__builtin_popcountll(shadowbits[ax]) for ax in range(n)),
    )


def subset_boundary(unsigned long long mask, tuple dims):
    cdef int n = len(dims)
    if n < 1 or n > MAX_AXES:
        raise ValueError(f"dims must have 1..{MAX_AXES} axes")
    cdef long long d[MAX_AXES]
    cdef long long st[MAX_AXES]
    cdef long long total = 1
    cdef int ax
    for ax in range(n):
        d[ax] = dims[ax]
        if d[ax] < 1:
            raise ValueError("box sides must be >= 1")
        st[ax] = total
        total *= d[ax]
    if total > 64:
        raise ValueError("compiled kernel handles at most 64 cells")

    cdef long long idx, rem, c, runs = 0
    for idx in range(total):
        if not (mask >> idx) & 1:
            continue
        rem = idx
        for ax in range(n):
            c = rem % d[ax]
            rem //= d[ax]
            if c == 0 or not (mask >> (idx - st[ax])) & 1:
                runs += 1
    return 2 * runs
