"""Hot-loop arithmetic on flat modular matrices.

A k x k matrix over Z/m is a row-major tuple of k*k ints in [0, m).  These
four operations are the inner loop of everything in this package (finite
matrix rings, p-adic matrix arithmetic, coefficient arithmetic of skew
series over matrix bases, oracle sweeps), so a compiled Cython core is used
when it was built; otherwise the pure-Python bodies below are used.  Both
produce identical tuples.

The compiled core works in C int64 and is only engaged when k*(m-1)^2 fits
in int64 and k is small; larger moduli silently take the arbitrary
precision pure path.
"""

from __future__ import annotations

try:
    from adicclean import _fastkernels as _compiled
except ImportError:  # extension not built; pure fallback
    _compiled = None

_INT64_MAX = (1 << 63) - 1
_MAX_COMPILED_K = 16

_backend = "compiled" if _compiled is not None else "pure"


def available_backends():
    return ("pure", "compiled") if _compiled is not None else ("pure",)


def get_backend():
    return _backend


def set_backend(name):
    """Force a backend ("pure" or "compiled"); used by tests and benchmarks."""
    global _backend
    if name not in available_backends():
        raise ValueError(f"backend {name!r} not available (have {available_backends()})")
    _backend = name


def _fits_compiled(k, m):
    return k <= _MAX_COMPILED_K and k * (m - 1) * (m - 1) <= _INT64_MAX


def mat_add(a, b, m):
    if _backend == "compiled" and _fits_compiled(1, m):
        return _compiled.mat_add(a, b, m)
    return tuple((x + y) % m for x, y in zip(a, b))


def mat_sub(a, b, m):
    if _backend == "compiled" and _fits_compiled(1, m):
        return _compiled.mat_sub(a, b, m)
    return tuple((x - y) % m for x, y in zip(a, b))


def mat_neg(a, m):
    if _backend == "compiled" and _fits_compiled(1, m):
        return _compiled.mat_neg(a, m)
    return tuple(-x % m for x in a)


def mat_mul(a, b, k, m):
    if _backend == "compiled" and _fits_compiled(k, m):
        return _compiled.mat_mul(a, b, k, m)
    out = []
    for i in range(k):
        row = a[i * k:(i + 1) * k]
        for j in range(k):
            s = 0
            for t in range(k):
                s += row[t] * b[t * k + j]
            out.append(s % m)
    return tuple(out)
