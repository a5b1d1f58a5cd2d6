"""Dense linear algebra over Z/p, p prime, on flat row-major tuples.

Used for two fast paths: seeding Newton inversion with the residue inverse,
and the Fitting projector of the regularity module.  Everything is exact
and deterministic; pivots are always the first usable row/column.
"""

from __future__ import annotations

from adicclean._kernels import mat_mul


def _rref(rows, width, p):
    """Row-reduce in place; returns (rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(width):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(mat, k, p):
    _, pivots = _rref([mat[i * k:(i + 1) * k] for i in range(k)], k, p)
    return len(pivots)


def inverse(mat, k, p):
    """Inverse of mat, or None if singular (Gauss-Jordan on [mat | I])."""
    aug = [list(mat[i * k:(i + 1) * k]) + [1 if j == i else 0 for j in range(k)]
           for i in range(k)]
    rows, pivots = _rref(aug, k, p)
    if len(pivots) < k:
        return None
    return tuple(rows[i][k + j] for i in range(k) for j in range(k))


def kernel_basis(mat, k, p):
    """Column vectors spanning ker(mat), from the reduced row echelon form."""
    rows, pivots = _rref([mat[i * k:(i + 1) * k] for i in range(k)], k, p)
    pivot_set = set(pivots)
    basis = []
    for free in range(k):
        if free in pivot_set:
            continue
        v = [0] * k
        v[free] = 1
        for r, c in enumerate(pivots):
            v[c] = -rows[r][free] % p
        basis.append(v)
    return basis


def image_basis(mat, k, p):
    """Independent columns of mat in first-pivot order (original columns kept)."""
    echelon = []  # list of (lead_index, reduced_vector)
    basis = []
    for j in range(k):
        col = [mat[i * k + j] % p for i in range(k)]
        red = list(col)
        for lead, vec in echelon:
            if red[lead]:
                f = red[lead]
                red = [(a - f * b) % p for a, b in zip(red, vec)]
        lead = next((i for i in range(k) if red[i]), None)
        if lead is None:
            continue
        inv = pow(red[lead], -1, p)
        echelon.append((lead, [(v * inv) % p for v in red]))
        basis.append(col)
    return basis


def fitting_projector(mat, k, p):
    """(z, n): n minimal with rank(mat^n) stable, z the projector onto
    ker(mat^n) along im(mat^n).  Requires p prime."""
    n = 1
    cur = mat
    cur_rank = rank(cur, k, p)
    while True:
        nxt = mat_mul(cur, mat, k, p)
        nxt_rank = rank(nxt, k, p)
        if nxt_rank == cur_rank:
            break
        cur, cur_rank = nxt, nxt_rank
        n += 1
    ker = kernel_basis(cur, k, p)
    im = image_basis(cur, k, p)
    cols = ker + im
    assert len(cols) == k, "kernel and image must be complementary once rank stabilizes"
    b = tuple(cols[j][i] for i in range(k) for j in range(k))
    b_inv = inverse(b, k, p)
    assert b_inv is not None
    proj = tuple((1 if (i == j and i < len(ker)) else 0) for i in range(k) for j in range(k))
    z = mat_mul(mat_mul(b, proj, k, p), b_inv, k, p)
    return z, n
