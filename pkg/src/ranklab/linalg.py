"""Dense linear algebra over finite fields.

Two toolkits live here: a generic Gaussian-elimination engine that works
over any field object exposing raw-value arithmetic (``zero``, ``one``,
``add``, ``sub``, ``mul``, ``inv``, ``neg``), and bit-packed GF(2) routines
where a matrix row is a Python int with bit ``j`` holding column ``j``.

Elimination order is fixed (scan columns left to right, pick the first
usable pivot row) so that "first nullspace basis vector" is deterministic.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple


# ---------------------------------------------------------------------------
# generic engine


def rref(F, mat: Sequence[Sequence], ncols: Optional[int] = None):
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    rows = [list(r) for r in mat]
    if not rows:
        return rows, []
    if ncols is None:
        ncols = len(rows[0])
    zero = F.zero
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c] != zero:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv_p = F.inv(rows[r][c])
        if inv_p != F.one:
            rows[r] = [F.mul(inv_p, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != zero:
                f = rows[i][c]
                row_r = rows[r]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(F, mat) -> int:
    return len(rref(F, mat)[1])


def nullspace(F, mat, ncols: Optional[int] = None) -> List[list]:
    """Basis of the right kernel {x : mat @ x = 0}, free columns ascending.

    Forward elimination plus back-substitution (cheaper than full RREF on
    the decoder-sized systems this gets called on).
    """
    if not mat:
        return []
    if ncols is None:
        ncols = len(mat[0])
    rows = [list(r) for r in mat]
    zero, one = F.zero, F.one
    mul, sub, inv = F.mul, F.sub, F.inv
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if rows[i][c] != zero:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv_p = inv(rows[r][c])
        if inv_p != one:
            rows[r] = [mul(inv_p, x) for x in rows[r]]
        row_r = rows[r]
        for i in range(r + 1, nrows):
            f = rows[i][c]
            if f != zero:
                rows[i] = [sub(x, mul(f, y)) for x, y in zip(rows[i], row_r)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [zero] * ncols
        vec[free] = one
        for r in range(len(pivots) - 1, -1, -1):
            p = pivots[r]
            if p > free:
                continue
            row = rows[r]
            acc = row[free] if free < ncols else zero
            for c2 in pivots[r + 1:]:
                if c2 > free:
                    break
                if row[c2] != zero and vec[c2] != zero:
                    acc = F.add(acc, mul(row[c2], vec[c2]))
            vec[p] = F.neg(acc)
        basis.append(vec)
    return basis


def solve_affine(F, mat, rhs) -> Tuple[Optional[list], List[list]]:
    """All solutions of mat @ x = rhs as (particular, kernel_basis).

    Returns (None, []) when the system is inconsistent.  The particular
    solution sets every free variable to zero.
    """
    if not mat:
        return [], []
    ncols = len(mat[0])
    aug = [list(row) + [b] for row, b in zip(mat, rhs)]
    rows, pivots = rref(F, aug, ncols)
    for row in rows[len(pivots):]:
        if row[ncols] != F.zero:
            return None, []
    sol = [F.zero] * ncols
    for r, p in enumerate(pivots):
        sol[p] = rows[r][ncols]
    kernel = nullspace(F, [row[:ncols] for row in rows[: len(pivots)]], ncols)
    return sol, kernel


def solve(F, mat, rhs) -> Optional[list]:
    sol, _ = solve_affine(F, mat, rhs)
    return sol


def inverse(F, mat) -> List[list]:
    """Inverse of a square matrix; raises ValueError when singular."""
    n = len(mat)
    aug = [list(row) + [F.one if i == j else F.zero for j in range(n)]
           for i, row in enumerate(mat)]
    rows, pivots = rref(F, aug, n)
    if len(pivots) != n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in rows]


def matvec(F, mat, vec) -> list:
    out = []
    for row in mat:
        acc = F.zero
        for a, x in zip(row, vec):
            if a != F.zero and x != F.zero:
                acc = F.add(acc, F.mul(a, x))
        out.append(acc)
    return out


def matmul(F, a, b) -> List[list]:
    bt = list(zip(*b))
    return [[_dot(F, row, col) for col in bt] for row in a]


def _dot(F, u, v):
    acc = F.zero
    for a, x in zip(u, v):
        if a != F.zero and x != F.zero:
            acc = F.add(acc, F.mul(a, x))
    return acc


# ---------------------------------------------------------------------------
# bit-packed GF(2): rows are ints, bit j = column j


def gf2_rref(rows: Sequence[int], ncols: int) -> Tuple[List[int], List[int]]:
    """RREF of a packed GF(2) matrix.  Returns (rows, pivot_columns)."""
    work = list(rows)
    pivots = []
    r = 0
    nrows = len(work)
    for c in range(ncols):
        bit = 1 << c
        pivot = None
        for i in range(r, nrows):
            if work[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        row_r = work[r]
        for i in range(nrows):
            if i != r and work[i] & bit:
                work[i] ^= row_r
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return work, pivots


def gf2_rank(rows: Sequence[int], ncols: int) -> int:
    work = list(rows)
    rank_ = 0
    nrows = len(work)
    for c in range(ncols):
        bit = 1 << c
        pivot = None
        for i in range(rank_, nrows):
            if work[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        work[rank_], work[pivot] = work[pivot], work[rank_]
        row_r = work[rank_]
        for i in range(rank_ + 1, nrows):
            if work[i] & bit:
                work[i] ^= row_r
        rank_ += 1
        if rank_ == nrows:
            break
    return rank_


def gf2_nullspace(rows: Sequence[int], ncols: int) -> List[int]:
    """Kernel basis of a packed GF(2) matrix, free columns ascending."""
    red, pivots = gf2_rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = 1 << free
        fbit = 1 << free
        for r, p in enumerate(pivots):
            if red[r] & fbit:
                vec |= 1 << p
        basis.append(vec)
    return basis


def gf2_solve_affine(rows: Sequence[int], ncols: int,
                     rhs: Sequence[int]) -> Tuple[Optional[int], List[int]]:
    """Solutions of A x = b over GF(2), packed.  rhs holds one bit per row."""
    aug = [row | (b & 1) << ncols for row, b in zip(rows, rhs)]
    red, pivots = gf2_rref(aug, ncols)
    rhs_bit = 1 << ncols
    for row in red[len(pivots):]:
        if row & rhs_bit:
            return None, []
    sol = 0
    for r, p in enumerate(pivots):
        if red[r] & rhs_bit:
            sol |= 1 << p
    kernel = gf2_nullspace([row & (rhs_bit - 1) for row in red[: len(pivots)]], ncols)
    return sol, kernel


def gf2_inverse(rows: Sequence[int], n: int) -> List[int]:
    """Inverse of an n x n packed GF(2) matrix; ValueError when singular."""
    aug = [row | (1 << (n + i)) for i, row in enumerate(rows)]
    red, pivots = gf2_rref(aug, n)
    if len(pivots) != n:
        raise ValueError("matrix is singular")
    return [row >> n for row in red]


def gf2_transpose(rows: Sequence[int], ncols: int) -> List[int]:
    cols = [0] * ncols
    for i, row in enumerate(rows):
        bit = 1 << i
        while row:
            lsb = row & -row
            cols[lsb.bit_length() - 1] |= bit
            row ^= lsb
    return cols


def gf2_matvec(rows: Sequence[int], vec: int) -> int:
    out = 0
    for i, row in enumerate(rows):
        if (row & vec).bit_count() & 1:
            out |= 1 << i
    return out
