"""Exact matrices and exact linear algebra over the supported rings.

Everything reduces to integer column Hermite normal form with a
unimodular transform.  Systems over Z/n and F_p are lifted to Z by
adjoining n times an identity block, solved there, and reduced back;
generating sets of column spans over Z/n are canonicalized through the
Hermite form of the lifted span (which always contains n*Z^r).

The pivoting rule is fixed: rows are processed top to bottom, the
pivot is the gcd of the surviving entries in the row, pivots are
positive, and entries left of a pivot are reduced into [0, pivot).
All outputs are therefore deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .rings import RingDescriptor


class MatrixError(ValueError):
    """Dimension or ring mismatch."""


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


@dataclass(frozen=True)
class Mat:
    """An exact matrix over a fixed ring; entries row-major, canonical."""

    ring: RingDescriptor
    rows: int
    cols: int
    entries: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise MatrixError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise MatrixError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        norm = self.ring.normalize
        object.__setattr__(self, "entries", tuple(norm(e) for e in self.entries))

    # -- construction helpers ------------------------------------------

    @staticmethod
    def from_rows(ring: RingDescriptor, rows: list[list[int]]) -> "Mat":
        r = len(rows)
        c = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != c:
                raise MatrixError("ragged rows")
        return Mat(ring, r, c, tuple(x for row in rows for x in row))

    @staticmethod
    def zero(ring: RingDescriptor, rows: int, cols: int) -> "Mat":
        return Mat(ring, rows, cols, (0,) * (rows * cols))

    @staticmethod
    def identity(ring: RingDescriptor, n: int) -> "Mat":
        return Mat(ring, n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @staticmethod
    def column(ring: RingDescriptor, values: list[int]) -> "Mat":
        return Mat(ring, len(values), 1, tuple(values))

    @staticmethod
    def row_vector(ring: RingDescriptor, values: list[int]) -> "Mat":
        return Mat(ring, 1, len(values), tuple(values))

    # -- access --------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row_list(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c : (i + 1) * c]) for i in range(self.rows)]

    def col(self, j: int) -> "Mat":
        return Mat(self.ring, self.rows, 1, tuple(self[i, j] for i in range(self.rows)))

    def col_values(self, j: int) -> list[int]:
        return [self[i, j] for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    # -- arithmetic ----------------------------------------------------

    def _check_same_ring(self, other: "Mat"):
        if self.ring != other.ring:
            raise MatrixError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise MatrixError("shape mismatch in addition")
        return Mat(self.ring, self.rows, self.cols,
                   tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def __neg__(self) -> "Mat":
        return Mat(self.ring, self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c: int) -> "Mat":
        return Mat(self.ring, self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check_same_ring(other)
        if self.cols != other.rows:
            raise MatrixError(
                f"shape mismatch in product: {self.rows}x{self.cols} @ {other.rows}x{other.cols}"
            )
        a, b = self.entries, other.entries
        n, m, k = self.rows, other.cols, self.cols
        out = [0] * (n * m)
        for i in range(n):
            base = i * k
            for l in range(k):
                coeff = a[base + l]
                if coeff:
                    brow = l * m
                    orow = i * m
                    for j in range(m):
                        out[orow + j] += coeff * b[brow + j]
        return Mat(self.ring, n, m, tuple(out))

    def transpose(self) -> "Mat":
        return Mat(self.ring, self.cols, self.rows,
                   tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    # -- assembly ------------------------------------------------------

    def hstack(self, other: "Mat") -> "Mat":
        self._check_same_ring(other)
        if self.rows != other.rows:
            raise MatrixError("row count mismatch in hstack")
        rows = []
        for i in range(self.rows):
            rows.append(list(self.entries[i * self.cols : (i + 1) * self.cols])
                        + list(other.entries[i * other.cols : (i + 1) * other.cols]))
        return Mat.from_rows(self.ring, rows) if rows else Mat(self.ring, 0, self.cols + other.cols)

    def vstack(self, other: "Mat") -> "Mat":
        self._check_same_ring(other)
        if self.cols != other.cols:
            raise MatrixError("column count mismatch in vstack")
        return Mat(self.ring, self.rows + other.rows, self.cols, self.entries + other.entries)

    def submatrix(self, row_range: range, col_range: range) -> "Mat":
        ent = tuple(self[i, j] for i in row_range for j in col_range)
        return Mat(self.ring, len(row_range), len(col_range), ent)

    def kron(self, other: "Mat") -> "Mat":
        """Kronecker product; vec(A X B) = kron(B^T, A) vec(X), vec column-major."""
        self._check_same_ring(other)
        r = self.rows * other.rows
        c = self.cols * other.cols
        ent = [0] * (r * c)
        for i1 in range(self.rows):
            for j1 in range(self.cols):
                a = self[i1, j1]
                if a == 0:
                    continue
                for i2 in range(other.rows):
                    for j2 in range(other.cols):
                        ent[(i1 * other.rows + i2) * c + (j1 * other.cols + j2)] = a * other[i2, j2]
        return Mat(self.ring, r, c, tuple(ent))

    def vec(self) -> "Mat":
        """Column-major vectorization as a column."""
        vals = [self[i, j] for j in range(self.cols) for i in range(self.rows)]
        return Mat.column(self.ring, vals)

    @staticmethod
    def unvec(ring: RingDescriptor, v: "Mat", rows: int, cols: int) -> "Mat":
        if v.rows != rows * cols or v.cols != 1:
            raise MatrixError("unvec shape mismatch")
        ent = tuple(v.entries[j * rows + i] for i in range(rows) for j in range(cols))
        return Mat(ring, rows, cols, ent)

    def __str__(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return f"<{self.rows}x{self.cols} empty>"
        return "\n".join(" ".join(str(self[i, j]) for j in range(self.cols))
                         for i in range(self.rows))


def block_diag(ring: RingDescriptor, blocks: list[Mat]) -> Mat:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    ent = [0] * (rows * cols)
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                ent[(r0 + i) * cols + (c0 + j)] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return Mat(ring, rows, cols, tuple(ent))


def assemble_blocks(ring: RingDescriptor, grid: list[list[Mat | None]],
                    row_sizes: list[int], col_sizes: list[int]) -> Mat:
    """Assemble a block matrix; None blocks are zero."""
    rows = sum(row_sizes)
    cols = sum(col_sizes)
    ent = [0] * (rows * cols)
    r0 = 0
    for bi, rs in enumerate(row_sizes):
        c0 = 0
        for bj, cs in enumerate(col_sizes):
            blk = grid[bi][bj]
            if blk is not None:
                if blk.rows != rs or blk.cols != cs:
                    raise MatrixError("block size mismatch")
                for i in range(rs):
                    for j in range(cs):
                        ent[(r0 + i) * cols + (c0 + j)] = blk[i, j]
            c0 += cs
        r0 += rs
    return Mat(ring, rows, cols, tuple(ent))


# -- integer Hermite normal form --------------------------------------


def _col_hnf(rows: int, cols: int, a: list[list[int]]):
    """Column-style HNF: returns (H, U, pivots) with A*U = H, U unimodular.

    H is in column echelon form with positive pivots at strictly
    increasing rows; entries left of a pivot lie in [0, pivot).
    pivots is the list of (row, col) pivot positions.
    """
    H = [row.copy() for row in a]
    U = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
    pivots: list[tuple[int, int]] = []
    pc = 0  # next pivot column

    def col_axpy(dst: int, src: int, q: int):
        # column dst += q * column src
        for row in H:
            row[dst] += q * row[src]
        for row in U:
            row[dst] += q * row[src]

    def col_swap(j1: int, j2: int):
        for row in H:
            row[j1], row[j2] = row[j2], row[j1]
        for row in U:
            row[j1], row[j2] = row[j2], row[j1]

    def col_combine(j1: int, j2: int, r: int):
        # Replace (col j1, col j2) so that H[r][j1] = gcd, H[r][j2] = 0.
        aa, bb = H[r][j1], H[r][j2]
        if bb == 0:
            return
        if aa == 0:
            col_swap(j1, j2)
            return
        if bb % aa == 0:
            col_axpy(j2, j1, -(bb // aa))
            return
        x, y, g = _xgcd(aa, bb)
        ag, bg = aa // g, bb // g
        for M in (H, U):
            for row in M:
                v1, v2 = row[j1], row[j2]
                row[j1] = x * v1 + y * v2
                row[j2] = -bg * v1 + ag * v2

    for r in range(rows):
        j0 = None
        for j in range(pc, cols):
            if H[r][j] != 0:
                j0 = j
                break
        if j0 is None:
            continue
        if j0 != pc:
            col_swap(pc, j0)
        for j in range(pc + 1, cols):
            col_combine(pc, j, r)
        if H[r][pc] < 0:
            for row in H:
                row[pc] = -row[pc]
            for row in U:
                row[pc] = -row[pc]
        g = H[r][pc]
        for j in range(pc):
            q = H[r][j] // g
            if q:
                col_axpy(j, pc, -q)
        pivots.append((r, pc))
        pc += 1
        if pc == cols:
            break
    return H, U, pivots


def _lift(m: Mat) -> tuple[int, int, list[list[int]]]:
    return m.rows, m.cols, m.row_list()


def _solve_right_int(A_rows: list[list[int]], rows: int, cols: int,
                     b_cols: list[list[int]]):
    """Solve A X = B over Z columnwise; returns list of solution columns or None."""
    H, U, pivots = _col_hnf(rows, cols, A_rows)
    sols = []
    for b in b_cols:
        resid = b.copy()
        y = [0] * cols
        ok = True
        for (pr, pcj) in pivots:
            g = H[pr][pcj]
            if resid[pr] % g != 0:
                ok = False
                break
            q = resid[pr] // g
            y[pcj] = q
            if q:
                for i in range(pr, rows):
                    resid[i] -= q * H[i][pcj]
        if not ok or any(resid):
            return None
        x = [sum(U[i][j] * y[j] for j in range(cols)) for i in range(cols)]
        sols.append(x)
    return sols


def _kernel_int(A_rows: list[list[int]], rows: int, cols: int) -> list[list[int]]:
    """Basis of the integer right kernel, as a list of columns."""
    _, U, pivots = _col_hnf(rows, cols, A_rows)
    rank = len(pivots)
    out = []
    for j in range(rank, cols):
        col = [U[i][j] for i in range(cols)]
        lead = next((v for v in col if v != 0), 0)
        if lead < 0:
            col = [-v for v in col]
        out.append(col)
    return out


def colspan_canonical(m: Mat) -> Mat:
    """Canonical generating set of the column span, as a matrix.

    Over Z this is the nonzero part of the column HNF (a basis).  Over
    Z/n it is computed from the Hermite form of the lifted span, which
    contains n*Z^rows; the result has at most `rows` columns and is a
    deterministic, usually minimal, generating set.
    """
    n = m.ring.modulus
    work = m.row_list()
    cols = m.cols
    if n is not None:
        # append n*I columns: the lifted span always contains n*Z^rows
        for j in range(m.rows):
            for i in range(m.rows):
                work[i].append(n if i == j else 0)
        cols = m.cols + m.rows
    H, _, pivots = _col_hnf(m.rows, cols, work)
    keep = []
    for (_, pc) in pivots:
        col = [H[i][pc] for i in range(m.rows)]
        col = [m.ring.normalize(v) for v in col]
        if any(col):
            keep.append(col)
    ent = tuple(keep[j][i] for i in range(m.rows) for j in range(len(keep)))
    return Mat(m.ring, m.rows, len(keep), ent)


# -- public solving interface -----------------------------------------


def solve_right(A: Mat, B: Mat) -> Mat | None:
    """Some X with A @ X = B exactly, or None; deterministic."""
    A._check_same_ring(B)
    if A.rows != B.rows:
        raise MatrixError("solve_right: row count mismatch")
    n = A.ring.modulus
    b_cols = [B.col_values(j) for j in range(B.cols)]
    if n is None:
        sols = _solve_right_int(A.row_list(), A.rows, A.cols, b_cols)
        if sols is None:
            return None
        ent = tuple(sols[j][i] for i in range(A.cols) for j in range(B.cols))
        return Mat(A.ring, A.cols, B.cols, ent)
    # lift: solve [A | n*I] X' = B over Z, keep the first block mod n
    work = A.row_list()
    for i in range(A.rows):
        for j in range(A.rows):
            work[i].append(n if i == j else 0)
    sols = _solve_right_int(work, A.rows, A.cols + A.rows, b_cols)
    if sols is None:
        return None
    ent = tuple(sols[j][i] for i in range(A.cols) for j in range(B.cols))
    return Mat(A.ring, A.cols, B.cols, ent)


def solve_left(A: Mat, B: Mat) -> Mat | None:
    """Some X with X @ A = B exactly, or None."""
    xt = solve_right(A.transpose(), B.transpose())
    return None if xt is None else xt.transpose()


def solve_side(A: Mat, B: Mat, side: str) -> Mat | None:
    if side == "right":
        return solve_right(A, B)
    if side == "left":
        return solve_left(A, B)
    raise MatrixError(f"side must be 'left' or 'right', got {side!r}")


def kernel_right(A: Mat) -> Mat:
    """Matrix whose columns generate {x : A x = 0}; may have 0 columns.

    Over Z the columns are a basis; over Z/n and F_p they are a
    canonical generating set (a basis over F_p).
    """
    n = A.ring.modulus
    if n is None:
        cols = _kernel_int(A.row_list(), A.rows, A.cols)
        ent = tuple(cols[j][i] for i in range(A.cols) for j in range(len(cols)))
        return Mat(A.ring, A.cols, len(cols), ent)
    work = A.row_list()
    for i in range(A.rows):
        for j in range(A.rows):
            work[i].append(n if i == j else 0)
    cols = _kernel_int(work, A.rows, A.cols + A.rows)
    proj = []
    for col in cols:
        head = [A.ring.normalize(v) for v in col[: A.cols]]
        if any(head):
            proj.append(head)
    ent = tuple(proj[j][i] for i in range(A.cols) for j in range(len(proj)))
    raw = Mat(A.ring, A.cols, len(proj), ent)
    return colspan_canonical(raw)


def kernel_left(A: Mat) -> Mat:
    """Matrix whose rows generate {x : x A = 0}; may have 0 rows."""
    return kernel_right(A.transpose()).transpose()


def kernel_side(A: Mat, side: str) -> Mat:
    if side == "right":
        return kernel_right(A)
    if side == "left":
        return kernel_left(A)
    raise MatrixError(f"side must be 'left' or 'right', got {side!r}")


def inverse(A: Mat) -> Mat | None:
    """Two-sided inverse of a square matrix, or None."""
    if A.rows != A.cols:
        return None
    X = solve_right(A, Mat.identity(A.ring, A.rows))
    if X is None:
        return None
    if (X @ A) != Mat.identity(A.ring, A.rows):
        return None
    return X


def is_invertible(A: Mat) -> bool:
    return inverse(A) is not None


def smith_invariants(A: Mat) -> list[int]:
    """Full diagonal d_1 | d_2 | ... of the Smith form of an integer matrix.

    The length of the list is the rank of A; trivial factors 1 are kept.
    Only defined over Z; callers over Z/n lift and adjoin n*I themselves.
    """
    if A.ring.modulus is not None:
        raise MatrixError("smith_invariants is an integer-matrix primitive")
    import math

    M = [row.copy() for row in A.row_list()]
    rows, cols = A.rows, A.cols
    diag: list[int] = []
    r0 = c0 = 0
    while r0 < rows and c0 < cols:
        piv = None
        best = None
        for i in range(r0, rows):
            for j in range(c0, cols):
                v = abs(M[i][j])
                if v and (best is None or v < best):
                    best, piv = v, (i, j)
        if piv is None:
            break
        while True:
            i0, j0 = piv
            M[r0], M[i0] = M[i0], M[r0]
            for row in M:
                row[c0], row[j0] = row[j0], row[c0]
            # division-with-remainder sweeps until row/column are clear
            dirty = False
            for i in range(r0 + 1, rows):
                if M[i][c0]:
                    q = M[i][c0] // M[r0][c0]
                    for j in range(c0, cols):
                        M[i][j] -= q * M[r0][j]
                    if M[i][c0]:
                        dirty = True
            for j in range(c0 + 1, cols):
                if M[r0][j]:
                    q = M[r0][j] // M[r0][c0]
                    for i in range(r0, rows):
                        M[i][j] -= q * M[i][c0]
                    if M[r0][j]:
                        dirty = True
            piv = None
            best = None
            for i in range(r0, rows):
                for j in range(c0, cols):
                    v = abs(M[i][j])
                    if v and (best is None or v < best):
                        best, piv = v, (i, j)
            if not dirty and piv is not None and piv == (r0, c0):
                d = abs(M[r0][c0])
                # fold in any entry not divisible by the pivot
                bad = None
                for i in range(r0 + 1, rows):
                    for j in range(c0 + 1, cols):
                        if M[i][j] % d != 0:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                for j in range(c0, cols):
                    M[r0][j] += M[bad][j]
                piv = (r0, c0)
        diag.append(abs(M[r0][c0]))
        r0 += 1
        c0 += 1
    # enforce the divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            a, b = diag[i], diag[i + 1]
            if b % a != 0:
                g = math.gcd(a, b)
                diag[i], diag[i + 1] = g, a * b // g
                changed = True
    return diag
