"""Exact dense linear algebra over GF(p), the rationals, and the integers.

A morphism n -> m is stored as an m-by-n matrix; diagrammatic composition
"first A, then B" is the matrix product B*A.  Field computations run on
reduced row echelon forms; integer computations run on a Smith normal form
engine that tracks the unimodular transforms and their inverses, so
saturations, kernels and exact solves never leave the integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import RingMismatch, TypeMismatch
from .exactnum import QQ, ZZ, Ring


class ExactMatrix(NamedTuple):
    ring: Ring
    rows: int
    cols: int
    entries: tuple[tuple, ...]  # tuple of row tuples

    @property
    def dom(self) -> int:
        return self.cols

    @property
    def cod(self) -> int:
        return self.rows

    def at(self, i: int, j: int):
        return self.entries[i][j]


def mat(ring: Ring, rows: int, cols: int, entries) -> ExactMatrix:
    """Validated constructor; coerces every entry into the ring."""
    table = tuple(tuple(ring.coerce(v) for v in row) for row in entries)
    if len(table) != rows or any(len(row) != cols for row in table):
        raise TypeMismatch(f"entries do not form a {rows}x{cols} matrix")
    return ExactMatrix(ring, rows, cols, table)


def mat_identity(ring: Ring, n: int) -> ExactMatrix:
    one, zero = ring.one, ring.zero
    return ExactMatrix(
        ring, n, n, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
    )


def mat_zero(ring: Ring, rows: int, cols: int) -> ExactMatrix:
    zero = ring.zero
    return ExactMatrix(ring, rows, cols, tuple((zero,) * cols for _ in range(rows)))


def _require_same_ring(a: ExactMatrix, b: ExactMatrix) -> None:
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring.name} vs {b.ring.name}")


def mat_mul(x: ExactMatrix, y: ExactMatrix) -> ExactMatrix:
    """Raw matrix product x*y."""
    _require_same_ring(x, y)
    if x.cols != y.rows:
        raise TypeMismatch(f"cannot multiply {x.rows}x{x.cols} by {y.rows}x{y.cols}")
    ring = x.ring
    add, mul, zero = ring.add, ring.mul, ring.zero
    if y.rows == 0:
        ycols = [()] * y.cols
    else:
        ycols = list(zip(*y.entries))
    out = []
    for row in x.entries:
        out_row = []
        for col in ycols:
            acc = zero
            for a, b in zip(row, col):
                acc = add(acc, mul(a, b))
            out_row.append(acc)
        out.append(tuple(out_row))
    return ExactMatrix(ring, x.rows, y.cols, tuple(out))


def mat_compose(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Diagrammatic composite: first a: n -> z, then b: z -> m, i.e. b*a."""
    _require_same_ring(a, b)
    if a.rows != b.cols:
        raise TypeMismatch(f"cod {a.rows} != dom {b.cols}")
    return mat_mul(b, a)


def mat_tensor(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Direct sum diag(a, b)."""
    _require_same_ring(a, b)
    ring = a.ring
    zero = ring.zero
    top = tuple(row + (zero,) * b.cols for row in a.entries)
    bottom = tuple((zero,) * a.cols + row for row in b.entries)
    return ExactMatrix(ring, a.rows + b.rows, a.cols + b.cols, top + bottom)


def mat_symmetry(ring: Ring, n: int, m: int) -> ExactMatrix:
    """Block swap n + m -> m + n."""
    one, zero = ring.one, ring.zero
    out = []
    for i in range(m):
        out.append(tuple(one if j == n + i else zero for j in range(n + m)))
    for i in range(n):
        out.append(tuple(one if j == i else zero for j in range(n + m)))
    return ExactMatrix(ring, m + n, n + m, tuple(out))


def mat_transpose(a: ExactMatrix) -> ExactMatrix:
    return ExactMatrix(a.ring, a.cols, a.rows, tuple(zip(*a.entries)) if a.entries else tuple(() for _ in range(a.cols)))


def mat_neg(a: ExactMatrix) -> ExactMatrix:
    neg = a.ring.neg
    return ExactMatrix(a.ring, a.rows, a.cols, tuple(tuple(neg(v) for v in row) for row in a.entries))


def mat_hcat(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    _require_same_ring(a, b)
    if a.rows != b.rows:
        raise TypeMismatch("row counts differ")
    return ExactMatrix(a.ring, a.rows, a.cols + b.cols, tuple(ra + rb for ra, rb in zip(a.entries, b.entries)))


def mat_vcat(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    _require_same_ring(a, b)
    if a.cols != b.cols:
        raise TypeMismatch("column counts differ")
    return ExactMatrix(a.ring, a.rows + b.rows, a.cols, a.entries + b.entries)


def _submatrix_rows(a: ExactMatrix, lo: int, hi: int) -> ExactMatrix:
    return ExactMatrix(a.ring, hi - lo, a.cols, a.entries[lo:hi])


def _submatrix_cols(a: ExactMatrix, lo: int, hi: int) -> ExactMatrix:
    return ExactMatrix(a.ring, a.rows, hi - lo, tuple(row[lo:hi] for row in a.entries))


# ---------------------------------------------------------------------------
# echelon forms over fields


def rref(a: ExactMatrix) -> tuple[ExactMatrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns, over a field."""
    ring = a.ring
    if not ring.is_field:
        raise RingMismatch("row reduction needs a field")
    rows = [list(r) for r in a.entries]
    m, n = a.rows, a.cols
    pivots = []
    r = 0
    for j in range(n):
        pivot_row = None
        for i in range(r, m):
            if rows[i][j] != ring.zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = ring.inv(rows[r][j])
        rows[r] = [ring.mul(inv, v) for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][j] != ring.zero:
                c = rows[i][j]
                rows[i] = [ring.sub(v, ring.mul(c, w)) for v, w in zip(rows[i], rows[r])]
        pivots.append(j)
        r += 1
        if r == m:
            break
    return ExactMatrix(ring, m, n, tuple(tuple(r_) for r_ in rows)), tuple(pivots)


def rcef(a: ExactMatrix) -> tuple[ExactMatrix, tuple[int, ...]]:
    """Reduced column echelon form and pivot rows, over a field."""
    r, pivots = rref(mat_transpose(a))
    return mat_transpose(r), pivots


def _rank_field(a: ExactMatrix) -> int:
    return len(rref(a)[1])


def _to_rational(a: ExactMatrix) -> ExactMatrix:
    return ExactMatrix(QQ, a.rows, a.cols, tuple(tuple(Fraction(v) for v in row) for row in a.entries))


def mat_rank(a: ExactMatrix) -> int:
    """Rank; for integer matrices this is the rank over the rationals."""
    if a.ring.is_field:
        return _rank_field(a)
    return _rank_field(_to_rational(a))


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """U*A*V = D with U, V unimodular and D diagonal, d_i >= 0, d_i | d_(i+1)."""

    u: ExactMatrix
    d: ExactMatrix
    v: ExactMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.d.entries[i][i] for i in range(min(self.d.rows, self.d.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)


class _SnfState:
    """Mutable elimination state: matrix plus the four transforms.

    Maintains a = u * a_original * v, with uinv and vinv the exact inverses
    of u and v.
    """

    def __init__(self, a: ExactMatrix):
        self.m, self.n = a.rows, a.cols
        self.a = [list(row) for row in a.entries]
        self.u = [[int(i == j) for j in range(self.m)] for i in range(self.m)]
        self.uinv = [[int(i == j) for j in range(self.m)] for i in range(self.m)]
        self.v = [[int(i == j) for j in range(self.n)] for i in range(self.n)]
        self.vinv = [[int(i == j) for j in range(self.n)] for i in range(self.n)]

    def row_swap(self, i, k):
        if i == k:
            return
        self.a[i], self.a[k] = self.a[k], self.a[i]
        self.u[i], self.u[k] = self.u[k], self.u[i]
        for row in self.uinv:
            row[i], row[k] = row[k], row[i]

    def row_neg(self, i):
        self.a[i] = [-x for x in self.a[i]]
        self.u[i] = [-x for x in self.u[i]]
        for row in self.uinv:
            row[i] = -row[i]

    def row_add(self, i, k, c):
        # row i += c * row k
        self.a[i] = [x + c * y for x, y in zip(self.a[i], self.a[k])]
        self.u[i] = [x + c * y for x, y in zip(self.u[i], self.u[k])]
        for row in self.uinv:
            row[k] -= c * row[i]

    def col_swap(self, j, l):
        if j == l:
            return
        for row in self.a:
            row[j], row[l] = row[l], row[j]
        for row in self.v:
            row[j], row[l] = row[l], row[j]
        self.vinv[j], self.vinv[l] = self.vinv[l], self.vinv[j]

    def col_neg(self, j):
        for row in self.a:
            row[j] = -row[j]
        for row in self.v:
            row[j] = -row[j]
        self.vinv[j] = [-x for x in self.vinv[j]]

    def col_add(self, j, l, c):
        # col j += c * col l
        for row in self.a:
            row[j] += c * row[l]
        for row in self.v:
            row[j] += c * row[l]
        self.vinv[l] = [x - c * y for x, y in zip(self.vinv[l], self.vinv[j])]


def _snf_engine(a: ExactMatrix):
    """Run Smith elimination; returns (u, uinv, d, v, vinv, rank).

    Pivots are chosen as the minimal-absolute-value nonzero entry of the
    remaining submatrix, scanned row-major, so the decomposition is
    reproducible.
    """
    if a.ring != ZZ:
        raise RingMismatch("Smith normal form needs integer entries")
    st = _SnfState(a)
    m, n = st.m, st.n
    rank = 0
    for t in range(min(m, n)):
        # pick global minimal |nonzero| pivot in the submatrix
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = st.a[i][j]
                if v != 0 and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        st.row_swap(t, best[1])
        st.col_swap(t, best[2])
        while True:
            if st.a[t][t] < 0:
                st.row_neg(t)
            # reduce the edging by floor division; remainders shrink strictly
            for i in range(t + 1, m):
                if st.a[i][t]:
                    st.row_add(i, t, -(st.a[i][t] // st.a[t][t]))
            for j in range(t + 1, n):
                if st.a[t][j]:
                    st.col_add(j, t, -(st.a[t][j] // st.a[t][t]))
            residue = None
            for i in range(t + 1, m):
                if st.a[i][t]:
                    residue = (abs(st.a[i][t]), i, t)
                    break
            if residue is None:
                for j in range(t + 1, n):
                    if st.a[t][j]:
                        residue = (abs(st.a[t][j]), t, j)
                        break
            if residue is not None:
                if residue[2] == t:
                    st.row_swap(t, residue[1])
                else:
                    st.col_swap(t, residue[2])
                continue
            # edging clear; enforce divisibility of the remaining block
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if st.a[i][j] % st.a[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            st.row_add(t, offender, 1)
        rank += 1
    u = ExactMatrix(ZZ, m, m, tuple(tuple(r) for r in st.u))
    uinv = ExactMatrix(ZZ, m, m, tuple(tuple(r) for r in st.uinv))
    v = ExactMatrix(ZZ, n, n, tuple(tuple(r) for r in st.v))
    vinv = ExactMatrix(ZZ, n, n, tuple(tuple(r) for r in st.vinv))
    d = ExactMatrix(ZZ, m, n, tuple(tuple(r) for r in st.a))
    return u, uinv, d, v, vinv, rank


def snf(a: ExactMatrix) -> SmithDecomposition:
    """Smith normal form of an integer matrix."""
    u, _, d, v, _, _ = _snf_engine(a)
    return SmithDecomposition(u, d, v)


def det_int(a: ExactMatrix) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    if a.rows != a.cols:
        raise TypeMismatch("determinant of a non-square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = [list(row) for row in a.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Hermite normal forms (canonical representatives of GL_Z orbits)


def hnf_row(a: ExactMatrix) -> ExactMatrix:
    """Canonical row-style Hermite normal form (left unimodular action).

    Pivots are positive, entries above a pivot are reduced into [0, pivot),
    zero rows sink to the bottom.
    """
    if a.ring != ZZ:
        raise RingMismatch("Hermite normal form needs integer entries")
    rows = [list(r) for r in a.entries]
    m, n = a.rows, a.cols
    r = 0
    for j in range(n):
        while True:
            nz = [i for i in range(r, m) if rows[i][j] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(rows[i][j]), i))
            rows[r], rows[i0] = rows[i0], rows[r]
            if rows[r][j] < 0:
                rows[r] = [-x for x in rows[r]]
            done = True
            for i in range(r + 1, m):
                if rows[i][j]:
                    q = rows[i][j] // rows[r][j]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    if rows[i][j]:
                        done = False
            if done:
                break
        if r < m and rows[r][j] != 0:
            for i in range(r):
                q = rows[i][j] // rows[r][j]
                if q:
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
            r += 1
            if r == m:
                break
    return ExactMatrix(ZZ, m, n, tuple(tuple(r_) for r_ in rows))


def hnf_col(a: ExactMatrix) -> ExactMatrix:
    """Canonical column-style Hermite normal form (right unimodular action)."""
    return mat_transpose(hnf_row(mat_transpose(a)))


# ---------------------------------------------------------------------------
# kernels, factorisations, (co)limits


def kernel_basis(a: ExactMatrix) -> ExactMatrix:
    """Matrix whose columns form a basis of ker a.

    Over a field the basis comes from the reduced row echelon form; over the
    integers from Smith normal form, so the basis spans a saturated (pure)
    submodule and is a genuine Z-basis.
    """
    if a.ring.is_field:
        ring = a.ring
        r, pivots = rref(a)
        pivot_set = set(pivots)
        free = [j for j in range(a.cols) if j not in pivot_set]
        cols = []
        for j in free:
            vec = [ring.zero] * a.cols
            vec[j] = ring.one
            for i, pj in enumerate(pivots):
                vec[pj] = ring.neg(r.entries[i][j])
            cols.append(vec)
        entries = tuple(tuple(col[i] for col in cols) for i in range(a.cols))
        return ExactMatrix(ring, a.cols, len(free), entries)
    _, _, _, v, _, rank = _snf_engine(a)
    return _submatrix_cols(v, rank, a.cols)


def field_factorize(a: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix]:
    """Factor a = m * e with e surjective and m injective, over a field.

    m is the reduced column echelon basis of the column space, so the
    factorisation is canonical.
    """
    if not a.ring.is_field:
        raise RingMismatch("epi-mono factorisation needs a field")
    ring = a.ring
    c, pivot_rows = rcef(a)
    r = len(pivot_rows)
    m = _submatrix_cols(c, 0, r)
    # solve m * e = a; rref([m | a]) = [I_r, e; 0, 0] since m has full column rank
    red, _ = rref(mat_hcat(m, a))
    e = _submatrix_cols(_submatrix_rows(red, 0, r), m.cols, m.cols + a.cols)
    return e, m


def pid_factorize(a: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix]:
    """Factor an integer matrix a = m * e with m a split mono.

    m is the inclusion of the saturation (pure closure) of the column span,
    read off the Smith transform; e has full row rank over the rationals.
    """
    _, uinv, d, _, vinv, rank = _snf_engine(a)
    m = _submatrix_cols(uinv, 0, rank)
    e_rows = tuple(
        tuple(d.entries[i][i] * vinv.entries[i][j] for j in range(a.cols))
        for i in range(rank)
    )
    e = ExactMatrix(ZZ, rank, a.cols, e_rows)
    return e, m


def is_split_mono(a: ExactMatrix) -> bool:
    """True iff the Smith diagonal is all ones and the rank equals cols."""
    if a.ring != ZZ:
        raise RingMismatch("split-mono test is for integer matrices")
    _, _, d, _, _, rank = _snf_engine(a)
    return rank == a.cols and all(d.entries[i][i] == 1 for i in range(rank))


def mat_pullback(a: ExactMatrix, b: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix]:
    """Pullback of the cospan (a, b): kernel of the joint map [a | -b]."""
    _require_same_ring(a, b)
    if a.rows != b.rows:
        raise TypeMismatch(f"cospan feet disagree: {a.rows} vs {b.rows}")
    k = kernel_basis(mat_hcat(a, mat_neg(b)))
    p1 = _submatrix_rows(k, 0, a.cols)
    p2 = _submatrix_rows(k, a.cols, a.cols + b.cols)
    return p1, p2


def mat_pushout(a: ExactMatrix, b: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix]:
    """Pushout of the span (a, b).

    Over a field: the cokernel of the stacked map [a; -b].  Over the
    integers: the quotient by the saturation of its image (free reflection),
    so the apex is again free and torsion cannot appear.
    """
    _require_same_ring(a, b)
    if a.cols != b.cols:
        raise TypeMismatch(f"span apexes disagree: {a.cols} vs {b.cols}")
    c = mat_vcat(a, mat_neg(b))
    if a.ring.is_field:
        n = kernel_basis(mat_transpose(c))
        q = mat_transpose(n)
    else:
        u, _, _, _, _, rank = _snf_engine(c)
        q = _submatrix_rows(u, rank, c.rows)
    q1 = _submatrix_cols(q, 0, a.rows)
    q2 = _submatrix_cols(q, a.rows, a.rows + b.rows)
    return q1, q2


def mat_solve(a: ExactMatrix, b: ExactMatrix) -> Optional[ExactMatrix]:
    """Exact solution x of a*x = b, or None when none exists.

    Over the integers the solution must itself be integral.  Free variables
    are set to zero, so the solution is deterministic.
    """
    _require_same_ring(a, b)
    if a.rows != b.rows:
        raise TypeMismatch("row counts differ")
    ring = a.ring
    if ring.is_field:
        red, pivots = rref(mat_hcat(a, b))
        rank = len([p for p in pivots if p < a.cols])
        if any(p >= a.cols for p in pivots):
            return None
        out = [[ring.zero] * b.cols for _ in range(a.cols)]
        for i, pj in enumerate(pivots):
            for j in range(b.cols):
                out[pj][j] = red.entries[i][a.cols + j]
        return ExactMatrix(ring, a.cols, b.cols, tuple(tuple(r) for r in out))
    u, _, d, v, _, rank = _snf_engine(a)
    y = mat_mul(u, b)
    for i in range(rank, a.rows):
        if any(y.entries[i][j] != 0 for j in range(b.cols)):
            return None
    w = [[0] * b.cols for _ in range(a.cols)]
    for i in range(rank):
        di = d.entries[i][i]
        for j in range(b.cols):
            if y.entries[i][j] % di != 0:
                return None
            w[i][j] = y.entries[i][j] // di
    return mat_mul(v, ExactMatrix(ZZ, a.cols, b.cols, tuple(tuple(r) for r in w)))


def enumerate_matrices(ring: Ring, rows: int, cols: int, entry_bound: int):
    """All rows-by-cols matrices with entries from the ring's probe set.

    GF(p) uses all residues; the integers and rationals use the integer box
    [-entry_bound, entry_bound].
    """
    if hasattr(ring, "p"):
        values = [ring.coerce(v) for v in range(ring.p)]
    else:
        values = [ring.coerce(v) for v in range(-entry_bound, entry_bound + 1)]
    total = rows * cols
    if total == 0:
        yield ExactMatrix(ring, rows, cols, tuple(() for _ in range(rows)))
        return
    idx = [0] * total
    k = len(values)
    while True:
        flat = [values[i] for i in idx]
        yield ExactMatrix(
            ring, rows, cols, tuple(tuple(flat[r * cols : (r + 1) * cols]) for r in range(rows))
        )
        i = total - 1
        while i >= 0 and idx[i] == k - 1:
            idx[i] = 0
            i -= 1
        if i < 0:
            return
        idx[i] += 1
