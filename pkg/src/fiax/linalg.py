"""Exact linear algebra over Q and F_p.

Two representations share the same elimination kernel:
  * `Matrix`: dense row-major, the small public API (rref, kernel_basis, solve, cokernel);
  * `SparseMatrix`: column dicts, used for every 2-morphism in the engine.
"""


from . import kernels
from .fields import Q


class Inconsistent(ValueError):
    """Raised by solve when the right-hand side is not in the column space."""


# ---------------------------------------------------------------------------
# sparse


class SparseMatrix:
    __slots__ = ("nrows", "ncols", "cols", "field")

    def __init__(self, nrows, ncols, cols, field=Q):
        assert len(cols) == ncols, (len(cols), ncols)
        self.nrows = nrows
        self.ncols = ncols
        self.cols = cols
        self.field = field

    @classmethod
    def zero(cls, nrows, ncols, field=Q):
        return cls(nrows, ncols, [{} for _ in range(ncols)], field)

    @classmethod
    def identity(cls, n, field=Q):
        return cls(n, n, [{i: 1} for i in range(n)], field)

    @classmethod
    def from_dense(cls, rows, field=Q):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = []
        for j in range(ncols):
            col = {}
            for i in range(nrows):
                v = field(rows[i][j])
                if v:
                    col[i] = v
            cols.append(col)
        return cls(nrows, ncols, cols, field)

    @classmethod
    def from_rows(cls, nrows, ncols, rowdicts, field=Q):
        cols = [{} for _ in range(ncols)]
        for i, r in enumerate(rowdicts):
            for j, v in r.items():
                cols[j][i] = v
        return cls(nrows, ncols, cols, field)

    def to_dense(self):
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    def rows(self):
        rs = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                rs[i][j] = v
        return rs

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __repr__(self):
        return "SparseMatrix(%dx%d, nnz=%d, %r)" % (
            self.nrows, self.ncols, self.nnz(), self.field)

    def nnz(self):
        return sum(len(c) for c in self.cols)

    # algebra ---------------------------------------------------------------

    def __matmul__(self, other):
        assert self.ncols == other.nrows, (self.shape, other.shape)
        cols = kernels.spmm(self.cols, other.cols, self.field.p)
        return SparseMatrix(self.nrows, other.ncols, cols, self.field)

    def __add__(self, other):
        assert self.shape == other.shape, (self.shape, other.shape)
        return SparseMatrix(self.nrows, self.ncols,
                            kernels.spadd(self.cols, other.cols, 1, self.field.p), self.field)

    def __sub__(self, other):
        assert self.shape == other.shape, (self.shape, other.shape)
        return SparseMatrix(self.nrows, self.ncols,
                            kernels.spadd(self.cols, other.cols, -1, self.field.p), self.field)

    def scale(self, s):
        f = self.field
        s = f(s)
        if not s:
            return SparseMatrix.zero(self.nrows, self.ncols, f)
        cols = [{i: f.norm(v * s) for i, v in c.items()} for c in self.cols]
        return SparseMatrix(self.nrows, self.ncols, cols, f)

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.cols == other.cols

    __hash__ = None

    def transpose(self):
        return SparseMatrix(self.ncols, self.nrows, self.rows(), self.field)

    T = property(transpose)

    def apply(self, vec):
        """Image of a sparse vector {index: scalar}."""
        acc = {}
        for k, x in vec.items():
            for i, v in self.cols[k].items():
                acc[i] = acc.get(i, 0) + v * x
        f = self.field
        return {i: f.norm(v) for i, v in acc.items() if f.norm(v)}

    def is_zero(self):
        return not any(self.cols)

    def diff_witness(self, other):
        """First column index where self and other differ, with both columns."""
        for j, (a, b) in enumerate(zip(self.cols, other.cols)):
            if a != b:
                return {"column": j, "lhs": _vec_str(a, self.field), "rhs": _vec_str(b, self.field)}
        return None

    def block(self, rows, cols):
        """Submatrix on the given row and column index lists."""
        rpos = {r: k for k, r in enumerate(rows)}
        out = []
        for c in cols:
            out.append({rpos[i]: v for i, v in self.cols[c].items() if i in rpos})
        return SparseMatrix(len(rows), len(cols), out, self.field)

    # elimination -----------------------------------------------------------

    def rref(self):
        return kernels.rref_rows(self.rows(), self.field.p)

    def rank(self):
        return len(kernels.rref_rows(self.rows(), self.field.p)[0])

    def kernel(self):
        """Basis of {x : M x = 0} as a list of sparse vectors."""
        pivots, prows = self.rref()
        pset = set(pivots)
        out = []
        for fcol in range(self.ncols):
            if fcol in pset:
                continue
            v = {fcol: 1}
            for pc, pr in zip(pivots, prows):
                x = pr.get(fcol)
                if x:
                    v[pc] = self.field.neg(x)
            out.append(v)
        return out

    def column_space_basis(self):
        """Echelon basis of the column space as sparse vectors."""
        pivots, prows = kernels.rref_rows([c for c in self.cols if c], self.field.p)
        return pivots, prows

    def solve_many(self, rhs):
        """Solve M X = B (B given as SparseMatrix); raises Inconsistent."""
        assert rhs.nrows == self.nrows
        n = self.ncols
        rows = self.rows()
        brows = rhs.rows()
        aug = []
        for r, b in zip(rows, brows):
            row = dict(r)
            for j, v in b.items():
                row[n + j] = v
            aug.append(row)
        pivots, prows = kernels.rref_rows(aug, self.field.p)
        cols = [{} for _ in range(rhs.ncols)]
        for pc, pr in zip(pivots, prows):
            if pc >= n:
                raise Inconsistent("right-hand side column %d outside column space" % (pc - n))
            for k, v in pr.items():
                if k >= n:
                    cols[k - n][pc] = v
        return SparseMatrix(n, rhs.ncols, cols, self.field)

    def solve_vec(self, b):
        rhs = SparseMatrix(self.nrows, 1, [dict(b)], self.field)
        return self.solve_many(rhs).cols[0]

    def left_solve(self, rhs):
        """Solve X M = B for X."""
        return self.transpose().solve_many(rhs.transpose()).transpose()

    def inverse(self):
        assert self.nrows == self.ncols
        return self.solve_many(SparseMatrix.identity(self.nrows, self.field))

    def is_invertible(self):
        return self.nrows == self.ncols and self.rank() == self.nrows

    def cokernel(self):
        """Projection onto standard non-pivot coordinates of the target.

        Returns (projection, section, quotient_coords)."""
        return cokernel_of_cols(self.cols, self.nrows, self.field)


def cokernel_of_cols(cols, nrows, field):
    pivots, prows = kernels.rref_rows([c for c in cols if c], field.p)
    pset = set(pivots)
    keep = [i for i in range(nrows) if i not in pset]
    pos = {n: k for k, n in enumerate(keep)}
    proj = [None] * nrows
    for n in keep:
        proj[n] = {pos[n]: 1}
    for pc, pr in zip(pivots, prows):
        proj[pc] = {pos[k]: field.neg(v) for k, v in pr.items() if k != pc}
    P = SparseMatrix(len(keep), nrows, proj, field)
    S = SparseMatrix(nrows, len(keep), [{n: 1} for n in keep], field)
    return P, S, keep


def _vec_str(v, field):
    return {str(k): field.to_str(x) for k, x in sorted(v.items())}


def identity(n, field=Q):
    return SparseMatrix.identity(n, field)


def block_diag(mats, field=Q):
    nr = sum(m.nrows for m in mats)
    nc = sum(m.ncols for m in mats)
    cols = []
    off = 0
    for m in mats:
        for c in m.cols:
            cols.append({i + off: v for i, v in c.items()})
        off += m.nrows
    return SparseMatrix(nr, nc, cols, field)


# ---------------------------------------------------------------------------
# dense public API


class Matrix:
    """Dense matrix of field elements, row-major."""

    def __init__(self, rows, field=Q):
        self.field = field
        self.rows = [[field(x) for x in r] for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        assert all(len(r) == self.ncols for r in self.rows)

    @property
    def entries(self):
        return [x for r in self.rows for x in r]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __repr__(self):
        return "Matrix(%r, %r)" % (self.rows, self.field)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return Matrix((self.sparse() @ other.sparse()).to_dense(), self.field)
        # column vector as list
        return [self.field.norm(sum(a * b for a, b in zip(r, other))) for r in self.rows]

    def sparse(self):
        return SparseMatrix.from_dense(self.rows, self.field) if self.rows else SparseMatrix.zero(0, 0, self.field)

    @classmethod
    def identity(cls, n, field=Q):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], field)


def rref(m):
    """(reduced row echelon form, pivot columns)."""
    f = m.field
    sp = [{j: x for j, x in enumerate(r) if x} for r in m.rows]
    pivots, prows = kernels.rref_rows(sp, f.p)
    out = [[f.norm(pr.get(j, 0)) for j in range(m.ncols)] for pr in prows]
    out += [[0] * m.ncols for _ in range(m.nrows - len(prows))]
    return Matrix(out, f), list(pivots)


def rank(m):
    return len(rref(m)[1])


def kernel_basis(m):
    """Column vectors (lists) spanning the null space, each checked."""
    f = m.field
    vecs = m.sparse().kernel() if m.nrows else [{j: 1} for j in range(m.ncols)]
    out = []
    for v in vecs:
        col = [f.norm(v.get(j, 0)) for j in range(m.ncols)]
        assert all(x == 0 for x in m @ col), "kernel vector fails"
        out.append(col)
    return out


def solve(m, b):
    """Some x with m x = b, or raise Inconsistent."""
    f = m.field
    assert len(b) == m.nrows
    bs = {i: f(x) for i, x in enumerate(b) if f(x)}
    x = m.sparse().solve_vec(bs)
    col = [f.norm(x.get(j, 0)) for j in range(m.ncols)]
    assert m @ col == [f(v) for v in b]
    return col


def cokernel(m):
    """(projection, dim) with projection @ m == 0 and full row rank."""
    f = m.field
    sp = m.sparse() if m.nrows else SparseMatrix.zero(0, m.ncols, f)
    P, _, keep = sp.cokernel()
    dense = P.to_dense() if keep else []
    return Matrix(dense, f) if dense else Matrix([], f), len(keep)


