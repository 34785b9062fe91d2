"""Finite-dimensional A-A-bimodules (and left A-modules) with Peirce-adapted bases.

Every basis vector x carries labels (s, t) with x = e_s x e_t; for a left module
t is None.  Actions are stored per algebra basis element as lists of column
dicts.  All constructions keep bases Peirce adapted, which lets hom spaces and
tensor products work block by block.
"""

from .linalg import SparseMatrix, cokernel_of_cols


class BimoduleError(ValueError):
    pass


class Bimodule:
    def __init__(self, alg, dim, left, right, labels, tags=None, name=None):
        self.alg = alg
        self.dim = dim
        self.left = left            # left[a][x] -> {y: c}
        self.right = right          # right[a][x] -> {y: c} or None
        self.labels = labels
        self.tags = tags
        self.name = name

    is_left_module = property(lambda self: self.right is None)

    def __repr__(self):
        kind = "LeftModule" if self.right is None else "Bimodule"
        return "%s(%s, dim=%d)" % (kind, self.name or "?", self.dim)

    # ----------------------------------------------------------- actions

    def act_left(self, a, vec):
        f = self.alg.field
        acc = {}
        cols = self.left[a]
        for x, c in vec.items():
            for y, v in cols[x].items():
                acc[y] = acc.get(y, 0) + c * v
        return {y: f.norm(v) for y, v in acc.items() if f.norm(v)}

    def act_right(self, a, vec):
        f = self.alg.field
        acc = {}
        cols = self.right[a]
        for x, c in vec.items():
            for y, v in cols[x].items():
                acc[y] = acc.get(y, 0) + c * v
        return {y: f.norm(v) for y, v in acc.items() if f.norm(v)}

    def left_matrix(self, a):
        return SparseMatrix(self.dim, self.dim, self.left[a], self.alg.field)

    def right_matrix(self, a):
        return SparseMatrix(self.dim, self.dim, self.right[a], self.alg.field)

    def block(self, s=None, t=None):
        return [x for x, (ps, pt) in enumerate(self.labels)
                if (s is None or ps == s) and (t is None or pt == t)]

    # ---------------------------------------------------------- validation

    def validate(self):
        """Check module axioms on basis elements; raises BimoduleError."""
        A = self.alg
        f = A.field
        one = A.unit_vec()
        for x in range(self.dim):
            ex = {x: 1}
            s, t = self.labels[x]
            if self.act_left(A.idem[s], ex) != ex:
                raise BimoduleError("left Peirce label wrong at %d" % x)
            if self.right is not None and self.act_right(A.idem[t], ex) != ex:
                raise BimoduleError("right Peirce label wrong at %d" % x)
            u = {}
            for e in one:
                for y, v in self.left[e][x].items():
                    u[y] = f.norm(u.get(y, 0) + v)
            if {y: v for y, v in u.items() if v} != ex:
                raise BimoduleError("unit does not act as identity")
        for a in range(A.dim):
            for b in range(A.dim):
                ab = A.mult.get((a, b), {})
                for x in range(self.dim):
                    ex = {x: 1}
                    lhs = self.act_left(a, self.act_left(b, ex))
                    rhs = {}
                    for c, z in ab.items():
                        for y, v in self.left[c][x].items():
                            rhs[y] = f.norm(rhs.get(y, 0) + z * v)
                    if lhs != {y: v for y, v in rhs.items() if v}:
                        raise BimoduleError("left action not multiplicative")
                    if self.right is None:
                        continue
                    lhs = self.act_right(b, self.act_right(a, ex))
                    rhs = {}
                    for c, z in ab.items():
                        for y, v in self.right[c][x].items():
                            rhs[y] = f.norm(rhs.get(y, 0) + z * v)
                    if lhs != {y: v for y, v in rhs.items() if v}:
                        raise BimoduleError("right action not multiplicative")
                    if self.act_right(b, self.act_left(a, ex)) != self.act_left(a, self.act_right(b, ex)):
                        raise BimoduleError("actions do not commute")
        return True


# ---------------------------------------------------------------- builders


def regular(alg):
    """A as a bimodule over itself, basis = algebra basis."""
    return Bimodule(alg, alg.dim, alg.left_mats(), alg.right_mats(), list(alg.peirce),
                    tags=list(alg.labels), name="A")


def regular_left(alg, k=None):
    """A e_k (or A) as a left module."""
    idx = alg.block(None, k)
    pos = {a: n for n, a in enumerate(idx)}
    L = alg.left_mats()
    left = [[{pos[c]: v for c, v in L[a][b].items()} for b in idx] for a in range(alg.dim)]
    labels = [(alg.peirce[b][0], None) for b in idx]
    name = "A" if k is None else "Ae%d" % (k + 1)
    return Bimodule(alg, len(idx), left, None, labels,
                    tags=[alg.labels[b] for b in idx], name=name)


def free_projective(alg, i, j):
    """A e_i (x)_k e_j A, basis pairs (u, v) in lexicographic order."""
    us = alg.block(None, i)
    vs = alg.block(j, None)
    upos = {u: n for n, u in enumerate(us)}
    vpos = {v: n for n, v in enumerate(vs)}
    nv = len(vs)
    L, R = alg.left_mats(), alg.right_mats()
    left, right = [], []
    for a in range(alg.dim):
        lc, rc = [], []
        for u in us:
            for v in vs:
                lc.append({upos[w] * nv + vpos[v]: c for w, c in L[a][u].items()})
                rc.append({upos[u] * nv + vpos[w]: c for w, c in R[a][v].items()})
        left.append(lc)
        right.append(rc)
    labels = [(alg.peirce[u][0], alg.peirce[v][1]) for u in us for v in vs]
    tags = ["%s|%s" % (alg.labels[u], alg.labels[v]) for u in us for v in vs]
    return Bimodule(alg, len(us) * nv, left, right, labels, tags=tags,
                    name="F%d%d" % (i + 1, j + 1))


class BimoduleMap:
    def __init__(self, src, dst, mat):
        assert mat.nrows == dst.dim and mat.ncols == src.dim, (mat.shape, dst.dim, src.dim)
        self.src = src
        self.dst = dst
        self.mat = mat

    def verify(self):
        """True iff the matrix intertwines both actions."""
        A = self.src.alg
        M = self.mat
        for a in range(A.dim):
            if M @ self.src.left_matrix(a) != self.dst.left_matrix(a) @ M:
                return False
            if self.src.right is not None:
                if M @ self.src.right_matrix(a) != self.dst.right_matrix(a) @ M:
                    return False
        return True

    def __matmul__(self, other):
        assert other.dst is self.src or other.dst.dim == self.src.dim
        return BimoduleMap(other.src, self.dst, self.mat @ other.mat)


def identity_map(X):
    return BimoduleMap(X, X, SparseMatrix.identity(X.dim, X.alg.field))


def is_isomorphism(f):
    m = f.mat if isinstance(f, BimoduleMap) else f
    return m.nrows == m.ncols and m.rank() == m.nrows


# ---------------------------------------------------------------- hom spaces


def _label_match(X, Y, x, y):
    lx, ly = X.labels[x], Y.labels[y]
    if X.right is None or Y.right is None:
        return lx[0] == ly[0]
    return lx == ly


def _hom_unknowns(X, Y):
    ybylab = {}
    for y in range(Y.dim):
        key = Y.labels[y] if (X.right is not None and Y.right is not None) else Y.labels[y][0]
        ybylab.setdefault(key, []).append(y)
    unk = {}
    for x in range(X.dim):
        key = X.labels[x] if (X.right is not None and Y.right is not None) else X.labels[x][0]
        for y in ybylab.get(key, []):
            unk[(y, x)] = len(unk)
    return unk


def _equations(X, Y, unk, a, side):
    """Rows of M act_a^X - act_a^Y M = 0 for one algebra basis element."""
    acts_x = X.left[a] if side == "L" else X.right[a]
    acts_y = Y.left[a] if side == "L" else Y.right[a]
    rows = {}
    for x in range(X.dim):
        # (M act_x)[y][x] = sum_x' act_x[x'][x] m[y][x']
        for xp, c in acts_x[x].items():
            for y in range(Y.dim):
                k = unk.get((y, xp))
                if k is not None:
                    r = rows.setdefault((x, y), {})
                    r[k] = r.get(k, 0) + c
        # (act_y M)[y][x] = sum_y' act_y[y][y'] m[y'][x]
        for yp in range(Y.dim):
            k = unk.get((yp, x))
            if k is None:
                continue
            for y, c in acts_y[yp].items():
                r = rows.setdefault((x, y), {})
                r[k] = r.get(k, 0) - c
    return list(rows.values())


def hom_space(X, Y, method="stacked"):
    """Basis of Hom_{A-A}(X, Y) (Hom_A for left modules) as BimoduleMaps."""
    A = X.alg
    f = A.field
    unk = _hom_unknowns(X, Y)
    inv = {k: key for key, k in unk.items()}
    nonidem = [a for a in range(A.dim) if a not in A.idem]
    sides = ["L"] if (X.right is None or Y.right is None) else ["L", "R"]
    if method == "stacked":
        rows = []
        for a in nonidem:
            for side in sides:
                rows += _equations(X, Y, unk, a, side)
        rows = [{k: f.norm(v) for k, v in r.items() if f.norm(v)} for r in rows]
        system = SparseMatrix.from_rows(len(rows), len(unk), rows, f)
        vecs = system.kernel()
    else:
        # intersect solution spaces one generator at a time
        basis = [{k: 1} for k in range(len(unk))]
        for a in nonidem:
            for side in sides:
                rows = _equations(X, Y, unk, a, side)
                rows = [{k: f.norm(v) for k, v in r.items() if f.norm(v)} for r in rows]
                if not basis:
                    break
                E = SparseMatrix.from_rows(len(rows), len(unk), rows, f)
                B = SparseMatrix(len(unk), len(basis), basis, f)
                coeffs = (E @ B).kernel()
                basis = [B.apply(c) for c in coeffs]
        vecs = basis
    out = []
    for v in vecs:
        cols = [{} for _ in range(X.dim)]
        for k, c in v.items():
            y, x = inv[k]
            cols[x][y] = c
        out.append(BimoduleMap(X, Y, SparseMatrix(Y.dim, X.dim, cols, f)))
    return out


def hom_dim(X, Y):
    return len(hom_space(X, Y))


# ---------------------------------------------------------------- sums


def direct_sum(Xs):
    """(S, injections, projections)."""
    assert Xs
    A = Xs[0].alg
    f = A.field
    offs = []
    o = 0
    for X in Xs:
        offs.append(o)
        o += X.dim
    n = o
    has_right = all(X.right is not None for X in Xs)
    left, right = [], []
    for a in range(A.dim):
        lc, rc = [], []
        for X, off in zip(Xs, offs):
            for x in range(X.dim):
                lc.append({y + off: v for y, v in X.left[a][x].items()})
                if has_right:
                    rc.append({y + off: v for y, v in X.right[a][x].items()})
        left.append(lc)
        right.append(rc)
    labels = [lab for X in Xs for lab in X.labels]
    S = Bimodule(A, n, left, right if has_right else None, labels,
                 name="+".join(X.name or "?" for X in Xs))
    inj, proj = [], []
    for X, off in zip(Xs, offs):
        inj.append(BimoduleMap(X, S, SparseMatrix(n, X.dim, [{x + off: 1} for x in range(X.dim)], f)))
        pc = [{} for _ in range(n)]
        for x in range(X.dim):
            pc[x + off] = {x: 1}
        proj.append(BimoduleMap(S, X, SparseMatrix(X.dim, n, pc, f)))
    return S, inj, proj


# ---------------------------------------------------------------- (co)kernels


def _quotient_module(Y, P, S, keep):
    A = Y.alg
    d = len(keep)

    def induced(acts):
        out = []
        for a in range(A.dim):
            cols = []
            for n in keep:
                cols.append(P.apply(acts[a][n]))
            out.append(cols)
        return out

    left = induced(Y.left)
    right = induced(Y.right) if Y.right is not None else None
    labels = [Y.labels[n] for n in keep]
    tags = [Y.tags[n] for n in keep] if Y.tags else None
    return Bimodule(A, d, left, right, labels, tags=tags)


def cokernel_map(fmap):
    """(Q, projection) for a bimodule map f: X -> Y."""
    Y = fmap.dst
    m = fmap.mat
    P, S, keep = cokernel_of_cols(m.cols, Y.dim, Y.alg.field)
    Q = _quotient_module(Y, P, S, keep)
    Q.name = "coker"
    return Q, BimoduleMap(Y, Q, P)


def cokernel_of_subspace(Y, vecs, name="coker"):
    P, S, keep = cokernel_of_cols(vecs, Y.dim, Y.alg.field)
    Q = _quotient_module(Y, P, S, keep)
    Q.name = name
    return Q, BimoduleMap(Y, Q, P)


def kernel_map(fmap):
    """(K, inclusion) for a bimodule map f: X -> Y."""
    X = fmap.src
    A = X.alg
    f = A.field
    pivots, prows = fmap.mat.rref()
    pset = set(pivots)
    free = [c for c in range(X.dim) if c not in pset]
    vecs = []
    for fc in free:
        v = {fc: 1}
        for pc, pr in zip(pivots, prows):
            x = pr.get(fc)
            if x:
                v[pc] = f.neg(x)
        vecs.append(v)
    fpos = {c: k for k, c in enumerate(free)}

    def restricted(acts):
        out = []
        for a in range(A.dim):
            cols = []
            for v in vecs:
                w = {}
                for x, c in v.items():
                    for y, z in acts[a][x].items():
                        w[y] = w.get(y, 0) + c * z
                cols.append({fpos[y]: f.norm(z) for y, z in w.items() if y in fpos and f.norm(z)})
            out.append(cols)
        return out

    labels = []
    for v, fc in zip(vecs, free):
        labs = {X.labels[x] for x in v}
        assert len(labs) == 1, "kernel vector not Peirce homogeneous"
        labels.append(X.labels[fc])
    K = Bimodule(A, len(vecs), restricted(X.left),
                 restricted(X.right) if X.right is not None else None, labels, name="ker")
    return K, BimoduleMap(K, X, SparseMatrix(X.dim, len(vecs), vecs, f))


# ---------------------------------------------------------------- tensor over A


class TensorData:
    """Bookkeeping for X (x)_A Y: pair space V, projection, chosen basis."""

    def __init__(self, X, Y, pairs, pindex, proj, keep):
        self.X, self.Y = X, Y
        self.pairs = pairs          # V basis: list of (x, y)
        self.pindex = pindex        # (x, y) -> V index
        self.proj = proj            # SparseMatrix V -> result
        self.basis = [pairs[k] for k in keep]   # result basis as pure pairs

    def project_pair(self, x, y):
        k = self.pindex.get((x, y))
        if k is None:
            return {}
        return self.proj.cols[k]


def tensor_over_A(X, Y):
    """(X (x)_A Y, TensorData).  Basis: non-pivot pairs of the Peirce-reduced space."""
    A = X.alg
    f = A.field
    assert X.right is not None, "left factor must be a bimodule"
    ybyl = {}
    for y in range(Y.dim):
        ybyl.setdefault(Y.labels[y][0], []).append(y)
    pairs = []
    for x in range(X.dim):
        for y in ybyl.get(X.labels[x][1], []):
            pairs.append((x, y))
    pindex = {p: k for k, p in enumerate(pairs)}
    rels = []
    for a in range(A.dim):
        if a in A.idem:
            continue
        s, t = A.peirce[a]
        for x in X.block(None, s):
            xa = X.right[a][x]
            for y in ybyl.get(t, []):
                ay = Y.left[a][y]
                r = {}
                for x2, c in xa.items():
                    k = pindex[(x2, y)]
                    r[k] = r.get(k, 0) + c
                for y2, c in ay.items():
                    k = pindex[(x, y2)]
                    r[k] = r.get(k, 0) - c
                r = {k: f.norm(v) for k, v in r.items() if f.norm(v)}
                if r:
                    rels.append(r)
    P, S, keep = cokernel_of_cols(rels, len(pairs), f)
    td = TensorData(X, Y, pairs, pindex, P, keep)
    d = len(keep)

    left = []
    for a in range(A.dim):
        cols = []
        for k in keep:
            x, y = pairs[k]
            acc = {}
            for x2, c in X.left[a][x].items():
                for z, v in td.project_pair(x2, y).items():
                    acc[z] = acc.get(z, 0) + c * v
            cols.append({z: f.norm(v) for z, v in acc.items() if f.norm(v)})
        left.append(cols)
    right = None
    if Y.right is not None:
        right = []
        for a in range(A.dim):
            cols = []
            for k in keep:
                x, y = pairs[k]
                acc = {}
                for y2, c in Y.right[a][y].items():
                    for z, v in td.project_pair(x, y2).items():
                        acc[z] = acc.get(z, 0) + c * v
                cols.append({z: f.norm(v) for z, v in acc.items() if f.norm(v)})
            right.append(cols)
    labels = [(X.labels[x][0], Y.labels[y][1]) for (x, y) in td.basis]
    T = Bimodule(A, d, left, right, labels,
                 name="(%s*%s)" % (X.name or "?", Y.name or "?"))
    return T, td


def tensor_of_maps(f, g, tdata_src, tdata_dst, T_src, T_dst):
    """Induced map f (x)_A g between tensor products (general, slow path)."""
    F = f.src.alg.field
    cols = []
    for (x, y) in tdata_src.basis:
        acc = {}
        for x2, c in f.mat.cols[x].items():
            for y2, d in g.mat.cols[y].items():
                for z, v in tdata_dst.project_pair(x2, y2).items():
                    acc[z] = acc.get(z, 0) + c * d * v
        cols.append({z: F.norm(v) for z, v in acc.items() if F.norm(v)})
    return BimoduleMap(T_src, T_dst, SparseMatrix(T_dst.dim, T_src.dim, cols, F))
