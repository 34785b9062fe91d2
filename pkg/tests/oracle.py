"""Independent dense oracles (sympy, full tensor powers of A, no Peirce reduction)."""

from itertools import product

import sympy
from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def mult_vec(alg, u, v):
    """Product of two dense coefficient vectors (lists) in A."""
    out = [0] * alg.dim
    for a, x in enumerate(u):
        if not x:
            continue
        for b, y in enumerate(v):
            if not y:
                continue
            for c, z in alg.mult.get((a, b), {}).items():
                out[c] += x * y * z
    return out


def basis_vec(alg, a):
    v = [0] * alg.dim
    v[a] = 1
    return v


def left_mult_matrix(alg, e):
    return sympy.Matrix(alg.dim, alg.dim, lambda r, c: mult_vec(alg, basis_vec(alg, e), basis_vec(alg, c))[r])


def right_mult_matrix(alg, e):
    return sympy.Matrix(alg.dim, alg.dim, lambda r, c: mult_vec(alg, basis_vec(alg, c), basis_vec(alg, e))[r])


def rank(M):
    """Exact rank over Q (DomainMatrix is much faster than Matrix.rank)."""
    if 0 in M.shape:
        return 0
    return DomainMatrix.from_Matrix(M).convert_to(QQ).rank()


def kron(*ms):
    out = ms[0]
    for m in ms[1:]:
        out = sympy.kronecker_product(out, m)
    return out


def peirce_dim(alg, i, j):
    """dim e_i A e_j."""
    ei, ej = alg.idem[i], alg.idem[j]
    return rank(left_mult_matrix(alg, ei) * right_mult_matrix(alg, ej))


def dim_Ae(alg, i):
    return rank(right_mult_matrix(alg, alg.idem[i]))


def dim_eA(alg, i):
    return rank(left_mult_matrix(alg, alg.idem[i]))


def free_word_dim(alg, pairs):
    """dim of F_{p1 q1} ... F_{pk qk} computed as A e_p1 (x) e_q1 A e_p2 (x) ... (x) e_qk A."""
    d = dim_Ae(alg, pairs[0][0])
    for (p, q), (p2, q2) in zip(pairs, pairs[1:]):
        d *= peirce_dim(alg, q, p2)
    return d * dim_eA(alg, pairs[-1][1])


def completed_unit_dim(alg, i):
    """dim coker(l - r) on I_i I_i, via full A^{(x)3} -> A^{(x)2} matrices."""
    n = alg.dim
    e = alg.idem[i]
    R, L = right_mult_matrix(alg, e), left_mult_matrix(alg, e)
    P3 = kron(R, L * R, L)
    P2 = kron(R, L)
    lmap = sympy.zeros(n * n, n ** 3)
    rmap = sympy.zeros(n * n, n ** 3)
    for a, m, d in product(range(n), repeat=3):
        col = (a * n + m) * n + d
        for c, z in alg.mult.get((a, m), {}).items():
            lmap[c * n + d, col] += z
        for c, z in alg.mult.get((m, d), {}).items():
            rmap[a * n + c, col] += z
    # image of (l - r) restricted to the image of the projector P3
    return rank(P2) - rank((lmap - rmap) * P3)


def hcomp_free(ctx, beta, alpha):
    """hcomp for single-word Free-only 1-morphisms: multiply the two inner factors."""
    from fiax.engine import Free
    K, L, F, H = beta.src, beta.tgt, alpha.src, alpha.tgt
    for X in (K, L, F, H):
        assert len(X.terms) == 1 and all(isinstance(a, Free) for a in X.terms[0])
    alg = ctx.alg
    fld = ctx.field
    KF, LH = ctx.compose(K, F), ctx.compose(L, H)
    ks, fs = K.spaces[0], F.spaces[0]
    ls, hs = L.spaces[0], H.spaces[0]
    ws, out_s = KF.spaces[0], LH.spaces[0]
    nk = len(ks.segs) - 1
    q = K.terms[0][-1].q
    eq = alg.idem[q]
    M = [[0] * KF.dim for _ in range(LH.dim)]
    for n in range(ws.dim):
        t = ws.decode(n)
        kpre, m, fpost = t[:nk], t[nk], t[nk + 1:]
        bvec = beta.mat.cols[ks.encode(kpre + [eq])]
        avec = alpha.mat.cols[fs.encode([m] + fpost)]
        for lr, bc in bvec.items():
            lt = ls.decode(lr)
            for hr, ac in avec.items():
                ht = hs.decode(hr)
                prod = mult_vec(alg, basis_vec(alg, lt[-1]), basis_vec(alg, ht[0]))
                for c, z in enumerate(prod):
                    if z:
                        row = out_s.encode(lt[:-1] + [c] + ht[1:])
                        M[row][n] += bc * ac * z
    return [[fld.norm(x) for x in row] for row in M]


def action_matrix(X, a, side):
    acts = X.left if side == "L" else X.right
    return sympy.Matrix(X.dim, X.dim, lambda r, c: acts[a][c].get(r, 0))


def hom_dim(X, Y):
    """dim of all matrices M with M x_a = y_a M for every basis a and every side."""
    A = X.alg
    sides = ["L"] + (["R"] if X.right is not None and Y.right is not None else [])
    eqs = []
    for a in range(A.dim):
        for s in sides:
            Xa, Ya = action_matrix(X, a, s), action_matrix(Y, a, s)
            # vec(M Xa - Ya M) = (Xa^T kron 1 - 1 kron Ya) vec(M)
            eqs.append(kron(Xa.T, sympy.eye(Y.dim)) - kron(sympy.eye(X.dim), Ya))
    return Y.dim * X.dim - rank(sympy.Matrix.vstack(*eqs))


def tensor_dim(X, Y):
    """dim X (x)_A Y as the quotient of X (x)_k Y by the balancing relations."""
    A = X.alg
    rel = []
    for a in range(A.dim):
        Ra, La = action_matrix(X, a, "R"), action_matrix(Y, a, "L")
        rel.append(kron(Ra, sympy.eye(Y.dim)) - kron(sympy.eye(X.dim), La))
    return X.dim * Y.dim - rank(sympy.Matrix.hstack(*rel))


# ---- Free-only words: elements as {tuple of A-basis indices: coefficient}


def dual_basis(alg):
    """a* coordinates from the inverse Gram matrix of the trace form."""
    G = sympy.Matrix(alg.gram())
    Gi = G.inv_mod(alg.field.p) if alg.field.p else G.inv()
    return [{c: Gi[a, c] for c in range(alg.dim) if Gi[a, c]} for a in range(alg.dim)]


def free_map(ctx, X, Y, fn):
    """Matrix of the linear map X -> Y given on decoded basis tuples (single-word X, Y)."""
    xs, ys = X.spaces[0], Y.spaces[0]
    fld = ctx.field
    M = [[0] * X.dim for _ in range(Y.dim)]
    for n in range(xs.dim):
        for t, c in fn(list(xs.decode(n))).items():
            if fld.norm(c):
                M[ys.encode(list(t))][n] += c
    return [[fld.norm(x) for x in row] for row in M]


def _merge(alg, pre, x, y, post, coef=1):
    out = {}
    for c, z in enumerate(mult_vec(alg, basis_vec(alg, x), basis_vec(alg, y))):
        if z:
            k = tuple(pre) + (c,) + tuple(post)
            out[k] = out.get(k, 0) + coef * z
    return out


def unitor_l(alg):
    return lambda t: _merge(alg, [], t[0], t[1], t[2:])


def unitor_r(alg):
    return lambda t: _merge(alg, t[:-2], t[-2], t[-1], [])


def casimir(alg, i):
    """[(a, vector of e_i a*)] for the basis a of A e_i."""
    star = dual_basis(alg)
    e = alg.idem[i]
    out = []
    for a in range(alg.dim):
        if alg.peirce[a][1] != i:
            continue
        v = [0] * alg.dim
        for c, z in star[a].items():
            for d, w in enumerate(mult_vec(alg, basis_vec(alg, e), basis_vec(alg, c))):
                v[d] += z * w
        out.append((a, v))
    return out


def unitor_lp(alg, i):
    C = casimir(alg, i)

    def fn(t):
        out = {}
        for a, v in C:
            for b, z in enumerate(v):
                if z:
                    for k, w in _merge(alg, [a], b, t[0], t[1:], z).items():
                        out[k] = out.get(k, 0) + w
        return out
    return fn


def unitor_rp(alg, j):
    C = casimir(alg, j)

    def fn(t):
        out = {}
        for a, v in C:
            for b, z in enumerate(v):
                if z:
                    for k, w in _merge(alg, t[:-1], t[-1], a, [b], z).items():
                        out[k] = out.get(k, 0) + w
        return out
    return fn


def cells(alg):
    """Left, right, two-sided cells of {F_ij} from dense tensor dimensions (networkx SCCs)."""
    import networkx as nx
    from fiax import bimodule as bm
    labs = [(i, j) for i in range(alg.n) for j in range(alg.n)]
    P = {lab: bm.free_projective(alg, *lab) for lab in labs}
    GL, GR = nx.DiGraph(), nx.DiGraph()
    GL.add_nodes_from(labs)
    GR.add_nodes_from(labs)
    for (i, j) in labs:
        for (k, l) in labs:
            # F_ij F_kl is a multiple of F_il; it is nonzero iff the dense tensor is
            if tensor_dim(P[(i, j)], P[(k, l)]):
                GL.add_edge((k, l), (i, l))     # H F with F = F_kl
                GR.add_edge((i, j), (i, l))     # F H with F = F_ij
    GJ = nx.compose(GL, GR)

    def classes(G):
        return sorted(sorted(c) for c in nx.strongly_connected_components(G))
    return classes(GL), classes(GR), classes(GJ)
