"""The bilax-unital 2-category D_A.

Objects are 0..n-1.  A 1-morphism is a formal sum of *words*; a word is a
tuple of atoms read as a composite a1 a2 ... ak (a1 applied last).  Atoms:

  Free(p, q)   the bimodule A e_p (x)_k e_q A, a 1-morphism q -> p
  Gen(M, s, t) an arbitrary bimodule M (a completed unit, a (co)tensor
               product, or a left module when s is None)

Composition is concatenation, so horizontal composition is strictly
associative.  The carrier of a word splits at its Free atoms: between two
consecutive Free atoms sits a segment T(atoms) = left-nested tensor over A of
the Gen atoms in between (T of nothing is A itself), cut down by the
neighbouring idempotents.  The carrier is the k-tensor product of the
segments, indexed in mixed radix.
"""

import random
from collections import namedtuple
from itertools import count

from . import bimodule as bm
from .linalg import SparseMatrix
from .report import Record, Report, negative


class CompositionMismatch(ValueError):
    pass


class NotSplit(AssertionError):
    pass


class Free(namedtuple("Free", "p q")):
    __slots__ = ()
    src = property(lambda self: self.q)
    tgt = property(lambda self: self.p)

    def __str__(self):
        return "F%d%d" % (self.p + 1, self.q + 1)


_gen_ids = count()


class Gen:
    """Opaque bimodule atom; compared by identity."""

    __slots__ = ("mod", "src", "tgt", "name", "uid")

    def __init__(self, mod, src, tgt, name=None):
        self.mod = mod
        self.src = src
        self.tgt = tgt
        self.name = name or mod.name or "M"
        self.uid = next(_gen_ids)

    def __hash__(self):
        return hash(("gen", self.uid))

    def __eq__(self, other):
        return self is other

    def __lt__(self, other):
        return str(self) < str(other)

    def __repr__(self):
        return "Gen(%s)" % self.name

    __str__ = lambda self: self.name


def word_str(w):
    return "".join(str(a) for a in w) or "()"


# ---------------------------------------------------------------- tensors


class Tensors:
    """Cached left-nested tensors T(atoms) and their bilinear projections."""

    def __init__(self, alg):
        self.alg = alg
        self.reg = bm.regular(alg)
        self._T = {(): (self.reg, None)}
        self._pi = {}
        self._sigma = {}

    def get(self, atoms):
        hit = self._T.get(atoms)
        if hit is None:
            if len(atoms) == 1:
                hit = (atoms[0].mod, None)
            else:
                prev = self.get(atoms[:-1])[0]
                hit = bm.tensor_over_A(prev, atoms[-1].mod)
            self._T[atoms] = hit
        return hit

    def pi(self, S1, S2, u, v):
        """Image of u (x) v in T(S1 + S2), u, v basis indices."""
        key = (S1, S2, u, v)
        hit = self._pi.get(key)
        if hit is not None:
            return hit
        f = self.alg.field
        if not S2:
            T = self.get(S1)[0]
            out = dict(T.right[v][u])
        elif not S1:
            T = self.get(S2)[0]
            out = dict(T.left[u][v])
        elif len(S2) == 1:
            out = dict(self.get(S1 + S2)[1].project_pair(u, v))
        else:
            vp, y = self.get(S2)[1].basis[v]
            td = self.get(S1 + S2)[1]
            acc = {}
            for z, c in self.pi(S1, S2[:-1], u, vp).items():
                for w, d in td.project_pair(z, y).items():
                    acc[w] = acc.get(w, 0) + c * d
            out = {w: f.norm(c) for w, c in acc.items() if f.norm(c)}
        self._pi[key] = out
        return out

    def sigma(self, S1, S2, m):
        """Write basis element m of T(S1 + S2) as a sum of x (x) z.

        Returns [(x, {z: c})] with x a basis index of T(S1)."""
        key = (S1, S2, m)
        hit = self._sigma.get(key)
        if hit is not None:
            return hit
        A = self.alg
        T = self.get(S1 + S2)[0]
        if not S1:
            out = [(A.idem[T.labels[m][0]], {m: 1})]
        elif not S2:
            out = [(m, {A.idem[T.labels[m][1]]: 1})]
        else:
            ys = []
            x = m
            for k in range(len(S2), 0, -1):
                x, y = self.get(S1 + S2[:k])[1].basis[x]
                ys.append(y)
            ys.reverse()
            z = {ys[0]: 1}
            f = A.field
            for k in range(1, len(ys)):
                td = self.get(S2[:k + 1])[1]
                acc = {}
                for zz, c in z.items():
                    for w, d in td.project_pair(zz, ys[k]).items():
                        acc[w] = acc.get(w, 0) + c * d
                z = {w: f.norm(c) for w, c in acc.items() if f.norm(c)}
            out = [(x, z)] if z else []
        self._sigma[key] = out
        return out


# ---------------------------------------------------------------- words


class WordSpace:
    def __init__(self, tensors, word):
        self.word = word
        self.tensors = tensors
        frees = [k for k, a in enumerate(word) if isinstance(a, Free)]
        bounds = [-1] + frees + [len(word)]
        segs = []
        for n in range(len(bounds) - 1):
            atoms = tuple(word[bounds[n] + 1:bounds[n + 1]])
            lres = word[bounds[n]].q if n > 0 else None
            rres = word[bounds[n + 1]].p if n + 1 < len(bounds) - 1 else None
            segs.append((atoms, lres, rres))
        self.segs = segs
        self.idx = []
        self.pos = []
        for atoms, lres, rres in segs:
            T = tensors.get(atoms)[0]
            ids = [b for b in range(T.dim)
                   if (lres is None or T.labels[b][0] == lres)
                   and (rres is None or T.labels[b][1] == rres)]
            self.idx.append(ids)
            self.pos.append({b: k for k, b in enumerate(ids)})
        self.dims = [len(i) for i in self.idx]
        st = [1] * len(segs)
        for k in range(len(segs) - 2, -1, -1):
            st[k] = st[k + 1] * self.dims[k + 1]
        self.strides = st
        d = 1
        for x in self.dims:
            d *= x
        self.dim = d
        self._carrier = None

    def seg_atoms(self, k):
        return self.segs[k][0]

    def decode(self, n):
        out = []
        for ids, s, d in zip(self.idx, self.strides, self.dims):
            q, n = divmod(n, s)
            out.append(ids[q])
        return out

    def encode(self, tidx):
        n = 0
        for t, pos, s in zip(tidx, self.pos, self.strides):
            n += pos[t] * s
        return n

    def carrier(self):
        """The underlying Bimodule (left action on the first segment, right on the last)."""
        if self._carrier is None:
            A = self.tensors.alg
            T0 = self.tensors.get(self.segs[0][0])[0]
            TL = self.tensors.get(self.segs[-1][0])[0]
            last = len(self.segs) - 1
            left, right = [], []
            decs = [self.decode(n) for n in range(self.dim)]
            for a in range(A.dim):
                lc = []
                for t in decs:
                    col = {}
                    for b, c in T0.left[a][t[0]].items():
                        col[self.encode([b] + t[1:])] = c
                    lc.append(col)
                left.append(lc)
                if TL.right is not None:
                    rc = []
                    for t in decs:
                        col = {}
                        for b, c in TL.right[a][t[last]].items():
                            col[self.encode(t[:last] + [b])] = c
                        rc.append(col)
                    right.append(rc)
            labels = [(T0.labels[t[0]][0], TL.labels[t[last]][1]) for t in decs]
            self._carrier = bm.Bimodule(A, self.dim, left, right if TL.right is not None else None,
                                        labels, name=word_str(self.word))
        return self._carrier


class OneMorphism:
    """Formal sum of composable words with fixed source and target objects."""

    def __init__(self, ctx, terms, src, tgt):
        self.ctx = ctx
        self.terms = tuple(terms)
        self.src = src
        self.tgt = tgt
        for w in self.terms:
            assert w, "empty word"
            if w[0].tgt != tgt or w[-1].src != src:
                raise CompositionMismatch("term %s is not a 1-morphism %s -> %s" % (word_str(w), src, tgt))
            for a, b in zip(w, w[1:]):
                if a.src != b.tgt:
                    raise CompositionMismatch("word %s is not composable" % word_str(w))
        self.spaces = [ctx.space(w) for w in self.terms]
        offs, o = [], 0
        for s in self.spaces:
            offs.append(o)
            o += s.dim
        self.offsets = offs
        self.dim = o
        self._carrier = None
        self._split_cache = None

    def __repr__(self):
        return "OneMorphism(%s)" % self.name()

    def name(self):
        return " + ".join(word_str(w) for w in self.terms) or "0"

    def __eq__(self, other):
        return isinstance(other, OneMorphism) and self.terms == other.terms and \
            self.src == other.src and self.tgt == other.tgt

    __hash__ = None

    def __mul__(self, other):
        return self.ctx.compose(self, other)

    def __add__(self, other):
        if (self.src, self.tgt) != (other.src, other.tgt):
            raise CompositionMismatch("mixed hom-categories in a direct sum")
        return OneMorphism(self.ctx, self.terms + other.terms, self.src, self.tgt)

    def split(self, n):
        """(term index, local index) of a global basis index."""
        if self._split_cache is None:
            tab = []
            for t, s in enumerate(self.spaces):
                tab.extend((t, k) for k in range(s.dim))
            self._split_cache = tab
        return self._split_cache[n]

    def carrier(self):
        if self._carrier is None:
            cs = [s.carrier() for s in self.spaces]
            if not cs:
                A = self.ctx.alg
                self._carrier = bm.Bimodule(A, 0, [[] for _ in range(A.dim)],
                                            [[] for _ in range(A.dim)], [], name="0")
            elif len(cs) == 1:
                self._carrier = cs[0]
            else:
                self._carrier = bm.direct_sum(cs)[0]
        return self._carrier


class TwoMorphism:
    __slots__ = ("src", "tgt", "mat")

    def __init__(self, src, tgt, mat):
        assert mat.nrows == tgt.dim and mat.ncols == src.dim, (mat.shape, tgt.dim, src.dim)
        self.src = src
        self.tgt = tgt
        self.mat = mat

    def __repr__(self):
        return "TwoMorphism(%s => %s)" % (self.src.name(), self.tgt.name())

    def __matmul__(self, other):
        return vcomp(self, other)

    def __add__(self, other):
        assert self.src == other.src and self.tgt == other.tgt
        return TwoMorphism(self.src, self.tgt, self.mat + other.mat)

    def __sub__(self, other):
        assert self.src == other.src and self.tgt == other.tgt
        return TwoMorphism(self.src, self.tgt, self.mat - other.mat)

    def scale(self, s):
        return TwoMorphism(self.src, self.tgt, self.mat.scale(s))

    def __eq__(self, other):
        return isinstance(other, TwoMorphism) and self.src == other.src and \
            self.tgt == other.tgt and self.mat == other.mat

    __hash__ = None

    def is_bimodule_map(self):
        return bm.BimoduleMap(self.src.carrier(), self.tgt.carrier(), self.mat).verify()

    def is_iso(self):
        return self.mat.is_invertible()

    def inverse(self):
        return TwoMorphism(self.tgt, self.src, self.mat.inverse())


def vcomp(g, f):
    if f.tgt != g.src:
        raise CompositionMismatch("vcomp: %s vs %s" % (f.tgt.name(), g.src.name()))
    return TwoMorphism(f.src, g.tgt, g.mat @ f.mat)


def identity(F):
    return TwoMorphism(F, F, SparseMatrix.identity(F.dim, F.ctx.field))


def zero(F, H):
    return TwoMorphism(F, H, SparseMatrix.zero(H.dim, F.dim, F.ctx.field))


def hcomp(beta, alpha):
    """beta . alpha : K F => L H for beta: K => L and alpha: F => H."""
    K, L, F, H = beta.src, beta.tgt, alpha.src, alpha.tgt
    if K.src != F.tgt or L.src != H.tgt:
        raise CompositionMismatch("hcomp: objects do not match")
    ctx = K.ctx
    fld = ctx.field
    tens = ctx.tensors
    KF = ctx.compose(K, F)
    LH = ctx.compose(L, H)
    nF, nH = len(F.terms), len(H.terms)
    cols = []
    bcols, acols = beta.mat.cols, alpha.mat.cols
    for ki, ks in enumerate(K.spaces):
        for fi, fs in enumerate(F.spaces):
            ws = KF.spaces[ki * nF + fi]
            nk = len(ks.segs) - 1
            Sk = ks.seg_atoms(nk)
            Sf = fs.seg_atoms(0)
            koff, foff = K.offsets[ki], F.offsets[fi]
            for n in range(ws.dim):
                t = ws.decode(n)
                kpre, m, fpost = t[:nk], t[nk], t[nk + 1:]
                acc = {}
                for x, zvec in tens.sigma(Sk, Sf, m):
                    bvec = bcols[koff + ks.encode(kpre + [x])]
                    if not bvec:
                        continue
                    avec = {}
                    for z, c in zvec.items():
                        for r, v in acols[foff + fs.encode([z] + fpost)].items():
                            avec[r] = avec.get(r, 0) + c * v
                    for lr, bc in bvec.items():
                        lt, ll = L.split(lr)
                        ls = L.spaces[lt]
                        ld = ls.decode(ll)
                        nl = len(ls.segs) - 1
                        Sl = ls.seg_atoms(nl)
                        for hr, ac in avec.items():
                            if not fld.norm(ac):
                                continue
                            ht, hl = H.split(hr)
                            hs = H.spaces[ht]
                            hd = hs.decode(hl)
                            term = lt * nH + ht
                            ts = LH.spaces[term]
                            off = LH.offsets[term]
                            coef = bc * ac
                            for w, c in tens.pi(Sl, hs.seg_atoms(0), ld[nl], hd[0]).items():
                                row = off + ts.encode(ld[:nl] + [w] + hd[1:])
                                acc[row] = acc.get(row, 0) + coef * c
                cols.append({r: fld.norm(v) for r, v in acc.items() if fld.norm(v)})
    return TwoMorphism(KF, LH, SparseMatrix(LH.dim, KF.dim, cols, fld))


def whisker_left(G, alpha):
    return hcomp(identity(G), alpha)


def whisker_right(beta, F):
    return hcomp(beta, identity(F))


# ---------------------------------------------------------------- D_A


class UnitData:
    """A lax (or oplax) unit at object i given by unitor builders."""

    def __init__(self, name, unit, left, right):
        self.name = name
        self.unit = unit        # OneMorphism i -> i
        self.left = left        # F -> 2-morphism (unit F => F) or (F => unit F)
        self.right = right


class DA:
    """D_A with its lax units I_i, oplax units I'_i and four unitor families.

    `corrupt` plants defects for negative controls:
      "swap"   l and r exchanged on the unit words themselves
      "oplax"  oplax unitors insert sum a (x) a instead of sum a (x) a*
    """

    def __init__(self, alg, corrupt=None, allow_degenerate=False, seed=0):
        self.alg = alg
        self.field = alg.field
        self.n = alg.n
        self.corrupt = corrupt
        self.seed = seed
        self.tensors = Tensors(alg)
        self._spaces = {}
        try:
            self.star = alg.dual_basis()
        except Exception:
            if not allow_degenerate:
                raise
            self.star = None
        self._unitor_cache = {}

    # 1-morphisms ------------------------------------------------------

    def space(self, w):
        s = self._spaces.get(w)
        if s is None:
            s = self._spaces[w] = WordSpace(self.tensors, w)
        return s

    def one(self, words, src, tgt):
        return OneMorphism(self, words, src, tgt)

    def F(self, i, j):
        """F_ij = A e_i (x) e_j A, a 1-morphism j -> i."""
        return OneMorphism(self, [(Free(i, j),)], j, i)

    def I(self, i):
        return self.F(i, i)

    Ip = I

    def gen(self, mod, src, tgt, name=None):
        return OneMorphism(self, [(Gen(mod, src, tgt, name),)], src, tgt)

    def left_module(self, mod, obj, name=None):
        """A left module (an object of the defining representation) as a word."""
        return OneMorphism(self, [(Gen(mod, None, obj, name),)], None, obj)

    def compose(self, G, F):
        if G.src != F.tgt:
            raise CompositionMismatch("cannot compose %s after %s" % (G.name(), F.name()))
        return OneMorphism(self, [g + f for g in G.terms for f in F.terms], F.src, G.tgt)

    def zero1(self, src, tgt):
        return OneMorphism(self, [], src, tgt)

    def direct_sum(self, Fs):
        out = Fs[0]
        for F in Fs[1:]:
            out = out + F
        return out

    def generators(self, i=None, j=None, with_sum=True):
        """All F_kl with tgt k = i and src l = j (None = any), plus a seeded random sum."""
        gens = [self.F(k, l) for k in range(self.n) for l in range(self.n)
                if (i is None or k == i) and (j is None or l == j)]
        if with_sum and gens:
            rng = random.Random(self.seed)
            g = gens[rng.randrange(len(gens))]
            gens.append(g + g)
        return gens

    def hom(self, F, H):
        """Basis of 2-morphisms F => H."""
        return [TwoMorphism(F, H, m.mat) for m in bm.hom_space(F.carrier(), H.carrier())]

    # unitors -----------------------------------------------------------

    def _per_term(self, src, tgt, fn):
        """Block-diagonal 2-morphism built term by term: fn(term index, local col) -> local vec."""
        cols = []
        for t, ss in enumerate(src.spaces):
            off = tgt.offsets[t]
            for n in range(ss.dim):
                cols.append({off + r: v for r, v in fn(t, n).items()})
        return TwoMorphism(src, tgt, SparseMatrix(tgt.dim, src.dim, cols, self.field))

    def _is_unit_word(self, X):
        return len(X.terms) == 1 and len(X.terms[0]) == 1 and isinstance(X.terms[0][0], Free) \
            and X.terms[0][0].p == X.terms[0][0].q

    def l(self, X):
        """Left lax unitor l_X: I_i X => X, multiply through."""
        if self.corrupt == "swap" and self._is_unit_word(X):
            return self._r(X)
        return self._l(X)

    def r(self, X):
        """Right lax unitor r_X: X I_j => X."""
        if self.corrupt == "swap" and self._is_unit_word(X):
            return self._l(X)
        return self._r(X)

    def _l(self, X):
        key = ("l", X.terms, X.tgt)
        hit = self._unitor_cache.get(key)
        if hit is not None:
            return hit
        i = X.tgt
        IX = self.compose(self.I(i), X)
        tens = self.tensors

        def fn(t, n):
            src = IX.spaces[t]
            dst = X.spaces[t]
            d = src.decode(n)
            a, t0, rest = d[0], d[1], d[2:]
            out = {}
            for w, c in tens.pi((), dst.seg_atoms(0), a, t0).items():
                out[dst.encode([w] + rest)] = c
            return out
        res = self._per_term(IX, X, fn)
        self._unitor_cache[key] = res
        return res

    def _r(self, X):
        key = ("r", X.terms, X.src)
        hit = self._unitor_cache.get(key)
        if hit is not None:
            return hit
        j = X.src
        XI = self.compose(X, self.I(j))
        tens = self.tensors

        def fn(t, n):
            src = XI.spaces[t]
            dst = X.spaces[t]
            d = src.decode(n)
            k = len(dst.segs) - 1
            out = {}
            for w, c in tens.pi(dst.seg_atoms(k), (), d[k], d[k + 1]).items():
                out[dst.encode(d[:k] + [w])] = c
            return out
        res = self._per_term(XI, X, fn)
        self._unitor_cache[key] = res
        return res

    def casimir(self, i):
        """[(a, e_i a* as vector)] for basis a in A e_i: the element sum a e_i (x) e_i a*."""
        if self.star is None:
            raise NotSplit("oplax unitors need a nondegenerate trace form")
        A = self.alg
        out = []
        for a in A.block(None, i):
            dual = {a: 1} if self.corrupt == "oplax" else self.star[a]
            v = A.mul_vec({A.idem[i]: 1}, dual)
            if v:
                out.append((a, v))
        return out

    def lp(self, X):
        """Left oplax unitor l'_X: X => I'_i X, x |-> C_i (x) x."""
        key = ("lp", X.terms, X.tgt)
        hit = self._unitor_cache.get(key)
        if hit is not None:
            return hit
        i = X.tgt
        IX = self.compose(self.I(i), X)
        C = self.casimir(i)
        tens, fld = self.tensors, self.field

        def fn(t, n):
            src = X.spaces[t]
            dst = IX.spaces[t]
            d = src.decode(n)
            S0 = src.seg_atoms(0)
            out = {}
            for a, v in C:
                for b, c in v.items():
                    for w, e in tens.pi((), S0, b, d[0]).items():
                        r = dst.encode([a, w] + d[1:])
                        out[r] = out.get(r, 0) + c * e
            return {r: fld.norm(v) for r, v in out.items() if fld.norm(v)}
        res = self._per_term(X, IX, fn)
        self._unitor_cache[key] = res
        return res

    def rp(self, X):
        """Right oplax unitor r'_X: X => X I'_j, x |-> x (x) C_j."""
        key = ("rp", X.terms, X.src)
        hit = self._unitor_cache.get(key)
        if hit is not None:
            return hit
        j = X.src
        XI = self.compose(X, self.I(j))
        C = self.casimir(j)
        tens, fld = self.tensors, self.field

        def fn(t, n):
            src = X.spaces[t]
            dst = XI.spaces[t]
            d = src.decode(n)
            k = len(src.segs) - 1
            Sk = src.seg_atoms(k)
            out = {}
            for a, v in C:
                for w, e in tens.pi(Sk, (), d[k], a).items():
                    for b, c in v.items():
                        r = dst.encode(d[:k] + [w, b])
                        out[r] = out.get(r, 0) + c * e
            return {r: fld.norm(v) for r, v in out.items() if fld.norm(v)}
        res = self._per_term(X, XI, fn)
        self._unitor_cache[key] = res
        return res

    def lax_unit(self, i):
        return UnitData("I%d" % (i + 1), self.I(i), self.l, self.r)

    def oplax_unit(self, i):
        return UnitData("I'%d" % (i + 1), self.I(i), self.lp, self.rp)


# ---------------------------------------------------------------- checks


def _eq_record(cid, anchor, lhs, rhs, negative_control=False, detail=None):
    ok = lhs.mat == rhs.mat
    wit = None if ok else lhs.mat.diff_witness(rhs.mat)
    if negative_control:
        return negative(cid, anchor, not ok, witness=wit, detail=detail)
    return Record(cid, anchor, ok, witness=wit, detail=detail)


def _gname(F):
    return F.name().replace(" ", "")


def check_lax_unit(ctx, i, unit=None, gens=None, tag=None, oplax=False):
    """Unit axioms, naturality and bimodule-map checks for a lax (or oplax) unit at i."""
    U = unit or (ctx.oplax_unit(i) if oplax else ctx.lax_unit(i))
    tag = tag or ("oplax" if oplax else "lax")
    anchor = "Def 2.2(1)" if not oplax else "Def 2.2(1) dual"
    rep = Report()
    Fs = gens if gens is not None else ctx.generators(i=i)      # tgt i
    Gs = ctx.generators(j=i)                                    # src i
    Uw = U.unit
    for F in Fs:
        for G in Gs:
            if oplax:
                lhs = hcomp(identity(G), U.left(F))
                rhs = hcomp(U.right(G), identity(F))
            else:
                lhs = hcomp(identity(G), U.left(F))
                rhs = hcomp(U.right(G), identity(F))
            rep.add(_eq_record("units.%s.%s.a.%s.%s" % (tag, U.name, _gname(G), _gname(F)),
                               anchor + "(a)", lhs, rhs))
    # (b): l_{FH} = l_F . id_H and r_{KG} = id_K . r_G
    for F in Fs:
        for H in ctx.generators(i=F.src, with_sum=False)[:1]:
            lhs = U.left(ctx.compose(F, H))
            rhs = hcomp(U.left(F), identity(H))
            rep.add(_eq_record("units.%s.%s.b.left.%s.%s" % (tag, U.name, _gname(F), _gname(H)),
                               anchor + "(b)", lhs, rhs))
    for G in Gs:
        for K in ctx.generators(j=G.tgt, with_sum=False)[:1]:
            lhs = U.right(ctx.compose(K, G))
            rhs = hcomp(identity(K), U.right(G))
            rep.add(_eq_record("units.%s.%s.b.right.%s.%s" % (tag, U.name, _gname(K), _gname(G)),
                               anchor + "(b)", lhs, rhs))
    # bimodule maps and naturality against hom bases
    for F in Fs:
        if len(F.terms) > 1:
            continue
        lf = U.left(F)
        ok = lf.is_bimodule_map()
        rep.add(Record("units.%s.%s.bimodule_map.left.%s" % (tag, U.name, _gname(F)),
                       "unitor formulas", ok))
        for al in ctx.hom(F, F):
            if oplax:
                lhs = hcomp(identity(Uw), al) @ lf
                rhs = lf @ al
            else:
                lhs = lf @ hcomp(identity(Uw), al)
                rhs = al @ lf
            if lhs.mat != rhs.mat:
                rep.add(_eq_record("units.%s.%s.natural.left.%s" % (tag, U.name, _gname(F)),
                                   "unitor naturality", lhs, rhs))
                break
        else:
            rep.add(Record("units.%s.%s.natural.left.%s" % (tag, U.name, _gname(F)),
                           "unitor naturality", True))
    for G in Gs:
        if len(G.terms) > 1:
            continue
        rg = U.right(G)
        rep.add(Record("units.%s.%s.bimodule_map.right.%s" % (tag, U.name, _gname(G)),
                       "unitor formulas", rg.is_bimodule_map()))
        ok = True
        for al in ctx.hom(G, G):
            if oplax:
                lhs, rhs = hcomp(al, identity(Uw)) @ rg, rg @ al
            else:
                lhs, rhs = rg @ hcomp(al, identity(Uw)), al @ rg
            if lhs.mat != rhs.mat:
                rep.add(_eq_record("units.%s.%s.natural.right.%s" % (tag, U.name, _gname(G)),
                                   "unitor naturality", lhs, rhs))
                ok = False
                break
        if ok:
            rep.add(Record("units.%s.%s.natural.right.%s" % (tag, U.name, _gname(G)),
                           "unitor naturality", True))
    return rep


def check_oplax_unit(ctx, i, unit=None, gens=None, tag=None):
    return check_lax_unit(ctx, i, unit=unit, gens=gens, tag=tag, oplax=True)


def check_interchange(ctx, i, samples=2):
    """(beta . id)(id . alpha) = (id . alpha)(beta . id) = beta . alpha on hom-basis pairs."""
    rep = Report()
    rng = random.Random(ctx.seed)
    F = ctx.F(i, i)
    basis = ctx.hom(F, F)
    for k in range(samples):
        a = basis[rng.randrange(len(basis))]
        b = basis[rng.randrange(len(basis))]
        both = hcomp(b, a)
        one = hcomp(b, identity(F)) @ hcomp(identity(F), a)
        two = hcomp(identity(F), a) @ hcomp(b, identity(F))
        ok = both.mat == one.mat == two.mat
        rep.add(Record("units.interchange.%d.%d" % (i + 1, k), "Def 2.1 interchange", ok))
    return rep


def find_section(ctx, p, candidates=None):
    """A 2-morphism s with p @ s = id, searched in the hom space; None if none exists."""
    X = p.tgt
    basis = candidates if candidates is not None else ctx.hom(X, p.src)
    return _solve_combo(ctx, basis, lambda s: p @ s, identity(X))


def find_retraction(ctx, i_map, candidates=None):
    """A 2-morphism q with q @ i_map = id."""
    X = i_map.src
    basis = candidates if candidates is not None else ctx.hom(i_map.tgt, X)
    return _solve_combo(ctx, basis, lambda q: q @ i_map, identity(X))


def _solve_combo(ctx, basis, op, target):
    """Find sum c_k basis_k with op(sum) = target (op linear)."""
    from .linalg import Inconsistent
    f = ctx.field
    if not basis:
        return None if target.mat.nnz() else zero(target.src, target.tgt)
    imgs = [op(b).mat for b in basis]
    n = target.mat.nrows * target.mat.ncols
    nr = target.mat.nrows
    cols = []
    for m in imgs:
        cols.append({j * nr + i: v for j, c in enumerate(m.cols) for i, v in c.items()})
    M = SparseMatrix(n, len(basis), cols, f)
    rhs = {j * nr + i: v for j, c in enumerate(target.mat.cols) for i, v in c.items()}
    try:
        coef = M.solve_vec(rhs)
    except Inconsistent:
        return None
    out = zero(basis[0].src, basis[0].tgt)
    for k, c in coef.items():
        out = out + basis[k].scale(c)
    assert op(out).mat == target.mat
    return out


def check_split(ctx, i, gens=None):
    """Sections for the lax unitors l_F, r_G and retractions for l'_F, r'_G."""
    rep = Report()
    for F in gens if gens is not None else ctx.generators(i=i, with_sum=False):
        s = find_section(ctx, ctx.l(F))
        rep.add(Record("split.lax.left.%d.%s" % (i + 1, _gname(F)), "Def 2.2(2)", s is not None,
                       witness=None if s is not None else {"generator": F.name()}))
        if ctx.star is not None:
            q = find_retraction(ctx, ctx.lp(F))
            rep.add(Record("split.oplax.left.%d.%s" % (i + 1, _gname(F)), "Lemma prop:fiaxsplit",
                           q is not None))
    for G in ctx.generators(j=i, with_sum=False):
        s = find_section(ctx, ctx.r(G))
        rep.add(Record("split.lax.right.%d.%s" % (i + 1, _gname(G)), "Def 2.2(2)", s is not None,
                       witness=None if s is not None else {"generator": G.name()}))
        if ctx.star is not None:
            q = find_retraction(ctx, ctx.rp(G))
            rep.add(Record("split.oplax.right.%d.%s" % (i + 1, _gname(G)), "Lemma prop:fiaxsplit",
                           q is not None))
    return rep


def compose_lax_units(ctx, i, unit=None):
    """Lax unit structure on J = I I: l^J_F = l_F (id_I . l_F), r^J_G = r_G (r_G . id_I)."""
    U = unit or ctx.lax_unit(i)
    J = ctx.compose(U.unit, U.unit)

    def left(F):
        return U.left(F) @ hcomp(identity(U.unit), U.left(F))

    def right(G):
        return U.right(G) @ hcomp(U.right(G), identity(U.unit))
    return UnitData(U.name + U.name, J, left, right)


def q28_composites(ctx, i):
    """r_{I'} l'_I and l_{I'} r'_I as maps I => I'."""
    I = ctx.I(i)
    return ctx.r(I) @ ctx.lp(I), ctx.l(I) @ ctx.rp(I)


def check_compatibility_Q28(ctx, mirror=True):
    """One record: both composites agree at every object, and on the opposite algebra."""
    neg = ctx.corrupt == "oplax"
    per, wit = {}, None
    ctxs = [("", ctx)]
    if mirror:
        ctxs.append((".mirror", DA(ctx.alg.opposite(), corrupt=ctx.corrupt, seed=ctx.seed)))
    for suffix, c in ctxs:
        for i in range(c.n):
            one, two = q28_composites(c, i)
            ok = one.mat == two.mat
            per["%d%s" % (i + 1, suffix)] = ok
            if not ok and wit is None:
                wit = one.mat.diff_witness(two.mat)
                wit["object"] = "%d%s" % (i + 1, suffix)
    agree = all(per.values())
    detail = {"agree": per}
    if neg:
        return Report([negative("q28.compatibility", "Question 2.8", not agree,
                                witness=wit, detail=detail)])
    return Report([Record("q28.compatibility", "Question 2.8", agree, witness=wit, detail=detail)])


# ---------------------------------------------------------------- defining representation


def representation_objects(ctx):
    """Left modules A e_k, as words, one per object."""
    return [ctx.left_module(bm.regular_left(ctx.alg, k), k, name="Ae%d" % (k + 1))
            for k in range(ctx.n)]


def rep_u(ctx, X):
    """u_X: I X => X."""
    return ctx.l(X)


def rep_up(ctx, X, identity_insertion=False):
    """u'_X: X => I' X; identity_insertion plants the negative control x |-> e (x) x."""
    if not identity_insertion:
        return ctx.lp(X)
    i = X.tgt
    IX = ctx.compose(ctx.I(i), X)
    e = ctx.alg.idem[i]
    tens = ctx.tensors

    def fn(t, n):
        src, dst = X.spaces[t], IX.spaces[t]
        d = src.decode(n)
        return {dst.encode([e] + [w] + d[1:]): c
                for w, c in tens.pi((), src.seg_atoms(0), e, d[0]).items()}
    return ctx._per_term(X, IX, fn)


def check_defining_representation(ctx, negative_control=False):
    """The four identities relating u, u' with l, r, l', r' on generators A e_k.

    With negative_control only the two u' identities run, against a planted u'."""
    rep = Report()
    pre = "representation.negative" if negative_control else "representation"
    anchor = "Def 2.10 / eq:bilax-2-rep"
    for X in representation_objects(ctx):
        k = X.tgt
        for F in ctx.generators(j=k, with_sum=False):
            FX = ctx.compose(F, X)
            tag = "%s.%s" % (_gname(F), X.name())
            if not negative_control:
                rep.add(_eq_record(pre + ".u.left." + tag, anchor,
                                   rep_u(ctx, FX), hcomp(ctx.l(F), identity(X))))
                rep.add(_eq_record(pre + ".u.right." + tag, anchor,
                                   hcomp(identity(F), rep_u(ctx, X)), hcomp(ctx.r(F), identity(X))))
            lhs = rep_up(ctx, FX, identity_insertion=negative_control)
            rep.add(_eq_record(pre + ".up.left." + tag, anchor, lhs, hcomp(ctx.lp(F), identity(X)),
                               negative_control=negative_control))
            lhs = hcomp(identity(F), rep_up(ctx, X, identity_insertion=negative_control))
            rep.add(_eq_record(pre + ".up.right." + tag, anchor, lhs, hcomp(ctx.rp(F), identity(X)),
                               negative_control=negative_control))
    return rep
