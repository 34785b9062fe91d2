"""Adjoint pairs in D_A, the weak involution, uniqueness isos, (co)monads,
and the representation-level adjunction."""

import random

from .engine import (Free, OneMorphism, TwoMorphism, hcomp, identity, zero,
                     _eq_record, _gname, rep_u, rep_up)
from .linalg import SparseMatrix
from .report import Record, Report


class ZigzagViolation(AssertionError):
    pass


class AdjunctionData:
    """(F, G, alpha: I'_j => GF, beta: FG => I_i) for F: j -> i."""

    def __init__(self, ctx, F, G, alpha, beta):
        self.ctx = ctx
        self.F, self.G = F, G
        self.alpha, self.beta = alpha, beta
        assert F.src == G.tgt and F.tgt == G.src

    def __repr__(self):
        return "Adjunction(%s -| %s)" % (self.F.name(), self.G.name())

    def scaled(self, la, lb):
        return AdjunctionData(self.ctx, self.F, self.G, self.alpha.scale(la), self.beta.scale(lb))

    def zigzags(self):
        ctx, F, G = self.ctx, self.F, self.G
        zf = ctx.l(F) @ hcomp(self.beta, identity(F)) @ hcomp(identity(F), self.alpha) @ ctx.rp(F)
        zg = ctx.r(G) @ hcomp(identity(G), self.beta) @ hcomp(self.alpha, identity(G)) @ ctx.lp(G)
        return zf, zg


def build_adjunction(ctx, i, j, trace=None):
    """Adjunction (F_ij, F_ji) from the trace form; `trace` overrides the algebra's."""
    A = ctx.alg
    f = ctx.field
    tr = [f(t) for t in trace] if trace is not None else A.trace
    F, G = ctx.F(i, j), ctx.F(j, i)
    GF, FG = ctx.compose(G, F), ctx.compose(F, G)
    Ip, I = ctx.I(j), ctx.I(i)
    e_i = A.idem[i]
    # alpha: b (x) c |-> b (x) e_i (x) c
    src, dst = Ip.spaces[0], GF.spaces[0]
    cols = []
    for n in range(src.dim):
        b, c = src.decode(n)
        cols.append({dst.encode([b, e_i, c]): 1})
    alpha = TwoMorphism(Ip, GF, SparseMatrix(GF.dim, Ip.dim, cols, f))
    # beta: a (x) m (x) d |-> tr(m) a (x) d
    src, dst = FG.spaces[0], I.spaces[0]
    cols = []
    for n in range(src.dim):
        a, m, d = src.decode(n)
        t = tr[m]
        cols.append({dst.encode([a, d]): t} if t else {})
    beta = TwoMorphism(FG, I, SparseMatrix(I.dim, FG.dim, cols, f))
    return AdjunctionData(ctx, F, G, alpha, beta)


def verify_zigzag(adj, tag="", negative_control=False):
    rep = Report()
    zf, zg = adj.zigzags()
    name = tag or "%s.%s" % (_gname(adj.F), _gname(adj.G))
    rep.add(_eq_record("adjunction.zigzag.F.%s" % name, "Def 2.17 (zig-zag for F)",
                       zf, identity(adj.F), negative_control=negative_control))
    rep.add(_eq_record("adjunction.zigzag.G.%s" % name, "Def 2.17 (zig-zag for G)",
                       zg, identity(adj.G), negative_control=negative_control))
    return rep


def is_adjunction(adj):
    zf, zg = adj.zigzags()
    return zf.mat == identity(adj.F).mat and zg.mat == identity(adj.G).mat


# ---------------------------------------------------------------- sums and composites


def _term_map(small, big, pairs):
    """Reindex rows/cols: pairs maps a term index of `small` to a term index of `big`."""
    out = {}
    for t, s in enumerate(small.spaces):
        o_small = small.offsets[t]
        o_big = big.offsets[pairs[t]]
        for k in range(s.dim):
            out[o_small + k] = o_big + k
    return out


def sum_adjunction(adjs):
    """Direct sum of adjunctions sharing the same hom-categories."""
    ctx = adjs[0].ctx
    f = ctx.field
    F = ctx.direct_sum([a.F for a in adjs])
    G = ctx.direct_sum([a.G for a in adjs])
    GF, FG = ctx.compose(G, F), ctx.compose(F, G)
    nF, nG = len(F.terms), len(G.terms)
    Ip, I = adjs[0].alpha.src, adjs[0].beta.tgt
    acols = [{} for _ in range(Ip.dim)]
    bcols = [{} for _ in range(FG.dim)]
    fo = go = 0
    for a in adjs:
        na, ga = len(a.F.terms), len(a.G.terms)
        gf_small = a.alpha.tgt
        pairs = {gi * na + fi: (go + gi) * nF + fo + fi for gi in range(ga) for fi in range(na)}
        rmap = _term_map(gf_small, GF, pairs)
        for c, col in enumerate(a.alpha.mat.cols):
            for r, v in col.items():
                acols[c][rmap[r]] = f.norm(acols[c].get(rmap[r], 0) + v)
        fg_small = a.beta.src
        pairs = {fi * ga + gi: (fo + fi) * nG + go + gi for fi in range(na) for gi in range(ga)}
        cmap = _term_map(fg_small, FG, pairs)
        for c, col in enumerate(a.beta.mat.cols):
            bcols[cmap[c]] = dict(col)
        fo += na
        go += ga
    acols = [{r: v for r, v in c.items() if v} for c in acols]
    alpha = TwoMorphism(Ip, GF, SparseMatrix(GF.dim, Ip.dim, acols, f))
    beta = TwoMorphism(FG, I, SparseMatrix(I.dim, FG.dim, bcols, f))
    return AdjunctionData(ctx, F, G, alpha, beta)


def compose_adjunctions(adj1, adj2):
    """(F F', G' G) from (F, G) and (F', G') with F' composable before F."""
    ctx = adj1.ctx
    F, G, al, be = adj1.F, adj1.G, adj1.alpha, adj1.beta
    Fp, Gp, alp, bep = adj2.F, adj2.G, adj2.alpha, adj2.beta
    alpha = hcomp(hcomp(identity(Gp), al), identity(Fp)) @ hcomp(ctx.rp(Gp), identity(Fp)) @ alp
    beta = be @ hcomp(ctx.r(F), identity(G)) @ hcomp(hcomp(identity(F), bep), identity(G))
    return AdjunctionData(ctx, ctx.compose(F, Fp), ctx.compose(Gp, G), alpha, beta)


# ---------------------------------------------------------------- uniqueness


def uniqueness_iso(adjA, adjB):
    """phi: F => F', psi: F' => F for two left adjoints of the same G."""
    ctx = adjA.ctx
    F, Fp = adjA.F, adjB.F
    assert adjA.G == adjB.G
    phi = ctx.l(Fp) @ hcomp(adjA.beta, identity(Fp)) @ hcomp(identity(F), adjB.alpha) @ ctx.rp(F)
    psi = ctx.l(F) @ hcomp(adjB.beta, identity(F)) @ hcomp(identity(Fp), adjA.alpha) @ ctx.rp(Fp)
    return phi, psi


def random_automorphism(ctx, F, rng):
    basis = ctx.hom(F, F)
    while True:
        th = zero(F, F)
        for b in basis:
            th = th + b.scale(rng.randint(-2, 2))
        if th.is_iso():
            return th


def conjugate_adjunction(adj, theta):
    """(F, G, (id_G . theta) alpha, beta (theta^-1 . id_G)) for theta in Aut(F)."""
    G = adj.G
    alpha = hcomp(identity(G), theta) @ adj.alpha
    beta = adj.beta @ hcomp(theta.inverse(), identity(G))
    return AdjunctionData(adj.ctx, adj.F, G, alpha, beta)


def check_uniqueness(adj, seed=0, lam=2):
    rep = Report()
    ctx = adj.ctx
    tag = _gname(adj.F)
    anchor = "Prop 2.20"
    for label, other in (("same", adj),
                         ("rescaled", adj.scaled(lam, ctx.field.inv(ctx.field(lam))))):
        phi, psi = uniqueness_iso(adj, other)
        rep.add(_eq_record("adjunction.unique.%s.psiphi.%s" % (label, tag), anchor,
                           psi @ phi, identity(adj.F)))
        rep.add(_eq_record("adjunction.unique.%s.phipsi.%s" % (label, tag), anchor,
                           phi @ psi, identity(other.F)))
    th = random_automorphism(ctx, adj.F, random.Random(seed))
    other = conjugate_adjunction(adj, th)
    rep.add(Record("adjunction.unique.conjugated.is_adjunction.%s" % tag, "Def 2.17",
                   is_adjunction(other)))
    phi, psi = uniqueness_iso(adj, other)
    rep.add(_eq_record("adjunction.unique.conjugated.psiphi.%s" % tag, anchor, psi @ phi, identity(adj.F)))
    rep.add(_eq_record("adjunction.unique.conjugated.phipsi.%s" % tag, anchor, phi @ psi, identity(adj.F)))
    rep.add(_eq_record("adjunction.unique.conjugated.phi_is_theta.%s" % tag, anchor, phi, th))
    return rep


# ---------------------------------------------------------------- the weak involution


class StarStructure:
    """F_pq -> F_qp on atoms, reversed on words, with adjunctions built on demand."""

    def __init__(self, ctx, trace=None):
        self.ctx = ctx
        self.trace = trace
        self._atom = {}
        self._word = {}

    def star1(self, F):
        ctx = self.ctx
        terms = [tuple(Free(a.q, a.p) for a in reversed(w)) for w in F.terms]
        return OneMorphism(ctx, terms, F.tgt, F.src)

    def _word_adj(self, w):
        hit = self._word.get(w)
        if hit is not None:
            return hit
        ctx = self.ctx
        assert all(isinstance(a, Free) for a in w), "star is defined on Free words only"
        if len(w) == 1:
            a = w[0]
            adj = build_adjunction(ctx, a.p, a.q, trace=self.trace)
        else:
            adj = compose_adjunctions(self._word_adj(w[:1]), self._word_adj(w[1:]))
        self._word[w] = adj
        return adj

    def adjunction(self, F):
        adjs = [self._word_adj(w) for w in F.terms]
        return adjs[0] if len(adjs) == 1 else sum_adjunction(adjs)

    def star2(self, gamma):
        """gamma: F => G gives gamma*: G* => F*."""
        ctx = self.ctx
        F, G = gamma.src, gamma.tgt
        aF = self.adjunction(F)
        aG = self.adjunction(G)
        Fs, Gs = aF.G, aG.G
        return (ctx.r(Fs) @ hcomp(identity(Fs), aG.beta)
                @ hcomp(hcomp(identity(Fs), gamma), identity(Gs))
                @ hcomp(aF.alpha, identity(Gs)) @ ctx.lp(Gs))


def check_star(ctx, i, seed=0):
    rep = Report()
    st = StarStructure(ctx)
    rng = random.Random(seed)
    for j in range(ctx.n):
        F = ctx.F(i, j)
        Fs = st.star1(F)
        tag = _gname(F)
        rep.add(_eq_record("star.identity.%s" % tag, "Def 3.4(3)", st.star2(identity(F)), identity(Fs)))
        rep.add(_eq_record("star.l_to_rp.%s" % tag, "Def 3.4(1)", st.star2(ctx.l(F)), ctx.rp(Fs)))
        G = ctx.F(j, i)
        rep.add(_eq_record("star.r_to_lp.%s" % _gname(G), "Def 3.4(1)",
                           st.star2(ctx.r(G)), ctx.lp(st.star1(G))))
        basis = ctx.hom(F, F)
        g = basis[rng.randrange(len(basis))]
        d = basis[rng.randrange(len(basis))]
        rep.add(_eq_record("star.contravariant.%s" % tag, "Def 3.4(3)",
                           st.star2(g @ d), st.star2(d) @ st.star2(g)))
        gss = st.star2(st.star2(g))
        ok = gss.src == g.src and gss.tgt == g.tgt and gss.mat.rank() == g.mat.rank()
        rep.add(Record("star.double.%s" % tag, "Def 3.4(4)", ok,
                       detail={"rank": g.mat.rank()}))
    return rep


# ---------------------------------------------------------------- (co)monads


def monad_mult(adj, H):
    """mu_H: G F G F H => G F H."""
    ctx = adj.ctx
    F, G = adj.F, adj.G
    FH = ctx.compose(F, H)
    return hcomp(ctx.r(G), identity(FH)) @ hcomp(hcomp(identity(G), adj.beta), identity(FH))


def monad_unit(adj, H):
    """unit_H: H => G F H."""
    ctx = adj.ctx
    return hcomp(adj.alpha, identity(H)) @ ctx.lp(H)


def comonad_comult(adj, H):
    """Delta_H: F G H => F G F G H."""
    ctx = adj.ctx
    F, G = adj.F, adj.G
    GH = ctx.compose(G, H)
    return hcomp(hcomp(identity(F), adj.alpha), identity(GH)) @ hcomp(ctx.rp(F), identity(GH))


def comonad_counit(adj, H):
    """epsilon_H: F G H => H."""
    return adj.ctx.l(H) @ hcomp(adj.beta, identity(H))


def check_monad(adj, H, tag):
    ctx = adj.ctx
    GF = ctx.compose(adj.G, adj.F)
    GFH = ctx.compose(GF, H)
    mu = monad_mult(adj, H)
    eta = monad_unit(adj, H)
    rep = Report()
    anchor = "Prop 2.21"
    lhs = mu @ monad_mult(adj, GFH)
    rhs = mu @ hcomp(identity(GF), mu)
    rep.add(_eq_record("monad.assoc.%s" % tag, anchor, lhs, rhs))
    rep.add(_eq_record("monad.unit.left.%s" % tag, anchor, mu @ monad_unit(adj, GFH), identity(GFH)))
    rep.add(_eq_record("monad.unit.right.%s" % tag, anchor, mu @ hcomp(identity(GF), eta), identity(GFH)))
    return rep


def check_comonad(adj, H, tag):
    ctx = adj.ctx
    FG = ctx.compose(adj.F, adj.G)
    FGH = ctx.compose(FG, H)
    de = comonad_comult(adj, H)
    ep = comonad_counit(adj, H)
    rep = Report()
    anchor = "Prop 2.27"
    rep.add(_eq_record("comonad.coassoc.%s" % tag, anchor,
                       comonad_comult(adj, FGH) @ de, hcomp(identity(FG), de) @ de))
    rep.add(_eq_record("comonad.counit.left.%s" % tag, anchor,
                       comonad_counit(adj, FGH) @ de, identity(FGH)))
    rep.add(_eq_record("comonad.counit.right.%s" % tag, anchor,
                       hcomp(identity(FG), ep) @ de, identity(FGH)))
    return rep


# ---------------------------------------------------------------- representation level


def rep_adjunction_maps(adj, X, Y):
    """Phi: Hom(FX, Y) -> Hom(X, GY) and Psi back, as Python callables."""
    ctx = adj.ctx
    F, G = adj.F, adj.G

    def Phi(f):
        return hcomp(identity(G), f) @ hcomp(adj.alpha, identity(X)) @ rep_up(ctx, X)

    def Psi(g):
        return rep_u(ctx, Y) @ hcomp(adj.beta, identity(Y)) @ hcomp(identity(F), g)
    return Phi, Psi


def check_rep_adjunction(adj, X, Y, tag):
    ctx = adj.ctx
    FX = ctx.compose(adj.F, X)
    GY = ctx.compose(adj.G, Y)
    left = ctx.hom(FX, Y)
    right = ctx.hom(X, GY)
    Phi, Psi = rep_adjunction_maps(adj, X, Y)
    rep = Report()
    anchor = "Prop 2.23"
    rep.add(Record("representation.adjunction.dims.%s" % tag, anchor, len(left) == len(right),
                   detail={"hom_FX_Y": len(left), "hom_X_GY": len(right)}))
    ok = all(Psi(Phi(f)).mat == f.mat for f in left)
    rep.add(Record("representation.adjunction.psi_phi.%s" % tag, anchor, ok))
    ok = all(Phi(Psi(g)).mat == g.mat for g in right)
    rep.add(Record("representation.adjunction.phi_psi.%s" % tag, anchor, ok))
    return rep
