"""Verification suites: each name maps onto one group of checks over a built D_A."""

from .adjunction import (build_adjunction, check_comonad, check_monad, check_rep_adjunction,
                         check_star, check_uniqueness, compose_adjunctions, sum_adjunction,
                         verify_zigzag)
from .coalgebra import check_coalgebra_suite, check_lift_suite, check_tensor
from .completion import (Completion, check_cells, check_completion, check_duflo_factoring,
                         check_fiat_completion)
from .engine import (DA, check_compatibility_Q28, check_defining_representation,
                     check_interchange, check_lax_unit, check_oplax_unit, check_split,
                     representation_objects, _gname)
from .report import Report, negative

SUITES = ("units", "split", "q28", "representation", "adjunction", "star", "monad",
          "completion", "fiat", "coalgebra", "tensor", "cells", "duflo")


class Session:
    """A D_A instance plus lazily built shared pieces (the completion)."""

    def __init__(self, alg, seed=0):
        self.alg = alg
        self.seed = seed
        self.ctx = DA(alg, seed=seed)
        self._comp = None

    @property
    def comp(self):
        if self._comp is None:
            self._comp = Completion(self.ctx)
        return self._comp


def _units(s):
    ctx = s.ctx
    rep = Report()
    for i in range(ctx.n):
        rep.extend(check_lax_unit(ctx, i))
        rep.extend(check_oplax_unit(ctx, i))
        rep.extend(check_interchange(ctx, i))
    bad = DA(s.alg, corrupt="swap", seed=s.seed)
    failing = [r.check_id for r in check_lax_unit(bad, 0) if r.status == "fail"]
    rep.add(negative("units.negative.swapped_unitors", "Def 2.2(1) negative control",
                     bool(failing), witness={"failing": failing[:4]}))
    return rep


def _split(s):
    rep = Report()
    for i in range(s.ctx.n):
        rep.extend(check_split(s.ctx, i))
    return rep


def _q28(s):
    return check_compatibility_Q28(s.ctx)


def _representation(s):
    ctx = s.ctx
    rep = check_defining_representation(ctx)
    rep.extend(check_defining_representation(ctx, negative_control=True))
    Xs = representation_objects(ctx)
    for i in range(ctx.n):
        for j in range(ctx.n):
            adj = build_adjunction(ctx, i, j)
            X, Y = Xs[j], Xs[i]
            rep.extend(check_rep_adjunction(adj, X, Y, "%s.%s.%s" % (_gname(adj.F), X.name(), Y.name())))
    return rep


def perturbed_trace(alg):
    """The trace form plus the indicator of the first idempotent."""
    tr = list(alg.trace)
    e = alg.idem[0]
    tr[e] = alg.field.norm(tr[e] + 1)
    return tr


def _adjunction(s):
    ctx = s.ctx
    rep = Report()
    for i in range(ctx.n):
        for j in range(ctx.n):
            rep.extend(verify_zigzag(build_adjunction(ctx, i, j)))
    bad = build_adjunction(ctx, 0, 0, trace=perturbed_trace(s.alg))
    rep.extend(verify_zigzag(bad, tag="perturbed_trace", negative_control=True))
    adj = build_adjunction(ctx, 0, 0)
    comp = compose_adjunctions(adj, adj)
    for r in verify_zigzag(comp, tag="composed.%s" % _gname(comp.F)):
        r.anchor = "Prop 2.18"
        r.detail = {"dim_F": comp.F.dim, "dim_G": comp.G.dim}
        rep.add(r)
    sm = sum_adjunction([adj, adj])
    rep.extend(verify_zigzag(sm, tag="sum.%s" % _gname(sm.F)))
    rep.extend(check_uniqueness(adj, seed=s.seed))
    return rep


def _star(s):
    rep = Report()
    for i in range(s.ctx.n):
        rep.extend(check_star(s.ctx, i, seed=s.seed))
    return rep


def _monad(s):
    ctx = s.ctx
    adj = build_adjunction(ctx, 0, 0)
    rep = Report()
    for H, tag in ((ctx.I(0), "I1"), (ctx.F(0, 0) + ctx.F(0, 0), "F11+F11")):
        rep.extend(check_monad(adj, H, tag))
        rep.extend(check_comonad(adj, H, tag))
    return rep


def _completion(s):
    return check_completion(s.ctx, s.comp, seed=s.seed)


def _fiat(s):
    rep = check_fiat_completion(s.ctx, s.comp)
    rep.extend(check_fiat_completion(s.ctx, negative_control=True))
    return rep


def _coalgebra(s):
    rep = check_coalgebra_suite(s.comp)
    rep.extend(check_lift_suite(s.comp))
    return rep


def _tensor(s):
    ctx = s.ctx
    rep = Report()
    for j in range(ctx.n):
        adj = build_adjunction(ctx, 0, j)
        rep.extend(check_tensor(s.comp, adj, _gname(adj.F)))
    return rep


def _cells(s):
    return check_cells(s.ctx)


def _duflo(s):
    return check_duflo_factoring(s.ctx, s.comp)


RUNNERS = {
    "units": _units, "split": _split, "q28": _q28, "representation": _representation,
    "adjunction": _adjunction, "star": _star, "monad": _monad, "completion": _completion,
    "fiat": _fiat, "coalgebra": _coalgebra, "tensor": _tensor, "cells": _cells, "duflo": _duflo,
}
assert set(RUNNERS) == set(SUITES)


def parse_selection(text):
    names = [t.strip() for t in text.split(",") if t.strip()]
    if not names:
        raise ValueError("no suite selected")
    out = []
    for n in names:
        if n == "all":
            out.extend(SUITES)
        elif n in RUNNERS:
            out.append(n)
        else:
            raise ValueError("unknown suite %r (choose from %s, all)" % (n, ", ".join(SUITES)))
    return sorted(set(out), key=SUITES.index)


def run_suites(alg, names, seed=0):
    s = Session(alg, seed=seed)
    rep = Report()
    for n in names:
        rep.extend(RUNNERS[n](s))
    return rep
