# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse kernels; same contract as _kernels_py."""

from fractions import Fraction

from . import _kernels_py

# products of two residues must fit in a signed 64-bit word
cdef long long _PMAX = 3037000499


cdef inline object _qnorm(object v):
    if type(v) is Fraction and v.denominator == 1:
        return v.numerator
    return v


cdef dict _reduce_modp(dict r, dict piv, long long p):
    cdef long long f, v, w
    cdef object c, k
    hits = [c for c in r if c in piv]
    for c in hits:
        if c not in r:
            continue
        f = r[c]
        for k, v in (<dict>piv[c]).items():
            w = (<long long>r.get(k, 0) - f * v) % p
            if w:
                r[k] = w
            else:
                r.pop(k, None)
    return r


def rref_rows(rows, p):
    cdef dict piv = {}
    cdef dict r, prow
    cdef long long pp = p
    cdef long long f, inv, g, v, w
    cdef object c0, k, c
    if not p:
        return _rref_q(rows)
    if p > _PMAX:
        return _kernels_py.rref_rows(rows, p)
    for src in rows:
        r = dict(src)
        if piv:
            _reduce_modp(r, piv, pp)
        if not r:
            continue
        c0 = min(r)
        f = r[c0]
        inv = pow(f, -1, p)
        if inv != 1:
            r = {k: (<long long>v * inv) % pp for k, v in r.items()}
        for c, prow in piv.items():
            if c0 not in prow:
                continue
            g = prow[c0]
            for k, v in r.items():
                w = (<long long>prow.get(k, 0) - g * v) % pp
                if w:
                    prow[k] = w
                else:
                    prow.pop(k, None)
        piv[c0] = r
    pivots = sorted(piv)
    return pivots, [piv[c] for c in pivots]


def _rref_q(rows):
    cdef dict piv = {}
    cdef dict r, prow
    cdef object c0, k, c, f, g, v, w
    for src in rows:
        r = dict(src)
        hits = [c for c in r if c in piv]
        for c in hits:
            f = r.get(c)
            if not f:
                continue
            for k, v in (<dict>piv[c]).items():
                w = _qnorm(r.get(k, 0) - f * v)
                if w:
                    r[k] = w
                else:
                    r.pop(k, None)
        if not r:
            continue
        c0 = min(r)
        f = r[c0]
        if f != 1:
            r = {k: _qnorm(Fraction(v) / f) for k, v in r.items()}
        for c, prow in piv.items():
            g = prow.get(c0)
            if not g:
                continue
            for k, v in r.items():
                w = _qnorm(prow.get(k, 0) - g * v)
                if w:
                    prow[k] = w
                else:
                    prow.pop(k, None)
        piv[c0] = r
    pivots = sorted(piv)
    return pivots, [piv[c] for c in pivots]


def spmm(a_cols, b_cols, p):
    cdef list out = []
    cdef dict acc, bc, ac
    cdef long long pp = p
    cdef long long av, bv, s
    cdef object i, k
    if not p:
        return _spmm_q(a_cols, b_cols)
    if p > _PMAX:
        return _kernels_py.spmm(a_cols, b_cols, p)
    for bc in b_cols:
        acc = {}
        for k, bv in bc.items():
            ac = a_cols[k]
            for i, av in ac.items():
                s = (<long long>acc.get(i, 0) + av * bv) % pp
                acc[i] = s
        out.append({i: v for i, v in acc.items() if v})
    return out


def _spmm_q(a_cols, b_cols):
    cdef list out = []
    cdef dict acc, bc
    cdef object i, k, av, bv
    for bc in b_cols:
        acc = {}
        for k, bv in bc.items():
            for i, av in (<dict>a_cols[k]).items():
                acc[i] = acc.get(i, 0) + av * bv
        out.append({i: _qnorm(v) for i, v in acc.items() if v})
    return out


def spadd(a_cols, b_cols, s, p):
    cdef list out = []
    cdef dict acc
    cdef object i, v
    for ac, bc in zip(a_cols, b_cols):
        acc = dict(ac)
        for i, v in (<dict>bc).items():
            acc[i] = acc.get(i, 0) + s * v
        if p:
            out.append({i: v % p for i, v in acc.items() if v % p})
        else:
            out.append({i: _qnorm(v) for i, v in acc.items() if v})
    return out
