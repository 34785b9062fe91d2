"""Pure-Python sparse kernels (fallback for the compiled module).

Vectors are dicts {index: scalar} without zero entries.  `p == 0` selects
exact rational arithmetic, otherwise arithmetic is reduced mod p.
"""

from fractions import Fraction


def _qnorm(v):
    if type(v) is Fraction and v.denominator == 1:
        return v.numerator
    return v


def rref_rows(rows, p):
    """Fully reduced row echelon form of sparse rows.

    Returns (pivots, prows) with prows[k] the normalised row whose pivot
    column is pivots[k]; pivots ascend.
    """
    piv = {}  # pivot col -> row dict
    for src in rows:
        r = dict(src)
        # reduce against existing pivots (pivot rows are mutually reduced)
        hits = [c for c in r if c in piv]
        for c in hits:
            f = r.get(c)
            if not f:
                continue
            for k, v in piv[c].items():
                w = r.get(k, 0) - f * v
                if p:
                    w %= p
                else:
                    w = _qnorm(w)
                if w:
                    r[k] = w
                else:
                    r.pop(k, None)
        if not r:
            continue
        c0 = min(r)
        f = r[c0]
        if p:
            inv = pow(f, -1, p)
            r = {k: v * inv % p for k, v in r.items()}
        elif f != 1:
            r = {k: _qnorm(Fraction(v) / f) for k, v in r.items()}
        for c, prow in piv.items():
            g = prow.get(c0)
            if not g:
                continue
            for k, v in r.items():
                w = prow.get(k, 0) - g * v
                if p:
                    w %= p
                else:
                    w = _qnorm(w)
                if w:
                    prow[k] = w
                else:
                    prow.pop(k, None)
        piv[c0] = r
    pivots = sorted(piv)
    return pivots, [piv[c] for c in pivots]


def spmm(a_cols, b_cols, p):
    """Product A*B with both matrices stored as lists of column dicts."""
    out = []
    for bc in b_cols:
        acc = {}
        for k, bv in bc.items():
            for i, av in a_cols[k].items():
                acc[i] = acc.get(i, 0) + av * bv
        if p:
            out.append({i: v % p for i, v in acc.items() if v % p})
        else:
            out.append({i: _qnorm(v) for i, v in acc.items() if v})
    return out


def spadd(a_cols, b_cols, s, p):
    """A + s*B, column-dict storage."""
    out = []
    for ac, bc in zip(a_cols, b_cols):
        acc = dict(ac)
        for i, v in bc.items():
            acc[i] = acc.get(i, 0) + s * v
        if p:
            out.append({i: v % p for i, v in acc.items() if v % p})
        else:
            out.append({i: _qnorm(v) for i, v in acc.items() if v})
    return out
