"""Finite-dimensional basic algebras given by structure constants.

Spec-file grammar (line based, `#` starts a comment)::

    [meta]          name = <word>                       (optional)
    [field]         rational | prime = <p>
    [basis]         labels separated by spaces or commas
    [idempotents]   labels of e_1 ... e_n, in object order
    [mult]          <a> * <b> = <linear combination>, e.g. `x * x = 2*y - 1/3*z`
    [trace]         <label> = <scalar>

Omitted products and trace values are zero.  `dump` writes the canonical form,
and `parse(dump(A))` reproduces A exactly.
"""

import re
from fractions import Fraction

from .fields import Field, FieldError
from .linalg import SparseMatrix, Inconsistent


class ParseError(ValueError):
    pass


class AlgebraError(ValueError):
    pass


class AssociativityViolation(AlgebraError):
    def __init__(self, a, b, c):
        super().__init__("(%s*%s)*%s != %s*(%s*%s)" % (a, b, c, a, b, c))
        self.triple = (a, b, c)


class IdempotentViolation(AlgebraError):
    pass


class PeirceViolation(AlgebraError):
    def __init__(self, a, msg=""):
        super().__init__("basis element %s is not Peirce homogeneous %s" % (a, msg))
        self.label = a


class DegenerateTraceForm(AlgebraError):
    pass


_LABEL = r"[A-Za-z_][A-Za-z0-9_']*"
_TERM = re.compile(r"\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?(%s)?\s*" % _LABEL)


def _parse_combo(text, index, lineno):
    text = text.strip()
    if text in ("0", ""):
        return {}
    out = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("line %d: cannot parse %r" % (lineno, text[pos:]))
        sign, coeff, label = m.groups()
        if coeff is None and label is None:
            raise ParseError("line %d: empty term in %r" % (lineno, text))
        c = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        if label is None:
            raise ParseError("line %d: scalar term without basis label" % lineno)
        if label not in index:
            raise ParseError("line %d: unknown label %r" % (lineno, label))
        k = index[label]
        out[k] = out.get(k, 0) + c
        pos = m.end()
        if pos < len(text) and text[pos] not in "+-":
            raise ParseError("line %d: expected + or - at %r" % (lineno, text[pos:]))
    return {k: v for k, v in out.items() if v}


class Algebra:
    """Basic algebra with chosen idempotents, Peirce data and trace.

    Objects of D_A are 0..n-1 internally (printed 1..n).
    """

    def __init__(self, field, labels, mult, idempotents, trace, name="algebra", check=True):
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.index = {l: k for k, l in enumerate(self.labels)}
        if len(self.index) != self.dim:
            raise ParseError("duplicate basis labels")
        f = field
        self.mult = {}
        for (a, b), vec in mult.items():
            v = {c: f(x) for c, x in vec.items() if f(x)}
            if v:
                self.mult[(a, b)] = v
        self.idem = list(idempotents)
        self.n = len(self.idem)
        self.trace = [f(t) for t in trace]
        self.name = name
        self._raw = (mult, trace)
        if check:
            self.validate()
        self._peirce()
        self._lm = None
        self._rm = None
        self._star = None

    # ------------------------------------------------------------------ io

    @classmethod
    def parse(cls, text, field=None, check=True):
        sections = {}
        order = []
        cur = None
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            m = re.fullmatch(r"\[(\w+)\]", line)
            if m:
                cur = m.group(1)
                if cur in sections:
                    raise ParseError("line %d: duplicate section [%s]" % (lineno, cur))
                sections[cur] = []
                order.append(cur)
                continue
            if cur is None:
                raise ParseError("line %d: content outside a section" % lineno)
            sections[cur].append((lineno, line))
        for need in ("field", "basis", "idempotents", "mult"):
            if need not in sections:
                raise ParseError("missing section [%s]" % need)
        unknown = set(sections) - {"meta", "field", "basis", "idempotents", "mult", "trace"}
        if unknown:
            raise ParseError("unknown sections: %s" % ", ".join(sorted(unknown)))

        name = "algebra"
        for lineno, line in sections.get("meta", []):
            m = re.fullmatch(r"name\s*=\s*(\S+)", line)
            if not m:
                raise ParseError("line %d: bad meta entry" % lineno)
            name = m.group(1)

        flines = sections["field"]
        if len(flines) != 1:
            raise ParseError("[field] needs exactly one line")
        lineno, fl = flines[0]
        m = re.fullmatch(r"prime\s*=\s*(\d+)", fl)
        try:
            if fl == "rational":
                declared = Field(0)
            elif m:
                declared = Field(int(m.group(1)))
            else:
                raise ParseError("line %d: bad field %r" % (lineno, fl))
        except FieldError as e:
            raise ParseError("line %d: %s" % (lineno, e))
        fld = field if field is not None else declared

        labels = []
        for lineno, line in sections["basis"]:
            for tok in re.split(r"[\s,]+", line):
                if not tok:
                    continue
                if not re.fullmatch(_LABEL, tok):
                    raise ParseError("line %d: bad label %r" % (lineno, tok))
                labels.append(tok)
        index = {l: k for k, l in enumerate(labels)}
        if len(index) != len(labels):
            raise ParseError("duplicate basis labels")

        idem = []
        for lineno, line in sections["idempotents"]:
            for tok in re.split(r"[\s,]+", line):
                if not tok:
                    continue
                if tok not in index:
                    raise ParseError("line %d: idempotent %r not in basis" % (lineno, tok))
                idem.append(index[tok])
        if not idem:
            raise ParseError("no idempotents")

        mult = {}
        for lineno, line in sections["mult"]:
            m = re.fullmatch(r"(%s)\s*\*\s*(%s)\s*=\s*(.*)" % (_LABEL, _LABEL), line)
            if not m:
                raise ParseError("line %d: expected `a * b = ...`" % lineno)
            a, b, rhs = m.groups()
            for lab in (a, b):
                if lab not in index:
                    raise ParseError("line %d: unknown label %r" % (lineno, lab))
            key = (index[a], index[b])
            if key in mult:
                raise ParseError("line %d: product %s*%s given twice" % (lineno, a, b))
            mult[key] = _parse_combo(rhs, index, lineno)

        trace = [0] * len(labels)
        for lineno, line in sections.get("trace", []):
            m = re.fullmatch(r"(%s)\s*=\s*([+-]?\d+(?:/\d+)?)" % _LABEL, line)
            if not m or m.group(1) not in index:
                raise ParseError("line %d: bad trace entry" % lineno)
            trace[index[m.group(1)]] = Fraction(m.group(2))

        try:
            return cls(fld, labels, mult, idem, trace, name=name, check=check)
        except FieldError as e:
            raise ParseError(str(e))

    @classmethod
    def load(cls, path, field=None, check=True):
        with open(path) as fh:
            return cls.parse(fh.read(), field=field, check=check)

    def dump(self):
        f = self.field
        out = ["[meta]", "name = %s" % self.name, "", "[field]"]
        out.append("rational" if f.p == 0 else "prime = %d" % f.p)
        out += ["", "[basis]", " ".join(self.labels), "", "[idempotents]",
                " ".join(self.labels[e] for e in self.idem), "", "[mult]"]
        for a in range(self.dim):
            for b in range(self.dim):
                v = self.mult.get((a, b))
                if v:
                    out.append("%s * %s = %s" % (self.labels[a], self.labels[b], self._combo_str(v)))
        out += ["", "[trace]"]
        for a, t in enumerate(self.trace):
            if t:
                out.append("%s = %s" % (self.labels[a], f.to_str(t)))
        return "\n".join(out) + "\n"

    def _combo_str(self, v):
        parts = []
        for c in sorted(v):
            x = Fraction(v[c])
            s = "-" if x < 0 else "+"
            x = abs(x)
            term = self.labels[c] if x == 1 else "%s*%s" % (x, self.labels[c])
            parts.append((s, term))
        text = ""
        for k, (s, term) in enumerate(parts):
            if k == 0:
                text = term if s == "+" else "-" + term
            else:
                text += " %s %s" % (s, term)
        return text

    def with_field(self, field):
        mult, trace = self._raw
        return Algebra(field, self.labels, mult, self.idem, trace, name=self.name)

    def opposite(self):
        mult, trace = self._raw
        opm = {(b, a): v for (a, b), v in mult.items()}
        return Algebra(self.field, self.labels, opm, self.idem, trace, name=self.name + "_op")

    def __eq__(self, other):
        return (isinstance(other, Algebra) and self.field == other.field
                and self.labels == other.labels and self.mult == other.mult
                and self.idem == other.idem and self.trace == other.trace)

    __hash__ = object.__hash__

    def __repr__(self):
        return "Algebra(%s, dim=%d, n=%d, %r)" % (self.name, self.dim, self.n, self.field)

    # ------------------------------------------------------------- arithmetic

    def mul_vec(self, u, v):
        """Product of two sparse vectors."""
        f = self.field
        acc = {}
        for a, x in u.items():
            for b, y in v.items():
                prod = self.mult.get((a, b))
                if prod:
                    xy = x * y
                    for c, z in prod.items():
                        acc[c] = acc.get(c, 0) + xy * z
        return {c: f.norm(z) for c, z in acc.items() if f.norm(z)}

    def unit_vec(self):
        return {e: 1 for e in self.idem}

    def tr(self, v):
        return self.field.norm(sum(self.trace[a] * x for a, x in v.items()))

    def validate(self):
        d = self.dim
        basis = [{a: 1} for a in range(d)]
        for a in range(d):
            for b in range(d):
                ab = self.mul_vec(basis[a], basis[b])
                for c in range(d):
                    if self.mul_vec(ab, basis[c]) != self.mul_vec(basis[a], self.mul_vec(basis[b], basis[c])):
                        raise AssociativityViolation(self.labels[a], self.labels[b], self.labels[c])
        for i, e in enumerate(self.idem):
            for j, e2 in enumerate(self.idem):
                want = {e: 1} if i == j else {}
                if self.mul_vec(basis[e], basis[e2]) != want:
                    raise IdempotentViolation("e%d*e%d wrong" % (i + 1, j + 1))
        one = self.unit_vec()
        for a in range(d):
            if self.mul_vec(one, basis[a]) != basis[a] or self.mul_vec(basis[a], one) != basis[a]:
                raise IdempotentViolation("idempotents do not sum to the unit (fails on %s)" % self.labels[a])
        if len(self.trace) != d:
            raise ParseError("trace length mismatch")

    def _peirce(self):
        self.peirce = []
        for a in range(self.dim):
            va = {a: 1}
            left = [s for s, e in enumerate(self.idem) if self.mul_vec({e: 1}, va)]
            right = [t for t, e in enumerate(self.idem) if self.mul_vec(va, {e: 1})]
            if len(left) != 1 or len(right) != 1:
                raise PeirceViolation(self.labels[a])
            s, t = left[0], right[0]
            if self.mul_vec({self.idem[s]: 1}, va) != va or self.mul_vec(va, {self.idem[t]: 1}) != va:
                raise PeirceViolation(self.labels[a], "(not fixed by its idempotents)")
            self.peirce.append((s, t))
        # idempotents must be primitive: the rest of e_s A e_s is nilpotent
        for a, (s, t) in enumerate(self.peirce):
            if s != t or a in self.idem:
                continue
            pw = {a: 1}
            for _ in range(self.dim):
                pw = self.mul_vec(pw, {a: 1})
            if pw:
                raise PeirceViolation(self.labels[a], "(not nilpotent, so e%d is not primitive)" % (s + 1))

    # ------------------------------------------------------------- derived

    def peirce_dims(self):
        d = [[0] * self.n for _ in range(self.n)]
        for s, t in self.peirce:
            d[s][t] += 1
        return d

    def block(self, s=None, t=None):
        """Basis indices of e_s A e_t (None means no restriction)."""
        return [a for a, (ps, pt) in enumerate(self.peirce)
                if (s is None or ps == s) and (t is None or pt == t)]

    def left_mats(self):
        """L[a]: column dicts of left multiplication by basis a."""
        if self._lm is None:
            self._lm = [[self.mult.get((a, b), {}) for b in range(self.dim)] for a in range(self.dim)]
            self._rm = [[self.mult.get((b, a), {}) for b in range(self.dim)] for a in range(self.dim)]
        return self._lm

    def right_mats(self):
        self.left_mats()
        return self._rm

    def gram(self):
        return [[self.tr(self.mult.get((a, b), {})) for b in range(self.dim)] for a in range(self.dim)]

    def dual_basis(self):
        """star[a] = coordinates of a* with tr(b a*) = delta_ab."""
        if self._star is None:
            G = SparseMatrix.from_dense(self.gram(), self.field)
            try:
                X = G.solve_many(SparseMatrix.identity(self.dim, self.field))
            except Inconsistent:
                raise DegenerateTraceForm(
                    "Gram matrix of the trace form is singular (rank %d < %d)" % (G.rank(), self.dim))
            star = [X.cols[a] for a in range(self.dim)]
            for a in range(self.dim):
                for b in range(self.dim):
                    assert self.tr(self.mul_vec({b: 1}, star[a])) == (1 if a == b else 0)
            self._star = star
        return self._star

    def star_str(self, a):
        return self._combo_str(self.dual_basis()[a]) if self.dual_basis()[a] else "0"
