"""Exact scalar fields: the rationals and prime fields F_p."""

from fractions import Fraction


class FieldError(ValueError):
    pass


def _is_prime(n):
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


class Field:
    """Scalars are plain ints (or Fractions over Q); `p == 0` means Q."""

    def __init__(self, p=0):
        p = int(p)
        if p and not _is_prime(p):
            raise FieldError("not a prime: %d" % p)
        self.p = p

    # construction ---------------------------------------------------------

    @classmethod
    def parse(cls, text):
        text = text.strip().lower()
        if text in ("q", "rational", "rationals"):
            return cls(0)
        if text.startswith("p="):
            return cls(int(text[2:]))
        if text.startswith("f_") or text.startswith("f"):
            tail = text[2:] if text.startswith("f_") else text[1:]
            if tail.isdigit():
                return cls(int(tail))
        raise FieldError("unknown field %r" % text)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p == 0 else "F_%d" % self.p

    @property
    def name(self):
        return "rational" if self.p == 0 else "p=%d" % self.p

    # arithmetic -----------------------------------------------------------

    def __call__(self, x):
        """Coerce an int, Fraction or string into a canonical scalar."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        p = self.p
        if p:
            if isinstance(x, Fraction):
                num, den = x.numerator % p, x.denominator % p
                if den == 0:
                    raise FieldError("denominator divisible by %d" % p)
                return num * pow(den, -1, p) % p
            return int(x) % p
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        return int(x)

    def norm(self, x):
        if self.p:
            return x % self.p
        if type(x) is Fraction and x.denominator == 1:
            return x.numerator
        return x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        r = Fraction(1) / x
        return r.numerator if r.denominator == 1 else r

    def neg(self, x):
        return (-x) % self.p if self.p else -x

    def to_str(self, x):
        if self.p:
            return str(x)
        return str(Fraction(x))

    def lift(self, x):
        """Small integer-ish representative used for hashing and JSON."""
        if self.p:
            return int(x)
        return str(Fraction(x))


Q = Field(0)
