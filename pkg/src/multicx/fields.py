"""Exact ground fields: prime fields GF(p) and the rationals.

Every scalar in the package is either a Python int reduced into [0, p)
or a fully reduced fractions.Fraction.  There is no floating point
anywhere; all arithmetic is exact.
"""

from fractions import Fraction

from .errors import ParseError


class Field:
    """Common interface for the two scalar types.

    Scalars are plain values (int or Fraction); the field object carries
    the operations so matrices stay free of per-element wrappers.
    """

    name = "?"

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def is_zero(self, a):
        return a == self.zero

    def from_int(self, k):
        raise NotImplementedError

    def parse(self, text):
        raise NotImplementedError

    def to_text(self, a):
        return str(a)

    def random(self, rng):
        raise NotImplementedError

    def random_nonzero(self, rng):
        while True:
            a = self.random(rng)
            if not self.is_zero(a):
                return a

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"Field({self.name})"


class PrimeField(Field):
    """GF(p) with canonical representatives in [0, p)."""

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"gf{p}"
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in GF(p)")
        return pow(a, self.p - 2, self.p)

    def from_int(self, k):
        return k % self.p

    def parse(self, text):
        try:
            return int(text) % self.p
        except ValueError:
            raise ParseError(f"not a GF({self.p}) scalar: {text!r}")

    def random(self, rng):
        return rng.randrange(self.p)


class RationalField(Field):
    """The rationals via fractions.Fraction (auto-reduced, positive denominator)."""

    def __init__(self):
        self.name = "qq"
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return 1 / a

    def from_int(self, k):
        return Fraction(k)

    def parse(self, text):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a rational scalar: {text!r}")

    def random(self, rng):
        # small numerators/denominators keep test matrices readable
        return Fraction(rng.randrange(-4, 5), rng.randrange(1, 4))


GF2 = PrimeField(2)
GF7 = PrimeField(7)
QQ = RationalField()


def field_from_name(name):
    """Resolve a field spec string: ``gf<p>``, ``qq``, ``q`` or ``rational``."""
    name = name.strip().lower()
    if name in ("q", "qq", "rational"):
        return QQ
    if name.startswith("gf"):
        try:
            return PrimeField(int(name[2:]))
        except ValueError:
            pass
    raise ParseError(f"unknown field spec: {name!r}")
