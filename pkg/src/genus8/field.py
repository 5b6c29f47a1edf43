"""Exact base fields: the rationals and prime fields F_p with p >= 5.

Field elements are plain Python values: :class:`fractions.Fraction` over Q and
``int`` residues in ``[0, p)`` over F_p.  Ring operations (``+ - *``) can be
done with the usual operators on integer or Fraction inputs and normalized
afterwards with :meth:`Field.__call__`; only division goes through the field.
"""

from __future__ import annotations

from fractions import Fraction


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """Abstract exact field."""

    char = 0

    def __call__(self, x):
        raise NotImplementedError

    def div(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        return self.div(self.one, a)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def is_zero(self, a) -> bool:
        return self(a) == 0

    def to_json(self, a):
        raise NotImplementedError

    def from_json(self, v):
        raise NotImplementedError

    def spec(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"Field({self.spec()!r})"

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec() == other.spec()

    def __hash__(self):
        return hash(self.spec())


class Rationals(Field):
    char = 0

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return Fraction(x)
        return Fraction(x)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return Fraction(a) / Fraction(b)

    def to_json(self, a):
        a = Fraction(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def from_json(self, v):
        return Fraction(v)

    def spec(self):
        return "q"


class PrimeField(Field):
    def __init__(self, p: int):
        p = int(p)
        if p < 5 or not is_prime(p):
            raise ValueError(f"prime field needs a prime p >= 5, got {p}")
        self.p = p
        self.char = p

    def __call__(self, x):
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def div(self, a, b):
        b = int(b) % self.p
        if b == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return (int(a) * pow(b, -1, self.p)) % self.p

    def to_json(self, a):
        return int(a) % self.p

    def from_json(self, v):
        if isinstance(v, str):
            return self(Fraction(v))
        return int(v) % self.p

    def spec(self):
        return f"fp:{self.p}"


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(spec: str) -> Field:
    """Parse ``"q"`` or ``"fp:P"``."""
    s = spec.strip().lower()
    if s in ("q", "qq", "rationals"):
        return QQ
    if s.startswith("fp:"):
        body = s[3:]
        if not body.isdigit():
            raise ValueError(f"bad field spec {spec!r}: expected fp:<prime>")
        return PrimeField(int(body))
    raise ValueError(f"bad field spec {spec!r}: expected 'q' or 'fp:<prime>'")
