"""Exact coefficient rings: the integers, the rationals and prime fields.

Elements are plain Python values (``int`` for Z and Z/p, ``Fraction`` for Q);
a :class:`Ring` instance supplies the arithmetic so matrix and chain code
stay generic.  There is no floating point anywhere in this package.
"""

from __future__ import annotations

from fractions import Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Ring:
    """Z, Q or Z/p with exact element arithmetic.

    Z/p requires a prime modulus, checked at construction: invariant-factor
    bookkeeping silently breaks over a non-field Z/n.
    """

    __slots__ = ("kind", "p")

    def __init__(self, kind: str, p: int | None = None):
        if kind not in ("Z", "Q", "Zp"):
            raise ValueError(f"unknown ring kind {kind!r}")
        if kind == "Zp":
            if not isinstance(p, int) or not _is_prime(p):
                raise ValueError(f"modulus must be a prime integer, got {p!r}")
        elif p is not None:
            raise ValueError("only Z/p takes a modulus")
        self.kind = kind
        self.p = p

    @classmethod
    def integers(cls) -> "Ring":
        return cls("Z")

    @classmethod
    def rationals(cls) -> "Ring":
        return cls("Q")

    @classmethod
    def prime_field(cls, p: int) -> "Ring":
        return cls("Zp", p)

    @classmethod
    def parse(cls, text: str) -> "Ring":
        """Parse ``"Z"``, ``"Q"`` or ``"Z/p"`` (for example ``"Z/2"``)."""
        text = text.strip()
        if text == "Z":
            return cls.integers()
        if text == "Q":
            return cls.rationals()
        if text.startswith("Z/"):
            try:
                p = int(text[2:])
            except ValueError:
                raise ValueError(f"bad modulus in ring {text!r}") from None
            return cls.prime_field(p)
        raise ValueError(f"unknown ring {text!r}; expected Z, Q or Z/p")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def coerce(self, x):
        """Promote an int (or a Fraction, over Q) to a ring element."""
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an element of {self}")
            x = x.numerator
        if self.kind == "Zp":
            return int(x) % self.p
        return int(x)

    def add(self, a, b):
        c = a + b
        return c % self.p if self.kind == "Zp" else c

    def sub(self, a, b):
        c = a - b
        return c % self.p if self.kind == "Zp" else c

    def neg(self, a):
        return (-a) % self.p if self.kind == "Zp" else -a

    def mul(self, a, b):
        c = a * b
        return c % self.p if self.kind == "Zp" else c

    def is_zero(self, a) -> bool:
        return a == 0

    def is_unit(self, a) -> bool:
        if self.kind == "Z":
            return a == 1 or a == -1
        return a != 0

    def invert(self, a):
        if self.kind == "Q":
            return Fraction(1) / a
        if self.kind == "Zp":
            if a % self.p == 0:
                raise ZeroDivisionError("0 is not invertible")
            return pow(a, self.p - 2, self.p)
        if a in (1, -1):
            return a
        raise ValueError(f"{a} is not a unit in Z")

    def divmod(self, a, b):
        """Quotient and remainder; over a field the remainder is zero."""
        if self.is_field:
            return self.mul(a, self.invert(b)), self.zero
        return divmod(a, b)

    def exact_div(self, a, b):
        q, r = self.divmod(a, b)
        if not self.is_zero(r):
            raise ValueError(f"{b} does not divide {a} in {self}")
        return q

    def normalize_factor(self, a):
        """Canonical associate of a nonzero element: |a| over Z, 1 over a field."""
        if self.kind == "Z":
            return abs(a)
        return self.one

    def __eq__(self, other):
        return isinstance(other, Ring) and self.kind == other.kind and self.p == other.p

    def __hash__(self):
        return hash((self.kind, self.p))

    def __str__(self):
        return f"Z/{self.p}" if self.kind == "Zp" else self.kind

    def __repr__(self):
        return f"Ring({str(self)!r})"


ZZ = Ring.integers()
QQ = Ring.rationals()
GF2 = Ring.prime_field(2)
