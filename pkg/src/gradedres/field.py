"""Prime field arithmetic. Elements are ints in [0, p)."""

from __future__ import annotations

from .errors import AlgebraError

DEFAULT_PRIME = 32003

# The dense linear-algebra oracle accumulates p^2-sized products in int64;
# keep p small enough that dim * p^2 cannot overflow.
MAX_PRIME = 1 << 21


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """The field F_p for a prime p."""

    __slots__ = ("p",)

    def __init__(self, p: int = DEFAULT_PRIME):
        if not isinstance(p, int) or not is_prime(p):
            raise AlgebraError(f"field characteristic must be prime, got {p!r}")
        if p > MAX_PRIME:
            raise AlgebraError(f"characteristic {p} exceeds supported bound {MAX_PRIME}")
        self.p = p

    def normalize(self, a: int) -> int:
        return a % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero in prime field")
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and self.p == other.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"
