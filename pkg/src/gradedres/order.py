"""Monomial arithmetic on exponent tuples and the supported term orders."""

from __future__ import annotations

from .errors import AlgebraError

Mono = tuple  # exponent tuple, one entry per ring variable


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Mono, b: Mono) -> bool:
    """True when a | b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Mono, b: Mono) -> Mono:
    """a / b, assuming divisibility."""
    return tuple(x - y for x, y in zip(a, b))

def mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a: Mono, b: Mono) -> Mono:
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_deg(a: Mono) -> int:
    return sum(a)


def mono_is_coprime(a: Mono, b: Mono) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class MonomialOrder:
    """A global monomial order given by a sort key (larger key = larger monomial)."""

    __slots__ = ("name",)

    _KINDS = ("degrevlex", "deglex", "lex")

    def __init__(self, name: str):
        if name not in self._KINDS:
            raise AlgebraError(f"unknown monomial order {name!r}; expected one of {self._KINDS}")
        self.name = name

    def key(self, m: Mono):
        if self.name == "degrevlex":
            # Graded, ties broken by smallest exponent on the last variable winning.
            return (sum(m), tuple(-e for e in reversed(m)))
        if self.name == "deglex":
            return (sum(m), m)
        return m

    def greater(self, a: Mono, b: Mono) -> bool:
        return self.key(a) > self.key(b)

    def sort_desc(self, monos):
        return sorted(monos, key=self.key, reverse=True)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.name == other.name

    def __hash__(self):
        return hash(("MonomialOrder", self.name))

    def __repr__(self):
        return f"MonomialOrder({self.name!r})"


DEGREVLEX = MonomialOrder("degrevlex")
DEGLEX = MonomialOrder("deglex")
LEX = MonomialOrder("lex")

ORDERS = {"degrevlex": DEGREVLEX, "deglex": DEGLEX, "lex": LEX}
