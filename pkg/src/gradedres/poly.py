"""Multivariate polynomials over a prime field, sparse exponent-dict form.

The Groebner engine works on raw dicts {exponent tuple: coeff}; the helpers
prefixed pd_ operate on those. Polynomial is the hashable user-facing wrapper
that also knows its ring.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Optional, Union

from .errors import AlgebraError, HomogeneityError, RingMismatchError
from .field import PrimeField
from .order import DEGREVLEX, Mono, MonomialOrder, mono_deg, mono_mul

PolyDict = dict


def pd_iadd_term(d: PolyDict, mono: Mono, c: int, p: int) -> None:
    c = (d.get(mono, 0) + c) % p
    if c:
        d[mono] = c
    else:
        d.pop(mono, None)


def pd_iadd_scaled(dst: PolyDict, src: PolyDict, c: int, mono: Mono, p: int) -> None:
    """dst += c * x^mono * src, in place."""
    for m, a in src.items():
        pd_iadd_term(dst, mono_mul(m, mono), a * c, p)


def pd_scale(src: PolyDict, c: int, p: int) -> PolyDict:
    c %= p
    if c == 0:
        return {}
    return {m: (a * c) % p for m, a in src.items()}


def pd_mul(a: PolyDict, b: PolyDict, p: int) -> PolyDict:
    out: PolyDict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            pd_iadd_term(out, mono_mul(m1, m2), c1 * c2, p)
    return out


def pd_degree(d: PolyDict) -> int:
    """Top total degree; -1 for the zero polynomial."""
    if not d:
        return -1
    return max(mono_deg(m) for m in d)


def pd_homogeneous_degree(d: PolyDict) -> Optional[int]:
    """Common total degree of all terms, or None if mixed. Zero gives None."""
    degs = {mono_deg(m) for m in d}
    if len(degs) == 1:
        return degs.pop()
    return None


@lru_cache(maxsize=None)
def monomials_of_degree(n: int, d: int) -> tuple:
    """All exponent tuples of total degree d in n variables (unsorted cache)."""
    if n == 0:
        return ((),) if d == 0 else ()
    if n == 1:
        return ((d,),)
    out = []
    for e in range(d + 1):
        for rest in monomials_of_degree(n - 1, d - e):
            out.append((e,) + rest)
    return tuple(out)


class PolyRing:
    """Polynomial ring F_p[x_1..x_n] with a fixed global monomial order."""

    __slots__ = ("field", "names", "order", "_zero_mono")

    def __init__(self, field: Union[PrimeField, int], names, order: MonomialOrder = DEGREVLEX):
        if isinstance(field, int):
            field = PrimeField(field)
        names = tuple(names)
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate variable names in {names}")
        for nm in names:
            if not nm or not (nm[0].isalpha() or nm[0] == "_"):
                raise AlgebraError(f"bad variable name {nm!r}")
        self.field = field
        self.names = names
        self.order = order
        self._zero_mono = (0,) * len(names)

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def p(self) -> int:
        return self.field.p

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self._zero_mono: 1})

    def gen(self, i: int) -> "Polynomial":
        mono = tuple(1 if j == i else 0 for j in range(self.n))
        return Polynomial(self, {mono: 1})

    def gens(self):
        return [self.gen(i) for i in range(self.n)]

    def monomial(self, mono: Mono, c: int = 1) -> "Polynomial":
        if len(mono) != self.n or any(e < 0 for e in mono):
            raise AlgebraError(f"bad exponent tuple {mono} for {self}")
        c %= self.p
        return Polynomial(self, {tuple(mono): c} if c else {})

    def constant(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {self._zero_mono: c} if c else {})

    def from_dict(self, d: PolyDict) -> "Polynomial":
        return Polynomial(self, {m: c % self.p for m, c in d.items() if c % self.p})

    def monomials_of_degree(self, d: int) -> list:
        """Exponent tuples of degree d, descending in the ring order."""
        return self.order.sort_desc(monomials_of_degree(self.n, d))

    def poly(self, text: str) -> "Polynomial":
        """Parse a polynomial expression such as 'x^2 - 3*y*z'."""
        return parse_poly(self, text)

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.field, self.names, order)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.names == other.names
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.field, self.names, self.order))

    def __repr__(self):
        return f"PolyRing(F{self.p}, {list(self.names)}, {self.order.name})"


class Polynomial:
    """Immutable element of a PolyRing."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: PolyDict):
        self.ring = ring
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        self._check(other)
        out = dict(self.terms)
        p = self.ring.p
        for m, c in other.terms.items():
            pd_iadd_term(out, m, c, p)
        return Polynomial(self.ring, out)

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        self._check(other)
        out = dict(self.terms)
        p = self.ring.p
        for m, c in other.terms.items():
            pd_iadd_term(out, m, -c, p)
        return Polynomial(self.ring, out)

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {m: (-c) % p for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return Polynomial(self.ring, pd_scale(self.terms, other, self.ring.p))
        self._check(other)
        return Polynomial(self.ring, pd_mul(self.terms, other.terms, self.ring.p))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise AlgebraError("negative polynomial power")
        out = self.ring.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def degree(self) -> int:
        return pd_degree(self.terms)

    def is_homogeneous(self) -> bool:
        return self.is_zero() or pd_homogeneous_degree(self.terms) is not None

    def homogeneous_degree(self) -> int:
        """Degree of a homogeneous nonzero polynomial; raises otherwise."""
        d = pd_homogeneous_degree(self.terms)
        if d is None:
            raise HomogeneityError(f"not homogeneous: {self}")
        return d

    def sorted_terms(self):
        key = self.ring.order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def lead_monomial(self) -> Mono:
        if not self.terms:
            raise AlgebraError("zero polynomial has no leading term")
        return max(self.terms, key=self.ring.order.key)

    def lead_coeff(self) -> int:
        return self.terms[self.lead_monomial()]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        inv = self.ring.field.inv(self.lead_coeff())
        return Polynomial(self.ring, pd_scale(self.terms, inv, self.ring.p))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_coeff(self) -> int:
        return self.terms.get(self.ring._zero_mono, 0)

    def map_vars(self, target: PolyRing, var_map) -> "Polynomial":
        """Push into target ring sending variable i to target variable var_map[i]."""
        if target.field != self.ring.field:
            raise RingMismatchError("coefficient fields differ")
        out: PolyDict = {}
        for m, c in self.terms.items():
            new = [0] * target.n
            for i, e in enumerate(m):
                if e:
                    new[var_map[i]] += e
            pd_iadd_term(out, tuple(new), c, target.p)
        return Polynomial(target, out)

    def substitute(self, target: PolyRing, images) -> "Polynomial":
        """Evaluate at images[i] in target for each variable i."""
        out = target.zero()
        for m, c in self.terms.items():
            term = target.constant(c)
            for i, e in enumerate(m):
                if e:
                    term = term * (images[i] ** e)
            out = out + term
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == self.ring.constant(other).terms
        return isinstance(other, Polynomial) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def _mono_str(self, mono: Mono) -> str:
        parts = []
        for name, e in zip(self.ring.names, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        p = self.ring.p
        pieces = []
        for mono, c in self.sorted_terms():
            if c > p // 2:
                c -= p  # balanced representative prints more readably
            sign = "-" if c < 0 else "+"
            c = abs(c)
            ms = self._mono_str(mono)
            if not ms:
                body = str(c)
            elif c == 1:
                body = ms
            else:
                body = f"{c}*{ms}"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    __repr__ = __str__


class _PolyParser:
    """Recursive-descent parser for +, -, *, ^, parentheses, ints and variables."""

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise AlgebraError(f"polynomial parse error at column {self.pos}: {msg} in {self.text!r}")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Polynomial:
        out = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error(f"unexpected {self.text[self.pos]!r}")
        return out

    def expr(self) -> Polynomial:
        ch = self.peek()
        neg = False
        while ch in ("+", "-"):
            if ch == "-":
                neg = not neg
            self.pos += 1
            ch = self.peek()
        out = self.term()
        if neg:
            out = -out
        while True:
            ch = self.peek()
            if ch not in ("+", "-"):
                return out
            self.pos += 1
            rhs = self.term()
            out = out - rhs if ch == "-" else out + rhs

    def term(self) -> Polynomial:
        out = self.factor()
        while self.peek() == "*":
            self.pos += 1
            out = out * self.factor()
        return out

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            e = self.integer()
            return base ** e
        return base

    def atom(self) -> Polynomial:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            out = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return out
        if ch.isdigit():
            return self.ring.constant(self.integer())
        if ch.isalpha() or ch == "_":
            start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            name = self.text[start : self.pos]
            if name not in self.ring.names:
                self.error(f"unknown variable {name!r}")
            return self.ring.gen(self.ring.names.index(name))
        self.error("expected a factor")

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start : self.pos])


def parse_poly(ring: PolyRing, text: str) -> Polynomial:
    return _PolyParser(ring, text).parse()


def parse_polys(ring: PolyRing, texts: Iterable[str]):
    return [parse_poly(ring, t) for t in texts]
