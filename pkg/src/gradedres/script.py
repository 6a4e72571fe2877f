"""A small session language for naming rings, ideals, and modules.

One statement per line, comments start with #, a trailing semicolon is
allowed. Statements have the shape

    ring  S = poly(p=32003, vars=[x, y, z], order=degrevlex)
    ideal I = ideal(S, [x^2 - y*z, x*y])
    ring  R = quotient(S, I)
    module M = coker(R, shifts=[0, 1], relations=[[x, y], [z^2, 0]])
    module K = residue_field(R)
    module N = cyclic(R, [x, y^2])
    module F = free(R, shifts=[0, 0])

Relation lists in coker are columns: one inner list per relation, one entry
per generator. Polynomials are parsed in the ambient ring of the named ring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from .errors import AlgebraError, ScriptError
from .field import DEFAULT_PRIME
from .groebner import QuotientRing, quotient_ring
from .modules import Presentation, cyclic_presentation, free_presentation, presentation_from_rows, residue_field_presentation
from .order import ORDERS
from .poly import PolyRing, Polynomial, parse_poly


@dataclass
class IdealValue:
    ring_name: str
    gens: Tuple[Polynomial, ...]


@dataclass
class Session:
    rings: Dict[str, Union[PolyRing, QuotientRing]] = field(default_factory=dict)
    ideals: Dict[str, IdealValue] = field(default_factory=dict)
    modules: Dict[str, Presentation] = field(default_factory=dict)
    order: List[Tuple[str, str]] = field(default_factory=list)  # (kind, name) in definition order

    def ring(self, name: str) -> Union[PolyRing, QuotientRing]:
        if name not in self.rings:
            raise ScriptError(f"unknown ring {name!r}")
        return self.rings[name]

    def quotient(self, name: str) -> QuotientRing:
        R = self.ring(name)
        if isinstance(R, PolyRing):
            # the polynomial ring is the quotient by the zero ideal
            return quotient_ring(R, [])
        return R

    def module(self, name: str) -> Presentation:
        if name not in self.modules:
            raise ScriptError(f"unknown module {name!r}")
        return self.modules[name]


def _split_top(text: str, sep: str = ",") -> List[str]:
    """Split on sep at bracket depth zero."""
    parts: List[str] = []
    depth = 0
    cur: List[str] = []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
            if depth < 0:
                raise ScriptError("unbalanced brackets")
        if ch == sep and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail:
        parts.append(tail)
    return parts


def _parse_call(text: str) -> Tuple[str, List[str], Dict[str, str]]:
    """Split 'func(a, b, key=value)' into name, positional and keyword parts."""
    text = text.strip()
    open_idx = text.find("(")
    if open_idx < 0 or not text.endswith(")"):
        raise ScriptError(f"expected a call like name(...), got {text!r}")
    func = text[:open_idx].strip()
    if not func.isidentifier():
        raise ScriptError(f"bad constructor name {func!r}")
    inner = text[open_idx + 1 : -1].strip()
    args: List[str] = []
    kwargs: Dict[str, str] = {}
    if inner:
        for part in _split_top(inner):
            eq = part.find("=")
            # a top-level key=value has an identifier before '='; polynomial
            # text never starts that way because '=' is not a poly operator
            key = part[:eq].strip() if eq > 0 else ""
            if eq > 0 and key.isidentifier():
                kwargs[key] = part[eq + 1 :].strip()
            else:
                args.append(part)
    return func, args, kwargs


def _parse_list(text: str) -> List[str]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ScriptError(f"expected a [...] list, got {text!r}")
    inner = text[1:-1].strip()
    return _split_top(inner) if inner else []


def _parse_int(text: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ScriptError(f"expected an integer, got {text.strip()!r}")


class ScriptRunner:
    def __init__(self):
        self.session = Session()

    def run(self, text: str) -> Session:
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if line.endswith(";"):
                line = line[:-1].strip()
            if not line:
                continue
            try:
                self._statement(line)
            except ScriptError as e:
                if e.line is None:
                    raise ScriptError(str(e), line=lineno) from None
                raise
            except AlgebraError as e:
                raise ScriptError(str(e), line=lineno) from None
        return self.session

    def _statement(self, line: str):
        fields = line.split(None, 1)
        if len(fields) != 2 or fields[0] not in ("ring", "ideal", "module"):
            raise ScriptError(f"statements start with ring/ideal/module, got {line!r}")
        kind, rest = fields
        eq = rest.find("=")
        if eq < 0:
            raise ScriptError(f"missing '=' in {line!r}")
        name = rest[:eq].strip()
        if not name.isidentifier():
            raise ScriptError(f"bad name {name!r}")
        for table in (self.session.rings, self.session.ideals, self.session.modules):
            if name in table:
                raise ScriptError(f"name {name!r} is already defined")
        rhs = rest[eq + 1 :].strip()
        func, args, kwargs = _parse_call(rhs)
        builder = getattr(self, f"_build_{func}", None)
        if builder is None:
            raise ScriptError(f"unknown constructor {func!r}")
        value = builder(args, kwargs)
        if kind == "ring":
            if not isinstance(value, (PolyRing, QuotientRing)):
                raise ScriptError(f"{func} does not build a ring")
            self.session.rings[name] = value
        elif kind == "ideal":
            if not isinstance(value, IdealValue):
                raise ScriptError(f"{func} does not build an ideal")
            self.session.ideals[name] = value
        else:
            if not isinstance(value, Presentation):
                raise ScriptError(f"{func} does not build a module")
            self.session.modules[name] = value
        self.session.order.append((kind, name))

    # ---- constructors ----

    def _ambient(self, ring_name: str) -> PolyRing:
        R = self.session.ring(ring_name)
        return R if isinstance(R, PolyRing) else R.ambient

    def _polys(self, ring_name: str, items: List[str]) -> List[Polynomial]:
        amb = self._ambient(ring_name)
        return [parse_poly(amb, s) for s in items]

    def _build_poly(self, args, kwargs):
        if args:
            raise ScriptError("poly takes only keyword arguments")
        p = _parse_int(kwargs.pop("p", str(DEFAULT_PRIME)))
        if "vars" not in kwargs:
            raise ScriptError("poly needs vars=[...]")
        names = _parse_list(kwargs.pop("vars"))
        order_name = kwargs.pop("order", "degrevlex").strip()
        if order_name not in ORDERS:
            raise ScriptError(f"unknown order {order_name!r} (choices: {', '.join(sorted(ORDERS))})")
        if kwargs:
            raise ScriptError(f"unknown arguments to poly: {', '.join(sorted(kwargs))}")
        return PolyRing(p, names, ORDERS[order_name])

    def _build_ideal(self, args, kwargs):
        if kwargs or len(args) != 2:
            raise ScriptError("ideal takes (ring, [generators])")
        gens = self._polys(args[0], _parse_list(args[1]))
        return IdealValue(ring_name=args[0], gens=tuple(gens))

    def _build_quotient(self, args, kwargs):
        if kwargs or len(args) != 2:
            raise ScriptError("quotient takes (ring, ideal-or-list)")
        base = self.session.ring(args[0])
        if not isinstance(base, PolyRing):
            raise ScriptError("quotient expects a polynomial ring; compose ideals instead")
        if args[1] in self.session.ideals:
            iv = self.session.ideals[args[1]]
            if self._ambient(iv.ring_name) != base:
                raise ScriptError(f"ideal {args[1]!r} lives in a different ring")
            gens = list(iv.gens)
        else:
            gens = self._polys(args[0], _parse_list(args[1]))
        return quotient_ring(base, gens)

    def _build_coker(self, args, kwargs):
        if len(args) != 1:
            raise ScriptError("coker takes (ring, shifts=[...], relations=[[...], ...])")
        R = self.session.quotient(args[0])
        if "shifts" not in kwargs:
            raise ScriptError("coker needs shifts=[...]")
        shifts = [_parse_int(s) for s in _parse_list(kwargs.pop("shifts"))]
        rel_text = kwargs.pop("relations", "[]")
        if kwargs:
            raise ScriptError(f"unknown arguments to coker: {', '.join(sorted(kwargs))}")
        cols = []
        for col_text in _parse_list(rel_text):
            entries = self._polys(args[0], _parse_list(col_text))
            if len(entries) != len(shifts):
                raise ScriptError(
                    f"relation column has {len(entries)} entries for {len(shifts)} generators"
                )
            cols.append(entries)
        return presentation_from_rows(R, shifts, cols)

    def _build_cyclic(self, args, kwargs):
        if kwargs or len(args) != 2:
            raise ScriptError("cyclic takes (ring, [relations])")
        R = self.session.quotient(args[0])
        return cyclic_presentation(R, self._polys(args[0], _parse_list(args[1])))

    def _build_residue_field(self, args, kwargs):
        if kwargs or len(args) != 1:
            raise ScriptError("residue_field takes (ring)")
        return residue_field_presentation(self.session.quotient(args[0]))

    def _build_free(self, args, kwargs):
        if len(args) != 1 or set(kwargs) - {"shifts"}:
            raise ScriptError("free takes (ring, shifts=[...])")
        R = self.session.quotient(args[0])
        shifts = [_parse_int(s) for s in _parse_list(kwargs.get("shifts", "[]"))]
        return free_presentation(R, shifts)


def run_script(text: str) -> Session:
    return ScriptRunner().run(text)
