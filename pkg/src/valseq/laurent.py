"""Sparse polynomials in x, y, z over Q with negative powers of x allowed."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

from .exactnum import Rat, format_rat

VARS = ("x", "y", "z")
_SLOT = {"x": 0, "y": 1, "z": 2}


class Monomial(NamedTuple):
    ex: int
    ey: int
    ez: int


def _order(m) -> tuple:
    return (m[2], m[1], m[0])


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """Immutable term map (ex, ey, ez) -> nonzero rational."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        t = {}
        for m, c in items:
            if c:
                m = tuple(m)
                if m[1] < 0 or m[2] < 0:
                    raise ValueError("y and z exponents must be nonnegative")
                t[m] = _norm(Rat(c)) if not isinstance(c, int) else c
        self.terms = t
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, ex=0, ey=0, ez=0, c=1) -> "LaurentPoly":
        return cls({(ex, ey, ez): c})

    # ring operations
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = _norm(v)
            else:
                t.pop(m, None)
        return LaurentPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scalar_mul(self, c) -> "LaurentPoly":
        c = _norm(Rat(c))
        if not c:
            return LaurentPoly()
        return LaurentPoly._raw({m: _norm(v * c) for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scalar_mul(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        t: dict = {}
        get = t.get
        for (bx, by, bz), bc in b.items():
            for (ax, ay, az), ac in a.items():
                m = (ax + bx, ay + by, az + bz)
                t[m] = get(m, 0) + ac * bc
        return LaurentPoly._raw({m: _norm(c) for m, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = LaurentPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift_x(self, k: int) -> "LaurentPoly":
        """Multiply by x^k."""
        return LaurentPoly._raw({(m[0] + k, m[1], m[2]): c for m, c in self.terms.items()})

    # measures
    def ord_x(self) -> int:
        self._nonzero()
        return min(m[0] for m in self.terms)

    def deg(self, var: str) -> int:
        self._nonzero()
        k = _SLOT[var]
        return max(m[k] for m in self.terms)

    def lead(self, var: str) -> "LaurentPoly":
        d = self.deg(var)
        k = _SLOT[var]
        t = {}
        for m, c in self.terms.items():
            if m[k] == d:
                mm = list(m)
                mm[k] = 0
                t[tuple(mm)] = c
        return LaurentPoly._raw(t)

    def coeffs(self, var: str) -> dict[int, "LaurentPoly"]:
        """View as a polynomial in ``var``: degree -> coefficient."""
        k = _SLOT[var]
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            mm = list(m)
            e = mm[k]
            mm[k] = 0
            out.setdefault(e, {})[tuple(mm)] = c
        return {e: LaurentPoly._raw(t) for e, t in out.items()}

    def uses(self, var: str) -> bool:
        k = _SLOT[var]
        return any(m[k] for m in self.terms)

    def _nonzero(self):
        if not self.terms:
            raise ValueError("measure of the zero polynomial is undefined")

    def sorted_terms(self) -> list[tuple[Monomial, Rat]]:
        return [(Monomial(*m), Rat(self.terms[m])) for m in sorted(self.terms, key=_order)]

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r})"


X = LaurentPoly.monomial(1, 0, 0)
Y = LaurentPoly.monomial(0, 1, 0)
Z = LaurentPoly.monomial(0, 0, 1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


@dataclass(frozen=True)
class Measures:
    ord_x: int
    deg_y: int
    deg_z: int
    lead_y: LaurentPoly
    lead_z: LaurentPoly


def measures(f: LaurentPoly) -> Measures:
    return Measures(f.ord_x(), f.deg("y"), f.deg("z"), f.lead("y"), f.lead("z"))


def divmod_monic(f: LaurentPoly, g: LaurentPoly, var: str) -> list[LaurentPoly]:
    """Digits of f in base g: f = sum(out[i] * g**i) with deg_var(out[i]) < deg_var(g)."""
    if g.lead(var) != ONE:
        raise ValueError(f"divisor is not monic in {var}")
    dg = g.deg(var)
    if dg == 0:
        raise ValueError("divisor must have positive degree")
    gcoef = g.coeffs(var)
    out = []
    while f:
        quot: dict[int, LaurentPoly] = {}
        rem = f.coeffs(var)
        top = max(rem)
        while top >= dg:
            lc = rem.pop(top)
            shift = top - dg
            quot[shift] = lc
            for e, c in gcoef.items():
                if e == dg:
                    continue
                k = e + shift
                v = rem.get(k, ZERO) - lc * c
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
            top = max(rem) if rem else -1
        out.append(_assemble(rem, var))
        f = _assemble(quot, var)
    return out or [ZERO]


def _assemble(parts: Mapping[int, LaurentPoly], var: str) -> LaurentPoly:
    k = _SLOT[var]
    t = {}
    for e, p in parts.items():
        for m, c in p.terms.items():
            mm = list(m)
            mm[k] = e
            t[tuple(mm)] = c
    return LaurentPoly._raw(t)


# literal grammar

class PolySyntaxError(ValueError):
    def __init__(self, msg: str, text: str, col: int):
        super().__init__(f"{msg} at column {col + 1}: {text!r}")
        self.col = col + 1


def parse_poly(text: str) -> LaurentPoly:
    """Parse a signed sum of terms like "3/2*x^-2*y*z^3 - x^3"."""
    pos = 0
    n = len(text)
    terms: dict = {}

    def skip():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def peek():
        skip()
        return text[pos] if pos < n else ""

    def integer(allow_sign=False):
        nonlocal pos
        skip()
        start = pos
        sign = 1
        if allow_sign and pos < n and text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos += 1
            skip()
        m = re.match(r"\d+", text[pos:])
        if not m:
            raise PolySyntaxError("expected an integer", text, start)
        pos += m.end()
        return sign * int(m.group())

    first = True
    skip()
    if pos == n:
        raise PolySyntaxError("empty polynomial", text, 0)
    while True:
        skip()
        if pos == n:
            break
        sign = 1
        if text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos += 1
        elif not first:
            raise PolySyntaxError("expected + or -", text, pos)
        first = False
        coeff = Rat(1)
        exps = [0, 0, 0]
        factors = 0
        while True:
            ch = peek()
            if ch.isdigit():
                num = integer()
                den = 1
                if peek() == "/":
                    pos += 1
                    den = integer()
                    if den == 0:
                        raise PolySyntaxError("zero denominator", text, pos - 1)
                coeff *= Rat(num, den)
            elif ch in _SLOT:
                var = ch
                pos += 1
                e = 1
                if peek() == "^":
                    pos += 1
                    at = pos
                    e = integer(allow_sign=True)
                    if e < 0 and var != "x":
                        raise PolySyntaxError(f"negative power of {var}", text, at)
                exps[_SLOT[var]] += e
            else:
                raise PolySyntaxError("expected a coefficient or variable", text, pos)
            factors += 1
            if peek() == "*":
                pos += 1
                continue
            nxt = peek()
            if nxt and (nxt in _SLOT or nxt.isdigit()):
                continue
            break
        m = tuple(exps)
        v = terms.get(m, 0) + sign * coeff
        if v:
            terms[m] = v
        else:
            terms.pop(m, None)
    return LaurentPoly(terms)


def format_poly(f: LaurentPoly) -> str:
    if not f.terms:
        return "0"
    parts = []
    for m, c in reversed(f.sorted_terms()):
        factors = []
        for name, e in zip(VARS, m):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if mag != 1 or not factors:
            factors.insert(0, format_rat(mag))
        body = "*".join(factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)
