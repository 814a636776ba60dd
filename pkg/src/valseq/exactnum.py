"""Exact rationals, cyclic value groups, numerical semigroups and digit expansions."""
from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Rat = Fraction


class NotAMember(ValueError):
    pass


class DegenerateGroup(ValueError):
    pass


class NoSolution(ValueError):
    pass


_MIXED = re.compile(r"^\s*([+-]?)\s*(\d+)\s*([+-])\s*(\d+)\s*/\s*(\d+)\s*$")
_SIMPLE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rat(text: str) -> Rat:
    """Parse "p/q", "p" or the mixed form "w+p/q" (also "-w-p/q")."""
    m = _SIMPLE.match(text)
    if m:
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Rat(int(m.group(1)), den)
    m = _MIXED.match(text)
    if m:
        sign, whole, op, num, den = m.groups()
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        frac = Rat(int(num), int(den))
        w = -int(whole) if sign == "-" else int(whole)
        return w + frac if op == "+" else w - frac
    raise ValueError(f"not a rational literal: {text!r}")


def format_rat(r: Rat) -> str:
    r = Rat(r)
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def format_mixed(r: Rat) -> str:
    """Mixed-number rendering, e.g. 37/8 -> "4+5/8"."""
    r = Rat(r)
    if r.denominator == 1:
        return str(r.numerator)
    sign = "-" if r < 0 else ""
    a = abs(r)
    whole, frac = divmod(a.numerator, a.denominator)
    if whole == 0:
        return f"{sign}{frac}/{a.denominator}"
    return f"{sign}{whole}{'-' if sign else '+'}{frac}/{a.denominator}"


def _rat_gcd(a: Rat, b: Rat) -> Rat:
    den = lcm(a.denominator, b.denominator)
    return Rat(gcd(int(a * den), int(b * den)), den)


@dataclass(frozen=True)
class ValueGroup:
    """The cyclic group generator*Z inside Q."""

    generator: Rat

    def __contains__(self, alpha) -> bool:
        return (Rat(alpha) / self.generator).denominator == 1

    def __add__(self, other: "ValueGroup") -> "ValueGroup":
        return ValueGroup(_rat_gcd(self.generator, other.generator))


def group_generator(values: Iterable[Rat], base: Rat = Rat(0)) -> ValueGroup:
    g = Rat(abs(Rat(base)))
    for v in values:
        g = _rat_gcd(g, abs(Rat(v)))
    if g == 0:
        raise DegenerateGroup("all inputs are zero")
    return ValueGroup(g)


def index_in_group(beta: Rat, G: ValueGroup) -> int:
    """Smallest q > 0 with q*beta in G."""
    if beta == 0:
        raise ValueError("beta must be nonzero")
    return (Rat(beta) / G.generator).denominator


class Semigroup:
    """Submonoid of Q>=0 generated by finitely many positive rationals.

    Membership works on integer-scaled values with a reachability bitset
    that is extended lazily; the lock makes instances shareable.
    """

    def __init__(self, generators: Iterable[Rat]):
        gens = tuple(Rat(g) for g in generators)
        if any(g <= 0 for g in gens):
            raise ValueError("semigroup generators must be positive")
        self.generators = gens
        self.scale = lcm(*(g.denominator for g in gens)) if gens else 1
        self._ints = tuple(int(g * self.scale) for g in gens)
        self._step = gcd(*self._ints) if gens else 0
        self._bits = 1
        self._high = 0
        self._conductor: int | None = None
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Semigroup({', '.join(map(format_rat, self.generators))})"

    def _grow(self, n: int) -> None:
        with self._lock:
            if n <= self._high:
                return
            n = max(n, 2 * self._high, 64)
            mask = (1 << (n + 1)) - 1
            b = 1
            for g in self._ints:
                shift = g
                while shift <= n:
                    b |= (b << shift) & mask
                    shift *= 2
            self._bits, self._high = b, n

    def _reach(self, n: int) -> bool:
        if n < 0:
            return False
        if n == 0:
            return True
        if not self._ints or n % self._step:
            return False
        c = self._conductor
        if c is not None and n >= c:
            return True
        if n > self._high:
            self._grow(n)
        return bool((self._bits >> n) & 1)

    def contains(self, alpha) -> bool:
        alpha = Rat(alpha)
        if alpha < 0:
            return False
        x = alpha * self.scale
        return x.denominator == 1 and self._reach(int(x))

    __contains__ = contains

    def conductor(self) -> Rat:
        """Least c such that every multiple of the group generator >= c is a member."""
        if self._conductor is None:
            if not self._ints:
                raise NoSolution("empty generator set")
            step, smallest = self._step, min(self._ints)
            n, run = 0, 0
            while run < smallest // step:
                if self._reach(n):
                    run += 1
                else:
                    run = 0
                n += step
            self._conductor = n - run * step
        return Rat(self._conductor, self.scale)

    def group(self) -> ValueGroup:
        return group_generator(self.generators)

    def witness(self, alpha) -> dict[int, int] | None:
        """Some representation alpha = sum(mult[k] * generators[k]), or None."""
        if not self.contains(alpha):
            return None
        n = int(Rat(alpha) * self.scale)
        mult: dict[int, int] = {}
        # greedy backtrack through the reachable table, largest generators first
        order = sorted(range(len(self._ints)), key=lambda k: -self._ints[k])
        while n > 0:
            for k in order:
                g = self._ints[k]
                if self._reach(n - g):
                    mult[k] = mult.get(k, 0) + 1
                    n -= g
                    break
            else:  # pragma: no cover
                raise AssertionError("reachable table inconsistent")
        return mult


_SG_CACHE: dict[tuple, Semigroup] = {}


def semigroup(generators: Iterable[Rat]) -> Semigroup:
    """Cached constructor keyed by the positive generators."""
    key = tuple(sorted({Rat(g) for g in generators if g != 0}))
    sg = _SG_CACHE.get(key)
    if sg is None:
        sg = _SG_CACHE[key] = Semigroup(key)
    return sg


def sg_member(alpha, S: Semigroup) -> dict[int, int] | None:
    if Rat(alpha) == 0:
        return {}
    return S.witness(alpha)


def sg_min_shift(shift: Rat, S: Semigroup, base: Rat, start: int = 0) -> int:
    """Least r >= start with r*base + shift in S.

    r_{i,0} is sg_min_shift(s*gamma, S, beta_0) and r_i is
    sg_min_shift(0, S, s*gamma, start=1).
    """
    shift, base = Rat(shift), Rat(base)
    if base <= 0:
        raise ValueError("base must be positive")
    if not S.generators:
        if shift == 0 and start == 0:
            return 0
        raise NoSolution("semigroup is trivial")
    G = S.group()
    c = S.conductor()
    r = start
    # past the conductor, membership depends only on the group coset
    period = index_in_group(base, G)
    limit = max(start, int((c - shift) / base) + 1) + period
    while r <= limit:
        if shift + r * base in S:
            return r
        r += 1
    raise NoSolution(f"no r with r*{base} + {shift} in {S}")


def is_reduced(t: Sequence[int], S: Semigroup, mu: Rat) -> bool:
    """Reduced-tuple test by exhaustive search of the dominated box.

    t = (a_0..a_k, c_i): the first entries pair with S.generators in order,
    the last with mu.
    """
    gens = S.generators
    *a, c = t
    if len(a) != len(gens):
        raise ValueError("tuple length must be len(generators) + 1")
    mu = Rat(mu)

    def value(aa, cc):
        return sum(x * g for x, g in zip(aa, gens)) + cc * mu

    if value(a, c) not in S:
        return False
    total = sum(t)
    boxes = [range(x + 1) for x in a]

    def walk(k, acc):
        if k == len(a):
            yield tuple(acc)
            return
        for x in boxes[k]:
            acc.append(x)
            yield from walk(k + 1, acc)
            acc.pop()

    for b in walk(0, []):
        for cc in range(1, c + 1):
            if sum(b) + cc < total and value(b, cc) in S:
                return False
    return True


def minimal_generators(values: Iterable[Rat]) -> list[Rat]:
    kept: list[Rat] = []
    for v in sorted({Rat(v) for v in values}):
        if v <= 0:
            raise ValueError("values must be positive")
        if not kept or v not in semigroup(kept):
            kept.append(v)
    return kept


@dataclass(frozen=True)
class DigitRep:
    n0: int
    p_digits: tuple[int, ...]
    t_digits: tuple[int, ...]

    def value(self, betas: Sequence[Rat], gammas: Sequence[Rat]) -> Rat:
        v = self.n0 * Rat(betas[0])
        v += sum(n * Rat(b) for n, b in zip(self.p_digits, betas[1:]))
        v += sum(l * Rat(g) for l, g in zip(self.t_digits, gammas))
        return v


def digit_levels(betas: Sequence[Rat], gammas: Sequence[Rat], s: Sequence[int]) -> list[int]:
    """m'_0 = 0 and m'_j = max(m'_{j-1}, least k with s_j*gamma_j in G_k + H_{j-1})."""
    levels = [0]
    for j, (g, sj) in enumerate(zip(gammas, s), start=1):
        target = sj * Rat(g)
        for k in range(levels[-1], len(betas)):
            if target in group_generator(list(betas[: k + 1]) + list(gammas[: j - 1])):
                levels.append(k)
                break
        else:
            raise NotAMember(f"s_{j}*gamma_{j} is outside the group of the given betas")
    return levels


def digits(alpha: Rat, betas: Sequence[Rat], q: Sequence[int],
           gammas: Sequence[Rat] = (), s: Sequence[int] = ()) -> DigitRep:
    """Unique bounded digit expansion of alpha, peeled from the top index down.

    ``q`` follows ``betas`` and ``s`` follows ``gammas``: q[j] pairs with betas[j]
    (q[0] is ignored) and s[j-1] pairs with gammas[j-1].
    """
    betas = [Rat(b) for b in betas]
    gammas = [Rat(g) for g in gammas]
    q = list(q)
    s = list(s)
    if len(q) == len(betas) - 1:
        q = [None] + q
    levels = digit_levels(betas, gammas, s)
    alpha = Rat(alpha)
    m, i = len(betas) - 1, len(gammas)
    if alpha not in group_generator(betas + gammas):
        raise NotAMember(f"{format_rat(alpha)} not in the group")
    p = [0] * m
    t = [0] * i

    def group(k, j):
        return group_generator(betas[: k + 1] + gammas[:j])

    k = m
    while k > 0 or i > 0:
        if k > levels[i]:
            G = group(k - 1, i)
            hits = [n for n in range(q[k]) if alpha - n * betas[k] in G]
            if len(hits) != 1:
                raise NotAMember(f"digit {k} is not unique: {hits}")
            p[k - 1] = hits[0]
            alpha -= hits[0] * betas[k]
            k -= 1
        else:
            G = group(k, i - 1)
            hits = [l for l in range(s[i - 1]) if alpha - l * gammas[i - 1] in G]
            if len(hits) != 1:
                raise NotAMember(f"gamma digit {i} is not unique: {hits}")
            t[i - 1] = hits[0]
            alpha -= hits[0] * gammas[i - 1]
            i -= 1
    n0 = alpha / betas[0]
    if n0.denominator != 1:
        raise NotAMember("leftover is not a multiple of beta_0")
    return DigitRep(int(n0), tuple(p), tuple(t))
