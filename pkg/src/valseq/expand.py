"""Expansions in the defining polynomials and the valuation they induce.

Two independent routes are provided:

* division: repeated Euclidean division by Q_N, ..., Q_1 and then by
  P_M, ..., P_1 on explicit polynomials;
* normal form: elements kept as sums of digit-bounded monomials in the
  P_i, Q_j with Laurent coefficients in x, rewritten with the defining
  relations. This never materialises large Q_j and is what the jumping
  engine works with.

Both produce the same digit-bounded representation, which is unique, so
the valuation is the minimum of ``val`` over its terms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .defseq import DefiningSequence, DepthExhausted
from .exactnum import Rat, format_rat
from .laurent import ONE, ZERO, LaurentPoly, divmod_monic, format_poly


class ValueUndefined(ValueError):
    pass


class Inconsistent(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class ACKey:
    a: tuple[int, ...] = ()
    c: tuple[int, ...] = ()

    def __str__(self):
        return f"{','.join(map(str, self.a))}|{','.join(map(str, self.c))}"


@dataclass
class MNExpansion:
    K: int
    M: int
    N: int
    terms: dict[ACKey, LaurentPoly] = field(default_factory=dict)

    def reassemble(self, seq: DefiningSequence) -> LaurentPoly:
        """sum of terms[AC] * prod P^a * prod Q^c, which equals x^K * f."""
        total = ZERO
        for key, coef in self.terms.items():
            total = total + coef * _monomial(seq, key)
        return total

    def dump(self, seq: DefiningSequence) -> str:
        rows = sorted(self.terms.items(), key=lambda kv: (val(kv[1], kv[0], seq), kv[0]))
        lines = [f"K={self.K}"]
        for key, coef in rows:
            lines.append(f"AC={key} coeff={format_poly(coef)} val={format_rat(val(coef, key, seq))}")
        return "\n".join(lines)


def _monomial(seq: DefiningSequence, key: ACKey) -> LaurentPoly:
    out = ONE
    for i, a in enumerate(key.a, start=1):
        if a:
            out = out * seq.P(i) ** a
    for j, c in enumerate(key.c, start=1):
        if c:
            out = out * seq.Q(j) ** c
    return out


def key_value(a: Iterable[int], c: Iterable[int], seq: DefiningSequence) -> Rat:
    v = Rat(0)
    for i, e in enumerate(a, start=1):
        if e:
            v += e * seq.betas[i]
    for j, e in enumerate(c, start=1):
        if e:
            v += e * seq.gammas[j]
    return v


def val(coefficient: LaurentPoly, key: ACKey, seq: DefiningSequence) -> Rat:
    if not coefficient:
        raise ValueUndefined("val of a zero coefficient")
    if coefficient.uses("y") or coefficient.uses("z"):
        raise ValueError("coefficient must be a polynomial in x alone")
    return coefficient.ord_x() * seq.betas[0] + key_value(key.a, key.c, seq)


# division route

def p_expansion(f: LaurentPoly, M: int, seq: DefiningSequence) -> MNExpansion:
    if f.uses("z"):
        raise ValueError("p_expansion takes a polynomial in x and y")
    if f and f.ord_x() < 0:
        raise ValueError("p_expansion takes nonnegative powers of x")
    if M > seq.depth:
        raise DepthExhausted(f"M = {M} exceeds depth {seq.depth}; increase depth")
    terms = {ACKey(a, ()): c for a, c in _p_digits(f, M, seq)}
    return MNExpansion(0, M, 0, terms)


def _p_digits(f: LaurentPoly, j: int, seq) -> Iterator[tuple[tuple[int, ...], LaurentPoly]]:
    if not f:
        return
    if j == 0:
        if f.uses("y"):
            raise DepthExhausted("y-degree too large for the chosen M")
        yield (), f
        return
    for a, coef in enumerate(divmod_monic(f, seq.P(j), "y")):
        for key, c in _p_digits(coef, j - 1, seq):
            yield key + (a,), c


def q_expansion(f: LaurentPoly, N: int, seq: DefiningSequence) -> tuple[int, dict[tuple[int, ...], LaurentPoly]]:
    """x^K f = sum f_C prod Q_j^{c_j} with f_C in k[x, y] and K minimal."""
    if not f:
        raise ValueUndefined("zero polynomial")
    if N > seq.depth:
        raise DepthExhausted(f"N = {N} exceeds depth {seq.depth}; increase depth")
    parts = dict(_q_digits(f, N, seq))
    K = max(0, -min(c.ord_x() for c in parts.values()))
    return K, {C: c.shift_x(K) for C, c in parts.items()}


def _q_digits(f, j, seq):
    if not f:
        return
    if j == 0:
        if f.uses("z"):
            raise DepthExhausted("z-degree too large for the chosen N")
        yield (), f
        return
    d = seq.d(j)
    for c, coef in enumerate(divmod_monic(f, seq.Q(j).shift_x(-d), "z")):
        for key, g in _q_digits(coef.shift_x(-c * d), j - 1, seq):
            yield key + (c,), g


def mn_expansion(f: LaurentPoly, M: int, N: int, seq: DefiningSequence) -> MNExpansion:
    K, qparts = q_expansion(f, N, seq)
    terms: dict[ACKey, LaurentPoly] = {}
    for C, fc in qparts.items():
        for a, coef in _p_digits(fc, M, seq):
            terms[ACKey(a, C)] = coef
    return MNExpansion(K, M, N, terms)


def thresholds(f: LaurentPoly, seq: DefiningSequence) -> tuple[int, int]:
    """The minimal (M, N) of the unique digit-bounded representation."""
    if not f:
        raise ValueUndefined("zero polynomial")
    dz = f.deg("z")
    N = 0
    while dz >= seq.deg_z_Q(N + 1):
        N += 1
        if N > seq.depth:
            raise DepthExhausted(f"z-degree {dz} needs more than depth {seq.depth}; increase depth")
    _, qparts = q_expansion(f, N, seq)
    dy = max(c.deg("y") for c in qparts.values())
    M = 0
    while dy >= seq.deg_y_P(M + 1):
        M += 1
        if M > seq.depth:
            raise DepthExhausted(f"y-degree {dy} needs more than depth {seq.depth}; increase depth")
    return M, N


def nu_mn(f: LaurentPoly, M: int, N: int, seq: DefiningSequence) -> Rat:
    if not f:
        raise ValueUndefined("the value of 0 is undefined")
    e = mn_expansion(f, M, N, seq)
    return -e.K * seq.betas[0] + min(val(c, k, seq) for k, c in e.terms.items())


def nu(f: LaurentPoly, seq: DefiningSequence) -> Rat:
    M, N = thresholds(f, seq)
    return nu_mn(f, M, N, seq)


def expansion(f: LaurentPoly, seq: DefiningSequence) -> MNExpansion:
    M, N = thresholds(f, seq)
    return mn_expansion(f, M, N, seq)


def residue(f: LaurentPoly, g: LaurentPoly, seq: DefiningSequence) -> Rat:
    """The scalar c with nu(f - c*g) > nu(f) = nu(g)."""
    Mf, Nf = thresholds(f, seq)
    Mg, Ng = thresholds(g, seq)
    N = max(Nf, Ng)
    M = max(Mf, Mg)
    if N >= 2:
        M = max(M, seq.step(N - 1).m_bar + 1)
    ef, eg = mn_expansion(f, M, N, seq), mn_expansion(g, M, N, seq)
    (vf, kf, cf), (vg, kg, cg) = _lowest(ef, seq), _lowest(eg, seq)
    if vf != vg:
        raise ValueError(f"values differ: {format_rat(vf)} != {format_rat(vg)}")
    if kf != kg or cf.ord_x() - ef.K != cg.ord_x() - eg.K:
        raise Inconsistent("lowest terms do not align")
    c = Rat(cf.terms[(cf.ord_x(), 0, 0)]) / Rat(cg.terms[(cg.ord_x(), 0, 0)])
    rest = f - g * c
    if rest and nu(rest, seq) <= vf:
        raise Inconsistent("residue does not raise the value")
    return c


def _lowest(e: MNExpansion, seq) -> tuple[Rat, ACKey, LaurentPoly]:
    best = None
    for k, c in e.terms.items():
        v = val(c, k, seq) - e.K * seq.betas[0]
        if best is None or v < best[0]:
            best = (v, k, c)
        elif v == best[0]:
            raise Inconsistent("two terms share the minimal value")
    return best


# normal-form route

Key = tuple  # (a_1..a_M, c_1..c_N) as a pair of tuples with trailing zeros removed


def _strip(t: tuple) -> tuple:
    n = len(t)
    while n and not t[n - 1]:
        n -= 1
    return t[:n]


def _add(u: tuple, v: tuple) -> tuple:
    if len(u) < len(v):
        u, v = v, u
    return tuple(x + (v[k] if k < len(v) else 0) for k, x in enumerate(u))


class Basis:
    """Normal forms with respect to the defining relations of ``seq``.

    An element is a dict ``{(a, c, e): coeff}`` standing for
    coeff * x^e * prod P_i^{a_i} * prod Q_j^{c_j} with 0 <= a_i < q_i and
    0 <= c_j < s_bar_j.  Distinct keys have values distinct modulo beta_0,
    so the representation is unique and equality is dictionary equality.
    """

    def __init__(self, seq: DefiningSequence):
        self.seq = seq
        self._nf: dict[tuple, dict] = {}
        self._kval: dict[tuple, Rat] = {}
        self.beta0 = seq.betas[0]

    # rewriting
    def _rewrite(self, key):
        a, c = key
        seq = self.seq
        for j, e in enumerate(a, start=1):
            if j > seq.depth:
                raise DepthExhausted(f"P_{j} appears beyond depth {seq.depth}; increase depth")
            st = seq.steps[j - 1]
            if e >= st.q:
                base = a[: j - 1] + (e - st.q,) + a[j:]
                k1 = (_strip(_add(base, st.n_row[1:])), c)
                k2 = (_strip(_add(base, (0,) * j + (1,))), c)
                return [(st.lam, st.n_row[0], k1), (Rat(1), 0, k2)]
        for j, e in enumerate(c, start=1):
            if j > seq.depth:
                raise DepthExhausted(f"Q_{j} appears beyond depth {seq.depth}; increase depth")
            st = seq.steps[j - 1]
            if e >= st.s_bar:
                base = c[: j - 1] + (e - st.s_bar,) + c[j:]
                k1 = (_strip(_add(a, st.n_bar_row[1:])), _strip(_add(base, st.l_bar_row)))
                k2 = (a, _strip(_add(base, (0,) * j + (1,))))
                return [(st.mu_bar, st.n_bar_row[0] - st.r_bar0, k1), (Rat(1), -st.r_bar0, k2)]
        return None

    def normal(self, key) -> dict:
        """Normal form of the monomial prod P^a prod Q^c, as {(a, c, e): coeff}."""
        memo = self._nf
        if key in memo:
            return memo[key]
        stack = [key]
        while stack:
            k = stack[-1]
            if k in memo:
                stack.pop()
                continue
            rule = self._rewrite(k)
            if rule is None:
                memo[k] = {(k[0], k[1], 0): 1}
                stack.pop()
                continue
            missing = [k2 for _, _, k2 in rule if k2 not in memo]
            if missing:
                stack.extend(missing)
                continue
            out: dict = {}
            for coef, shift, k2 in rule:
                for (aa, cc, e), v in memo[k2].items():
                    t = (aa, cc, e + shift)
                    w = out.get(t, 0) + coef * v
                    if w:
                        out[t] = w
                    else:
                        out.pop(t, None)
            memo[k] = out
            stack.pop()
        return memo[key]

    # constructors
    def element(self, terms: dict) -> "Elem":
        return Elem(self, terms)

    def const(self, c=1) -> "Elem":
        return Elem(self, {((), (), 0): Rat(c)} if c else {})

    def x(self, e: int = 1) -> "Elem":
        return Elem(self, {((), (), e): Rat(1)})

    def monomial(self, a=(), c=(), e=0, coeff=1) -> "Elem":
        out = {}
        for (aa, cc, sh), v in self.normal((_strip(tuple(a)), _strip(tuple(c)))).items():
            out[(aa, cc, sh + e)] = v * coeff
        return Elem(self, out)

    def P(self, i: int) -> "Elem":
        return self.x() if i == 0 else self.monomial(a=(0,) * (i - 1) + (1,))

    def Q(self, j: int) -> "Elem":
        return self.monomial(c=(0,) * (j - 1) + (1,))

    def from_poly(self, f: LaurentPoly) -> "Elem":
        out: dict = {}
        for (ex, ey, ez), v in f.terms.items():
            for (aa, cc, sh), w in self.normal((_strip((ey,)), _strip((ez,)))).items():
                t = (aa, cc, sh + ex)
                s = out.get(t, 0) + v * w
                if s:
                    out[t] = s
                else:
                    out.pop(t, None)
        return Elem(self, out)

    def key_value(self, a, c) -> Rat:
        k = (a, c)
        v = self._kval.get(k)
        if v is None:
            v = self._kval[k] = key_value(a, c, self.seq)
        return v


class Elem:
    """An element of k[x, x^-1, y, z] in normal form."""

    __slots__ = ("basis", "terms")

    def __init__(self, basis: Basis, terms: dict):
        self.basis = basis
        self.terms = terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Elem):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __add__(self, other: "Elem") -> "Elem":
        out = dict(self.terms)
        for t, v in other.terms.items():
            s = out.get(t, 0) + v
            if s:
                out[t] = s
            else:
                out.pop(t, None)
        return Elem(self.basis, out)

    def __neg__(self):
        return Elem(self.basis, {t: -v for t, v in self.terms.items()})

    def __sub__(self, other: "Elem") -> "Elem":
        return self + (-other)

    def scale(self, c) -> "Elem":
        if not c:
            return Elem(self.basis, {})
        return Elem(self.basis, {t: v * c for t, v in self.terms.items()})

    def shift_x(self, e: int) -> "Elem":
        return Elem(self.basis, {(a, c, s + e): v for (a, c, s), v in self.terms.items()})

    def __mul__(self, other: "Elem") -> "Elem":
        B = self.basis
        # group by key so each product key is normalised once
        left: dict = {}
        for (a, c, e), v in self.terms.items():
            left.setdefault((a, c), []).append((e, v))
        right: dict = {}
        for (a, c, e), v in other.terms.items():
            right.setdefault((a, c), []).append((e, v))
        out: dict = {}
        get = out.get
        for (a1, c1), xs in left.items():
            for (a2, c2), ys in right.items():
                nf = B.normal((_add(a1, a2), _add(c1, c2)))
                conv: dict = {}
                for e1, v1 in xs:
                    for e2, v2 in ys:
                        conv[e1 + e2] = conv.get(e1 + e2, 0) + v1 * v2
                for (aa, cc, sh), w in nf.items():
                    for e, v in conv.items():
                        if v:
                            t = (aa, cc, sh + e)
                            out[t] = get(t, 0) + v * w
        return Elem(B, {t: v for t, v in out.items() if v})

    def __pow__(self, n: int) -> "Elem":
        result, base = self.basis.const(1), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def lowest(self) -> tuple[Rat, tuple, Rat]:
        """(value, (a, c, e), coefficient) of the unique minimal-value term."""
        if not self.terms:
            raise ValueUndefined("the value of 0 is undefined")
        B = self.basis
        best = None
        for t, v in self.terms.items():
            w = t[2] * B.beta0 + B.key_value(t[0], t[1])
            if best is None or w < best[0]:
                best = (w, t, v)
            elif w == best[0]:
                raise Inconsistent("two normal-form terms share the minimal value")
        return best

    def nu(self) -> Rat:
        return self.lowest()[0]

    def residue(self, other: "Elem") -> Rat:
        vf, tf, cf = self.lowest()
        vg, tg, cg = other.lowest()
        if vf != vg:
            raise ValueError(f"values differ: {format_rat(vf)} != {format_rat(vg)}")
        if tf != tg:
            raise Inconsistent("lowest terms do not align")
        return Rat(cf) / Rat(cg)

    def expansion(self) -> MNExpansion:
        """The same data as an MNExpansion (keys padded to common length)."""
        if not self.terms:
            raise ValueUndefined("zero element")
        M = max(len(a) for a, _, _ in self.terms)
        N = max(len(c) for _, c, _ in self.terms)
        K = max(0, -min(e for _, _, e in self.terms))
        coeffs: dict[ACKey, dict] = {}
        for (a, c, e), v in self.terms.items():
            key = ACKey(a + (0,) * (M - len(a)), c + (0,) * (N - len(c)))
            coeffs.setdefault(key, {})[(e + K, 0, 0)] = v
        return MNExpansion(K, M, N, {k: LaurentPoly(t) for k, t in coeffs.items()})

    def to_poly(self) -> LaurentPoly:
        seq = self.basis.seq
        e = self.expansion()
        return e.reassemble(seq).shift_x(-e.K)

    def size(self) -> int:
        return len(self.terms)
