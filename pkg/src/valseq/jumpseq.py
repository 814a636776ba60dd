"""Jumping polynomials: reduced tuples, successors, redundancy and the value semigroup."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .defseq import DefiningSequence, DepthExhausted
from .exactnum import (Rat, format_rat, group_generator, index_in_group, minimal_generators,
                       parse_rat, semigroup, sg_min_shift)
from .expand import Basis, Elem, Inconsistent
from .laurent import format_poly, parse_poly

INF = None  # "no cap" / "known for every value"


class IncompleteRun(RuntimeError):
    pass


class _BudgetExceeded(Exception):
    pass


def _le(a, b) -> bool:
    """a <= b where None stands for +infinity."""
    if b is None:
        return True
    if a is None:
        return False
    return a <= b


def _min(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True)
class DTuple:
    a: tuple[int, ...]  # a_0..a_m
    c: tuple[int, ...]  # c_1..c_i, last entry positive
    value: Rat

    def __str__(self):
        return "(" + ",".join(map(str, self.a + self.c)) + ")"


@dataclass
class Redundancy:
    kind: str  # "R", "I" or "U"
    note: str = ""
    witness: list = field(default_factory=list)


@dataclass
class JumpEntry:
    pos: int
    label: str
    T: Elem
    gamma: Rat
    parent: Optional[tuple[int, DTuple]] = None
    mu: Optional[Rat] = None
    s: Optional[int] = None
    m: Optional[int] = None
    r0: Optional[int] = None
    r: Optional[int] = None
    D: Optional[list[DTuple]] = None
    D_exact: Optional[Rat] = Rat(-1)  # D is complete for values <= D_exact (None = all)
    children: list[int] = field(default_factory=list)
    processed: bool = False
    status: Optional[Redundancy] = None

    @property
    def zero(self) -> bool:
        return not self.T

    @property
    def delta(self) -> Optional[int]:
        if self.zero:
            return 0
        if self.D is not None and self.D_exact is INF:
            return len(self.D)
        return None


class JumpState:
    """Engine state; entries are kept in processing (FIFO) order."""

    def __init__(self, seq: DefiningSequence, value_bound: Rat | None = None,
                 index_bound: int | None = None, peel_bound: int = 64,
                 node_budget: int = 200_000):
        self.seq = seq
        self.basis = Basis(seq)
        self.value_bound = None if value_bound is None else Rat(value_bound)
        self.index_bound = index_bound
        self.peel_bound = peel_bound
        self.node_budget = node_budget
        self.betas = seq.betas
        self.entries: list[JumpEntry] = []
        self._pow: dict[tuple[int, int], Elem] = {}
        self._forbidden: dict[int, list[dict]] = {}
        self.numbering_ok = True
        T1 = self.basis.Q(1)
        self.entries.append(JumpEntry(1, "1", T1, T1.nu()))

    # bookkeeping
    def entry(self, pos: int) -> JumpEntry:
        return self.entries[pos - 1]

    def by_label(self, label: str) -> JumpEntry:
        for e in self.entries:
            if e.label == label:
                return e
        raise KeyError(label)

    def gammas_before(self, pos: int) -> list[Rat]:
        return [e.gamma for e in self.entries[: pos - 1] if not e.zero]

    def phi(self, k: int, i: int):
        """The semigroup S_k + U_i."""
        if k > self.seq.depth:
            raise DepthExhausted(f"S_{k} needs beta_{k} beyond depth {self.seq.depth}; increase depth")
        return semigroup(list(self.betas[: k + 1]) + [e.gamma for e in self.entries[:i] if not e.zero])

    def level(self, pos: int) -> int:
        """m_i, with m_0 = 0."""
        if pos == 0:
            return 0
        self.invariants(pos)
        return self.entry(pos).m

    def invariants(self, pos: int) -> JumpEntry:
        e = self.entry(pos)
        if e.m is not None:
            return e
        m_prev = self.level(pos - 1)
        if e.zero:
            e.s, e.m = 1, m_prev
            return e
        H = self.gammas_before(pos)
        D = self.seq.depth
        e.s = index_in_group(e.gamma, group_generator(list(self.betas) + H))
        target = e.s * e.gamma
        m = next((j for j in range(m_prev, len(self.betas))
                  if target in group_generator(list(self.betas[: j + 1]) + H)), None)
        if m is None or m > D:
            raise DepthExhausted(f"T_{e.label}: level exceeds depth {D}; increase depth")
        e.m = m
        Phi = self.phi(m, pos - 1)
        e.r0 = sg_min_shift(target, Phi, self.betas[0])
        e.r = sg_min_shift(0, Phi, target, start=1)
        return e

    # tuples
    def forbidden(self, pos: int) -> list[dict]:
        """Exponent vectors contributed to the forbidden set by entry ``pos``."""
        e = self.entry(pos)
        if e.zero:
            return [{("T", pos): 1}]
        out = []
        for d in e.D or ():
            v = {("P", k): x for k, x in enumerate(d.a) if x}
            v.update({("T", j): x for j, x in enumerate(d.c[:-1], start=1) if x})
            v[("T", pos)] = d.c[-1] * e.s
            out.append(v)
        return out

    def ensure_D(self, pos: int, cap: Rat | None, budget: bool = False) -> None:
        e = self.entry(pos)
        if e.zero:
            e.D, e.D_exact = [], INF
            return
        if e.D is not None and _le(cap, e.D_exact):
            return
        if cap is not None and e.gamma > cap:
            # every tuple has value >= s*gamma > cap
            if e.D is None:
                e.D, e.D_exact = [], cap
            return
        eff = cap
        for j in range(1, pos):
            self.ensure_D(j, cap, budget)
            eff = _min(eff, self.entry(j).D_exact)
        self.invariants(pos)
        D, pruned = self.enumerate_D(pos, eff, budget)
        e.D = D
        e.D_exact = eff if pruned else INF

    def enumerate_D(self, pos: int, cap: Rat | None = None, budget: bool = False) -> tuple[list[DTuple], bool]:
        """Reduced, irreducible tuples of entry ``pos`` with value <= cap.

        Returns the sorted list and whether anything was cut off by the cap.
        """
        e = self.invariants(pos)
        seq = self.seq
        mu = e.s * e.gamma
        Phi = self.phi(e.m, pos - 1)
        coords: list[tuple] = [(("P", 0), self.betas[0], e.r0)]
        for j in range(1, e.m + 1):
            coords.append((("P", j), self.betas[j], seq.step(j).q - 1))
        for j in range(1, pos):
            f = self.entry(j)
            if f.zero:
                continue
            try:
                self.invariants(j)
                bound = f.r * f.s - 1
            except DepthExhausted:
                if cap is None:
                    raise
                bound = None
            coords.append((("T", j), f.gamma, bound))
        n = len(coords)
        where = {cid: k for k, (cid, _, _) in enumerate(coords)}
        gens = [g for _, g, _ in coords]
        # forbidden vectors, filed under the last coordinate they use
        checks: list[list[list[tuple[int, int]]]] = [[] for _ in range(n)]
        for j in range(1, pos):
            for v in self.forbidden(j):
                if any(cid not in where for cid in v):
                    continue
                items = sorted((where[cid], x) for cid, x in v.items())
                checks[items[-1][0]].append(items)

        out: list[DTuple] = []
        pruned = False
        nodes = 0
        vec = [0] * n

        def reducible(k):
            for items in checks[k]:
                if all(vec[c] >= x for c, x in items):
                    return True
            return False

        for b in range(1, e.r + 1):
            base = b * mu
            if cap is not None and base > cap:
                pruned = True
                break

            def dfs(start: int, vp: Rat) -> None:
                nonlocal pruned, nodes
                v = vp + base
                if v in Phi:
                    if all(not vec[k] or v - gens[k] not in Phi for k in range(n)):
                        a = tuple(vec[: e.m + 1])
                        c = []
                        for j in range(1, pos):
                            k = where.get(("T", j))
                            c.append(vec[k] if k is not None else 0)
                        out.append(DTuple(a, tuple(c) + (b,), v))
                    return
                for j in range(start, n):
                    _, g, bound = coords[j]
                    x = 0
                    while bound is None or x < bound:
                        x += 1
                        vj = vp + x * g
                        if cap is not None and vj + base > cap:
                            pruned = True
                            break
                        vec[j] = x
                        if reducible(j) or any(vj + bb * mu in Phi for bb in range(1, b)):
                            break
                        nodes += 1
                        if budget and nodes > self.node_budget:
                            raise _BudgetExceeded
                        dfs(j + 1, vj)
                        if vj + base in Phi:
                            break
                    vec[j] = 0

            dfs(0, Rat(0))
        out.sort(key=lambda d: (d.value, d.a + d.c))
        return out, pruned

    # representations
    def irreducible_rep(self, alpha: Rat, k: int, i: int) -> Optional[tuple[list[int], list[int]]]:
        """The unique irreducible exponent tuple of value alpha over P_0..P_m, T_1..T_i."""
        alpha = Rat(alpha)
        top = None
        for kk in range(k, self.seq.depth + 1):
            if alpha in self.phi(kk, i):
                top = kk
                break
        if top is None:
            return None
        m = max(top, self.level(i))
        n = [0] * (m + 1)
        l = [0] * i
        kk, ii = m, i
        while kk > 0 or ii > 0:
            if kk > self.level(ii):
                q = self.seq.step(kk).q
                S = self.phi(kk - 1, ii)
                hits = [x for x in range(q) if alpha - x * self.betas[kk] in S]
                if len(hits) != 1:
                    raise Inconsistent(f"digit for P_{kk} not unique: {hits}")
                n[kk] = hits[0]
                alpha -= hits[0] * self.betas[kk]
                kk -= 1
            else:
                f = self.entry(ii)
                if not f.zero:
                    S = self.phi(kk, ii - 1)
                    x = 0
                    while alpha - x * f.gamma not in S:
                        x += 1
                        if alpha - x * f.gamma < 0:
                            raise Inconsistent(f"no digit for T_{f.label}")
                    l[ii - 1] = x
                    alpha -= x * f.gamma
                ii -= 1
        n0 = alpha / self.betas[0]
        if n0.denominator != 1 or n0 < 0:
            raise Inconsistent("leftover is not a nonnegative multiple of beta_0")
        n[0] = int(n0)
        return n, l

    def T_power(self, pos: int, x: int) -> Elem:
        if x == 0:
            return self.basis.const(1)
        key = (pos, x)
        if key not in self._pow:
            self._pow[key] = self.entry(pos).T if x == 1 else self.T_power(pos, x - 1) * self.entry(pos).T
        return self._pow[key]

    def monomial(self, a, c) -> Elem:
        """x^{a_0} prod P_j^{a_j} prod T_j^{c_j} in normal form."""
        out = self.basis.monomial(a=tuple(a[1:])).shift_x(a[0]) if a else self.basis.const(1)
        for j, x in enumerate(c, start=1):
            if x:
                out = out * self.T_power(j, x)
        return out

    # construction
    def successor(self, pos: int, d: DTuple, label: str) -> JumpEntry:
        e = self.entry(pos)
        left = self.monomial(d.a, d.c[:-1] + (d.c[-1] * e.s,))
        rep = self.irreducible_rep(d.value, e.m, pos - 1)
        if rep is None:
            raise Inconsistent(f"|d| = {format_rat(d.value)} is not representable")
        right = self.monomial(*rep)
        mu = left.residue(right)
        T = left - right.scale(mu)
        gamma = T.nu() if T else Rat(0)
        if T and gamma <= d.value:
            raise Inconsistent("successor value did not increase")
        child = JumpEntry(len(self.entries) + 1, label, T, gamma, parent=(pos, d), mu=mu)
        self.entries.append(child)
        e.children.append(child.pos)
        return child

    def run(self) -> "JumpState":
        V = self.value_bound
        k = 0
        while k < len(self.entries):
            e = self.entries[k]
            k += 1
            if e.zero:
                e.D, e.D_exact, e.processed = [], INF, True
                continue
            if V is not None and e.gamma > V:
                self.numbering_ok = False
                continue
            if self.index_bound is not None and len(self.entries) >= self.index_bound:
                self.numbering_ok = False
                break
            numbered = self.numbering_ok
            if V is None:
                self.ensure_D(e.pos, INF)
            else:
                try:
                    self.ensure_D(e.pos, INF, budget=True)
                except _BudgetExceeded:
                    self.ensure_D(e.pos, V)
            e.processed = True
            complete = e.D_exact is INF
            # numbered entries get every successor so later labels stay valid
            keep_all = numbered and complete
            for kk, d in enumerate(e.D, start=1):
                if V is not None and d.value > V and not keep_all:
                    complete = False
                    break
                if self.index_bound is not None and len(self.entries) >= self.index_bound:
                    complete = False
                    break
                label = str(len(self.entries) + 1) if numbered else f"{e.label}:{kk}"
                self.successor(e.pos, d, label)
            if not complete:
                self.numbering_ok = False
        return self

    # redundancy
    def classify_redundant(self, pos: int, peel_bound: int | None = None) -> Redundancy:
        bound = self.peel_bound if peel_bound is None else peel_bound
        e = self.entry(pos)
        if e.zero:
            return Redundancy("R", "zero polynomial")
        self.invariants(pos)
        if e.gamma not in self.phi(e.m, pos - 1):
            return Redundancy("I", "value outside S_m + U_{i-1}")
        rem = e.T
        witness = []
        for _ in range(bound):
            alpha = rem.nu()
            rep = self.irreducible_rep(alpha, 0, pos - 1)
            if rep is None:
                return Redundancy("U", f"remainder value {format_rat(alpha)} outside S + U_{{i-1}}", witness)
            self._check_top_index(alpha, rep, pos - 1)
            mono = self.monomial(*rep)
            c = rem.residue(mono)
            witness.append((c, rep))
            rem = rem - mono.scale(c)
            if not rem:
                return Redundancy("R", f"peeled in {len(witness)} steps", witness)
        return Redundancy("U", f"peel bound {bound} reached", witness)

    def _check_top_index(self, alpha, rep, i):
        n, _ = rep
        top = max((j for j, x in enumerate(n) if x), default=0)
        H = [f.gamma for f in self.entries[:i] if not f.zero]
        k = next(j for j in range(len(self.betas))
                 if alpha in group_generator(list(self.betas[: j + 1]) + H))
        if top > max(k, self.level(i)):
            raise Inconsistent("irreducible representation uses a P beyond the allowed level")

    def classify_all(self) -> None:
        for e in self.entries:
            if e.status is None:
                e.status = self.classify_redundant(e.pos)

    # reporting
    def poly_text(self, e: JumpEntry, limit: int = 400) -> str:
        return elem_text(e.T, limit)

    def lines(self) -> list[str]:
        out = []
        for e in self.entries:
            try:
                self.invariants(e.pos)
                s, m = str(e.s), str(e.m)
            except DepthExhausted:
                s = m = "?"
            delta = "-" if e.delta is None else str(e.delta)
            parent = "-" if e.parent is None else self.entry(e.parent[0]).label
            status = e.status.kind if e.status else "-"
            out.append(f"T i={e.label} gamma={format_rat(e.gamma)} s={s} m={m} delta={delta} "
                       f"parent={parent} status={status} poly={self.poly_text(e)}")
        return out


def elem_text(T: Elem, limit: int = 400) -> str:
    """Explicit polynomial when it is cheap to expand, else the normal form in P_i, Q_j."""
    if not T:
        return "0"
    if all(len(c) <= 3 for _, c, _ in T.terms) and T.size() <= limit:
        f = T.to_poly()
        if len(f) <= limit:
            return format_poly(f)
    return "basis:" + basis_text(T)


def basis_text(T: Elem) -> str:
    B = T.basis
    parts = []
    for (a, c, x), v in sorted(T.terms.items(), key=lambda kv: (kv[0][2] * B.beta0 + B.key_value(kv[0][0], kv[0][1]))):
        factors = []
        if x:
            factors.append("x" if x == 1 else f"x^{x}")
        factors += [f"P{j}" + (f"^{e}" if e > 1 else "") for j, e in enumerate(a, start=1) if e]
        factors += [f"Q{j}" + (f"^{e}" if e > 1 else "") for j, e in enumerate(c, start=1) if e]
        mag = abs(Rat(v))
        if mag != 1 or not factors:
            factors.insert(0, format_rat(mag))
        body = "*".join(factors)
        sign = "-" if v < 0 else "+"
        parts.append((sign, body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def run(seq: DefiningSequence, value_bound=None, index_bound=None, peel_bound: int = 64,
        classify: bool = True) -> JumpState:
    state = JumpState(seq, value_bound, index_bound, peel_bound).run()
    if classify:
        state.classify_all()
    return state


# value semigroup

@dataclass
class SemigroupReport:
    bound: Rat
    generators: list[Rat]
    sources: dict[Rat, str]


def semigroup_report(state: JumpState, bound: Rat) -> SemigroupReport:
    bound = Rat(bound)
    betas = state.betas
    if betas[-1] <= bound:
        raise IncompleteRun(f"beta values above {format_rat(bound)} are not all known; increase depth")
    for e in state.entries:
        if e.zero or e.gamma >= bound:
            continue
        try:
            state.invariants(e.pos)
        except DepthExhausted:
            raise IncompleteRun(f"T_{e.label}: invariants unavailable") from None
        if e.s * e.gamma >= bound:
            continue
        if not e.processed or not _le(bound, e.D_exact) and e.D_exact is not INF:
            raise IncompleteRun(f"T_{e.label} was not expanded up to {format_rat(bound)}")
        missing = e.D[len(e.children):]
        if any(d.value < bound for d in missing):
            raise IncompleteRun(f"successors of T_{e.label} below {format_rat(bound)} were not built")
    sources: dict[Rat, str] = {}
    for i, b in enumerate(betas):
        if b <= bound:
            sources.setdefault(b, f"P_{i}")
    for e in state.entries:
        if not e.zero and e.gamma <= bound:
            sources.setdefault(e.gamma, f"T_{e.label}")
    gens = minimal_generators(sources) if sources else []
    return SemigroupReport(bound, gens, {g: sources[g] for g in gens})


# the R chain and the match probe

@dataclass
class RChainRow:
    index: int
    R: Elem
    nu: Rat
    expected: Rat
    remainder_nu: Optional[Rat]

    @property
    def ok(self) -> bool:
        beta = self.expected + 2 ** (self.index - 1)  # beta_{i+1} with beta_0 = 1
        return self.nu == self.expected and (self.remainder_nu is None or self.remainder_nu > beta)


def r_chain(seq: DefiningSequence, n: int, basis: Basis | None = None) -> list[RChainRow]:
    """R_1 = z, R_2 = R_1^2 - x^3 P_1, R_i = R_{i-1}^2 - x^{3*2^(i-2)} P_{i-1}."""
    if (seq.betas[0], seq.betas[1]) != (1, Rat(3, 2)) or any(st.q != 2 for st in seq.steps):
        raise ValueError("the R chain is specific to data with beta_0 = 1, beta_1 = 3/2 and all q_i = 2")
    B = basis or Basis(seq)
    rows = []
    R = B.Q(1)
    for i in range(1, n + 1):
        if i == 2:
            R = R * R - B.x(3) * B.P(1)
        elif i > 2:
            R = R * R - B.x(3 * 2 ** (i - 2)) * B.P(i - 1)
        expected = seq.betas[i + 1] - 2 ** (i - 1) * seq.betas[0]
        rem = R.shift_x(2 ** (i - 1)) - B.P(i + 1)
        rows.append(RChainRow(i, R, R.nu(), expected, rem.nu() if rem else None))
    return rows


@dataclass
class ProbeRow:
    label: str
    gamma: Rat
    match: str  # e.g. "Q_3", "R_2" or "" for a counterexample


def match_probe(state: JumpState, chain: list[RChainRow], bound: Rat) -> list[ProbeRow]:
    B = state.basis
    seq = state.seq
    rows = []
    for e in state.entries:
        if e.zero or e.gamma > bound:
            continue
        if e.status is None:
            e.status = state.classify_redundant(e.pos)
        if e.status.kind == "R":
            continue
        match = ""
        for i in range(1, seq.depth + 1):
            if seq.gammas[i] == e.gamma and B.Q(i) == e.T:
                match = f"Q_{i}"
                break
        if not match:
            for row in chain:
                if row.nu == e.gamma and row.R == e.T:
                    match = f"R_{row.index}"
                    break
        rows.append(ProbeRow(e.label, e.gamma, match))
    return rows


# reading run lines back

def parse_basis_text(text: str) -> dict:
    """Inverse of basis_text: {(a, c, e): coeff}."""
    out = {}
    body = text.strip()
    sign = 1
    if body.startswith("-"):
        sign, body = -1, body[1:]
    pieces = body.replace(" - ", " + -").split(" + ")
    for piece in pieces:
        s = sign
        sign = 1
        if piece.startswith("-"):
            s, piece = -1, piece[1:]
        coeff, x = Rat(1), 0
        a: dict[int, int] = {}
        c: dict[int, int] = {}
        for factor in piece.split("*"):
            name, _, exp = factor.partition("^")
            e = int(exp) if exp else 1
            if name == "x":
                x += e
            elif name[0] == "P":
                a[int(name[1:])] = e
            elif name[0] == "Q":
                c[int(name[1:])] = e
            else:
                coeff *= parse_rat(factor)
        at = tuple(a.get(j, 0) for j in range(1, max(a, default=0) + 1))
        ct = tuple(c.get(j, 0) for j in range(1, max(c, default=0) + 1))
        out[(at, ct, x)] = s * coeff
    return out


def parse_run_line(line: str) -> dict:
    """Fields of a "T i=..." line; gamma as Rat, poly as LaurentPoly or basis terms."""
    head, _, poly = line.partition(" poly=")
    fields = dict(kv.split("=", 1) for kv in head.split()[1:])
    fields["gamma"] = parse_rat(fields["gamma"])
    if poly.startswith("basis:"):
        fields["basis"] = parse_basis_text(poly[len("basis:"):])
    elif poly != "omitted":
        fields["poly"] = parse_poly(poly)
    return fields
