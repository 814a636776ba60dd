"""Defining polynomials P_i, Q_i built from numerical data."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .exactnum import Rat, digits, format_rat, group_generator, index_in_group
from .laurent import ONE, X, Y, Z, LaurentPoly


class RejectedData(ValueError):
    pass


class DepthExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class Recurrence:
    """v_i = a*v_{i-1} + c / r^(i+shift) for i >= from_index."""

    a: Rat
    c: Rat
    r: int
    shift: int
    from_index: int


@dataclass(frozen=True)
class SeqSpec:
    explicit: tuple[Rat, ...]
    recurrence: Recurrence | None = None
    first_index: int = 0

    def take(self, upto: int) -> list[Rat]:
        """Values for indices first_index..upto inclusive."""
        vals = [Rat(v) for v in self.explicit]
        rec = self.recurrence
        i = self.first_index + len(vals)
        while i <= upto:
            if rec is None or i < rec.from_index:
                raise RejectedData(f"no value for index {i}: explicit prefix too short")
            vals.append(rec.a * vals[-1] + Rat(rec.c) / Rat(rec.r) ** (i + rec.shift))
            i += 1
        out = vals[: upto - self.first_index + 1]
        for k, v in enumerate(out, start=self.first_index):
            if v <= 0:
                raise RejectedData(f"value at index {k} is not positive")
        return out


@dataclass(frozen=True)
class DefiningData:
    beta: SeqSpec
    gamma_bar: SeqSpec
    lam: tuple[Rat, ...] = ()
    mu_bar: tuple[Rat, ...] = ()
    depth: int = 8

    def scalar(self, which: str, i: int) -> Rat:
        vals = self.lam if which == "lambda" else self.mu_bar
        return Rat(vals[i - 1]) if i <= len(vals) else Rat(1)


@dataclass(frozen=True)
class DefStep:
    index: int
    beta: Rat
    q: int
    n_row: tuple[int, ...]
    lam: Rat
    gamma_bar: Rat
    s_bar: int
    m_bar: int
    a: int
    n_bar_row: tuple[int, ...]
    l_bar_row: tuple[int, ...]
    r_bar0: int
    mu_bar: Rat
    d: int


@dataclass
class DefiningSequence:
    """Numerical steps 1..depth plus lazily expanded polynomials P_i, Q_i."""

    data: DefiningData
    betas: list[Rat]
    gammas: list[Rat]  # gammas[0] is a placeholder, gammas[i] = gamma_bar_i
    steps: list[DefStep]
    _P: dict[int, LaurentPoly] = field(default_factory=dict, repr=False)
    _Q: dict[int, LaurentPoly] = field(default_factory=dict, repr=False)

    @property
    def depth(self) -> int:
        return len(self.steps)

    def step(self, i: int) -> DefStep:
        if not 1 <= i <= self.depth:
            raise DepthExhausted(f"index {i} is beyond depth {self.depth}; increase depth")
        return self.steps[i - 1]

    @cached_property
    def q(self) -> list[int]:
        return [1] + [s.q for s in self.steps]

    @cached_property
    def s_bar(self) -> list[int]:
        return [1] + [s.s_bar for s in self.steps]

    def deg_y_P(self, i: int) -> int:
        out = 1
        for j in range(1, i):
            out *= self.step(j).q
        return out

    def deg_z_Q(self, i: int) -> int:
        out = 1
        for j in range(1, i):
            out *= self.step(j).s_bar
        return out

    def d(self, i: int) -> int:
        if i == self.depth + 1:
            last = self.step(self.depth)
            return last.d * last.s_bar + last.r_bar0
        return self.step(i).d

    def P(self, i: int) -> LaurentPoly:
        """Explicit P_i for 0 <= i <= depth + 1."""
        if i in self._P:
            return self._P[i]
        if i == 0:
            f = X
        elif i == 1:
            f = Y
        else:
            st = self.step(i - 1)
            tail = X ** st.n_row[0]
            for j, n in enumerate(st.n_row[1:], start=1):
                if n:
                    tail = tail * self.P(j) ** n
            f = self.P(i - 1) ** st.q - tail * st.lam
        self._P[i] = f
        return f

    def Q(self, i: int) -> LaurentPoly:
        """Explicit Q_i for 1 <= i <= depth + 1 (expensive for large i)."""
        if i in self._Q:
            return self._Q[i]
        if i == 1:
            f = Z
        else:
            st = self.step(i - 1)
            tail = X ** st.n_bar_row[0]
            for j, n in enumerate(st.n_bar_row[1:], start=1):
                if n:
                    tail = tail * self.P(j) ** n
            for j, l in enumerate(st.l_bar_row, start=1):
                if l:
                    tail = tail * self.Q(j) ** l
            f = (self.Q(i - 1) ** st.s_bar).shift_x(st.r_bar0) - tail * st.mu_bar
        self._Q[i] = f
        return f


def build(data: DefiningData) -> DefiningSequence:
    D = data.depth
    if D < 1:
        raise RejectedData("depth must be positive")
    betas = data.beta.take(D + 1)
    gammas = [Rat(0)] + data.gamma_bar.take(D + 1)
    q = [1]
    steps: list[DefStep] = []
    s_bar: list[int] = []
    m_prev, d = 0, 0
    G_top = group_generator(betas[: D + 2])
    for i in range(1, D + 1):
        qi = index_in_group(betas[i], group_generator(betas[:i]))
        q.append(qi)
        rep = digits(qi * betas[i], betas[:i], q[:i])
        n_row = (rep.n0,) + rep.p_digits
        if rep.n0 <= 0:
            raise RejectedData(f"index {i}: n_{{i,0}} = {rep.n0} is not positive")
        if betas[i + 1] <= qi * betas[i]:
            raise RejectedData(f"index {i}: beta_{i + 1} must exceed q_{i}*beta_{i}")

        g = gammas[i]
        H_prev = gammas[1:i]
        si = index_in_group(g, G_top + group_generator(H_prev, betas[0]))
        target = si * g
        m_i = next((j for j in range(m_prev, D + 2)
                    if target in group_generator(betas[: j + 1] + H_prev)), None)
        if m_i is None or m_i > D:
            raise DepthExhausted(f"index {i}: the level of s_bar*gamma_bar exceeds depth {D}; increase depth")
        rep = digits(target, betas[: m_i + 1], q[: m_i + 1], H_prev, s_bar)
        a_i = rep.n0
        r0 = max(0, -a_i)
        if gammas[i + 1] <= r0 * betas[0] + target:
            raise RejectedData(f"index {i}: gamma_bar_{i + 1} must exceed "
                               f"r_bar*beta_0 + s_bar*gamma_bar_{i}")
        steps.append(DefStep(
            index=i, beta=betas[i], q=qi, n_row=n_row, lam=data.scalar("lambda", i),
            gamma_bar=g, s_bar=si, m_bar=m_i, a=a_i,
            n_bar_row=(max(0, a_i),) + rep.p_digits, l_bar_row=rep.t_digits,
            r_bar0=r0, mu_bar=data.scalar("mu", i), d=d))
        s_bar.append(si)
        d = d * si + r0
        m_prev = m_i
    if D >= 3:
        if all(st.q == 1 for st in steps[2:]):
            warnings.warn("every computed q_i beyond index 2 equals 1", stacklevel=2)
        if all(st.s_bar == 1 for st in steps[2:]):
            warnings.warn("every computed s_bar_i beyond index 2 equals 1", stacklevel=2)
    return DefiningSequence(data, betas, gammas, steps)


@dataclass
class AuditRow:
    index: int
    deg_y_P: int
    expected_deg_y_P: int
    monic_P: bool
    deg_z_Q: int
    expected_deg_z_Q: int
    lead_z_Q: LaurentPoly
    expected_d: int

    @property
    def ok(self) -> bool:
        return (self.deg_y_P == self.expected_deg_y_P and self.monic_P
                and self.deg_z_Q == self.expected_deg_z_Q
                and self.lead_z_Q == X ** self.expected_d)


def audit(seq: DefiningSequence, upto: int | None = None) -> list[AuditRow]:
    """Recompute degrees and leading coefficients from the explicit polynomials.

    ``upto`` limits the explicit expansion; Q_i grows quickly with i.
    """
    top = seq.depth + 1 if upto is None else min(upto, seq.depth + 1)
    rows = []
    for i in range(1, top + 1):
        P, Q = seq.P(i), seq.Q(i)
        rows.append(AuditRow(
            index=i, deg_y_P=P.deg("y"), expected_deg_y_P=seq.deg_y_P(i),
            monic_P=P.lead("y") == ONE, deg_z_Q=Q.deg("z"),
            expected_deg_z_Q=seq.deg_z_Q(i), lead_z_Q=Q.lead("z"), expected_d=seq.d(i)))
    return rows


def describe_step(st: DefStep) -> str:
    return (f"i={st.index} beta={format_rat(st.beta)} q={st.q} gamma_bar={format_rat(st.gamma_bar)} "
            f"s_bar={st.s_bar} m_bar={st.m_bar} r_bar0={st.r_bar0} d={st.d}")
