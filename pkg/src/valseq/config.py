"""Sectioned text configs for defining data and run bounds.

Grammar (``#`` starts a comment, blank lines ignored)::

    [valuation]   depth = N
    [beta]        explicit = r, r, ...      (values for indices 0, 1, ...)
                  recurrence = a*prev + c/r^(i+shift)
                  from = N
    [gamma]       same keys; explicit values start at index 1
    [scalars]     lambda = ones | r, r, ...
                  mu = ones | r, r, ...
    [run]         value_bound = r   index_bound = N   peel_bound = N
    [output]      format = table | lines   show_polys = true | false
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .defseq import DefiningData, Recurrence, SeqSpec
from .exactnum import Rat, format_rat, parse_rat


class ConfigError(ValueError):
    def __init__(self, msg: str, line: int, col: int, source: str = "<config>"):
        super().__init__(f"{source}:{line}:{col}: {msg}")
        self.line, self.col = line, col


@dataclass(frozen=True)
class RunBounds:
    value_bound: Rat | None = None
    index_bound: int | None = None
    peel_bound: int = 64


@dataclass(frozen=True)
class OutputOptions:
    format: str = "table"
    show_polys: bool = True


@dataclass(frozen=True)
class Config:
    defining: DefiningData
    run: RunBounds = field(default_factory=RunBounds)
    output: OutputOptions = field(default_factory=OutputOptions)


_KEYS = {
    "valuation": {"depth"},
    "beta": {"explicit", "recurrence", "from"},
    "gamma": {"explicit", "recurrence", "from"},
    "scalars": {"lambda", "mu"},
    "run": {"value_bound", "index_bound", "peel_bound"},
    "output": {"format", "show_polys"},
}

_REC = re.compile(
    r"\s*(?:(?P<a>[+-]?\d+(?:/\d+)?)\s*\*\s*)?prev\s*(?P<sign>[+-])\s*"
    r"(?P<c>\d+(?:/\d+)?)\s*/\s*(?P<r>\d+)\s*\^\s*\(\s*i\s*(?:(?P<ss>[+-])\s*(?P<shift>\d+))?\s*\)\s*$")


class _Value:
    """A raw value with its position, for error reporting."""

    def __init__(self, text: str, line: int, col: int, source: str):
        self.text, self.line, self.col, self.source = text, line, col, source

    def fail(self, msg: str, offset: int = 0):
        raise ConfigError(msg, self.line, self.col + offset, self.source)

    def integer(self, minimum: int | None = None) -> int:
        t = self.text.strip()
        if not re.fullmatch(r"[+-]?\d+", t):
            self.fail(f"expected an integer, got {t!r}")
        v = int(t)
        if minimum is not None and v < minimum:
            self.fail(f"must be at least {minimum}")
        return v

    def rat(self) -> Rat:
        try:
            return parse_rat(self.text)
        except ValueError as exc:
            self.fail(str(exc))

    def rat_list(self) -> tuple[Rat, ...]:
        out = []
        off = 0
        for part in self.text.split(","):
            lead = len(part) - len(part.lstrip())
            if not part.strip():
                self.fail("empty list item", off + lead)
            try:
                out.append(parse_rat(part))
            except ValueError:
                self.fail(f"not a rational: {part.strip()!r}", off + lead)
            off += len(part) + 1
        return tuple(out)

    def recurrence(self, start: int) -> Recurrence:
        m = _REC.match(self.text)
        if not m:
            # report the first column where no prefix of the grammar can continue
            good = 0
            for k in range(len(self.text), 0, -1):
                if _REC_PREFIX.fullmatch(self.text[:k]):
                    good = k
                    break
            self.fail("malformed recurrence, expected 'a*prev + c/r^(i+shift)'", good)
        a = parse_rat(m["a"]) if m["a"] else Rat(1)
        c = parse_rat(m["c"]) * (-1 if m["sign"] == "-" else 1)
        r = int(m["r"])
        if r < 2:
            self.fail("recurrence base r must be at least 2", m.start("r"))
        shift = int(m["shift"] or 0) * (-1 if m["ss"] == "-" else 1)
        return Recurrence(a, c, r, shift, start)


# loose prefix grammar used only to locate errors
_REC_PREFIX = re.compile(
    r"\s*(?:[+-]?\d*(?:/\d*)?\s*\*?\s*)?(?:p(?:r(?:e(?:v)?)?)?)?\s*[+-]?\s*\d*(?:/\d*)?\s*(?:/\s*\d*)?"
    r"\s*\^?\s*\(?\s*i?\s*(?:[+-]\s*\d*)?\s*\)?\s*")


def parse_config(text: str, source: str = "<config>") -> Config:
    sections: dict[str, dict[str, _Value]] = {}
    current = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        body = line.strip()
        if body.startswith("["):
            if not body.endswith("]"):
                raise ConfigError("unterminated section header", ln, col + len(body), source)
            name = body[1:-1].strip()
            if name not in _KEYS:
                raise ConfigError(f"unknown section [{name}]", ln, col + 1, source)
            if name in sections:
                raise ConfigError(f"duplicate section [{name}]", ln, col + 1, source)
            current = sections[name] = {}
            continue
        if "=" not in body:
            raise ConfigError("expected 'key = value'", ln, col, source)
        if current is None:
            raise ConfigError("key outside of any section", ln, col, source)
        key, _, value = line.partition("=")
        key = key.strip()
        sec = next(n for n, s in sections.items() if s is current)
        if key not in _KEYS[sec]:
            raise ConfigError(f"unknown key {key!r} in [{sec}]", ln, col, source)
        if key in current:
            raise ConfigError(f"duplicate key {key!r}", ln, col, source)
        vcol = line.index("=") + 2 + len(value) - len(value.lstrip())
        current[key] = _Value(value.strip(), ln, vcol, source)

    def need(sec: str) -> dict[str, _Value]:
        if sec not in sections:
            raise ConfigError(f"missing section [{sec}]", 1, 1, source)
        return sections[sec]

    depth = 8
    if "valuation" in sections and "depth" in sections["valuation"]:
        depth = sections["valuation"]["depth"].integer(minimum=1)

    def seq_spec(sec: str, first: int) -> SeqSpec:
        s = need(sec)
        if "explicit" not in s:
            raise ConfigError(f"[{sec}] needs an explicit prefix", 1, 1, source)
        if "from" in s and "recurrence" not in s:
            s["from"].fail("'from' without 'recurrence'")
        explicit = s["explicit"].rat_list()
        rec = None
        if "recurrence" in s:
            start = s["from"].integer(minimum=first + 1) if "from" in s else first + len(explicit)
            if start > first + len(explicit):
                s["from"].fail("recurrence would leave a gap after the explicit prefix")
            rec = s["recurrence"].recurrence(start)
        return SeqSpec(explicit, rec, first)

    beta = seq_spec("beta", 0)
    gamma = seq_spec("gamma", 1)

    def scalars(key: str) -> tuple[Rat, ...]:
        v = sections.get("scalars", {}).get(key)
        if v is None or v.text == "ones":
            return ()
        vals = v.rat_list()
        for x in vals:
            if x == 0:
                v.fail("scalars must be nonzero")
        return vals

    defining = DefiningData(beta, gamma, scalars("lambda"), scalars("mu"), depth)

    run = sections.get("run", {})
    bounds = RunBounds(
        value_bound=run["value_bound"].rat() if "value_bound" in run else None,
        index_bound=run["index_bound"].integer(minimum=1) if "index_bound" in run else None,
        peel_bound=run["peel_bound"].integer(minimum=1) if "peel_bound" in run else 64,
    )
    out = sections.get("output", {})
    fmt = "table"
    if "format" in out:
        fmt = out["format"].text
        if fmt not in ("table", "lines"):
            out["format"].fail("format must be 'table' or 'lines'")
    show = True
    if "show_polys" in out:
        t = out["show_polys"].text.lower()
        if t not in ("true", "false"):
            out["show_polys"].fail("expected true or false")
        show = t == "true"
    return Config(defining, bounds, OutputOptions(fmt, show))


def load_config(path: str | Path) -> Config:
    p = Path(path)
    return parse_config(p.read_text(), str(p))


def _rec_text(rec: Recurrence) -> str:
    sign = "-" if rec.c < 0 else "+"
    shift = "" if rec.shift == 0 else (f"+{rec.shift}" if rec.shift > 0 else f"-{-rec.shift}")
    return f"{format_rat(rec.a)}*prev {sign} {format_rat(abs(rec.c))}/{rec.r}^(i{shift})"


def dump_config(cfg: Config) -> str:
    """Canonical serialization; parse_config(dump_config(c)) == c."""
    d = cfg.defining
    lines = ["[valuation]", f"depth = {d.depth}", ""]
    for name, spec in (("beta", d.beta), ("gamma", d.gamma_bar)):
        lines.append(f"[{name}]")
        lines.append("explicit = " + ", ".join(format_rat(v) for v in spec.explicit))
        if spec.recurrence is not None:
            lines.append("recurrence = " + _rec_text(spec.recurrence))
            lines.append(f"from = {spec.recurrence.from_index}")
        lines.append("")
    lines.append("[scalars]")
    for key, vals in (("lambda", d.lam), ("mu", d.mu_bar)):
        lines.append(f"{key} = " + (", ".join(format_rat(v) for v in vals) if vals else "ones"))
    lines.append("")
    r = cfg.run
    run_lines = []
    if r.value_bound is not None:
        run_lines.append(f"value_bound = {format_rat(r.value_bound)}")
    if r.index_bound is not None:
        run_lines.append(f"index_bound = {r.index_bound}")
    run_lines.append(f"peel_bound = {r.peel_bound}")
    lines += ["[run]"] + run_lines + [""]
    lines += ["[output]", f"format = {cfg.output.format}",
              f"show_polys = {'true' if cfg.output.show_polys else 'false'}"]
    return "\n".join(lines) + "\n"
