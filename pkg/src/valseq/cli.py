"""Command-line front end."""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .config import Config, ConfigError, load_config
from .defseq import DefiningSequence, DepthExhausted, RejectedData, build
from .exactnum import format_mixed, format_rat, parse_rat
from .expand import ValueUndefined, expansion, nu
from .jumpseq import IncompleteRun, JumpState, semigroup_report
from .laurent import PolySyntaxError, format_poly, parse_poly
from .presets import EXAMPLES
from .verify import verify_example

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_EXHAUSTED = 0, 1, 2, 3

# explicit P_i / Q_i beyond these indices are printed by their recursion instead
EXPLICIT_P, EXPLICIT_Q = 6, 4
TABLE_POLY_WIDTH = 60


class InputError(ValueError):
    pass


def _table(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[k]) for r in rows)) if rows else len(h) for k, h in enumerate(header)]
    fmt = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    out = [fmt(header), fmt(["-" * w for w in widths])]
    out += [fmt(r) for r in rows]
    return "\n".join(out)


def _elide(text: str, table: bool) -> str:
    if table and len(text) > TABLE_POLY_WIDTH:
        return f"omitted ({len(text)} chars)"
    return text


def _monomial_text(x: int, p: tuple, q: tuple, coeff=1) -> str:
    f = []
    if x:
        f.append("x" if x == 1 else f"x^{x}")
    f += [f"P{j}" + (f"^{e}" if e > 1 else "") for j, e in enumerate(p, start=1) if e]
    f += [f"Q{j}" + (f"^{e}" if e > 1 else "") for j, e in enumerate(q, start=1) if e]
    if coeff != 1 or not f:
        f.insert(0, format_rat(coeff))
    return "*".join(f)


def _p_text(seq: DefiningSequence, i: int) -> str:
    if i <= EXPLICIT_P:
        return format_poly(seq.P(i))
    st = seq.step(i - 1)
    return f"P{i - 1}^{st.q} - " + _monomial_text(st.n_row[0], st.n_row[1:], (), st.lam)


def _q_text(seq: DefiningSequence, i: int) -> str:
    if i <= EXPLICIT_Q:
        return format_poly(seq.Q(i))
    st = seq.step(i - 1)
    head = (f"x^{st.r_bar0}*" if st.r_bar0 else "") + f"Q{i - 1}" + (f"^{st.s_bar}" if st.s_bar > 1 else "")
    return head + " - " + _monomial_text(st.n_bar_row[0], st.n_bar_row[1:], st.l_bar_row, st.mu_bar)


# commands

def cmd_define(cfg: Config, args) -> int:
    seq = build(cfg.defining)
    table = cfg.output.format == "table"
    show = cfg.output.show_polys
    rows = []
    for st in seq.steps:
        i = st.index
        row = [str(i), format_rat(st.beta), str(st.q), format_rat(st.gamma_bar), str(st.s_bar),
               str(st.m_bar), str(st.r_bar0), str(st.d)]
        if show:
            row += [_elide(_p_text(seq, i), table), _elide(_q_text(seq, i), table)]
        rows.append(row)
    header = ["i", "beta", "q", "gamma_bar", "s_bar", "m_bar", "r_bar0", "d"] + (["P_i", "Q_i"] if show else [])
    if table:
        print(_table(header, rows))
    else:
        keys = ["i", "beta", "q", "gamma_bar", "s_bar", "m_bar", "r_bar0", "d"] + (["P", "Q"] if show else [])
        for r in rows:
            print("D " + " ".join(f"{k}={v}" for k, v in zip(keys, r)))
    return EXIT_OK


def _poly_arg(text: str | None, flag: str):
    if text is None:
        raise InputError(f"{flag} is required")
    f = parse_poly(text)
    if not f:
        raise InputError(f"{flag} must be nonzero")
    return f


def cmd_nu(cfg: Config, args) -> int:
    seq = build(cfg.defining)
    f = _poly_arg(args.poly, "--poly")
    v = nu(f, seq)
    if args.over is not None:
        v -= nu(_poly_arg(args.over, "--over"), seq)
    if cfg.output.format == "table":
        print(f"nu = {format_rat(v)}  ({format_mixed(v)})")
    else:
        print(f"nu={format_rat(v)}")
    return EXIT_OK


def cmd_expand(cfg: Config, args) -> int:
    seq = build(cfg.defining)
    f = _poly_arg(args.poly, "--poly")
    print(expansion(f, seq).dump(seq))
    return EXIT_OK


def _run(cfg: Config) -> JumpState:
    r = cfg.run
    if r.value_bound is None and r.index_bound is None:
        raise InputError("jump needs --value-bound or --index-bound")
    st = JumpState(build(cfg.defining), r.value_bound, r.index_bound, r.peel_bound).run()
    return st


def cmd_jump(cfg: Config, args) -> int:
    st = _run(cfg)
    V = cfg.run.value_bound
    shown = [e for e in st.entries if V is None or e.gamma <= V]
    for e in shown:
        e.status = st.classify_redundant(e.pos)
    if cfg.output.format == "lines":
        keep = {e.label for e in shown}
        for line in st.lines():
            if line.split()[1][2:] in keep:
                print(line if cfg.output.show_polys else line.rsplit(" poly=", 1)[0] + " poly=omitted")
        return EXIT_OK
    rows = []
    for e in shown:
        try:
            st.invariants(e.pos)
            s, m = str(e.s), str(e.m)
        except DepthExhausted:
            s = m = "?"
        parent = "-" if e.parent is None else st.entry(e.parent[0]).label
        row = [e.label, format_rat(e.gamma), format_mixed(e.gamma), s, m,
               "-" if e.delta is None else str(e.delta), parent, e.status.kind]
        if cfg.output.show_polys:
            row.append(_elide(st.poly_text(e), True))
        rows.append(row)
    header = ["i", "gamma", "mixed", "s", "m", "delta", "parent", "status"]
    print(_table(header + (["poly"] if cfg.output.show_polys else []), rows))
    return EXIT_OK


def cmd_semigroup(cfg: Config, args) -> int:
    bound = cfg.run.value_bound
    if bound is None:
        raise InputError("semigroup needs --value-bound")
    st = JumpState(build(cfg.defining), bound, None, cfg.run.peel_bound).run()
    rep = semigroup_report(st, bound)
    if cfg.output.format == "table":
        rows = [[format_rat(g), format_mixed(g), rep.sources[g]] for g in rep.generators]
        print(_table(["generator", "mixed", "realized by"], rows))
    else:
        for g in rep.generators:
            print(f"G value={format_rat(g)} source={rep.sources[g]}")
    return EXIT_OK


def cmd_verify(cfg: Config | None, args) -> int:
    name = args.example or args.target
    if name is None:
        raise InputError("verify needs an example id")
    checks = verify_example(name)
    for c in checks:
        print(c.line())
    failed = [c for c in checks if c.blocking and not c.ok]
    print(f"{'FAIL' if failed else 'PASS'} example {name}: {len(checks) - len(failed)}/{len(checks)} checks")
    return EXIT_MISMATCH if failed else EXIT_OK


COMMANDS = {"define": cmd_define, "nu": cmd_nu, "expand": cmd_expand, "jump": cmd_jump,
            "semigroup": cmd_semigroup, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="valseq", description="Exact valuation computations on k(x, y, z).")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("target", nargs="?", help="example id for verify")
    p.add_argument("--config", help="config file")
    p.add_argument("--example", choices=sorted(EXAMPLES), help="built-in example data")
    p.add_argument("--depth", type=int)
    p.add_argument("--value-bound")
    p.add_argument("--index-bound", type=int)
    p.add_argument("--peel-bound", type=int)
    p.add_argument("--poly")
    p.add_argument("--over")
    p.add_argument("--format", choices=["table", "lines"])
    return p


def _config(args) -> Config:
    if args.config and args.example:
        raise InputError("give either --config or --example, not both")
    if args.config:
        cfg = load_config(args.config)
    elif args.example:
        cfg = Config(EXAMPLES[args.example])
    else:
        raise InputError("one of --config or --example is required")
    d = cfg.defining
    if args.depth is not None:
        if args.depth < 1:
            raise InputError("--depth must be positive")
        d = replace(d, depth=args.depth)
    run = cfg.run
    if args.value_bound is not None:
        run = replace(run, value_bound=parse_rat(args.value_bound))
    if args.index_bound is not None:
        run = replace(run, index_bound=args.index_bound)
    if args.peel_bound is not None:
        run = replace(run, peel_bound=args.peel_bound)
    out = cfg.output
    if args.format is not None:
        out = replace(out, format=args.format)
    return Config(d, run, out)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = None if args.command == "verify" else _config(args)
        return COMMANDS[args.command](cfg, args)
    except (ConfigError, PolySyntaxError, RejectedData, InputError, ValueUndefined, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DepthExhausted, IncompleteRun) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED


if __name__ == "__main__":
    sys.exit(main())
