from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from valseq.config import Config, ConfigError, OutputOptions, RunBounds, dump_config, load_config, parse_config
from valseq.defseq import build
from valseq.presets import EXAMPLES

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_presets_round_trip(name):
    cfg = Config(EXAMPLES[name], RunBounds(F(9), 5, 12), OutputOptions("lines", False))
    assert parse_config(dump_config(cfg)) == cfg


@pytest.mark.parametrize("path", sorted(CONFIGS.glob("*.cfg")), ids=lambda p: p.stem)
def test_shipped_configs_match_presets(path):
    cfg = load_config(path)
    name = {"ex71": "7.1", "ex81": "8.1", "ex82": "8.2"}[path.stem]
    assert build(cfg.defining).betas[:8] == build(EXAMPLES[name]).betas[:8]
    assert [s.gamma_bar for s in build(cfg.defining).steps] == [s.gamma_bar for s in build(EXAMPLES[name]).steps]


@given(v=st.fractions(min_value=0, max_value=100, max_denominator=50), i=st.integers(1, 40),
       p=st.integers(1, 500), fmt=st.sampled_from(["table", "lines"]), show=st.booleans())
def test_run_sections_round_trip(v, i, p, fmt, show):
    cfg = Config(EXAMPLES["8.2"], RunBounds(v, i, p), OutputOptions(fmt, show))
    assert parse_config(dump_config(cfg)) == cfg


BASE = """[valuation]
depth = 4
[beta]
explicit = 1, 3/2
recurrence = 2*prev + 1/2^(i)
[gamma]
explicit = 9/4
"""


def _error(text):
    with pytest.raises(ConfigError) as info:
        parse_config(text, "t.cfg")
    return info.value


def test_minimal_config_parses():
    cfg = parse_config(BASE)
    assert cfg.defining.depth == 4
    assert cfg.run == RunBounds()


@pytest.mark.parametrize("text, line, col", [
    (BASE + "[bogus]\n", 8, 2),
    (BASE + "[run]\nvalue_bound = 3/x\n", 9, 15),
    (BASE + "[run]\nindex_bound = 0\n", 9, 15),
    (BASE.replace("explicit = 1, 3/2", "explicit = 1, , 3/2"), 4, 15),
    (BASE.replace("explicit = 1, 3/2", "explicit = 1, 3/q"), 4, 15),
    (BASE + "[output]\nformat = csv\n", 9, 10),
    (BASE + "depth = 5\n", 8, 1),
    ("depth = 3\n", 1, 1),
    (BASE.replace("2*prev + 1/2^(i)", "2*prev + 1/2^(j)"), 5, 28),
])
def test_errors_carry_position(text, line, col):
    err = _error(text)
    assert (err.line, err.col) == (line, col)
    assert str(err).startswith(f"t.cfg:{line}:{col}:")


def test_zero_scalar_rejected():
    err = _error(BASE + "[scalars]\nlambda = 1, 0\n")
    assert err.line == 9


def test_missing_gamma_section():
    assert "gamma" in str(_error(BASE.split("[gamma]")[0]))
