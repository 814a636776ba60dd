"""Built-in defining data for the three worked examples."""
from __future__ import annotations

from .defseq import DefiningData, Recurrence, SeqSpec
from .exactnum import Rat

# beta_0 = 1, beta_1 = 3/2, beta_i = 2*beta_{i-1} + 1/2^i
_BETA = SeqSpec((Rat(1), Rat(3, 2)), Recurrence(Rat(2), Rat(1), 2, 0, 2))

EXAMPLES = {
    "7.1": DefiningData(
        beta=_BETA,
        gamma_bar=SeqSpec((Rat(9, 4), Rat(13, 3)), Recurrence(Rat(3), Rat(1), 3, -1, 3), 1),
        depth=10,
    ),
    "8.1": DefiningData(
        beta=_BETA,
        gamma_bar=SeqSpec((Rat(4, 3),), Recurrence(Rat(3), Rat(1), 3, 0, 2), 1),
        depth=10,
    ),
    "8.2": DefiningData(
        beta=_BETA,
        gamma_bar=SeqSpec((Rat(9, 4), Rat(29, 8), Rat(22, 3)), Recurrence(Rat(3), Rat(1), 3, -2, 4), 1),
        depth=10,
    ),
}


def example(name: str, depth: int | None = None) -> DefiningData:
    try:
        data = EXAMPLES[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}") from None
    if depth is not None:
        data = DefiningData(data.beta, data.gamma_bar, data.lam, data.mu_bar, depth)
    return data
