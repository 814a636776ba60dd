"""Compare jumping polynomials of small value against the R chain and the Q_i.

Each row names the R_k or Q_k that agrees with the entry up to a unit, or
prints '-' when none does.
"""
import argparse
from fractions import Fraction

from valseq.exactnum import format_mixed
from valseq.jumpseq import match_probe, r_chain
from valseq.verify import jump_run

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--example", default="7.1")
    ap.add_argument("--bound", type=Fraction, default=Fraction(10))
    ap.add_argument("--chain", type=int, default=6)
    args = ap.parse_args()

    state = jump_run(args.example, args.bound, None)
    chain = r_chain(state.seq, args.chain, state.basis)
    print("k  nu(R_k)  expected  check")
    for row in chain:
        print(f"{row.index}  {format_mixed(row.nu)}  {format_mixed(row.expected)}  {'ok' if row.ok else 'MISMATCH'}")
    print()
    for row in match_probe(state, chain, args.bound):
        print(f"T_{row.label:<10} {format_mixed(row.gamma):<10} {row.match or '-'}")
