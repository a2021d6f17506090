"""Weights on three Bernoulli candidates converge to the true one.

Run with ``python3 demos/convergence.py``.
"""

from __future__ import annotations

from mwer.convergence import simulate_iid
from mwer.model import Measure, StateSpace, WeightedBeliefs

COIN = StateSpace(("H", "T"))


def main() -> None:
    cands = WeightedBeliefs((Measure(COIN, (p, 1 - p), f"p={p}"), 1.0) for p in (0.4, 0.5, 0.6))
    truth = Measure(COIN, (0.5, 0.5), "fair")
    t = simulate_iid(cands, truth, 1000, seed=0)
    names = [m.name for m in cands.measures]
    print("round  " + "  ".join(f"{n:>8}" for n in names))
    for r in (0, 10, 50, 100, 250, 500, 1000):
        print(f"{r:>5}  " + "  ".join(f"{w:8.4f}" for w in t.weights[r]))

    hits = 0
    for seed in range(100):
        final = simulate_iid(cands, truth, 1000, seed=seed).weights[-1]
        hits += final[1] == 1.0 and max(final[0], final[2]) < 0.05
    print(f"true candidate dominant in {hits} of 100 seeds")


if __name__ == "__main__":
    main()
