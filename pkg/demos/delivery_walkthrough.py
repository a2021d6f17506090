"""Delivery problem: regret tables, the menu flip and the drift from MER to SEU.

Run with ``python3 demos/delivery_walkthrough.py``.
"""

from __future__ import annotations

from mwer.convergence import delivery_demo, delivery_sweep, delivery_weight, render_sweep
from mwer.fixtures import delivery_scenario
from mwer.rules import Rule, rank


def main() -> None:
    sc = delivery_scenario()
    print(delivery_demo(0).render())
    print()

    # adding "new" to the menu flips cont above check under MER
    for menu in ("M0", "M1"):
        r = rank(Rule.MER, sc.menu(menu), sc.beliefs)
        print(f"MER on {menu}: {r}")
    print()

    for n in (0, 100, 500, 991):
        print(f"weight of Pr10 after {n} good cupcakes: {delivery_weight(n):.6f}")
    print()
    print(render_sweep(delivery_sweep(range(0, 1001, 100))))


if __name__ == "__main__":
    main()
