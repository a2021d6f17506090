"""Axiom audit: a known counterexample, its replay, and a small rule x axiom table.

Run with ``python3 demos/axiom_audit.py``.  The full 10,000-probe table takes
several minutes; ``mwer table4`` runs it from the command line.
"""

from __future__ import annotations

from mwer.audit import MenuPolicy, find_counterexample, replay, table4_matrix
from mwer.rules import Rule


def main() -> None:
    w, used = find_counterexample("independence", Rule.MMEU, MenuPolicy.TRANSFORMED, budget=1000)
    print(f"independence fails for MMEU: counterexample after {used} trials")
    for c in w.comparisons:
        print(f"  in {c.menu}: {c.a} {c.relation} {c.b} (advantage {c.advantage:.4f})")
    print("replay verdict:", replay(w).verdict)
    print()

    report = table4_matrix(trials=200, budget=2000, seed=0)
    print(report.render())


if __name__ == "__main__":
    main()
