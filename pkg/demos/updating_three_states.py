"""Three-state updating: likelihood weights, commutativity and a null event.

Run with ``python3 demos/updating_three_states.py``.
"""

from __future__ import annotations

from pathlib import Path

from mwer.audit import check_prop1
from mwer.errors import UpdateUndefinedError
from mwer.rules import Rule, rank
from mwer.scenario_io import load_scenario
from mwer.updating import (
    epstein_schneider_update,
    likelihood_update,
    measure_by_measure_update,
    sequential_update,
)

HERE = Path(__file__).parent


def show(label: str, beliefs) -> None:
    parts = "  ".join(
        f"{m.name} w={w:.4f} [" + " ".join(f"{p:.4f}" for p in m.vector) + "]" for m, w in beliefs
    )
    print(f"{label:<26}{parts}")


def main() -> None:
    sc = load_scenario(str(HERE / "scenarios" / "three_state.json"))
    e1, e2 = sc.event("E1"), sc.event("E2")
    show("prior", sc.beliefs)
    show("likelihood on E1", likelihood_update(sc.beliefs, e1).beliefs)
    show("measure-by-measure on E1", measure_by_measure_update(sc.beliefs, e1))
    show("E-S on E1 (alpha 0.5)", epstein_schneider_update(sc.beliefs, e1, 0.5))
    show("E1 then E2", sequential_update(sc.beliefs, [e1, e2]).beliefs)
    show("E2 then E1", sequential_update(sc.beliefs, [e2, e1]).beliefs)
    print(f"order/intersection gap: {check_prop1(sc.beliefs, e1, e2):.2e}")
    print()

    menu = sc.menu(next(iter(sc.menus)))
    print("MWER before:", rank(Rule.MWER, menu, sc.beliefs))
    print("MWER after E1:", rank(Rule.MWER, menu, likelihood_update(sc.beliefs, e1).beliefs))
    try:
        likelihood_update(sc.beliefs, sc.event("none"))
    except UpdateUndefinedError as err:
        print("empty event:", err)


if __name__ == "__main__":
    main()
