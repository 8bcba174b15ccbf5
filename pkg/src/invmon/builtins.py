"""The four worked examples, defined once and shared by the CLI and tests."""

from __future__ import annotations

from .backend import (FiniteInverseMonoid, Presentation, StephenBudget, adjoin_zero,
                      enumerate_monoid, from_partial_bijections)

BUILTIN_NAMES = ("semilattice", "bicyclic", "i2", "semilattice0")


def semilattice() -> Presentation:
    return Presentation.from_strings("e f", [("e e", "e"), ("f f", "f"), ("e f", "f e")])


def bicyclic() -> Presentation:
    return Presentation.from_strings("x", [("x x'", "1")])


def semilattice0() -> Presentation:
    return adjoin_zero(semilattice())


def i2() -> FiniteInverseMonoid:
    """Symmetric inverse monoid on {1, 2}: tau swaps, eps fixes 1 only."""
    return from_partial_bijections(2, {"tau": {1: 2, 2: 1}, "eps": {1: 1}})


def i2_presentation() -> Presentation:
    """Candidate presentation of I_2; checked against the table in the tests."""
    return Presentation.from_strings(
        "tau eps",
        [("tau tau", "1"), ("eps eps", "eps"),
         ("eps tau eps tau", "eps tau eps"), ("tau eps tau eps", "eps tau eps")],
    )


def presentation_for(name: str) -> Presentation:
    """A presentation for each builtin; for I_2 it is the candidate above."""
    if name == "i2":
        return i2_presentation()
    try:
        return PRESENTATIONS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin {name!r}; choose from {BUILTIN_NAMES}") from None


PRESENTATIONS = {
    "semilattice": semilattice,
    "bicyclic": bicyclic,
    "semilattice0": semilattice0,
}


def load(name: str, budget: StephenBudget = StephenBudget()):
    """Return ``(presentation or None, monoid or None)`` for a builtin name.

    The monoid is None when enumeration does not finish (bicyclic).
    """
    if name == "i2":
        return None, i2()
    try:
        P = PRESENTATIONS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin {name!r}; choose from {BUILTIN_NAMES}") from None
    if name == "bicyclic":
        return P, None
    return P, enumerate_monoid(P, budget)
