"""Built-in logic fixtures with their expected state-space metadata.

Each entry bundles a logic shipped as a data file, the classification the
state machinery must reproduce, any known vector realization, and short notes.
One entry, ``impossible_fig6``, intentionally carries no logic at all: it is
the record of an angle-window obstruction, so only its feasibility data is
meaningful and structure-requiring operations must be refused by callers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations

from ctxlab.logic import Logic, parse_logic
from ctxlab.realization import (FeasibilityWindow, Realization,
                                bug_pasting_feasibility, parse_vectors)
from ctxlab.states import PairProperty


class UnknownEntry(Exception):
    """Requested name is not in the catalog."""


@dataclass(frozen=True)
class ExpectedStates:
    """Classification the states module must reproduce for an entry."""

    state_count: int
    separating: bool
    unital: bool
    non_unital_atoms: tuple[str, ...] = ()
    inseparable_pairs: tuple[tuple[str, str], ...] = ()
    special_pairs: tuple[tuple[str, str, PairProperty], ...] = ()


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    logic: Logic | None
    expected: ExpectedStates | None
    realization: Realization | None = None
    notes: str = ""
    angle_window: FeasibilityWindow | None = None


CATALOG_NAMES = (
    "triangle4d",
    "square4d",
    "pentagon",
    "specker_bug",
    "specker_bug_extended",
    "specker_bug_combo",
    "tifs_fig5a",
    "tits_fig5b",
    "indefinite_fig5c",
    "impossible_fig6",
)

# the eight fig5c atoms true in no state; their pairs are exactly the
# coinciding value patterns, so they are also the inseparable pairs
_FIG5C_NEVER_TRUE = ("a", "2", "13", "15", "16", "17", "25", "27")

_EXPECTED = {
    "triangle4d": ExpectedStates(14, separating=True, unital=True),
    "square4d": ExpectedStates(34, separating=True, unital=True),
    "pentagon": ExpectedStates(11, separating=True, unital=True),
    "specker_bug": ExpectedStates(
        14, separating=True, unital=True,
        special_pairs=(("a", "b", PairProperty.TRUE_IMPLIES_FALSE),)),
    "specker_bug_extended": ExpectedStates(
        22, separating=True, unital=True,
        special_pairs=(("a", "a'", PairProperty.TRUE_IMPLIES_TRUE),)),
    "specker_bug_combo": ExpectedStates(
        82, separating=False, unital=True,
        inseparable_pairs=(("a", "a'"), ("b", "b'"))),
    "tifs_fig5a": ExpectedStates(
        13, separating=False, unital=False,
        non_unital_atoms=("16",),
        inseparable_pairs=(("15", "27"), ("17", "25")),
        special_pairs=(("a", "b", PairProperty.TRUE_IMPLIES_FALSE),)),
    "tits_fig5b": ExpectedStates(
        13, separating=False, unital=False,
        non_unital_atoms=("16",),
        inseparable_pairs=(("15", "27"), ("17", "25")),
        special_pairs=(("a", "b", PairProperty.TRUE_IMPLIES_TRUE),)),
    "indefinite_fig5c": ExpectedStates(
        8, separating=False, unital=False,
        non_unital_atoms=_FIG5C_NEVER_TRUE,
        inseparable_pairs=tuple(combinations(_FIG5C_NEVER_TRUE, 2)),
        special_pairs=(("a", "b", PairProperty.ANTECEDENT_NEVER_TRUE),)),
}

_REALIZED = {"triangle4d", "square4d", "specker_bug"}

_NOTES = {
    "triangle4d": "cycle of three three-atom contexts; smallest odd cycle, "
                  "vector-realizable in dimension four",
    "square4d": "cycle of four three-atom contexts in dimension four; its "
                "correlation polytope is cut out by the axiom inequalities",
    "pentagon": "cycle of five three-atom contexts; the odd-cycle inequality "
                "separates its polytope from the axiom region",
    "specker_bug": "two pasted context chains forcing one extreme atom to "
                   "exclude the other (true implies false)",
    "specker_bug_extended": "bug plus a joining layer so one extreme atom "
                            "forces a second one true (true implies true)",
    "specker_bug_combo": "two bugs pasted so the forced pairs collapse: "
                         "paired atoms take equal values in every state",
    "tifs_fig5a": "large pasting with a single antecedent-true state that "
                  "forces the target false; one atom is true in no state",
    "tits_fig5b": "companion pasting forcing the same target true; one atom "
                  "is true in no state",
    "indefinite_fig5c": "pasting of the two companions; the antecedent can "
                        "no longer be true in any state",
    "impossible_fig6": "angle-window record: forcing a target false needs "
                       "end rays at least arccos(1/3) apart, forcing it true "
                       "at most arcsin(1/3), so no rank-one realization "
                       "does both",
}


def _data_text(filename: str) -> str:
    return (resources.files("ctxlab") / "data" / filename).read_text()


def catalog_list() -> tuple[str, ...]:
    """All entry names, in fixed order."""
    return CATALOG_NAMES


@lru_cache(maxsize=None)
def catalog_get(name: str) -> CatalogEntry:
    """Full entry for a catalog name; raises UnknownEntry otherwise."""
    if name not in CATALOG_NAMES:
        raise UnknownEntry(f"no catalog entry {name!r}; "
                           f"known: {', '.join(CATALOG_NAMES)}")
    if name == "impossible_fig6":
        return CatalogEntry(name=name, logic=None, expected=None,
                            notes=_NOTES[name],
                            angle_window=bug_pasting_feasibility())
    logic = parse_logic(_data_text(name + ".logic"))
    realization = None
    if name in _REALIZED:
        realization = parse_vectors(_data_text(name + ".vec"))
    return CatalogEntry(name=name, logic=logic, expected=_EXPECTED[name],
                        realization=realization, notes=_NOTES[name])
