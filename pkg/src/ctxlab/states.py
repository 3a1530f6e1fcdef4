"""Two-valued states on a logic: enumeration, classification, certificates.

A two-valued state assigns 0 or 1 to every atom so that each context contains
exactly one atom valued 1.  States are returned in a canonical order: sorted
lexicographically by their bit string over the logic's atom order.  State
indices used in reports are 0-based positions in that order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

from ctxlab.logic import Logic, LogicError, paste_logics, validate_logic

Number = Union[Fraction, float]


class TooLarge(LogicError):
    """Brute-force enumeration refused: atom count above the hard limit."""


class UnknownAtom(LogicError):
    pass


class MissingAtom(LogicError):
    """A probability assignment lacks a value for some atom of the logic."""


class WeightCountMismatch(LogicError):
    pass


class WeightsNotNormalized(LogicError):
    pass


class ConditionFailed(LogicError):
    """One of the indefiniteness certificate conditions does not hold.

    ``which`` names the failed condition; ``witness`` is an offending state
    when one exists.
    """

    def __init__(self, which: str, message: str, witness: "TwoValuedState | None" = None):
        super().__init__(f"{which}: {message}")
        self.which = which
        self.witness = witness


BRUTE_FORCE_ATOM_LIMIT = 24


@dataclass(frozen=True)
class TwoValuedState:
    """One {0,1} assignment; ``atoms`` fixes the coordinate order of ``bits``."""

    atoms: tuple[str, ...]
    bits: tuple[int, ...]

    def __getitem__(self, atom: str) -> int:
        try:
            return self.bits[self.atoms.index(atom)]
        except ValueError:
            raise UnknownAtom(f"no atom {atom!r} in this state") from None

    def true_atoms(self) -> tuple[str, ...]:
        return tuple(a for a, b in zip(self.atoms, self.bits) if b)

    def bit_string(self) -> str:
        return "".join(str(b) for b in self.bits)


class PairProperty(enum.Enum):
    TRUE_IMPLIES_FALSE = "TrueImpliesFalse"
    TRUE_IMPLIES_TRUE = "TrueImpliesTrue"
    ANTECEDENT_NEVER_TRUE = "AntecedentNeverTrue"
    UNCONSTRAINED = "Unconstrained"


@dataclass(frozen=True)
class StateSpaceReport:
    count: int
    unital: bool
    non_unital_atoms: tuple[str, ...]
    separating: bool
    inseparable_pairs: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class MeasureReport:
    """Result of checking the probability-measure axioms on an assignment.

    Nonnegativity and per-context unit sums are checked numerically;
    exclusivity within a context is definitional for a per-atom assignment
    (one number per atom cannot double-count a context) and is reported as
    a note rather than computed.
    """

    ok: bool
    nonneg_failures: tuple[tuple[str, Number], ...]
    context_sum_failures: tuple[tuple[int, Number], ...]
    exclusivity_note: str = "per-atom assignment: within-context exclusivity holds by construction"


@dataclass(frozen=True)
class IndefinitenessCertificate:
    """Witness that the antecedent atom can carry no consistent value.

    The first logic forces target false whenever the antecedent is true, the
    second forces it true, and their pasting consequently admits no state at
    all with the antecedent true.
    """

    antecedent: str
    target: str
    tifs_logic: Logic
    tits_logic: Logic
    pasted: Logic
    pasted_state_count: int


def _check_valid(logic: Logic) -> None:
    report = validate_logic(logic)
    if not report.ok:
        rules = sorted({v.rule for v in report.violations})
        raise ValueError(f"logic does not validate (rules: {', '.join(rules)})")


@lru_cache(maxsize=None)
def enumerate_states(logic: Logic) -> tuple[TwoValuedState, ...]:
    """All two-valued states of a valid logic, canonically ordered.

    Depth-first search over contexts in declaration order: pick the single
    true atom of each context, propagate forced zeros, prune on conflict.
    The complete list is then sorted by bit string, so the result does not
    depend on search order.
    """
    _check_valid(logic)
    atoms = logic.atoms
    n = len(atoms)
    idx = logic.atom_index
    ctx_idx = [tuple(idx[a] for a in c) for c in logic.contexts]

    assignment = [-1] * n
    found: list[tuple[int, ...]] = []

    def walk(ci: int) -> None:
        if ci == len(ctx_idx):
            found.append(tuple(assignment))
            return
        ctx = ctx_idx[ci]
        ones = [i for i in ctx if assignment[i] == 1]
        if len(ones) > 1:
            return
        if len(ones) == 1:
            touched = []
            for i in ctx:
                if assignment[i] == -1:
                    assignment[i] = 0
                    touched.append(i)
            walk(ci + 1)
            for i in touched:
                assignment[i] = -1
            return
        for choice in ctx:
            if assignment[choice] == 0:
                continue
            touched = [choice]
            assignment[choice] = 1
            for i in ctx:
                if assignment[i] == -1:
                    assignment[i] = 0
                    touched.append(i)
            walk(ci + 1)
            for i in touched:
                assignment[i] = -1

    walk(0)
    found.sort()
    return tuple(TwoValuedState(atoms, bits) for bits in found)


def brute_force_states(logic: Logic) -> tuple[TwoValuedState, ...]:
    """Check all 2^n bit vectors against the one-true-atom-per-context rule.

    Independent of :func:`enumerate_states` on purpose; refuses logics with
    more than ``BRUTE_FORCE_ATOM_LIMIT`` atoms.
    """
    n = len(logic.atoms)
    if n > BRUTE_FORCE_ATOM_LIMIT:
        raise TooLarge(f"{n} atoms exceeds the brute-force limit of {BRUTE_FORCE_ATOM_LIMIT}")
    idx = logic.atom_index
    # first atom is the most significant bit, so numeric order = lex order
    masks = [sum(1 << (n - 1 - idx[a]) for a in ctx) for ctx in logic.contexts]
    out = []
    for v in range(1 << n):
        if all((v & m).bit_count() == 1 for m in masks):
            bits = tuple((v >> (n - 1 - k)) & 1 for k in range(n))
            out.append(TwoValuedState(logic.atoms, bits))
    return tuple(out)


def atom_state_sets(logic: Logic,
                    states: Sequence[TwoValuedState] | None = None) -> dict[str, frozenset[int]]:
    """For each atom, the set of state indices where it is valued 1."""
    if states is None:
        states = enumerate_states(logic)
    sets: dict[str, set[int]] = {a: set() for a in logic.atoms}
    for i, s in enumerate(states):
        for a, b in zip(s.atoms, s.bits):
            if b:
                sets[a].add(i)
    return {a: frozenset(v) for a, v in sets.items()}


def classify_states(logic: Logic,
                    states: Sequence[TwoValuedState] | None = None) -> StateSpaceReport:
    """Count states and report unitality and separability.

    A logic with no states at all is reported non-unital on every atom and
    vacuously separating.
    """
    if states is None:
        states = enumerate_states(logic)
    count = len(states)
    sets = atom_state_sets(logic, states)
    non_unital = tuple(a for a in logic.atoms if not sets[a])
    if count == 0:
        return StateSpaceReport(count=0, unital=False, non_unital_atoms=tuple(logic.atoms),
                                separating=True, inseparable_pairs=())
    idx = logic.atom_index
    pairs = []
    groups: dict[frozenset[int], list[str]] = {}
    for a in logic.atoms:
        groups.setdefault(sets[a], []).append(a)
    for members in groups.values():
        members.sort(key=idx.__getitem__)
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                pairs.append((members[i], members[j]))
    pairs.sort(key=lambda p: (idx[p[0]], idx[p[1]]))
    return StateSpaceReport(count=count, unital=not non_unital, non_unital_atoms=non_unital,
                            separating=not pairs, inseparable_pairs=tuple(pairs))


def pair_property(logic: Logic, antecedent: str, target: str) -> PairProperty:
    """Relation forced on ``target`` across states where ``antecedent`` is true."""
    for a in (antecedent, target):
        if a not in logic.atom_index:
            raise UnknownAtom(f"no atom {a!r} in logic {logic.name or '<anonymous>'}")
    states = enumerate_states(logic)
    target_values = {s[target] for s in states if s[antecedent] == 1}
    if not target_values:
        return PairProperty.ANTECEDENT_NEVER_TRUE
    if target_values == {0}:
        return PairProperty.TRUE_IMPLIES_FALSE
    if target_values == {1}:
        return PairProperty.TRUE_IMPLIES_TRUE
    return PairProperty.UNCONSTRAINED


@dataclass(frozen=True)
class MixtureWeights:
    """Nonnegative rational weights summing to exactly one."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        ws = tuple(Fraction(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if any(w < 0 for w in ws):
            raise WeightsNotNormalized("negative weight")
        if sum(ws, Fraction(0)) != 1:
            raise WeightsNotNormalized(f"weights sum to {sum(ws, Fraction(0))}, not 1")

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)


class ProbabilityAssignment(Mapping):
    """Per-atom probabilities, either exact rationals or floats.

    ``exact`` records which arithmetic produced the values; downstream
    consumers use it to pick zero versus floating tolerances.
    """

    def __init__(self, probs: Mapping[str, Number], exact: bool):
        self._probs = dict(probs)
        self.exact = exact

    def __getitem__(self, atom: str) -> Number:
        return self._probs[atom]

    def __iter__(self):
        return iter(self._probs)

    def __len__(self) -> int:
        return len(self._probs)

    def __repr__(self) -> str:
        kind = "exact" if self.exact else "float"
        return f"ProbabilityAssignment({kind}, {len(self._probs)} atoms)"


def convex_mixture(states: Sequence[TwoValuedState],
                   weights: MixtureWeights | Iterable) -> ProbabilityAssignment:
    """Exact convex combination of states; one weight per state."""
    if not isinstance(weights, MixtureWeights):
        weights = MixtureWeights(tuple(Fraction(w) for w in weights))
    if len(weights) != len(states):
        raise WeightCountMismatch(f"{len(weights)} weights for {len(states)} states")
    if not states:
        return ProbabilityAssignment({}, exact=True)
    atoms = states[0].atoms
    probs = {a: Fraction(0) for a in atoms}
    for w, s in zip(weights, states):
        if w == 0:
            continue
        for a, b in zip(s.atoms, s.bits):
            if b:
                probs[a] += w
    return ProbabilityAssignment(probs, exact=True)


def check_measure(logic: Logic, assignment: Mapping[str, Number],
                  tolerance: Number = 0) -> MeasureReport:
    """Check nonnegativity and per-context unit sums of an assignment.

    ``tolerance`` 0 means exact comparison (the natural mode for rational
    assignments); pass a small float for floating-point inputs.
    """
    for a in logic.atoms:
        if a not in assignment:
            raise MissingAtom(f"assignment lacks atom {a!r}")
    nonneg = tuple((a, assignment[a]) for a in logic.atoms if assignment[a] < -tolerance)
    bad_sums = []
    for i, ctx in enumerate(logic.contexts):
        total = sum(assignment[a] for a in ctx)
        if abs(total - 1) > tolerance:
            bad_sums.append((i, total))
    return MeasureReport(ok=not nonneg and not bad_sums,
                         nonneg_failures=nonneg,
                         context_sum_failures=tuple(bad_sums))


def certify_value_indefiniteness(tifs_logic: Logic, tits_logic: Logic,
                                 antecedent: str, target: str) -> IndefinitenessCertificate:
    """Certify that no consistent truth value can be assigned to ``antecedent``.

    Three conditions, checked in order:

    (i)   in ``tifs_logic``, antecedent true forces target false;
    (ii)  in ``tits_logic``, antecedent true forces target true;
    (iii) the pasting of the two admits no state with antecedent true.

    (iii) follows from (i) and (ii) whenever the pasting is state-rich, but it
    is verified directly on the pasted state space rather than assumed.
    Raises :class:`ConditionFailed` naming the first condition that fails.
    """
    prop = pair_property(tifs_logic, antecedent, target)
    if prop is not PairProperty.TRUE_IMPLIES_FALSE:
        witness = next((s for s in enumerate_states(tifs_logic)
                        if s[antecedent] == 1 and s[target] == 1), None)
        raise ConditionFailed("tifs-side",
                              f"first logic has {prop.value}, needs TrueImpliesFalse",
                              witness)
    prop = pair_property(tits_logic, antecedent, target)
    if prop is not PairProperty.TRUE_IMPLIES_TRUE:
        witness = next((s for s in enumerate_states(tits_logic)
                        if s[antecedent] == 1 and s[target] == 0), None)
        raise ConditionFailed("tits-side",
                              f"second logic has {prop.value}, needs TrueImpliesTrue",
                              witness)
    pasted = paste_logics(tifs_logic, tits_logic)
    pasted_states = enumerate_states(pasted)
    offender = next((s for s in pasted_states if s[antecedent] == 1), None)
    if offender is not None:
        raise ConditionFailed("pasted-antecedent",
                              "pasted logic still has a state with the antecedent true",
                              offender)
    return IndefinitenessCertificate(antecedent=antecedent, target=target,
                                     tifs_logic=tifs_logic, tits_logic=tits_logic,
                                     pasted=pasted, pasted_state_count=len(pasted_states))


def states_table(logic: Logic, states: Sequence[TwoValuedState] | None = None) -> str:
    """Plain-text truth table: one row per state, one column per atom."""
    if states is None:
        states = enumerate_states(logic)
    widths = [max(len(a), 1) for a in logic.atoms]
    head = "state " + " ".join(a.rjust(w) for a, w in zip(logic.atoms, widths))
    lines = [head]
    for i, s in enumerate(states):
        row = f"{i:>5} " + " ".join(str(b).rjust(w) for b, w in zip(s.bits, widths))
        lines.append(row)
    return "\n".join(lines) + "\n"
