"""Partition-logic representations and generalized urn simulation.

Each atom becomes the set of state indices where it is true; every context
then induces a partition of the state-index set, and drawing "balls" (state
indices) from an urn with mixture weights reproduces the convex-mixture
probabilities empirically.  State indices are 1-based throughout this module,
matching the canonical enumeration order used in probability formulas.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from ctxlab.logic import Logic
from ctxlab.states import (MixtureWeights, TwoValuedState, WeightCountMismatch,
                           atom_state_sets, enumerate_states)

RNG_ID = "mt19937-u64"


class UnknownContext(Exception):
    """Context index outside the logic's context list."""


@dataclass(frozen=True)
class PartitionRepresentation:
    """Atoms as 1-based state-index sets; faithful when the state space is
    separating (sets pairwise distinct) and unital (sets nonempty)."""

    atom_sets: Mapping[str, frozenset[int]]
    state_count: int
    faithful: bool


@dataclass(frozen=True)
class UrnResult:
    """Empirical per-atom frequencies for one context; exact rationals that
    sum to 1, plus the seed and generator id for reproducibility."""

    context_index: int
    context: tuple[str, ...]
    draws: int
    seed: int
    rng: str
    counts: Mapping[str, int]
    frequencies: Mapping[str, Fraction]


def partition_representation(logic: Logic,
                             states: Sequence[TwoValuedState] | None = None,
                             ) -> PartitionRepresentation:
    """Partition-logic view of the two-valued states.

    Verifies the defining invariant: within every context the atom sets are
    disjoint and cover all state indices.
    """
    if states is None:
        states = enumerate_states(logic)
    zero_based = atom_state_sets(logic, states)
    sets = {a: frozenset(i + 1 for i in s) for a, s in zero_based.items()}
    n = len(states)
    full = frozenset(range(1, n + 1))
    for ctx in logic.contexts:
        blocks = [sets[a] for a in ctx]
        union = frozenset().union(*blocks)
        if union != full or sum(len(b) for b in blocks) != n:
            raise ValueError(
                f"context {ctx} does not partition the state indices; "
                "states are not the two-valued states of this logic")
    values = list(sets.values())
    faithful = all(values) and len(set(values)) == len(values)
    return PartitionRepresentation(atom_sets=sets, state_count=n,
                                   faithful=faithful)


def urn_simulate(logic: Logic,
                 states: Sequence[TwoValuedState] | None,
                 weights: MixtureWeights | Sequence,
                 context_index: int,
                 draws: int,
                 seed: int) -> UrnResult:
    """Draw ball types with the mixture weights; report per-atom frequencies
    of being the true atom in the chosen context.

    Sampling compares an exact rational uniform variate (64 random bits over
    2^64) against exact cumulative weight thresholds, so the only floating
    point anywhere is in the caller's hands.  Deterministic given the seed.
    """
    if states is None:
        states = enumerate_states(logic)
    if not isinstance(weights, MixtureWeights):
        weights = MixtureWeights(tuple(weights))
    if len(weights) != len(states):
        raise WeightCountMismatch(f"{len(weights)} weights for {len(states)} states")
    if draws < 1:
        raise ValueError("need at least one draw")
    if not 0 <= context_index < len(logic.contexts):
        raise UnknownContext(
            f"context index {context_index} not in 0..{len(logic.contexts) - 1}")
    context = logic.contexts[context_index]

    # scaled[i] = ceil(c_i * 2^64) for the exact cumulative weights c_i;
    # for integer p, p/2^64 < c_i iff p < scaled[i], so the integer bisect
    # below reproduces the rational comparison exactly
    scaled = []
    acc = Fraction(0)
    for w in weights.weights:
        acc += w
        scaled.append(math.ceil(acc * (1 << 64)))

    # ball type -> true atom of this context, precomputed per state
    true_atom = []
    for s in states:
        true_atom.append(next(a for a in context if s[a] == 1))

    rng = random.Random(seed)
    counts = {a: 0 for a in context}
    for _ in range(draws):
        # u = bits/2^64 < 1 = c_last, so the bisect always lands on a ball
        counts[true_atom[bisect_right(scaled, rng.getrandbits(64))]] += 1

    frequencies = {a: Fraction(c, draws) for a, c in counts.items()}
    return UrnResult(context_index=context_index, context=context,
                     draws=draws, seed=seed, rng=RNG_ID, counts=counts,
                     frequencies=frequencies)
