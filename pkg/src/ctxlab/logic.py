"""Orthogonality hypergraphs: atoms grouped into overlapping measurement contexts.

A logic is a finite set of atoms together with a list of contexts.  A context
is an ordered tuple of at least two distinct atoms; atoms may be shared
between contexts (intertwined).  Contexts compare as unordered sets for
deduplication and pasting, but keep their declared atom order for display.

The text format is line oriented::

    # pentagon
    logic pentagon
    context 1 2 3
    context 3 4 5
    ...

An optional ``logic <name>`` header must come first.  ``atom <id> [label...]``
lines pre-declare atoms (labels are ignored); atoms first seen inside a
context are appended in first-occurrence order.  ``#`` starts a comment.
Atom ids are tokens over ``[A-Za-z0-9_']``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

ATOM_TOKEN = re.compile(r"[A-Za-z0-9_']+\Z")

_DOT_PALETTE = (
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02",
    "#a6761d", "#666666", "#1f78b4", "#b2182b", "#542788", "#35978f",
)


class LogicError(Exception):
    """Base class for errors raised by this package's logic handling."""


class LogicParseError(LogicError):
    """Syntax or structure error in the logic text format.

    Carries the 1-based ``line`` and ``column`` of the offending token.
    """

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class PasteInvalid(LogicError):
    """Pasting two logics produced (or started from) an invalid logic."""

    def __init__(self, message: str, report: "ValidationReport"):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class Violation:
    """One validation rule failure, as data."""

    rule: str
    message: str
    offenders: tuple = ()


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...] = ()

    def by_rule(self, rule: str) -> list[Violation]:
        return [v for v in self.violations if v.rule == rule]


@dataclass(frozen=True)
class Logic:
    """An orthogonality hypergraph.

    ``atoms`` keeps declaration order; that order is the canonical coordinate
    order used everywhere downstream (state bit strings, polytope axes).
    ``contexts`` are tuples of atom ids.  ``max_intertwine``, when set, bounds
    the size of pairwise context intersections during validation; it has no
    text-format representation and is preserved only programmatically.

    The constructor only rejects structurally ambiguous input (duplicate atom
    ids).  Everything else, including atoms missing from every context, is
    reported by :func:`validate_logic` as data rather than raised.
    """

    atoms: tuple[str, ...]
    contexts: tuple[tuple[str, ...], ...]
    name: str = ""
    max_intertwine: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(self, "contexts", tuple(tuple(c) for c in self.contexts))
        seen = set()
        for a in self.atoms:
            if a in seen:
                raise ValueError(f"duplicate atom id {a!r}")
            seen.add(a)

    @cached_property
    def atom_index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.atoms)}

    @cached_property
    def context_sets(self) -> tuple[frozenset[str], ...]:
        return tuple(frozenset(c) for c in self.contexts)

    def __repr__(self) -> str:
        label = self.name or "<anonymous>"
        return (f"Logic({label}: {len(self.atoms)} atoms, "
                f"{len(self.contexts)} contexts)")


def parse_logic(text: str) -> Logic:
    """Parse the text format into a :class:`Logic`.

    Raises :class:`LogicParseError` with line/column on syntax errors,
    duplicate contexts, or a duplicate atom inside one context.
    """
    name = ""
    atoms: list[str] = []
    atom_set: set[str] = set()
    contexts: list[tuple[str, ...]] = []
    context_sets: set[frozenset[str]] = set()
    saw_directive = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]
        if not tokens:
            continue
        (word, col), args = tokens[0], tokens[1:]

        if word == "logic":
            if saw_directive:
                raise LogicParseError("'logic' header must come first", lineno, col)
            if len(args) != 1:
                raise LogicParseError("'logic' takes exactly one name", lineno, col)
            name = args[0][0]
        elif word == "atom":
            if not args:
                raise LogicParseError("'atom' needs an id", lineno, col)
            ident, icol = args[0]
            if not ATOM_TOKEN.match(ident):
                raise LogicParseError(f"bad atom id {ident!r}", lineno, icol)
            if ident in atom_set:
                raise LogicParseError(f"atom {ident!r} already declared", lineno, icol)
            atoms.append(ident)
            atom_set.add(ident)
            # remaining tokens are a free-form label, ignored
        elif word == "context":
            if len(args) < 2:
                raise LogicParseError("a context needs at least two atoms", lineno, col)
            members: list[str] = []
            for ident, icol in args:
                if not ATOM_TOKEN.match(ident):
                    raise LogicParseError(f"bad atom id {ident!r}", lineno, icol)
                if ident in members:
                    raise LogicParseError(
                        f"atom {ident!r} repeated in one context", lineno, icol)
                members.append(ident)
                if ident not in atom_set:
                    atoms.append(ident)
                    atom_set.add(ident)
            key = frozenset(members)
            if key in context_sets:
                raise LogicParseError("duplicate context", lineno, col)
            context_sets.add(key)
            contexts.append(tuple(members))
        else:
            raise LogicParseError(f"unknown directive {word!r}", lineno, col)
        saw_directive = True

    return Logic(atoms=tuple(atoms), contexts=tuple(contexts), name=name)


def serialize_logic(logic: Logic) -> str:
    """Inverse of :func:`parse_logic` up to comments and labels.

    ``max_intertwine`` has no textual form and is dropped.
    """
    lines = []
    if logic.name:
        lines.append(f"logic {logic.name}")
    for a in logic.atoms:
        lines.append(f"atom {a}")
    for c in logic.contexts:
        lines.append("context " + " ".join(c))
    return "\n".join(lines) + "\n"


def validate_logic(logic: Logic) -> ValidationReport:
    """Check structural rules, returning all violations as data.

    Rules checked:

    ``atom-token``
        every atom id matches ``[A-Za-z0-9_']+``
    ``context-too-small``
        every context has at least two atoms
    ``context-duplicate-atom``
        no atom appears twice inside one context
    ``undeclared-atom``
        contexts only use atoms from the atom list
    ``unused-atom``
        every atom sits in at least one context
    ``subset-context``
        no context's atom set is contained in another's (equal sets count)
    ``intertwine-bound``
        if ``max_intertwine`` is set, no two contexts share more atoms
    """
    violations: list[Violation] = []

    for a in logic.atoms:
        if not ATOM_TOKEN.match(a):
            violations.append(Violation("atom-token", f"bad atom id {a!r}", (a,)))

    used: set[str] = set()
    for i, ctx in enumerate(logic.contexts):
        if len(ctx) < 2:
            violations.append(Violation(
                "context-too-small", f"context {i} has {len(ctx)} atom(s)", (i,)))
        seen_here: set[str] = set()
        for a in ctx:
            if a in seen_here:
                violations.append(Violation(
                    "context-duplicate-atom",
                    f"atom {a!r} repeated in context {i}", (i, a)))
            seen_here.add(a)
            if a not in logic.atom_index:
                violations.append(Violation(
                    "undeclared-atom", f"context {i} uses undeclared atom {a!r}",
                    (i, a)))
            used.add(a)

    for a in logic.atoms:
        if a not in used:
            violations.append(Violation("unused-atom", f"atom {a!r} in no context", (a,)))

    sets = logic.context_sets
    for i in range(len(sets)):
        for j in range(len(sets)):
            if i != j and sets[i] <= sets[j] and (i < j or sets[i] != sets[j]):
                violations.append(Violation(
                    "subset-context",
                    f"context {i} is a subset of context {j}", (i, j)))

    if logic.max_intertwine is not None:
        for i in range(len(sets)):
            for j in range(i + 1, len(sets)):
                shared = sets[i] & sets[j]
                if len(shared) > logic.max_intertwine:
                    violations.append(Violation(
                        "intertwine-bound",
                        f"contexts {i} and {j} share {len(shared)} atoms "
                        f"(bound {logic.max_intertwine})",
                        (i, j, tuple(sorted(shared)))))

    return ValidationReport(ok=not violations, violations=tuple(violations))


def _context_sort_key(logic_atoms_index: dict[str, int], ctx: tuple[str, ...]):
    return tuple(sorted(logic_atoms_index[a] for a in ctx))


def canonical_logic(logic: Logic) -> Logic:
    """Same logic with contexts sorted by their sorted atom-index tuples."""
    idx = logic.atom_index
    ordered = sorted(logic.contexts, key=lambda c: _context_sort_key(idx, c))
    return Logic(atoms=logic.atoms, contexts=tuple(ordered), name=logic.name,
                 max_intertwine=logic.max_intertwine)


def paste_logics(first: Logic, second: Logic) -> Logic:
    """Paste two logics by identifying equal atom ids.

    Atoms keep the order (first logic's declarations, then the second's new
    ones).  Contexts equal as sets are merged, keeping the earliest declared
    atom order; the result's contexts are sorted canonically by their sorted
    atom-index tuples.  Pasting is associative, and commutative up to this
    canonical ordering.

    Raises :class:`PasteInvalid` when an input or the combined logic fails
    :func:`validate_logic`.
    """
    for label, l in (("first", first), ("second", second)):
        report = validate_logic(l)
        if not report.ok:
            raise PasteInvalid(f"{label} input logic is invalid", report)

    atoms = list(first.atoms)
    known = set(atoms)
    for a in second.atoms:
        if a not in known:
            atoms.append(a)
            known.add(a)

    merged: list[tuple[str, ...]] = []
    seen: set[frozenset[str]] = set()
    for ctx in first.contexts + second.contexts:
        key = frozenset(ctx)
        if key not in seen:
            seen.add(key)
            merged.append(tuple(ctx))

    if first.name and second.name:
        name = first.name if first.name == second.name else f"{first.name}+{second.name}"
    else:
        name = first.name or second.name
    bound = first.max_intertwine if first.max_intertwine == second.max_intertwine else None

    idx = {a: i for i, a in enumerate(atoms)}
    merged.sort(key=lambda c: _context_sort_key(idx, c))
    pasted = Logic(atoms=tuple(atoms), contexts=tuple(merged), name=name,
                   max_intertwine=bound)

    report = validate_logic(pasted)
    if not report.ok:
        raise PasteInvalid("pasted logic is invalid", report)
    return pasted


def same_structure(a: Logic, b: Logic) -> bool:
    """True when two logics have equal atom sets and equal context sets."""
    return (set(a.atoms) == set(b.atoms)
            and set(a.context_sets) == set(b.context_sets))


def export_greechie_dot(logic: Logic) -> str:
    """Render the hypergraph as Graphviz DOT, one colored clique per context.

    Output is deterministic: atoms in declaration order, contexts in stored
    order, colors cycling through a fixed palette.
    """
    def q(s: str) -> str:
        return '"' + s.replace('"', r'\"') + '"'

    lines = [f"graph {q(logic.name or 'logic')} {{"]
    lines.append("  node [shape=circle fontsize=10 margin=0.02];")
    for a in logic.atoms:
        lines.append(f"  {q(a)};")
    for i, ctx in enumerate(logic.contexts):
        color = _DOT_PALETTE[i % len(_DOT_PALETTE)]
        lines.append(f"  // context {i}: {' '.join(ctx)}")
        for u in range(len(ctx)):
            for v in range(u + 1, len(ctx)):
                lines.append(
                    f"  {q(ctx[u])} -- {q(ctx[v])} [color={q(color)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
