"""Hilbert-space vector realizations: Born probabilities, spectral operators.

Atoms become unit vectors, contexts become orthonormal bases, and the Born
rule turns a state vector into a probability assignment.  Arithmetic is
64-bit floating point; vector files use an exact token grammar (integers,
a/b, a/sqrt(b), complex pairs) so inputs stay reproducible.  Angles are
measured between rays, so the sign of a vector never matters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import acos, asin, sqrt
from typing import Mapping, Sequence

import numpy as np

from ctxlab.logic import Logic
from ctxlab.polytope import Inequality, evaluate_inequality
from ctxlab.states import MissingAtom, ProbabilityAssignment

DEFAULT_TOLERANCE = 1e-9
ALGEBRA_TOLERANCE = 1e-12

_REAL = r"[+-]?\d+(?:/(?:\d+|sqrt\(\d+\)))?"
_REAL_TOKEN = re.compile(_REAL + r"\Z")
_COMPLEX_TOKEN = re.compile(r"\((" + _REAL + r"),(" + _REAL + r")\)\Z")


class RealizationError(Exception):
    """Base for realization-layer failures."""


class VectorParseError(RealizationError):
    """Vector file text violates the grammar."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class NonUnitVector(RealizationError):
    """A vector that must have norm 1 does not."""


class NonUnitState(RealizationError):
    """The state vector psi does not have norm 1."""


class RepeatedEigenvalue(RealizationError):
    """Eigenvalues of a maximal operator must be pairwise distinct."""


class NonOrthonormalContext(RealizationError):
    """Context vectors fail pairwise orthogonality or unit norm."""


@dataclass(frozen=True, eq=False)
class Realization:
    """Per-atom unit vectors in a fixed dimension, with a check tolerance."""

    dimension: int
    vectors: Mapping[str, np.ndarray]
    tolerance: float = DEFAULT_TOLERANCE

    def vector(self, atom: str) -> np.ndarray:
        if atom not in self.vectors:
            raise MissingAtom(f"no vector for atom {atom!r}")
        return self.vectors[atom]


@dataclass(frozen=True)
class ContextFailure:
    context_index: int
    pair: tuple[str, str]
    value: float


@dataclass(frozen=True)
class RealizationReport:
    """ok requires clean orthogonality, unit norms and no collinear atoms."""

    ok: bool
    dimension: int
    context_failures: tuple[ContextFailure, ...]
    norm_failures: tuple[tuple[str, float], ...]
    collinear_pairs: tuple[tuple[str, str], ...]
    missing_atoms: tuple[str, ...] = ()
    skipped_contexts: tuple[int, ...] = ()


@dataclass(frozen=True)
class FeasibilityWindow:
    """Angle constraints a single pair of atoms would have to satisfy."""

    tifs_min_angle: float
    tits_max_angle: float
    feasible: bool


@dataclass(frozen=True)
class ViolationReport:
    assignment: ProbabilityAssignment
    evaluations: tuple[tuple[Inequality, float, bool], ...]
    violated: tuple[Inequality, ...]


def _real_value(token: str) -> float:
    if "/" not in token:
        return float(int(token))
    num, den = token.split("/", 1)
    if den.startswith("sqrt(") and den.endswith(")"):
        return int(num) / sqrt(int(den[5:-1]))
    return int(num) / int(den)


def parse_scalar(token: str) -> complex | float:
    """One component in the vector grammar; complex pairs use (re,im)."""
    m = _COMPLEX_TOKEN.match(token)
    if m:
        return complex(_real_value(m.group(1)), _real_value(m.group(2)))
    if _REAL_TOKEN.match(token):
        return _real_value(token)
    raise ValueError(f"bad component token {token!r}")


def parse_vector(tokens: Sequence[str]) -> np.ndarray:
    """Component tokens to a float or complex vector."""
    values = [parse_scalar(t) for t in tokens]
    if any(isinstance(v, complex) for v in values):
        return np.array(values, dtype=complex)
    return np.array(values, dtype=float)


def parse_vectors(text: str, dim: int | None = None,
                  tolerance: float = DEFAULT_TOLERANCE) -> Realization:
    """Parse ``vec <atom> <c1> ... <cD>`` lines into a Realization.

    The dimension is taken from ``dim`` when given, otherwise from the first
    vector; every vector must match it.  ``#`` starts a comment.
    """
    vectors: dict[str, np.ndarray] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]
        if not tokens:
            continue
        head, col = tokens[0]
        if head != "vec":
            raise VectorParseError(f"unknown directive {head!r}", lineno, col)
        if len(tokens) < 3:
            raise VectorParseError("need an atom id and components", lineno, col)
        atom, acol = tokens[1]
        if atom in vectors:
            raise VectorParseError(f"atom {atom!r} already has a vector",
                                   lineno, acol)
        comps = []
        for tok, tcol in tokens[2:]:
            try:
                comps.append(parse_scalar(tok))
            except ValueError as err:
                raise VectorParseError(str(err), lineno, tcol) from err
        if dim is None:
            dim = len(comps)
        if len(comps) != dim:
            raise VectorParseError(
                f"expected {dim} components, got {len(comps)}", lineno, col)
        if any(isinstance(v, complex) for v in comps):
            vectors[atom] = np.array(comps, dtype=complex)
        else:
            vectors[atom] = np.array(comps, dtype=float)
    if not vectors:
        raise VectorParseError("no vectors", 1)
    return Realization(dimension=dim, vectors=vectors, tolerance=tolerance)


def _inner(u: np.ndarray, v: np.ndarray) -> complex:
    # conjugate-linear in the first argument
    return complex(np.vdot(u, v))


def check_realization(logic: Logic, r: Realization,
                      allow_partial: bool = False) -> RealizationReport:
    """Verify contexts are orthonormal bases and atoms occupy distinct rays.

    With ``allow_partial`` contexts containing unrealized atoms are skipped
    and reported; otherwise any uncovered atom raises MissingAtom.  Norms
    are checked once per realized atom, orthogonality per context pair, and
    collinearity across all realized atom pairs.
    """
    missing = tuple(a for a in logic.atoms if a not in r.vectors)
    if missing and not allow_partial:
        raise MissingAtom(f"no vectors for atoms: {', '.join(missing)}")
    for a in logic.atoms:
        if a in r.vectors and r.vectors[a].shape != (r.dimension,):
            raise ValueError(f"vector for {a!r} is not {r.dimension}-dimensional")
    tol = r.tolerance

    norm_failures = []
    for a in logic.atoms:
        if a not in r.vectors:
            continue
        sq = _inner(r.vectors[a], r.vectors[a]).real
        if abs(sq - 1) > tol:
            norm_failures.append((a, sq))

    context_failures = []
    skipped = []
    for i, ctx in enumerate(logic.contexts):
        if any(a not in r.vectors for a in ctx):
            skipped.append(i)
            continue
        for j, a in enumerate(ctx):
            for b in ctx[j + 1:]:
                val = _inner(r.vectors[a], r.vectors[b])
                if abs(val) > tol:
                    context_failures.append(ContextFailure(
                        i, (a, b), val.real if val.imag == 0 else abs(val)))

    collinear = []
    realized = [a for a in logic.atoms if a in r.vectors]
    for j, a in enumerate(realized):
        for b in realized[j + 1:]:
            if abs(abs(_inner(r.vectors[a], r.vectors[b])) - 1) <= tol:
                collinear.append((a, b))

    return RealizationReport(
        ok=not context_failures and not norm_failures and not collinear,
        dimension=r.dimension,
        context_failures=tuple(context_failures),
        norm_failures=tuple(norm_failures),
        collinear_pairs=tuple(collinear),
        missing_atoms=missing,
        skipped_contexts=tuple(skipped))


def _state_vector(r: Realization, psi) -> np.ndarray:
    if isinstance(psi, str):
        vec = r.vector(psi)
    else:
        vec = np.asarray(psi)
        if vec.shape != (r.dimension,):
            raise ValueError(f"psi is not {r.dimension}-dimensional")
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1) > r.tolerance:
        raise NonUnitState(f"psi has norm {norm}, expected 1")
    return vec


def born_probabilities(logic: Logic, r: Realization, psi) -> ProbabilityAssignment:
    """Born rule |<e_a|psi>|^2 for every realized atom of the logic.

    ``psi`` is an atom id or a unit vector.  Partial realizations yield a
    partial assignment; within a fully realized context the values sum to 1
    up to roundoff because the basis resolves the identity.
    """
    vec = _state_vector(r, psi)
    probs = {}
    for a in logic.atoms:
        if a in r.vectors:
            probs[a] = abs(_inner(r.vectors[a], vec)) ** 2
    return ProbabilityAssignment(probs, exact=False)


def projector(v, tolerance: float = DEFAULT_TOLERANCE) -> np.ndarray:
    """Rank-1 projector v v-dagger onto the ray of a unit vector."""
    vec = np.asarray(v)
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1) > tolerance:
        raise NonUnitVector(f"norm {norm}, expected 1")
    return np.outer(vec, vec.conj())


def maximal_operator(vectors: Sequence[np.ndarray],
                     eigenvalues: Sequence[float],
                     tolerance: float = DEFAULT_TOLERANCE) -> np.ndarray:
    """Weighted spectral sum over an orthonormal context.

    Distinct eigenvalues make the operator carry the whole context: its
    eigenspaces recover every projector (see recover_projectors).
    """
    if len(vectors) != len(eigenvalues):
        raise ValueError("need one eigenvalue per vector")
    if len(set(eigenvalues)) != len(eigenvalues):
        raise RepeatedEigenvalue(f"eigenvalues not distinct: {eigenvalues}")
    vecs = [np.asarray(v) for v in vectors]
    for i, u in enumerate(vecs):
        if abs(float(np.linalg.norm(u)) - 1) > tolerance:
            raise NonOrthonormalContext(f"vector {i} is not unit norm")
        for j in range(i + 1, len(vecs)):
            if abs(_inner(u, vecs[j])) > tolerance:
                raise NonOrthonormalContext(
                    f"vectors {i} and {j} are not orthogonal")
    out = np.zeros((vecs[0].shape[0], vecs[0].shape[0]),
                   dtype=complex if any(np.iscomplexobj(v) for v in vecs)
                   else float)
    for lam, u in zip(eigenvalues, vecs):
        out += lam * np.outer(u, u.conj())
    return out


def recover_projectors(A: np.ndarray,
                       eigenvalues: Sequence[float]) -> list[np.ndarray]:
    """Lagrange polynomials of the operator: f_i(A) with f_i(lambda_j) = delta_ij.

    Given the operator built from an orthonormal context with these
    eigenvalues, returns that context's projectors.
    """
    if len(set(eigenvalues)) != len(eigenvalues):
        raise RepeatedEigenvalue(f"eigenvalues not distinct: {eigenvalues}")
    A = np.asarray(A)
    eye = np.eye(A.shape[0], dtype=A.dtype)
    out = []
    for i, li in enumerate(eigenvalues):
        E = eye
        for j, lj in enumerate(eigenvalues):
            if j != i:
                E = E @ ((A - lj * eye) / (li - lj))
        out.append(E)
    return out


def angle(u, v, tolerance: float = DEFAULT_TOLERANCE) -> float:
    """Angle between the rays of two unit vectors, in [0, pi/2]."""
    uu, vv = np.asarray(u), np.asarray(v)
    for w in (uu, vv):
        if abs(float(np.linalg.norm(w)) - 1) > tolerance:
            raise NonUnitVector(f"norm {float(np.linalg.norm(w))}, expected 1")
    return acos(min(abs(_inner(uu, vv)), 1.0))


def bug_pasting_feasibility() -> FeasibilityWindow:
    """Angle window for gluing the true-implies-false and true-implies-true
    bug variants onto one atom pair in dimension 3: the pair would need an
    angle of at least arccos(1/3) and at most arcsin(1/3) simultaneously."""
    lo = acos(1 / 3)
    hi = asin(1 / 3)
    return FeasibilityWindow(tifs_min_angle=lo, tits_max_angle=hi,
                             feasible=lo <= hi)


def quantum_vs_classical(logic: Logic, r: Realization, psi,
                         inequalities: Sequence[Inequality]) -> ViolationReport:
    """Born probabilities checked against classical inequalities."""
    assignment = born_probabilities(logic, r, psi)
    evaluations = []
    violated = []
    for ineq in inequalities:
        res = evaluate_inequality(ineq, assignment)
        evaluations.append((ineq, res.value, res.satisfied))
        if not res.satisfied:
            violated.append(ineq)
    return ViolationReport(assignment=assignment,
                           evaluations=tuple(evaluations),
                           violated=tuple(violated))
