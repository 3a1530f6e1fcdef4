"""Correlation polytopes spanned by two-valued states, in exact arithmetic.

Vertices are truth assignments read as 0/1 vectors (optionally projected to a
subset of atoms).  Facets are enumerated with the double description method
inside the affine hull of the vertex set; affine-hull equalities are reported
separately from proper facets.  Membership tests run an exact rational LP and
return either convex weights or a separating inequality that is simultaneously
a facet.  Everything here is Fraction arithmetic; there is no floating-point
fallback.

Canonical form of an inequality: coefficients and bound are coprime integers,
sense is <=, and among all representatives modulo the affine-hull equalities
the one with all-nonnegative coefficients and smallest coefficient sum is
chosen (smallest lexicographically on ties).  When no nonnegative
representative exists, coefficients on the equality system's pivot coordinates
are eliminated instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Mapping, Sequence

from ctxlab.exactlp import INFEASIBLE, OPTIMAL, solve_standard
from ctxlab.logic import Logic, validate_logic
from ctxlab.states import TwoValuedState, UnknownAtom, enumerate_states

Vector = tuple[Fraction, ...]


class MissingCoordinate(Exception):
    """A point lacks a value for a coordinate the operation needs."""


@dataclass(frozen=True)
class VertexSet:
    """Deduplicated vertex list with multiplicities, sorted lexicographically."""

    labels: tuple[str, ...]
    vertices: tuple[Vector, ...]
    counts: tuple[int, ...]


@dataclass(frozen=True)
class Inequality:
    """coeffs . x <= bound over the named coordinates."""

    labels: tuple[str, ...]
    coeffs: Vector
    bound: Fraction

    def value_on(self, point: Mapping[str, object]):
        total = 0
        for a, c in zip(self.labels, self.coeffs):
            if c == 0:
                continue
            if a not in point:
                raise MissingCoordinate(f"point lacks coordinate {a!r}")
            total += c * point[a]
        return total


@dataclass(frozen=True)
class Equality:
    """coeffs . x == bound on every vertex (affine hull description)."""

    labels: tuple[str, ...]
    coeffs: Vector
    bound: Fraction

    def value_on(self, point: Mapping[str, object]):
        total = 0
        for a, c in zip(self.labels, self.coeffs):
            if c == 0:
                continue
            if a not in point:
                raise MissingCoordinate(f"point lacks coordinate {a!r}")
            total += c * point[a]
        return total


@dataclass(frozen=True)
class InequalityEvaluation:
    value: object
    bound: object
    satisfied: bool


@dataclass(frozen=True)
class Polytope:
    labels: tuple[str, ...]
    vertices: tuple[Vector, ...]
    counts: tuple[int, ...]
    affine_dim: int
    equalities: tuple[Equality, ...]
    facets: tuple[Inequality, ...]


@dataclass(frozen=True)
class MembershipResult:
    """Inside: convex ``weights`` over the vertex list.  Outside: a
    ``separator`` facet (or violated hull equality) with its value at the
    point and its exact maximum over the vertices."""

    inside: bool
    weights: tuple[Fraction, ...] | None = None
    separator: Inequality | None = None
    value_at_point: Fraction | None = None
    max_over_vertices: Fraction | None = None


@dataclass(frozen=True)
class ImplicationResult:
    """Whether max coeffs . p over the measure axiom region stays <= bound."""

    implied: bool
    optimum: Fraction | None
    witness: tuple[Fraction, ...] | None = None
    region_empty: bool = False


# ---------------------------------------------------------------- helpers

def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns nonzero rows and pivot columns."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    return rows[:r], pivots


def _integer_primitive(values: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Positive rescale to coprime integers (zero vector passes through)."""
    denoms = [v.denominator for v in values]
    scale = 1
    for d in denoms:
        scale = scale * d // gcd(scale, d)
    ints = [v * scale for v in values]
    g = 0
    for v in ints:
        g = gcd(g, int(v))
    if g > 1:
        ints = [v / g for v in ints]
    return tuple(Fraction(v) for v in ints)


def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


class _Hull:
    """Affine hull data of a vertex list: base point, basis, reduction maps."""

    def __init__(self, vertices: Sequence[Vector]):
        self.v0 = vertices[0]
        diffs = [[vi - wi for vi, wi in zip(v, self.v0)] for v in vertices[1:]]
        self.basis, self.pivots = _rref(diffs)
        self.dim = len(self.pivots)
        n = len(self.v0)
        self.free = [j for j in range(n) if j not in set(self.pivots)]

    def reduce(self, point: Vector) -> Vector:
        return tuple(point[p] - self.v0[p] for p in self.pivots)

    def equality_rows(self) -> list[tuple[list[Fraction], Fraction]]:
        """Null-space rows (a, a.v0): a . x == a . v0 on the whole hull."""
        n = len(self.v0)
        rows = []
        for f in self.free:
            a = [Fraction(0)] * n
            a[f] = Fraction(1)
            for j, p in enumerate(self.pivots):
                a[p] = -self.basis[j][f]
            rows.append((a, _dot(a, self.v0)))
        return rows

    def lift_inequality(self, red_coeffs: Vector, red_bound: Fraction) -> tuple[list[Fraction], Fraction]:
        """Reduced-coordinate inequality back to ambient coordinates."""
        n = len(self.v0)
        coeffs = [Fraction(0)] * n
        bound = red_bound
        for j, p in enumerate(self.pivots):
            coeffs[p] = red_coeffs[j]
            bound += red_coeffs[j] * self.v0[p]
        return coeffs, bound


def _canonical_equalities(labels: tuple[str, ...], hull: _Hull) -> tuple[Equality, ...]:
    out = []
    for a, b in hull.equality_rows():
        vec = _integer_primitive(list(a) + [b])
        coeffs, bound = vec[:-1], vec[-1]
        first = next((v for v in coeffs if v != 0), Fraction(1))
        if first < 0:
            coeffs = tuple(-v for v in coeffs)
            bound = -bound
        out.append(Equality(labels, coeffs, bound))
    return tuple(out)


def canonical_inequality(labels: tuple[str, ...], coeffs: Sequence[Fraction],
                         bound: Fraction,
                         equalities: Sequence[Equality] = ()) -> Inequality:
    """Canonical representative of an inequality modulo hull equalities.

    Searches representatives ``coeffs + sum_e t_e . eq_e`` for the one with
    all coefficients nonnegative and minimal coefficient sum, refined to the
    lexicographically smallest coefficient vector; coprime-integer scaled.
    Falls back to eliminating the equality pivot coordinates when no
    nonnegative representative exists.
    """
    n = len(labels)
    coeffs = [Fraction(v) for v in coeffs]
    bound = Fraction(bound)
    eq_rows = [[Fraction(v) for v in e.coeffs] for e in equalities]
    eq_bounds = [Fraction(e.bound) for e in equalities]
    q = len(eq_rows)

    if q:
        picked = _nonneg_representative(coeffs, eq_rows)
        if picked is not None:
            t = picked
            coeffs = [c + sum(t[e] * eq_rows[e][i] for e in range(q))
                      for i, c in enumerate(coeffs)]
            bound = bound + sum(t[e] * eq_bounds[e] for e in range(q))
        else:
            rr, piv = _rref([row + [b] for row, b in zip(eq_rows, eq_bounds)])
            aug = coeffs + [bound]
            for row, p in zip(rr, piv):
                if aug[p]:
                    f = aug[p]
                    aug = [a - f * b for a, b in zip(aug, row)]
            coeffs, bound = aug[:-1], aug[-1]

    vec = _integer_primitive(coeffs + [bound])
    return Inequality(tuple(labels), vec[:-1], vec[-1])


def _nonneg_representative(coeffs: list[Fraction],
                           eq_rows: list[list[Fraction]]) -> list[Fraction] | None:
    """Multipliers t making coeffs + t.E componentwise nonnegative, with the
    smallest coefficient sum and then lexicographically smallest coefficients.
    None when no nonnegative representative exists."""
    n = len(coeffs)
    q = len(eq_rows)
    # variables: u_e, w_e (t_e = u_e - w_e), s_i = resulting coefficient i
    nvars = 2 * q + n

    def base_rows():
        rows, rhs = [], []
        for i in range(n):
            row = [Fraction(0)] * nvars
            for e in range(q):
                row[e] = eq_rows[e][i]
                row[q + e] = -eq_rows[e][i]
            row[2 * q + i] = Fraction(-1)
            rows.append(row)
            rhs.append(-coeffs[i])
        return rows, rhs

    rows, rhs = base_rows()
    pins: list[tuple[list[Fraction], Fraction]] = []

    def minimize(target: list[Fraction]):
        A = rows + [p[0] for p in pins]
        b = rhs + [p[1] for p in pins]
        return solve_standard(target, A, b)

    l1 = [Fraction(0)] * (2 * q) + [Fraction(1)] * n
    res = minimize(l1)
    if res.status == INFEASIBLE:
        return None
    assert res.status == OPTIMAL
    pins.append((l1, res.objective))
    for i in range(n):
        target = [Fraction(0)] * nvars
        target[2 * q + i] = Fraction(1)
        res = minimize(target)
        assert res.status == OPTIMAL
        pins.append((target, res.objective))
    # the last solution lies on the fully pinned face, which is one point;
    # the multipliers are unique because the equality rows are independent
    return [res.x[e] - res.x[q + e] for e in range(q)]


def _extreme_rays(M: list[Vector]) -> list[Vector]:
    """Extreme rays of the pointed cone {z : M z >= 0}, double description.

    Requires the columns of M to span (the cone is pointed); rays come back
    as primitive integer vectors in a deterministic order.
    """
    d = len(M[0])
    # initial simplicial subcone from the first d linearly independent rows
    chosen: list[int] = []
    probe: list[list[Fraction]] = []
    for i, row in enumerate(M):
        trial = probe + [list(row)]
        rr, piv = _rref(trial)
        if len(rr) > len(probe):
            probe = [list(r) for r in rr]
            chosen.append(i)
            if len(chosen) == d:
                break
    if len(chosen) < d:
        raise ValueError("cone is not pointed: constraint rows do not span")

    # columns of the inverse of the chosen submatrix are the initial rays
    sub = [list(M[i]) for i in chosen]
    aug = [row + [Fraction(1) if j == i else Fraction(0) for j in range(d)]
           for i, row in enumerate(sub)]
    rr, piv = _rref(aug)
    assert piv == list(range(d))
    inv_cols = [[rr[i][d + j] for i in range(d)] for j in range(d)]
    # ray_j satisfies M_chosen . ray_j = e_j
    rays = [_integer_primitive(inv_cols[j]) for j in range(d)]

    processed = list(chosen)
    zero_sets = [frozenset(chosen[t] for t in range(d) if t != j) for j in range(d)]

    remaining = [i for i in range(len(M)) if i not in set(chosen)]
    for i in remaining:
        vals = [_dot(M[i], r) for r in rays]
        pos = [t for t, v in enumerate(vals) if v > 0]
        zero = [t for t, v in enumerate(vals) if v == 0]
        neg = [t for t, v in enumerate(vals) if v < 0]
        if not neg:
            processed.append(i)
            zero_sets = [zs | {i} if t in zero else zs
                         for t, zs in enumerate(zero_sets)]
            continue
        new_rays: list[Vector] = []
        new_zero: list[frozenset[int]] = []
        for p in pos:
            for m_ in neg:
                common = zero_sets[p] & zero_sets[m_]
                if len(common) < d - 2:
                    continue
                adjacent = True
                for t in range(len(rays)):
                    if t not in (p, m_) and common <= zero_sets[t]:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                w = [vals[p] * bm - vals[m_] * bp
                     for bp, bm in zip(rays[p], rays[m_])]
                wn = _integer_primitive(w)
                zs = frozenset(j for j in processed if _dot(M[j], wn) == 0) | {i}
                new_rays.append(wn)
                new_zero.append(zs)
        keep = pos + zero
        rays = [rays[t] for t in keep] + new_rays
        zero_sets = [zero_sets[t] | ({i} if t in zero else frozenset())
                     for t in keep] + new_zero
        processed.append(i)

    for r in rays:  # internal consistency: every kept ray satisfies the cone
        assert all(_dot(row, r) >= 0 for row in M)
    order = sorted(range(len(rays)), key=lambda t: rays[t])
    return [rays[t] for t in order]


# ---------------------------------------------------------------- public api

def vertices_from_states(logic: Logic,
                         states: Sequence[TwoValuedState] | None = None,
                         project: Sequence[str] | None = None) -> VertexSet:
    """States as 0/1 vertices over ``project`` (default: all atoms).

    Projection can collapse states onto the same vertex; duplicates are
    merged and counted.  Vertices come back sorted lexicographically.
    """
    if states is None:
        states = enumerate_states(logic)
    if project is None:
        labels = logic.atoms
    else:
        labels = tuple(project)
        seen = set()
        for a in labels:
            if a not in logic.atom_index:
                raise UnknownAtom(f"projection names unknown atom {a!r}")
            if a in seen:
                raise ValueError(f"projection repeats atom {a!r}")
            seen.add(a)
    counted: dict[Vector, int] = {}
    for s in states:
        v = tuple(Fraction(s[a]) for a in labels)
        counted[v] = counted.get(v, 0) + 1
    ordered = sorted(counted)
    return VertexSet(labels=labels, vertices=tuple(ordered),
                     counts=tuple(counted[v] for v in ordered))


@lru_cache(maxsize=None)
def facet_enumeration(vset: VertexSet) -> Polytope:
    """All facets of conv(vertices) inside its affine hull, plus the hull
    equalities, everything canonicalized and sorted.  Results are memoized;
    vertex sets hash by value."""
    if not vset.vertices:
        raise ValueError("no vertices")
    hull = _Hull(vset.vertices)
    equalities = _canonical_equalities(vset.labels, hull)
    if hull.dim == 0:
        return Polytope(vset.labels, vset.vertices, vset.counts, 0, equalities, ())

    reduced = [hull.reduce(v) for v in vset.vertices]
    M = [(Fraction(1),) + y for y in reduced]
    facets = []
    for ray in _extreme_rays(M):
        c0, c = ray[0], ray[1:]
        if all(v == 0 for v in c):
            continue
        coeffs, bound = hull.lift_inequality(tuple(-v for v in c), c0)
        facets.append(canonical_inequality(vset.labels, coeffs, bound, equalities))

    for f in facets:  # soundness: valid on every vertex and tight somewhere
        values = [_dot(f.coeffs, v) for v in vset.vertices]
        assert max(values) == f.bound, "facet not supporting"

    facets.sort(key=lambda f: (f.coeffs, f.bound))
    return Polytope(vset.labels, vset.vertices, vset.counts, hull.dim,
                    equalities, tuple(facets))


def evaluate_inequality(ineq: Inequality, point: Mapping[str, object],
                        ) -> InequalityEvaluation:
    """Value of the inequality functional at a point; exact for rationals."""
    value = ineq.value_on(point)
    return InequalityEvaluation(value=value, bound=ineq.bound,
                                satisfied=bool(value <= ineq.bound))


def membership(point: Mapping[str, object], vset: VertexSet) -> MembershipResult:
    """Exact convex-hull membership with certificates both ways.

    Inside yields weights over the vertex list.  Outside yields a separating
    inequality: a violated affine-hull equality (oriented toward the point)
    when the point leaves the hull, otherwise a proper facet found by a polar
    LP and purified to a vertex of the polar, i.e. the reported separator is
    always tight on the polytope.
    """
    p = tuple(Fraction(point[a]) if a in point else _missing(a) for a in vset.labels)
    hull = _Hull(vset.vertices)
    equalities = _canonical_equalities(vset.labels, hull)

    for eq in equalities:
        val = _dot(eq.coeffs, p)
        if val != eq.bound:
            if val > eq.bound:
                sep = Inequality(vset.labels, eq.coeffs, eq.bound)
            else:
                sep = Inequality(vset.labels, tuple(-v for v in eq.coeffs), -eq.bound)
            return MembershipResult(inside=False, separator=sep,
                                    value_at_point=sep.value_on(dict(zip(vset.labels, p))),
                                    max_over_vertices=sep.bound)

    reduced = [hull.reduce(v) for v in vset.vertices]
    y_p = hull.reduce(p)
    m = len(reduced)
    k = hull.dim
    A = [[Fraction(r[j]) for r in reduced] for j in range(k)]
    A.append([Fraction(1)] * m)
    b = list(y_p) + [Fraction(1)]
    res = solve_standard([Fraction(0)] * m, A, b)
    if res.status == OPTIMAL:
        return MembershipResult(inside=True, weights=res.x)

    centroid = tuple(sum(r[j] for r in reduced) / m for j in range(k))
    z = _polar_facet(reduced, centroid, y_p, k)
    red_bound = 1 + _dot(z, centroid)
    coeffs, bound = hull.lift_inequality(z, red_bound)
    sep = canonical_inequality(vset.labels, coeffs, bound, equalities)
    value = _dot(sep.coeffs, p)
    maxv = max(_dot(sep.coeffs, v) for v in vset.vertices)
    assert maxv == sep.bound and value > maxv
    return MembershipResult(inside=False, separator=sep, value_at_point=value,
                            max_over_vertices=maxv)


def _missing(a: str):
    raise MissingCoordinate(f"point lacks coordinate {a!r}")


def _polar_facet(reduced: list[Vector], centroid: Vector, y_p: Vector,
                 k: int) -> Vector:
    """A vertex of the polar polytope maximizing the violation at ``y_p``.

    Maximize z.(y_p - centroid) over {z : z.(v - centroid) <= 1}; the optimum
    is > 1 exactly when y_p lies outside, and any vertex of the optimal face
    is a vertex of the polar, hence a facet of the primal.
    """
    rows = [tuple(v[j] - centroid[j] for j in range(k)) for v in reduced]
    d = tuple(y_p[j] - centroid[j] for j in range(k))
    m = len(rows)
    # variables: z+ (k), z- (k), slack (m)
    nvars = 2 * k + m
    A = []
    for i, r in enumerate(rows):
        row = [Fraction(0)] * nvars
        for j in range(k):
            row[j] = r[j]
            row[k + j] = -r[j]
        row[2 * k + i] = Fraction(1)
        A.append(row)
    b = [Fraction(1)] * m
    cost = [Fraction(0)] * nvars
    for j in range(k):
        cost[j] = -d[j]
        cost[k + j] = d[j]
    res = solve_standard(cost, A, b)
    assert res.status == OPTIMAL
    z = [res.x[j] - res.x[k + j] for j in range(k)]
    opt = _dot(z, d)
    assert opt > 1

    while True:
        tight = [list(r) for r in rows if _dot(r, z) == 1]
        rr, piv = _rref(tight + [list(d)])
        null = _nullspace(rr, piv, k)
        if not null:
            # at an optimum the objective lies in the span of the tight rows,
            # so an empty nullspace means the tight rows alone have full rank
            assert len(_rref(tight)[1]) == k, "purification stalled"
            break
        w = null[0]
        best = None
        for r in rows:
            g = _dot(r, w)
            if g > 0:
                step = (1 - _dot(r, z)) / g
                if best is None or step < best:
                    best = step
        if best is None:
            w = tuple(-v for v in w)
            for r in rows:
                g = _dot(r, w)
                if g > 0:
                    step = (1 - _dot(r, z)) / g
                    if best is None or step < best:
                        best = step
        assert best is not None and best > 0
        z = tuple(zi + best * wi for zi, wi in zip(z, w))
    return tuple(z)


def _nullspace(rr: list[list[Fraction]], piv: list[int], n: int) -> list[Vector]:
    pivs = set(piv)
    out = []
    for f in range(n):
        if f in pivs:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for j, p in enumerate(piv):
            v[p] = -rr[j][f]
        out.append(tuple(v))
    return out


def axiom_implied(logic: Logic, ineq: Inequality) -> ImplicationResult:
    """Does the inequality follow from nonnegativity plus unit context sums?

    Maximizes the inequality functional over {p >= 0, sum over each context
    = 1} with an exact LP and compares the optimum against the bound.
    """
    if not validate_logic(logic).ok:
        raise ValueError("logic does not validate")
    for a in ineq.labels:
        if a not in logic.atom_index:
            raise UnknownAtom(f"inequality names unknown atom {a!r}")
    n = len(logic.atoms)
    coeff = {a: c for a, c in zip(ineq.labels, ineq.coeffs)}
    c = [-Fraction(coeff.get(a, 0)) for a in logic.atoms]
    A = [[Fraction(1) if a in ctx else Fraction(0) for a in logic.atoms]
         for ctx in logic.context_sets]
    b = [Fraction(1)] * len(A)
    res = solve_standard(c, A, b)
    if res.status == INFEASIBLE:
        return ImplicationResult(implied=True, optimum=None, region_empty=True)
    assert res.status == OPTIMAL
    optimum = -res.objective
    implied = optimum <= ineq.bound
    witness = None if implied else res.x
    return ImplicationResult(implied=implied, optimum=optimum, witness=witness)


def parse_inequality(text: str) -> Inequality:
    """Parse ``"1 + 3 + 5 + 7 + 9 <= 2"`` style inequality expressions.

    Terms are ``atom`` or ``coeff*atom`` with rational coefficients; bare
    tokens are always atom names (atom ids are frequently numeric), so
    constants other than the right-hand bound need an explicit coefficient
    star.  ``<=`` and ``>=`` are accepted; the latter is normalized by
    negation.
    """
    if "<=" in text:
        lhs, rhs = text.split("<=", 1)
        flip = False
    elif ">=" in text:
        lhs, rhs = text.split(">=", 1)
        flip = True
    else:
        raise ValueError("inequality needs '<=' or '>='")
    try:
        bound = Fraction(rhs.strip())
    except (ValueError, ZeroDivisionError) as err:
        raise ValueError(f"bad bound {rhs.strip()!r}") from err

    coeffs: dict[str, Fraction] = {}
    order: list[str] = []
    stripped = lhs.replace("-", "+-").split("+")
    for term in stripped:
        term = term.strip()
        if not term:
            continue
        sign = Fraction(1)
        if term.startswith("-"):
            sign = Fraction(-1)
            term = term[1:].strip()
        if "*" in term:
            num, atom = term.split("*", 1)
            try:
                coeff = sign * Fraction(num.strip())
            except (ValueError, ZeroDivisionError) as err:
                raise ValueError(f"bad coefficient in term {term!r}") from err
            atom = atom.strip()
        else:
            coeff = sign
            atom = term
        if not atom:
            raise ValueError(f"empty atom in term {term!r}")
        if atom not in coeffs:
            coeffs[atom] = Fraction(0)
            order.append(atom)
        coeffs[atom] += coeff
    if flip:
        bound = -bound
        coeffs = {a: -v for a, v in coeffs.items()}
    return Inequality(tuple(order), tuple(coeffs[a] for a in order), bound)
