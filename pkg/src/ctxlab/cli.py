"""Command-line front end.

One subcommand per pipeline: logic validation, state enumeration and
classification, forced pair properties, convex mixtures, polytope hulls and
membership, axiom implication, vector realizations, Born probabilities,
inequality violation, pasting, value-indefiniteness certification, urn
sampling, the fixture catalog, and DOT export.

Exit codes: 0 success, 1 domain failure (message on stderr), 2 usage error.
Rationals print as ``p/q``; floats use 12 significant digits.  ``--json``
emits one object validating against the schema shipped for the subcommand.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from ctxlab.catalog import UnknownEntry, catalog_get, catalog_list
from ctxlab.logic import (Logic, LogicError, export_greechie_dot, parse_logic,
                          paste_logics, serialize_logic, validate_logic)
from ctxlab.polytope import (Equality, Inequality, MissingCoordinate,
                             axiom_implied, facet_enumeration, membership,
                             parse_inequality, vertices_from_states)
from ctxlab.realization import (Realization, RealizationError,
                                born_probabilities, check_realization,
                                parse_vector, parse_vectors,
                                quantum_vs_classical)
from ctxlab.states import (ConditionFailed, MixtureWeights,
                           certify_value_indefiniteness, classify_states,
                           convex_mixture, enumerate_states, pair_property,
                           states_table)
from ctxlab.urn import UnknownContext, urn_simulate


class _DomainError(Exception):
    pass


# ---------------------------------------------------------------- formatting

def _frac(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def _flt(x) -> str:
    return format(float(x), ".12g")


def _terms(labels, coeffs) -> str:
    parts = []
    for lab, c in zip(labels, coeffs):
        if c == 0:
            continue
        mag = abs(Fraction(c))
        term = lab if mag == 1 else f"{_frac(mag)}*{lab}"
        if not parts:
            parts.append(term if c > 0 else "-" + term)
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    return " ".join(parts) if parts else "0"


def _ineq_text(ineq: Inequality) -> str:
    return f"{_terms(ineq.labels, ineq.coeffs)} <= {_frac(ineq.bound)}"


def _eq_text(eq: Equality) -> str:
    return f"{_terms(eq.labels, eq.coeffs)} = {_frac(eq.bound)}"


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


# ---------------------------------------------------------------- inputs

def _add_source(p: argparse.ArgumentParser, second: bool = False) -> None:
    suffix = "2" if second else ""
    what = "second " if second else ""
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument(f"--catalog{suffix}", metavar="NAME",
                   help=f"{what}built-in logic by catalog name")
    g.add_argument(f"--logic{suffix}", metavar="FILE",
                   help=f"{what}logic file to load")


def _entry(args, suffix: str = ""):
    name = getattr(args, "catalog" + suffix)
    return catalog_get(name) if name else None


def _logic(args, suffix: str = "") -> Logic:
    entry = _entry(args, suffix)
    if entry is not None:
        if entry.logic is None:
            raise _DomainError(
                f"catalog entry {entry.name!r} carries no logic, only an "
                "angle-window record; structural operations do not apply")
        return entry.logic
    path = getattr(args, "logic" + suffix)
    with open(path, encoding="utf-8") as fh:
        return parse_logic(fh.read())


def _realization(args) -> tuple[Realization, bool]:
    """Vector input plus whether partial coverage is acceptable.

    ``--vectors`` files are checked strictly; a catalog realization that is
    partial by design (only some atoms have vectors) is checked as such.
    """
    if getattr(args, "vectors", None):
        with open(args.vectors, encoding="utf-8") as fh:
            return parse_vectors(fh.read()), False
    entry = _entry(args)
    if entry is not None and entry.realization is not None:
        logic = entry.logic
        partial = set(entry.realization.vectors) != set(logic.atoms)
        return entry.realization, partial
    raise _DomainError("no vectors: pass --vectors FILE or pick a catalog "
                       "entry that ships a realization")


def _read_weights(path: str) -> MixtureWeights:
    values = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                values.append(Fraction(line))
    return MixtureWeights(tuple(values))


def _read_assignment(path: str) -> dict[str, Fraction]:
    out: dict[str, Fraction] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise _DomainError(f"{path}:{lineno}: expected 'atom value'")
            if parts[0] in out:
                raise _DomainError(f"{path}:{lineno}: repeated atom {parts[0]!r}")
            out[parts[0]] = Fraction(parts[1])
    if not out:
        raise _DomainError(f"{path}: no assignment lines")
    return out


def _psi(args, r: Realization):
    if args.psi in r.vectors:
        return args.psi
    return parse_vector(args.psi.split())


def _project(args) -> tuple[str, ...] | None:
    if getattr(args, "project", None):
        return tuple(p for p in args.project.split(",") if p)
    return None


# ---------------------------------------------------------------- commands

def _cmd_validate(args) -> int:
    logic = _logic(args)
    report = validate_logic(logic)
    lines = [f"logic: {logic.name or '<anonymous>'}",
             f"ok: {'yes' if report.ok else 'no'}"]
    for v in report.violations:
        lines.append(f"violation {v.rule}: {v.message}")
    payload = {"command": "validate", "name": logic.name,
               "ok": report.ok,
               "violations": [{"rule": v.rule, "message": v.message,
                               "offenders": [str(o) for o in v.offenders]}
                              for v in report.violations]}
    _emit(args, payload, "\n".join(lines))
    return 0 if report.ok else 1


def _cmd_states(args) -> int:
    logic = _logic(args)
    states = enumerate_states(logic)
    payload = {"command": "states", "atoms": list(logic.atoms),
               "count": len(states),
               "states": [s.bit_string() for s in states]}
    text = str(len(states)) if args.count else states_table(logic, states)
    _emit(args, payload, text)
    return 0


def _cmd_classify(args) -> int:
    logic = _logic(args)
    rep = classify_states(logic)
    lines = [f"count: {rep.count}",
             f"unital: {'yes' if rep.unital else 'no'}"]
    if rep.non_unital_atoms:
        lines.append("non_unital: " + " ".join(rep.non_unital_atoms))
    lines.append(f"separating: {'yes' if rep.separating else 'no'}")
    if rep.inseparable_pairs:
        lines.append("inseparable: " +
                     " ".join(f"{x}~{y}" for x, y in rep.inseparable_pairs))
    payload = {"command": "classify", "count": rep.count,
               "unital": rep.unital,
               "non_unital_atoms": list(rep.non_unital_atoms),
               "separating": rep.separating,
               "inseparable_pairs": [list(p) for p in rep.inseparable_pairs]}
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_property(args) -> int:
    logic = _logic(args)
    prop = pair_property(logic, args.given, args.target)
    payload = {"command": "property", "given": args.given,
               "target": args.target, "property": prop.value}
    _emit(args, payload, prop.value)
    if args.expect and args.expect != prop.value:
        print(f"error: property is {prop.value}, expected {args.expect}",
              file=sys.stderr)
        return 1
    return 0


def _cmd_mixture(args) -> int:
    logic = _logic(args)
    states = enumerate_states(logic)
    weights = _read_weights(args.weights)
    probs = convex_mixture(states, weights)
    lines = [f"{a} {_frac(probs[a])}" for a in logic.atoms]
    payload = {"command": "mixture", "exact": True,
               "probabilities": {a: _frac(probs[a]) for a in logic.atoms}}
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_hull(args) -> int:
    logic = _logic(args)
    vset = vertices_from_states(logic, project=_project(args))
    poly = facet_enumeration(vset)
    lines = ["labels: " + " ".join(poly.labels),
             f"dim: {poly.affine_dim}",
             f"vertices: {len(poly.vertices)}"]
    lines += [f"equality: {_eq_text(e)}" for e in poly.equalities]
    lines += [f"facet: {_ineq_text(f)}" for f in poly.facets]
    payload = {"command": "hull", "labels": list(poly.labels),
               "affine_dim": poly.affine_dim,
               "vertex_count": len(poly.vertices),
               "equalities": [{"coeffs": [_frac(c) for c in e.coeffs],
                               "bound": _frac(e.bound), "text": _eq_text(e)}
                              for e in poly.equalities],
               "facets": [{"coeffs": [_frac(c) for c in f.coeffs],
                           "bound": _frac(f.bound), "text": _ineq_text(f)}
                          for f in poly.facets]}
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_member(args) -> int:
    logic = _logic(args)
    point = _read_assignment(args.assign)
    vset = vertices_from_states(logic, project=_project(args))
    res = membership(point, vset)
    if res.inside:
        lines = ["inside: yes",
                 "weights: " + " ".join(_frac(w) for w in res.weights)]
        payload = {"command": "member", "inside": True,
                   "weights": [_frac(w) for w in res.weights],
                   "separator": None, "value": None, "max_over_vertices": None}
    else:
        lines = ["inside: no",
                 f"separator: {_ineq_text(res.separator)}",
                 f"value: {_frac(res.value_at_point)}",
                 f"max_over_vertices: {_frac(res.max_over_vertices)}"]
        payload = {"command": "member", "inside": False, "weights": None,
                   "separator": {"coeffs": [_frac(c) for c in res.separator.coeffs],
                                 "bound": _frac(res.separator.bound),
                                 "text": _ineq_text(res.separator)},
                   "value": _frac(res.value_at_point),
                   "max_over_vertices": _frac(res.max_over_vertices)}
    _emit(args, payload, "\n".join(lines))
    got = "inside" if res.inside else "outside"
    if args.expect and args.expect != got:
        print(f"error: point is {got}, expected {args.expect}", file=sys.stderr)
        return 1
    return 0


def _cmd_axiom_check(args) -> int:
    logic = _logic(args)
    ineq = parse_inequality(args.ineq)
    res = axiom_implied(logic, ineq)
    lines = [f"inequality: {_ineq_text(ineq)}",
             f"implied: {'yes' if res.implied else 'no'}"]
    if res.region_empty:
        lines.append("region: empty")
    if res.optimum is not None:
        lines.append(f"optimum: {_frac(res.optimum)}")
    if res.witness is not None:
        lines.append("witness: " + " ".join(
            f"{a}={_frac(w)}" for a, w in zip(logic.atoms, res.witness)))
    payload = {"command": "axiom-check", "inequality": _ineq_text(ineq),
               "implied": res.implied, "region_empty": res.region_empty,
               "optimum": None if res.optimum is None else _frac(res.optimum),
               "witness": None if res.witness is None
               else {a: _frac(w) for a, w in zip(logic.atoms, res.witness)}}
    _emit(args, payload, "\n".join(lines))
    return 0 if res.implied else 1


def _cmd_realization_check(args) -> int:
    logic = _logic(args)
    r, partial = _realization(args)
    report = check_realization(logic, r, allow_partial=partial)
    lines = [f"dimension: {report.dimension}",
             f"ok: {'yes' if report.ok else 'no'}"]
    for atom, norm in report.norm_failures:
        lines.append(f"bad_norm: {atom} {_flt(norm)}")
    for f in report.context_failures:
        x, y = f.pair
        lines.append(f"bad_context: {f.context_index} {x},{y} inner {_flt(f.value)}")
    for x, y in report.collinear_pairs:
        lines.append(f"collinear: {x} {y}")
    if report.missing_atoms:
        lines.append("missing: " + " ".join(report.missing_atoms))
    if report.skipped_contexts:
        lines.append("skipped_contexts: " +
                     " ".join(str(i) for i in report.skipped_contexts))
    payload = {"command": "realization-check", "ok": report.ok,
               "dimension": report.dimension,
               "norm_failures": [[a, float(n)] for a, n in report.norm_failures],
               "context_failures": [{"context": f.context_index,
                                     "pair": list(f.pair),
                                     "value": float(f.value)}
                                    for f in report.context_failures],
               "collinear_pairs": [list(p) for p in report.collinear_pairs],
               "missing_atoms": list(report.missing_atoms),
               "skipped_contexts": list(report.skipped_contexts)}
    _emit(args, payload, "\n".join(lines))
    return 0 if report.ok else 1


def _cmd_born(args) -> int:
    logic = _logic(args)
    r, _ = _realization(args)
    probs = born_probabilities(logic, r, _psi(args, r))
    atoms = [a for a in logic.atoms if a in probs]
    if args.atom:
        if args.atom not in probs:
            raise _DomainError(f"no probability for atom {args.atom!r}; "
                               "it has no vector in this realization")
        text = _flt(probs[args.atom])
        shown = [args.atom]
    else:
        text = "\n".join(f"{a} {_flt(probs[a])}" for a in atoms)
        shown = atoms
    payload = {"command": "born", "psi": args.psi,
               "probabilities": {a: float(probs[a]) for a in shown}}
    _emit(args, payload, text)
    return 0


def _cmd_violate(args) -> int:
    logic = _logic(args)
    r, _ = _realization(args)
    ineqs = [parse_inequality(e) for e in args.ineq]
    rep = quantum_vs_classical(logic, r, _psi(args, r), ineqs)
    lines = []
    results = []
    for ineq, value, satisfied in rep.evaluations:
        lines += [f"inequality: {_ineq_text(ineq)}",
                  f"value: {_flt(value)}",
                  f"violated: {'no' if satisfied else 'yes'}"]
        results.append({"inequality": _ineq_text(ineq), "value": float(value),
                        "violated": not satisfied})
    payload = {"command": "violate", "psi": args.psi, "results": results,
               "any_violated": bool(rep.violated)}
    _emit(args, payload, "\n".join(lines))
    return 0 if rep.violated else 1


def _cmd_paste(args) -> int:
    pasted = paste_logics(_logic(args), _logic(args, "2"))
    payload = {"command": "paste", "name": pasted.name,
               "atoms": list(pasted.atoms),
               "contexts": [list(c) for c in pasted.contexts],
               "serialized": serialize_logic(pasted)}
    _emit(args, payload, serialize_logic(pasted))
    return 0


def _cmd_certify_vi(args) -> int:
    first, second = _logic(args), _logic(args, "2")
    try:
        cert = certify_value_indefiniteness(first, second, args.given, args.target)
    except ConditionFailed as err:
        payload = {"command": "certify-vi", "indefinite": False,
                   "condition": err.which, "detail": str(err)}
        _emit(args, payload, f"indefinite: no\ncondition: {err.which}")
        print(f"error: {err}", file=sys.stderr)
        return 1
    lines = ["indefinite: yes",
             f"antecedent: {cert.antecedent}",
             f"target: {cert.target}",
             f"pasted_atoms: {len(cert.pasted.atoms)}",
             f"pasted_contexts: {len(cert.pasted.contexts)}",
             f"pasted_states: {cert.pasted_state_count}"]
    payload = {"command": "certify-vi", "indefinite": True,
               "antecedent": cert.antecedent, "target": cert.target,
               "pasted_atoms": len(cert.pasted.atoms),
               "pasted_contexts": len(cert.pasted.contexts),
               "pasted_states": cert.pasted_state_count}
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_urn(args) -> int:
    logic = _logic(args)
    states = enumerate_states(logic)
    if args.weights:
        weights = _read_weights(args.weights)
    else:
        weights = MixtureWeights((Fraction(1, len(states)),) * len(states))
    res = urn_simulate(logic, states, weights, args.context, args.draws,
                       seed=args.seed)
    lines = ["context: " + " ".join(res.context),
             f"draws: {res.draws}",
             f"seed: {res.seed}",
             f"rng: {res.rng}"]
    lines += [f"{a} {res.counts[a]} {_frac(res.frequencies[a])}"
              for a in res.context]
    payload = {"command": "urn", "context_index": res.context_index,
               "context": list(res.context), "draws": res.draws,
               "seed": res.seed, "rng": res.rng,
               "counts": {a: res.counts[a] for a in res.context},
               "frequencies": {a: _frac(res.frequencies[a]) for a in res.context}}
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_catalog(args) -> int:
    lines = []
    entries = []
    for name in catalog_list():
        e = catalog_get(name)
        if e.logic is not None:
            lines.append(f"{name} atoms={len(e.logic.atoms)} "
                         f"contexts={len(e.logic.contexts)} "
                         f"states={e.expected.state_count} "
                         f"realized={'yes' if e.realization else 'no'}")
            entries.append({"name": name, "atoms": len(e.logic.atoms),
                            "contexts": len(e.logic.contexts),
                            "states": e.expected.state_count,
                            "realized": e.realization is not None,
                            "angle_window": None, "notes": e.notes})
        else:
            w = e.angle_window
            lines.append(f"{name} angle_window=[{_flt(w.tifs_min_angle)}, "
                         f"{_flt(w.tits_max_angle)}] "
                         f"feasible={'yes' if w.feasible else 'no'}")
            entries.append({"name": name, "atoms": None, "contexts": None,
                            "states": None, "realized": False,
                            "angle_window": {
                                "tifs_min_angle": w.tifs_min_angle,
                                "tits_max_angle": w.tits_max_angle,
                                "feasible": w.feasible},
                            "notes": e.notes})
    payload = {"command": "catalog", "entries": entries}
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_export_dot(args) -> int:
    logic = _logic(args)
    dot = export_greechie_dot(logic)
    _emit(args, {"command": "export-dot", "dot": dot}, dot)
    return 0


# ---------------------------------------------------------------- wiring

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctxlab",
        description="finite pasted-context logics: states, polytopes, "
                    "realizations, urn models")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="emit a JSON object instead of text")
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, func, help_text, source=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if source:
            _add_source(p)
        p.set_defaults(func=func)
        return p

    cmd("validate", _cmd_validate, "check the context structure rules")

    p = cmd("states", _cmd_states, "enumerate the two-valued states")
    p.add_argument("--count", action="store_true", help="print only the count")

    cmd("classify", _cmd_classify, "count states, test unital and separating")

    p = cmd("property", _cmd_property, "forced relation between two atoms")
    p.add_argument("--given", required=True, metavar="ATOM")
    p.add_argument("--target", required=True, metavar="ATOM")
    p.add_argument("--expect", metavar="PROPERTY",
                   help="exit 1 unless the property matches")

    p = cmd("mixture", _cmd_mixture, "convex mixture of the states")
    p.add_argument("--weights", required=True, metavar="FILE",
                   help="file with one rational weight per state line")

    p = cmd("hull", _cmd_hull, "facets of the correlation polytope")
    p.add_argument("--project", metavar="A,B,...",
                   help="project onto these atoms first")

    p = cmd("member", _cmd_member, "test a point against the polytope")
    p.add_argument("--assign", required=True, metavar="FILE",
                   help="file with 'atom value' lines")
    p.add_argument("--project", metavar="A,B,...")
    p.add_argument("--expect", choices=["inside", "outside"],
                   help="exit 1 unless the result matches")

    p = cmd("axiom-check", _cmd_axiom_check,
            "is the inequality implied by the measure axioms")
    p.add_argument("--ineq", required=True, metavar="EXPR",
                   help="inequality such as '1 + 4 + 7 <= 1'")

    p = cmd("realization-check", _cmd_realization_check,
            "verify unit norms and context orthogonality")
    p.add_argument("--vectors", metavar="FILE")

    p = cmd("born", _cmd_born, "projection probabilities for a state vector")
    p.add_argument("--vectors", metavar="FILE")
    p.add_argument("--psi", required=True, metavar="ATOM|TOKENS",
                   help="atom id or space-separated component tokens")
    p.add_argument("--atom", metavar="ATOM", help="print one probability")

    p = cmd("violate", _cmd_violate,
            "evaluate classical inequalities on Born probabilities")
    p.add_argument("--vectors", metavar="FILE")
    p.add_argument("--psi", required=True, metavar="ATOM|TOKENS")
    p.add_argument("--ineq", required=True, action="append", metavar="EXPR",
                   help="repeatable; exit 0 iff some inequality is violated")

    p = cmd("paste", _cmd_paste, "paste two logics along shared atoms")
    _add_source(p, second=True)

    p = cmd("certify-vi", _cmd_certify_vi,
            "certify that the antecedent can hold no consistent value")
    _add_source(p, second=True)
    p.add_argument("--given", required=True, metavar="ATOM")
    p.add_argument("--target", required=True, metavar="ATOM")

    p = cmd("urn", _cmd_urn, "simulate urn draws for one context")
    p.add_argument("--context", required=True, type=int, metavar="INDEX")
    p.add_argument("--draws", type=int, default=10000, metavar="N")
    p.add_argument("--seed", required=True, type=int, metavar="SEED")
    p.add_argument("--weights", metavar="FILE",
                   help="rational weight per state; default uniform")

    cmd("catalog", _cmd_catalog, "list the built-in fixtures", source=False)

    cmd("export-dot", _cmd_export_dot, "hypergraph as Graphviz DOT")

    return parser


def _thread_cap() -> None:
    raw = os.environ.get("CTXLAB_THREADS")
    if raw is None:
        return
    try:
        if int(raw) < 1:
            raise ValueError
    except ValueError:
        print(f"warning: ignoring CTXLAB_THREADS={raw!r} (want a positive "
              "integer)", file=sys.stderr)
    # single-process implementation: the cap is accepted but has no effect


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _thread_cap()
    try:
        return args.func(args)
    except (_DomainError, LogicError, RealizationError, UnknownEntry,
            UnknownContext, MissingCoordinate, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
