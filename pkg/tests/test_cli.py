"""End-to-end tests for the command-line interface."""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

import jsonschema
import pytest

from ctxlab.cli import main
from ctxlab.logic import parse_logic
from ctxlab.polytope import parse_inequality

from helpers import DATA


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    payload = json.loads(out)
    schema_name = payload.get("command", argv[0])
    text = (resources.files("ctxlab") / "schemas" / f"{schema_name}.json").read_text()
    jsonschema.validate(payload, json.loads(text))
    return code, payload, err


@pytest.fixture
def uniform11(tmp_path):
    path = tmp_path / "u.weights"
    path.write_text("1/11\n" * 11)
    return str(path)


@pytest.fixture
def exotic(tmp_path):
    path = tmp_path / "exotic.assign"
    path.write_text("".join(f"{a} 1/2\n" for a in ("1", "3", "5", "7", "9")))
    return str(path)


class TestPinnedOutputs:

    def test_states_count(self, capsys):
        code, out, _ = run(capsys, "states", "--catalog", "pentagon", "--count")
        assert (code, out) == (0, "11\n")

    def test_property(self, capsys):
        code, out, _ = run(capsys, "property", "--catalog", "specker_bug",
                           "--given", "a", "--target", "b")
        assert (code, out) == (0, "TrueImpliesFalse\n")

    def test_born_single_atom(self, capsys):
        code, out, _ = run(capsys, "born", "--catalog", "specker_bug",
                           "--psi", "a", "--atom", "b")
        assert (code, out) == (0, "0.111111111111\n")


class TestExitCodes:

    def test_usage_errors_exit_2(self, capsys):
        for argv in ([],
                     ["states"],
                     ["states", "--catalog", "pentagon", "--logic", "x"],
                     ["urn", "--catalog", "pentagon", "--context", "0"]):
            with pytest.raises(SystemExit) as exc:
                main(argv)
            assert exc.value.code == 2
            capsys.readouterr()

    def test_unknown_catalog_entry(self, capsys):
        code, _, err = run(capsys, "states", "--catalog", "nosuch")
        assert code == 1
        assert err.startswith("error:")

    def test_unknown_atom_is_domain_error(self, capsys):
        code, _, err = run(capsys, "property", "--catalog", "pentagon",
                           "--given", "zz", "--target", "1")
        assert code == 1
        assert "zz" in err

    def test_structureless_entry_refused(self, capsys):
        code, _, err = run(capsys, "states", "--catalog", "impossible_fig6")
        assert code == 1
        assert "no logic" in err

    def test_invalid_logic_exits_1(self, capsys, tmp_path):
        bad = tmp_path / "bad.logic"
        bad.write_text("atom lonely\ncontext x y z\n")
        code, out, _ = run(capsys, "validate", "--logic", str(bad))
        assert code == 1
        assert "ok: no" in out
        assert "unused-atom" in out

    def test_unparseable_logic_exits_1(self, capsys, tmp_path):
        bad = tmp_path / "dup.logic"
        bad.write_text("context x y z\ncontext x y z\n")
        code, _, err = run(capsys, "validate", "--logic", str(bad))
        assert code == 1
        assert "duplicate context" in err

    def test_expectation_mismatch(self, capsys, uniform11):
        code, out, err = run(capsys, "property", "--catalog", "pentagon",
                             "--given", "1", "--target", "3",
                             "--expect", "TrueImpliesTrue")
        assert code == 1
        assert "expected TrueImpliesTrue" in err

    def test_member_expect_inside_fails_on_exotic(self, capsys, exotic):
        code, out, err = run(capsys, "member", "--catalog", "pentagon",
                             "--assign", exotic, "--project", "1,3,5,7,9",
                             "--expect", "inside")
        assert code == 1
        assert "inside: no" in out

    def test_axiom_check_exit_reflects_implication(self, capsys):
        code, _, _ = run(capsys, "axiom-check", "--catalog", "pentagon",
                         "--ineq", "1 + 2 + 3 <= 1")
        assert code == 0
        code, _, _ = run(capsys, "axiom-check", "--catalog", "pentagon",
                         "--ineq", "1 + 3 + 5 + 7 + 9 <= 2")
        assert code == 1

    def test_violate_exit_when_satisfied(self, capsys):
        code, out, _ = run(capsys, "violate", "--catalog", "triangle4d",
                           "--psi", "4", "--ineq", "1 + 2 + 3 <= 1")
        assert code == 1
        assert "violated: no" in out

    def test_missing_coordinate_is_domain_error(self, capsys, tmp_path):
        path = tmp_path / "short.assign"
        path.write_text("1 1/2\n")
        code, _, err = run(capsys, "member", "--catalog", "pentagon",
                           "--assign", str(path), "--project", "1,3")
        assert code == 1
        assert err.startswith("error:")


class TestTextOutputs:

    def test_classify_lists_witnesses(self, capsys):
        code, out, _ = run(capsys, "classify", "--catalog", "indefinite_fig5c")
        assert code == 0
        assert "count: 8" in out
        assert "non_unital: a 2 13 15 16 17 25 27" in out
        assert "separating: no" in out

    def test_mixture_exact_fractions(self, capsys, uniform11):
        code, out, _ = run(capsys, "mixture", "--catalog", "pentagon",
                           "--weights", uniform11)
        assert code == 0
        assert out.splitlines()[0] == "1 3/11"
        assert out.splitlines()[1] == "2 5/11"

    def test_hull_facets_round_trip(self, capsys):
        code, out, _ = run(capsys, "hull", "--catalog", "pentagon",
                           "--project", "1,3,5,7,9")
        assert code == 0
        facet_lines = [l.split(": ", 1)[1] for l in out.splitlines()
                       if l.startswith("facet:")]
        assert len(facet_lines) == 11
        reparsed = [parse_inequality(l) for l in facet_lines]
        assert any(i.bound == 2 and set(i.labels) == {"1", "3", "5", "7", "9"}
                   for i in reparsed)

    def test_member_outside_report(self, capsys, exotic):
        code, out, _ = run(capsys, "member", "--catalog", "pentagon",
                           "--assign", exotic, "--project", "1,3,5,7,9",
                           "--expect", "outside")
        assert code == 0
        assert "separator: 1 + 3 + 5 + 7 + 9 <= 2" in out
        assert "value: 5/2" in out
        assert "max_over_vertices: 2" in out

    def test_member_inside_gives_weights(self, capsys, tmp_path):
        lines = ["1 3/11", "2 5/11", "3 3/11", "4 5/11", "5 3/11",
                 "6 5/11", "7 3/11", "8 5/11", "9 3/11", "10 5/11"]
        path = tmp_path / "mix.assign"
        path.write_text("\n".join(lines) + "\n")
        code, out, _ = run(capsys, "member", "--catalog", "pentagon",
                           "--assign", str(path), "--expect", "inside")
        assert code == 0
        weights = [Fraction(w) for w in
                   out.splitlines()[1].split(": ", 1)[1].split()]
        assert sum(weights) == 1

    def test_paste_round_trips(self, capsys):
        code, out, _ = run(capsys, "paste", "--catalog", "tifs_fig5a",
                           "--catalog2", "tits_fig5b")
        assert code == 0
        pasted = parse_logic(out)
        assert len(pasted.atoms) == 37
        assert len(pasted.contexts) == 26

    def test_certify_vi_success(self, capsys):
        code, out, _ = run(capsys, "certify-vi", "--catalog", "tifs_fig5a",
                           "--catalog2", "tits_fig5b",
                           "--given", "a", "--target", "b")
        assert code == 0
        assert "indefinite: yes" in out
        assert "pasted_states: 8" in out

    def test_certify_vi_failure(self, capsys):
        code, out, err = run(capsys, "certify-vi", "--catalog", "tits_fig5b",
                             "--catalog2", "tifs_fig5a",
                             "--given", "a", "--target", "b")
        assert code == 1
        assert "indefinite: no" in out
        assert err.startswith("error:")

    def test_urn_report(self, capsys):
        code, out, _ = run(capsys, "urn", "--catalog", "pentagon",
                           "--context", "0", "--draws", "20", "--seed", "5")
        assert code == 0
        assert "rng: mt19937-u64" in out
        assert "seed: 5" in out
        rows = [l.split() for l in out.splitlines()[4:]]
        assert [r[0] for r in rows] == ["1", "2", "3"]
        assert sum(int(r[1]) for r in rows) == 20

    def test_realization_check_partial_catalog(self, capsys):
        code, out, _ = run(capsys, "realization-check", "--catalog",
                           "specker_bug")
        assert code == 0
        assert "ok: yes" in out
        assert "skipped_contexts: 0 1 2 3 4 5 6" in out

    def test_realization_check_user_file(self, capsys):
        code, out, _ = run(capsys, "realization-check", "--catalog",
                           "triangle4d", "--vectors",
                           str(DATA / "triangle4d.vec"))
        assert code == 0
        assert "ok: yes" in out

    def test_born_vector_psi(self, capsys):
        code, out, _ = run(capsys, "born", "--catalog", "triangle4d",
                           "--psi", "1 0 0 0")
        assert code == 0
        assert len(out.splitlines()) == 9

    def test_export_dot(self, capsys):
        code, out, _ = run(capsys, "export-dot", "--catalog", "triangle4d")
        assert code == 0
        assert out.startswith("graph ")
        assert '"1"' in out


class TestJsonOutputs:

    def test_all_commands_validate_against_schemas(self, capsys, tmp_path,
                                                   uniform11, exotic):
        mix = tmp_path / "mix.assign"
        mix.write_text("\n".join(
            ["1 3/11", "2 5/11", "3 3/11", "4 5/11", "5 3/11",
             "6 5/11", "7 3/11", "8 5/11", "9 3/11", "10 5/11"]) + "\n")
        runs = [
            (0, ["validate", "--catalog", "pentagon"]),
            (0, ["states", "--catalog", "pentagon"]),
            (0, ["classify", "--catalog", "indefinite_fig5c"]),
            (0, ["property", "--catalog", "specker_bug",
                 "--given", "a", "--target", "b"]),
            (0, ["mixture", "--catalog", "pentagon", "--weights", uniform11]),
            (0, ["hull", "--catalog", "pentagon", "--project", "1,3,5,7,9"]),
            (0, ["member", "--catalog", "pentagon", "--assign", exotic,
                 "--project", "1,3,5,7,9"]),
            (0, ["member", "--catalog", "pentagon", "--assign", str(mix)]),
            (1, ["axiom-check", "--catalog", "pentagon",
                 "--ineq", "1 + 3 + 5 + 7 + 9 <= 2"]),
            (0, ["axiom-check", "--catalog", "pentagon",
                 "--ineq", "1 + 2 + 3 <= 1"]),
            (0, ["realization-check", "--catalog", "specker_bug"]),
            (0, ["born", "--catalog", "specker_bug", "--psi", "a"]),
            (0, ["violate", "--catalog", "specker_bug", "--psi", "a",
                 "--ineq", "a + b <= 1"]),
            (0, ["paste", "--catalog", "tifs_fig5a",
                 "--catalog2", "tits_fig5b"]),
            (0, ["certify-vi", "--catalog", "tifs_fig5a",
                 "--catalog2", "tits_fig5b", "--given", "a", "--target", "b"]),
            (1, ["certify-vi", "--catalog", "tits_fig5b",
                 "--catalog2", "tifs_fig5a", "--given", "a", "--target", "b"]),
            (0, ["urn", "--catalog", "pentagon", "--context", "0",
                 "--draws", "50", "--seed", "9"]),
            (0, ["catalog"]),
            (0, ["export-dot", "--catalog", "triangle4d"]),
        ]
        for expected_code, argv in runs:
            code, payload, _ = run_json(capsys, *argv)
            assert code == expected_code, argv
            assert isinstance(payload, dict), argv

    def test_axiom_check_payload_content(self, capsys):
        code, payload, _ = run_json(capsys, "axiom-check", "--catalog",
                                    "pentagon", "--ineq",
                                    "1 + 3 + 5 + 7 + 9 <= 2")
        assert code == 1
        assert payload["implied"] is False
        assert payload["optimum"] == "5/2"
        assert payload["witness"]["1"] == "1/2"

    def test_urn_payload_content(self, capsys):
        code, payload, _ = run_json(capsys, "urn", "--catalog", "pentagon",
                                    "--context", "0", "--draws", "50",
                                    "--seed", "9")
        assert code == 0
        assert payload["rng"] == "mt19937-u64"
        assert sum(payload["counts"].values()) == 50

    def test_catalog_payload_content(self, capsys):
        code, payload, _ = run_json(capsys, "catalog")
        assert code == 0
        assert len(payload["entries"]) == 10
        last = payload["entries"][-1]
        assert last["name"] == "impossible_fig6"
        assert last["angle_window"]["feasible"] is False


class TestDeterminism:

    @pytest.mark.parametrize("argv", [
        ["catalog"],
        ["hull", "--catalog", "pentagon", "--project", "1,3,5,7,9"],
        ["urn", "--catalog", "pentagon", "--context", "1", "--draws", "200",
         "--seed", "77"],
        ["states", "--catalog", "specker_bug"],
    ])
    def test_reruns_byte_identical(self, capsys, argv):
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first == second


class TestThreadCap:

    def test_garbage_value_warns(self, capsys, monkeypatch):
        monkeypatch.setenv("CTXLAB_THREADS", "many")
        code, out, err = run(capsys, "states", "--catalog", "pentagon",
                             "--count")
        assert code == 0
        assert out == "11\n"
        assert "CTXLAB_THREADS" in err

    def test_valid_value_silent(self, capsys, monkeypatch):
        monkeypatch.setenv("CTXLAB_THREADS", "4")
        code, _, err = run(capsys, "states", "--catalog", "pentagon",
                           "--count")
        assert code == 0
        assert err == ""
