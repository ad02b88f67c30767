"""Command-line interface tests.

Each subcommand is exercised through `main(argv)` against the bundled
data files; expected values reuse the oracles established in the module
test suites (flex tables, stratum labels, crossing counts, the
permutation of the coordinate-circle loop, the invariant chain).
"""

import json
from importlib import resources

import numpy as np
import pytest

from cubicflex.cli import main
from cubicflex.forms import CubicForm, fermat_cubic, triangle_cubic
from cubicflex.track import Line, Loop

DATA = resources.files("cubicflex") / "data"


def data_path(name):
    return str(DATA / f"{name}.json")


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, argv):
    code, out = run(capsys, argv)
    assert code == 0, out
    return json.loads(out)


STRATA = {"fermat": "Smooth", "triangle": "B31", "nodal": "B1",
          "conic_line": "B21", "cuspidal": "B22", "conic_tangent": "B32",
          "concurrent": "B4", "double_line": "B5", "triple_line": "B7"}


class TestClassify:
    @pytest.mark.parametrize("name,want", sorted(STRATA.items()))
    def test_bundled_cubics(self, capsys, name, want):
        doc = run_json(capsys, ["classify", data_path(name), "--json"])
        assert doc["stratum"] == want


class TestInflect:
    def test_fermat_has_nine_simple_points(self, capsys):
        doc = run_json(capsys, ["inflect", data_path("fermat"), "--json"])
        assert len(doc["points"]) == 9
        assert all(p["multiplicity"] == 1 for p in doc["points"])

    def test_cuspidal_multiplicities(self, capsys):
        doc = run_json(capsys, ["inflect", data_path("cuspidal"), "--json"])
        mults = sorted(p["multiplicity"] for p in doc["points"])
        assert mults == [1, 8]

    def test_truncated_file_is_schema_error(self, capsys, tmp_path):
        doc = json.load(open(data_path("fermat")))
        doc["coeffs"] = doc["coeffs"][:9]
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(doc))
        code = main(["inflect", str(bad)])
        assert code == 2


class TestMonodromy:
    def test_loop_c1(self, capsys):
        doc = run_json(capsys, ["monodromy", data_path("loop_c1"),
                                "--labels", "hesse", "--json"])
        assert doc["perm"] == "(2,8,5)(3,6,9)"
        assert doc["max_residual"] < 1e-8

    def test_cusp_circle(self, capsys):
        doc = run_json(capsys, ["monodromy", data_path("cusp_circle"),
                                "--json"])
        assert doc["cycle_type"] == [6, 2, 1]

    def test_deterministic_output(self, capsys):
        argv = ["monodromy", data_path("loop_c2"), "--labels", "hesse",
                "--json"]
        _, first = run(capsys, argv)
        _, second = run(capsys, argv)
        assert first == second

    def test_singular_basepoint_is_numerical_failure(self, capsys, tmp_path):
        t, f = triangle_cubic(), fermat_cubic()
        loop = Loop(t, (Line(t, f), Line(f, t)))
        path = tmp_path / "bad_loop.json"
        path.write_text(json.dumps(loop.to_json_dict()))
        code = main(["monodromy", str(path)])
        assert code == 3


class TestGroup:
    def test_hessian_generators(self, capsys):
        doc = run_json(capsys, ["group", "(1,2,4)(5,6,8)(3,9,7)",
                                "(4,5,6)(7,9,8)", "--json"])
        assert doc["order"] == 216
        assert doc["transitivity"] == {"1": True, "2": True, "3": False}
        assert doc["orbits"] == [list(range(1, 10))]
        assert set(doc["stabilizer_orders"].values()) == {24}

    def test_point_stabilizer_pair(self, capsys):
        doc = run_json(capsys, ["group", "(4,5,6)(7,9,8)",
                                "(2,8,5)(3,6,9)", "--json"])
        assert doc["order"] == 24
        assert doc["orbits"] == [[1], list(range(2, 10))]

    def test_loop_file_as_generator(self, capsys):
        doc = run_json(capsys, ["group", data_path("loop_c1"), "--json"])
        assert doc["order"] == 3

    def test_empty_is_usage_error(self, capsys):
        assert main(["group"]) == 2


class TestPencil:
    def test_hesse_pencil(self, capsys):
        doc = run_json(capsys, ["pencil", data_path("fermat"),
                                data_path("triangle"), "--json"])
        assert doc["total_multiplicity"] == 12
        assert len(doc["crossings"]) == 4
        assert {c["stratum"] for c in doc["crossings"]} == {"B31"}
        assert {c["multiplicity"] for c in doc["crossings"]} == {3}


class TestCusps:
    def test_random_net_has_24_members(self, capsys, tmp_path):
        rng = np.random.default_rng(3)
        paths = []
        for k in range(3):
            f = CubicForm(rng.standard_normal(10)
                          + 1j * rng.standard_normal(10))
            p = tmp_path / f"net{k}.json"
            p.write_text(json.dumps(f.to_json_dict()))
            paths.append(str(p))
        doc = run_json(capsys, ["cusps", *paths, "--starts", "400",
                                "--json"])
        assert doc["count"] == 24
        assert len(doc["members"]) == 24


class TestInvariants:
    def test_chain(self, capsys):
        doc = run_json(capsys, ["invariants", "--json"])
        assert doc["surface"] == {"k_squared": 18, "euler": 90, "chi": 9,
                                  "genus_ramification": 31}
        assert doc["branch_curve"]["genus"] == 10
        assert doc["dual_curve"]["genus"] == 10


class TestPaperVerify:
    def test_invariants_suite_report(self, capsys, tmp_path):
        out = tmp_path / "report.jsonl"
        code, text = run(capsys, ["paper-verify", "--suite", "invariants",
                                  "--out", str(out)])
        assert code == 0
        assert "6/6 checks passed" in text
        records = [json.loads(line) for line in out.read_text().splitlines()]
        assert len(records) == 6
        assert all(r["passed"] for r in records)
        assert all(r["suite"] == "invariants" for r in records)

    def test_group_suite_passes(self, capsys):
        code, text = run(capsys, ["paper-verify", "--suite", "group"])
        assert code == 0
        assert "16/16 checks passed" in text

    def test_failed_suite_exits_4(self, capsys, monkeypatch):
        from cubicflex import cli
        from cubicflex.verify import RunRecord
        bad = RunRecord(suite="group", name="synthetic", passed=False,
                        expected="1", observed="2")
        monkeypatch.setattr(cli, "run_suite", lambda *a, **k: [bad])
        assert main(["paper-verify", "--suite", "group"]) == 4


class TestConfigPlumbing:
    def test_print_config_applies_overrides(self, capsys, tmp_path):
        cfgfile = tmp_path / "cfg.json"
        cfgfile.write_text(json.dumps(
            {"tracking": {"initial_step": 0.005}, "delta": 0.1}))
        doc = run_json(capsys, ["paper-verify", "--suite", "group",
                                "--config", str(cfgfile), "--seed", "5",
                                "--tol", "1e-12", "--print-config"])
        assert doc["delta"] == 0.1
        assert doc["seed"] == 5
        assert doc["tracking"]["initial_step"] == 0.005
        assert doc["tracking"]["newton_tol"] == 1e-12
        # untouched defaults survive
        assert doc["tracking"]["min_step"] == 1e-7
