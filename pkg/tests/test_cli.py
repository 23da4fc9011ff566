import json

from click.testing import CliRunner

from stsramsey import bose
from stsramsey.cli import cli
from stsramsey.io import read_system


def run(*args):
    return CliRunner().invoke(cli, list(args))


class TestGen:
    def test_bose27_file(self, tmp_path):
        out = tmp_path / "b27.sts"
        res = run("gen", "--construction", "bose", "--n", "27", "-o", str(out))
        assert res.exit_code == 0
        assert read_system(out).m == 117

    def test_skolem7_stdout(self):
        res = run("gen", "--construction", "skolem", "--n", "7")
        assert res.exit_code == 0
        body = [ln for ln in res.stdout.splitlines() if ln and not ln.startswith("#")]
        assert body[0] == "7 7" and len(body) == 8

    def test_bad_order_exit_2(self):
        res = run("gen", "--construction", "bose", "--n", "13")
        assert res.exit_code == 2

    def test_round_trip_matches_in_memory(self, tmp_path):
        out = tmp_path / "b15.sts"
        run("gen", "--construction", "bose", "--n", "15", "-o", str(out))
        assert read_system(out) == bose(15).base

    def test_random_quasigroup_variant(self, tmp_path):
        out = tmp_path / "b15r.sts"
        res = run("gen", "--construction", "bose", "--n", "15", "-o", str(out),
                  "--quasigroup", "random", "--qseed", "5")
        assert res.exit_code == 0
        system = read_system(out)
        assert system.m == 35 and system != bose(15).base

    def test_random_quasigroup_rejected_for_skolem(self):
        res = run("gen", "--construction", "skolem", "--n", "13",
                  "--quasigroup", "random")
        assert res.exit_code == 2


class TestAnalyze:
    def test_fano_all_params(self, tmp_path):
        path = tmp_path / "f.sts"
        run("gen", "--construction", "fano", "-o", str(path))
        res = run("analyze", "-i", str(path), "--param", "all")
        assert res.exit_code == 0
        doc = json.loads(res.stdout)
        assert doc["schema"] == "sts-report/1"
        p = doc["parameters"]
        assert p["alpha_star3"]["value"] == 1 and p["alpha_star3"]["exact"]
        assert p["mc3"]["value"] == 6 and p["mc3"]["exact"]
        assert all(v["pass"] for v in doc["verdicts"])

    def test_s9_mc3_only(self, tmp_path):
        path = tmp_path / "s9.sts"
        run("gen", "--construction", "s9", "-o", str(path))
        res = run("analyze", "-i", str(path), "--param", "mc3")
        doc = json.loads(res.stdout)
        assert doc["parameters"]["mc3"]["value"] == 7

    def test_construction_tag_detected(self, tmp_path):
        path = tmp_path / "b15.sts"
        run("gen", "--construction", "bose", "--n", "15", "-o", str(path))
        doc = json.loads(run("analyze", "-i", str(path), "--param", "alpha").stdout)
        assert doc["input"]["construction"] == "bose"
        path2 = tmp_path / "f.sts"
        run("gen", "--construction", "fano", "-o", str(path2))
        doc2 = json.loads(run("analyze", "-i", str(path2), "--param", "alpha").stdout)
        assert doc2["input"]["construction"] is None

    def test_budgeted_b27_uses_coloring_bound(self, tmp_path):
        path = tmp_path / "b27.sts"
        run("gen", "--construction", "bose", "--n", "27", "-o", str(path))
        res = run("analyze", "-i", str(path), "--param", "mc3",
                  "--max-nodes", "5000", "--max-seconds", "5")
        doc = json.loads(res.stdout)
        mc3 = doc["parameters"]["mc3"]
        assert not mc3["exact"]
        assert mc3["value"] <= 21
        assert mc3["upper_bound_source"] == "bose_coloring"

    def test_verdicts_recompute(self, tmp_path):
        path = tmp_path / "s9.sts"
        run("gen", "--construction", "s9", "-o", str(path))
        doc = json.loads(run("analyze", "-i", str(path)).stdout)
        n = doc["input"]["n"]
        a = doc["parameters"]["alpha_star3"]["value"]
        mc = doc["parameters"]["mc3"]["value"]
        expected = {
            "alpha_star3_upper": a <= n // 3 - 1,
            "mc3_gyarfas_lower": mc >= -(-2 * n // 3) + 1,
            "mc3_hole_chain": n - 2 * a <= mc <= n - a,
            "mc3_le_n_minus_hole": mc <= n - a,
        }
        got = {v["name"]: v["pass"] for v in doc["verdicts"]}
        assert got == expected

    def test_unreadable_input_exit_3(self):
        res = run("analyze", "-i", "/nonexistent/x.sts")
        assert res.exit_code == 3

    def test_invalid_file_exit_3(self, tmp_path):
        path = tmp_path / "bad.sts"
        path.write_text("not a system\n")
        res = run("analyze", "-i", str(path))
        assert res.exit_code == 3

    def test_degenerate_single_triple(self, tmp_path):
        path = tmp_path / "n3.sts"
        path.write_text("3 1\n0 1 2\n")
        res = run("analyze", "-i", str(path))
        assert res.exit_code == 0
        doc = json.loads(res.stdout)
        assert doc["input"]["degenerate"] is True
        p = doc["parameters"]
        assert p["alpha"]["value"] == 2
        assert p["alpha_star3"]["value"] == 0
        assert p["mc3"]["value"] == 3
        assert doc["verdicts"] == []


class TestColor:
    def test_s9_hole_scheme(self, tmp_path):
        path = tmp_path / "s9.sts"
        run("gen", "--construction", "s9", "-o", str(path))
        out = tmp_path / "s9.cols"
        res = run("color", "-i", str(path), "--scheme", "hole", "-o", str(out))
        assert res.exit_code == 0
        doc = json.loads(res.stdout)
        assert doc["max_component"]["size"] == 7
        assert out.read_text().startswith("colors 3\n")

    def test_b27_bose_scheme(self, tmp_path):
        path = tmp_path / "b27.sts"
        run("gen", "--construction", "bose", "--n", "27", "-o", str(path))
        res = run("color", "-i", str(path), "--scheme", "bose")
        doc = json.loads(res.stdout)
        assert all(pc["span"] <= 21 for pc in doc["per_color"])
        assert doc["guaranteed_bound"] == 21

    def test_sk19_skolem_scheme(self, tmp_path):
        path = tmp_path / "sk19.sts"
        run("gen", "--construction", "skolem", "--n", "19", "-o", str(path))
        res = run("color", "-i", str(path), "--scheme", "skolem")
        doc = json.loads(res.stdout)
        assert all(pc["span"] <= 14 for pc in doc["per_color"])
        assert doc["guaranteed_bound"] == 14

    def test_fano_bose_scheme_exit_4(self, tmp_path):
        path = tmp_path / "f.sts"
        run("gen", "--construction", "fano", "-o", str(path))
        res = run("color", "-i", str(path), "--scheme", "bose")
        assert res.exit_code == 4

    def test_hole_file_input(self, tmp_path):
        path = tmp_path / "s9.sts"
        run("gen", "--construction", "s9", "-o", str(path))
        hole_path = tmp_path / "h.json"
        hole_path.write_text('{"k": 3, "a": 1, "parts": [[0], [1], [3]]}\n')
        # {0},{1},{3}: line (0,1,2)? 0,1 share a line with 2 -> must avoid one
        res = run("color", "-i", str(path), "--scheme", "hole",
                  "--hole-file", str(hole_path))
        # the specific parts may or may not form a hole; accept either exit 0
        # with a bound or exit 4 if the certificate is invalid
        assert res.exit_code in (0, 4)

    def test_bicolor_scheme_on_s9(self, tmp_path):
        path = tmp_path / "s9.sts"
        run("gen", "--construction", "s9", "-o", str(path))
        res = run("color", "-i", str(path), "--scheme", "bicolor")
        assert res.exit_code == 0
        doc = json.loads(res.stdout)
        assert doc["guaranteed_bound"] == 8


class TestRandomCmd:
    def test_triangle_removal_file(self, tmp_path):
        out = tmp_path / "tr.sts"
        res = run("random", "--process", "triangle-removal", "--n", "19",
                  "--m", "28", "--seed", "7", "-o", str(out))
        assert res.exit_code == 0
        doc = json.loads(res.stdout)
        assert doc["linear"] and not doc["stuck"]
        assert read_system(out).m == 28

    def test_missing_p_exit_5(self):
        res = run("random", "--process", "binomial", "--n", "10", "--seed", "1")
        assert res.exit_code == 5

    def test_bad_m_exit_5(self):
        res = run("random", "--process", "triangle-removal", "--n", "7",
                  "--m", "99", "--seed", "1")
        assert res.exit_code == 5

    def test_deterministic_stdout(self):
        a = run("random", "--process", "linearized", "--n", "15", "--p", "0.05",
                "--seed", "3")
        b = run("random", "--process", "linearized", "--n", "15", "--p", "0.05",
                "--seed", "3")
        assert a.stdout == b.stdout

    def test_sts_process(self, tmp_path):
        out = tmp_path / "r13.sts"
        res = run("random", "--process", "sts", "--n", "13", "--seed", "11",
                  "-o", str(out))
        assert res.exit_code == 0
        assert json.loads(res.stdout)["steiner"]
        assert read_system(out).m == 26


class TestExperimentCmd:
    def test_discrepancy_rows_and_determinism(self, tmp_path):
        csv1 = tmp_path / "d1.csv"
        csv2 = tmp_path / "d2.csv"
        args = ["experiment", "discrepancy", "--n", "13", "--samples", "3",
                "--seed", "1"]
        res1 = run(*args, "--csv", str(csv1))
        res2 = run(*args, "--csv", str(csv2))
        assert res1.exit_code == 0
        assert csv1.read_bytes() == csv2.read_bytes()
        lines = csv1.read_text().splitlines()
        assert len(lines) == 1 + 6  # header + 2 rows per sample

    def test_cdr_table(self):
        res = run("experiment", "cdr", "--kmax", "12")
        doc = json.loads(res.stdout)  # exact values travel as decimal strings
        assert doc["terms"][1]["M"] == "2160" and doc["terms"][1]["N"] == "2241"
        assert len(doc["terms"]) == 13
        assert len(doc["terms"][12]["M"]) > 1000  # thousands of digits, exact

    def test_bad_order_exit_5(self, tmp_path):
        res = run("experiment", "discrepancy", "--n", "8", "--samples", "1",
                  "--seed", "1", "--csv", str(tmp_path / "x.csv"))
        assert res.exit_code == 5
