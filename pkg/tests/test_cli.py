import contextlib
import io
import json

from nilclean.cli import main


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestClassify:
    def test_z5_text(self):
        code, out, _ = run_cli("classify", "Z5")
        assert code == 0
        assert "wsnc   true" in out
        assert "s2nc   false (witness 3)" in out
        assert "swnc   false (witness 2)" in out
        assert "oracle agreement: yes" in out
        assert "maj: c=1 k=1" in out

    def test_z5xz5_not_wsnc(self):
        code, out, _ = run_cli("classify", "Z5 x Z5")
        assert code == 0
        assert "wsnc   false" in out
        assert "maj: none" in out

    def test_z1_all_classes(self):
        code, out, _ = run_cli("classify", "Z1", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert all(payload["verdicts"][k]["holds"] for k in ("snc", "s2nc", "swnc", "wsnc"))

    def test_json_structure(self):
        code, out, _ = run_cli("classify", "Z6", "--format", "json")
        payload = json.loads(out)
        assert payload["ring"] == "Z6"
        assert payload["counts"]["idempotents"] == 4
        assert payload["criteria"]["s2nc"]["holds"] is True
        assert payload["oracles_agree"] is True

    def test_parse_error_exit_2(self):
        code, _, err = run_cli("classify", "Q5")
        assert code == 2
        assert "parse error" in err

    def test_cap_exit_3(self):
        code, _, err = run_cli("classify", "M3(Z100)")
        assert code == 3
        assert "resource limit" in err

    def test_env_cap_override(self, monkeypatch):
        monkeypatch.setenv("NILCLEAN_CAP", "10")
        code, _, err = run_cli("classify", "Z30")
        assert code == 3

    def test_budget_exit_3(self):
        code, _, err = run_cli("classify", "Z30", "--budget", "1")
        assert code == 3

    def test_validation_flags(self):
        for mode in ("full", "sampled", "off"):
            code, out, _ = run_cli("classify", "Z6", "--validate", mode)
            assert code == 0 and "wsnc   true" in out
        # past the materialization limit classification is unavailable;
        # the boundary surfaces as an input error, not a crash
        code, _, err = run_cli("maj", "Z2000", "--validate", "sampled")
        assert code == 2
        assert "materialized tables" in err


class TestCertify:
    def test_z5_stream(self):
        code, out, _ = run_cli("certify", "Z5")
        lines = [json.loads(l) for l in out.splitlines()]
        assert [l["element"] for l in lines] == [0, 1, 2, 3, 4]
        assert lines[3] == {"ring": "Z5", "element": 3, "sign_e": -1,
                            "sign_f": -1, "e": 1, "f": 1, "n": 0,
                            "nil_index": 1, "class": "wsnc"}

    def test_z2_element_zero(self):
        _, out, _ = run_cli("certify", "Z2")
        first = json.loads(out.splitlines()[0])
        assert (first["sign_e"], first["sign_f"], first["e"], first["f"], first["n"]) == \
            (1, 1, 0, 0, 0)

    def test_failure_records(self):
        _, out, _ = run_cli("certify", "Z5", "--class", "swnc")
        lines = [json.loads(l) for l in out.splitlines()]
        failures = [l for l in lines if "error" in l]
        assert [l["element"] for l in failures] == [2, 3]
        assert all(l["error"] == "no-certificate" for l in failures)

    def test_deterministic_bytes(self):
        a = run_cli("certify", "T2(Z4)")
        b = run_cli("certify", "T2(Z4)")
        assert a == b

    def test_classify_certify_agree(self):
        for expr in ("Z5", "Z7", "M2(Z2)", "T2(Z2)"):
            _, cls_out, _ = run_cli("classify", expr, "--format", "json")
            wsnc = json.loads(cls_out)["verdicts"]["wsnc"]["holds"]
            _, cert_out, _ = run_cli("certify", expr)
            all_certified = all("error" not in json.loads(l)
                                for l in cert_out.splitlines())
            assert wsnc == all_certified


def prime_factors(n):
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


class TestScan:
    def test_range_2_to_30(self):
        code, out, _ = run_cli("scan", "--zn-min", "2", "--zn-max", "30",
                               "--format", "json")
        assert code == 0
        rows = json.loads(out)
        # wsnc exactly when the only prime factors are 2, 3, 5; s2nc when
        # additionally the 5-part is trivial (a - a^3 is divisible by 2
        # and 3 for every integer a, never uniformly by 5)
        for r in rows:
            factors = prime_factors(r["n"])
            assert r["wsnc_brute"] == (factors <= {2, 3, 5}), r
            assert r["s2nc_brute"] == (factors <= {2, 3}), r
            assert r["agree"]
        wsnc_set = sorted(r["n"] for r in rows if r["wsnc_brute"])
        assert wsnc_set == [2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16, 18,
                            20, 24, 25, 27, 30]

    def test_reason_column(self):
        _, out, _ = run_cli("scan", "--zn-min", "7", "--zn-max", "7",
                            "--format", "json")
        assert json.loads(out)[0]["note"] == "30 not nilpotent"

    def test_bad_range(self):
        code, _, _ = run_cli("scan", "--zn-min", "5", "--zn-max", "2")
        assert code == 2


class TestSuite:
    def test_small_catalog_passes(self, tmp_path):
        cat = tmp_path / "cat.txt"
        cat.write_text("# tiny\nZ5\nZ6\nZ7\n")
        code, out, _ = run_cli("suite", str(cat), "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["summary"]["violation"] == 0

    def test_only_z7_vacuous(self, tmp_path):
        cat = tmp_path / "cat.txt"
        cat.write_text("Z7\n")
        code, out, _ = run_cli("suite", str(cat))
        assert code == 0
        assert "0 violations" in out

    def test_malformed_catalog_exit_2(self, tmp_path):
        cat = tmp_path / "cat.txt"
        cat.write_text("Z5\nnot a ring\n")
        code, _, err = run_cli("suite", str(cat))
        assert code == 2
        assert "line 2" in err

    def test_missing_file_exit_2(self):
        code, _, _ = run_cli("suite", "/nonexistent/catalog.txt")
        assert code == 2

    def test_trivext_z5_violations_reported(self, tmp_path):
        # the catalog ring that refutes the cyclic-five-factor theorem:
        # the suite must report it and exit 1
        cat = tmp_path / "cat.txt"
        cat.write_text("TrivExt(Z5)\n")
        code, out, _ = run_cli("suite", str(cat), "--format", "json")
        assert code == 1
        payload = json.loads(out)
        bad = sorted(i["lemma"] for i in payload["instances"]
                     if i["verdict"] == "violation")
        assert bad == ["5-nilpotent-forces-z5k", "maj-biconditional"]


class TestMaj:
    def test_z30(self):
        code, out, _ = run_cli("maj", "Z30")
        assert code == 0
        assert out.startswith("c=6 k=1")
        assert "~ Z6" in out

    def test_z7_none(self):
        code, out, _ = run_cli("maj", "Z7")
        assert code == 0
        assert out.strip() == "none"

    def test_z5_trivial_rest(self):
        _, out, _ = run_cli("maj", "Z5")
        assert "c=1 k=1" in out and "trivial" in out

    def test_json(self):
        _, out, _ = run_cli("maj", "Z30", "--format", "json")
        payload = json.loads(out)
        assert (payload["c"], payload["k"], payload["rest_cyclic_order"]) == (6, 1, 6)


class TestSuiteDeterminism:
    def test_suite_json_byte_identical(self, tmp_path):
        cat = tmp_path / "cat.txt"
        cat.write_text("Z5\nZ12\nM2(Z2)\n")
        a = run_cli("suite", str(cat), "--format", "json")
        b = run_cli("suite", str(cat), "--format", "json")
        assert a == b
