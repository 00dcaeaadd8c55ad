"""Command-line interface: reports, exit codes, determinism."""

import json
import subprocess
import sys

from qupitcube.codes import d5_code

D5_FLAGS = ["--p", "5", "--alpha", "1,0", "--beta", "0,1",
            "--gamma", "1,1", "--delta", "3,2", "--parity", "S"]
P2_FLAGS = ["--p", "2", "--alpha", "1,0", "--beta", "0,1",
            "--gamma", "1,1", "--delta", "1,0"]


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "qupitcube", *args],
                          capture_output=True, text=True)


def test_scan_p2_zero_tuples():
    out = run_cli("scan", "--p", "2")
    assert out.returncode == 0
    report = json.loads(out.stdout)
    assert report["results"]["deformable_count"] == 0
    assert report["schema_version"] == "1"


def test_check_d5_reports_discrepancy():
    out = run_cli("check", *D5_FLAGS)
    assert out.returncode == 0
    report = json.loads(out.stdout)
    assert report["results"]["translation_commutation"]["consistent"]
    assert report["results"]["theorem1"]["overall"] is False
    kinds = {d["kind"] for d in report["discrepancies"]}
    assert "condition3-reading-mismatch" in kinds


def test_strings_expect_no_string_violation():
    out = run_cli("strings", *P2_FLAGS, "--wmax", "1", "--lmax", "6",
                  "--expect-no-string")
    assert out.returncode == 1
    report = json.loads(out.stdout)
    assert report["status"] == "violation"
    assert report["results"]["bound_2w_exceeded"]


def test_strings_d5_within_bound():
    out = run_cli("strings", *D5_FLAGS, "--wmax", "2", "--expect-no-string")
    assert out.returncode == 0
    report = json.loads(out.stdout)
    assert report["results"]["bound_2w_exceeded"] == []


def test_usage_errors():
    assert run_cli("bogus").returncode == 2
    assert run_cli("scan").returncode == 2                      # missing --p
    assert run_cli("check", "--p", "5").returncode == 2         # missing pairs
    assert run_cli("scan", "--p", "2", "--frobnicate").returncode == 2
    assert run_cli("--schema-version", "2", "scan", "--p", "2").returncode == 2
    assert run_cli("check", "--p", "4", *D5_FLAGS[2:]).returncode == 2


def test_params_file_equivalent_to_flags(tmp_path):
    path = tmp_path / "d5.json"
    path.write_text(json.dumps(d5_code("S").as_dict()))
    by_file = run_cli("check", "--params", str(path))
    by_flags = run_cli("check", *D5_FLAGS)
    assert by_file.returncode == by_flags.returncode == 0
    assert by_file.stdout == by_flags.stdout


def test_classify_deterministic_across_workers():
    one = run_cli("classify", "--p", "3")
    two = run_cli("classify", "--p", "3", "--workers", "2")
    again = run_cli("classify", "--p", "3")
    assert one.returncode == 0
    assert one.stdout == again.stdout
    assert one.stdout == two.stdout
    report = json.loads(one.stdout)
    assert report["results"]["orbit_count"] == 2


def test_classify_cache(tmp_path):
    cache = tmp_path / "canon.txt"
    first = run_cli("classify", "--p", "3", "--cache", str(cache))
    assert first.returncode == 0 and cache.exists()
    assert len(cache.read_text().splitlines()) == 384
    second = run_cli("classify", "--p", "3", "--cache", str(cache))
    assert second.stdout == first.stdout


def test_logical_antisymmetric():
    out = run_cli("logical", "--p", "3", "--alpha", "1,0", "--beta", "0,1",
                  "--gamma", "1,1", "--delta", "1,2", "--parity", "A",
                  "--dims", "2x2x3")
    assert out.returncode == 0
    report = json.loads(out.stdout)
    assert report["results"]["product_of_all_generators_identity"] is True
    assert report["results"]["encoded_qudits"] >= 1
    census = report["results"]["census"]
    assert census["normal_x"]["count"] == 2    # in-plane dims (2, 3)
    assert census["normal_z"]["count"] == 4    # in-plane dims (2, 2)


def test_algebra_subcommand():
    out = run_cli("algebra", "--p", "3", "--alpha", "1,0", "--beta", "0,1",
                  "--gamma", "1,1", "--delta", "1,2", "--parity", "A")
    assert out.returncode == 0
    report = json.loads(out.stdout)
    assert report["results"]["commutation_law"] is True
    assert report["results"]["projectors"] == {
        "idempotent": True, "orthogonal": True, "complete": True}
    assert report["results"]["inversion_action"]["matches"] is True
    assert report["results"]["inversion_action"]["expected_r"] == 2


def test_scan_p3_summary():
    out = run_cli("scan", "--p", "3", "--oracle-wmax", "1")
    assert out.returncode == 0
    report = json.loads(out.stdout)
    assert report["results"]["orbit_count"] == 2
    assert report["results"]["theorem1_scan"]["literal_pass"] == []
    assert len(report["results"]["theorem1_scan"]["cond12_oracle_pass"]) == 2
