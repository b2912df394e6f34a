"""Command line behavior: documents, exit codes, and determinism."""

from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

from trace_sperner.cli import main
from trace_sperner.constructions import middle_band_family
from trace_sperner.families import Family, dump_family, family_from_jsonable


def run_cli(capsys, *argv: str) -> tuple[int, dict | None]:
    code = main(list(argv))
    captured = capsys.readouterr()
    doc = json.loads(captured.out) if captured.out.strip() else None
    return code, doc


def test_construct_band(capsys, tmp_path):
    out = tmp_path / "band.json"
    code, _ = run_cli(
        capsys, "construct", "--kind", "band",
        "--n", "6", "--k", "3", "--l", "1", "--out", str(out),
    )
    assert code == 0
    with open(out, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    assert family_from_jsonable(doc) == middle_band_family(6, 3, 1)
    manifest = doc["manifest"]
    assert manifest["command"] == "construct"
    assert manifest["seed"] == 0
    assert manifest["inputs"] == {}
    assert "timestamp" in manifest and "version" in manifest


def test_construct_band_low_parity_refusal(capsys):
    code = main(
        ["construct", "--kind", "band-low", "--n", "6", "--k", "2", "--l", "1"]
    )
    captured = capsys.readouterr()
    assert code == 2
    assert "error:" in captured.err
    assert captured.out == ""


def test_construct_erdos_variant(capsys):
    code, doc = run_cli(
        capsys, "construct", "--kind", "erdos", "--n", "5", "--k", "2"
    )
    assert code == 0
    assert len(doc["sets"]) == 20


def test_check_family_holds(capsys, tmp_path):
    path = tmp_path / "fam.json"
    dump_family(middle_band_family(5, 2, 1), path)
    code, doc = run_cli(capsys, "check", str(path), "--l", "4", "--k", "2")
    assert code == 0
    assert doc["holds"] is True
    assert doc["violation"] is None
    assert doc["mode"] == "family"
    assert str(path) in doc["manifest"]["inputs"]


def test_check_family_violation_exits_one(capsys, tmp_path):
    path = tmp_path / "fam.json"
    dump_family(Family.from_sets(4, [[1], [1, 2], [1, 2, 3]]), path)
    code, doc = run_cli(capsys, "check", str(path), "--l", "3", "--k", "2")
    assert code == 1
    assert doc["holds"] is False
    violation = doc["violation"]
    assert len(violation["chain"]) == 3
    assert "window" in violation["describe"]


def test_check_family_needs_both_parameters(capsys, tmp_path):
    path = tmp_path / "fam.json"
    dump_family(middle_band_family(5, 2, 1), path)
    code, _ = run_cli(capsys, "check", str(path), "--l", "4")
    assert code == 2


def test_check_missing_file_exits_two(capsys):
    code, _ = run_cli(capsys, "check", "no-such-file.json", "--l", "2", "--k", "2")
    assert code == 2


def test_check_certificate_round_trip(capsys, tmp_path):
    cert_path = tmp_path / "cert.json"
    code, _ = run_cli(
        capsys, "search", "--n", "4", "--k", "2", "--l", "3", "--out", str(cert_path)
    )
    assert code == 0
    with open(cert_path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    cert_file = tmp_path / "certificate-only.json"
    with open(cert_file, "w", encoding="utf-8") as fh:
        json.dump(payload["certificate"], fh)
    code, doc = run_cli(capsys, "check", str(cert_file))
    assert code == 0
    assert doc["mode"] == "certificate"
    assert doc["value"] == 6
    assert doc["witnesses_checked"] == 1
    assert doc["holds"] is True


def test_census_engines_and_csv(capsys, tmp_path):
    fam_path = tmp_path / "fam.json"
    dump_family(middle_band_family(6, 3, 1), fam_path)
    csv_path = tmp_path / "counts.csv"
    code, doc = run_cli(
        capsys, "census", str(fam_path), "--k", "3", "--csv", str(csv_path)
    )
    assert code == 0
    assert doc["counts"] == {"2": 720}
    assert doc["c_plus"] == 0
    names = [c["name"] for c in doc["checks"]]
    assert names == ["counts_total_is_factorial", "engines_agree"]
    assert all(c["holds"] for c in doc["checks"])
    with open(csv_path, "r", encoding="utf-8") as fh:
        assert fh.read() == "j,count\n2,720\n"


def test_census_single_engine(capsys, tmp_path):
    fam_path = tmp_path / "fam.json"
    dump_family(Family.from_sets(4, [[1], [1, 2]]), fam_path)
    code, doc = run_cli(capsys, "census", str(fam_path), "--k", "2", "--engine", "ie")
    assert code == 0
    assert doc["counts"] == {"0": 16, "1": 6, "2": 2}
    assert [c["name"] for c in doc["checks"]] == ["counts_total_is_factorial"]


def test_census_respects_direct_capacity(capsys, tmp_path):
    fam_path = tmp_path / "fam.json"
    dump_family(Family.from_sets(11, [[1]]), fam_path)
    code, _ = run_cli(capsys, "census", str(fam_path), "--k", "2", "--engine", "direct")
    assert code == 2


def test_verify_all_green(capsys, tmp_path):
    fam_path = tmp_path / "fam.json"
    dump_family(
        Family.from_sets(7, [[1, 2, 3, 4], [1, 2, 3, 4, 5], [1, 2, 3, 4, 5, 6]]),
        fam_path,
    )
    code, doc = run_cli(capsys, "verify", str(fam_path), "--k", "3")
    assert code == 0
    assert doc["holds"] is True
    assert [c["name"] for c in doc["checks"]] == [
        "overlap", "multiplicity", "census-balance", "lym",
    ]
    lym = doc["checks"][-1]
    assert lym["value"] == [23, 105]


def test_verify_single_check(capsys, tmp_path):
    fam_path = tmp_path / "fam.json"
    dump_family(Family.from_sets(6, [[1, 2, 3], [1, 2, 3, 4]]), fam_path)
    code, doc = run_cli(capsys, "verify", str(fam_path), "--k", "2", "--which", "overlap")
    assert code == 0
    assert len(doc["checks"]) == 1
    assert doc["checks"][0]["max_meet"] == 0


def test_verify_hypothesis_failure_exits_two(capsys, tmp_path):
    fam_path = tmp_path / "fam.json"
    dump_family(Family.from_sets(6, [[1, 2, 3], [1, 2, 3, 4]]), fam_path)
    code, _ = run_cli(capsys, "verify", str(fam_path), "--k", "2", "--which", "lym")
    assert code == 2


def test_search_document_shape(capsys):
    code, doc = run_cli(capsys, "search", "--n", "4", "--k", "2", "--l", "3")
    assert code == 0
    cert = doc["certificate"]
    assert cert["value"] == 6
    assert cert["exhaustive"] is True
    assert doc["conjecture"]["status"] == "equal"
    assert doc["uniqueness"] is None


def test_search_uniqueness_flag(capsys):
    code, doc = run_cli(
        capsys, "search", "--n", "4", "--k", "2", "--l", "3", "--uniqueness"
    )
    assert code == 0
    uniq = doc["uniqueness"]
    assert uniq["matches"] is True
    assert uniq["witness_count"] == 1
    assert uniq["expected_value"] == 6


def test_search_uniqueness_needs_window_n_minus_one(capsys):
    code, _ = run_cli(
        capsys, "search", "--n", "4", "--k", "2", "--l", "2", "--uniqueness"
    )
    assert code == 2


def test_threads_env_is_validated(capsys, monkeypatch):
    monkeypatch.setenv("TRACE_SPERNER_THREADS", "many")
    code, _ = run_cli(capsys, "construct", "--kind", "erdos", "--n", "4", "--k", "1")
    assert code == 2
    monkeypatch.setenv("TRACE_SPERNER_THREADS", "4")
    code, doc = run_cli(capsys, "construct", "--kind", "erdos", "--n", "4", "--k", "1")
    assert code == 0
    assert doc["manifest"]["threads"] == 4


VOLATILE = ("timestamp", "elapsed", "threads")


def stable_lines(text: str) -> list[str]:
    return [
        line
        for line in text.splitlines()
        if not any(f'"{key}"' in line for key in VOLATILE)
    ]


def cli_subprocess(args: list[str], threads: str) -> str:
    env = dict(os.environ, TRACE_SPERNER_THREADS=threads)
    proc = subprocess.run(
        [sys.executable, "-m", "trace_sperner.cli", *args],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    return proc.stdout


def test_repeated_runs_are_deterministic(tmp_path):
    fam_path = tmp_path / "fam.json"
    dump_family(middle_band_family(6, 3, 1), fam_path)
    commands = [
        ["construct", "--kind", "band", "--n", "6", "--k", "3", "--l", "1", "--seed", "0"],
        ["check", str(fam_path), "--l", "5", "--k", "3", "--seed", "0"],
        ["census", str(fam_path), "--k", "3", "--seed", "0"],
        ["search", "--n", "4", "--k", "2", "--l", "3", "--seed", "0"],
    ]
    for args in commands:
        first = cli_subprocess(args, threads="0")
        second = cli_subprocess(args, threads="0")
        assert stable_lines(first) == stable_lines(second), args
        # a different thread cap must not change any result line
        other = cli_subprocess(args, threads="4")
        assert stable_lines(first) == stable_lines(other), args


def test_unknown_command_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    capsys.readouterr()
