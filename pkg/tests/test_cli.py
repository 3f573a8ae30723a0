import csv
import io
import json

import pytest

from conftest import WORKED_REFERENCE, SUPERSTRING
from qibam.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def strip_timing(obj):
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k != "timing"}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


class TestAlign:
    def test_worked_json(self, capsys):
        code, out, _ = run(capsys, "align", "--ref-seq", WORKED_REFERENCE, "--query", "CA")
        assert code == 0
        report = json.loads(out)
        assert report["schema_version"] == 1 and report["command"] == "align"
        (r,) = report["runs"]
        assert r["result"]["best_index"] == 0
        assert r["result"]["ranking"][:4] == [0, 7, 11, 14]
        assert r["classical"]["min_indices"] == [0, 7, 11, 14]
        assert sum(r["result"]["histogram"].values()) == 1024

    def test_deterministic_modulo_timing(self, capsys):
        argv = ("align", "--ref-seq", WORKED_REFERENCE, "--query", "GT", "--seed", "4")
        a = json.loads(run(capsys, *argv)[1])
        b = json.loads(run(capsys, *argv)[1])
        assert strip_timing(a) == strip_timing(b)

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "align", "--ref-seq", WORKED_REFERENCE, "--query", "CA", "--format", "csv")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 16
        assert rows[0]["classical_distance"] == "1"
        assert rows[15]["classical_distance"] == ""
        assert sum(int(r["shot_count"]) for r in rows) == 1024
        assert float(rows[0]["exact_probability"]) == pytest.approx(0.0878069400787352, abs=1e-12)

    def test_auto_superstring(self, capsys):
        code, out, _ = run(
            capsys, "align", "--ref-seq", SUPERSTRING, "--query", "CA",
            "--gamma", "0.1", "--schedule", "single", "--auto",
        )
        r = json.loads(out)["runs"][0]["result"]
        assert code == 0 and r["iterations"] == 3 and r["best_index"] == 15

    def test_exclude_last(self, capsys):
        _, out, _ = run(capsys, "align", "--ref-seq", SUPERSTRING, "--query", "CA", "--exclude-last")
        r = json.loads(out)["runs"][0]
        assert r["exclusions"] == [15]
        assert 15 not in r["result"]["stored_tags"]

    def test_boyer(self, capsys):
        code, out, _ = run(capsys, "align", "--ref-seq", SUPERSTRING, "--query", "CA", "--boyer", "--seed", "1")
        r = json.loads(out)["runs"][0]["result"]
        assert code == 0 and r["verified"] and r["tag"] == 15

    def test_boyer_exhausted_reports_unverified(self, capsys):
        code, out, _ = run(capsys, "align", "--ref-seq", SUPERSTRING, "--query", "CA", "--boyer", "--max-rounds", "0")
        assert code == 0
        assert json.loads(out)["runs"][0]["result"]["verified"] is False

    def test_query_file_batch(self, capsys, tmp_path):
        qf = tmp_path / "reads.txt"
        qf.write_text("# reads\nCA\n\ngt\n")
        _, out, _ = run(capsys, "align", "--ref-seq", WORKED_REFERENCE, "--query-file", str(qf))
        runs = json.loads(out)["runs"]
        assert [r["query"] for r in runs] == ["CA", "GT"]
        assert runs[0]["seed"] == 0 and runs[1]["seed"] != 0

    def test_out_file(self, capsys, tmp_path):
        dest = tmp_path / "r.json"
        code, out, _ = run(capsys, "align", "--ref-seq", WORKED_REFERENCE, "--query", "CA", "--out", str(dest))
        assert code == 0 and out == ""
        assert json.loads(dest.read_text())["runs"][0]["result"]["best_index"] == 0


class TestFasta:
    def test_equivalent_to_inline(self, capsys, tmp_path):
        fa = tmp_path / "ref.fa"
        fa.write_text(">chrT test record\naattgtct\nAGGCGACC\n>second\nGGGG\n")
        a = json.loads(run(capsys, "align", "--ref-file", str(fa), "--query", "CA")[1])
        b = json.loads(run(capsys, "align", "--ref-seq", WORKED_REFERENCE, "--query", "CA")[1])
        assert a["reference"] == {"id": "chrT", "length": 16}
        assert a["runs"][0]["result"] == b["runs"][0]["result"]

    def test_bad_base_position(self, capsys, tmp_path):
        fa = tmp_path / "bad.fa"
        fa.write_text(">r\nACGT\nACNT\n")
        code, _, err = run(capsys, "baseline", "--ref-file", str(fa), "--query", "AC")
        assert code == 2
        assert ":3:" in err and "position 6" in err

    def test_missing_header(self, capsys, tmp_path):
        fa = tmp_path / "nohdr.fa"
        fa.write_text("ACGT\n")
        assert run(capsys, "baseline", "--ref-file", str(fa), "--query", "AC")[0] == 2


class TestOtherCommands:
    def test_baseline(self, capsys):
        code, out, _ = run(capsys, "baseline", "--ref-seq", WORKED_REFERENCE, "--query", "CA")
        c = json.loads(out)["runs"][0]["classical"]
        assert code == 0 and c["min_distance"] == 1 and c["min_indices"] == [0, 7, 11, 14]

    def test_baseline_csv(self, capsys):
        _, out, _ = run(capsys, "baseline", "--ref-seq", "ACGT", "--query", "CG", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [(r["window"], r["distance"], r["is_min"]) for r in rows] == [("AC", "3", "0"), ("CG", "0", "1"), ("GT", "3", "0")]

    def test_estimate(self, capsys):
        code, out, _ = run(capsys, "estimate", "-A", "4", "-N", "3000000000", "-M", "50")
        assert code == 0 and json.loads(out)["estimate"]["Q"] == 133

    def test_estimate_csv(self, capsys):
        _, out, _ = run(capsys, "estimate", "-A", "4", "-N", "16", "-M", "2", "--format", "csv")
        table = dict(csv.reader(io.StringIO(out)))
        assert table["Q"] == "9" and table["memory_mark.C7X"] == "16"

    def test_emit_then_run(self, capsys, tmp_path):
        dest = tmp_path / "init.qasm"
        assert run(capsys, "emit-qasm", "--stage", "init", "--ref-seq", WORKED_REFERENCE, "-M", "2", "--out", str(dest))[0] == 0
        assert dest.read_text().startswith("version 1.0\nqubits 8\n")
        code, out, _ = run(capsys, "run-qasm", str(dest), "--qubits-list", "0,1,2,3")
        assert code == 0
        assert json.loads(out)["marginal"] == pytest.approx([1 / 16] * 16, abs=1e-12)

    @pytest.mark.parametrize("stage", ["hamming", "diffusion", "memory-oracle"])
    def test_emit_stages_parse(self, capsys, tmp_path, stage):
        dest = tmp_path / f"{stage}.qasm"
        code, _, _ = run(capsys, "emit-qasm", "--stage", stage, "--ref-seq", WORKED_REFERENCE, "--query", "CA", "--out", str(dest))
        assert code == 0
        assert run(capsys, "run-qasm", str(dest), "--shots", "10")[0] == 0

    def test_emit_needs_query(self, capsys):
        assert run(capsys, "emit-qasm", "--stage", "hamming", "--ref-seq", WORKED_REFERENCE, "-M", "2")[0] == 2


class TestExitCodes:
    def test_invalid_base(self, capsys):
        code, _, err = run(capsys, "align", "--ref-seq", "ACGX", "--query", "AC")
        assert code == 2 and "error" in err

    def test_query_too_long(self, capsys):
        assert run(capsys, "align", "--ref-seq", "AC", "--query", "ACG")[0] == 2

    def test_estimate_invalid(self, capsys):
        assert run(capsys, "estimate", "-A", "4", "-N", "2", "-M", "2")[0] == 2

    def test_qubit_ceiling(self, capsys):
        code, _, err = run(capsys, "align", "--ref-seq", "ACGT" * 300, "--query", "ACGTACGT")
        assert code == 3 and "ceiling" in err

    def test_dense_oracle_not_serializable(self, capsys):
        code = run(capsys, "emit-qasm", "--stage", "query-oracle", "--ref-seq", WORKED_REFERENCE, "--query", "CA")[0]
        assert code == 4

    def test_bad_qasm(self, capsys, tmp_path):
        f = tmp_path / "bad.qasm"
        f.write_text("version 1.0\nqubits 2\nfoo q[0]\n")
        code, _, err = run(capsys, "run-qasm", str(f))
        assert code == 2 and "line 3" in err

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "run-qasm", str(tmp_path / "nope.qasm"))[0] == 2

    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["align", "--query", "CA"])
        assert exc.value.code == 2
