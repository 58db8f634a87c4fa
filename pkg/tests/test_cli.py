import json

import pytest

from isoflag.cli import main, parse_field, parse_gamma, UsageError
from isoflag.fields import RATIONALS


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _err = run(capsys, *argv)
    return code, json.loads(out)


class TestParsers:
    def test_parse_field(self):
        assert parse_field("rat") is RATIONALS
        f = parse_field("gf:2,2")
        assert f.p == 2 and f.m == 2

    def test_parse_field_bad(self):
        with pytest.raises(UsageError):
            parse_field("gf:4")
        with pytest.raises(UsageError):
            parse_field("real")

    def test_parse_gamma(self):
        assert parse_gamma("4,2,2") == {4: 1, 2: 2}


class TestSubcommands:
    def test_psi(self, capsys):
        code, payload = run_json(capsys, "psi", "--shape", "3,2,2,1")
        assert code == 0
        assert payload["result"]["psi"] == [1, 0, 0, -1]
        assert payload["manifest"]["command"] == "psi"

    def test_gram(self, capsys):
        code, payload = run_json(capsys, "gram", "--shape", "1",
                                 "--mode", "symplectic")
        assert code == 0
        vals = {(v["t"], v["r"], v["delta"]): v["value"]
                for v in payload["result"]["values"]}
        assert vals[(1, 1, -1)] == ["1"]
        assert vals[(1, 1, 1)] == ["-1"]
        assert vals[(1, 1, 0)] == ["0"]

    def test_build(self, capsys):
        code, payload = run_json(capsys, "build", "--shape", "2,1",
                                 "--mode", "symplectic")
        assert code == 0
        res = payload["result"]
        assert res["jordan"] == [4, 2]
        assert res["checks"]["adapted"] and res["checks"]["position"]
        assert all(res["checks"]["split"].values())

    def test_verify_orthogonal(self, capsys):
        code, payload = run_json(capsys, "verify", "--shape", "2,1",
                                 "--kappa", "1", "--mode", "orthogonal",
                                 "--field", "gf:5")
        assert code == 0
        assert payload["result"]["checks"]["intertwiner"]
        assert payload["manifest"]["diagnostics"]["mu_zero_levels"] == []

    def test_flags(self, capsys):
        code, payload = run_json(capsys, "flags", "--shape", "1",
                                 "--mode", "symplectic")
        assert code == 0
        assert payload["result"]["dims"] == [0, 1, 2]
        assert payload["result"]["position"] is True

    def test_count_type_a(self, capsys):
        code, payload = run_json(capsys, "count", "--type", "A",
                                 "--n", "2", "--q", "3")
        assert code == 0
        res = payload["result"]
        assert res["count"] == 24 and res["verdict"] == "equal"

    def test_count_off_class(self, capsys):
        code, payload = run_json(capsys, "count", "--type", "A", "--n", "2",
                                 "--q", "3", "--gamma", "1,1")
        assert code == 1
        assert payload["result"]["count"] == 0

    def test_identities(self, capsys):
        code, payload = run_json(capsys, "identities", "--kmax", "4")
        assert code == 0
        assert all(r["holds"] for r in payload["result"]["results"])

    def test_conjecture210(self, capsys):
        code, payload = run_json(capsys, "conjecture210", "--kmax", "4")
        assert code == 0
        rows = payload["result"]["results"]
        assert [r["matches"] for r in rows] == [True, True, True]


class TestExitCodes:
    def test_usage_error_missing_shape(self, capsys):
        code, _out, err = run(capsys, "build")
        assert code == 2 and "usage error" in err

    def test_usage_error_bad_mode(self, capsys):
        code, _out, err = run(capsys, "build", "--shape", "1",
                              "--mode", "weird")
        assert code == 2

    def test_argparse_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["nonsense"])
        assert exc.value.code == 2

    def test_resource_bound(self, capsys):
        code, _out, err = run(capsys, "count", "--type", "A",
                              "--n", "5", "--q", "5")
        assert code == 3 and "resource bound" in err


class TestOutputFormats:
    def test_deterministic_json(self, capsys):
        _code, p1 = run_json(capsys, "psi", "--shape", "2,1")
        _code, p2 = run_json(capsys, "psi", "--shape", "2,1")
        p1["manifest"].pop("wall_time_s")
        p2["manifest"].pop("wall_time_s")
        assert p1 == p2

    def test_csv(self, capsys):
        code, out, _err = run(capsys, "psi", "--shape", "2,1",
                              "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "key,value"
        assert any(line.startswith("result.psi[0],1") for line in lines)

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _err = run(capsys, "psi", "--shape", "2,1",
                              "--out", str(target))
        assert code == 0 and out == ""
        payload = json.loads(target.read_text())
        assert payload["result"]["psi"] == [1, -1]
