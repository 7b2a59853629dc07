import json

import pytest

from abelianwords.cli import main, resolve_word_spec


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestWordSpecs:
    def test_builtin(self):
        assert str(resolve_word_spec("tm").prefix(4)) == "0110"

    def test_image_chain(self):
        # the doubling morphism fixes its own fixed point
        assert resolve_word_spec("image:mu:tm").prefix(32) == \
            resolve_word_spec("tm").prefix(32)

    def test_fixpoint_of_builtin_morphism(self):
        assert str(resolve_word_spec("fixpoint:g:0").prefix(12)) == "011111001110"

    def test_fixpoint_of_file(self, tmp_path):
        path = tmp_path / "double.txt"
        path.write_text("domain: 0 1\n0 -> 01\n1 -> 10\n")
        assert resolve_word_spec(f"fixpoint:{path}:0").prefix(8) == \
            resolve_word_spec("tm").prefix(8)

    def test_nested_image(self):
        spec = "image:f:fixpoint:h:0"
        assert resolve_word_spec(spec).prefix(10) == \
            resolve_word_spec("f_wh").prefix(10)

    def test_malformed(self):
        with pytest.raises(ValueError):
            resolve_word_spec("image:mu")
        with pytest.raises(ValueError):
            resolve_word_spec("fixpoint:mu")


class TestCommands:
    def test_complexity_csv(self, capsys):
        code, out, err = run(capsys, "complexity", "--word", "tm",
                             "--n-max", "4", "--prefix", "1024")
        assert code == 0
        assert out == "n,value\n1,2\n2,3\n3,2\n4,3\n"

    def test_complexity_json(self, capsys):
        code, out, err = run(capsys, "complexity", "--word", "tm",
                             "--n-max", "2", "--prefix", "256",
                             "--format", "json")
        assert code == 0
        assert json.loads(out) == [{"n": 1, "value": 2}, {"n": 2, "value": 3}]

    def test_generate_compact(self, capsys):
        code, out, err = run(capsys, "generate", "--word", "g_fp",
                             "--length", "12", "--compact")
        assert code == 0
        assert out == "011111001110\n"

    def test_scan_squares_pass(self, capsys):
        code, out, err = run(capsys, "scan-squares", "--word", "g_fp",
                             "--pos", "0", "--max-period", "1000")
        assert code == 0
        assert "0,avoids,1000" in out

    def test_scan_squares_violation_exits_one(self, capsys):
        code, out, err = run(capsys, "scan-squares", "--word", "g_fp",
                             "--pos", "1", "--max-period", "100")
        assert code == 1
        assert "1,square,1" in out

    def test_powers(self, capsys):
        code, out, err = run(capsys, "powers", "--word", "tm", "--pos", "0,7",
                             "--k", "3", "--max-period", "100")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "pos,result,period"
        assert lines[1].startswith("0,found,")
        assert lines[2] == "7,found,6"

    def test_scan_prefix_pattern(self, capsys):
        code, out, err = run(capsys, "scan-prefix-pattern", "--word", "w_h",
                             "--kind", "0x0y0", "--bound", "10000")
        assert code == 0
        assert ",absent," in out

    def test_repetitive(self, capsys):
        code, out, err = run(capsys, "repetitive", "--word", "tm", "--k", "2",
                             "--n", "10", "--prefix", "2048")
        assert code == 0
        code, out, err = run(capsys, "repetitive", "--word", "tm", "--k", "3",
                             "--n", "30", "--prefix", "2048")
        assert code == 1

    def test_recurrence(self, capsys):
        code, out, err = run(capsys, "recurrence", "--word", "tm", "--n", "1",
                             "--prefix", "1024")
        assert code == 0
        assert out.splitlines()[1].startswith("1,1024,3,")

    def test_pvhh_letters(self, capsys):
        code, out, err = run(capsys, "pvhh", "--letters", "1,2,1,2",
                             "--max-block", "2")
        assert code == 1
        assert "violation,0,2" in out

    def test_pvhh_stream(self, capsys):
        code, out, err = run(capsys, "pvhh", "--word", "v:3", "--prefix", "5",
                             "--max-block", "2")
        assert code == 0

    def test_tau(self, capsys):
        code, out, err = run(capsys, "tau", "--letters", "1,3", "--compact")
        assert code == 0
        assert out == "01001110\n"

    def test_density(self, capsys):
        code, out, err = run(capsys, "density", "--positions", "10,80,640,5120",
                             "--horizon", "100000")
        assert code == 0
        assert "4,100000,1/25000" in out

    def test_balance(self, capsys):
        code, out, err = run(capsys, "balance", "--word", "fib",
                             "--n-max", "50", "--prefix", "1024")
        assert code == 0
        assert out.splitlines()[1].startswith("50,1024,1,")

    def test_unknown_word_usage_error(self, capsys):
        code, out, err = run(capsys, "generate", "--word", "nosuch",
                             "--length", "4")
        assert code == 2
        assert "error:" in err

    def test_output_file(self, tmp_path, capsys):
        target = tmp_path / "report.csv"
        code, out, err = run(capsys, "complexity", "--word", "tm",
                             "--n-max", "2", "--prefix", "128",
                             "--output", str(target))
        assert code == 0
        assert target.read_text() == "n,value\n1,2\n2,3\n"


class TestDeterminism:
    def test_byte_identical_reports(self, capsys):
        args = ("verify", "expansion_identity", "--format", "json")
        _, first, _ = run(capsys, *args)
        _, second, _ = run(capsys, *args)
        assert first == second

    def test_verify_single_suite(self, capsys):
        code, out, err = run(capsys, "verify", "prepended_cube_free")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "suite,statement,horizon,expected,observed,pass"
        assert len(lines) == 3
        assert all(line.endswith("True") for line in lines[1:])

    def test_verify_unknown_suite(self, capsys):
        code, out, err = run(capsys, "verify", "nosuch")
        assert code == 2
