import json

import numpy as np

from mv2codec import verify
from mv2codec.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEncodeDecode:
    def test_alphabet_file_summary(self, tmp_path, capsys):
        src = tmp_path / "alphabet.bin"
        src.write_bytes(bytes(range(256)))
        out = tmp_path / "alphabet.mv2"
        code, stdout, _ = run(capsys, "encode", "--clone", "1", "--radix", "2",
                              "--width", "8", "--rounds", "1", str(src), str(out))
        assert code == 0
        assert "1794" in stdout and "510" in stdout
        assert "897/1024" in stdout
        assert out.exists()

    def test_byte_roundtrip(self, tmp_path, capsys, rng):
        src = tmp_path / "data.bin"
        src.write_bytes(rng.bytes(1000))
        packed = tmp_path / "data.mv2"
        restored = tmp_path / "restored.bin"
        for clone in ("1", "2", "3"):
            assert run(capsys, "encode", "--clone", clone, "--width", "8",
                       "--rounds", "3", str(src), str(packed))[0] == 0
            assert run(capsys, "decode", str(packed), str(restored))[0] == 0
            assert restored.read_bytes() == src.read_bytes()

    def test_digit_roundtrip_radix5(self, tmp_path, capsys, rng):
        src = tmp_path / "digits.bin"
        src.write_bytes(bytes(rng.integers(0, 5, size=400, dtype=np.uint8)))
        packed = tmp_path / "digits.mv2"
        restored = tmp_path / "digits.out"
        code, _, _ = run(capsys, "encode", "--clone", "3", "--radix", "5", "--width", "4",
                         "--input-format", "digits", str(src), str(packed))
        assert code == 0
        assert run(capsys, "decode", str(packed), str(restored))[0] == 0
        assert restored.read_bytes() == src.read_bytes()

    def test_empty_file(self, tmp_path, capsys):
        src = tmp_path / "empty"
        src.write_bytes(b"")
        packed = tmp_path / "empty.mv2"
        restored = tmp_path / "empty.out"
        assert run(capsys, "encode", "--clone", "2", "--width", "8",
                   str(src), str(packed))[0] == 0
        assert run(capsys, "decode", str(packed), str(restored))[0] == 0
        assert restored.read_bytes() == b""

    def test_clone2_width1_usage_error(self, tmp_path, capsys):
        src = tmp_path / "x"
        src.write_bytes(b"a")
        code, _, stderr = run(capsys, "encode", "--clone", "2", "--width", "1",
                              str(src), str(tmp_path / "y"))
        assert code == 1
        assert "width" in stderr

    def test_missing_input_usage_error(self, tmp_path, capsys):
        code, _, _ = run(capsys, "encode", "--clone", "1", "--width", "8",
                         str(tmp_path / "absent"), str(tmp_path / "y"))
        assert code == 1

    def test_bad_digit_data_error(self, tmp_path, capsys):
        src = tmp_path / "digits"
        src.write_bytes(bytes([0, 1, 9]))
        code, _, stderr = run(capsys, "encode", "--clone", "1", "--radix", "3",
                              "--width", "2", "--input-format", "digits",
                              str(src), str(tmp_path / "y"))
        assert code == 2
        assert "offset 2" in stderr

    def test_truncated_container_data_error(self, tmp_path, capsys, rng):
        src = tmp_path / "data.bin"
        src.write_bytes(rng.bytes(64))
        packed = tmp_path / "data.mv2"
        run(capsys, "encode", "--clone", "1", "--width", "8", str(src), str(packed))
        packed.write_bytes(packed.read_bytes()[:-10])
        code, _, stderr = run(capsys, "decode", str(packed), str(tmp_path / "out"))
        assert code == 2
        assert "container holds" in stderr

    def test_not_a_container(self, tmp_path, capsys):
        bogus = tmp_path / "bogus"
        bogus.write_bytes(b"PK\x03\x04junk")
        code, _, stderr = run(capsys, "decode", str(bogus), str(tmp_path / "out"))
        assert code == 2
        assert "magic" in stderr


class TestVerifyCommand:
    def test_text_output(self, capsys):
        code, stdout, _ = run(capsys, "verify", "--radix", "2", "--width", "8")
        assert code == 0
        assert "paper_erratum" in stdout
        assert "clone 2" in stdout  # ranking line

    def test_json_output(self, capsys):
        code, stdout, _ = run(capsys, "verify", "--radix", "2", "--width", "8", "--json")
        assert code == 0
        obj = json.loads(stdout)
        assert obj["ranking"] == [2, 3, 1]
        quantities = {e["quantity"]: e for e in obj["entries"]}
        assert quantities["clone2_ratio"]["verdict"] == "paper_erratum"
        assert quantities["clone1_ratio"]["measured"] == "897/1024"

    def test_model_only_cell(self, capsys):
        code, stdout, _ = run(capsys, "verify", "--radix", "3", "--width", "2", "--json")
        assert code == 0
        quantities = {e["quantity"]: e for e in json.loads(stdout)["entries"]}
        assert quantities["clone3_flag_len"]["verdict"] == "model_only"
        assert quantities["clone3_flag_len"]["formula"] == 9
        assert quantities["clone3_flag_len"]["measured"] == 12

    def test_regression_exit_code(self, capsys, monkeypatch):
        from fractions import Fraction

        monkeypatch.setattr(verify.analytics, "ratio_clone3", lambda p, n: Fraction(1, 3))
        code, stdout, _ = run(capsys, "verify", "--radix", "2", "--width", "8")
        assert code == 3
        assert "REGRESSIONS" in stdout

    def test_cap_exceeded_usage_error(self, capsys):
        code, _, stderr = run(capsys, "verify", "--radix", "2", "--width", "30")
        assert code == 1
        assert "cap" in stderr


class TestAnalyticsCommand:
    def test_growth_renderings(self, capsys):
        code, stdout, _ = run(capsys, "analytics", "--radix", "2", "--width", "8",
                              "--rounds", "10")
        assert code == 0
        assert "1.125" in stdout
        assert "1.739753" in stdout
        assert "1.474811" in stdout
        assert "1020" in stdout and "508" in stdout

    def test_degenerate_width_one(self, capsys):
        code, stdout, _ = run(capsys, "analytics", "--radix", "5", "--width", "1")
        assert code == 0
        assert "degenerate" in stdout

    def test_json(self, capsys):
        code, stdout, _ = run(capsys, "analytics", "--radix", "2", "--width", "8", "--json")
        assert code == 0
        obj = json.loads(stdout)
        assert obj["clones"]["1"]["ratio"] == "897/1024"
        assert obj["clones"]["2"]["flag_len_published"] == 1020
        assert obj["clones"]["1"]["growth"]["1"] == "9/8"


class TestCodebookCommand:
    def test_histogram_2_8(self, capsys):
        code, stdout, _ = run(capsys, "codebook", "--radix", "2", "--width", "8")
        assert code == 0
        assert stdout.splitlines()[0] == "1:2 2:4 3:8 4:16 5:32 6:64 7:128 8:2"

    def test_histogram_3_2(self, capsys):
        code, stdout, _ = run(capsys, "codebook", "--radix", "3", "--width", "2")
        assert stdout.splitlines()[0] == "1:3 2:6"

    def test_histogram_2_1(self, capsys):
        code, stdout, _ = run(capsys, "codebook", "--radix", "2", "--width", "1")
        assert stdout.splitlines()[0] == "1:2"

    def test_limit_rows(self, capsys):
        code, stdout, _ = run(capsys, "codebook", "--radix", "2", "--width", "8",
                              "--limit", "3")
        lines = stdout.splitlines()
        assert len(lines) == 4
        assert lines[1].startswith("0\t-> length 1, code 0")


class TestUsage:
    def test_unknown_option(self, capsys):
        assert run(capsys, "encode", "--wat")[0] == 1

    def test_unknown_command(self, capsys):
        assert run(capsys, "transmogrify")[0] == 1

    def test_help(self, capsys):
        code, stdout, _ = run(capsys, "--help")
        assert code == 0
        assert "encode" in stdout and "verify" in stdout
