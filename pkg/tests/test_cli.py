import csv
import io
import sys

import pytest

from qcldpc.cli import main

SMALL = ["--n0", "3", "--p", "608", "--dv", "7", "--m", "7", "--t-prime", "3"]


def run_keygen(tmp_path, *extra, seed="100"):
    priv = tmp_path / "test.sk"
    pub = tmp_path / "test.pk"
    rc = main(["keygen", *SMALL, "--seed", seed,
               "--private", str(priv), "--public", str(pub), *extra])
    assert rc == 0
    return priv, pub


def test_keygen_writes_key_files(tmp_path):
    priv, pub = run_keygen(tmp_path)
    assert priv.stat().st_size > 0
    assert pub.read_bytes()[:8] == b"QCLDPCPK"
    assert priv.read_bytes()[:8] == b"QCLDPCSK"


def test_file_roundtrip(tmp_path):
    for extra in ((), ("--systematic",)):
        priv, pub = run_keygen(tmp_path, *extra)
        message = bytes(i % 251 for i in range(3000))
        (tmp_path / "msg").write_bytes(message)
        rc = main(["encrypt", "--key", str(pub), "--input", str(tmp_path / "msg"),
                   "--output", str(tmp_path / "ct"), "--seed", "7"])
        assert rc == 0
        ct = (tmp_path / "ct").read_bytes()
        assert ct[:8] == b"QCLDPCCT"
        assert message not in ct
        rc = main(["decrypt", "--key", str(priv), "--input", str(tmp_path / "ct"),
                   "--output", str(tmp_path / "out")])
        assert rc == 0
        assert (tmp_path / "out").read_bytes() == message


def test_empty_message_roundtrip(tmp_path):
    priv, pub = run_keygen(tmp_path)
    (tmp_path / "msg").write_bytes(b"")
    assert main(["encrypt", "--key", str(pub), "--input", str(tmp_path / "msg"),
                 "--output", str(tmp_path / "ct"), "--seed", "1"]) == 0
    assert main(["decrypt", "--key", str(priv), "--input", str(tmp_path / "ct"),
                 "--output", str(tmp_path / "out")]) == 0
    assert (tmp_path / "out").read_bytes() == b""


def test_stdout_pipeline(tmp_path, monkeypatch, capsysbinary):
    priv, pub = run_keygen(tmp_path)
    message = b"over the wire"
    monkeypatch.setattr(sys, "stdin",
                        type("S", (), {"buffer": io.BytesIO(message)})())
    assert main(["encrypt", "--key", str(pub), "--seed", "3"]) == 0
    ct = capsysbinary.readouterr().out
    monkeypatch.setattr(sys, "stdin", type("S", (), {"buffer": io.BytesIO(ct)})())
    assert main(["decrypt", "--key", str(priv)]) == 0
    assert capsysbinary.readouterr().out == message


def test_seeded_encryption_is_reproducible(tmp_path):
    _, pub = run_keygen(tmp_path)
    (tmp_path / "msg").write_bytes(b"same every time")
    for name in ("a", "b"):
        assert main(["encrypt", "--key", str(pub), "--input", str(tmp_path / "msg"),
                     "--output", str(tmp_path / name), "--seed", "11"]) == 0
    assert (tmp_path / "a").read_bytes() == (tmp_path / "b").read_bytes()


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def test_analyze_key_size_table(tmp_path):
    out = tmp_path / "t1.csv"
    assert main(["analyze", "--table", "1", "--output", str(out), "--quiet"]) == 0
    header, rows = read_csv(out)
    assert header[0].lower().startswith("n0")
    cols = {name: i for i, name in enumerate(header)}
    by_n0 = {row[0]: row for row in rows}
    assert by_n0["3"][cols["p=4096"]] == "1024"
    assert by_n0["4"][cols["p=16384"]] == "6144"


def test_analyze_encryption_cost_table(tmp_path):
    out = tmp_path / "t2.csv"
    assert main(["analyze", "--table", "2", "--output", str(out), "--quiet"]) == 0
    header, rows = read_csv(out)
    assert len(rows) == 2
    values = [float(x) for x in rows[0][1:]]
    assert all(v > 100 for v in values)


def test_analyze_writes_figure_next_to_csv(tmp_path):
    out = tmp_path / "t2.csv"
    png = tmp_path / "t2.png"
    assert main(["analyze", "--table", "2", "--output", str(out),
                 "--plot", str(png), "--quiet"]) == 0
    assert out.exists()
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_analyze_stdout(capsys):
    assert main(["analyze", "--table", "1", "--quiet"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3  # header plus one row per n0
    assert lines[0].startswith("n0")


def test_analyze_rejects_unknown_table():
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "--table", "5"])
    assert exc.value.code == 2


def test_exit_code_infeasible_parameters(tmp_path):
    rc = main(["keygen", "--n0", "3", "--p", "608", "--dv", "7", "--m", "3",
               "--t-prime", "3", "--seed", "1",
               "--private", str(tmp_path / "sk"), "--public", str(tmp_path / "pk")])
    assert rc == 4


def test_exit_code_bad_parameters(tmp_path):
    rc = main(["keygen", "--n0", "1", "--p", "608", "--dv", "7",
               "--private", str(tmp_path / "sk"), "--public", str(tmp_path / "pk")])
    assert rc == 2


def test_exit_code_malformed_key(tmp_path):
    bad = tmp_path / "bad.pk"
    bad.write_bytes(b"this is not a key file at all")
    (tmp_path / "msg").write_bytes(b"x")
    rc = main(["encrypt", "--key", str(bad), "--input", str(tmp_path / "msg"),
               "--output", str(tmp_path / "ct")])
    assert rc == 3


def test_exit_code_missing_file(tmp_path):
    rc = main(["encrypt", "--key", str(tmp_path / "nope.pk"),
               "--input", "-", "--output", "-"])
    assert rc == 3


def test_exit_code_key_mismatch(tmp_path):
    priv, _ = run_keygen(tmp_path)
    other_priv = tmp_path / "o.sk"
    other_pub = tmp_path / "o.pk"
    assert main(["keygen", "--n0", "3", "--p", "616", "--dv", "7", "--m", "7",
                 "--t-prime", "3", "--seed", "2", "--private", str(other_priv),
                 "--public", str(other_pub)]) == 0
    (tmp_path / "msg").write_bytes(b"hello")
    assert main(["encrypt", "--key", str(other_pub), "--input", str(tmp_path / "msg"),
                 "--output", str(tmp_path / "ct"), "--seed", "1"]) == 0
    rc = main(["decrypt", "--key", str(priv), "--input", str(tmp_path / "ct"),
               "--output", str(tmp_path / "out")])
    assert rc == 3


def test_exit_code_decoding_failure(tmp_path):
    # error weight far beyond the decoder's threshold for this code
    priv = tmp_path / "h.sk"
    pub = tmp_path / "h.pk"
    assert main(["keygen", "--n0", "3", "--p", "608", "--dv", "7", "--m", "7",
                 "--t-prime", "150", "--seed", "3",
                 "--private", str(priv), "--public", str(pub)]) == 0
    (tmp_path / "msg").write_bytes(b"doomed")
    assert main(["encrypt", "--key", str(pub), "--input", str(tmp_path / "msg"),
                 "--output", str(tmp_path / "ct"), "--seed", "4"]) == 0
    rc = main(["decrypt", "--key", str(priv), "--input", str(tmp_path / "ct"),
               "--output", str(tmp_path / "out"), "--max-iterations", "5"])
    assert rc == 6
