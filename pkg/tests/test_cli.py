import csv
import io

import pytest

from stochexp.cli import build_parser, config_from_args, main


def run(capsys, *argv):
    assert main(list(argv)) == 0
    out = capsys.readouterr().out
    return out, list(csv.reader(io.StringIO(out)))


def test_tables(capsys):
    out, rows = run(capsys, "tables", "--q", "1,10,10000")
    assert rows[0] == ["table_id", "formula", "q", "value", "rounded"]
    got = {(r[0], r[1], r[2]): r[4] for r in rows[1:]}
    assert got[("table1", "e101_100", "1")] == "0.0459"
    assert got[("table5", "ninepi4_80", "10")] == "1.8836"
    assert got[("table3", "edaug", "10000")] == "3.3778e-06"
    assert len(rows) == 1 + 3 * 6


def test_output_is_byte_stable(capsys, tmp_path):
    first, _ = run(capsys, "identities", "--q", "1,100")
    second, _ = run(capsys, "identities", "--q", "1,100")
    assert first == second
    target = tmp_path / "ids.csv"
    main(["identities", "--q", "1,100", "--out", str(target)])
    assert target.read_bytes() == first.encode()


def test_coeffs(capsys):
    _, rows = run(capsys, "coeffs", "--kernel", "1", "--q", "1", "--basis", "legendre")
    assert rows[0] == ["j1", "C"]
    assert float(rows[1][1]) == pytest.approx(-0.5)
    _, rows = run(capsys, "coeffs", "--kernel", "I00", "--q", "2", "--basis", "trig",
                  "--t0", "1", "--t1", "3")
    assert rows[0] == ["j1", "j2", "C"] and len(rows) == 10
    assert float(rows[1][2]) == pytest.approx(1.0)  # C_00 = (T - t) / 2


def test_compare(capsys):
    _, rows = run(capsys, "compare", "--kernel", "I1", "--kernel", "I00", "--kernel", "I2",
                  "--target", "1e-12")
    found = {(r[0], r[1]): r for r in rows[1:]}
    assert found[("legendre", "I1")][2] == "1"
    assert float(found[("legendre", "I1")][3]) <= 1e-12
    assert found[("legendre", "I2")][2] == "2"
    _, rows = run(capsys, "compare", "--kernel", "I00", "--basis", "trig")
    # smallest q with (pi^2/6 - H_q) / (2 pi^2) <= 0.01 is q = 5
    assert rows[1][:3] == ["trig", "I00", "5"]


def test_mc_verify_format(capsys):
    _, rows = run(capsys, "mc-verify", "--trials", "1000", "--grid", "200", "--q", "1")
    assert rows[0] == ["integral_id", "basis", "q", "mc_error", "stderr", "closed_form", "pass"]
    assert [r[0] for r in rows[1:]] == ["I00", "I000", "I10"]
    assert all(r[6] in ("true", "false") for r in rows[1:])


def test_parser():
    cfg = config_from_args(["tables", "--q", "1,2", "--q", "3", "--seed", "5"])
    assert cfg.q == [1, 2, 3] and cfg.seed == 5
    with pytest.raises(SystemExit):
        build_parser().parse_args(["frobnicate"])
    with pytest.raises(ValueError):
        config_from_args(["tables", "--trials", "0"])
