import io
import subprocess
import sys

import numpy as np
import pytest

from conftest import RING, SELF_TOUCHING
from loci import Cell, cli, cotra, oracle_interior, save_binary_image


@pytest.fixture
def ring_file(tmp_path):
    path = tmp_path / "ring.pbm"
    path.write_bytes(save_binary_image(RING))
    return path


@pytest.fixture
def pinch_file(tmp_path):
    path = tmp_path / "pinch.pbm"
    path.write_bytes(save_binary_image(SELF_TOUCHING))
    return path


def read_csv(path):
    return np.array([[int(v) for v in line.split(",")]
                     for line in path.read_text().splitlines()])


def test_fill_ring_csv(ring_file, capsys):
    assert cli.main(["fill", str(ring_file)]) == 0
    cells = read_csv(ring_file.with_name("ring.fua.csv"))
    assert (cells == Cell.INTERIOR).sum() == 1
    assert not ring_file.with_name("ring.cotra.csv").exists()
    out = capsys.readouterr().out
    assert "interior_count: 1" in out


def test_fill_all_formats(ring_file, tmp_path):
    prefix = tmp_path / "out" / "r"
    prefix.parent.mkdir()
    assert cli.main(["fill", str(ring_file), "--cotra", "--out", str(prefix),
                     "--format", "pgm,ppm,csv"]) == 0
    names = sorted(p.name for p in prefix.parent.iterdir())
    assert names == ["r.cotra.csv", "r.cotra.pgm", "r.cotra.ppm",
                     "r.fua.csv", "r.fua.pgm", "r.fua.ppm"]
    assert (prefix.parent / "r.fua.pgm").read_bytes().startswith(b"P2\n5 5\n3\n")


def test_pinch_fua_and_cotra_differ_where_the_oracle_disagrees(pinch_file, capsys):
    assert cli.main(["fill", str(pinch_file), "--cotra"]) == 0
    fua = read_csv(pinch_file.with_name("pinch.fua.csv")) == Cell.INTERIOR
    cot = read_csv(pinch_file.with_name("pinch.cotra.csv")) == Cell.INTERIOR
    truth = np.zeros_like(fua)
    for y, x in oracle_interior(SELF_TOUCHING):
        truth[y - 1, x - 1] = True
    assert np.array_equal(cot, truth)
    assert (fua != cot).any()
    assert np.array_equal(fua != cot, fua != truth)
    assert "warning:" in capsys.readouterr().err


def test_interactive_yes(ring_file, monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("1\n"))
    assert cli.main(["fill", str(ring_file), "--interactive"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "Try CoTRA? Yes = 1; No = any key"
    assert ring_file.with_name("ring.cotra.csv").exists()


def test_interactive_no(ring_file, monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("n\n"))
    assert cli.main(["fill", str(ring_file), "--interactive"]) == 0
    assert not ring_file.with_name("ring.cotra.csv").exists()


def test_fua_only_path_never_touches_cotra(ring_file, monkeypatch):
    def boom(*args, **kwargs):
        raise AssertionError("cotra was called")

    for name in ("cotra_fill", "lego_curve", "trace_lego_curve",
                 "repair_trapped_lpixels", "prune_spikes"):
        monkeypatch.setattr(cotra, name, boom)
    assert cli.main(["fill", str(ring_file)]) == 0
    assert cli.main(["locate", str(ring_file), "3", "3"]) == 0


@pytest.mark.parametrize("y,x,expected", [(3, 3, "INTERIOR"), (1, 1, "EXTERIOR"),
                                          (2, 2, "PICTURE")])
def test_locate(ring_file, capsys, y, x, expected):
    assert cli.main(["locate", str(ring_file), str(y), str(x)]) == 0
    assert capsys.readouterr().out.strip() == expected


def test_locate_lpixel(tmp_path, capsys):
    path = tmp_path / "pair.pbm"
    path.write_bytes(b"P1\n6 6\n000000\n000000\n001000\n000100\n000000\n000000\n")
    assert cli.main(["locate", str(path), "3", "4", "--cotra"]) == 0
    assert capsys.readouterr().out.strip() == "LPIXEL"


def test_locate_out_of_range(ring_file, capsys):
    assert cli.main(["locate", str(ring_file), "9", "9"]) == 2
    assert "usage" in capsys.readouterr().err


def test_parse_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.pbm"
    bad.write_bytes(b"P1\n4 4\n0 1\n")
    assert cli.main(["fill", str(bad)]) == 2
    assert "offset" in capsys.readouterr().err
    assert cli.main(["fill", str(tmp_path / "missing.pbm")]) == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["fill", str(bad), "--format", "jpg"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["fill", str(bad), "--threshold", "300"])
    assert info.value.code == 2


def test_degenerate_input_warns_and_succeeds(tmp_path, capsys):
    path = tmp_path / "dot.pbm"
    path.write_bytes(b"P1\n3 3\n000\n010\n000\n")
    assert cli.main(["fill", str(path), "--cotra"]) == 0
    err = capsys.readouterr().err
    assert "degenerate" in err


def test_unframed_input_is_padded(tmp_path, capsys):
    path = tmp_path / "block.pbm"
    path.write_bytes(b"P1\n3 3\n111\n101\n111\n")
    assert cli.main(["locate", str(path), "3", "3"]) == 0
    assert capsys.readouterr().out.strip() == "INTERIOR"


def test_atomic_write_leaves_nothing_on_failure(tmp_path, monkeypatch):
    target = tmp_path / "m.csv"

    def fail(src, dst):
        raise OSError("disk full")

    monkeypatch.setattr(cli.os, "replace", fail)
    with pytest.raises(OSError):
        cli.write_atomic(target, b"0\n")
    assert list(tmp_path.iterdir()) == []


def test_outputs_are_deterministic(ring_file, tmp_path):
    first, second = tmp_path / "a", tmp_path / "b"
    for prefix in (first, second):
        cli.main(["fill", str(ring_file), "--cotra", "--out", str(prefix),
                  "--format", "csv,pgm,ppm"])
    for tag in ("fua", "cotra"):
        for ext in ("csv", "pgm", "ppm"):
            assert (tmp_path / f"a.{tag}.{ext}").read_bytes() == \
                (tmp_path / f"b.{tag}.{ext}").read_bytes()


def test_bench_csv(capsys):
    assert cli.main(["bench", "--sizes", "16,32", "--reps", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("side,pixels,fua_seconds,fua_steps")
    assert [line.split(",")[0] for line in lines[1:]] == ["16", "32"]


def test_bench_degenerate_kind():
    out = io.StringIO()
    rows = cli.run_bench([16, 24], cli.oracle.PictureKind.DEGENERATE, reps=3, stdout=out)
    assert all(row[-1] == 0 for row in rows)


def test_bench_sizes_must_increase():
    with pytest.raises(SystemExit) as info:
        cli.main(["bench", "--sizes", "32,16"])
    assert info.value.code == 2


def test_console_script(ring_file):
    result = subprocess.run([sys.executable, "-m", "loci.cli", "locate", str(ring_file), "3", "3"],
                            capture_output=True, text=True, check=True)
    assert result.stdout == "INTERIOR\n"
