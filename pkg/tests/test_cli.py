import subprocess
import sys

import pytest

from sparse_delaunay.cli import main


@pytest.fixture
def two(tmp_path):
    p = tmp_path / "two.txt"
    p.write_text("# two points\n0 0\n2 0\n")
    return p


@pytest.fixture
def square(tmp_path):
    p = tmp_path / "sq.txt"
    p.write_text("0 0\n1 0\n1 1\n0 1\n")
    return p


def test_build_two_points(two, capsys):
    assert main(["build", str(two), "--eps", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["sdf v1 d=2 n=2 eps=1/1", "0/1 0", "0/1 1", "1/1 0 1"]


def test_pipeline_and_compare(square, tmp_path, capsys):
    sdf, dgm = tmp_path / "sq.sdf", tmp_path / "sq.dgm"
    assert main(["build", str(square), "--eps", "1", "--out", str(sdf)]) == 0
    capsys.readouterr()
    assert main(["diagram", str(sdf)]) == 0
    dgm.write_text(capsys.readouterr().out)
    assert "1 0.5 0.70710678118654757" in dgm.read_text()
    assert main(["compare", str(dgm), str(dgm), "--log", "--bound", "0"]) == 0
    assert capsys.readouterr().out.strip() == "0 PASS"


def test_compare_bound_failure(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    a.write_text("1 1 2\n")
    b.write_text("1 1 4\n")
    assert main(["compare", str(a), str(b), "--log", "--bound", "0.1"]) == 2
    assert capsys.readouterr().out.split()[1] == "FAIL"


def test_greedy(square, capsys):
    assert main(["greedy", str(square)]) == 0
    first = capsys.readouterr().out.splitlines()[0]
    assert first == "0 0 inf -"


def test_stats(capsys):
    assert main(["stats", "--eps", "1", "--sizes", "8,16", "--seed", "1"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[0] == "n,simplices,steiner,max_slice_degree,wall_time"
    assert [r.split(",")[0] for r in rows[1:]] == ["8", "16"]


@pytest.mark.parametrize("content,args", [
    ("0 0\n0 0\n", ["--eps", "1"]),
    ("0 0\n1\n", ["--eps", "1"]),
    ("0 0\n1 x\n", ["--eps", "1"]),
    ("0 0\n1 1\n", ["--eps", "0"]),
    ("0 0\n1 1\n", ["--eps", "abc"]),
])
def test_invalid_input_exit_2(tmp_path, content, args, capsys):
    p = tmp_path / "bad.txt"
    p.write_text(content)
    assert main(["build", str(p)] + args) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_bad_filtration_file(tmp_path):
    p = tmp_path / "bad.sdf"
    p.write_text("not a header\n")
    assert main(["diagram", str(p)]) == 2


def test_module_entry_point(two):
    out = subprocess.run([sys.executable, "-m", "sparse_delaunay", "build", str(two), "--eps", "1"],
                         capture_output=True, text=True, check=True).stdout
    assert out.splitlines()[-1] == "1/1 0 1"


def test_byte_identical_outputs(square, tmp_path):
    outs = []
    for k in range(2):
        f = tmp_path / f"o{k}"
        main(["build", str(square), "--eps", "1/2", "--out", str(f)])
        outs.append(f.read_bytes())
    assert outs[0] == outs[1]
