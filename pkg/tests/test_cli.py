import subprocess
import sys

import numpy as np
import pytest

from parlouvain import Graph, build_adjacency, generate_ring_of_cliques, modularity
from parlouvain.cli import main
from parlouvain.graph_io import read_partition
from parlouvain.modularity import aggregate
from parlouvain.timing import PROCESSES, parse_timing


def modularity_line(out):
    lines = [l for l in out.splitlines() if l.startswith("modularity=")]
    assert len(lines) == 1
    return float(lines[0].split("=", 1)[1])


def test_generate_ring_partition(tmp_path, capsys):
    part = tmp_path / "out.txt"
    assert main(["--generate", "ring:10,6", "--threads", "1", "--partition", str(part)]) == 0
    labels = read_partition(part.read_text())
    assert sorted(labels) == list(range(60))
    blocks = [{labels[v] for v in range(t * 6, t * 6 + 6)} for t in range(10)]
    assert all(len(b) == 1 for b in blocks)
    assert len(set.union(*blocks)) == 10
    q = modularity_line(capsys.readouterr().out)
    g = generate_ring_of_cliques(10, 6)
    final = np.array([labels[v] for v in range(60)])
    assert q == pytest.approx(modularity(aggregate(build_adjacency(g), final)), abs=1e-12)


def test_missing_input_exits_2(tmp_path, capsys):
    assert main(["--input", str(tmp_path / "missing.txt")]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_unknown_flag_exits_2():
    with pytest.raises(SystemExit) as info:
        main(["--generate", "ring:3,3", "--frobnicate"])
    assert info.value.code == 2


@pytest.mark.parametrize("arg", ["ring:2,5", "ring:3", "clique:4"])
def test_bad_generator_exits_2(arg, capsys):
    assert main(["--generate", arg]) == 2
    assert "error" in capsys.readouterr().err


def test_parse_error_exits_2(tmp_path, capsys):
    f = tmp_path / "g.txt"
    f.write_text("0 1\n1 two\n")
    assert main(["--input", str(f)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_zero_weight_graph_exits_2(tmp_path, capsys):
    f = tmp_path / "g.mtx"
    f.write_text("%%MatrixMarket matrix coordinate pattern symmetric\n3 3 0\n")
    assert main(["--input", str(f), "--format", "matrixmarket"]) == 2
    assert "no edge weight" in capsys.readouterr().err


def test_bad_threads_exits_2(capsys):
    assert main(["--generate", "ring:3,3", "--threads", "0"]) == 2


def test_threads_do_not_change_outputs(tmp_path):
    edges = tmp_path / "g.txt"
    rng = np.random.default_rng(4)
    lines = [f"{10 * u} {10 * v} {w:.3f}" for u, v, w in
             zip(rng.integers(200, size=900), rng.integers(200, size=900), rng.uniform(1, 3, 900))]
    edges.write_text("\n".join(lines) + "\n")
    outputs = {}
    for threads in (1, 8):
        part, dend = tmp_path / f"p{threads}", tmp_path / f"d{threads}"
        assert main(["--input", str(edges), "--threads", str(threads),
                     "--partition", str(part), "--output", str(dend)]) == 0
        outputs[threads] = (part.read_bytes(), dend.read_bytes())
    assert outputs[1] == outputs[8]
    first = outputs[1][0].decode().splitlines()[0].split()
    assert int(first[0]) % 10 == 0  # external ids are written back


def test_matrix_market_input(tmp_path, capsys):
    f = tmp_path / "g.mtx"
    f.write_text("%%MatrixMarket matrix coordinate real general\n4 4 3\n1 2 1\n2 3 1\n3 4 1\n")
    assert main(["--input", str(f), "--format", "matrixmarket", "--engine", "sequential"]) == 0
    assert modularity_line(capsys.readouterr().out) >= 0


def test_timing_report(tmp_path, capsys):
    report = tmp_path / "timing.txt"
    assert main(["--generate", "ring:3,3", "--timing", str(report)]) == 0
    kv = parse_timing(report.read_text())
    assert kv["graph.n"] == "9"
    assert kv["graph.m"] == "12"
    levels = int(kv["levels"])
    per_process = [k for k in kv if k.startswith("level.")]
    assert len(per_process) == 5 * levels
    for t in range(levels):
        for p in PROCESSES:
            assert float(kv[f"level.{t}.{p}"]) >= 0
    assert float(kv["modularity"]) == modularity_line(capsys.readouterr().out)


def test_module_entry_point(tmp_path):
    out = subprocess.run(
        [sys.executable, "-m", "parlouvain", "--generate", "ring:4,4"],
        capture_output=True, text=True, check=True,
    )
    assert out.stdout.startswith("modularity=")


def test_output_dendrogram_blocks(tmp_path):
    dend = tmp_path / "d.txt"
    assert main(["--generate", "ring:25,4", "--output", str(dend)]) == 0
    text = dend.read_text()
    assert text.count("# level") >= 2
    assert "# partition\n" in text
