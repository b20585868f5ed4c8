import pytest

from fracdecomp.cli import run
from fracdecomp.core import cycle_graph
from fracdecomp.textio import read_decomposition, read_graph, write_graph


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_threshold(capsys):
    assert _run(capsys, "threshold", "--e1", "3", "--e2", "1", "--e3", "1") == (0, "2/3\n", "")


def test_threshold_rejects_unsorted(capsys):
    code, _, err = _run(capsys, "threshold", "--e1", "1", "--e2", "3", "--e3", "1")
    assert code == 1 and "descending" in err


def test_threshold_table(capsys):
    code, out, _ = _run(capsys, "threshold-table", "--family", "cycle", "--max", "7")
    assert code == 0
    assert out.splitlines() == ["l lower upper", "5 5/8 2/3", "7 7/12 3/5"]


def test_decompose_writes_certificate(tmp_path, capsys):
    cert = tmp_path / "c.txt"
    code, out, _ = _run(capsys, "decompose", "--graph", "K5", "--template", "1,1,1", "--out", str(cert))
    assert code == 0
    assert out == "triangles=10 copies=10 status=exact\n"
    assert len(read_decomposition(cert.read_text())) == 10
    code, out, _ = _run(capsys, "verify", "--host", "K5", "--certificate", str(cert))
    assert (code, out) == (0, "exact\n")


def test_decompose_uncovered_edge(capsys):
    code, _, err = _run(capsys, "decompose", "--graph", "C5", "--template", "T3,1,1")
    assert code == 2 and "uncovered edge 0 1" in err


def test_verify_detects_tampering(tmp_path, capsys):
    cert = tmp_path / "c.txt"
    _run(capsys, "decompose", "--graph", "K5", "--template", "1,1,1", "--out", str(cert))
    cert.write_text(cert.read_text().replace("copy T1,1,1 1/3 0 1 2", "copy T1,1,1 2/3 0 1 2"))
    code, out, _ = _run(capsys, "verify", "--host", "K5", "--certificate", str(cert))
    assert code == 2 and out.startswith("violation: edge 0 1")


def test_condense(tmp_path, capsys):
    part = tmp_path / "p.txt"
    part.write_text("0 2\n1 4\n3\n")
    code, out, _ = _run(capsys, "condense", "--graph", "C5", "--partition", str(part))
    assert code == 0 and out == "3 3\n0 1 3/1\n0 2 1/1\n1 2 1/1\n"
    part.write_text("0 1\n2 4\n3\n")
    code, _, err = _run(capsys, "condense", "--graph", "C5", "--partition", str(part))
    assert code == 1 and "not independent" in err


def test_blowup(tmp_path, capsys):
    cert, host = tmp_path / "c.txt", tmp_path / "h.txt"
    code, out, _ = _run(capsys, "blowup", "--graph", "C5", "--q", "2", "--out", str(cert), "--host-out", str(host))
    assert code == 0 and out == "injections=8 copies=8 alpha=1/2 status=exact\n"
    code, out, _ = _run(capsys, "verify", "--host", str(host), "--certificate", str(cert))
    assert (code, out) == (0, "exact\n")


def test_blowup_identity_only_above_cap(capsys):
    # parts of sizes 3, 3, 1 give 24 * 24 * 4 injections
    code, out, _ = _run(capsys, "blowup", "--graph", "C7", "--q", "4", "--max-copies", "10")
    assert code == 0 and out == "injections=2304 alpha=1/144 status=identity-verified\n"


def test_blowup_needs_partition_for_non_cycles(capsys):
    code, _, _ = _run(capsys, "blowup", "--graph", "K4", "--q", "2")
    assert code == 1


def test_extremal_and_verify(tmp_path, capsys):
    cert, host = tmp_path / "c.txt", tmp_path / "h.txt"
    code, out, _ = _run(capsys, "extremal", "--lemma", "7", "--template-graph", "C5", "--n", "40",
                        "--out", str(cert), "--host-out", str(host))
    assert code == 0 and out.endswith("divisible=true valid=true\n")
    code, out, _ = _run(capsys, "verify", "--host", str(host), "--certificate", str(cert))
    assert (code, out) == (0, "valid\n")
    cert.write_text(cert.read_text().replace("rho 1/5", "rho 1/4"))
    code, out, _ = _run(capsys, "verify", "--host", str(host), "--certificate", str(cert))
    assert code == 2 and out.startswith("invalid:")


def test_extremal_four_part_default_n(capsys):
    code, out, _ = _run(capsys, "extremal", "--lemma", "8", "--template-graph", "K2,1,1")
    assert code == 0 and out.startswith("n=80 rho=2/5 ")


def test_extremal_bad_n(capsys):
    code, _, err = _run(capsys, "extremal", "--lemma", "7", "--template-graph", "C5", "--n", "30")
    assert code == 1 and "multiple" in err


def test_oracle(tmp_path, capsys):
    wit = tmp_path / "w.txt"
    code, out, _ = _run(capsys, "oracle", "--template", "K3", "--host", "K4", "--witness", str(wit))
    assert (code, out) == (0, "feasible\n")
    assert len(read_decomposition(wit.read_text())) == 4
    code, out, _ = _run(capsys, "oracle", "--template", "C5", "--host", "K33")
    assert (code, out) == (0, "infeasible\n")


def test_generate(tmp_path, capsys):
    code, out, _ = _run(capsys, "generate", "--n", "12", "--min-degree", "8", "--seed", "3")
    assert code == 0 and read_graph(out).min_degree() >= 8
    code, out2, _ = _run(capsys, "generate", "--n", "12", "--min-fraction", "2/3", "--seed", "3")
    assert out2 == out


def test_bad_usage_and_missing_files(capsys):
    assert run([]) == 1
    assert run(["threshold"]) == 1
    capsys.readouterr()
    code, _, err = _run(capsys, "verify", "--host", "K4", "--certificate", "/nonexistent/file")
    assert code == 1 and "cannot read" in err


def test_graph_file_input(tmp_path, capsys):
    g = tmp_path / "g.txt"
    g.write_text(write_graph(cycle_graph(7)))
    code, out, _ = _run(capsys, "blowup", "--graph", str(g), "--q", "3")
    assert code == 0 and "status=exact" in out
