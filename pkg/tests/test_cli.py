from click.testing import CliRunner

from cgedit.cli import main
from cgedit.io import parse_edit_set, parse_graph, parse_trace, serialize_graph
from cgedit.graph import apply_edits
from cgedit.cograph import is_cograph
from conftest import C5, HOST7, K2K2, P4


def _file(tmp_path, g, name="g.txt"):
    p = tmp_path / name
    p.write_text(serialize_graph(g))
    return str(p)


def test_recognize(tmp_path):
    r = CliRunner().invoke(main, ["recognize", _file(tmp_path, K2K2)])
    assert r.exit_code == 0 and r.output == "cograph\n"
    r = CliRunner().invoke(main, ["recognize", _file(tmp_path, P4)])
    assert r.exit_code == 1 and r.output == "not-cograph witness: 0 1 2 3\n"


def test_mdtree(tmp_path):
    r = CliRunner().invoke(main, ["mdtree", "--format", "text", _file(tmp_path, HOST7)])
    assert r.output == "PR(S(0,5),1,2,3,4,6)\n"


def test_edit_with_trace_and_verify(tmp_path):
    trace = tmp_path / "t.trace"
    r = CliRunner().invoke(main, ["edit", _file(tmp_path, C5), "--method", "exact", "--trace", str(trace),
                                  "--verify"])
    assert r.exit_code == 0, r.output
    f = parse_edit_set(r.stdout)
    assert len(f) == 2 and is_cograph(apply_edits(C5, f))
    assert "cost: 2" in r.stderr and "ok   cograph" in r.stderr
    assert parse_trace(trace.read_text()).replay(C5) == apply_edits(C5, f)


def test_edit_every_method(tmp_path):
    path = _file(tmp_path, HOST7)
    for m in ("bruteforce", "exact", "greedy", "greedy-rand", "random-pair"):
        r = CliRunner().invoke(main, ["edit", path, "--method", m, "--seed", "5", "--trace",
                                      str(tmp_path / f"{m}.trace")])
        assert r.exit_code == 0, (m, r.output)
        assert is_cograph(apply_edits(HOST7, parse_edit_set(r.stdout)))


def test_edit_seed_reproducible(tmp_path):
    path = _file(tmp_path, C5)
    runs = [CliRunner().invoke(main, ["edit", path, "--method", "greedy-rand", "--seed", "8"]).stdout
            for _ in range(2)]
    assert runs[0] == runs[1]


def test_edit_bruteforce_too_large(tmp_path):
    from cgedit.graph import Graph

    r = CliRunner().invoke(main, ["edit", _file(tmp_path, Graph.path(9)), "--method", "bruteforce"])
    assert r.exit_code != 0 and "limited" in r.output


def test_bad_graph_file(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("2 1\n0 0\n")
    r = CliRunner().invoke(main, ["mdtree", str(p)])
    assert r.exit_code != 0 and "line 2: self-loop" in r.output


def test_gen(tmp_path):
    r = CliRunner().invoke(main, ["gen", "--n", "12", "--k", "3", "--seed", "2", "--emit-planted"])
    assert r.exit_code == 0
    g = parse_graph(r.output)
    assert g.n == 12
    lines = r.output.splitlines()
    assert lines[0] == "# generated n=12 k=3 seed=2"
    assert lines[1].startswith("# planted-cotree: ")
    assert sum(line.startswith("# planted-edit: ") for line in lines) == 3
    again = CliRunner().invoke(main, ["gen", "--n", "12", "--k", "3", "--seed", "2", "--emit-planted"])
    assert again.output == r.output
    bad = CliRunner().invoke(main, ["gen", "--n", "3", "--k", "9"])
    assert bad.exit_code != 0


def test_bench(tmp_path):
    cfg = tmp_path / "c.toml"
    cfg.write_text('n = [8]\nk = [2]\nmethods = ["exact", "greedy"]\nreps = 2\nseed = 1\n')
    r = CliRunner().invoke(main, ["bench", "--config", str(cfg)])
    assert r.exit_code == 0, r.output
    rows = r.stdout.splitlines()
    assert rows[0] == "instance,n,k,method,cost,runtime,recovered_exactly" and len(rows) == 5
    assert "mean cost greedy:" in r.stderr
    r = CliRunner().invoke(main, ["bench", "--config", str(cfg), "--scaling"])
    assert r.exit_code == 0 and r.stdout.split()[:4] == ["n", "decomp_s", "edit_s", "edit_ratio"]
    cfg.write_text('n = [9]\nk = [1]\nmethods = ["bruteforce"]\n')
    r = CliRunner().invoke(main, ["bench", "--config", str(cfg)])
    assert r.exit_code != 0 and "bruteforce" in r.output


def test_version():
    r = CliRunner().invoke(main, ["--version"])
    assert r.exit_code == 0 and "0.1.0" in r.output
