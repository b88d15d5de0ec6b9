import json

from qdimer.cli import run
from qdimer.generators import cycle
from qdimer.rteval import braid_closure


def test_zq_cycle(capsys):
    assert run(["zq", "--family", "cycle", "--N", "1", "--n", "2", "--identity-q"]) == 0
    assert "q^-1" in capsys.readouterr().out


def test_zq_json_format(capsys):
    assert run(["zq", "--family", "bigon", "--n", "2", "--format", "json"]) == 0
    json.loads(capsys.readouterr().out)


def test_webs_count(capsys):
    assert run(["webs", "--family", "zigzag", "--m", "4", "--n", "1", "--count"]) == 0
    assert capsys.readouterr().out.strip() == "4"


def test_verify_random(capsys):
    code = run(["verify", "--family", "cycle", "--N", "2", "--n", "2", "--random-diagonal", "--trials", "5", "--seed", "1"])
    assert code == 0


def test_verify_is_deterministic(capsys):
    args = ["verify", "--family", "grid2xm", "--m", "2", "--n", "2", "--random-diagonal", "--trials", "3", "--seed", "7"]
    run(args)
    first = capsys.readouterr().out
    run(args)
    assert capsys.readouterr().out == first


def test_stats_csv(tmp_path):
    out = tmp_path / "stats.csv"
    assert run(["stats", "--family", "bigon", "--n", "2", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("# qdimer-csv v1")


def test_gen_writes_loadable_graph(tmp_path):
    path = tmp_path / "g.json"
    assert run(["gen", "--family", "cycle", "--N", "3", "--out", str(path)]) == 0
    assert run(["kdet", "--graph", str(path), "--n", "1"]) == 0


def test_rt_eval_file(tmp_path, capsys):
    path = tmp_path / "d.txt"
    path.write_text(braid_closure(2, [1, -1]).to_text())
    assert run(["rt", "eval", str(path), "--n", "2"]) == 0
    assert capsys.readouterr().out.strip()


def test_usage_errors_exit_one():
    assert run(["zq", "--family", "cycle", "--n", "2"]) == 1
    assert run(["no-such-command"]) == 1
    assert run(["zq", "--family", "cycle", "--N", "2"]) == 1


def test_bad_diagram_exits_one(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("cap v^ @0\n")
    assert run(["rt", "eval", str(path), "--n", "2"]) == 1


def test_rank_mismatch_is_usage_error(tmp_path):
    conn = tmp_path / "c.json"
    run(["gen", "--family", "cycle", "--N", "1", "--out", str(tmp_path / "g.json")])
    conn.write_text("{}")
    assert run(["zq", "--family", "cycle", "--N", "1", "--n", "2", "--connection", str(conn)]) == 1


def test_selftest(capsys):
    assert run(["qalgebra-selftest", "--trials", "50"]) == 0
