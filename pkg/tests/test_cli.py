import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from greval.cli import main
from greval.corpus import write_corpus

NP_ATTACH = "(VP saw (NP (NP the man) (PP with (NP a telescope))))\n"
VP_ATTACH = "(VP saw (NP the man) (PP with (NP a telescope)))\n"


@pytest.fixture
def mini_file(tmp_path, mini):
    path = tmp_path / "mini.gr"
    path.write_text(write_corpus(mini))
    return str(path)


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_evaluate_self(mini_file):
    code, out = run("evaluate", mini_file, mini_file)
    assert code == 0
    rows = [l for l in out.splitlines()[1:] if not l.startswith("*") and not l.rstrip().endswith("*")]
    assert rows and all("100.0 100.0 100.0" in l for l in rows)


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_evaluate_formats(mini_file, fmt):
    code, out = run("evaluate", mini_file, mini_file, "--format", fmt, "--policy", "strict")
    assert code == 0
    if fmt == "json":
        doc = json.loads(out)
        assert doc["schema"] == 1 and doc["policy"] == "strict"
    else:
        assert out.splitlines()[0].startswith("relation,predicted_count")


def test_per_sentence_dump(mini_file, tmp_path):
    dump = tmp_path / "per.csv"
    assert run("evaluate", mini_file, mini_file, "--per-sentence", str(dump))[0] == 0
    assert dump.read_text().splitlines()[1] == "G22:1460k,12,12,12,12"


def test_validate_arity_error(tmp_path, capsys):
    bad = tmp_path / "bad.gr"
    lines = ["# sent a", "ncsubj(die, proprietor, _)", "", "# sent b", "dobj(drop, it, _)",
             "ncsubj(go, x, _)", "ncsubj(die, proprietor)"]
    bad.write_text("\n".join(lines) + "\n")
    code, _ = run("validate", str(bad))
    assert code == 1
    err = capsys.readouterr().err
    assert f"{bad}:7: ncsubj requires 3 slots" in err


def test_validate_warnings_exit_zero(mini_file, capsys):
    code, out = run("validate", mini_file)
    assert code == 0
    assert "1 warnings" in out
    assert "non-leaf relation 'mod'" in capsys.readouterr().err


def test_stats_first_row(mini_file):
    code, out = run("stats", mini_file)
    assert code == 0
    assert out.splitlines()[1].split() == ["dependent", "12", "100.0"]
    assert "12.00 GRs per sentence" in out


def test_stats_by_genre(tmp_path, capsys):
    path = tmp_path / "g.gr"
    blocks = []
    for genre in "AGJ":
        for i in range(4):
            blocks.append(f"# sent {genre}{i} genre {genre}\n" + "ncmod(_, go, fast)\n" * 5 +
                          "ncsubj(go, it, _)\n" * 5)
    path.write_text("\n".join(blocks))
    code, out = run("stats", str(path), "--by-genre")
    assert code == 0 and "not significant" in out
    code, out = run("stats", str(path), "--by-genre", "--format", "json")
    assert json.loads(out)["genre_test"]["statistic"] == pytest.approx(0)
    code, _ = run("stats", str(tmp_path / "g.gr"), "--by-genre", "--format", "csv")
    assert code == 0


def test_stats_by_genre_needs_genres(mini_file, capsys):
    code, _ = run("stats", mini_file, "--by-genre")
    assert code == 1
    assert "genre test" in capsys.readouterr().err


def test_agree(mini_file, tmp_path):
    text = Path(mini_file).read_text().replace("dobj(drop, it, _)\n", "")
    other = tmp_path / "b.gr"
    other.write_text(text)
    code, out = run("agree", mini_file, str(other), "--format", "json")
    assert code == 0
    assert json.loads(out)["f_score"] == pytest.approx(0.9565, abs=5e-4)
    assert run("agree", mini_file, str(other))[0] == 0
    assert run("agree", mini_file, str(other), "--format", "csv")[1].startswith("measure,value")


def test_parseval(tmp_path):
    g, p = tmp_path / "g.br", tmp_path / "p.br"
    g.write_text(NP_ATTACH)
    p.write_text(VP_ATTACH)
    code, out = run("parseval", str(g), str(p), "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["recall"] == 0.8 and doc["mean_crossings"] == 0
    code, out = run("parseval", str(g), str(p), "--labelled", "--drop-root", "--drop-unary")
    assert code == 0 and "recall" in out
    p.write_text("((a b)\n")
    assert run("parseval", str(g), str(p))[0] == 1


def test_usage_errors(tmp_path, capsys):
    assert run()[0] == 2
    assert run("evaluate", "only-one")[0] == 2
    assert run("evaluate", str(tmp_path / "missing.gr"), str(tmp_path / "missing.gr"))[0] == 2
    assert run("evaluate", "a", "b", "--policy", "fuzzy")[0] == 2


def test_deterministic_and_read_only(mini_file):
    before = Path(mini_file).read_bytes()
    outs = {run("evaluate", mini_file, mini_file, "--format", "json")[1] for _ in range(3)}
    assert len(outs) == 1
    assert Path(mini_file).read_bytes() == before


def test_console_script(mini_file):
    exe = [sys.executable, "-m", "greval.cli"]
    proc = subprocess.run(exe + ["stats", mini_file], capture_output=True, text=True,
                          env={**os.environ, "PYTHONPATH": str(Path(__file__).parents[1] / "src")})
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].split()[:2] == ["dependent", "12"]
