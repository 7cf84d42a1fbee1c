"""Command-line interface: outputs, exit codes, environment handling."""

import subprocess
import sys

import pytest

from goalrank import fixtures
from goalrank.cli import main


@pytest.fixture(scope="module")
def paths(tmp_path_factory):
    root = tmp_path_factory.mktemp("fixtures")
    out = {}
    for name in ("medication.gm", "medication_fragment.gm", "home.ctx",
                 "stakeholders.prefs", "stakeholders_privacy.prefs",
                 "dementia_home.sit", "normal_home.sit", "dementia_tired.sit"):
        p = root / name
        p.write_text(fixtures.read(name), encoding="utf-8")
        out[name] = str(p)
    return out


def _fragment_args(paths, *extra, situation="dementia_home.sit"):
    return ["--model", paths["medication_fragment.gm"],
            "--schema", paths["home.ctx"],
            "--catalogue", paths["stakeholders.prefs"],
            "--situation", paths[situation], *extra]


def test_rank_table(paths, capsys):
    assert main(["rank", *_fragment_args(paths)]) == 0
    out = capsys.readouterr().out
    rows = out.splitlines()
    assert rows[0].split() == ["rank", "tasks", "sps", "hps", "psd"]
    psd_column = [r.split()[-1] for r in rows[1:]]
    assert psd_column == ["24", "14", "11", "1"]


def test_rank_top_one(paths, capsys):
    assert main(["rank", *_fragment_args(paths), "--top", "1"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert len(rows) == 2
    assert "t5, t7, t9" in rows[1]


def test_rank_writes_document(paths, tmp_path, capsys):
    out_file = tmp_path / "result.rank"
    assert main(["rank", *_fragment_args(paths), "--out", str(out_file)]) == 0
    capsys.readouterr()
    text = out_file.read_text(encoding="utf-8")
    assert "tasks: [t5, t7, t9]" in text
    assert "hps: 18" in text


def test_rank_missing_situation_is_usage_error(paths, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["rank", "--model", paths["medication.gm"],
              "--schema", paths["home.ctx"],
              "--catalogue", paths["stakeholders.prefs"]])
    assert exc.value.code == 2
    capsys.readouterr()


def test_rank_unreadable_file(paths, capsys):
    code = main(["rank", *_fragment_args(paths)[:-2],
                 "--situation", "/definitely/not/here.sit"])
    assert code == 2
    assert "cannot read" in capsys.readouterr().err


def test_rank_parse_error_exits_one(paths, tmp_path, capsys):
    bad = tmp_path / "bad.gm"
    bad.write_text('goal g1 "x"\nroot g1\nand g1 { gx }\n', encoding="utf-8")
    code = main(["rank", "--model", str(bad), "--schema", paths["home.ctx"],
                 "--catalogue", paths["stakeholders.prefs"],
                 "--situation", paths["dementia_home.sit"]])
    assert code == 1
    err = capsys.readouterr().err
    assert "UndeclaredId" in err and "bad.gm:3:" in err


def test_mode_env_sets_default(paths, capsys, monkeypatch):
    monkeypatch.setenv("GOALRANK_MODE", "dominance")
    assert main(["rank", *_fragment_args(paths)]) == 0
    capsys.readouterr()
    monkeypatch.setenv("GOALRANK_MODE", "bogus")
    assert main(["rank", *_fragment_args(paths)]) == 2
    assert "unknown scoring mode" in capsys.readouterr().err


def test_explain_breakdown(paths, capsys):
    assert main(["explain", *_fragment_args(paths), "--solution", "t5,t7,t9"]) == 0
    out = capsys.readouterr().out
    assert "sg1: +6 (1 make, 0 break)" in out
    assert "sg6: -2 (0 make, 1 break)" in out
    assert "t5: 9, t7: 9" in out
    assert "relevant: p1, p6, p7, p8, p9" in out
    assert "psd: 24" in out


def test_explain_unknown_solution(paths, capsys):
    code = main(["explain", *_fragment_args(paths), "--solution", "t6,t7"])
    assert code == 1
    assert "UnknownSolution" in capsys.readouterr().err


def test_validate_ok(paths, capsys):
    assert main(["validate", "--model", paths["medication.gm"],
                 "--schema", paths["home.ctx"],
                 "--catalogue", paths["stakeholders.prefs"]]) == 0
    assert "ok" in capsys.readouterr().out


def test_validate_model_only(paths, capsys):
    assert main(["validate", "--model", paths["medication_fragment.gm"]]) == 0
    capsys.readouterr()


def test_validate_rejects_half_binding(paths, capsys):
    assert main(["validate", "--model", paths["medication.gm"],
                 "--schema", paths["home.ctx"]]) == 2
    capsys.readouterr()


def test_validate_bad_model(paths, tmp_path, capsys):
    bad = tmp_path / "bad.gm"
    bad.write_text("task t1 \"x\"\n", encoding="utf-8")
    assert main(["validate", "--model", str(bad)]) == 1
    assert "MissingRoot" in capsys.readouterr().err


def test_export_asp_stdout_and_file(paths, tmp_path, capsys):
    assert main(["export-asp", *_fragment_args(paths)]) == 0
    out = capsys.readouterr().out
    assert "sel(t6) v sel(t5) :- sel(g5)." in out
    target = tmp_path / "program.dl"
    assert main(["export-asp", *_fragment_args(paths), "--out", str(target)]) == 0
    capsys.readouterr()
    assert target.read_text(encoding="utf-8") == out


def test_bench_smoke(paths, capsys):
    assert main(["bench", *_fragment_args(paths), "--kmax", "1", "--runs", "1",
                 "--backend", "numpy"]) == 0
    out = capsys.readouterr().out
    assert "tPreferenceReasoning" in out
    assert "backend: numpy" in out


def test_console_script_entry_point(paths):
    proc = subprocess.run(
        [sys.executable, "-m", "goalrank.cli"],
        capture_output=True, text=True)
    assert proc.returncode == 2  # no subcommand is a usage error


def test_installed_script_runs(paths):
    proc = subprocess.run(
        ["goalrank", "rank", *_fragment_args(paths), "--top", "1"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "t5, t7, t9" in proc.stdout
