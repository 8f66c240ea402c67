import json

import pytest

from src.cli.main import main
from src.cli.models import CliConfig, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compute_plain(capsys):
    code, out, _ = run(capsys, "compute", "--genus", "1", "--rank", "2", "--level", "2")
    assert code == 0
    assert out == "3\n"


def test_compute_json(capsys):
    code, out, _ = run(capsys, "compute", "--rank", "2", "--level", "2", "--weights", "1,0;1,0;1,0;1,0", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["value"] == "2"
    assert report["weights"] == "1,0;1,0;1,0;1,0"
    assert report["engine"] == "analytic"


def test_compute_csv(capsys):
    code, out, _ = run(capsys, "compute", "--genus", "2", "--rank", "1", "--level", "3", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["genus,rank,degree,level,weights,value", "2,1,0,3,,9"]


def test_compute_accepts_parabolic_points(capsys):
    code, out, _ = run(capsys, "compute", "--rank", "2", "--level", "2", "--weights", "n=1,1;a=0,1;1,0", "--engine", "both")
    assert code == 0
    assert out == "1\n"


def test_compute_with_trace(capsys):
    code, out, err = run(capsys, "compute", "--genus", "1", "--rank", "2", "--level", "2", "--engine", "recursive", "--trace")
    assert code == 0
    assert out == "3\n"
    summary = json.loads(err.strip().splitlines()[-1])
    assert summary["replayed"] is True
    assert summary["breakdown"]["genus"] == 1


def test_compute_with_cache(capsys, tmp_path):
    cache_dir = tmp_path / "memo"
    code, out, _ = run(capsys, "--cache-dir", str(cache_dir), "compute", "--rank", "2", "--level", "3", "--weights", "1,0;2,0;3,0", "--engine", "recursive", "--use-cache")
    assert code == 0
    assert out == "1\n"
    assert (cache_dir / "fusion_r2_k3.json").exists()


def test_fusion(capsys):
    code, out, _ = run(capsys, "fusion", "--rank", "2", "--level", "2", "--a", "2,0", "--b", "1,0", "--c", "1,0")
    assert code == 0
    assert out == "1\n"
    code, out, _ = run(capsys, "fusion", "--rank", "2", "--level", "2", "--a", "2,0", "--b", "2,0", "--c", "2,0", "--format", "json")
    assert json.loads(out)["value"] == "0"


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--rank", "1", "--genus", "0..2", "--level", "2..3")
    assert code == 0
    assert out.splitlines() == [
        "genus,rank,degree,level,weights,value",
        "0,1,0,2,,1",
        "0,1,0,3,,1",
        "1,1,0,2,,2",
        "1,1,0,3,,3",
        "2,1,0,2,,4",
        "2,1,0,3,,9",
    ]


def test_table_with_cache_writes_one_memo_per_level(capsys, tmp_path):
    cache_dir = tmp_path / "memo"
    code, out, _ = run(capsys, "--cache-dir", str(cache_dir), "table", "--rank", "2", "--level", "1..2", "--weights", "1,0;1,0", "--engine", "recursive", "--use-cache")
    assert code == 0
    rows = out.splitlines()[1:]
    assert len(rows) == 2
    assert all(row.endswith(",1") for row in rows)
    assert (cache_dir / "fusion_r2_k1.json").exists()
    assert (cache_dir / "fusion_r2_k2.json").exists()


def test_empty_table_prints_the_header(capsys):
    code, out, _ = run(capsys, "table", "--rank", "2", "--degree", "3..1")
    assert code == 0
    assert out.splitlines() == ["genus,rank,degree,level,weights,value"]


def test_cache_commands(capsys, tmp_path):
    cache_dir = str(tmp_path / "memo")
    code, out, _ = run(capsys, "--cache-dir", cache_dir, "cache", "export", "--rank", "2", "--level", "2")
    assert (code, out) == (0, "10\n")

    exported = tmp_path / "memo" / "fusion_r2_k2.json"
    copy = tmp_path / "copy.json"
    copy.write_text(exported.read_text())
    code, out, _ = run(capsys, "--cache-dir", cache_dir, "cache", "clear")
    assert (code, out) == (0, "1\n")
    code, out, _ = run(capsys, "--cache-dir", cache_dir, "cache", "import", "--file", str(copy))
    assert (code, out) == (0, "10\n")
    assert exported.exists()


def test_corrupt_cache_exits_with_2(capsys, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    code, _, err = run(capsys, "--cache-dir", str(tmp_path), "cache", "import", "--file", str(broken))
    assert code == 2
    assert "error:" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["compute", "--rank", "2", "--level", "2", "--weights", "3,0"],
        ["compute", "--rank", "9", "--level", "1"],
        ["compute", "--rank", "2", "--level", "0"],
        ["table", "--rank", "2", "--level", "x..y"],
        ["compute", "--rank", "2"],
    ],
)
def test_invalid_input_exits_with_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_unreachable_tolerance_exits_with_4(capsys):
    code, out, err = run(capsys, "--tolerance", "1e-30", "compute", "--rank", "2", "--level", "1")
    assert code == 4
    assert out == ""
    assert "error:" in err


def test_selfcheck_with_small_bounds(capsys):
    code, out, _ = run(capsys, "selfcheck", "--max-rank", "2", "--max-level", "1", "--max-genus", "1", "--trials", "3")
    assert code == 0
    assert out.splitlines()[-1] == "selfcheck PASS: 14/14 suites, seed=0"


def test_parse_range():
    assert parse_range("2..5") == (2, 5)
    assert parse_range("3") == (3, 3)
    with pytest.raises(ValueError):
        parse_range("a..b")


def test_engine_config_overrides():
    config = CliConfig(command="compute", tolerance=1e-8, dps=40, workers=2)
    engine = config.engine_config()
    assert engine.rounding_tolerance == 1e-8
    assert engine.high_precision_dps == 40
    assert engine.workers == 2
