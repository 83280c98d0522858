"""End-to-end CLI tests via the ``main`` entry point."""

import json

import pytest

from treeplan.cli import main


def run_cli(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_plan_json(capsys):
    code, out, _ = run_cli(capsys, "plan", "17983", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc == {
        "l": 17983,
        "case": 1,
        "h5": 0,
        "h4": 0,
        "h3": 9,
        "h2": 0,
        "arities": [3] * 9,
        "running_time": 27,
        "work": 26979,
        "max_processors": 5995,
    }


def test_plan_text(capsys):
    code, out, _ = run_cli(capsys, "plan", "20")
    assert code == 0
    assert "case: 4" in out
    assert "arities (base->root): 5 4" in out
    assert "running time: 9" in out


def test_plan_rejects_degenerate_l(capsys):
    code, out, err = run_cli(capsys, "plan", "1")
    assert code == 2
    assert out == ""
    assert "error" in err


def test_build_golden_document(capsys):
    code, out, _ = run_cli(capsys, "build", "73")
    assert code == 0
    assert out == (
        '{"l": 73, "arities": [3, 3, 3, 3], '
        '"rightmost": [3, 3, 1, 1], "form": "same_depth"}\n'
    )


def test_rework_document(capsys):
    code, out, _ = run_cli(capsys, "rework", "17983")
    assert code == 0
    doc = json.loads(out)
    assert doc["form"] == "reworked"
    assert doc["rightmost"] == [3, 3, 3]
    assert doc["trace"] == [[3, 3, 3, 1, 1, 1, 1, 1], [3, 3, 3]]


def test_analyze_text(capsys):
    code, out, _ = run_cli(capsys, "analyze", "73")
    assert code == 0
    assert "work: 110 -> 108" in out
    assert "max processors: 25 -> 24" in out
    assert "rework trace" in out


def test_analyze_noop_message(capsys):
    code, out, _ = run_cli(capsys, "analyze", "27")
    assert code == 0
    assert "no rework applicable" in out
    assert "work: 39 -> 39" in out


def test_analyze_renders_figure(capsys, tmp_path):
    out_dir = tmp_path / "figs"
    code, out, _ = run_cli(capsys, "analyze", "73", "--figures", str(out_dir), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    paths = doc["figures"]
    assert len(paths) == 1
    assert paths[0].endswith("processors_l73.png")
    png = out_dir / "processors_l73.png"
    assert png.is_file()
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_verify_small_range(capsys):
    code, out, err = run_cli(capsys, "verify", "--from", "2", "--to", "40")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert records
    assert all(r["status"] == "ok" for r in records)
    assert {r["l"] for r in records} == set(range(2, 41))
    assert "0 violations" in err


def test_verify_renders_figures(capsys, tmp_path):
    out_dir = tmp_path / "sweep"
    code, out, err = run_cli(capsys, "verify", "--from", "2", "--to", "12", "--figures", str(out_dir))
    assert code == 0
    assert (out_dir / "sweep_work.png").is_file()
    assert (out_dir / "sweep_processors.png").is_file()
    assert "figure:" in err


def test_verify_rejects_bad_range(capsys):
    code, _, err = run_cli(capsys, "verify", "--from", "1", "--to", "5")
    assert code == 2
    assert "error" in err


def test_hash_file(capsys, tmp_path):
    path = tmp_path / "msg.bin"
    path.write_bytes(bytes(range(48)))
    code, out, _ = run_cli(capsys, "hash", str(path), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc == {
        "digest": "fe2c67f0571d65cd",
        "l": 6,
        "running_time": 5,
        "work": 8,
        "max_processors": 2,
        "form": "reworked",
    }
    # the rework is a no-op at l=6, so --same-depth matches the digest
    code, out, _ = run_cli(capsys, "hash", str(path), "--same-depth", "--format", "json")
    assert code == 0
    assert json.loads(out)["digest"] == "fe2c67f0571d65cd"


def test_hash_empty_file(capsys, tmp_path):
    path = tmp_path / "empty.bin"
    path.write_bytes(b"")
    code, out, _ = run_cli(capsys, "hash", str(path))
    assert code == 0
    assert out.splitlines()[0] == "45147da9fefc4f7d"
    assert "l=1" in out and "form=same_depth" in out


def test_hash_missing_file(capsys, tmp_path):
    code, _, err = run_cli(capsys, "hash", str(tmp_path / "nope.bin"))
    assert code == 1
    assert "error" in err


@pytest.mark.parametrize(
    "argv",
    [
        ("plan", "17983", "--format", "json"),
        ("build", "73"),
        ("rework", "17983"),
        ("analyze", "73", "--format", "json"),
        ("verify", "--from", "2", "--to", "15"),
    ],
)
def test_output_is_byte_stable(capsys, argv):
    _, out1, _ = run_cli(capsys, *argv)
    _, out2, _ = run_cli(capsys, *argv)
    assert out1 == out2
