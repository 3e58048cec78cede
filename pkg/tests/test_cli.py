import json
import subprocess
import sys

from mcg_presentation import make_signature, presentation, presentation_from_json
from mcg_presentation.cli import run


def out_of(capsys, argv):
    code = run(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_gen_plain(capsys):
    code, out, _ = out_of(capsys, ["gen", "1", "1", "--format", "plain"])
    assert code == 0
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    assert [l for l in lines if l.startswith("gen")] == ["gen b", "gen a1"]
    assert len([l for l in lines if l.startswith("rel")]) == 1
    assert "a1 b a1 = b a1 b" in out


def test_abel(capsys):
    assert out_of(capsys, ["abel", "2", "0"])[:2] == (0, "Z/10\n")
    code, out, _ = out_of(capsys, ["abel", "3", "0", "--format", "json"])
    assert json.loads(out) == {"free_rank": 0, "torsion": [], "text": "0"}


def test_degenerate(capsys):
    code, out, err = out_of(capsys, ["verify", "1", "0"])
    assert code == 2 and out == ""
    assert "degenerate" in err
    assert out_of(capsys, ["map", "1", "1", "--word", "b"])[0] == 2


def test_bad_format_and_word(capsys):
    assert out_of(capsys, ["gen", "2", "0", "--format", "tex"])[0] == 2
    code, _, err = out_of(capsys, ["map", "2", "2", "--word", "a1 q3"])
    assert code == 2 and "error" in err
    code, _, err = out_of(capsys, ["map", "2", "1", "--word", "a9"])
    assert code == 2 and "a9" in err


def test_verify_pass(capsys):
    code, out, _ = out_of(capsys, ["verify", "2", "1", "--format", "json"])
    rep = json.loads(out)
    assert code == 0 and rep["ok"] and rep["failures"] == []
    assert any(k.startswith("L_{") for k in rep["results"])
    assert any(k.startswith("etoile.X") for k in rep["results"])


def test_map(capsys, tmp_path):
    assert out_of(capsys, ["map", "2", "2", "--word", "a1 a4'"])[1] == "1\n"
    f = tmp_path / "w.txt"
    f.write_text("c2_4\n b\n")
    assert out_of(capsys, ["map", "2", "2", "--word", f"@{f}"])[1] == "c2_1 b\n"
    code, out, _ = out_of(capsys, ["map", "2", "2", "--verify"])
    assert code == 0 and "passed" in out


def test_export_and_determinism(capsys, tmp_path):
    dst = tmp_path / "p.json"
    assert out_of(capsys, ["export", "3", "1", "--out", str(dst)])[0] == 0
    assert presentation_from_json(dst.read_text()) == presentation(make_signature(3, 1))
    assert out_of(capsys, ["export", "3", "1"])[0] == 2
    a = out_of(capsys, ["gen", "3", "2", "--format", "magma-style"])[1]
    b = out_of(capsys, ["gen", "3", "2", "--format", "magma-style"])[1]
    assert a == b


def test_replay(capsys, tmp_path):
    code, out, _ = out_of(capsys, ["replay", "2", "0"])
    assert code == 0
    good = tmp_path / "good.mcg"
    good.write_text("script t\nclaim a1 b a1 = b a1 b\n  apply T_{b,a1} at 0 => b a1 b\nend\n")
    assert out_of(capsys, ["replay", "2", "0", "--scripts", str(tmp_path)])[0] == 0
    bad = tmp_path / "zbad.mcg"
    bad.write_text("script u\nclaim a1 = b\n  auto budget 20 => b\nend\n")
    code, out, _ = out_of(capsys, ["replay", "2", "0", "--scripts", str(tmp_path)])
    assert code == 1 and "FAIL script:u" in out
    bad.write_text("script broken\n  cancel 0\n")
    assert out_of(capsys, ["replay", "2", "0", "--scripts", str(bad)])[0] == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "mcg_presentation", "abel", "1", "1"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and r.stdout == "Z\n"
