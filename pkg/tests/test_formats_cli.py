import json

import pytest

from loopforge.cli import main
from loopforge.formats import (TableParseError, read_table, table_from_json, table_from_text,
                               table_to_json, table_to_text, write_table)
from loopforge.loopcore import analyze, cyclic_group


def test_text_round_trip():
    t = cyclic_group(7)
    assert table_from_text(table_to_text(t)) == t
    assert table_to_text(t).splitlines()[0] == "7"


def test_json_round_trip():
    t = cyclic_group(4)
    d = json.loads(table_to_json(t))
    assert d == {"schema": 1, "order": 4, "table": [list(r) for r in t.rows]}
    assert table_from_json(table_to_json(t)) == t


@pytest.mark.parametrize("text, line, column", [
    ("", 1, 0),
    ("x\n", 1, 1),
    ("2\n0 1\n", 2, 0),
    ("2\n0 1\n1\n", 3, 0),
    ("2\n0 1\n1 z\n", 3, 2),
    ("2\n0 1\n1 5\n", 3, 2),
])
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(TableParseError) as err:
        table_from_text(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_json_errors():
    for bad in ("{", '{"order": 2}', '{"table": [[0, 1], [1]]}', '{"order": 3, "table": [[0]]}'):
        with pytest.raises(TableParseError):
            table_from_json(bad)


def test_read_and_write_pick_format_by_suffix(tmp_path):
    t = cyclic_group(3)
    write_table(t, tmp_path / "a.json")
    write_table(t, tmp_path / "a.txt")
    assert (tmp_path / "a.json").read_text().startswith("{")
    assert read_table(tmp_path / "a.json") == read_table(tmp_path / "a.txt") == t


def _run(capsys, *argv):
    code = main(list(map(str, argv)))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_and_verify_round_trip(tmp_path, capsys):
    out = tmp_path / "l21.txt"
    code, text, _ = _run(capsys, "construct", "--order", 21, "--group", "sym", "--out", out)
    assert code == 0
    rep = json.loads(text)
    assert rep["group_class"] == "Symmetric" and rep["unbreakable"] and rep["commutative"]
    assert rep["problems"] == [] and all(rep["certificate"].values())
    assert json.loads((tmp_path / "l21.report.json").read_text()) == rep
    code, text, _ = _run(capsys, "verify", out)
    again = json.loads(text)
    assert code == 0
    assert {k: again[k] for k in again} == {k: rep[k] for k in again}


def test_construct_alternating(tmp_path, capsys):
    code, text, _ = _run(capsys, "construct", "-n", 43, "--group", "alt", "-o", tmp_path / "a.txt")
    assert code == 0
    rep = json.loads(text)
    assert rep["group_class"] == "Alternating"
    assert set(rep["generator_parities"]["left"]) == {"even"}


def test_construct_auto_is_symmetric(tmp_path, capsys):
    code, text, _ = _run(capsys, "construct", "-n", 9, "-o", tmp_path / "a.json")
    assert code == 0 and json.loads(text)["group_class"] == "Symmetric"
    assert read_table(tmp_path / "a.json").order == 9


@pytest.mark.parametrize("argv", [
    ("construct", "-n", 6, "--group", "alt"),
    ("construct", "-n", 5, "--group", "alt"),
    ("construct", "-n", 4),
    ("search", "-n", 7),
])
def test_user_errors_exit_2(argv, capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, _, err = _run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_verify_exit_codes(tmp_path, capsys):
    z5 = tmp_path / "z5.txt"
    write_table(cyclic_group(5), z5)
    code, text, _ = _run(capsys, "verify", z5)
    rep = json.loads(text)
    assert code == 0 and rep["associative"] and rep["unbreakable"] and rep["group_class"] == "Other(5)"

    bad = tmp_path / "bad.txt"
    bad.write_text("3\n0 1 2\n1 2 x\n2 0 1\n")
    code, _, err = _run(capsys, "verify", bad)
    assert code == 2 and "line 3, column 3" in err

    not_loop = tmp_path / "nl.txt"
    not_loop.write_text("3\n0 2 1\n2 1 0\n1 0 2\n")
    code, text, _ = _run(capsys, "verify", not_loop)
    assert code == 1 and json.loads(text)["is_loop"] is False

    code, _, err = _run(capsys, "verify", tmp_path / "missing.txt")
    assert code == 2


def test_verify_even_construction(tmp_path, capsys):
    out = tmp_path / "l10.txt"
    assert _run(capsys, "construct", "-n", 10, "-o", out)[0] == 0
    code, text, _ = _run(capsys, "verify", out)
    rep = json.loads(text)
    assert code == 0 and rep["group_class"] == "Symmetric" and rep["unbreakable"]


def test_search_command(tmp_path, capsys):
    code, text, _ = _run(capsys, "search", "-n", 5)
    d = json.loads(text)
    assert code == 0 and d["unbreakable"] == 1 and d["by_group"] == {"Symmetric": 1}
    code, text, _ = _run(capsys, "search", "-n", 6, "--count-only", "--jobs", 2)
    assert text.strip() == "109"
    code, text, _ = _run(capsys, "search", "-n", 5, "--commutative", "--emit-dir", tmp_path / "e",
                         "--checkpoint", tmp_path / "ck.txt")
    assert code == 0 and len(list((tmp_path / "e").iterdir())) == json.loads(text)["classes"]


def test_convert_command(tmp_path, capsys):
    src = tmp_path / "a.txt"
    write_table(cyclic_group(5), src)
    assert _run(capsys, "convert", src, tmp_path / "b.json")[0] == 0
    assert _run(capsys, "convert", tmp_path / "b.json", tmp_path / "c.txt")[0] == 0
    assert (tmp_path / "c.txt").read_text() == src.read_text()


def test_module_entry_point():
    import subprocess
    import sys
    r = subprocess.run([sys.executable, "-m", "loopforge", "--help"], capture_output=True, text=True)
    assert r.returncode == 0 and "construct" in r.stdout
