import io
import json
import subprocess
import sys

import pytest

from quotsing import catalog
from quotsing.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def write_group(path, generators, root_order=1, **extra):
    doc = {"root_order": root_order, "dimension": len(generators[0]), "generators": generators, **extra}
    path.write_text(json.dumps(doc))
    return str(path)


def test_analyze_catalog_group_json():
    code, text = run("analyze", "--catalog", "binary_icosahedral", "--json")
    assert code == 0
    report = json.loads(text)
    assert report["verdict"]["exceptional"] == "yes"
    assert report["group"]["order"] == "120"
    assert "timing_seconds" not in report


def test_analyze_output_is_deterministic():
    first = run("analyze", "--catalog", "klein_168", "--json")
    second = run("analyze", "--catalog", "klein_168", "--json")
    assert first == second


def test_timing_is_opt_in():
    code, text = run("analyze", "--catalog", "binary_tetrahedral", "--json", "--timing")
    assert code == 0 and "timing_seconds" in json.loads(text)


def test_text_report_mentions_verdict():
    code, text = run("analyze", "--catalog", "heisenberg5")
    assert code == 0
    assert "imprimitive" in text


def test_catalog_round_trip_through_a_file(tmp_path):
    target = tmp_path / "klein.json"
    code, _ = run("catalog", "build", "klein_168", "-o", str(target))
    assert code == 0
    from_file = json.loads(run("analyze", str(target), "--json")[1])
    from_catalog = json.loads(run("analyze", "--catalog", "klein_168", "--json")[1])
    assert from_file["verdict"]["exceptional"] == from_catalog["verdict"]["exceptional"] == "yes"
    assert from_file["verdict"]["catalog_name"] == "klein_168"


def test_fixture_file_is_accepted(tmp_path):
    target = tmp_path / "fixture.json"
    assert run("catalog", "build", "2A6-fixture", "-o", str(target))[0] == 0
    code, text = run("analyze", str(target), "--json")
    assert code == 0
    assert json.loads(text)["verdict"]["exceptional"] == "yes"


def test_catalog_list():
    code, text = run("catalog", "list", "--json")
    names = [row["name"] for row in json.loads(text)]
    assert code == 0 and "HM" in names and "O5F3" in names


def test_undecided_verdict_exits_two(tmp_path):
    path = write_group(tmp_path / "g.json", [[["-1", "0"], ["0", "1"]], [["z", "0"], ["0", "z"]]], root_order=4)
    code, text = run("analyze", path, "--json")
    assert code == 2
    assert json.loads(text)["verdict"]["exceptional"] == "undecided"


@pytest.mark.parametrize(
    "doc,message",
    [
        ({"root_order": 4, "dimension": 2, "generators": [[["1", "0"], ["0", "z^"]]]}, "row 2, column 2"),
        ({"root_order": 1, "dimension": 2, "generators": [[["1", "1"], ["1", "1"]]]}, "singular"),
        ({"root_order": 1, "dimension": 2, "generators": [[["1", "0"]]]}, "not 2x2"),
        ({"dimension": 2, "generators": []}, "root_order"),
        ({"root_order": 1, "dimension": 2, "generators": [[["0", "1"], ["1", "0"]]], "order": 3}, "declared order 3"),
    ],
)
def test_invalid_files_exit_three(tmp_path, capsys, doc, message):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _ = run("analyze", str(path))
    assert code == 3
    assert message in capsys.readouterr().err


def test_malformed_json_reports_position(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"root_order": 1,\n "dimension": }')
    assert run("analyze", str(path))[0] == 3
    assert "line 2" in capsys.readouterr().err


def test_unknown_catalog_group_exits_three():
    assert run("analyze", "--catalog", "nonexistent")[0] == 3
    assert run("analyze", "--catalog", "ST32")[0] == 3


def test_resource_limit_exits_four(tmp_path):
    path = write_group(tmp_path / "inf.json", [[["1", "1"], ["0", "1"]]])
    assert run("analyze", path, "--limit", "500")[0] == 4
    assert run("analyze", "--catalog", "binary_tetrahedral", "--limit", "5")[0] == 0


def test_bp_commands():
    code, text = run("bp", "check", "2", "3", "7", "41", "--json")
    result = json.loads(text)
    assert code == 0 and result["exceptional"] and result["restricted"]
    code, text = run("bp", "construct", "5")
    assert code == 0 and text.split("\n")[0] == "2 3 7 47 401 409"
    code, text = run("bp", "construct", "4", "--sylvester", "--json")
    assert json.loads(text)["exponents"] == ["2", "3", "7", "43", "47"]


def test_bp_probable_primes_need_the_flag():
    assert run("bp", "construct", "12")[0] == 3
    code, text = run("bp", "construct", "12", "--allow-probable", "--json")
    assert code == 0 and json.loads(text)["primality"] == "probable"


def test_bp_check_rejects_short_tuples():
    assert run("bp", "check", "2", "3", "7")[0] == 3


def test_bounds():
    assert run("bound", "thomas", "1") == (0, "p' = 7, bound 6\n")
    code, text = run("bound", "nagura", "23", "--json")
    assert code == 0 and json.loads(text)["bound"] == "52/1"
    assert run("bound", "nagura", "22")[0] == 3


def test_molien_and_character_table():
    code, text = run("molien", "--catalog", "binary_tetrahedral", "--max-degree", "6")
    assert code == 0 and text.split() == ["1", "0", "0", "0", "0", "0", "1"]
    code, text = run("chartable", "--catalog", "binary_tetrahedral", "--json")
    table = json.loads(text)
    assert code == 0 and len(table["characters"]) == 7
    assert run("molien", "--catalog", "2A6-fixture")[0] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "quotsing", "bound", "thomas", "10"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "p' = 29, bound 28"


ROUND_TRIP = [n for n in catalog.NAMES if catalog.entry(n).model != "declared" and not catalog.entry(n).same_as]


@pytest.mark.parametrize("name", ROUND_TRIP)
def test_catalog_build_then_analyze_reproduces_declared_properties(tmp_path, name):
    target = tmp_path / f"{name}.json"
    assert run("catalog", "build", name, "-o", str(target))[0] == 0
    code, text = run("analyze", str(target), "--json")
    report = json.loads(text)
    e = catalog.entry(name)
    v = report["verdict"]
    assert report["group"]["order"] == str(e.order)
    assert v["exceptional"] == e.exceptional
    assert v["weakly_exceptional"] == (e.weakly_exceptional or "undecided")
    assert v["transitive"] == e.transitive
    assert code == (2 if e.exceptional == "undecided" else 0)


def test_hm_report_carries_the_lower_bound():
    report = json.loads(run("analyze", "--catalog", "HM", "--json")[1])
    lowers = [b for b in report["verdict"]["lct_bounds"] if b["kind"] == "lower"]
    assert report["verdict"]["exceptional"] == "yes"
    assert {"kind": "lower", "value": "6/5", "strict": False, "citation": "dim5.lct-6/5"} in lowers
