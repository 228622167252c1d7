import json

import pytest

from plusone.cli import main
from plusone.io import parse


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


@pytest.fixture
def tangent_file(tmp_path, capsys):
    p = tmp_path / "tangent.txt"
    assert main(["catalog", "tangent", "-o", str(p)]) == 0
    capsys.readouterr()
    return str(p)


def test_chi_tangent(capsys, tangent_file):
    code, d = run_json(capsys, "chi", tangent_file)
    assert code == 0 and d["chi_str"] == "t^3 - 4t^2 + 6t - 3"
    assert d["betti"] == [1, 4, 6, 3] and d["chi0"] == [3, -3, 1]


def test_chi_catalog_entries(capsys):
    assert run_json(capsys, "chi", "catalog:boolean:3")[1]["chi"] == [-1, 3, -3, 1]
    assert run_json(capsys, "chi", "catalog:factor")[1]["chi"] == [-10, 17, -8, 1]


@pytest.mark.parametrize(
    "source, code, verdict, exps",
    [
        ("catalog:tangent", 2, "StrictPOG", [1, 2, 2]),
        ("catalog:addnot", 3, "NeitherAtBound", None),
        ("catalog:shi-b:2", 0, "Free", [1, 4, 4]),
    ],
)
def test_classify_exit_codes(capsys, source, code, verdict, exps):
    got, d = run_json(capsys, "classify", source)
    assert got == code and d["verdict"] == verdict and d["exponents"] == exps


def test_classify_echoes_bounds(capsys):
    _, d = run_json(capsys, "classify", "catalog:tangent", "--bound", "6")
    assert d["bound"] == 6 and d["hilbert_checked_to"] == 8
    _, d = run_json(capsys, "classify", "catalog:addnot")
    assert d["generator_degrees"] == [1, 3, 3, 3, 3, 3, 3]


def test_classify_json_is_stable(capsys):
    a = run(capsys, "classify", "catalog:factor", "--json")[1]
    b = run(capsys, "classify", "catalog:factor", "--json")[1]
    assert a == b


def test_non_essential_exit(capsys, tmp_path):
    p = tmp_path / "ne.txt"
    p.write_text("vars: 3\n1 0 0\n0 1 0\n")
    code, _, err = run(capsys, "classify", str(p))
    assert code == 4 and "rank 2" in err


def test_parse_error_exit(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("vars: 3\n1 0 0\n1 0.5 0\n")
    code, _, err = run(capsys, "chi", str(p))
    assert code == 1 and "bad.txt:3:" in err


def test_triple_factor_by_form(capsys):
    code, d = run_json(capsys, "triple", "catalog:factor", "--index", "0,1,0")
    assert code == 0 and d["deletion_verdict"] == "StrictPOG" and d["index"] == 1


def test_triple_boolean_all_free(capsys):
    _, d = run_json(capsys, "triple", "catalog:boolean:3", "--index", "0")
    assert d["holds"] == [True, True, True]


def test_index_errors(capsys):
    assert run(capsys, "triple", "catalog:tangent", "--index", "9")[0] == 64
    assert run(capsys, "triple", "catalog:tangent", "--index", "1,-1,0")[0] == 64
    assert run(capsys, "triple", "catalog:tangent")[0] == 64


def test_derived_files_round_trip(capsys, tmp_path):
    out = tmp_path / "z.txt"
    code, _, _ = run(capsys, "ziegler", "catalog:shi-b:2", "--index", "0,0,1", "-o", str(out))
    assert code == 0
    f = parse(out.read_text())
    assert f.mult == (2, 2, 2, 2)
    code, d = run_json(capsys, "classify", str(out))
    assert code == 0 and d["exponents"] == [4, 4]
    code, out, _ = run(capsys, "delete", "catalog:tangent", "--index", "3")
    assert parse(out).arrangement.nvars == 3 and len(parse(out).arrangement) == 3
    code, d = run_json(capsys, "restrict", "catalog:tangent", "--index", "3")
    assert parse(d["file"]).arrangement.nvars == 2


def test_filtration_boolean(capsys):
    _, d = run_json(capsys, "filtration", "catalog:boolean:3")
    assert d["exists"] and sorted(d["ordering"]) == [0, 1, 2]
    _, d = run_json(capsys, "filtration", "catalog:tangent")
    assert not d["exists"]


def test_scan_factor(capsys):
    _, d = run_json(capsys, "scan", "catalog:factor")
    assert d["all_hold"] and len(d["entries"]) == 8


def test_free_additions_with_pool(capsys, tmp_path):
    pool = tmp_path / "pool.txt"
    pool.write_text("vars: 3\n1 1 0\n1 2 3\n1 0 0\n")
    _, d = run_json(capsys, "free-additions", "catalog:tangent", "--pool", str(pool))
    assert d["hits"] == [{"form": [1, 1, 0], "exponents": [1, 2, 2]}]
    assert d["skipped"] == [[1, 0, 0]] and d["candidates"] == 2


def test_free_additions_b3_deletion_default_pool(capsys, tmp_path):
    src = tmp_path / "b3.txt"
    run(capsys, "delete", "catalog:b3", "--index", "0,1,0", "-o", str(src))
    _, d = run_json(capsys, "free-additions", str(src))
    assert d["hits"] == [{"form": [0, 1, 0], "exponents": [1, 5, 7]}]
    assert d["uniqueness_checked"]


def test_catalog_listing_and_errors(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and "shi-b" in out.split()
    assert run(capsys, "catalog", "nope")[0] == 64
    assert run(capsys, "classify", "catalog:nope")[0] == 64
    code, out, _ = run(capsys, "catalog", "shi-b", "2")
    assert len(parse(out).arrangement) == 9


def test_usage_error_code(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 64
