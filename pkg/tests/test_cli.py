"""Command line round trips, exit codes, and parse diagnostics."""
import json
import math
from pathlib import Path

import pytest

from blca.cli import (DatumFormatError, datum_document, dump_datum,
                      load_datum, load_document, main)

DATA = Path(__file__).resolve().parent.parent / "data"


def write(tmp_path, doc, name="d.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc), encoding="utf-8")
    return str(p)


def klein_doc():
    return {
        "domain": {"a": 0, "b": 0, "c": 0, "torsion": [2, 2]},
        "targets": [{"torsion": [2]}, {"torsion": [2]}],
        "homs": [{"FF": [[1, 0]]}, {"FF": [[0, 1]]}],
        "exponents": [2, 2],
    }


def axes_doc():
    return {
        "domain": {"c": 2},
        "targets": [{"c": 1}, {"c": 1}],
        "homs": [{"ZZ": [[1, 0]]}, {"ZZ": [[0, 1]]}],
        "exponents": [2, 2],
    }


# -- parsing ----------------------------------------------------------------

def test_roundtrip_is_byte_stable(tmp_path):
    for name in sorted(DATA.glob("*.json")):
        text = name.read_text(encoding="utf-8")
        doc = load_document(str(name))
        if "tower" in doc:
            continue
        d = load_datum(str(name))
        assert dump_datum(d) == text


def test_unknown_key_rejected(tmp_path):
    doc = klein_doc()
    doc["extra"] = 1
    with pytest.raises(DatumFormatError) as err:
        load_datum(write(tmp_path, doc))
    assert "extra" in str(err.value)


def test_unknown_nested_key_has_path(tmp_path):
    doc = klein_doc()
    doc["homs"][1]["QQ"] = [[1]]
    with pytest.raises(DatumFormatError) as err:
        load_datum(write(tmp_path, doc))
    assert "homs[1]" in str(err.value)


def test_float_entries_rejected(tmp_path):
    doc = klein_doc()
    doc["exponents"][0] = 2.0
    with pytest.raises(DatumFormatError) as err:
        load_datum(write(tmp_path, doc))
    assert "n/d" in str(err.value)


def test_fraction_strings_parsed(tmp_path):
    doc = klein_doc()
    doc["exponents"] = ["3/2", "inf"]
    d = load_datum(write(tmp_path, doc))
    assert d.exponents[1] is None


def test_bad_json_reports_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{", encoding="utf-8")
    with pytest.raises(DatumFormatError) as err:
        load_document(str(p))
    assert "line" in str(err.value)


def test_missing_file_is_format_error():
    with pytest.raises(DatumFormatError):
        load_document("/nonexistent/nope.json")


def test_mismatched_lengths_rejected(tmp_path):
    doc = klein_doc()
    doc["exponents"] = [2]
    with pytest.raises(DatumFormatError):
        load_datum(write(tmp_path, doc))


def test_document_roundtrip_through_memory(tmp_path):
    d = load_datum(write(tmp_path, klein_doc()))
    doc = datum_document(d)
    d2 = load_datum(write(tmp_path, doc, "copy.json"))
    assert d2.domain == d.domain
    assert d2.exponents == d.exponents
    assert d2.homs == list(d.homs) or tuple(d2.homs) == tuple(d.homs)


# -- commands and exit codes ------------------------------------------------

def test_constant_finite_exit_zero(tmp_path, capsys):
    code = main(["constant", write(tmp_path, klein_doc())])
    out = capsys.readouterr()
    assert code == 0
    assert "2" in out.out
    assert "FINITE" in out.out


def test_constant_infinite_exit_one(tmp_path, capsys):
    code = main(["constant", write(tmp_path, axes_doc())])
    out = capsys.readouterr()
    assert code == 1
    assert "INFINITE" in out.out


def test_constant_json_schema(tmp_path, capsys):
    code = main(["constant", "--json", write(tmp_path, klein_doc())])
    out = capsys.readouterr().out
    doc = json.loads(out)
    assert code == 0
    assert doc["schema_version"] == 1
    assert doc["command"] == "constant"
    assert doc["report"]["kind"] == "FINITE"
    assert abs(doc["report"]["value"] - 2.0) < 1e-12


def test_analyze_runs(tmp_path, capsys):
    code = main(["analyze", write(tmp_path, klein_doc())])
    out = capsys.readouterr().out
    assert code == 0
    assert "proper" in out.lower() or "factor" in out.lower()


def test_analyze_json(tmp_path, capsys):
    code = main(["analyze", "--json", write(tmp_path, axes_doc())])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["command"] == "analyze"


def test_dual_pipes_datum_to_stdout(tmp_path, capsys):
    src = write(tmp_path, klein_doc())
    code = main(["dual", src])
    out = capsys.readouterr()
    assert code in (0, 2)
    piped = json.loads(out.out)
    assert set(piped) >= {"domain", "targets", "homs", "exponents"}
    # the printed dual must itself load cleanly
    back = write(tmp_path, piped, "dual.json")
    assert main(["analyze", back]) in (0, 1, 2)


def test_dual_json_mode(tmp_path, capsys):
    code = main(["dual", "--json", write(tmp_path, klein_doc())])
    doc = json.loads(capsys.readouterr().out)
    assert doc["command"] == "dual"
    assert set(doc["dual"]) >= {"domain", "targets", "homs", "exponents"}
    assert doc["duality"]["pass"] is True
    assert doc["duality"]["ratio"] == 1.0
    assert code == 0


def test_reduce_drops_infinite_and_unit_exponents(tmp_path, capsys):
    doc = klein_doc()
    doc["exponents"] = [1, 2]
    code = main(["reduce", write(tmp_path, doc)])
    out = capsys.readouterr()
    assert code == 0
    reduced = json.loads(out.out)
    assert reduced["exponents"] == [2]


def test_verify_klein(tmp_path, capsys):
    code = main(["verify", write(tmp_path, klein_doc())])
    out = capsys.readouterr().out
    assert code == 0
    assert "ok" in out.lower() or "pass" in out.lower()


def test_verify_infinite_exit_one(tmp_path, capsys):
    code = main(["verify", write(tmp_path, axes_doc())])
    assert code == 1


def test_tower_file(tmp_path, capsys):
    tower = json.loads((DATA / "tower_young.json").read_text(encoding="utf-8"))
    code = main(["constant", write(tmp_path, tower, "tower.json")])
    out = capsys.readouterr().out
    assert code == 0
    assert "level 2" in out
    assert "nondecreasing" in out


def test_parse_error_exit_three(tmp_path, capsys):
    doc = klein_doc()
    doc["homs"][0]["FF"] = [[1]]
    code = main(["constant", write(tmp_path, doc)])
    err = capsys.readouterr().err
    assert code == 3
    assert "error" in err.lower()


def test_seed_is_reported(tmp_path, capsys):
    main(["constant", "--seed", "7", write(tmp_path, klein_doc())])
    out = capsys.readouterr().out
    assert "seed 7" in out


def test_deterministic_output(tmp_path, capsys):
    src = write(tmp_path, klein_doc())
    main(["constant", "--json", src])
    first = capsys.readouterr().out
    main(["constant", "--json", src])
    second = capsys.readouterr().out
    assert first == second
