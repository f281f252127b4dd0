import json
import os
import subprocess
import sys

import pytest

from idiomlab import cli
from idiomlab.catalog import (CATALOG, SCHEMA_VERSION, build_instance, catalog_get,
                              catalog_names, parse_instance, parse_instance_text,
                              quotient_names, serialize_instance)
from idiomlab.errors import ParseError, SchemaError, UnknownCatalogEntry
from idiomlab.report import run_analysis

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
SCHEMA_DIR = os.path.join(ROOT, "schema")


def _load(name):
    with open(os.path.join(SCHEMA_DIR, name), encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture(scope="module")
def validators():
    jsonschema = pytest.importorskip("jsonschema")
    referencing = pytest.importorskip("referencing")
    inst, rep = _load("instance.schema.json"), _load("report.schema.json")
    registry = referencing.Registry().with_resources([
        (inst["$id"], referencing.Resource.from_contents(inst)),
        (rep["$id"], referencing.Resource.from_contents(rep)),
    ])
    cls = jsonschema.Draft202012Validator
    return cls(inst, registry=registry), cls(rep, registry=registry)


def test_schema_versions_match():
    assert _load("instance.schema.json")["schema_version"] == SCHEMA_VERSION
    assert _load("report.schema.json")["schema_version"] == SCHEMA_VERSION


def test_catalog_contents():
    names = catalog_names()
    for want in ("Z2", "Z4", "Z6", "Z12", "Z30", "Z2xZ2-over-F2", "Z3+Z2", "Z3+Z2^2",
                 "triangular-Z2", "Z2+Z3", "(Z2+Z3)^2", "M2(F2)", "Z4xZ3"):
        assert want in names


def test_quotient_names():
    assert quotient_names("Z12") == ["Z12/fi1", "Z12/fi2", "Z12/fi3", "Z12/fi4"]
    assert quotient_names("M2(F2)") == []
    assert len(catalog_names(include_quotients=True)) == 41


def test_quotient_entry_builds():
    _, Q = build_instance(catalog_get("Z12/fi1"))
    assert Q.size == 6


def test_unknown_entry():
    with pytest.raises(UnknownCatalogEntry):
        catalog_get("Z13")
    with pytest.raises(UnknownCatalogEntry):
        catalog_get("Z12/fi9")


@pytest.mark.parametrize("name", catalog_names(include_quotients=True))
def test_round_trip(name, validators):
    spec = catalog_get(name)
    assert parse_instance_text(serialize_instance(spec)) == spec
    validators[0].validate(spec)


def test_parse_examples():
    assert parse_instance_text('{"name":"Z12","ring":{"kind":"Zn","n":12},"module":{"kind":"regular"}}')
    spec = parse_instance_text('{"ring":{"kind":"upper_triangular","base":{"kind":"Zn","n":2},'
                               '"size":2},"module":{"kind":"regular"}}')
    assert build_instance(spec)[1].size == 8
    spec = parse_instance_text('{"ring":{"kind":"Zn","n":6},"module":{"kind":"abelian","invariants":[2,3]}}')
    assert build_instance(spec)[1].size == 6


def test_parse_error_location():
    with pytest.raises(ParseError) as exc:
        parse_instance_text('{"ring": {"kind": "Zn",\n "n": }}')
    assert "line 2" in str(exc.value)


@pytest.mark.parametrize("text,path", [
    ('{"module": {"kind": "regular"}}', "$"),
    ('{"ring": {"kind": "Zq"}, "module": {"kind": "regular"}}', "$.ring.kind"),
    ('{"ring": {"kind": "Zn", "n": 0}, "module": {"kind": "regular"}}', "$.ring.n"),
    ('{"ring": {"kind": "Zn", "n": 4}, "module": {"kind": "abelian", "invariants": [2, "x"]}}',
     "$.module.invariants[1]"),
    ('{"ring": {"kind": "Zn", "n": 4}, "module": {"kind": "regular"}, "options": {"audit": "x"}}',
     "$.options.audit"),
])
def test_schema_errors_name_the_path(text, path):
    with pytest.raises(SchemaError) as exc:
        parse_instance_text(text)
    assert exc.value.path == path


def test_parse_instance_missing_file(tmp_path):
    with pytest.raises(ParseError):
        parse_instance(str(tmp_path / "nope.json"))


def test_report_matches_schema(validators):
    rep = run_analysis(catalog_get("Z12"))
    validators[1].validate(rep)
    assert rep["classifiers"]["strongly_harmonic"]["value"] is True
    assert rep["classifiers"]["gelfand"]["value"] is True
    assert len(rep["frames"]["Psi"]) == 4


def test_report_triangular_witness_pair():
    rep = run_analysis(catalog_get("triangular-Z2"))
    sh = rep["classifiers"]["strongly_harmonic"]
    assert sh["value"] is False and len(sh["witness"]) == 2


def test_report_simple_ring():
    rep = run_analysis(catalog_get("M2(F2)"))
    assert rep["lattices"]["Lambda_fi"]["size"] == 2
    assert rep["classifiers"]["strongly_harmonic"]["value"] is True


# -- CLI --------------------------------------------------------------------------------

def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_catalog_list(capsys):
    code, out, _ = run_cli(capsys, "catalog", "list")
    assert code == 0 and out.split() == list(CATALOG)


def test_cli_catalog_get(capsys):
    code, out, _ = run_cli(capsys, "catalog", "get", "Z2+Z3")
    assert code == 0 and json.loads(out) == CATALOG["Z2+Z3"]


def test_cli_unknown_entry(capsys):
    code, _, err = run_cli(capsys, "analyze", "nonexistent")
    assert code == 2 and json.loads(err)["error"] == "UnknownCatalogEntry"


def test_cli_bad_file(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"ring": {"kind": "Zn"}, "module": {"kind": "regular"}}', encoding="utf-8")
    code, _, err = run_cli(capsys, "analyze", str(p))
    data = json.loads(err)
    assert code == 2 and data["error"] == "SchemaError" and data["target"] == str(p)


def test_cli_size_cap(capsys):
    code, _, err = run_cli(capsys, "analyze", "Z30", "--max-size", "8")
    assert code == 3 and json.loads(err)["error"] == "SizeLimitExceeded"


def test_cli_size_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("IDIOMLAB_MAX_SIZE", "8")
    code, _, _ = run_cli(capsys, "analyze", "Z12", "--audit", "basic")
    assert code == 3


def test_cli_analyze_file_json_and_dot(capsys, tmp_path):
    p = tmp_path / "z6.json"
    p.write_text('{"name":"Z6","ring":{"kind":"Zn","n":6},"module":{"kind":"regular"}}',
                 encoding="utf-8")
    out_json = tmp_path / "out.json"
    dot = tmp_path / "dot"
    code, _, _ = run_cli(capsys, "analyze", str(p), "--json", str(out_json), "--dot", str(dot))
    assert code == 0
    rep = json.loads(out_json.read_text(encoding="utf-8"))
    assert rep["instance"] == "Z6" and rep["audit"]["counts"]["VIOLATED"] == 0
    files = sorted(os.listdir(dot / "Z6"))
    assert "Lambda_fi.dot" in files and "Psi.dot" in files and "Spec.dot" in files
    assert (dot / "Z6" / "Lambda_fi.dot").read_text().startswith("digraph")


def test_cli_violation_exit_code(capsys, monkeypatch):
    import idiomlab.audit as audit

    real = audit.theorem_audit

    def broken(an, recurse=True):
        rep = real(an, recurse=recurse)
        rep.entries.append(audit.Entry("planted", "t", "always false", [], False))
        return rep

    monkeypatch.setattr(audit, "theorem_audit", broken)
    code, out, _ = run_cli(capsys, "analyze", "Z2", "--audit", "basic")
    assert code == 1 and json.loads(out)["audit"]["counts"]["VIOLATED"] == 1


def test_cli_deterministic_across_jobs(capsys):
    targets = ["Z6", "Z2+Z3", "triangular-Z2"]
    _, one, _ = run_cli(capsys, "analyze", *targets, "--jobs", "1")
    _, many, _ = run_cli(capsys, "analyze", *targets, "--jobs", "3")
    assert one == many and len(json.loads(one)) == 3


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "idiomlab", "catalog", "get", "Z4"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["name"] == "Z4"
