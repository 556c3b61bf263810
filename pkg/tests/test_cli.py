from __future__ import annotations

import json
from importlib import resources

import jsonschema
import pytest
from click.testing import CliRunner

from qsw.cli import VERBS, main, parse_tangle, run
from qsw.scalar import get_ring


def schema(name):
    return json.loads(resources.files("qsw").joinpath("schemas", name).read_text())


def invoke(*args):
    return CliRunner().invoke(main, list(args))


def test_dims_footer():
    r = invoke("dims", "--multiindex", "3,2,2")
    assert r.exit_code == 0
    assert "36" in r.output.splitlines()[-1]
    d = json.loads(invoke("dims", "--multiindex", "3,2,2", "--format", "json").output)
    assert d["sum_weighted"] == d["dim_V"] == 36
    assert [row["D"] for row in d["rows"]] == [2, 3, 2, 1]


def test_duality_verb_and_schema():
    r = invoke("duality", "--multiindex", "1,1,1", "--format", "json")
    assert r.exit_code == 0
    d = json.loads(r.output)
    jsonschema.validate(d, schema("duality_report.schema.json"))
    jsonschema.validate(d, schema("command.schema.json"))
    assert d["dims"]["dim_TL"] == 5 and d["dims"]["dim_image"] == 5
    assert d["flags"]["faithful"]


def test_classical_verb():
    d = json.loads(invoke("classical", "--multiindex", "1,1,1,1", "--format", "json").output)
    jsonschema.validate(d, schema("duality_report.schema.json"))
    assert d["dims"]["dim_TL"] == 14


def test_jw_expand_and_check():
    d = json.loads(invoke("jw", "--size", "2", "--format", "json").output)
    jsonschema.validate(d["tangle"], schema("tangle.schema.json"))
    cs = sorted(t["c"] for t in d["tangle"]["terms"])
    assert cs == ["(v^2)/(v^4 + 1)", "1"]
    r = invoke("jw", "--size", "3", "--check")
    assert r.exit_code == 0


def test_eval_words():
    d = json.loads(invoke("eval", "--expr", "U1*U2*U1", "--format", "json").output)
    assert len(d["tangle"]["terms"]) == 1 and d["tangle"]["terms"][0]["c"] == "1"
    d = json.loads(invoke("eval", "--expr", "(i*v)*U1 + 1", "--format", "json").output)
    jsonschema.validate(d["tangle"], schema("tangle.schema.json"))
    assert len(d["tangle"]["terms"]) == 2


def test_eval_matches_library():
    G = get_ring("generic")
    assert parse_tangle("U1*U1", G) == parse_tangle("(-v^2 - v^-2)*U1", G)
    assert parse_tangle("P2*P2", G) == parse_tangle("P2", G)


def test_hwv_vector_schema():
    d = json.loads(invoke("hwv", "--multiindex", "1,1,1", "--defects", "1", "--format", "json").output)
    assert d["dim_H"] == d["D"] == d["rank_w"] == 2
    for item in d["w"]:
        jsonschema.validate(item["vector"], schema("vector.schema.json"))


def test_coblo_and_gram():
    d = json.loads(invoke("coblo", "--multiindex", "1,1", "--format", "json").output)
    assert d["ok"] and len(d["blocks"]) == 2
    for b in d["blocks"]:
        jsonschema.validate(b["vector"], schema("vector.schema.json"))
    d = json.loads(invoke("gram", "--multiindex", "1,1,1,1", "--defects", "0", "--format", "json").output)
    assert d["rank"] == 2 and d["radical_dim"] == 0


def test_radical_and_qi():
    r = invoke("radical", "--multiindex", "1,1,1,1", "--q", "root:1:3")
    assert r.exit_code == 0, r.output
    r = invoke("qi", "--format", "json")
    assert r.exit_code == 0
    assert json.loads(r.output)["checks"]["dim_End_Uq_V2"] == 2


@pytest.mark.parametrize(
    "args",
    [
        ("dims", "--multiindex", "0,1"),
        ("dims", "--multiindex", "a"),
        ("dims",),
        ("eval", "--expr", "U1*("),
        ("jw", "--size", "3", "--q", "root:1:3"),
        ("patterns", "--pattern", "(|)"),
        ("radical", "--multiindex", "1,1"),
        ("dims", "--multiindex", "1", "--q", "nonsense"),
    ],
)
def test_usage_errors_exit_2(args):
    r = invoke(*args)
    assert r.exit_code == 2


def test_csv_and_plain_render():
    for fmt in ("csv", "plain"):
        r = invoke("walks", "--multiindex", "1,1,1", "--format", fmt)
        assert r.exit_code == 0 and r.output.strip()


def test_byte_identical_reruns():
    for verb, opts in [
        ("dims", {"multiindex": "2,1,1"}),
        ("duality", {"multiindex": "1,2,1"}),
        ("coblo", {"multiindex": "1,1,1"}),
        ("eval", {"expr": "P3"}),
    ]:
        for fmt in ("json", "csv", "plain"):
            a = run(verb, format=fmt, **dict(opts))
            b = run(verb, format=fmt, **dict(opts))
            assert a == b


def test_out_file(tmp_path):
    out = tmp_path / "o.json"
    r = invoke("walks", "--multiindex", "2,2", "--format", "json", "--out", str(out))
    assert r.exit_code == 0 and r.output == ""
    assert json.loads(out.read_text())["command"] == "walks"


def test_every_verb_has_help():
    for verb in VERBS:
        r = invoke(verb, "--help")
        assert r.exit_code == 0
