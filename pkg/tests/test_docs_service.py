"""Serialization round trips, CLI behaviour, HTTP service endpoints."""

import json
import random

import pytest
from fastapi.testclient import TestClient

from conftest import FIXTURES
from multicx.cli import main as cli_main
from multicx.corpus import corner, corner_projection, random_multicomplex, staircase
from multicx.docs import parse_document, serialize
from multicx.errors import ParseError, ValidationError
from multicx.fields import GF2, GF7, QQ
from multicx.graded import Window
from multicx.multicomplex import equal_dims, morphisms_equal
from multicx.service.app import app


def test_round_trip_multicomplex():
    for A in (corner(GF2, 0, 0), staircase(GF7, 3),
              random_multicomplex(QQ, 3, random.Random(0))):
        text = serialize(A)
        B = parse_document(text)
        assert equal_dims(A, B)
        assert A.maps == B.maps
        assert serialize(B) == text


def test_round_trip_morphism():
    f = corner_projection(GF2, 1, -2)
    text = serialize(f)
    g = parse_document(text)
    assert morphisms_equal(f, g)
    assert serialize(g) == text


def test_round_trip_windowed_object():
    from multicx.represent import zw_object
    Z = zw_object(GF2, 3, 1, 0, 0, Window(-4, 0, -4, 1)).mc
    text = serialize(Z)
    B = parse_document(text)
    assert B.window == Z.window
    assert equal_dims(Z, B)
    assert serialize(B) == text


def test_shipped_fixture_corpus_is_valid():
    for path in sorted(FIXTURES.glob("*.mcx")):
        if "broken" in path.name:
            continue
        parse_document(path.read_text())  # validates on parse


def test_broken_fixture_raises_validation_error():
    with pytest.raises(ValidationError) as exc:
        parse_document((FIXTURES / "corner_broken.mcx").read_text())
    assert "l=1" in str(exc.value)


def test_parse_error_carries_line_number():
    with pytest.raises(ParseError):
        parse_document("not json\n")
    good = (FIXTURES / "corner.mcx").read_text()
    with pytest.raises(ParseError) as exc:
        parse_document(good + "{broken\n")
    assert "line" in str(exc.value)


def test_rational_scalars_round_trip():
    A = corner(QQ, 0, 0)
    from multicx.linalg import Matrix
    from multicx.multicomplex import Multicomplex
    half = QQ.parse("1/2")
    M = Multicomplex(QQ, 2, {(0, 0): 1, (-1, 0): 1},
                     {1: {(0, 0): Matrix(QQ, 1, 1, [(half,)])}})
    text = serialize(M)
    assert '"v": "1/2"' in text
    B = parse_document(text)
    assert B.maps[1][(0, 0)].rows[0][0] == half


# -- CLI -----------------------------------------------------------------------

def run_cli(capsys, *argv):
    code = cli_main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_validate_ok_and_broken(capsys):
    code, out, _ = run_cli(capsys, "validate", str(FIXTURES / "corner.mcx"))
    assert code == 0 and "ok: true" in out
    code, out, _ = run_cli(capsys, "validate", str(FIXTURES / "corner_broken.mcx"))
    assert code == 1 and "violation l=1 at (0,0)" in out


def test_cli_page_table_matches_paper_example(capsys):
    code, out, _ = run_cli(capsys, "page", str(FIXTURES / "corner.mcx"),
                           "-r", "1", "--table")
    assert code == 0
    rows = [ln for ln in out.splitlines() if "\t" in ln and "dim" not in ln]
    assert rows == ["0\t0\t1"]


def test_cli_page_at_empty_object(capsys, tmp_path):
    from multicx.multicomplex import zero_multicomplex
    doc = tmp_path / "zero.mcx"
    doc.write_text(serialize(zero_multicomplex(GF2, 2)))
    code, out, _ = run_cli(capsys, "page", str(doc), "-r", "3", "--at", "0,0")
    assert code == 0
    assert "0\t0\t0" in out


def test_cli_fib_and_weq_exit_codes(capsys):
    code, out, _ = run_cli(capsys, "fib", str(FIXTURES / "pi_corner.mcx"), "-r", "0")
    assert code == 0
    code, out, _ = run_cli(capsys, "weq", str(FIXTURES / "pi_corner.mcx"), "-r", "0")
    assert code == 0
    code, out, _ = run_cli(capsys, "fib", str(FIXTURES / "pi_corner.mcx"),
                           "-r", "0", "--style", "witness", "--trivial")
    assert code == 0


def test_cli_lift_reports_infeasibility(capsys):
    code, out, _ = run_cli(
        capsys, "lift",
        "--i", str(FIXTURES / "lift_i.mcx"),
        "--p", str(FIXTURES / "pi_corner.mcx"),
        "--top", str(FIXTURES / "lift_top.mcx"),
        "--bottom", str(FIXTURES / "lift_bottom.mcx"))
    assert code == 1
    assert "no lift" in out


def test_cli_json_and_table_carry_identical_data(capsys):
    code, table_out, _ = run_cli(capsys, "page", str(FIXTURES / "staircase_s3.mcx"),
                                 "-r", "2", "--table")
    assert code == 0
    code, json_out, _ = run_cli(capsys, "--emit", "json", "page",
                                str(FIXTURES / "staircase_s3.mcx"), "-r", "2",
                                "--table")
    assert code == 0
    payload = json.loads(json_out)
    table_rows = [tuple(int(x) for x in ln.split("\t"))
                  for ln in table_out.splitlines()
                  if "\t" in ln and "dim" not in ln]
    json_rows = [(e["p"], e["q"], e["dim"]) for e in payload["entries"]]
    assert table_rows == json_rows


def test_cli_output_is_deterministic(capsys):
    a = run_cli(capsys, "--emit", "json", "page", str(FIXTURES / "corner.mcx"),
                "-r", "1", "--table")
    b = run_cli(capsys, "--emit", "json", "page", str(FIXTURES / "corner.mcx"),
                "-r", "1", "--table")
    assert a == b


def test_cli_build_and_pipe_roundtrip(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "build", "cone", "-r", "2", "--field", "gf7")
    assert code == 0
    built = parse_document(out)
    assert equal_dims(built, staircase(GF7, 2))
    code, out, _ = run_cli(capsys, "build", "zw", "--n", "2", "-r", "2",
                           "--p", "0", "--q", "0", "--window=-5,1,-5,1")
    assert code == 0
    assert parse_document(out).window is not None


def test_cli_build_requires_window_for_infinite_kinds(capsys):
    code, _, err = run_cli(capsys, "build", "disk", "--n", "3")
    assert code == 2
    assert "window" in err


def test_cli_window_too_small_hint(capsys, tmp_path):
    doc = tmp_path / "zw.mcx"
    code, out, _ = run_cli(capsys, "build", "zw", "--n", "2", "-r", "1",
                           "--window=-3,1,-3,1")
    doc.write_text(out)
    code, out, err = run_cli(capsys, "page", str(doc), "-r", "3", "--at", "0,0")
    assert code == 2
    assert "needs the box" in err


def test_cli_tensor_dsum_truncate_extend(capsys, tmp_path):
    left = tmp_path / "a.mcx"
    left.write_text(serialize(corner(GF2, 0, 0)))
    right = tmp_path / "b.mcx"
    right.write_text(serialize(staircase(GF2, 1)))
    code, out, _ = run_cli(capsys, "tensor", str(left), str(right))
    assert code == 0 and parse_document(out).total_dim() > 0
    code, out, _ = run_cli(capsys, "dsum", str(left), str(right))
    assert code == 0
    assert parse_document(out).total_dim() == 5
    code, out, _ = run_cli(capsys, "truncate", str(left), "--mode", "upper")
    assert code == 0
    code, out, _ = run_cli(capsys, "restrict", str(left), "--to", "inf")
    assert code == 0
    restricted = tmp_path / "r.mcx"
    restricted.write_text(out)
    code, out, _ = run_cli(capsys, "extend", str(restricted), "--to", "2")
    assert code == 0
    assert equal_dims(parse_document(out), corner(GF2, 0, 0))


def test_cli_cn_check(capsys):
    code, out, _ = run_cli(capsys, "cn", "--max-weight", "5", "--field", "qq")
    assert code == 0 and "ok: true" in out


def test_cli_field_env_default(capsys, monkeypatch):
    monkeypatch.setenv("MULTICX_FIELD", "gf7")
    code, out, _ = run_cli(capsys, "build", "cone", "-r", "1")
    assert code == 0
    assert '"field": "gf7"' in out.splitlines()[0]


def test_cli_usage_error_exit_code(capsys):
    assert cli_main(["page"]) == 2          # missing file argument
    assert cli_main(["nonsense"]) == 2


# -- service -------------------------------------------------------------------

@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_service_health(client):
    assert client.get("/health").json() == {"status": "ok"}


def test_service_validate_and_page(client):
    doc = (FIXTURES / "corner.mcx").read_text()
    r = client.post("/validate", json={"document": doc})
    assert r.status_code == 200 and r.json()["ok"]
    r = client.post("/page", json={"document": doc, "r": 1})
    assert r.json()["entries"] == [{"p": 0, "q": 0, "dim": 1}]


def test_service_weq_fib_lift(client):
    pi = (FIXTURES / "pi_corner.mcx").read_text()
    assert client.post("/weq", json={"document": pi, "r": 0}).json()["result"]
    assert client.post("/fib", json={"document": pi, "r": 0,
                                     "style": "witness"}).json()["result"]
    r = client.post("/lift", json={
        "i": (FIXTURES / "lift_i.mcx").read_text(),
        "p": pi,
        "top": (FIXTURES / "lift_top.mcx").read_text(),
        "bottom": (FIXTURES / "lift_bottom.mcx").read_text()})
    body = r.json()
    assert not body["exists"]
    assert body["certificate"]["rank_augmented"] == body["certificate"]["rank"] + 1


def test_service_build_tensor_truncate_cn(client):
    r = client.post("/build", json={"kind": "cone", "r": 2, "field": "gf2"})
    cone_doc = r.json()["document"]
    corner_doc = (FIXTURES / "corner.mcx").read_text()
    r = client.post("/tensor", json={"left": cone_doc, "right": corner_doc})
    assert r.status_code == 200
    T = parse_document(r.json()["document"])
    r2 = client.post("/page", json={"document": r.json()["document"], "r": 3})
    assert all(e["dim"] == 0 for e in r2.json()["entries"])
    r = client.post("/truncate", json={"document": corner_doc, "mode": "left"})
    assert r.status_code == 200
    r = client.post("/cn", json={"field": "qq", "max_weight": 4})
    assert r.json()["ok"]


def test_service_error_codes(client):
    r = client.post("/validate", json={"document": "garbage"})
    assert r.status_code == 400
    broken = (FIXTURES / "corner_broken.mcx").read_text()
    r = client.post("/page", json={"document": broken, "r": 1})
    assert r.status_code == 400
    r = client.post("/build", json={"kind": "disk", "n": "3"})
    assert r.status_code == 422


def test_service_pushout_legs(client):
    pi = (FIXTURES / "pi_corner.mcx").read_text()
    r = client.post("/pushout", json={"f": pi, "g": pi})
    assert r.status_code == 200
    assert parse_document(r.json()["leg_left"]) is not None


def test_cli_pagemap_on_projection(capsys):
    code, out, _ = run_cli(capsys, "--emit", "json", "pagemap",
                           str(FIXTURES / "pi_corner.mcx"), "-r", "1",
                           "--at", "0,0")
    assert code == 0
    payload = json.loads(out)
    assert payload["iso"] and payload["matrix"] == [["1"]]


def test_cli_pushout_command(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "--emit", "json", "pushout",
                           str(FIXTURES / "pi_corner.mcx"),
                           str(FIXTURES / "pi_corner.mcx"))
    assert code == 0
    payload = json.loads(out)
    assert parse_document(payload["document"]).total_dim() >= 1


def test_staircase_page_table_over_all_stages(capsys):
    for i in range(1, 6):
        code, out, _ = run_cli(capsys, "--emit", "json", "page",
                               str(FIXTURES / "staircase_s3.mcx"),
                               "-r", str(i), "--table")
        assert code == 0
        rows = [(e["p"], e["q"], e["dim"])
                for e in json.loads(out)["entries"]]
        if i <= 3:
            assert rows == [(0, 0, 1), (-3, -2, 1)]
        else:
            assert rows == []


def test_page_table_of_zero_object_is_empty(capsys, tmp_path):
    from multicx.multicomplex import zero_multicomplex
    doc = tmp_path / "zero.mcx"
    doc.write_text(serialize(zero_multicomplex(GF2, 2)))
    code, out, _ = run_cli(capsys, "--emit", "json", "page", str(doc),
                           "-r", "1", "--table")
    assert code == 0 and json.loads(out)["entries"] == []


def test_service_dsum_extend_restrict_pagemap(client):
    corner_doc = (FIXTURES / "corner.mcx").read_text()
    r = client.post("/dsum", json={"left": corner_doc, "right": corner_doc})
    assert parse_document(r.json()["document"]).total_dim() == 6
    r = client.post("/restrict", json={"document": corner_doc, "to": "inf"})
    up = r.json()["document"]
    r = client.post("/extend", json={"document": up, "to": "2"})
    assert parse_document(r.json()["document"]).total_dim() == 3
    pi = (FIXTURES / "pi_corner.mcx").read_text()
    r = client.post("/pagemap", json={"document": pi, "r": 1, "at": [0, 0]})
    assert r.json()["iso"]
