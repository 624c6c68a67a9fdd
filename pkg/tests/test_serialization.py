import json
import pathlib

import numpy as np
import pytest

from nctk.models import m2_triple, two_point_triple
from nctk.serialization import (
    ParseError,
    document_to_triple,
    load_triple,
    parse_complex,
    parse_state_spec,
    save_triple,
    triple_to_document,
)
from nctk.triple import run_all_checks

EXAMPLES = pathlib.Path(__file__).resolve().parent.parent / "examples"


@pytest.mark.parametrize("text,value", [
    ("1", 1 + 0j),
    ("-2.5", -2.5 + 0j),
    ("3i", 3j),
    ("1+2i", 1 + 2j),
    ("-0.5-0.25i", -0.5 - 0.25j),
    (" 4 ", 4 + 0j),
])
def test_parse_complex_values(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["", "abc", "1+", "inf", "nan"])
def test_parse_complex_rejects(text):
    with pytest.raises(ParseError):
        parse_complex(text)


def test_parse_state_spec():
    s = parse_state_spec("0:3,4i")
    assert s.component_index == 0
    assert np.allclose(np.abs(s.vector), [0.6, 0.8])
    with pytest.raises(ParseError, match="component:entries"):
        parse_state_spec("1,0")
    with pytest.raises(ParseError):
        parse_state_spec("x:1")
    with pytest.raises(ParseError):
        parse_state_spec("-1:1")
    with pytest.raises(ParseError, match="nonzero"):
        parse_state_spec("0:0,0")


def test_document_roundtrip_even_triple():
    t = two_point_triple([1.0, 0.25j], representation="matrix")
    doc = triple_to_document(t)
    back = document_to_triple(doc)
    assert back.hilbert_dim == t.hilbert_dim
    assert back.kr_dim == t.kr_dim
    assert np.allclose(back.dirac, t.dirac)
    assert np.allclose(back.grading, t.grading)
    assert np.allclose(back.real_structure, t.real_structure)
    for a, b in zip(t.rep.alg_images(), back.rep.alg_images()):
        assert np.allclose(a, b)


def test_document_roundtrip_odd_triple():
    t = m2_triple(0.0, 1.5)
    doc = triple_to_document(t)
    assert doc["grading"] == "odd"
    assert "real_structure" not in doc
    back = document_to_triple(doc)
    assert back.grading is None
    assert back.real_structure is None


def test_save_and_load_roundtrip(tmp_path):
    t = two_point_triple([0.5, -1.5, 2.0j], representation="vector")
    p = tmp_path / "t.json"
    save_triple(t, str(p))
    back = load_triple(str(p))
    assert np.max(np.abs(back.dirac - t.dirac)) <= 1e-15
    # file stays human-readable: no line longer than ~100 chars plus indent
    assert all(len(line) < 140 for line in p.read_text().splitlines())


def test_load_reports_json_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{\n!")
    with pytest.raises(ParseError) as err:
        load_triple(str(p))
    assert str(p) in str(err.value)
    assert ":2:" in str(err.value)


def test_document_validation_paths():
    t = two_point_triple([1.0], representation="vector")
    base = triple_to_document(t)

    doc = dict(base)
    doc.pop("dirac")
    with pytest.raises(ParseError, match=r"\$: missing key 'dirac'"):
        document_to_triple(doc)

    doc = dict(base)
    doc["hilbert_dim"] = 0
    with pytest.raises(ParseError, match=r"\$\.hilbert_dim"):
        document_to_triple(doc)

    doc = dict(base)
    doc["algebra"] = [{"kind": "X", "n": 1}]
    with pytest.raises(ParseError, match=r"\$\.algebra"):
        document_to_triple(doc)

    doc = dict(base)
    doc["representation"] = base["representation"][:1]
    with pytest.raises(ParseError, match=r"\$\.representation"):
        document_to_triple(doc)

    doc = dict(base)
    doc["dirac"] = [[[0.0, 0.0]]]
    with pytest.raises(ParseError, match="expected shape"):
        document_to_triple(doc)

    doc = dict(base)
    doc["dirac"] = [[[0.0, 0.0], "x"], [[0.0, 0.0], [0.0, 0.0]]]
    with pytest.raises(ParseError, match=r"re, im"):
        document_to_triple(doc)

    doc = dict(base)
    doc["kr_dim"] = "zero"
    with pytest.raises(ParseError, match=r"\$\.kr_dim"):
        document_to_triple(doc)


def test_structural_errors_surface_as_parse_errors():
    t = two_point_triple([1.0], representation="vector")
    doc = triple_to_document(t)
    doc["dirac"] = [[[0.0, 0.0], [1.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]  # not hermitian
    with pytest.raises(ParseError, match=r"^\$: "):
        document_to_triple(doc)


def test_bundled_two_point_example_is_axiomatic():
    t = load_triple(str(EXAMPLES / "two_point.json"))
    assert run_all_checks(t).all_passed


def test_bundled_conjugation_example_fails_order_axioms():
    t = load_triple(str(EXAMPLES / "m2_on_c2_with_conj_J.json"))
    report = run_all_checks(t)
    failed = {c.name for c in report if not c.passed}
    assert failed == {"zeroth-order", "first-order"}
