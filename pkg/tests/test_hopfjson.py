import json

import pytest
from hypothesis import given, settings, strategies as st

from hopfgauge import hopfjson
from hopfgauge.examples import EXAMPLES, make_example
from hopfgauge.hopfjson import LoadError, dumps, loads
from hopfgauge.linalg import Field, InputError

PARAMS = {"group_algebra": {"group": "S3", "p": 5}, "taft": {"n": 3}}


@pytest.mark.parametrize("name", EXAMPLES)
def test_roundtrip_is_byte_identical(name):
    text = dumps(make_example(name, **PARAMS.get(name, {})))
    assert dumps(loads(text)) == text
    assert text.endswith("}\n")


def test_decomposition_roundtrip_keeps_every_kind(tmp_path):
    from hopfgauge.cli import main

    src, dec = tmp_path / "l.json", tmp_path / "d.json"
    make_doc = make_example("lifted_quantum_line")
    hopfjson.save(make_doc, src)
    assert main(["decompose", str(src), "-o", str(dec)]) == 0
    doc = hopfjson.load(dec)
    assert {hopfjson._kind(o) for o in doc.objects.values()} == {"hopf", "prebialgebra"}
    assert dumps(doc) == dec.read_text()


@settings(max_examples=20, deadline=None)
@given(n=st.integers(1, 6), p=st.sampled_from([0, 2, 3, 7]))
def test_group_algebra_documents_roundtrip(n, p):
    doc = make_example("group_algebra", group=f"C{n}", p=p)
    assert dumps(loads(dumps(doc))) == dumps(doc)
    assert loads(dumps(doc)).field == (Field() if p == 0 else Field(p))


def _sweedler_dict():
    return json.loads(dumps(make_example("sweedler")))


def test_truncated_document_reports_position():
    text = dumps(make_example("sweedler"))
    with pytest.raises(LoadError, match=r"parse error at line \d+, column \d+"):
        loads(text[: len(text) // 2])


def test_wrong_shape_is_named():
    data = _sweedler_dict()
    data["objects"]["A"]["delta"] = data["objects"]["A"]["delta"][:-1]
    with pytest.raises(InputError, match=r"object 'A'\.delta: expected shape \(16, 4\), got \(15, 4\)"):
        hopfjson.from_dict(data)


@pytest.mark.parametrize("mutate,message", [
    (lambda d: d.update(format="other"), "not a hopfjson document"),
    (lambda d: d.update(version=2), "version"),
    (lambda d: d.update(field={"kind": "prime", "p": 6}), "not prime"),
    (lambda d: d.update(field={"kind": "real"}), "field kind"),
    (lambda d: d["objects"]["H"].update(dim=0), "positive integer"),
    (lambda d: d["objects"]["A"].update(kind="monoid"), "kind"),
    (lambda d: d["maps"]["pi"].update(source=["Z"]), "Z"),
    (lambda d: d["roles"].update(A="nothing"), "nothing"),
    (lambda d: d["objects"]["A"]["unit"].__setitem__(0, "1/x"), "bad scalar"),
])
def test_malformed_documents_are_input_errors(mutate, message):
    data = _sweedler_dict()
    mutate(data)
    with pytest.raises(InputError, match=message):
        hopfjson.from_dict(data)


def test_self_referential_module_is_rejected():
    data = _sweedler_dict()
    data["objects"]["M"] = {"kind": "yd_module", "dim": 1, "over": "M", "action": [["1"]], "coaction": [["1"]]}
    with pytest.raises(LoadError, match="circular reference"):
        hopfjson.from_dict(data)


def test_prime_field_entries_are_reduced():
    data = _sweedler_dict()
    data["field"] = {"kind": "prime", "p": 3}
    doc = hopfjson.from_dict(data)
    assert doc.field == Field(3)
    assert "-1" not in dumps(doc)


def test_splitting_datum_needs_roles():
    doc = make_example("group_algebra", group="C2")
    with pytest.raises(InputError):
        doc.splitting_datum()
