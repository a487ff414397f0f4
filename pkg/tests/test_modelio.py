import json

import pytest

from dioa import models
from dioa.automata import ConfigAutomaton
from dioa.core import Sioa
from dioa.modelio import (ModelLoadError, document, emit_document, emit_model, example_names,
                          example_text, load_model, loads_model)


def _doc(**sections):
    base = {"dioa_schema": 1}
    base.update(sections)
    return json.dumps(base)


SOURCE = {"id": "P", "states": [{"id": "p", "start": True, "outputs": ["x"]}],
          "transitions": [["p", "x", "p"]]}


def test_example_names():
    assert example_names() == ["basics", "creation_example", "creation_fixture",
                               "mobile_phone", "travel_agent"]


@pytest.mark.parametrize("name", ["basics", "creation_example", "creation_fixture", "mobile_phone"])
def test_round_trip(name):
    text = example_text(name)
    assert emit_model(loads_model(text)) == text


def test_bundled_files_match_the_builders():
    for name, doc in models.example_documents().items():
        assert emit_document(doc) == example_text(name), name


def test_mobile_phone_contents(phone):
    assert sorted(phone.automata) == ["Car", "Control", "Trans1", "Trans2"]
    assert isinstance(phone.target("Phone"), Sioa)
    assert len(phone.bundle("phone").components) == 4


def test_travel_targets(travel):
    assert isinstance(travel.target("Impl"), ConfigAutomaton)
    assert {"ImplHidden", "SpecHidden", "SpecCAHidden", "ImplWithDBs"} <= set(travel.names())


def test_minimal_document_defaults():
    m = loads_model(_doc(automata=[SOURCE]))
    a = m.target("P")
    assert a.starts == {"p"} and a.sig["p"].outputs == {"x"} and not a.sig["p"].inputs


def test_state_lists_become_tuples():
    entry = {"id": "Q", "states": [{"id": ["q", "0"], "start": True}], "transitions": []}
    a = loads_model(_doc(automata=[entry])).target("Q")
    assert a.states == (("q", "0"),)
    with pytest.raises(ModelLoadError, match="state ids"):
        loads_model(_doc(automata=[{"id": "Q", "states": [{"id": 0}], "transitions": []}]))


def test_duplicate_ids_rejected():
    with pytest.raises(ModelLoadError, match="P"):
        loads_model(_doc(automata=[SOURCE, SOURCE]))


def test_validation_report_is_embedded():
    # an input with no step out of the state breaks input enabling
    bad = {"id": "Bad", "states": [{"id": "b", "start": True, "inputs": ["y"]}], "transitions": []}
    with pytest.raises(ModelLoadError) as err:
        loads_model(_doc(automata=[bad]))
    assert err.value.report is not None and not err.value.report.ok
    assert "C2" in str(err.value)


def test_parse_error_position():
    with pytest.raises(ModelLoadError) as err:
        loads_model('{\n  "dioa_schema": 1,\n  "automata": [,]\n}', "m.json")
    assert err.value.where == "m.json:3:16"


def test_schema_and_sections_checked():
    with pytest.raises(ModelLoadError, match="dioa_schema"):
        loads_model(json.dumps({"automata": []}))
    with pytest.raises(ModelLoadError, match="unknown sections"):
        loads_model(_doc(extras=[]))


def test_unknown_target_and_bundle(phone):
    with pytest.raises(ModelLoadError):
        phone.target("Nope")
    with pytest.raises(ModelLoadError):
        phone.bundle("nope")


def test_derived_entries_in_any_order():
    text = _doc(automata=[SOURCE],
                hidings=[{"id": "H", "of": "R", "actions": ["z"]}],
                renamings=[{"id": "R", "of": "P", "mapping": {"x": "z"}}])
    m = loads_model(text)
    assert m.target("R").sig["p"].outputs == {"z"}
    assert m.target("H").sig["p"].internals == {"z"}


def test_derived_cycle_rejected():
    text = _doc(automata=[SOURCE],
                hidings=[{"id": "H1", "of": "H2", "actions": []},
                         {"id": "H2", "of": "H1", "actions": []}])
    with pytest.raises(ModelLoadError):
        loads_model(text)


def test_missing_file_and_bundled_name(tmp_path):
    with pytest.raises(ModelLoadError, match="cannot read"):
        load_model(tmp_path / "absent.json")
    assert "ONE_SINK" in load_model("basics").names()


def test_document_from_built_automata(one, sink):
    text = emit_document(document([one, sink]))
    again = loads_model(text)
    assert again.target("ONE") == one and again.target("SINK") == sink
