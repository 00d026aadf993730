import random
import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import golden
from hypernorm.dsl import load
from hypernorm.model import (
    And,
    EntityKind,
    Iri,
    Named,
    Only,
    Or,
    Some,
    SubClassOf,
    new_ontology,
)
from hypernorm.patterns import TierSpec, deftier
from hypernorm.serializer import (
    SEPARATOR,
    RenderOptions,
    dump_jsonl,
    format_axiom,
    load_jsonl,
    render,
    render_expression,
)
from randonto import random_ontology

HEADER = "(defontology aminoacid :prefix o)\n"
SIZE_PROGRAM = HEADER + """(defclass AminoAcid)
(defclass PhysioChemicalProperty)
(defpartition Size
  [Tiny Small Large]
  :domain AminoAcid
  :super PhysioChemicalProperty)
"""


def o(name):
    return Named(Iri("o", name))


def frame(text: str, name: str) -> str:
    for block in text.split(SEPARATOR):
        if block.startswith(f"Class: {name}\n"):
            return block
    raise KeyError(name)


def test_defclass_golden():
    assert render(load(HEADER + "(defclass B)\n(defclass A :super B)")) == golden("defclass_a.omn")


def test_size_golden():
    assert render(load(SIZE_PROGRAM)) == golden("size.omn")


def test_charge_value_frame_golden():
    ont = load(HEADER + "(defclass AminoAcid)\n(deftier Charge [Positive Neutral Negative] :domain AminoAcid :suffix true)")
    assert frame(render(ont), "o:PositiveCharge") == golden("charge_value.omn")


def test_empty_ontology():
    ont = new_ontology("o:aa", "o")
    assert render(ont) == ""
    text = render(ont, RenderOptions(include_header=True))
    assert text.startswith("Prefix: o: <http://example.org/aa#>\n")
    assert text.endswith("\nOntology: <http://example.org/aa#aa>\n")
    assert "Class:" not in text


def test_indent_is_fixed():
    with pytest.raises(ValueError):
        RenderOptions(indent=2)


def test_render_expression():
    assert render_expression(Or([o("Tiny"), o("Small"), o("Large")])) == "o:Large or o:Small or o:Tiny"
    assert render_expression(Some(Iri("o", "hasSize"), o("Tiny"))) == "o:hasSize some o:Tiny"
    assert render_expression(o("A")) == "o:A"
    p = Iri("o", "p")
    assert render_expression(Only(p, Or([o("B"), o("A")]))) == "o:p only (o:A or o:B)"
    assert render_expression(And([o("A"), Some(p, o("B"))])) == "(o:p some o:B) and o:A"


def test_annotations_and_properties():
    ont = load(SIZE_PROGRAM)
    plain = render(ont)
    full = render(ont, RenderOptions(include_annotations=True, include_properties=True))
    assert "Annotations:" not in plain and "ObjectProperty:" not in plain
    assert 'tawny:pattern "partition"' in full
    assert "ObjectProperty: o:hasSize\n" in full
    assert "    Characteristics: \n        Functional\n" in full
    # property frames follow every class frame
    assert full.index("ObjectProperty:") > full.rindex("Class:")


def _shuffled_copy(ont, seed):
    axioms = list(ont.axioms)
    random.Random(seed).shuffle(axioms)
    copy = new_ontology(ont.iri, ont.default_prefix)
    for ent in ont.signature():
        copy.declare(ent.kind, ent.iri)
    for ax in axioms:
        copy.add_axiom(ax)
    return copy


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_render_ignores_axiom_order(seed, shuffle_seed):
    ont = random_ontology(random.Random(seed))
    opts = RenderOptions(include_annotations=True, include_properties=True)
    assert render(ont, opts) == render(_shuffled_copy(ont, shuffle_seed), opts)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_jsonl_round_trip(seed):
    ont = random_ontology(random.Random(seed))
    back = load_jsonl(dump_jsonl(ont))
    assert back.axioms == ont.axioms
    assert back.signature() == ont.signature()
    assert back.facets == ont.facets
    assert dump_jsonl(back) == dump_jsonl(ont)


def test_jsonl_round_trip_with_comment():
    ont = load((HEADER + "(defclass A :comment \"two\nlines \\\"quoted\\\"\")"))
    assert load_jsonl(dump_jsonl(ont)).axioms == ont.axioms


def test_load_jsonl_rejects_missing_header():
    with pytest.raises(ValueError):
        load_jsonl('{"declaration": "Class", "iri": "o:A"}\n')
    with pytest.raises(ValueError):
        load_jsonl("")


def test_render_is_fast():
    start = time.perf_counter()
    render(load(SIZE_PROGRAM))
    assert time.perf_counter() - start < 1.0


def test_format_axiom():
    assert format_axiom(SubClassOf(o("A"), o("B"))) == "SubClassOf(o:A o:B)"
