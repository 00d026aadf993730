import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypernorm.dsl import Keyword, List, String, Symbol, Vector, eval_program, expand_trace, load, parse, to_source
from hypernorm.errors import (
    ArityError,
    EvalError,
    FacetConflict,
    IllegalToken,
    UnboundSymbol,
    UnbalancedDelimiter,
    UnknownHead,
    UnterminatedString,
)
from hypernorm.model import (
    COMMENT,
    AnnotationAssertion,
    FunctionalObjectProperty,
    Iri,
    Named,
    Only,
    Or,
    Some,
    SubClassOf,
)
from hypernorm.patterns import TierSpec, defpartition
from hypernorm.model import EntityKind, new_ontology

HEADER = "(defontology aminoacid :prefix o)\n"
SIZE_FORM = """(defpartition Size
  [Tiny Small Large]
  :domain AminoAcid
  :super PhysioChemicalProperty)"""
SIZE_PROGRAM = HEADER + "(defclass AminoAcid)\n(defclass PhysioChemicalProperty)\n" + SIZE_FORM


def o(name):
    return Iri("o", name)


# -- reader --------------------------------------------------------------------


def test_parse_defclass():
    assert parse("(defclass A :super B)") == [
        List((Symbol("defclass"), Symbol("A"), Keyword("super"), Symbol("B")))
    ]


def test_parse_empty():
    assert parse("") == []
    assert parse("  ; only a comment\n") == []


def test_parse_locations():
    (form,) = parse("\n  (a\n   b)")
    assert (form.line, form.col) == (2, 3)
    assert (form.items[1].line, form.items[1].col) == (3, 4)


def test_parse_vector_and_string():
    (form,) = parse('(x [a b] "hi \\"there\\"")')
    assert form.items[1] == Vector((Symbol("a"), Symbol("b")))
    assert form.items[2] == String('hi "there"')


def test_multiline_string():
    (form,) = parse('(c "one\ntwo")')
    assert form.items[1].value == "one\ntwo"


def test_unbalanced():
    with pytest.raises(UnbalancedDelimiter) as info:
        parse("(defclass A")
    assert info.value.line == 1


def test_mismatched_delimiter():
    with pytest.raises(UnbalancedDelimiter):
        parse("(a [b)]")


def test_stray_closer():
    with pytest.raises(UnbalancedDelimiter) as info:
        parse("(a)\n)")
    assert info.value.location == (2, 1)


def test_unterminated_string():
    with pytest.raises(UnterminatedString) as info:
        parse('\n(a "oops')
    assert info.value.location == (2, 4)


def test_keyword_in_head_position():
    with pytest.raises(IllegalToken):
        parse("(:super A)")


def test_illegal_character():
    with pytest.raises(IllegalToken):
        parse("(a #b)")


symbols = st.from_regex(r"[A-Za-z][A-Za-z0-9_-]{0,6}", fullmatch=True).map(Symbol)
keywords = st.from_regex(r"[a-z][a-z0-9-]{0,6}", fullmatch=True).map(Keyword)
strings = st.text(alphabet=st.characters(blacklist_categories=("Cs",)), max_size=12).map(String)
atoms = st.one_of(symbols, keywords, strings)


def _no_keyword_head(items):
    return not items or not isinstance(items[0], Keyword)


forms = st.recursive(
    atoms,
    lambda inner: st.one_of(
        st.lists(inner, max_size=5).filter(_no_keyword_head).map(lambda xs: List(tuple(xs))),
        st.lists(inner, max_size=5).map(lambda xs: Vector(tuple(xs))),
    ),
    max_leaves=20,
)


@settings(max_examples=200)
@given(st.lists(forms, max_size=4))
def test_print_parse_round_trip(fs):
    text = "\n".join(to_source(f) for f in fs)
    assert parse(text) == fs


# -- evaluator -----------------------------------------------------------------


def test_size_program_matches_pattern():
    ont = load(SIZE_PROGRAM)
    ref = new_ontology("o:aminoacid", "o")
    ref.declare(EntityKind.CLASS, "AminoAcid")
    ref.declare(EntityKind.CLASS, "PhysioChemicalProperty")
    defpartition(ref, TierSpec("Size", ["Tiny", "Small", "Large"], "AminoAcid", "PhysioChemicalProperty"))
    assert ont.axioms == ref.axioms
    assert ont.facets == ref.facets


def test_some_only_expansion():
    ont = load(HEADER + "(defclass A)(defclass B)(defoproperty p)(defclass C :super (some-only p A B))")
    p = o("p")
    got = [ax for ax in ont.axioms if isinstance(ax, SubClassOf)]
    assert got == [
        SubClassOf(Named(o("C")), Some(p, Named(o("A")))),
        SubClassOf(Named(o("C")), Some(p, Named(o("B")))),
        SubClassOf(Named(o("C")), Only(p, Or([Named(o("A")), Named(o("B"))]))),
    ]


def test_unbound_symbol_has_location():
    with pytest.raises(UnboundSymbol) as info:
        load(HEADER + "(defclass C\n  :super D)")
    assert info.value.name == "D"
    assert info.value.location == (3, 10)


def test_forward_reference_is_an_error():
    with pytest.raises(UnboundSymbol):
        load(HEADER + "(defclass A :super B)\n(defclass B)")


def test_unknown_head():
    with pytest.raises(UnknownHead) as info:
        load(HEADER + "(defwidget A)")
    assert info.value.line == 2


def test_arity():
    with pytest.raises(ArityError):
        load(HEADER + "(defclass)")


def test_program_must_start_with_defontology():
    with pytest.raises(EvalError):
        load("(defclass A)")
    with pytest.raises(EvalError):
        load("")


def test_pattern_error_surfaces_with_location():
    text = HEADER + (
        "(defclass AminoAcid)\n"
        "(deftier Charge [Positive Neutral] :domain AminoAcid)\n"
        "(defoproperty hasSize)\n"
        "(as-facet hasSize Positive)"
    )
    with pytest.raises(FacetConflict) as info:
        load(text)
    assert info.value.line == 5


def test_defgem_with_multiline_comment(tmp_path):
    from pathlib import Path

    text = Path(__file__).parent.parent.joinpath("demos", "aminoacid.onto").read_text()
    ont = load(text)
    (comment,) = ont.annotations(o("Alanine"), COMMENT)
    assert comment.value == "An amino acid with a single\nmethyl group as a side-chain."


def test_defoproperty():
    ont = load(HEADER + "(defclass A)(defoproperty p :domain A :range A :characteristic functional)")
    assert FunctionalObjectProperty(o("p")) in ont.axioms


def test_suffix_binds_both_names():
    ont = load(HEADER + "(deftier Charge [Positive Negative] :suffix true)(defclass X :super Positive)")
    assert SubClassOf(Named(o("X")), Named(o("PositiveCharge"))) in ont.axioms


def test_eval_is_deterministic():
    a, b = load(SIZE_PROGRAM), load(SIZE_PROGRAM)
    assert a.axioms == b.axioms
    assert a.signature(True) == b.signature(True)


# -- trace ---------------------------------------------------------------------


def test_trace_single_defclass():
    trace = expand_trace(parse(HEADER + "(defclass B)(defclass A :super B)"))
    assert len(trace) == 2
    form, axioms = trace[1]
    assert form.items[1] == Symbol("A")
    assert axioms == [SubClassOf(Named(o("A")), Named(o("B")))]


def test_trace_size_form():
    trace = expand_trace(parse(SIZE_PROGRAM))
    _, axioms = trace[-1]
    logical = [ax for ax in axioms if not isinstance(ax, AnnotationAssertion)]
    assert len(logical) == 9


def test_trace_empty_program():
    assert expand_trace(parse(HEADER)) == []


def test_trace_concatenation_equals_program():
    forms = parse(SIZE_PROGRAM)
    flat = [ax for _, axioms in expand_trace(forms) for ax in axioms]
    assert tuple(flat) == eval_program(forms).axioms
