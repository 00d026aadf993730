import pytest

from hypernorm.errors import (
    DuplicateFacetProperty,
    DuplicateValueName,
    EmptyFillers,
    FacetConflict,
    KindClash,
    UnregisteredFacetClass,
)
from hypernorm.model import (
    COMMENT,
    FACET_PROPERTY,
    LABEL,
    PATTERN,
    AnnotationAssertion,
    DisjointClasses,
    EntityKind,
    EquivalentClasses,
    FunctionalObjectProperty,
    Iri,
    Named,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    And,
    Only,
    Or,
    Some,
    SubClassOf,
    new_ontology,
)
from hypernorm.patterns import GemSpec, TierSpec, as_facet, defgem, defpartition, deftier, facet, some_only


def o(name):
    return Iri("o", name)


def N(name):
    return Named(o(name))


def base():
    ont = new_ontology("o:aminoacid", "o")
    ont.declare(EntityKind.CLASS, "AminoAcid")
    ont.declare(EntityKind.CLASS, "PhysioChemicalProperty")
    return ont


def logical(ont):
    return [ax for ax in ont.axioms if not isinstance(ax, AnnotationAssertion)]


SIZE = TierSpec("Size", ["Tiny", "Small", "Large"], "AminoAcid", "PhysioChemicalProperty")


def test_some_only_singleton():
    p = o("hasSize")
    assert some_only(p, [o("Tiny")]) == [Some(p, N("Tiny")), Only(p, N("Tiny"))]


def test_some_only_pair():
    p = o("p")
    assert some_only(p, [o("A"), o("B")]) == [
        Some(p, N("A")),
        Some(p, N("B")),
        Only(p, Or([N("A"), N("B")])),
    ]


def test_some_only_empty():
    with pytest.raises(EmptyFillers):
        some_only(o("p"), [])


def test_size_partition_axioms():
    ont = base()
    result = defpartition(ont, SIZE)
    assert result.tier_class == o("Size")
    assert result.property == o("hasSize")
    assert logical(ont) == [
        SubClassOf(N("Tiny"), N("Size")),
        SubClassOf(N("Small"), N("Size")),
        SubClassOf(N("Large"), N("Size")),
        SubClassOf(N("Size"), N("PhysioChemicalProperty")),
        EquivalentClasses([N("Size"), Or([N("Tiny"), N("Small"), N("Large")])]),
        DisjointClasses([N("Tiny"), N("Small"), N("Large")]),
        ObjectPropertyRange(o("hasSize"), N("Size")),
        ObjectPropertyDomain(o("hasSize"), N("AminoAcid")),
        FunctionalObjectProperty(o("hasSize")),
    ]
    assert AnnotationAssertion(o("Size"), PATTERN, "partition") in ont.axioms


def test_partition_forces_flags():
    ont = base()
    defpartition(ont, TierSpec("Size", ["Tiny", "Small"], cover=False, disjoint=False, functional=False))
    kinds = {type(ax) for ax in logical(ont)}
    assert {EquivalentClasses, DisjointClasses, FunctionalObjectProperty} <= kinds


def test_single_value_partition():
    ont = base()
    defpartition(ont, TierSpec("Only", ["OnlyOne"]))
    assert EquivalentClasses([N("Only"), N("OnlyOne")]) in ont.axioms
    assert not any(isinstance(ax, DisjointClasses) for ax in ont.axioms)


def test_partition_property_kind_clash():
    ont = base()
    ont.declare(EntityKind.CLASS, "hasSize")
    with pytest.raises(KindClash):
        defpartition(ont, SIZE)
    # nothing was half-built
    assert not ont.is_declared(o("Size"))


def test_suffix_charge():
    ont = base()
    result = deftier(ont, TierSpec("Charge", ["Positive", "Neutral", "Negative"], suffix=True))
    assert o("PositiveCharge") in result.value_classes
    assert SubClassOf(N("PositiveCharge"), N("Charge")) in ont.axioms
    assert AnnotationAssertion(o("PositiveCharge"), LABEL, "PositiveCharge") in ont.axioms


def test_flags_off_counting():
    ont = base()
    deftier(ont, TierSpec("T", ["A", "B"], cover=False, disjoint=False, make_property=False))
    assert len(ont.classes()) == 2 + 3
    subs = [ax for ax in ont.axioms if isinstance(ax, SubClassOf)]
    assert len(subs) == 2
    assert not any(isinstance(ax, (EquivalentClasses, DisjointClasses)) for ax in ont.axioms)


def test_make_property_false():
    ont = base()
    result = deftier(ont, TierSpec("T", ["A", "B"], make_property=False))
    assert result.property is None
    assert len(ont.facets) == 0


def test_duplicate_values():
    with pytest.raises(DuplicateValueName):
        deftier(base(), TierSpec("T", ["A", "A"]))


def test_as_facet_registration():
    ont = base()
    deftier(ont, TierSpec("Charge", ["Positive", "Neutral", "Negative"], make_property=False))
    ont.declare(EntityKind.OBJECT_PROPERTY, "hasCharge")
    ont.declare(EntityKind.OBJECT_PROPERTY, "hasSize")
    values = [o("Positive"), o("Neutral"), o("Negative")]
    as_facet(ont, o("hasCharge"), values)
    assert all(ont.facets.property_of(v) == o("hasCharge") for v in values)
    before = len(ont.axioms)
    as_facet(ont, o("hasCharge"), [o("Positive")])
    assert len(ont.axioms) == before
    assert AnnotationAssertion(o("Positive"), FACET_PROPERTY, o("hasCharge")) in ont.axioms
    with pytest.raises(FacetConflict):
        as_facet(ont, o("hasSize"), [o("Positive")])


def tiered():
    ont = base()
    defpartition(ont, SIZE)
    for name, values in [
        ("Charge", ["Positive", "Neutral", "Negative"]),
        ("Hydrophobicity", ["Hydrophobic", "Hydrophilic"]),
        ("Polarity", ["Polar", "NonPolar"]),
        ("SideChainStructure", ["Aromatic", "Aliphatic"]),
    ]:
        deftier(ont, TierSpec(name, values, "AminoAcid", "PhysioChemicalProperty"))
    return ont


def test_facet_single():
    ont = tiered()
    assert facet(ont.facets, [o("Positive")]) == [Some(o("hasCharge"), N("Positive"))]


def test_facet_five_in_property_order():
    ont = tiered()
    got = facet(ont.facets, [o(v) for v in ["Neutral", "Hydrophobic", "NonPolar", "Aliphatic", "Tiny"]])
    assert got == [
        Some(o("hasCharge"), N("Neutral")),
        Some(o("hasHydrophobicity"), N("Hydrophobic")),
        Some(o("hasPolarity"), N("NonPolar")),
        Some(o("hasSideChainStructure"), N("Aliphatic")),
        Some(o("hasSize"), N("Tiny")),
    ]


def test_facet_unregistered():
    ont = tiered()
    with pytest.raises(UnregisteredFacetClass):
        facet(ont.facets, [o("AminoAcid")])


ALANINE_COMMENT = "An amino acid with a single methyl group as a side-chain."


def test_alanine_gem():
    ont = tiered()
    values = [o(v) for v in ["Neutral", "Hydrophobic", "NonPolar", "Aliphatic", "Tiny"]]
    gem = defgem(ont, GemSpec("Alanine", values, comment=ALANINE_COMMENT))
    subs = [ax for ax in ont.axioms if isinstance(ax, SubClassOf) and ax.sub == Named(gem)]
    assert len(subs) == 5
    assert all(isinstance(ax.sup, Some) for ax in subs)
    assert AnnotationAssertion(gem, COMMENT, ALANINE_COMMENT) in ont.axioms
    assert AnnotationAssertion(gem, PATTERN, "gem") in ont.axioms


def test_degenerate_gem():
    ont = tiered()
    gem = defgem(ont, GemSpec("Plain", [], extra_supers=[o("AminoAcid")]))
    assert ont.axioms_about(gem) == [
        SubClassOf(Named(gem), N("AminoAcid")),
        AnnotationAssertion(gem, PATTERN, "gem"),
    ]


def test_gem_duplicate_facet():
    with pytest.raises(DuplicateFacetProperty):
        defgem(tiered(), GemSpec("Bad", [o("Tiny"), o("Small")]))


def test_defined_gem():
    ont = tiered()
    gem = defgem(ont, GemSpec("SmallThing", [o("Small")], defined=True))
    assert EquivalentClasses([Named(gem), And([N("AminoAcid"), Some(o("hasSize"), N("Small"))])]) in ont.axioms
    assert not any(isinstance(ax, SubClassOf) and ax.sub == Named(gem) for ax in ont.axioms)
