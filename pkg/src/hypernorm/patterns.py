"""Ontology patterns: closure, tier, value partition, facet and gem.

Each pattern expands into plain axioms on an :class:`~hypernorm.model.Ontology`.
Entities created by a pattern are annotated with ``tawny:pattern`` so the
pattern use stays visible in the serialized output.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from .errors import (
    DuplicateFacetProperty,
    DuplicateValueName,
    EmptyFillers,
    FacetConflict,
    KindClash,
    UndeclaredEntity,
    UnregisteredFacetClass,
)
from .model import (
    COMMENT,
    FACET_PROPERTY,
    LABEL,
    AnnotationAssertion,
    DisjointClasses,
    EntityKind,
    EquivalentClasses,
    FacetRegistry,
    FunctionalObjectProperty,
    Iri,
    Named,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    Only,
    Ontology,
    Some,
    SubClassOf,
    conjunction,
    disjunction,
)

__all__ = [
    "FacetRegistry",
    "GemSpec",
    "TierResult",
    "TierSpec",
    "as_facet",
    "defgem",
    "defpartition",
    "deftier",
    "facet",
    "some_only",
]


def _expr(x):
    return Named(x) if isinstance(x, Iri) else x


def some_only(property: Iri, fillers: Sequence) -> list:
    """Closure pattern: one existential per filler plus a universal over their union."""
    fillers = [_expr(f) for f in fillers]
    if not fillers:
        raise EmptyFillers(f"some-only on {property} needs at least one filler")
    return [Some(property, f) for f in fillers] + [Only(property, disjunction(fillers))]


@dataclass(frozen=True)
class TierSpec:
    name: str
    values: tuple
    domain: Iri | None = None
    super: Iri | None = None
    suffix: bool = False
    functional: bool = True
    disjoint: bool = True
    cover: bool = True
    make_property: bool = True
    property_name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

    def value_names(self) -> list[str]:
        return [v + self.name if self.suffix else v for v in self.values]

    def property_fragment(self) -> str:
        return self.property_name or "has" + self.name


@dataclass(frozen=True)
class TierResult:
    tier_class: Iri
    value_classes: tuple
    property: Iri | None = None


def _check_kind(ont: Ontology, iri: Iri, kind: EntityKind) -> None:
    have = ont.kind_of(iri)
    if have is not None and have is not kind:
        raise KindClash(f"{iri} is already declared as {have.value}, not {kind.value}")


def _require(ont: Ontology, iri: Iri | None) -> Iri | None:
    if iri is not None and not ont.is_declared(iri):
        raise UndeclaredEntity(iri)
    return iri


def deftier(ont: Ontology, spec: TierSpec, *, pattern_kind: str = "tier") -> TierResult:
    if not spec.values:
        raise DuplicateValueName(f"tier {spec.name} has no values")
    names = spec.value_names()
    seen = set()
    for v in names:
        if v in seen:
            raise DuplicateValueName(f"duplicate value {v} in tier {spec.name}")
        seen.add(v)

    tier = ont.iri_for(spec.name)
    values = [ont.iri_for(v) for v in names]
    prop = ont.iri_for(spec.property_fragment()) if spec.make_property else None
    domain = _require(ont, ont.iri_for(spec.domain) if spec.domain else None)
    sup = _require(ont, ont.iri_for(spec.super) if spec.super else None)
    if tier in values:
        raise DuplicateValueName(f"tier {spec.name} lists itself as a value")
    # validate everything before mutating
    for iri in [tier, *values]:
        _check_kind(ont, iri, EntityKind.CLASS)
    if prop is not None:
        _check_kind(ont, prop, EntityKind.OBJECT_PROPERTY)
        for v in values:
            owner = ont.facets.property_of(v)
            if owner is not None and owner != prop:
                raise FacetConflict(f"{v} is already a facet of {owner}")

    ont.declare(EntityKind.CLASS, tier)
    for v in values:
        ont.declare(EntityKind.CLASS, v)
    for v in values:
        ont.add_axiom(SubClassOf(Named(v), Named(tier)))
    if sup is not None:
        ont.add_axiom(SubClassOf(Named(tier), Named(sup)))
    if spec.cover:
        ont.add_axiom(EquivalentClasses([Named(tier), disjunction(Named(v) for v in values)]))
    if spec.disjoint and len(values) >= 2:
        ont.add_axiom(DisjointClasses([Named(v) for v in values]))
    if prop is not None:
        ont.declare(EntityKind.OBJECT_PROPERTY, prop)
        ont.add_axiom(ObjectPropertyRange(prop, Named(tier)))
        if domain is not None:
            ont.add_axiom(ObjectPropertyDomain(prop, Named(domain)))
        if spec.functional:
            ont.add_axiom(FunctionalObjectProperty(prop))
        as_facet(ont, prop, values)

    for iri in [tier, *values] + ([prop] if prop else []):
        ont.annotate_pattern(iri, pattern_kind)
    if spec.suffix:
        for v in values:
            ont.add_axiom(AnnotationAssertion(v, LABEL, v.fragment))
    return TierResult(tier, tuple(values), prop)


def defpartition(ont: Ontology, spec: TierSpec) -> TierResult:
    """A tier with functionality, disjointness and covering forced on."""
    forced = replace(spec, functional=True, disjoint=True, cover=True)
    return deftier(ont, forced, pattern_kind="partition")


def as_facet(ont: Ontology, property: Iri, classes: Sequence[Iri]) -> None:
    if ont.kind_of(property) is not EntityKind.OBJECT_PROPERTY:
        if ont.is_declared(property):
            raise KindClash(f"{property} is not an object property")
        raise UndeclaredEntity(property)
    for c in classes:
        if ont.kind_of(c) is not EntityKind.CLASS:
            if ont.is_declared(c):
                raise KindClash(f"{c} is not a class")
            raise UndeclaredEntity(c)
        owner = ont.facets.property_of(c)
        if owner is not None and owner != property:
            raise FacetConflict(f"{c} is already a facet of {owner}, not {property}")
    for c in classes:
        ont.facets._map[c] = property
        ont.add_axiom(AnnotationAssertion(c, FACET_PROPERTY, property))


def facet(registry: FacetRegistry, classes: Sequence[Iri]) -> list[Some]:
    """Existential restrictions for facet value classes, ordered by property name."""
    out = []
    for c in classes:
        prop = registry.property_of(c)
        if prop is None:
            raise UnregisteredFacetClass(c)
        out.append(Some(prop, Named(c)))
    return sorted(out, key=lambda r: str(r.property))


@dataclass(frozen=True)
class GemSpec:
    name: str
    facets: tuple = ()
    comment: str | None = None
    extra_supers: tuple = field(default=())
    defined: bool = False

    def __post_init__(self):
        object.__setattr__(self, "facets", tuple(self.facets))
        object.__setattr__(self, "extra_supers", tuple(self.extra_supers))


def _common_domain(ont: Ontology, props) -> Iri | None:
    domains = set()
    for p in props:
        ds = [
            ax.domain.iri
            for ax in ont.axioms_about(p)
            if isinstance(ax, ObjectPropertyDomain)
            and ax.property == p
            and isinstance(ax.domain, Named)
        ]
        if len(ds) != 1:
            return None
        domains.add(ds[0])
    return domains.pop() if len(domains) == 1 else None


def defgem(ont: Ontology, spec: GemSpec) -> Iri:
    registry = ont.facets
    restrictions = facet(registry, spec.facets)
    props = [r.property for r in restrictions]
    for a, b in zip(props, props[1:]):
        if a == b:
            raise DuplicateFacetProperty(f"gem {spec.name} uses {a} twice")
    gem = ont.iri_for(spec.name)
    _check_kind(ont, gem, EntityKind.CLASS)
    ont.declare(EntityKind.CLASS, gem)

    if spec.defined and restrictions:
        anchor = _common_domain(ont, props)
        operands = ([Named(anchor)] if anchor else []) + restrictions
        ont.add_axiom(EquivalentClasses([Named(gem), conjunction(operands)]))
    else:
        for r in restrictions:
            ont.add_axiom(SubClassOf(Named(gem), r))
    for extra in spec.extra_supers:
        ont.add_axiom(SubClassOf(Named(gem), _expr(extra)))
    if spec.comment is not None:
        ont.add_axiom(AnnotationAssertion(gem, COMMENT, spec.comment))
    ont.annotate_pattern(gem, "gem")
    return gem
