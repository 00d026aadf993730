"""In-memory OWL subset: IRIs, class expressions, axioms and the ontology store."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterator, Union

from .errors import KindClash, MalformedIri, UndeclaredEntity

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True, order=True)
class Iri:
    prefix: str
    fragment: str

    def __post_init__(self):
        if not isinstance(self.prefix, str) or not _NAME_RE.match(self.prefix):
            raise MalformedIri(f"malformed prefix {self.prefix!r}")
        if not isinstance(self.fragment, str) or not _NAME_RE.match(self.fragment):
            raise MalformedIri(f"malformed fragment {self.fragment!r}")

    @classmethod
    def parse(cls, text: str, default_prefix: str | None = None) -> "Iri":
        if ":" in text:
            prefix, _, fragment = text.partition(":")
            return cls(prefix, fragment)
        if default_prefix is None:
            raise MalformedIri(f"{text!r} has no prefix")
        return cls(default_prefix, text)

    def __str__(self) -> str:
        return f"{self.prefix}:{self.fragment}"


class EntityKind(enum.Enum):
    CLASS = "Class"
    OBJECT_PROPERTY = "ObjectProperty"
    ANNOTATION_PROPERTY = "AnnotationProperty"


@dataclass(frozen=True)
class Entity:
    kind: EntityKind
    iri: Iri


# -- class expressions -------------------------------------------------------

@dataclass(frozen=True)
class Named:
    iri: Iri

    def walk(self):
        yield self.iri, EntityKind.CLASS


@dataclass(frozen=True)
class Some:
    property: Iri
    filler: "ClassExpression"

    def walk(self):
        yield self.property, EntityKind.OBJECT_PROPERTY
        yield from self.filler.walk()


@dataclass(frozen=True)
class Only:
    property: Iri
    filler: "ClassExpression"

    def walk(self):
        yield self.property, EntityKind.OBJECT_PROPERTY
        yield from self.filler.walk()


class _NAry:
    operands: tuple

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) < 2:
            raise ValueError(f"{type(self).__name__} needs at least two operands")

    def walk(self):
        for op in self.operands:
            yield from op.walk()


@dataclass(frozen=True)
class And(_NAry):
    operands: tuple


@dataclass(frozen=True)
class Or(_NAry):
    operands: tuple


ClassExpression = Union[Named, Some, Only, And, Or]


def conjunction(exprs) -> ClassExpression:
    """``And`` over ``exprs``, or the bare expression when there is only one."""
    exprs = list(exprs)
    if not exprs:
        raise ValueError("empty conjunction")
    return exprs[0] if len(exprs) == 1 else And(exprs)


def disjunction(exprs) -> ClassExpression:
    exprs = list(exprs)
    if not exprs:
        raise ValueError("empty disjunction")
    return exprs[0] if len(exprs) == 1 else Or(exprs)


# -- axioms ------------------------------------------------------------------

@dataclass(frozen=True)
class SubClassOf:
    sub: ClassExpression
    sup: ClassExpression

    def walk(self):
        yield from self.sub.walk()
        yield from self.sup.walk()


@dataclass(frozen=True)
class EquivalentClasses:
    operands: tuple

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) < 2:
            raise ValueError("EquivalentClasses needs at least two operands")

    def walk(self):
        for op in self.operands:
            yield from op.walk()


@dataclass(frozen=True)
class DisjointClasses:
    operands: tuple

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) < 2:
            raise ValueError("DisjointClasses needs at least two operands")
        if not all(isinstance(op, Named) for op in self.operands):
            raise TypeError("DisjointClasses operands must be named classes")
        if len(set(self.operands)) != len(self.operands):
            raise ValueError("DisjointClasses operands must be pairwise distinct")

    def walk(self):
        for op in self.operands:
            yield from op.walk()


@dataclass(frozen=True)
class ObjectPropertyDomain:
    property: Iri
    domain: ClassExpression

    def walk(self):
        yield self.property, EntityKind.OBJECT_PROPERTY
        yield from self.domain.walk()


@dataclass(frozen=True)
class ObjectPropertyRange:
    property: Iri
    range: ClassExpression

    def walk(self):
        yield self.property, EntityKind.OBJECT_PROPERTY
        yield from self.range.walk()


@dataclass(frozen=True)
class FunctionalObjectProperty:
    property: Iri

    def walk(self):
        yield self.property, EntityKind.OBJECT_PROPERTY


@dataclass(frozen=True)
class AnnotationAssertion:
    subject: Iri
    property: Iri
    value: Union[str, Iri]

    def walk(self):
        yield self.subject, None
        yield self.property, EntityKind.ANNOTATION_PROPERTY
        if isinstance(self.value, Iri):
            yield self.value, None


Axiom = Union[
    SubClassOf,
    EquivalentClasses,
    DisjointClasses,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    FunctionalObjectProperty,
    AnnotationAssertion,
]


def mentions(axiom: Axiom) -> set[Iri]:
    return {iri for iri, _ in axiom.walk()}


# -- internal annotation vocabulary -----------------------------------------

TAWNY = "tawny"
RDFS = "rdfs"
PATTERN = Iri(TAWNY, "pattern")
FACET_PROPERTY = Iri(TAWNY, "facetProperty")
LABEL = Iri(RDFS, "label")
COMMENT = Iri(RDFS, "comment")

PATTERN_KINDS = ("tier", "partition", "facet", "gem", "closure")

STANDARD_PREFIXES = {
    TAWNY: "http://example.org/tawny/pattern#",
    RDFS: "http://www.w3.org/2000/01/rdf-schema#",
}
INTERNAL_ENTITIES = (
    Entity(EntityKind.ANNOTATION_PROPERTY, PATTERN),
    Entity(EntityKind.ANNOTATION_PROPERTY, FACET_PROPERTY),
    Entity(EntityKind.ANNOTATION_PROPERTY, LABEL),
    Entity(EntityKind.ANNOTATION_PROPERTY, COMMENT),
)


class FacetRegistry:
    """Value class -> governing object property.

    The ontology keeps one of these in step with its ``tawny:facetProperty``
    annotations; :meth:`from_ontology` rebuilds it from those annotations alone.
    """

    def __init__(self, mapping=None):
        self._map: dict[Iri, Iri] = dict(mapping or {})

    @classmethod
    def from_ontology(cls, ont: "Ontology") -> "FacetRegistry":
        reg = cls()
        for ax in ont.axioms:
            if isinstance(ax, AnnotationAssertion) and ax.property == FACET_PROPERTY:
                reg._map[ax.subject] = ax.value
        return reg

    def property_of(self, cls: Iri) -> Iri | None:
        return self._map.get(cls)

    def values_of(self, prop: Iri) -> list[Iri]:
        return [c for c, p in self._map.items() if p == prop]

    def properties(self) -> list[Iri]:
        return list(dict.fromkeys(self._map.values()))

    def __contains__(self, cls) -> bool:
        return cls in self._map

    def __len__(self) -> int:
        return len(self._map)

    def items(self):
        return self._map.items()

    def as_dict(self) -> dict[Iri, Iri]:
        return dict(self._map)

    def __eq__(self, other) -> bool:
        return isinstance(other, FacetRegistry) and self._map == other._map

    def __repr__(self) -> str:
        body = ", ".join(f"{c}: {p}" for c, p in self._map.items())
        return f"FacetRegistry({{{body}}})"


@dataclass(eq=False)
class Ontology:
    iri: Iri
    default_prefix: str
    prefixes: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self._entities: dict[Iri, Entity] = {}
        self._axioms: list[Axiom] = []
        self._axiom_set: set[Axiom] = set()
        self.facets = FacetRegistry()
        for ent in INTERNAL_ENTITIES:
            self._entities[ent.iri] = ent

    # -- signature

    def iri_for(self, name) -> Iri:
        if isinstance(name, Iri):
            return name
        return Iri.parse(name, self.default_prefix)

    def declare(self, kind: EntityKind, name) -> Entity:
        iri = self.iri_for(name)
        existing = self._entities.get(iri)
        if existing is not None:
            if existing.kind is not kind:
                raise KindClash(
                    f"{iri} is already declared as {existing.kind.value}, not {kind.value}"
                )
            return existing
        if iri.prefix not in self.prefixes:
            raise MalformedIri(f"unknown prefix {iri.prefix!r} in {iri}")
        ent = Entity(kind, iri)
        self._entities[iri] = ent
        return ent

    def kind_of(self, iri: Iri) -> EntityKind | None:
        ent = self._entities.get(iri)
        return ent.kind if ent else None

    def is_declared(self, iri: Iri) -> bool:
        return iri in self._entities

    def signature(self, include_internal: bool = False) -> list[Entity]:
        ents = list(self._entities.values())
        if include_internal:
            return ents
        return [e for e in ents if e not in INTERNAL_ENTITIES]

    def classes(self) -> list[Iri]:
        return [e.iri for e in self._entities.values() if e.kind is EntityKind.CLASS]

    def object_properties(self) -> list[Iri]:
        return [
            e.iri for e in self._entities.values() if e.kind is EntityKind.OBJECT_PROPERTY
        ]

    # -- axioms

    @property
    def axioms(self) -> tuple[Axiom, ...]:
        return tuple(self._axioms)

    def add_axiom(self, ax: Axiom) -> bool:
        """Append ``ax``; returns False when a structurally equal axiom exists."""
        for iri, kind in ax.walk():
            ent = self._entities.get(iri)
            if ent is None:
                raise UndeclaredEntity(iri)
            if kind is not None and ent.kind is not kind:
                raise KindClash(f"{iri} is a {ent.kind.value}, expected {kind.value}")
        if ax in self._axiom_set:
            return False
        self._axioms.append(ax)
        self._axiom_set.add(ax)
        return True

    def axioms_about(self, iri: Iri) -> list[Axiom]:
        if iri not in self._entities:
            raise UndeclaredEntity(iri)
        return [ax for ax in self._axioms if iri in mentions(ax)]

    def annotate_pattern(self, subject: Iri, pattern_kind: str) -> None:
        if pattern_kind not in PATTERN_KINDS:
            raise ValueError(f"unknown pattern kind {pattern_kind!r}")
        self.add_axiom(AnnotationAssertion(subject, PATTERN, pattern_kind))

    def annotations(self, subject: Iri, prop: Iri | None = None) -> list[AnnotationAssertion]:
        return [
            ax
            for ax in self._axioms
            if isinstance(ax, AnnotationAssertion)
            and ax.subject == subject
            and (prop is None or ax.property == prop)
        ]

    def __iter__(self) -> Iterator[Axiom]:
        return iter(self._axioms)


def new_ontology(iri, default_prefix: str, expansion: str | None = None) -> Ontology:
    """Create an empty ontology with ``default_prefix`` registered.

    ``iri`` may be an :class:`Iri` or a ``prefix:name`` string. The internal
    annotation properties are declared up front.
    """
    if not isinstance(default_prefix, str) or not _NAME_RE.match(default_prefix):
        raise MalformedIri(f"malformed prefix {default_prefix!r}")
    if not isinstance(iri, Iri):
        if not isinstance(iri, str):
            raise MalformedIri(f"malformed ontology IRI {iri!r}")
        iri = Iri.parse(iri, default_prefix)
    prefixes = dict(STANDARD_PREFIXES)
    prefixes[default_prefix] = expansion or f"http://example.org/{iri.fragment}#"
    if iri.prefix not in prefixes:
        prefixes[iri.prefix] = f"http://example.org/{iri.prefix}#"
    return Ontology(iri=iri, default_prefix=default_prefix, prefixes=prefixes)
