"""The hypernormalised amino-acid ontology.

Five facet tiers, every combination of their values as a defined class,
and one gem per amino acid read from a CSV table. Only Alanine ships with
data; ``data/amino_acids_template.csv`` lists the other nineteen names with
their facet columns left blank.

Hydrophobicity and Polarity are modelled as the binary splits
Hydrophobic/Hydrophilic and Polar/NonPolar.
"""

from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import BadEnumValue, DuplicateName, HypernormError
from .model import (
    EntityKind,
    EquivalentClasses,
    FacetRegistry,
    Iri,
    Named,
    Ontology,
    SubClassOf,
    And,
    new_ontology,
)
from .patterns import GemSpec, TierSpec, defgem, defpartition, deftier, facet

AMINO_ACID = "AminoAcid"
PHYSIO = "PhysioChemicalProperty"

# (tier, values, is value partition); the order fixes defined-class names
TIERS = (
    ("Size", ("Tiny", "Small", "Large"), True),
    ("Charge", ("Positive", "Neutral", "Negative"), False),
    ("Hydrophobicity", ("Hydrophobic", "Hydrophilic"), False),
    ("Polarity", ("Polar", "NonPolar"), False),
    ("SideChainStructure", ("Aromatic", "Aliphatic"), False),
)

CSV_HEADER = ["name", "size", "charge", "hydrophobicity", "polarity", "side_chain", "comment"]
_COLUMN_TIER = dict(zip(CSV_HEADER[1:6], TIERS))


def new_exemplar_ontology() -> Ontology:
    ont = new_ontology("o:aminoacid", "o", "http://example.org/aminoacid#")
    ont.declare(EntityKind.CLASS, AMINO_ACID)
    ont.declare(EntityKind.CLASS, PHYSIO)
    return ont


def build_tiers(ont: Ontology) -> FacetRegistry:
    for name, values, is_partition in TIERS:
        spec = TierSpec(name, values, domain=AMINO_ACID, super=PHYSIO)
        (defpartition if is_partition else deftier)(ont, spec)
    return ont.facets


def defined_class_count() -> int:
    n = 1
    for _, values, _ in TIERS:
        n *= len(values) + 1
    return n - 1


def generate_defined_classes(ont: Ontology, registry: FacetRegistry) -> list[Iri]:
    """One defined class per non-empty choice of at most one value per tier.

    ``SmallNeutralAminoAcid`` is ``AminoAcid and hasSize some Small and
    hasCharge some Neutral``.
    """
    anchor = ont.iri_for(AMINO_ACID)
    created = []
    for choice in itertools.product(*[(None,) + values for _, values, _ in TIERS]):
        picked = [v for v in choice if v is not None]
        if not picked:
            continue
        iri = ont.iri_for("".join(picked) + AMINO_ACID)
        ont.declare(EntityKind.CLASS, iri)
        restrictions = facet(registry, [ont.iri_for(v) for v in picked])
        ont.add_axiom(EquivalentClasses([Named(iri), And([Named(anchor), *restrictions])]))
        created.append(iri)
    return created


@dataclass(frozen=True)
class AminoAcidRow:
    name: str
    size: str
    charge: str
    hydrophobicity: str
    polarity: str
    side_chain: str
    comment: str | None = None

    def facets(self) -> list[str]:
        return [self.size, self.charge, self.hydrophobicity, self.polarity, self.side_chain]


def load_rows(path) -> list[AminoAcidRow]:
    with open(path, newline="", encoding="utf-8") as fh:
        return parse_rows(fh)


def parse_rows(lines) -> list[AminoAcidRow]:
    reader = csv.reader(lines)
    header = next(reader, None)
    if header != CSV_HEADER:
        raise HypernormError(f"CSV header must be {','.join(CSV_HEADER)}, got {header}")
    rows, seen = [], set()
    for n, record in enumerate(reader, start=1):
        if not record:
            continue
        if len(record) != len(CSV_HEADER):
            raise HypernormError(f"row {n}: expected {len(CSV_HEADER)} columns, got {len(record)}")
        data = dict(zip(CSV_HEADER, record))
        if data["name"] in seen:
            raise DuplicateName(f"row {n}: duplicate amino acid {data['name']}")
        seen.add(data["name"])
        for column, (_, values, _) in _COLUMN_TIER.items():
            if data[column] not in values:
                raise BadEnumValue(n, column, data[column])
        data["comment"] = data["comment"] or None
        rows.append(AminoAcidRow(**data))
    return rows


def bundled_rows() -> list[AminoAcidRow]:
    text = resources.files("hypernorm").joinpath("data/amino_acids.csv").read_text(encoding="utf-8")
    return parse_rows(text.splitlines())


def build_gems(ont: Ontology, registry: FacetRegistry, rows) -> list[Iri]:
    gems = []
    for row in rows:
        if ont.is_declared(ont.iri_for(row.name)):
            raise DuplicateName(f"{row.name} is already defined")
        spec = GemSpec(row.name, [ont.iri_for(v) for v in row.facets()], comment=row.comment)
        gems.append(defgem(ont, spec))
    return gems


def build_exemplar(rows=None) -> tuple[Ontology, FacetRegistry]:
    """The full amino-acid ontology; ``rows`` defaults to the bundled table."""
    ont = new_exemplar_ontology()
    registry = build_tiers(ont)
    generate_defined_classes(ont, registry)
    build_gems(ont, registry, bundled_rows() if rows is None else rows)
    return ont, registry


def asserted_named_supers(ont: Ontology, cls: Iri) -> list[Iri]:
    return [
        ax.sup.iri
        for ax in ont.axioms
        if isinstance(ax, SubClassOf) and ax.sub == Named(cls) and isinstance(ax.sup, Named)
    ]


def write_template(path) -> None:
    src = resources.files("hypernorm").joinpath("data/amino_acids_template.csv")
    Path(path).write_text(src.read_text(encoding="utf-8"), encoding="utf-8")
