"""Manchester-style text output and a JSON-lines axiom dump.

The text layout copies the OWL API's Manchester renderer as it appears in
published listings: 4-space section indent, 8-space member indent, a trailing
space after each section header and a ``"    "`` line between sections and
frames. Output is sorted, so it does not depend on axiom insertion order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .model import (
    AnnotationAssertion,
    And,
    DisjointClasses,
    EntityKind,
    EquivalentClasses,
    FunctionalObjectProperty,
    Iri,
    Named,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    Only,
    Ontology,
    Or,
    Some,
    SubClassOf,
    new_ontology,
)

INDENT = "    "
SEPARATOR = INDENT + "\n"


@dataclass(frozen=True)
class RenderOptions:
    include_annotations: bool = False
    include_properties: bool = False
    include_header: bool = False
    indent: int = 4

    def __post_init__(self):
        if self.indent != 4:
            raise ValueError("indent is fixed at 4 spaces")


def render_expression(expr, nested: bool = False) -> str:
    if isinstance(expr, Named):
        return str(expr.iri)
    if isinstance(expr, (Some, Only)):
        word = "some" if isinstance(expr, Some) else "only"
        text = f"{expr.property} {word} {render_expression(expr.filler, nested=True)}"
    elif isinstance(expr, (And, Or)):
        word = " and " if isinstance(expr, And) else " or "
        text = word.join(sorted(render_expression(op, nested=True) for op in expr.operands))
    else:
        raise TypeError(f"not a class expression: {expr!r}")
    return f"({text})" if nested else text


def _literal(value) -> str:
    if isinstance(value, Iri):
        return str(value)
    escaped = value.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def _section(header: str, members: Iterable[str]) -> str:
    members = sorted(members)
    body = (",\n").join(INDENT * 2 + m for m in members)
    return f"{INDENT}{header}: \n{body}\n"


def _frame(keyword: str, name: str, sections: list[str]) -> str | None:
    if not sections:
        return None
    return f"{keyword}: {name}\n" + SEPARATOR.join(sections)


def render(ont: Ontology, opts: RenderOptions | None = None) -> str:
    opts = opts or RenderOptions()
    equiv: dict[Iri, list[str]] = {}
    supers: dict[Iri, list[str]] = {}
    domains: dict[Iri, list[str]] = {}
    ranges: dict[Iri, list[str]] = {}
    characteristics: dict[Iri, list[str]] = {}
    annotations: dict[Iri, list[str]] = {}
    disjoints: list[str] = []
    general: list[str] = []

    for ax in ont.axioms:
        if isinstance(ax, SubClassOf):
            if isinstance(ax.sub, Named):
                supers.setdefault(ax.sub.iri, []).append(render_expression(ax.sup))
            else:
                general.append(
                    f"{render_expression(ax.sub, True)} SubClassOf {render_expression(ax.sup, True)}"
                )
        elif isinstance(ax, EquivalentClasses):
            named = sorted((op for op in ax.operands if isinstance(op, Named)), key=lambda n: n.iri)
            if not named:
                general.append(
                    " EquivalentTo ".join(sorted(render_expression(op, True) for op in ax.operands))
                )
                continue
            owner = named[0].iri
            for op in ax.operands:
                if op != named[0]:
                    equiv.setdefault(owner, []).append(render_expression(op))
        elif isinstance(ax, DisjointClasses):
            disjoints.append(",".join(sorted(render_expression(op) for op in ax.operands)))
        elif isinstance(ax, ObjectPropertyDomain):
            domains.setdefault(ax.property, []).append(render_expression(ax.domain))
        elif isinstance(ax, ObjectPropertyRange):
            ranges.setdefault(ax.property, []).append(render_expression(ax.range))
        elif isinstance(ax, FunctionalObjectProperty):
            characteristics.setdefault(ax.property, []).append("Functional")
        elif isinstance(ax, AnnotationAssertion):
            annotations.setdefault(ax.subject, []).append(f"{ax.property} {_literal(ax.value)}")

    blocks: list[str] = []
    if opts.include_header:
        header = "".join(
            f"Prefix: {p}: <{x}>\n" for p, x in sorted(ont.prefixes.items())
        )
        header += f"\nOntology: <{ont.prefixes[ont.iri.prefix]}{ont.iri.fragment}>\n"
        blocks.append(header)

    def annotation_section(iri):
        if opts.include_annotations and iri in annotations:
            return [_section("Annotations", annotations[iri])]
        return []

    for iri in sorted(ont.classes(), key=str):
        sections = annotation_section(iri)
        if iri in equiv:
            sections.append(_section("EquivalentTo", equiv[iri]))
        if iri in supers:
            sections.append(_section("SubClassOf", supers[iri]))
        frame = _frame("Class", str(iri), sections)
        if frame:
            blocks.append(frame)

    if opts.include_properties:
        for iri in sorted(ont.object_properties(), key=str):
            sections = annotation_section(iri)
            if iri in domains:
                sections.append(_section("Domain", domains[iri]))
            if iri in ranges:
                sections.append(_section("Range", ranges[iri]))
            if iri in characteristics:
                sections.append(_section("Characteristics", characteristics[iri]))
            frame = _frame("ObjectProperty", str(iri), sections)
            if frame:
                blocks.append(frame)

    for line in sorted(general):
        blocks.append(f"{line}\n")
    for line in sorted(disjoints):
        blocks.append(f"DisjointClasses: \n{INDENT}{line}\n")
    return SEPARATOR.join(blocks)


# -- JSON lines ---------------------------------------------------------------


def expression_to_json(expr) -> dict:
    if isinstance(expr, Named):
        return {"type": "Class", "iri": str(expr.iri)}
    if isinstance(expr, (Some, Only)):
        return {
            "type": type(expr).__name__,
            "property": str(expr.property),
            "filler": expression_to_json(expr.filler),
        }
    return {"type": type(expr).__name__, "operands": [expression_to_json(op) for op in expr.operands]}


def expression_from_json(obj: dict):
    kind = obj["type"]
    if kind == "Class":
        return Named(Iri.parse(obj["iri"]))
    if kind in ("Some", "Only"):
        cls = Some if kind == "Some" else Only
        return cls(Iri.parse(obj["property"]), expression_from_json(obj["filler"]))
    if kind in ("And", "Or"):
        cls = And if kind == "And" else Or
        return cls([expression_from_json(op) for op in obj["operands"]])
    raise ValueError(f"unknown expression type {kind!r}")


def axiom_to_json(ax) -> dict:
    if isinstance(ax, SubClassOf):
        return {"axiom": "SubClassOf", "sub": expression_to_json(ax.sub), "super": expression_to_json(ax.sup)}
    if isinstance(ax, (EquivalentClasses, DisjointClasses)):
        return {"axiom": type(ax).__name__, "operands": [expression_to_json(op) for op in ax.operands]}
    if isinstance(ax, ObjectPropertyDomain):
        return {"axiom": "ObjectPropertyDomain", "property": str(ax.property), "domain": expression_to_json(ax.domain)}
    if isinstance(ax, ObjectPropertyRange):
        return {"axiom": "ObjectPropertyRange", "property": str(ax.property), "range": expression_to_json(ax.range)}
    if isinstance(ax, FunctionalObjectProperty):
        return {"axiom": "FunctionalObjectProperty", "property": str(ax.property)}
    if isinstance(ax, AnnotationAssertion):
        value = {"iri": str(ax.value)} if isinstance(ax.value, Iri) else {"literal": ax.value}
        return {"axiom": "AnnotationAssertion", "subject": str(ax.subject), "property": str(ax.property), "value": value}
    raise TypeError(f"not an axiom: {ax!r}")


def axiom_from_json(obj: dict):
    kind = obj["axiom"]
    if kind == "SubClassOf":
        return SubClassOf(expression_from_json(obj["sub"]), expression_from_json(obj["super"]))
    if kind == "EquivalentClasses":
        return EquivalentClasses([expression_from_json(op) for op in obj["operands"]])
    if kind == "DisjointClasses":
        return DisjointClasses([expression_from_json(op) for op in obj["operands"]])
    if kind == "ObjectPropertyDomain":
        return ObjectPropertyDomain(Iri.parse(obj["property"]), expression_from_json(obj["domain"]))
    if kind == "ObjectPropertyRange":
        return ObjectPropertyRange(Iri.parse(obj["property"]), expression_from_json(obj["range"]))
    if kind == "FunctionalObjectProperty":
        return FunctionalObjectProperty(Iri.parse(obj["property"]))
    if kind == "AnnotationAssertion":
        value = obj["value"]
        value = Iri.parse(value["iri"]) if "iri" in value else value["literal"]
        return AnnotationAssertion(Iri.parse(obj["subject"]), Iri.parse(obj["property"]), value)
    raise ValueError(f"unknown axiom type {kind!r}")


def dump_jsonl(ont: Ontology) -> str:
    """One JSON object per line: ontology header, declarations, then axioms in order."""
    lines = [
        {
            "ontology": str(ont.iri),
            "default_prefix": ont.default_prefix,
            "prefixes": ont.prefixes,
        }
    ]
    for ent in ont.signature():
        lines.append({"declaration": ent.kind.value, "iri": str(ent.iri)})
    lines.extend(axiom_to_json(ax) for ax in ont.axioms)
    return "".join(json.dumps(obj, sort_keys=True) + "\n" for obj in lines)


def load_jsonl(text: str) -> Ontology:
    """Inverse of :func:`dump_jsonl`; the facet registry is rebuilt from annotations."""
    from .model import FACET_PROPERTY

    ont = None
    for n, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        obj = json.loads(line)
        if ont is None:
            if "ontology" not in obj:
                raise ValueError(f"line {n}: expected ontology header")
            ont = new_ontology(obj["ontology"], obj["default_prefix"])
            ont.prefixes.update(obj["prefixes"])
        elif "declaration" in obj:
            ont.declare(EntityKind(obj["declaration"]), Iri.parse(obj["iri"]))
        else:
            ax = axiom_from_json(obj)
            ont.add_axiom(ax)
            if isinstance(ax, AnnotationAssertion) and ax.property == FACET_PROPERTY:
                ont.facets._map[ax.subject] = ax.value
    if ont is None:
        raise ValueError("empty dump")
    return ont


def format_axiom(ax) -> str:
    """Compact functional-style rendering, used in traces and reports."""
    e = render_expression
    if isinstance(ax, SubClassOf):
        return f"SubClassOf({e(ax.sub, True)} {e(ax.sup, True)})"
    if isinstance(ax, (EquivalentClasses, DisjointClasses)):
        return f"{type(ax).__name__}(" + " ".join(e(op, True) for op in ax.operands) + ")"
    if isinstance(ax, ObjectPropertyDomain):
        return f"ObjectPropertyDomain({ax.property} {e(ax.domain, True)})"
    if isinstance(ax, ObjectPropertyRange):
        return f"ObjectPropertyRange({ax.property} {e(ax.range, True)})"
    if isinstance(ax, FunctionalObjectProperty):
        return f"FunctionalObjectProperty({ax.property})"
    return f"AnnotationAssertion({ax.property} {ax.subject} {_literal(ax.value)})"
