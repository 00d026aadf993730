"""Pattern-driven construction and classification of hypernormalised ontologies."""

from .classifier import (
    AssignmentUniverse,
    FacetConstraint,
    Fragment,
    SubsumptionDag,
    check_against_oracle,
    classify,
    constraint_of,
    oracle_extension,
    oracle_subsumes,
    subsumes,
)
from .dsl import eval_program, expand_trace, load, parse
from .errors import HypernormError
from .model import (
    And,
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
    Or,
    Some,
    SubClassOf,
    new_ontology,
)
from .patterns import GemSpec, TierSpec, as_facet, defgem, defpartition, deftier, facet, some_only
from .serializer import RenderOptions, dump_jsonl, load_jsonl, render, render_expression

__version__ = "0.1.0"
