"""Random small ontologies in the facet fragment, for property tests."""

import random

from hypernorm import (
    And,
    DisjointClasses,
    EntityKind,
    EquivalentClasses,
    Named,
    SubClassOf,
    TierSpec,
    deftier,
    facet,
    new_ontology,
)


def random_ontology(rng: random.Random, max_facets=4, max_values=4, max_classes=40, cover=True):
    ont = new_ontology("o:random", "o")
    domain = ont.declare(EntityKind.CLASS, "D").iri
    other = ont.declare(EntityKind.CLASS, "E").iri
    if rng.random() < 0.5:
        ont.add_axiom(SubClassOf(Named(other), Named(domain)))
    values = []
    for i in range(rng.randint(1, max_facets)):
        names = [f"V{i}x{j}" for j in range(rng.randint(1, max_values))]
        result = deftier(ont, TierSpec(f"F{i}", names, domain=domain, cover=cover))
        values.append(list(result.value_classes))

    primitives = [domain, other]
    made = []
    budget = max_classes - len(ont.classes())
    for n in range(rng.randint(1, max(1, budget))):
        picked = []
        for vs in values:
            if rng.random() < 0.5:
                picked.append(rng.choice(vs))
        if picked and rng.random() < 0.1:
            # a second value on an already constrained facet: unsatisfiable
            vs = next(v for v in values if picked[0] in v)
            picked.append(rng.choice(vs))
        restrictions = []
        if picked:
            # facet() orders by property; duplicates on one facet are allowed here
            restrictions = facet(ont.facets, picked)
        extra = []
        if rng.random() < 0.3:
            extra.append(Named(rng.choice(primitives + made)))
        name = ont.declare(EntityKind.CLASS, f"C{n}").iri
        if rng.random() < 0.5 and (restrictions or extra):
            operands = ([Named(domain)] if rng.random() < 0.7 else []) + extra + restrictions
            expr = operands[0] if len(operands) == 1 else And(operands)
            ont.add_axiom(EquivalentClasses([Named(name), expr]))
        else:
            if not restrictions and not extra and rng.random() < 0.8:
                extra.append(Named(domain))
            for r in restrictions + extra:
                ont.add_axiom(SubClassOf(Named(name), r))
            primitives.append(name)
        made.append(name)
    if len(primitives) >= 4 and rng.random() < 0.3:
        a, b = rng.sample(primitives[2:], 2)
        ont.add_axiom(DisjointClasses([Named(a), Named(b)]))
    return ont
