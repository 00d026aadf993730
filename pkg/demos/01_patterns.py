# Building an ontology from patterns, then printing it.
#
# Run from the repository root:  python3 demos/01_patterns.py

# %%
from hypernorm import EntityKind, RenderOptions, TierSpec, defpartition, deftier, facet, new_ontology, render

ont = new_ontology("o:aminoacid", "o")
ont.declare(EntityKind.CLASS, "AminoAcid")
ont.declare(EntityKind.CLASS, "PhysioChemicalProperty")

# %% A value partition: three disjoint values that cover Size, plus hasSize.
size = defpartition(ont, TierSpec("Size", ["Tiny", "Small", "Large"], "AminoAcid", "PhysioChemicalProperty"))
print(size)
print(render(ont))

# %% A tier with suffixed names. The values become PositiveCharge etc.
charge = deftier(ont, TierSpec("Charge", ["Positive", "Neutral", "Negative"], "AminoAcid",
                               "PhysioChemicalProperty", suffix=True))
print([str(v) for v in charge.value_classes])

# %% facet() turns value classes into existential restrictions on the right property
for r in facet(ont.facets, [ont.iri_for("PositiveCharge"), ont.iri_for("Tiny")]):
    print(r)

# %% With annotations and property frames switched on
print(render(ont, RenderOptions(include_annotations=True, include_properties=True)))
