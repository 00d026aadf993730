# The hypernormalised amino-acid ontology: 431 defined classes, one gem,
# and a hierarchy that exists only after classification.

# %%
import time

from hypernorm import check_against_oracle, classify
from hypernorm.exemplar import asserted_named_supers, build_exemplar
from hypernorm.model import Iri

ont, registry = build_exemplar()
print(len(ont.classes()), "classes,", len(ont.axioms), "axioms")

# %% nothing is asserted under AminoAcid; Alanine only carries facet restrictions
alanine = Iri("o", "Alanine")
print("asserted named supers of Alanine:", asserted_named_supers(ont, alanine))

# %% classification recovers the polyhierarchy
start = time.perf_counter()
dag = classify(ont, registry)
print(f"classified in {time.perf_counter() - start:.2f}s")
print("direct supers:", [str(s) for s in dag.direct_supers[alanine]])
above = sorted(str(c) for c in dag.ancestors(alanine))
print(len(above), "classes above Alanine, e.g.", above[:4])

# %% chains of refinement show up as reachability
for sub, sup in [("SmallNeutralAliphaticAminoAcid", "SmallNeutralAminoAcid"),
                 ("SmallNeutralAminoAcid", "SmallAminoAcid")]:
    print(sub, "<", sup, dag.reaches(Iri("o", sub), Iri("o", sup)))

# %% the structural classifier against brute-force enumeration of models
start = time.perf_counter()
report = check_against_oracle(ont, registry)
print(report.summary(), f"in {time.perf_counter() - start:.2f}s")
