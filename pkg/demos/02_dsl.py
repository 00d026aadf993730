# The same construction written as a program in the s-expression language.

# %%
from pathlib import Path

from hypernorm import expand_trace, load, parse, render
from hypernorm.serializer import format_axiom

here = Path(__file__).parent
text = (here / "aminoacid.onto").read_text()

# %% every top-level form, with the axioms it produced
for form, axioms in expand_trace(parse(text)):
    print(f"line {form.line}: {form.items[0].name} -> {len(axioms)} axioms")
    for ax in axioms[:3]:
        print("   ", format_axiom(ax))

# %%
ont = load(text)
print(render(ont)[:600])

# %% errors carry the source position of the offending form
from hypernorm.errors import HypernormError

try:
    load("(defontology t :prefix o)\n(defclass A :super Missing)")
except HypernormError as exc:
    print(exc.location, exc)
