"""Subsumption for hypernormalised ontologies, with a brute-force oracle.

The fragment
------------
A class is *in the fragment* when everything asserted about it is built from
named classes, existential restrictions ``p some v`` on a facet property ``p``
with a registered value ``v``, and conjunctions of those. The facet tiers must
be functional and disjoint; covering tiers are exact, non-covering ones get a
synthetic extra value when padded.

Each in-fragment class reduces to a :class:`FacetConstraint`:

* ``allowed`` maps a facet property to the values an instance may take
  (existentials intersect; an empty set means unsatisfiable);
* ``anchor`` is the most specific named class the constraint implies. A
  primitive class is its own anchor, so nothing can be inferred beneath it;
  its asserted named supers and the domains of its facet properties become
  its parents in the anchor hierarchy. A defined class is anchored at the
  most specific named class of its definition (``AminoAcid`` for the
  generated amino-acid classes).

Semantics used by the oracle
----------------------------
An individual sits at exactly one *point*: a primitive class that is not
covered by a partition, or the top point (no named class). It belongs to
every ancestor of that point, and picks exactly one value per facet. Points
whose ancestors include two classes asserted disjoint are empty in every
model and are left out. With functional, disjoint and covering tiers this
finite universe has the same subsumptions as the OWL models of the fragment,
so ``oracle_subsumes`` (extension inclusion, by enumeration) must agree with
:func:`subsumes` (set inclusion on constraints, by structure).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Mapping

from .errors import (
    FragmentViolation,
    NotInFragment,
    OracleInapplicable,
    UndeclaredEntity,
    UniverseMismatch,
)
from .model import (
    TAWNY,
    And,
    DisjointClasses,
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
)

NOTHING = Iri("owl", "Nothing")
THING = Iri("owl", "Thing")


@dataclass(frozen=True)
class AnchorHierarchy:
    """Named-class skeleton shared by the structural and enumerative checks.

    ``parents`` holds direct named supers (asserted or via property domains)
    of every primitive in-fragment class. ``covers`` maps a partitioned class
    to the children whose union it equals. ``disjoint`` lists pairs asserted
    disjoint.
    """

    parents: tuple = ()
    covers: tuple = ()
    disjoint: frozenset = frozenset()

    def parents_of(self, iri: Iri) -> tuple:
        return dict(self.parents).get(iri, ())

    def ancestors(self, iri: Iri) -> frozenset:
        """``iri`` and everything reachable through ``parents`` (breadth first)."""
        parents = dict(self.parents)
        seen = {iri}
        frontier = [iri]
        while frontier:
            nxt = []
            for x in frontier:
                for p in parents.get(x, ()):
                    if p not in seen:
                        seen.add(p)
                        nxt.append(p)
            frontier = nxt
        return frozenset(seen)

    def points(self) -> list:
        covered = {c for c, _ in self.covers}
        pts = [None]
        pts.extend(sorted((x for x, _ in self.parents if x not in covered), key=str))
        return pts


@dataclass(frozen=True)
class AssignmentUniverse:
    """Facet properties, their value lists, and the anchor hierarchy.

    ``len(universe)`` is the number of total assignments (one value per
    facet), i.e. the product of the value-list lengths.
    """

    properties: tuple
    values: tuple
    anchors: AnchorHierarchy = field(default_factory=AnchorHierarchy)
    padded: frozenset = frozenset()

    def __len__(self) -> int:
        n = 1
        for vs in self.values:
            n *= len(vs)
        return n

    def full(self, prop: Iri) -> frozenset:
        return frozenset(self.values[self.properties.index(prop)])

    def assignments(self):
        return itertools.product(*self.values)


@dataclass(frozen=True)
class FacetConstraint:
    anchor: Iri | None
    allowed: tuple  # sorted ((property, frozenset of values), ...)
    universe: AssignmentUniverse = field(repr=False, compare=False)
    anchor_consistent: bool = True

    @property
    def allowed_map(self) -> dict:
        return dict(self.allowed)

    @property
    def satisfiable(self) -> bool:
        return self.anchor_consistent and all(vs for _, vs in self.allowed)

    def allowed_for(self, prop: Iri) -> frozenset:
        allowed = self.allowed_map
        return allowed[prop] if prop in allowed else self.universe.full(prop)

    def restrict(self, prop: Iri, value: Iri) -> "FacetConstraint":
        """The constraint with one more ``prop some value`` conjunct."""
        allowed = self.allowed_map
        allowed[prop] = allowed.get(prop, self.universe.full(prop)) & {value}
        return FacetConstraint(self.anchor, _freeze(allowed), self.universe, self.anchor_consistent)


def _freeze(allowed: Mapping) -> tuple:
    return tuple(sorted(((p, frozenset(v)) for p, v in allowed.items()), key=lambda kv: str(kv[0])))


class _Below:
    """Memoised structural order on anchors, cover-aware."""

    def __init__(self, hierarchy: AnchorHierarchy):
        self.parents = dict(hierarchy.parents)
        self.covers = dict(hierarchy.covers)
        self.memo: dict = {}

    def __call__(self, b: Iri | None, a: Iri | None) -> bool:
        if a is None or b == a:
            return True
        if b is None:
            return False
        key = (b, a)
        hit = self.memo.get(key)
        if hit is None:
            self.memo[key] = False  # cycle guard
            hit = any(self(p, a) for p in self.parents.get(b, ())) or (
                b in self.covers and all(self(c, a) for c in self.covers[b])
            )
            self.memo[key] = hit
        return hit


_BELOW_CACHE: dict = {}


def _below_for(universe: AssignmentUniverse) -> _Below:
    key = id(universe)
    cached = _BELOW_CACHE.get(key)
    if cached is None or cached[0] is not universe:
        if len(_BELOW_CACHE) > 64:
            _BELOW_CACHE.clear()
        cached = (universe, _Below(universe.anchors))
        _BELOW_CACHE[key] = cached
    return cached[1]


def subsumes(a: FacetConstraint, b: FacetConstraint) -> bool:
    """True when every instance of ``b`` is an instance of ``a``."""
    if a.universe is not b.universe and a.universe != b.universe:
        raise UniverseMismatch("constraints come from different universes")
    if not b.satisfiable:
        return True
    if not _below_for(a.universe)(b.anchor, a.anchor):
        return False
    b_allowed = b.allowed_map
    for prop, vs in a.allowed:
        if not b_allowed.get(prop, a.universe.full(prop)) <= vs:
            return False
    return True


# -- extraction ------------------------------------------------------------------


class Fragment:
    """Reduces an ontology's classes to facet constraints.

    ``open_world_pad`` gives each non-covering facet one synthetic value so
    that an unconstrained facet never counts as pinned to its declared values.
    """

    def __init__(self, ont: Ontology, registry: FacetRegistry | None = None, open_world_pad: bool = False):
        self.ont = ont
        self.registry = registry if registry is not None else ont.facets
        self.open_world_pad = open_world_pad
        self._index_axioms()
        self._build_universe()
        self._constraints: dict = {}
        self._failures: dict = {}
        self._parents: dict = {}
        self._in_progress: set = set()
        for cls in ont.classes():
            self._try(cls)
        self._finish_hierarchy()

    # -- indexing

    def _index_axioms(self):
        ont = self.ont
        self.necessary: dict = {}
        self.definitions: dict = {}
        self.covers: dict = {}
        self.domains: dict = {}
        self.ranges: dict = {}
        self.functional: set = set()
        self.disjoint_groups: list = []
        self.tainted: set = set()
        asserted_named: dict = {}
        equivalences = []
        for ax in ont.axioms:
            if isinstance(ax, SubClassOf) and isinstance(ax.sub, Named):
                self.necessary.setdefault(ax.sub.iri, []).append(ax.sup)
                if isinstance(ax.sup, Named):
                    asserted_named.setdefault(ax.sub.iri, set()).add(ax.sup.iri)
            elif isinstance(ax, SubClassOf):
                self.tainted.update(i for i, _ in ax.walk())
            elif isinstance(ax, EquivalentClasses):
                if any(isinstance(op, Named) for op in ax.operands):
                    equivalences.append(ax)
                else:
                    self.tainted.update(i for i, _ in ax.walk())
            elif isinstance(ax, DisjointClasses):
                self.disjoint_groups.append([op.iri for op in ax.operands])
            elif isinstance(ax, ObjectPropertyDomain):
                self.domains.setdefault(ax.property, []).append(ax.domain)
            elif isinstance(ax, ObjectPropertyRange):
                self.ranges.setdefault(ax.property, []).append(ax.range)
            elif isinstance(ax, FunctionalObjectProperty):
                self.functional.add(ax.property)
        # the first named operand owns the axiom: it is the class being
        # defined (or partitioned); the other operands are its definition
        for ax in equivalences:
            owner = next(op for op in ax.operands if isinstance(op, Named))
            others = [o for o in ax.operands if o != owner]
            cover = self._as_cover(owner.iri, others, asserted_named)
            if cover is not None:
                self.covers[owner.iri] = cover
            else:
                self.definitions.setdefault(owner.iri, []).extend(others)

    @staticmethod
    def _as_cover(parent: Iri, others, asserted_named):
        if len(others) != 1:
            return None
        (expr,) = others
        children = expr.operands if isinstance(expr, Or) else (expr,)
        if not all(isinstance(c, Named) for c in children):
            return None
        kids = tuple(c.iri for c in children)
        if all(parent in asserted_named.get(k, ()) for k in kids) and parent not in kids:
            return kids
        return None

    def _tier_flags(self, prop: Iri, values: list) -> dict:
        vs = set(values)
        disjoint = len(vs) < 2 or any(vs <= set(g) for g in self.disjoint_groups)
        covering = False
        for r in self.ranges.get(prop, []):
            if isinstance(r, Named) and set(self.covers.get(r.iri, ())) == vs:
                covering = True
        return {
            "functional": prop in self.functional,
            "disjoint": disjoint,
            "cover": covering,
        }

    def _build_universe(self):
        self.flags: dict = {}
        props, values, padded = [], [], set()
        for prop in sorted(self.registry.properties(), key=str):
            vals = self.registry.values_of(prop)
            flags = self._tier_flags(prop, vals)
            self.flags[prop] = flags
            if not (flags["functional"] and flags["disjoint"]):
                continue
            vals = list(vals)
            if not flags["cover"] and self.open_world_pad:
                vals.append(Iri(TAWNY, "Other_" + prop.fragment))
                padded.add(prop)
            props.append(prop)
            values.append(tuple(vals))
        self._props = tuple(props)
        self._values = tuple(values)
        self._padded = frozenset(padded)

    # -- per-class reduction

    def _try(self, cls: Iri):
        if cls in self._constraints or cls in self._failures:
            return
        try:
            self._constraint(cls)
        except NotInFragment as err:
            self._failures[cls] = str(err)

    def _constraint(self, cls: Iri):
        """(anchor set, allowed) for ``cls``; raises NotInFragment."""
        if cls in self._failures:
            raise NotInFragment(f"{cls}: depends on a class outside the fragment")
        if cls in self._constraints:
            return self._constraints[cls]
        if cls in self._in_progress:
            raise NotInFragment(f"{cls}: cyclic definition")
        self._in_progress.add(cls)
        try:
            if cls in self.tainted:
                raise NotInFragment(f"{cls}: appears in a general class axiom")
            defs = self.definitions.get(cls, [])
            if defs:
                if len(defs) > 1 or self.necessary.get(cls):
                    raise NotInFragment(f"{cls}: mixes a definition with other conditions")
                if cls in self.covers:
                    raise NotInFragment(f"{cls}: both partitioned and defined")
                anchors, allowed = self._reduce(defs)
                anchor = self._most_specific(cls, anchors)
                result = (anchor, allowed)
            else:
                anchors, allowed = self._reduce(self.necessary.get(cls, []))
                parents = tuple(sorted(anchors - {None, cls}, key=str))
                for p in parents:
                    if p in self.covers and cls not in self.covers[p]:
                        raise NotInFragment(f"{cls}: primitive subclass of partitioned {p} outside its cover")
                self._parents[cls] = parents
                result = (cls, allowed)
        except NotInFragment as err:
            self._failures[cls] = str(err)
            raise
        finally:
            self._in_progress.discard(cls)
        self._constraints[cls] = result
        return result

    def _reduce(self, exprs):
        anchors: set = set()
        allowed: dict = {}
        stack = list(exprs)
        while stack:
            e = stack.pop()
            if isinstance(e, Named):
                anchor, sub = self._constraint(e.iri)
                if anchor is not None:
                    anchors.add(anchor)
                for p, vs in sub.items():
                    allowed[p] = allowed.get(p, frozenset(vs)) & vs
            elif isinstance(e, And):
                stack.extend(e.operands)
            elif isinstance(e, Some):
                p = e.property
                if p not in self._props:
                    raise NotInFragment(f"{p} is not a functional, disjoint facet property")
                if not isinstance(e.filler, Named) or self.registry.property_of(e.filler.iri) != p:
                    raise NotInFragment(f"{p} some {e.filler} does not use a value of {p}")
                v = e.filler.iri
                allowed[p] = allowed.get(p, frozenset({v})) & {v}
                for d in self.domains.get(p, []):
                    if not isinstance(d, Named):
                        raise NotInFragment(f"{p} has a complex domain")
                    stack.append(d)
            elif isinstance(e, (Only, Or)):
                raise NotInFragment("universal restrictions and unions are outside the fragment")
            else:
                raise NotInFragment(f"unsupported expression {e!r}")
        return anchors, allowed

    def _most_specific(self, cls, anchors: set):
        if not anchors:
            return None
        below = _Below(AnchorHierarchy(tuple(self._parents.items()), tuple(self.covers.items())))
        for m in anchors:
            if all(below(m, a) for a in anchors):
                return m
        names = ", ".join(sorted(str(a) for a in anchors))
        raise NotInFragment(f"{cls}: anchors {names} have no most specific member")

    def _finish_hierarchy(self):
        parents = {c: self._parents[c] for c in self._parents if c in self._constraints}
        covers = {
            t: kids
            for t, kids in self.covers.items()
            if t in parents and all(k in parents for k in kids)
        }
        pairs = set()
        for group in self.disjoint_groups:
            for x, y in itertools.combinations(group, 2):
                pairs.add(frozenset((x, y)))
        hierarchy = AnchorHierarchy(
            tuple(sorted(parents.items(), key=lambda kv: str(kv[0]))),
            tuple(sorted(covers.items(), key=lambda kv: str(kv[0]))),
            frozenset(pairs),
        )
        self.universe = AssignmentUniverse(self._props, self._values, hierarchy, self._padded)
        below = _below_for(self.universe)
        clash_memo: dict = {}

        def clashes(x):
            if x is None:
                return False
            if x not in clash_memo:
                clash_memo[x] = False
                ups = [a for a in parents if below(x, a)] + [x]
                bad = any(frozenset((p, q)) in pairs for p, q in itertools.combinations(set(ups), 2))
                if not bad and x in covers:
                    bad = all(clashes(k) for k in covers[x])
                clash_memo[x] = bad
            return clash_memo[x]

        self._built = {}
        for cls, (anchor, allowed) in self._constraints.items():
            self._built[cls] = FacetConstraint(
                anchor, _freeze(allowed), self.universe, not clashes(anchor)
            )

    # -- public

    @property
    def failures(self) -> dict:
        return dict(sorted(self._failures.items(), key=lambda kv: str(kv[0])))

    def in_fragment(self) -> list:
        return sorted(self._built, key=str)

    def constraint(self, cls: Iri) -> FacetConstraint:
        if not self.ont.is_declared(cls):
            raise UndeclaredEntity(cls)
        if cls in self._failures:
            raise NotInFragment(self._failures[cls])
        return self._built[cls]

    def oracle_problems(self) -> list:
        problems = []
        for prop, flags in sorted(self.flags.items(), key=lambda kv: str(kv[0])):
            missing = [k for k in ("functional", "disjoint", "cover") if not flags[k]]
            if prop in self._padded:
                missing.remove("cover")
            if missing:
                problems.append(f"{prop} is not {'/'.join(missing)}")
        return problems


def constraint_of(ont: Ontology, registry: FacetRegistry, cls: Iri) -> FacetConstraint:
    return Fragment(ont, registry).constraint(cls)


# -- oracle ------------------------------------------------------------------------


def oracle_extension(universe: AssignmentUniverse, c: FacetConstraint) -> frozenset:
    """All total assignments (one value per facet) satisfying ``c``'s facet part."""
    if c.universe is not universe and c.universe != universe:
        raise UniverseMismatch("constraint belongs to another universe")
    allowed = c.allowed_map
    idx = [(universe.properties.index(p), vs) for p, vs in allowed.items()]
    return frozenset(a for a in universe.assignments() if all(a[i] in vs for i, vs in idx))


def oracle_points(universe: AssignmentUniverse, c: FacetConstraint) -> list:
    """Anchor points (see module docs) whose individuals satisfy ``c``'s anchor."""
    h = universe.anchors
    out = []
    for x in h.points():
        ups = h.ancestors(x) if x is not None else frozenset()
        if any(frozenset((p, q)) in h.disjoint for p, q in itertools.combinations(ups, 2)):
            continue
        if c.anchor is None or c.anchor in ups:
            out.append(x)
    return out


class Oracle:
    """Extensions as bitsets over the enumerated (point, assignment) universe."""

    def __init__(self, universe: AssignmentUniverse):
        self.universe = universe
        self.assignments = list(universe.assignments())
        self.points = universe.anchors.points()
        self.width = len(self.assignments)
        self._point_index = {x: i for i, x in enumerate(self.points)}
        self._asg_index = {a: i for i, a in enumerate(self.assignments)}
        self._cache: dict = {}

    def extension(self, c: FacetConstraint) -> int:
        key = (c.anchor, c.allowed)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        asg_bits = 0
        for a in oracle_extension(self.universe, c):
            asg_bits |= 1 << self._asg_index[a]
        bits = 0
        for x in oracle_points(self.universe, c):
            bits |= asg_bits << (self._point_index[x] * self.width)
        self._cache[key] = bits
        return bits

    def subsumes(self, a: FacetConstraint, b: FacetConstraint) -> bool:
        eb = self.extension(b)
        return eb & ~self.extension(a) == 0


def oracle_subsumes(universe: AssignmentUniverse, a: FacetConstraint, b: FacetConstraint) -> bool:
    if a.universe != universe or b.universe != universe:
        raise UniverseMismatch("constraint belongs to another universe")
    return Oracle(universe).subsumes(a, b)


@dataclass
class OracleReport:
    pairs: int
    mismatches: list
    classes: list
    skipped: dict
    approximate: bool = False

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        text = f"{len(self.mismatches)} mismatches / {self.pairs} pairs"
        if self.approximate:
            text += " (approximate: open-world padding)"
        return text


def check_against_oracle(
    ont: Ontology, registry: FacetRegistry | None = None, open_world_pad: bool = False
) -> OracleReport:
    frag = Fragment(ont, registry, open_world_pad=open_world_pad)
    problems = frag.oracle_problems()
    if problems:
        raise OracleInapplicable("oracle needs functional, disjoint, covering facets: " + "; ".join(problems))
    oracle = Oracle(frag.universe)
    classes = frag.in_fragment()
    cons = [frag.constraint(c) for c in classes]
    mismatches = []
    for ca, a in zip(classes, cons):
        for cb, b in zip(classes, cons):
            structural = subsumes(a, b)
            semantic = oracle.subsumes(a, b)
            if structural != semantic:
                mismatches.append((ca, cb, structural, semantic))
    return OracleReport(
        pairs=len(classes) ** 2,
        mismatches=mismatches,
        classes=classes,
        skipped=frag.failures,
        approximate=bool(frag.universe.padded),
    )


# -- classification ----------------------------------------------------------------


@dataclass
class SubsumptionDag:
    """Inferred hierarchy over equivalence groups.

    Groups are keyed by their alphabetically first member. ``direct_supers``
    is the transitive reduction; groups without supers sit under owl:Thing.
    Unsatisfiable classes are equivalent to owl:Nothing.
    """

    groups: dict
    direct_supers: dict
    unsatisfiable: list
    skipped: dict

    def __post_init__(self):
        self._group_of = {m: rep for rep, members in self.groups.items() for m in members}

    def group_of(self, cls: Iri) -> Iri:
        return self._group_of[cls]

    def nodes(self) -> list:
        return sorted(self.groups, key=str)

    def edges(self) -> list:
        return [(sub, sup) for sub in self.nodes() for sup in self.direct_supers[sub]]

    def children(self, rep: Iri | None) -> list:
        if rep is None:
            return [g for g in self.nodes() if not self.direct_supers[g]]
        return [g for g in self.nodes() if rep in self.direct_supers[g]]

    def ancestors(self, cls: Iri) -> set:
        """Every class (all group members) strictly above ``cls``'s group."""
        start = self.group_of(cls)
        seen, stack = set(), list(self.direct_supers[start])
        while stack:
            g = stack.pop()
            if g not in seen:
                seen.add(g)
                stack.extend(self.direct_supers[g])
        return {m for g in seen for m in self.groups[g]}

    def reaches(self, sub: Iri, sup: Iri) -> bool:
        if sup in self.unsatisfiable:
            return sub in self.unsatisfiable
        if sub in self.unsatisfiable:
            return True
        return self.group_of(sub) == self.group_of(sup) or sup in self.ancestors(sub)

    def _label(self, rep) -> str:
        members = self.groups[rep]
        return " = ".join(str(m) for m in members)

    def to_text(self) -> str:
        lines = [str(THING)]
        expanded = set()

        def walk(rep, depth):
            kids = self.children(rep)
            label = self._label(rep)
            if rep in expanded and kids:
                lines.append("    " * depth + label + " ...")
                return
            lines.append("    " * depth + label)
            expanded.add(rep)
            for k in kids:
                walk(k, depth + 1)

        for root in self.children(None):
            walk(root, 1)
        if self.unsatisfiable:
            lines.append("    " + str(NOTHING))
            for u in self.unsatisfiable:
                lines.append("        " + str(u))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "equivalence_groups": [[str(m) for m in self.groups[g]] for g in self.nodes()],
            "direct_supers": {
                str(m): [str(s) for s in self.direct_supers[g]]
                for g in self.nodes()
                for m in self.groups[g]
            },
            "unsatisfiable": [str(u) for u in self.unsatisfiable],
            "skipped": {str(k): v for k, v in self.skipped.items()},
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def classify(
    ont: Ontology,
    registry: FacetRegistry | None = None,
    skip_non_fragment: bool = False,
    open_world_pad: bool = True,
) -> SubsumptionDag:
    frag = Fragment(ont, registry, open_world_pad=open_world_pad)
    if frag.failures and not skip_non_fragment:
        raise FragmentViolation(frag.failures)
    classes = frag.in_fragment()
    cons = {c: frag.constraint(c) for c in classes}
    unsat = [c for c in classes if not cons[c].satisfiable]
    live = [c for c in classes if cons[c].satisfiable]

    above = {c: {d for d in live if subsumes(cons[d], cons[c])} for c in live}
    groups: dict = {}
    rep_of: dict = {}
    for c in live:
        if c in rep_of:
            continue
        members = sorted((d for d in above[c] if c in above[d]), key=str)
        rep = members[0]
        groups[rep] = tuple(members)
        for m in members:
            rep_of[m] = rep

    strict = {rep: {rep_of[d] for d in above[rep]} - {rep} for rep in groups}
    direct = {}
    for rep, sups in strict.items():
        direct[rep] = tuple(
            sorted((s for s in sups if not any(s in strict[t] for t in sups)), key=str)
        )
    return SubsumptionDag(groups, direct, unsat, frag.failures)
