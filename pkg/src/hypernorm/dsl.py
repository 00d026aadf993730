"""A small s-expression language for writing pattern-based ontologies.

Programs look like the Lisp listings ontology developers already write::

    (defontology aa :prefix o)
    (defclass AminoAcid)
    (defclass PhysioChemicalProperty)
    (defpartition Size [Tiny Small Large]
      :domain AminoAcid
      :super PhysioChemicalProperty)

The reader produces :class:`Form` trees that remember their source position.
The evaluator walks the top-level forms in order; a symbol must be defined by
an earlier form before it can be used.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import (
    ArityError,
    EvalError,
    HypernormError,
    IllegalToken,
    UnboundSymbol,
    UnbalancedDelimiter,
    UnknownHead,
    UnterminatedString,
)
from .model import (
    COMMENT,
    And,
    AnnotationAssertion,
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
    conjunction,
    new_ontology,
)
from . import patterns


# -- forms ---------------------------------------------------------------------


@dataclass(frozen=True)
class Symbol:
    name: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Keyword:
    name: str  # without the leading ':'
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class String:
    value: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class List:
    items: tuple
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Vector:
    items: tuple
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


Form = Symbol | Keyword | String | List | Vector


# -- reader ----------------------------------------------------------------------

_SYMBOL_RE = re.compile(r"[A-Za-z_*+!?<>=/.-][A-Za-z0-9_*+!?<>=/.:-]*")
_KEYWORD_RE = re.compile(r":[A-Za-z][A-Za-z0-9_-]*")
_DELIMS = {"(": ")", "[": "]"}
_ESCAPES = {"n": "\n", "t": "\t", '"': '"', "\\": "\\"}


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def _advance(self, n: int = 1) -> None:
        for ch in self.text[self.pos : self.pos + n]:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n

    def _skip(self) -> None:
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in " \t\r\n,":
                self._advance()
            elif ch == ";":
                end = self.text.find("\n", self.pos)
                self._advance((len(self.text) if end < 0 else end) - self.pos)
            else:
                return

    def read_all(self) -> list:
        forms = []
        while True:
            self._skip()
            if self.pos >= len(self.text):
                return forms
            forms.append(self.read())

    def read(self):
        self._skip()
        line, col = self.line, self.col
        ch = self.text[self.pos]
        if ch in _DELIMS:
            return self._read_seq(ch, line, col)
        if ch in ")]":
            raise UnbalancedDelimiter(f"unexpected {ch!r}", line=line, col=col)
        if ch == '"':
            return self._read_string(line, col)
        m = _KEYWORD_RE.match(self.text, self.pos)
        if ch == ":":
            if not m:
                raise IllegalToken("expected a keyword name after ':'", line=line, col=col)
            self._advance(m.end() - self.pos)
            return Keyword(m.group()[1:], line, col)
        m = _SYMBOL_RE.match(self.text, self.pos)
        if not m:
            raise IllegalToken(
                f"illegal character {ch!r}; expected a symbol, keyword, string, '(' or '['",
                line=line,
                col=col,
            )
        end = m.end()
        if end < len(self.text) and self.text[end] not in " \t\r\n,;()[]\"":
            raise IllegalToken(
                f"illegal character {self.text[end]!r} in symbol", line=self.line, col=self.col + end - self.pos
            )
        self._advance(end - self.pos)
        return Symbol(m.group(), line, col)

    def _read_seq(self, opener: str, line: int, col: int):
        closer = _DELIMS[opener]
        self._advance()
        items = []
        while True:
            self._skip()
            if self.pos >= len(self.text):
                raise UnbalancedDelimiter(
                    f"{opener!r} opened here is never closed; expected {closer!r}", line=line, col=col
                )
            ch = self.text[self.pos]
            if ch in ")]":
                if ch != closer:
                    raise UnbalancedDelimiter(
                        f"expected {closer!r} but found {ch!r}", line=self.line, col=self.col
                    )
                self._advance()
                break
            items.append(self.read())
        if opener == "(":
            if items and isinstance(items[0], Keyword):
                head = items[0]
                raise IllegalToken(
                    f"keyword :{head.name} cannot be in head position", line=head.line, col=head.col
                )
            return List(tuple(items), line, col)
        return Vector(tuple(items), line, col)

    def _read_string(self, line: int, col: int) -> String:
        self._advance()
        out = []
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == '"':
                self._advance()
                return String("".join(out), line, col)
            if ch == "\\":
                nxt = self.text[self.pos + 1 : self.pos + 2]
                if nxt not in _ESCAPES:
                    raise IllegalToken(f"unknown escape \\{nxt}", line=self.line, col=self.col)
                out.append(_ESCAPES[nxt])
                self._advance(2)
                continue
            out.append(ch)
            self._advance()
        raise UnterminatedString("string is never closed; expected '\"'", line=line, col=col)


def parse(text: str) -> list:
    return _Reader(text).read_all()


def to_source(form) -> str:
    """Canonical single-line printing; ``parse(to_source(f)) == [f]``."""
    if isinstance(form, Symbol):
        return form.name
    if isinstance(form, Keyword):
        return ":" + form.name
    if isinstance(form, String):
        body = form.value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\t", "\\t")
        return f'"{body}"'
    if isinstance(form, List):
        return "(" + " ".join(to_source(f) for f in form.items) + ")"
    if isinstance(form, Vector):
        return "[" + " ".join(to_source(f) for f in form.items) + "]"
    raise TypeError(f"not a form: {form!r}")


# -- evaluator -------------------------------------------------------------------


def _split(args):
    """Leading positional forms, then ``:keyword form...`` sections."""
    positional, sections = [], {}
    current = None
    for a in args:
        if isinstance(a, Keyword):
            current = sections.setdefault(a.name, [])
        elif current is None:
            positional.append(a)
        else:
            current.append(a)
    return positional, sections


class Evaluator:
    """Evaluates top-level forms into one ontology, strictly in order."""

    def __init__(self):
        self.ont: Ontology | None = None
        self.env: dict[str, Iri] = {}

    # symbol helpers

    def bind(self, name: str, iri: Iri, alias_only: bool = False) -> None:
        if alias_only and name in self.env:
            return
        self.env[name] = iri

    def lookup(self, sym, kind: EntityKind | None = None) -> Iri:
        if not isinstance(sym, Symbol):
            raise EvalError(f"expected a symbol, found {to_source(sym)}", line=sym.line, col=sym.col)
        iri = self.env.get(sym.name)
        if iri is None:
            raise UnboundSymbol(sym.name, line=sym.line, col=sym.col)
        if kind is not None and self.ont.kind_of(iri) is not kind:
            raise EvalError(
                f"{sym.name} is a {self.ont.kind_of(iri).value}, expected {kind.value}",
                line=sym.line,
                col=sym.col,
            )
        return iri

    def _name(self, form) -> str:
        if not isinstance(form, Symbol):
            raise EvalError(f"expected a name, found {to_source(form)}", line=form.line, col=form.col)
        return form.name

    def _one(self, sections, key, head, default=None):
        forms = sections.get(key)
        if forms is None:
            return default
        if len(forms) != 1:
            raise ArityError(f"{head} :{key} takes exactly one value", line=head.line, col=head.col)
        return forms[0]

    def _bool(self, sections, key, head, default: bool) -> bool:
        form = self._one(sections, key, head)
        if form is None:
            return default
        if isinstance(form, Symbol) and form.name in ("true", "false"):
            return form.name == "true"
        raise EvalError(f":{key} expects true or false", line=form.line, col=form.col)

    def _string(self, sections, key, head):
        form = self._one(sections, key, head)
        if form is None:
            return None
        if not isinstance(form, String):
            raise EvalError(f":{key} expects a string", line=form.line, col=form.col)
        return form.value

    def _check_keys(self, head, sections, allowed):
        for key in sections:
            if key not in allowed:
                raise EvalError(f"{head.name} does not accept :{key}", line=head.line, col=head.col)

    # class expressions

    def class_exprs(self, form) -> list:
        if isinstance(form, Symbol):
            return [Named(self.lookup(form, EntityKind.CLASS))]
        if not isinstance(form, List) or not form.items:
            raise EvalError(f"expected a class expression, found {to_source(form)}", line=form.line, col=form.col)
        head, *args = form.items
        name = head.name if isinstance(head, Symbol) else None
        if name in ("some", "only"):
            if len(args) != 2:
                raise ArityError(f"({name} property class) takes 2 arguments", line=form.line, col=form.col)
            prop = self.lookup(args[0], EntityKind.OBJECT_PROPERTY)
            filler = conjunction(self.class_exprs(args[1]))
            return [(Some if name == "some" else Only)(prop, filler)]
        if name in ("and", "or"):
            ops = [e for a in args for e in self.class_exprs(a)]
            if not ops:
                raise ArityError(f"({name}) needs at least one operand", line=form.line, col=form.col)
            if len(ops) == 1:
                return ops
            return [(And if name == "and" else Or)(ops)]
        if name == "some-only":
            if len(args) < 2:
                raise ArityError("(some-only property class...) needs a filler", line=form.line, col=form.col)
            prop = self.lookup(args[0], EntityKind.OBJECT_PROPERTY)
            fillers = [conjunction(self.class_exprs(a)) for a in args[1:]]
            return patterns.some_only(prop, fillers)
        if name == "facet":
            classes = [self.lookup(a, EntityKind.CLASS) for a in args]
            if not classes:
                raise ArityError("(facet class...) needs a class", line=form.line, col=form.col)
            return patterns.facet(self.ont.facets, classes)
        raise UnknownHead(f"unknown class expression head {to_source(head)}", line=head.line, col=head.col)

    # top-level forms

    def eval_form(self, form) -> None:
        if not isinstance(form, List) or not form.items or not isinstance(form.items[0], Symbol):
            raise EvalError(f"expected a top-level form, found {to_source(form)}", line=form.line, col=form.col)
        head = form.items[0]
        if head.name == "defontology":
            if self.ont is not None:
                raise EvalError("defontology may only appear once", line=head.line, col=head.col)
        elif self.ont is None:
            raise EvalError("program must start with (defontology ...)", line=form.line, col=form.col)
        handler = self.HANDLERS.get(head.name)
        if handler is None:
            raise UnknownHead(f"unknown form {head.name}", line=head.line, col=head.col)
        try:
            handler(self, head, form.items[1:])
        except HypernormError as err:
            raise err.at(form.line, form.col)

    def _defontology(self, head, args):
        positional, sections = _split(args)
        self._check_keys(head, sections, {"iri", "prefix"})
        if len(positional) != 1:
            raise ArityError("(defontology name ...) takes one name", line=head.line, col=head.col)
        name = self._name(positional[0])
        prefix_form = self._one(sections, "prefix", head)
        prefix = self._name(prefix_form) if prefix_form is not None else "o"
        self.ont = new_ontology(Iri(prefix, name), prefix, self._string(sections, "iri", head))

    def _defclass(self, head, args):
        positional, sections = _split(args)
        self._check_keys(head, sections, {"super", "equivalent", "comment"})
        if len(positional) != 1:
            raise ArityError("(defclass Name ...) takes one name", line=head.line, col=head.col)
        name = self._name(positional[0])
        ont = self.ont
        iri = ont.iri_for(name)
        ont.declare(EntityKind.CLASS, iri)
        self.bind(name, iri)
        for f in sections.get("super", []):
            for e in self.class_exprs(f):
                ont.add_axiom(SubClassOf(Named(iri), e))
        equiv = [e for f in sections.get("equivalent", []) for e in self.class_exprs(f)]
        if equiv:
            ont.add_axiom(EquivalentClasses([Named(iri), conjunction(equiv)]))
        comment = self._string(sections, "comment", head)
        if comment is not None:
            ont.add_axiom(AnnotationAssertion(iri, COMMENT, comment))

    def _defoproperty(self, head, args):
        positional, sections = _split(args)
        self._check_keys(head, sections, {"domain", "range", "characteristic", "comment"})
        if len(positional) != 1:
            raise ArityError("(defoproperty name ...) takes one name", line=head.line, col=head.col)
        name = self._name(positional[0])
        ont = self.ont
        iri = ont.iri_for(name)
        ont.declare(EntityKind.OBJECT_PROPERTY, iri)
        self.bind(name, iri)
        for f in sections.get("domain", []):
            for e in self.class_exprs(f):
                ont.add_axiom(ObjectPropertyDomain(iri, e))
        for f in sections.get("range", []):
            for e in self.class_exprs(f):
                ont.add_axiom(ObjectPropertyRange(iri, e))
        for f in sections.get("characteristic", []):
            if not (isinstance(f, Symbol) and f.name == "functional"):
                raise EvalError("only the functional characteristic is supported", line=f.line, col=f.col)
            ont.add_axiom(FunctionalObjectProperty(iri))
        comment = self._string(sections, "comment", head)
        if comment is not None:
            ont.add_axiom(AnnotationAssertion(iri, COMMENT, comment))

    def _tier(self, head, args, partition: bool):
        positional, sections = _split(args)
        self._check_keys(
            head,
            sections,
            {"domain", "super", "suffix", "functional", "disjoint", "cover", "property", "property-name", "comment"},
        )
        if len(positional) != 2 or not isinstance(positional[1], Vector):
            raise ArityError(f"({head.name} Name [Value...] ...) takes a name and a vector", line=head.line, col=head.col)
        name = self._name(positional[0])
        values = [self._name(v) for v in positional[1].items]
        domain = self._one(sections, "domain", head)
        sup = self._one(sections, "super", head)
        pname = self._one(sections, "property-name", head)
        spec = patterns.TierSpec(
            name=name,
            values=values,
            domain=self.lookup(domain, EntityKind.CLASS) if domain is not None else None,
            super=self.lookup(sup, EntityKind.CLASS) if sup is not None else None,
            suffix=self._bool(sections, "suffix", head, False),
            functional=self._bool(sections, "functional", head, True),
            disjoint=self._bool(sections, "disjoint", head, True),
            cover=self._bool(sections, "cover", head, True),
            make_property=self._bool(sections, "property", head, True),
            property_name=self._name(pname) if pname is not None else None,
        )
        result = (patterns.defpartition if partition else patterns.deftier)(self.ont, spec)
        self.bind(name, result.tier_class)
        for bare, iri in zip(values, result.value_classes):
            self.bind(iri.fragment, iri)
        # the unsuffixed spelling stays usable unless something else owns it
        for bare, iri in zip(values, result.value_classes):
            self.bind(bare, iri, alias_only=True)
        if result.property is not None:
            self.bind(result.property.fragment, result.property)
        comment = self._string(sections, "comment", head)
        if comment is not None:
            self.ont.add_axiom(AnnotationAssertion(result.tier_class, COMMENT, comment))

    def _deftier(self, head, args):
        self._tier(head, args, partition=False)

    def _defpartition(self, head, args):
        self._tier(head, args, partition=True)

    def _as_facet(self, head, args):
        positional, sections = _split(args)
        if sections or len(positional) < 2:
            raise ArityError("(as-facet property class...) needs a property and classes", line=head.line, col=head.col)
        prop = self.lookup(positional[0], EntityKind.OBJECT_PROPERTY)
        classes = [self.lookup(c, EntityKind.CLASS) for c in positional[1:]]
        patterns.as_facet(self.ont, prop, classes)

    def _defgem(self, head, args):
        positional, sections = _split(args)
        self._check_keys(head, sections, {"comment", "facet", "super", "defined"})
        if len(positional) != 1:
            raise ArityError("(defgem Name ...) takes one name", line=head.line, col=head.col)
        name = self._name(positional[0])
        spec = patterns.GemSpec(
            name=name,
            facets=[self.lookup(f, EntityKind.CLASS) for f in sections.get("facet", [])],
            comment=self._string(sections, "comment", head),
            extra_supers=[e for f in sections.get("super", []) for e in self.class_exprs(f)],
            defined=self._bool(sections, "defined", head, False),
        )
        iri = patterns.defgem(self.ont, spec)
        self.bind(name, iri)

    HANDLERS = {
        "defontology": _defontology,
        "defclass": _defclass,
        "defoproperty": _defoproperty,
        "defpartition": _defpartition,
        "deftier": _deftier,
        "as-facet": _as_facet,
        "defgem": _defgem,
    }


def expand_trace(forms) -> list[tuple]:
    """``(form, axioms)`` for every form after ``defontology``.

    The axioms are the ones the form added; concatenating them gives the
    ontology's axiom list.
    """
    ev = Evaluator()
    trace = []
    for form in forms:
        before = len(ev.ont.axioms) if ev.ont is not None else 0
        starting = ev.ont is None
        ev.eval_form(form)
        if not starting:
            trace.append((form, list(ev.ont.axioms[before:])))
    if ev.ont is None:
        raise EvalError("program must start with (defontology ...)", line=1, col=1)
    return trace


def eval_program(forms) -> Ontology:
    ev = Evaluator()
    for form in forms:
        ev.eval_form(form)
    if ev.ont is None:
        raise EvalError("program must start with (defontology ...)", line=1, col=1)
    return ev.ont


def load(text: str) -> Ontology:
    """Parse and evaluate a program."""
    return eval_program(parse(text))
