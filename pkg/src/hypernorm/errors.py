"""Exception hierarchy.

Every error raised by the library derives from :class:`HypernormError`.
Errors that originate from DSL source carry a location, which the evaluator
attaches on the way out so that pattern-level errors are reported against the
form that triggered them.
"""

from __future__ import annotations


class HypernormError(Exception):
    """Base class. ``line``/``col`` are 1-based and ``None`` when unknown."""

    def __init__(self, message: str, *, line: int | None = None, col: int | None = None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col

    def at(self, line: int, col: int) -> "HypernormError":
        if self.line is None:
            self.line, self.col = line, col
        return self

    @property
    def location(self) -> tuple[int, int] | None:
        if self.line is None:
            return None
        return (self.line, self.col or 0)

    def __str__(self) -> str:
        return self.message


# core model
class MalformedIri(HypernormError):
    pass


class KindClash(HypernormError):
    pass


class UndeclaredEntity(HypernormError):
    def __init__(self, iri, **kw):
        super().__init__(f"undeclared entity {iri}", **kw)
        self.iri = iri


# patterns
class EmptyFillers(HypernormError):
    pass


class DuplicateValueName(HypernormError):
    pass


class FacetConflict(HypernormError):
    pass


class UnregisteredFacetClass(HypernormError):
    def __init__(self, iri, **kw):
        super().__init__(f"{iri} is not registered as a facet value", **kw)
        self.iri = iri


class DuplicateFacetProperty(HypernormError):
    pass


# dsl
class DslSyntaxError(HypernormError):
    pass


class UnbalancedDelimiter(DslSyntaxError):
    pass


class UnterminatedString(DslSyntaxError):
    pass


class IllegalToken(DslSyntaxError):
    pass


class UnknownHead(HypernormError):
    pass


class UnboundSymbol(HypernormError):
    def __init__(self, name: str, **kw):
        super().__init__(f"unbound symbol {name}", **kw)
        self.name = name


class ArityError(HypernormError):
    pass


class EvalError(HypernormError):
    """A well-formed program that uses a construct in the wrong place."""


# classifier
class NotInFragment(HypernormError):
    pass


class FragmentViolation(HypernormError):
    def __init__(self, offenders: dict, **kw):
        names = ", ".join(str(i) for i in offenders)
        super().__init__(f"classes outside the facet fragment: {names}", **kw)
        self.offenders = offenders


class UniverseMismatch(HypernormError):
    pass


class OracleInapplicable(HypernormError):
    pass


# exemplar
class BadEnumValue(HypernormError):
    def __init__(self, row: int, column: str, value: str, **kw):
        super().__init__(f"row {row}: {value!r} is not a valid {column}", **kw)
        self.row, self.column, self.value = row, column, value


class DuplicateName(HypernormError):
    pass
