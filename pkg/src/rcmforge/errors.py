"""Exception types raised across the toolchain."""

from __future__ import annotations


class RCMError(Exception):
    """Base class for every error raised by rcmforge."""


class ContractError(RCMError):
    """An operation was called on input that violates its precondition."""


class EmptyPredicateError(RCMError, ValueError):
    def __init__(self) -> None:
        super().__init__("empty predicate")


class EligibilityError(RCMError):
    """A time sub-component is attached to a component kind that cannot carry it."""

    def __init__(self, issues) -> None:
        self.issues = list(issues)
        detail = "; ".join(f"{i.path}: {i.message}" for i in self.issues)
        super().__init__(f"eligibility violation: {detail}")


class UnboundFrameError(RCMError):
    """No verb frame matches a predicate's operator lemma and arity."""

    def __init__(self, lemma: str, arity: int) -> None:
        self.lemma = lemma
        self.arity = arity
        super().__init__(f"unbound frame: {lemma}/{arity}")


class DuplicateFrameError(RCMError):
    def __init__(self, lemma: str, arity: int) -> None:
        self.lemma = lemma
        self.arity = arity
        super().__init__(f"duplicate frame: {lemma}/{arity}")


class FrameFileError(RCMError):
    def __init__(self, path: str, line: int, message: str) -> None:
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {message}")


class DSLSyntaxError(RCMError):
    """Raised by the DSL parser; carries the offending span and expected tokens."""

    def __init__(self, message: str, span, expected=()) -> None:
        self.span = span
        self.expected = tuple(expected)
        where = f"{span.line}:{span.column}" if span is not None else "?"
        super().__init__(f"{where}: {message}")


class SchemaError(RCMError):
    """Canonical document does not conform to the schema."""

    def __init__(self, path: str, message: str) -> None:
        self.path = path
        super().__init__(f"{path or '/'}: {message}")


class NotExpressibleError(RCMError):
    """A formula uses a construct the requested target logic lacks."""

    def __init__(self, target: str, what: str) -> None:
        self.target = target
        self.what = what
        super().__init__(f"not expressible in {target}: {what}")


class RegistryError(RCMError):
    def __init__(self, path: str, line: int, message: str) -> None:
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {message}")
