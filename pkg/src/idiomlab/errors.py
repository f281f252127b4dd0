"""Exception types shared by every layer."""

from __future__ import annotations


class IdiomLabError(Exception):
    """Base class; ``code`` is the CLI exit code the error maps to."""

    code = 2

    def to_dict(self) -> dict:
        return {"error": type(self).__name__, "message": str(self)}


class InvalidTables(IdiomLabError):
    pass


class InvalidAction(IdiomLabError):
    pass


class IncompatibleRing(IdiomLabError):
    pass


class NotASubmodule(IdiomLabError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NoGreatestAnnihilator(IdiomLabError):
    def __init__(self, message: str, candidate: int = 0):
        super().__init__(message)
        self.candidate = candidate


class StarConditionViolated(IdiomLabError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAFrame(IdiomLabError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class SizeLimitExceeded(IdiomLabError):
    code = 3


class SearchSpaceExceeded(IdiomLabError):
    code = 3


class ParseError(IdiomLabError):
    pass


class SchemaError(IdiomLabError):
    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class UnknownCatalogEntry(IdiomLabError):
    pass
