"""Exception hierarchy shared by the kernel, the oracle layer and the front end.

Every error carries a short ``code`` (the class name) used by scripts in
``expect error <code>`` lines, an optional source span and an optional
``cause`` naming the premise failure it wraps.
"""

from __future__ import annotations


class LLFPError(Exception):
    """Base class; ``code`` identifies the failure kind."""

    code = "Error"

    def __init__(self, message: str, *, span=None, cause: "LLFPError | None" = None):
        super().__init__(message)
        self.message = message
        self.span = span
        self.cause = cause

    def codes(self) -> list[str]:
        """The codes along the cause chain, outermost first."""
        out, err = [], self
        while err is not None:
            out.append(err.code)
            err = err.cause
        return out

    def __str__(self) -> str:
        loc = f"{self.span}: " if self.span is not None else ""
        text = f"{loc}{self.code}: {self.message}"
        if self.cause is not None:
            text += f"\n  caused by {self.cause}"
        return text


def _make(name: str, base=LLFPError, doc: str = "") -> type:
    cls = type(name, (base,), {"code": name, "__doc__": doc or None})
    return cls


class CheckError(LLFPError):
    """A judgement was rejected."""

    code = "CheckError"


# hereditary substitution
SubstUndefined = _make("SubstUndefined", CheckError, "No rule of hereditary substitution applies.")
HygieneViolation = _make("HygieneViolation", CheckError)
MeasureViolation = _make("MeasureViolation", CheckError, "Recursive call did not decrease the index.")
WatchdogTripped = _make("WatchdogTripped", CheckError, "Step budget exhausted.")

# signatures and contexts
DuplicateName = _make("DuplicateName", CheckError)
DuplicateVar = _make("DuplicateVar", CheckError)
IllFormedKind = _make("IllFormedKind", CheckError)
IllFormedFamily = _make("IllFormedFamily", CheckError)

# synthesis and checking
UnknownFamily = _make("UnknownFamily", CheckError)
UnknownConst = _make("UnknownConst", CheckError)
UnknownVar = _make("UnknownVar", CheckError)
NotPiKind = _make("NotPiKind", CheckError)
NotPiType = _make("NotPiType", CheckError)
NotLockType = _make("NotLockType", CheckError)
NotAType = _make("NotAType", CheckError)
ArgCheckFailed = _make("ArgCheckFailed", CheckError)
GuardMismatch = _make("GuardMismatch", CheckError)
TypeMismatch = _make("TypeMismatch", CheckError)
NotEtaLong = _make("NotEtaLong", CheckError, "Atomic term checked against a non-atomic classifier.")
NestedUnlockMismatch = _make("NestedUnlockMismatch", CheckError)
ModeMismatch = _make("ModeMismatch", CheckError, "Lock guard does not fit the system mode.")


class PredicateFailed(CheckError):
    code = "PredicateFailed"

    def __init__(self, message, *, pred: str = "", verdict=None, **kw):
        super().__init__(message, **kw)
        self.pred = pred
        self.verdict = verdict


class PredicateUnknown(CheckError):
    code = "PredicateUnknown"

    def __init__(self, message, *, pred: str = "", verdict=None, **kw):
        super().__init__(message, **kw)
        self.pred = pred
        self.verdict = verdict


# oracle layer
UnknownPredicate = _make("UnknownPredicate", CheckError)
ShapeError = _make("ShapeError", CheckError, "Predicate subject does not have the expected encoding.")
NonNumeral = _make("NonNumeral", CheckError)
UnsupportedSynthesis = _make("UnsupportedSynthesis", CheckError)


class OracleConfigError(LLFPError):
    code = "OracleConfigError"


class ParseError(LLFPError):
    """Syntax error; ``expected`` lists the token kinds that would have been accepted."""

    code = "ParseError"

    def __init__(self, message, *, span=None, expected=()):
        super().__init__(message, span=span)
        self.expected = tuple(expected)
