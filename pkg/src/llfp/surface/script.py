"""Script directives: the CLI's input format."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..syntax import Mode


@dataclass(frozen=True)
class Expect:
    outcome: str  # "valid" | "invalid" | "error"
    code: str | None = None
    arg: str | None = None

    def __str__(self):
        if self.outcome != "error":
            return self.outcome
        return f"error {self.code}" + (f"({self.arg})" if self.arg else "")


@dataclass(frozen=True)
class System:
    mode: Mode
    span: object = field(default=None, compare=False)


@dataclass(frozen=True)
class Include:
    path: str
    script: "Script"
    span: object = field(default=None, compare=False)


@dataclass(frozen=True)
class SigBlock:
    decls: tuple
    span: object = field(default=None, compare=False)


@dataclass(frozen=True)
class CtxBlock:
    entries: tuple
    span: object = field(default=None, compare=False)


@dataclass(frozen=True)
class Goal:
    """``form`` is one of check, synth, family, kind, synthfam, sig, ctx, lint."""

    form: str
    subject: object
    classifier: object
    expect: Expect
    lint: str | None = None
    span: object = field(default=None, compare=False)

    def text(self) -> str:
        from .printer import pretty

        match self.form:
            case "sig" | "ctx":
                return self.form
            case "lint":
                return f"lint {self.lint} {pretty(self.subject)}"
        out = f"{self.form} {pretty(self.subject)}"
        if self.classifier is not None:
            out += f" : {pretty(self.classifier)}"
        return out


@dataclass(frozen=True)
class Script:
    directives: tuple
    file: str | None = None
    header_mode: Mode | None = None

    def goals(self):
        for d in self.directives:
            if isinstance(d, Include):
                yield from d.script.goals()
            elif isinstance(d, Goal):
                yield d
