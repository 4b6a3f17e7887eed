"""Running scripts: signature/context state, goal execution and reports."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import errors as E
from .checker import (
    Checker,
    CheckJ,
    CtxJ,
    FamilyJ,
    KindJ,
    SigJ,
    SynthFamJ,
    SynthJ,
)
from .hsubst import DEFAULT_STEP_LIMIT
from .predicates.base import OracleConfig
from .predicates.builtins import eal_lint
from .surface.parser import parse_file
from .surface.printer import pretty
from .surface.script import CtxBlock, Goal, Include, Script, SigBlock, System
from .syntax import Context, Mode, Signature, alpha_eq

LINTS = {"eal": eal_lint}


@dataclass
class GoalResult:
    file: str | None
    line: int | None
    goal: str
    expected: str
    verdict: str  # "valid" | "invalid"
    codes: list = field(default_factory=list)
    message: str | None = None
    ok: bool = False
    rules: list = field(default_factory=list)
    queries: list = field(default_factory=list)
    result: str | None = None
    trace: str | None = None
    elapsed: float = 0.0

    @property
    def watchdog(self) -> bool:
        return "WatchdogTripped" in self.codes

    def record(self) -> dict:
        """Deterministic structured form (no timing)."""
        return {
            "file": self.file,
            "line": self.line,
            "goal": self.goal,
            "expected": self.expected,
            "verdict": self.verdict,
            "codes": self.codes,
            "ok": self.ok,
            "result": self.result,
            "rules": self.rules,
            "queries": self.queries,
        }


class ModeConflict(Exception):
    pass


def resolve_mode(script: Script, flag: Mode | None) -> Mode:
    """The script header wins when no flag is given; a disagreeing flag is an error."""
    if script.header_mode is not None and flag is not None and flag is not script.header_mode:
        raise ModeConflict(
            f"{script.file}: script declares %system {script.header_mode.value} but --system={flag.value} was given"
        )
    return script.header_mode or flag or Mode.P


def load(path: str, flag: Mode | None = None) -> tuple[Script, Mode]:
    script = parse_file(path, flag or Mode.P)
    return script, resolve_mode(script, flag)


def _matches(expect, err: E.LLFPError | None, extra: list[str]) -> bool:
    if expect.outcome == "valid":
        return err is None and not extra
    if err is None and not extra:
        return False
    if expect.outcome == "invalid":
        return True
    chain = []
    e = err
    while e is not None:
        chain.append(e)
        e = e.cause
    codes = [c.code for c in chain] + (["LintFlagged"] if extra else [])
    if expect.code not in codes:
        return False
    if expect.arg is None:
        return True
    args = set(extra)
    for c in chain:
        if c.code == expect.code:
            if getattr(c, "pred", None):
                args.add(c.pred)
            verdict = getattr(c, "verdict", None)
            if verdict is not None and verdict.reason:
                args.add(verdict.reason.split(":")[0])
    return expect.arg in args


class Session:
    """Mutable state while executing one script."""

    def __init__(self, mode: Mode = Mode.P, oracles: OracleConfig | None = None,
                 trace: bool = False, step_limit: int = DEFAULT_STEP_LIMIT):
        self.mode = mode
        self.oracles = oracles if oracles is not None else OracleConfig()
        self.trace = trace
        self.step_limit = step_limit
        self.sig = Signature()
        self.ctx = Context()
        self._checker: Checker | None = None

    @property
    def checker(self) -> Checker:
        if self._checker is None:
            self._checker = Checker(self.sig, self.mode, self.oracles, self.step_limit)
        return self._checker

    def load_state(self, script: Script):
        """Apply signature and context blocks without running goals."""
        for _ in self.run(script, goals=False):
            pass

    def run(self, script: Script, goals: bool = True):
        for d in script.directives:
            match d:
                case System(mode):
                    if mode is not self.mode:
                        self.mode = mode
                        self._checker = None
                case Include(_, sub):
                    yield from self.run(sub, goals)
                case SigBlock(decls):
                    self.sig = self.sig.extend(decls)
                    self._checker = None
                case CtxBlock(entries):
                    self.ctx = Context(entries)
                case Goal() if goals:
                    yield self.run_goal(d, script.file)

    def run_goal(self, g: Goal, file: str | None = None) -> GoalResult:
        start = time.perf_counter()
        res = GoalResult(
            file=file,
            line=g.span.line if g.span is not None else None,
            goal=g.text(),
            expected=str(g.expect),
            verdict="valid",
        )
        err = None
        flagged: list[str] = []
        ch = self.checker
        try:
            match g.form:
                case "sig":
                    d = ch.check_judgement(SigJ())
                case "ctx":
                    d = ch.check_judgement(CtxJ(self.ctx))
                case "kind":
                    d = ch.check_judgement(KindJ(self.ctx, g.subject))
                case "family":
                    d = ch.check_judgement(FamilyJ(self.ctx, g.subject))
                case "check":
                    d = ch.check_judgement(CheckJ(self.ctx, g.subject, g.classifier))
                case "synth" | "synthfam":
                    j = SynthJ(self.ctx, g.subject) if g.form == "synth" else SynthFamJ(self.ctx, g.subject)
                    d = ch.check_judgement(j)
                    res.result = pretty(d.classifier)
                    if g.classifier is not None and not alpha_eq(d.classifier, g.classifier):
                        raise E.TypeMismatch(f"synthesized {d.classifier}, expected {g.classifier}", span=g.span)
                case "lint":
                    d = None
                    lint = LINTS.get(g.lint)
                    if lint is None:
                        raise E.LLFPError(f"unknown lint {g.lint!r}", span=g.span)
                    flagged = lint(self.ctx, g.subject)
                    if flagged:
                        res.result = "flagged " + ", ".join(flagged)
            if d is not None:
                res.rules = d.rules()
                res.queries = [dict(pred=q.pred, judgement=q.judgement, verdict=q.verdict) for q in d.all_queries()]
                if self.trace:
                    res.trace = d.render()
        except E.LLFPError as exc:
            err = exc
        if err is not None or flagged:
            res.verdict = "invalid"
            res.codes = err.codes() if err is not None else ["LintFlagged"]
            res.message = str(err) if err is not None else res.result
        res.ok = _matches(g.expect, err, flagged)
        res.elapsed = time.perf_counter() - start
        return res


def run_file(path: str, flag: Mode | None = None, oracles: OracleConfig | None = None,
             trace: bool = False) -> list[GoalResult]:
    script, mode = load(path, flag)
    s = Session(mode, oracles, trace)
    return list(s.run(script))
