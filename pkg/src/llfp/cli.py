"""Command-line front end.

Exit codes: 0 when every goal matches its expectation, 1 on any mismatch or
failed request, 2 on usage, parse or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import errors as E
from .checker import SynthJ
from .hsubst import Reduces, Stays, subst
from .predicates.base import OracleConfig, synthesize_witness
from .session import ModeConflict, Session, load
from .surface.parser import parse_term
from .surface.printer import pretty, pretty_context
from .syntax import FLock, Mode, Unlock, erase, is_atomic

USAGE_ERROR = 2


class UsageError(Exception):
    pass


def _mode(value: str | None) -> Mode | None:
    return Mode(value) if value else None


def _oracles(path: str | None) -> OracleConfig:
    return OracleConfig.from_env(path)


def _load_session(args, default: Mode | None = None) -> Session:
    script, mode = load(args.file, _mode(args.system))
    if script.header_mode is None and args.system is None and default is not None:
        script, mode = load(args.file, default)
    s = Session(mode, _oracles(args.oracles))
    s.load_state(script)
    return s


# -- commands --------------------------------------------------------------


def cmd_check(args, out) -> int:
    oracles = _oracles(args.oracles)
    results = []
    try:
        for path in args.files:
            script, mode = load(path, _mode(args.system))
            session = Session(mode, oracles, trace=args.trace)
            for r in session.run(script):
                results.append(r)
                _report(r, args, out)
    finally:
        oracles.close()
    bad = sum(1 for r in results if not r.ok)
    trips = sum(1 for r in results if r.watchdog)
    if args.format == "text":
        out.write(f"{len(results)} goal(s), {bad} mismatch(es), {trips} watchdog trip(s)\n")
    return 0 if bad == 0 else 1


def _report(r, args, out):
    if args.format == "records":
        out.write(json.dumps(r.record(), ensure_ascii=False) + "\n")
        return
    status = "ok  " if r.ok else "FAIL"
    where = f"{r.file}:{r.line}" if r.line is not None else str(r.file)
    line = f"{status} {where} {r.goal} => {r.verdict}"
    if r.codes:
        line += f" [{' <- '.join(r.codes)}]"
    line += f" (expected {r.expected}, {r.elapsed * 1000:.1f} ms)"
    out.write(line + "\n")
    if r.result and r.verdict == "valid":
        out.write(f"     : {r.result}\n")
    if not r.ok and r.message:
        out.write("     " + r.message.replace("\n", "\n     ") + "\n")
    for q in r.queries:
        out.write(f"     query {q['pred']}: {q['judgement']} -> {q['verdict']}\n")
    if r.trace:
        out.write("     " + r.trace.replace("\n", "\n     ") + "\n")


def cmd_synth(args, out) -> int:
    s = _load_session(args)
    term = parse_term(args.term, "object", s.mode, set(s.ctx.names()))
    if not is_atomic(term):
        raise UsageError(f"{args.term} is not an atomic object")
    try:
        d = s.checker.check_judgement(SynthJ(s.ctx, term))
    except E.CheckError as exc:
        out.write(f"error: {exc}\n")
        return 1
    finally:
        s.oracles.close()
    out.write(pretty(d.classifier) + "\n")
    if args.trace:
        out.write(d.render() + "\n")
    return 0


def cmd_subst(args, out) -> int:
    s = _load_session(args)
    scope = set(s.ctx.names())
    m0 = parse_term(args.m0, "object", s.mode, scope)
    rho0 = erase(parse_term(args.rho0, "family", s.mode, scope))
    if args.sort == "context":
        from .surface.parser import parse_context

        target = parse_context(args.target, s.mode)
    else:
        target = parse_term(args.target, args.sort, s.mode, scope | {args.x0})
    try:
        result = subst(target, m0, args.x0, rho0, s.mode)
    except E.CheckError as exc:
        out.write(f"error: {exc}\n")
        return 1
    match result:
        case Stays(a):
            out.write(f"stays {pretty(a)}\n")
        case Reduces(m, rho):
            out.write(f"reduces {pretty(m)} : {pretty(rho)}\n")
        case _ if args.sort == "context":
            out.write(pretty_context(result) + "\n")
        case _:
            out.write(pretty(result) + "\n")
    return 0


def cmd_solve(args, out) -> int:
    s = _load_session(args, default=Mode.PQ)
    if s.mode is not Mode.PQ:
        raise UsageError("solve needs the witness-synthesizing system (--system=pq)")
    goal = parse_term(args.goal, "object", s.mode, set(s.ctx.names()))
    try:
        d = s.checker.check_judgement(SynthJ(s.ctx, goal))
        lock = d.classifier
        if not isinstance(lock, FLock):
            out.write(f"error: {pretty(goal)} has type {pretty(lock)}, not a lock\n")
            return 1
        try:
            witness = synthesize_witness(lock.pred, s.sig, s.ctx, lock.guard_type, s.oracles, s.mode)
        except E.UnsupportedSynthesis as exc:
            out.write(f"unsupported: {exc.message}\n")
            return 1
        if witness is None:
            out.write("no witness\n")
            return 1
        unlocked = Unlock(lock.pred, witness, lock.guard_type, goal)
        du = s.checker.check_judgement(SynthJ(s.ctx, unlocked))
    except E.CheckError as exc:
        out.write(f"error: {exc}\n")
        return 1
    finally:
        s.oracles.close()
    out.write(f"witness {pretty(witness)}\n")
    g = pretty_context(s.ctx)
    out.write(f"{g + ' ' if g else ''}|- {pretty(unlocked)} => {pretty(du.classifier)}\n")
    return 0


# -- argument parsing ------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="llfp", description="Check judgements of the canonical framework with locks.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--system", choices=["p", "pq"], help="rule set (default: script header, else p)")
        sp.add_argument("--oracles", metavar="FILE", help="oracle config (JSON); falls back to $LLFP_ORACLES")

    c = sub.add_parser("check", help="check the goals of one or more scripts")
    common(c)
    c.add_argument("--trace", action="store_true", help="print derivations")
    c.add_argument("--format", choices=["text", "records"], default="text")
    c.add_argument("files", nargs="+")
    c.set_defaults(fn=cmd_check)

    s = sub.add_parser("synth", help="synthesize the family of an atomic object")
    common(s)
    s.add_argument("--trace", action="store_true")
    s.add_argument("file", help="script providing signature and context")
    s.add_argument("term")
    s.set_defaults(fn=cmd_synth)

    h = sub.add_parser("subst", help="hereditary substitution TARGET[M0/X0] at the erasure of RHO0")
    common(h)
    h.add_argument("--sort", choices=["object", "family", "kind", "context"], default="object")
    h.add_argument("file")
    h.add_argument("target")
    h.add_argument("m0")
    h.add_argument("x0")
    h.add_argument("rho0", help="a family; its erasure indexes the substitution")
    h.set_defaults(fn=cmd_subst)

    v = sub.add_parser("solve", help="ask an oracle for a witness unlocking an atomic object")
    common(v)
    v.add_argument("file")
    v.add_argument("goal")
    v.set_defaults(fn=cmd_solve)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code else 0
    try:
        return args.fn(args, out)
    except (E.ParseError, E.OracleConfigError, ModeConflict, UsageError, OSError) as exc:
        sys.stderr.write(f"llfp: {exc}\n")
        return USAGE_ERROR


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
