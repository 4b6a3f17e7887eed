"""Pretty-printer producing ASCII surface syntax with minimal parentheses.

A Pi whose binder does not occur in its body prints as an arrow.  A binder
whose name clashes with a constant used in its body is renamed, so that the
output re-parses to an alpha-equal term.
"""

from __future__ import annotations

from ..syntax import (
    Abs,
    Context,
    FamDecl,
    FApp,
    FConst,
    FLock,
    FPi,
    KPi,
    KType,
    LockO,
    OApp,
    OConst,
    OVar,
    SArrow,
    SBase,
    Signature,
    SLock,
    Unlock,
    free_vars,
    fresh,
    names,
    rename,
)
from .script import CtxBlock, Goal, Include, Script, SigBlock, System

# precedence levels: where a term is printed
TOP, LEFT, UBODY, HEAD, ATOM = range(5)


def _consts(t) -> set[str]:
    out: set[str] = set()

    def go(t):
        match t:
            case OConst(n) | FConst(n):
                out.add(n)
            case OVar() | KType() | str() | SBase():
                pass
            case OApp(h, a) | FApp(h, a) | SArrow(h, a):
                go(h)
                go(a)
            case Abs(_, d, b) | FPi(_, d, b) | KPi(_, d, b):
                go(d)
                go(b)
            case Unlock(_, g, gt, b) | FLock(_, g, gt, b) | LockO(_, g, gt, b) | SLock(_, g, gt, b):
                go(g)
                go(gt)
                go(b)

    go(t)
    return out


def _binder(x: str, body):
    """Rename ``x`` if printing it would capture a constant of the same name."""
    if x in _consts(body):
        x2 = fresh(x, names(body))
        return x2, rename(body, x, x2)
    return x, body


def _paren(s: str, need: bool) -> str:
    return f"({s})" if need else s


def pretty(t, level: int = TOP) -> str:
    match t:
        case KType():
            return "Type"
        case OVar(n) | OConst(n) | FConst(n) | SBase(n):
            return n
        case str():
            return t
        case OApp(h, a) | FApp(h, a):
            return _paren(f"{pretty(h, HEAD)} {pretty(a, ATOM)}", level >= ATOM)
        case FPi(x, d, b) | KPi(x, d, b):
            if x not in free_vars(b):
                return _paren(f"{pretty(d, LEFT)} -> {pretty(b, TOP)}", level >= LEFT)
            x, b = _binder(x, b)
            return _paren(f"Pi {x} : {pretty(d, LEFT)} . {pretty(b, TOP)}", level >= LEFT)
        case SArrow(d, c):
            return _paren(f"{pretty(d, LEFT)} -> {pretty(c, TOP)}", level >= LEFT)
        case Abs(x, d, b):
            x, b = _binder(x, b)
            return _paren(f"\\{x} : {pretty(d, LEFT)} . {pretty(b, TOP)}", level >= LEFT)
        case FLock(p, g, gt, b) | LockO(p, g, gt, b) | SLock(p, g, gt, b):
            if isinstance(g, str):
                g, b = _binder(g, b)
            head = f"lock[{p}; {pretty(g, TOP)} : {pretty(gt, TOP)}]"
            return _paren(f"{head} {pretty(b, TOP)}", level >= LEFT)
        case Unlock(p, w, wt, b):
            return _paren(f"unlock[{p}; {pretty(w, TOP)} : {pretty(wt, TOP)}] {pretty(b, UBODY)}", level >= HEAD)
    raise TypeError(f"cannot print {t!r}")


def pretty_context(ctx: Context) -> str:
    return ", ".join(f"{x} : {pretty(f)}" for x, f in ctx)


def pretty_decl(d) -> str:
    cls = d.kind if isinstance(d, FamDecl) else d.family
    return f"{d.name} : {pretty(cls)}"


def pretty_signature(sig: Signature) -> str:
    return "\n".join(pretty_decl(d) for d in sig)


def print_script(script: Script) -> str:
    """Canonical text of a script; comments are not preserved."""
    lines = []
    for d in script.directives:
        match d:
            case System(mode):
                lines.append(f"%system {mode.value}")
            case Include(path):
                lines.append(f'%include "{path}"')
            case SigBlock(decls):
                lines.append("signature {")
                lines.extend(f"  {pretty_decl(x)}" for x in decls)
                lines.append("}")
            case CtxBlock(entries):
                lines.append("context {")
                lines.extend(f"  {x} : {pretty(f)}" for x, f in entries)
                lines.append("}")
            case Goal():
                lines.append(f"{d.text()} expect {d.expect}")
    return "\n".join(lines) + "\n"
