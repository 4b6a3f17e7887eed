"""Hereditary substitution ``T[M0/x0]`` indexed by the simple type of ``M0``.

Substituting into an atomic object either leaves it atomic (:class:`Stays`)
or, when the head variable is the one being replaced, produces a canonical
object together with its simple type (:class:`Reduces`).  Head redexes created
this way are contracted on the fly: an abstraction meeting an argument, and a
lock object meeting an unlock.  In PQ mode contracting a lock also substitutes
the unlock's witness for the lock's bound guard variable.

Partial rules have no conclusion on ill-indexed inputs; that surfaces as
:class:`SubstUndefined`.  Every call is bounded by a :class:`Monitor` which
counts steps, checks that nested head substitutions use a strictly smaller
index, and (optionally) records each head result for the size lemma.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import HygieneViolation, MeasureViolation, SubstUndefined, WatchdogTripped
from .syntax import (
    Abs,
    Context,
    FApp,
    FConst,
    FLock,
    FPi,
    KPi,
    KType,
    LockO,
    Mode,
    OApp,
    OConst,
    OVar,
    SArrow,
    SLock,
    Unlock,
    alpha_eq,
    erase,
    free_vars,
    fresh,
    names,
    rename,
    simple_size,
)

DEFAULT_STEP_LIMIT = 1_000_000


@dataclass(frozen=True)
class Stays:
    term: object


@dataclass(frozen=True)
class Reduces:
    term: object
    stype: object


@dataclass
class Monitor:
    """Step budget and invariant bookkeeping for a batch of substitutions."""

    limit: int = DEFAULT_STEP_LIMIT
    steps: int = 0
    record_heads: bool = False
    heads: list = field(default_factory=list)
    nested: list = field(default_factory=list)

    def tick(self):
        self.steps += 1
        if self.steps > self.limit:
            raise WatchdogTripped(f"hereditary substitution exceeded {self.limit} steps")

    def descend(self, inner, outer):
        if simple_size(inner) >= simple_size(outer):
            raise MeasureViolation(f"nested index {inner} is not smaller than {outer}")
        if self.record_heads:
            self.nested.append((inner, outer))

    def head(self, rho, rho0):
        if self.record_heads:
            self.heads.append((rho, rho0))


class _Subst:
    def __init__(self, m0, x0: str, rho0, mode: Mode, monitor: Monitor | None):
        self.m0 = m0
        self.x0 = x0
        self.rho0 = rho0
        self.mode = mode
        self.mon = monitor if monitor is not None else Monitor()
        self.fv0 = free_vars(m0)

    def nested(self, m0, x0, rho0):
        self.mon.descend(rho0, self.rho0)
        return _Subst(m0, x0, rho0, self.mode, self.mon)

    # binder that scopes over ``body``; returns the (possibly renamed) binder and body
    def _binder(self, x, body, go):
        if x == self.x0:
            return x, body
        if x in self.fv0:
            x2 = fresh(x, self.fv0 | names(body) | {self.x0})
            body = rename(body, x, x2)
            x = x2
        return x, go(body)

    def kind(self, k):
        self.mon.tick()
        match k:
            case KType():
                return k
            case KPi(x, d, b):
                d2 = self.family(d)
                x2, b2 = self._binder(x, b, self.kind)
                return KPi(x2, d2, b2, k.span)
        raise TypeError(f"not a kind: {k!r}")

    def atomic_family(self, f):
        self.mon.tick()
        match f:
            case FConst():
                return f
            case FApp(h, a):
                return FApp(self.atomic_family(h), self.canonical(a), f.span)
        raise TypeError(f"not an atomic family: {f!r}")

    def family(self, f):
        self.mon.tick()
        match f:
            case FConst() | FApp():
                return self.atomic_family(f)
            case FPi(x, d, b):
                d2 = self.family(d)
                x2, b2 = self._binder(x, b, self.family)
                return FPi(x2, d2, b2, f.span)
            case FLock(p, g, gt, b):
                gt2 = self.family(gt)
                if isinstance(g, str):
                    g2, b2 = self._binder(g, b, self.family)
                    return FLock(p, g2, gt2, b2, f.span)
                return FLock(p, self.canonical(g), gt2, self.family(b), f.span)
        raise TypeError(f"not a family: {f!r}")

    def atomic(self, a):
        self.mon.tick()
        match a:
            case OConst():
                return Stays(a)
            case OVar(n):
                if n == self.x0:
                    self.mon.head(self.rho0, self.rho0)
                    return Reduces(self.m0, self.rho0)
                return Stays(a)
            case OApp(h, arg):
                r = self.atomic(h)
                arg2 = self.canonical(arg)
                if isinstance(r, Stays):
                    return Stays(OApp(r.term, arg2, a.span))
                m1, s1 = r.term, r.stype
                if not isinstance(s1, SArrow) or not isinstance(m1, Abs):
                    raise SubstUndefined(f"head of application became {m1} at {s1}, not an abstraction")
                out = self.nested(arg2, m1.binder, s1.dom).canonical(m1.body)
                self.mon.head(s1.cod, self.rho0)
                return Reduces(out, s1.cod)
            case Unlock(p, w, wt, b):
                wt2 = self.family(wt)
                w2 = self.canonical(w)
                r = self.atomic(b)
                if isinstance(r, Stays):
                    return Stays(Unlock(p, w2, wt2, r.term, a.span))
                m1, s1 = r.term, r.stype
                if not (isinstance(s1, SLock) and isinstance(m1, LockO) and s1.pred == p and m1.pred == p):
                    raise SubstUndefined(f"unlocked head became {m1} at {s1}, not a {p}-lock")
                if not alpha_eq(m1.guard_type, wt2):
                    raise SubstUndefined(f"lock guard type {m1.guard_type} does not match unlock annotation {wt2}")
                if isinstance(m1.guard, str):
                    out = self.nested(w2, m1.guard, erase(wt2)).canonical(m1.body)
                else:
                    if not alpha_eq(m1.guard, w2):
                        raise SubstUndefined(f"lock guard {m1.guard} does not match unlock annotation {w2}")
                    out = m1.body
                self.mon.head(s1.body, self.rho0)
                return Reduces(out, s1.body)
        raise TypeError(f"not an atomic object: {a!r}")

    def canonical(self, m):
        self.mon.tick()
        match m:
            case OConst() | OVar() | OApp() | Unlock():
                r = self.atomic(m)
                return r.term
            case Abs(x, d, b):
                d2 = self.family(d)
                x2, b2 = self._binder(x, b, self.canonical)
                return Abs(x2, d2, b2, m.span)
            case LockO(p, g, gt, b):
                gt2 = self.family(gt)
                if isinstance(g, str):
                    g2, b2 = self._binder(g, b, self.canonical)
                    return LockO(p, g2, gt2, b2, m.span)
                return LockO(p, self.canonical(g), gt2, self.canonical(b), m.span)
        raise TypeError(f"not a canonical object: {m!r}")


def subst_kind(k, m0, x0: str, rho0, mode: Mode = Mode.P, monitor: Monitor | None = None):
    return _Subst(m0, x0, rho0, mode, monitor).kind(k)


def subst_atomic_family(f, m0, x0: str, rho0, mode: Mode = Mode.P, monitor: Monitor | None = None):
    return _Subst(m0, x0, rho0, mode, monitor).atomic_family(f)


def subst_family(f, m0, x0: str, rho0, mode: Mode = Mode.P, monitor: Monitor | None = None):
    return _Subst(m0, x0, rho0, mode, monitor).family(f)


def subst_atomic_object(a, m0, x0: str, rho0, mode: Mode = Mode.P, monitor: Monitor | None = None):
    """Returns :class:`Stays` or :class:`Reduces`."""
    return _Subst(m0, x0, rho0, mode, monitor).atomic(a)


def subst_canonical(m, m0, x0: str, rho0, mode: Mode = Mode.P, monitor: Monitor | None = None):
    return _Subst(m0, x0, rho0, mode, monitor).canonical(m)


def subst_context(ctx: Context, m0, x0: str, rho0, mode: Mode = Mode.P, monitor: Monitor | None = None) -> Context:
    """Substitute into every binding of ``ctx`` (the part after ``x0``)."""
    fv0 = free_vars(m0)
    s = _Subst(m0, x0, rho0, mode, monitor)
    out = []
    for x, f in ctx:
        if x == x0:
            raise HygieneViolation(f"context already binds {x0}")
        if x in fv0:
            raise HygieneViolation(f"{x} is free in the substituted term {m0}")
        out.append((x, s.family(f)))
    return Context(out)


def subst(t, m0, x0: str, rho0, mode: Mode = Mode.P, monitor: Monitor | None = None):
    """Dispatch on the sort of ``t``; atomic objects yield Stays/Reduces."""
    s = _Subst(m0, x0, rho0, mode, monitor)
    match t:
        case KType() | KPi():
            return s.kind(t)
        case FConst() | FApp() | FPi() | FLock():
            return s.family(t)
        case OConst() | OVar() | OApp() | Unlock():
            return s.atomic(t)
        case Abs() | LockO():
            return s.canonical(t)
        case Context():
            return subst_context(t, m0, x0, rho0, mode, monitor)
    raise TypeError(f"cannot substitute into {t!r}")
