"""Fuel-bounded normalizers behind the semi-decidable predicates.

Two small calculi are reduced here.  Natural deduction proofs (implication
and set abstraction) are read off FPST proof terms and reduced by detour
elimination.  Untyped lambda terms are decoded from the object language of
the normalizing call-by-value signature and reduced in normal order.  Both
stop with :class:`OutOfFuel` once their step budget is spent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..syntax import Abs, OConst, OVar, Unlock, alpha_key, spine


class OutOfFuel(Exception):
    pass


class _Fuel:
    def __init__(self, fuel: int):
        self.left = fuel

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise OutOfFuel()


_counter = itertools.count()


def _fresh(base: str) -> str:
    return f"{base.rstrip('0123456789')}#{next(_counter)}"


# -- natural deduction -----------------------------------------------------


@dataclass(frozen=True)
class Hyp:
    name: str


@dataclass(frozen=True)
class ImpI:
    hyp: str
    body: object


@dataclass(frozen=True)
class ImpE:
    minor: object
    major: object


@dataclass(frozen=True)
class LamI:
    body: object


@dataclass(frozen=True)
class LamE:
    body: object


@dataclass(frozen=True)
class Opaque:
    key: object


def nd_from_term(t, pred: str = "Fitch"):
    """Read a natural deduction off an FPST proof term; unknown parts are opaque."""
    if isinstance(t, Unlock) and t.pred == pred:
        head, args = spine(t.body)
        if isinstance(head, OConst) and head.name == "imp_elim" and len(args) == 4:
            return ImpE(nd_from_term(args[2], pred), nd_from_term(args[3], pred))
        return Opaque(alpha_key(t))
    head, args = spine(t)
    if isinstance(head, OConst):
        match head.name, args:
            case "delta", [_, OVar(v)]:
                return Hyp(v)
            case "imp_intro", [_, _, Abs(v, _, body)]:
                return ImpI(v, nd_from_term(body, pred))
            case "lam_intro", [_, _, p]:
                return LamI(nd_from_term(p, pred))
            case "lam_elim", [_, _, p]:
                return LamE(nd_from_term(p, pred))
    return Opaque(alpha_key(t))


def _nd_free(d) -> set:
    match d:
        case Hyp(v):
            return {v}
        case ImpI(v, b):
            return _nd_free(b) - {v}
        case ImpE(a, b):
            return _nd_free(a) | _nd_free(b)
        case LamI(b) | LamE(b):
            return _nd_free(b)
    return set()


def _nd_subst(d, v: str, arg, fv: set):
    match d:
        case Hyp(w):
            return arg if w == v else d
        case ImpI(w, b):
            if w == v:
                return d
            if w in fv:
                w2 = _fresh(w)
                b = _nd_subst(b, w, Hyp(w2), {w2})
                w = w2
            return ImpI(w, _nd_subst(b, v, arg, fv))
        case ImpE(a, b):
            return ImpE(_nd_subst(a, v, arg, fv), _nd_subst(b, v, arg, fv))
        case LamI(b):
            return LamI(_nd_subst(b, v, arg, fv))
        case LamE(b):
            return LamE(_nd_subst(b, v, arg, fv))
    return d


def _nd_step(d):
    """One leftmost-outermost detour reduction, or None if ``d`` is normal."""
    match d:
        case ImpE(minor, ImpI(v, body)):
            return _nd_subst(body, v, minor, _nd_free(minor))
        case LamE(LamI(p)):
            return p
        case ImpE(a, b):
            a2 = _nd_step(a)
            if a2 is not None:
                return ImpE(a2, b)
            b2 = _nd_step(b)
            return None if b2 is None else ImpE(a, b2)
        case ImpI(v, b):
            b2 = _nd_step(b)
            return None if b2 is None else ImpI(v, b2)
        case LamI(b) | LamE(b):
            b2 = _nd_step(b)
            return None if b2 is None else type(d)(b2)
    return None


def nd_normalize(d, fuel: int):
    """Returns ``(normal form, steps used)``; raises OutOfFuel."""
    budget = _Fuel(fuel)
    steps = 0
    while True:
        nxt = _nd_step(d)
        if nxt is None:
            return d, steps
        budget.spend()
        steps += 1
        d = nxt


# -- untyped lambda terms --------------------------------------------------


@dataclass(frozen=True)
class LVar:
    name: str


@dataclass(frozen=True)
class LLam:
    binder: str
    body: object


@dataclass(frozen=True)
class LApp:
    fun: object
    arg: object


@dataclass(frozen=True)
class LInert:
    key: object


def lam_from_term(t, bound: frozenset = frozenset()):
    """Decode an object-language term built from ``app``, ``lam`` and ``var``."""
    head, args = spine(t)
    if isinstance(head, OConst):
        match head.name, args:
            case "app", [a, b]:
                return LApp(lam_from_term(a, bound), lam_from_term(b, bound))
            case "lam", [Abs(y, _, body)]:
                return LLam(y, lam_from_term(body, bound | {y}))
            case "var", [OVar(y)] if y in bound:
                return LVar(y)
    return LInert(alpha_key(t))


def _lam_free(t) -> set:
    match t:
        case LVar(n):
            return {n}
        case LLam(x, b):
            return _lam_free(b) - {x}
        case LApp(f, a):
            return _lam_free(f) | _lam_free(a)
    return set()


def _lam_subst(t, x: str, arg, fv: set):
    match t:
        case LVar(n):
            return arg if n == x else t
        case LLam(y, b):
            if y == x:
                return t
            if y in fv:
                y2 = _fresh(y)
                b = _lam_subst(b, y, LVar(y2), {y2})
                y = y2
            return LLam(y, _lam_subst(b, x, arg, fv))
        case LApp(f, a):
            return LApp(_lam_subst(f, x, arg, fv), _lam_subst(a, x, arg, fv))
    return t


def _lam_step(t):
    match t:
        case LApp(LLam(x, b), a):
            return _lam_subst(b, x, a, _lam_free(a))
        case LApp(f, a):
            f2 = _lam_step(f)
            if f2 is not None:
                return LApp(f2, a)
            a2 = _lam_step(a)
            return None if a2 is None else LApp(f, a2)
        case LLam(x, b):
            b2 = _lam_step(b)
            return None if b2 is None else LLam(x, b2)
    return None


def lam_normalize(t, fuel: int):
    """Normal-order reduction; returns ``(normal form, steps)`` or raises OutOfFuel."""
    budget = _Fuel(fuel)
    steps = 0
    while True:
        nxt = _lam_step(t)
        if nxt is None:
            return t, steps
        budget.spend()
        steps += 1
        t = nxt
