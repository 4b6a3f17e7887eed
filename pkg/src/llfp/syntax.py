"""Abstract syntax of the canonical framework and its witness-synthesizing variant.

Terms are immutable dataclasses with named binders.  Structural ``==`` is
syntactic identity; use :func:`alpha_eq` for equality up to renaming of bound
variables, which compares nameless keys produced by :func:`alpha_key`.

Atomic families (``FConst``/``FApp``) are themselves families, and atomic
objects (``OConst``/``OVar``/``OApp``/``Unlock``) are themselves canonical
objects, so no wrapper constructors are needed.

Lock guards come in two flavours fixed by the :class:`Mode`: in ``Mode.P`` the
guard is a canonical object, in ``Mode.PQ`` it is a variable name (``str``)
bound in the lock body.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Union

from .errors import ModeMismatch


class Mode(enum.Enum):
    P = "p"
    PQ = "pq"


def _span():
    return field(default=None, compare=False, repr=False, hash=False)


class Term:
    """Common base; ``str()`` pretty-prints in the surface syntax."""

    __slots__ = ()

    def __str__(self) -> str:
        from .surface.printer import pretty

        return pretty(self)


# -- kinds -----------------------------------------------------------------


@dataclass(frozen=True)
class KType(Term):
    span: object = _span()


@dataclass(frozen=True)
class KPi(Term):
    binder: str
    dom: "Family"
    body: "Kind"
    span: object = _span()


# -- families --------------------------------------------------------------


@dataclass(frozen=True)
class FConst(Term):
    name: str
    span: object = _span()


@dataclass(frozen=True)
class FApp(Term):
    head: "AtomicFamily"
    arg: "Canonical"
    span: object = _span()


@dataclass(frozen=True)
class FPi(Term):
    binder: str
    dom: "Family"
    body: "Family"
    span: object = _span()


@dataclass(frozen=True)
class FLock(Term):
    pred: str
    guard: "Guard"
    guard_type: "Family"
    body: "Family"
    span: object = _span()


# -- objects ---------------------------------------------------------------


@dataclass(frozen=True)
class OConst(Term):
    name: str
    span: object = _span()


@dataclass(frozen=True)
class OVar(Term):
    name: str
    span: object = _span()


@dataclass(frozen=True)
class OApp(Term):
    head: "Atomic"
    arg: "Canonical"
    span: object = _span()


@dataclass(frozen=True)
class Unlock(Term):
    pred: str
    witness: "Canonical"
    witness_type: "Family"
    body: "Atomic"
    span: object = _span()


@dataclass(frozen=True)
class Abs(Term):
    binder: str
    dom: "Family"
    body: "Canonical"
    span: object = _span()


@dataclass(frozen=True)
class LockO(Term):
    pred: str
    guard: "Guard"
    guard_type: "Family"
    body: "Canonical"
    span: object = _span()


# -- simple types ----------------------------------------------------------


@dataclass(frozen=True)
class SBase(Term):
    name: str


@dataclass(frozen=True)
class SArrow(Term):
    dom: "SimpleType"
    cod: "SimpleType"


@dataclass(frozen=True)
class SLock(Term):
    pred: str
    guard: "Guard"
    guard_type: "Family"
    body: "SimpleType"


Kind = Union[KType, KPi]
AtomicFamily = Union[FConst, FApp]
Family = Union[FConst, FApp, FPi, FLock]
Atomic = Union[OConst, OVar, OApp, Unlock]
Canonical = Union[OConst, OVar, OApp, Unlock, Abs, LockO]
SimpleType = Union[SBase, SArrow, SLock]
Guard = Union[str, Canonical]

ATOMIC_OBJECTS = (OConst, OVar, OApp, Unlock)
ATOMIC_FAMILIES = (FConst, FApp)
LOCKS = (FLock, LockO, SLock)
BINDERS = (KPi, FPi, Abs)


def is_atomic(t) -> bool:
    return isinstance(t, ATOMIC_OBJECTS)


def is_atomic_family(t) -> bool:
    return isinstance(t, ATOMIC_FAMILIES)


def binds_guard(t) -> bool:
    """True for a lock whose guard is a bound variable (PQ mode)."""
    return isinstance(t, LOCKS) and isinstance(t.guard, str)


def arrow(dom: Family, body: Family, binder: str = "_") -> FPi:
    return FPi(binder, dom, body)


def app(head, *args):
    """Left-nested application of an atomic object or family to arguments."""
    ctor = FApp if isinstance(head, ATOMIC_FAMILIES) else OApp
    for a in args:
        head = ctor(head, a)
    return head


def spine(t):
    """Split an application chain into head and argument list."""
    args = []
    while isinstance(t, (OApp, FApp)):
        args.append(t.arg)
        t = t.head
    return t, args[::-1]


# -- signatures and contexts ----------------------------------------------


@dataclass(frozen=True)
class FamDecl:
    name: str
    kind: Kind
    span: object = _span()


@dataclass(frozen=True)
class ObjDecl:
    name: str
    family: Family
    span: object = _span()


Decl = Union[FamDecl, ObjDecl]


class Signature:
    """Ordered declarations with name lookup.  Later duplicates are kept in
    ``decls`` so that signature checking can report them."""

    def __init__(self, decls: Iterable[Decl] = ()):
        self.decls: tuple[Decl, ...] = tuple(decls)
        self._fams: dict[str, Kind] = {}
        self._objs: dict[str, Family] = {}
        for d in self.decls:
            if isinstance(d, FamDecl):
                self._fams.setdefault(d.name, d.kind)
            else:
                self._objs.setdefault(d.name, d.family)

    def family(self, name: str):
        return self._fams.get(name)

    def constant(self, name: str):
        return self._objs.get(name)

    def names(self) -> set[str]:
        return set(self._fams) | set(self._objs)

    def extend(self, decls: Iterable[Decl]) -> "Signature":
        return Signature(self.decls + tuple(decls))

    def prefix(self, n: int) -> "Signature":
        return Signature(self.decls[:n])

    def __iter__(self):
        return iter(self.decls)

    def __len__(self):
        return len(self.decls)

    def __eq__(self, other):
        return isinstance(other, Signature) and self.decls == other.decls

    def __hash__(self):
        return hash(self.decls)

    def __repr__(self):
        return f"Signature({len(self.decls)} decls)"


class Context:
    """Ordered variable bindings ``x : family``."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[tuple[str, Family]] = ()):
        self.entries: tuple[tuple[str, Family], ...] = tuple(entries)

    def lookup(self, name: str):
        for n, f in reversed(self.entries):
            if n == name:
                return f
        return None

    def names(self) -> list[str]:
        return [n for n, _ in self.entries]

    def extend(self, name: str, family: Family) -> "Context":
        return Context(self.entries + ((name, family),))

    def __contains__(self, name):
        return any(n == name for n, _ in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __add__(self, other: "Context") -> "Context":
        return Context(self.entries + tuple(other.entries))

    def __eq__(self, other):
        return isinstance(other, Context) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "Context(" + ", ".join(f"{n} : {f}" for n, f in self.entries) + ")"


# -- free variables --------------------------------------------------------


def free_vars(t) -> frozenset[str]:
    """Free object variables of any term sort (a PQ guard binds in the lock body)."""
    match t:
        case OVar(name):
            return frozenset((name,))
        case OConst() | FConst() | KType() | SBase() | str():
            return frozenset()
        case OApp(h, a) | FApp(h, a):
            return free_vars(h) | free_vars(a)
        case Unlock(_, w, wt, b):
            return free_vars(w) | free_vars(wt) | free_vars(b)
        case Abs(x, d, b) | FPi(x, d, b) | KPi(x, d, b):
            return free_vars(d) | (free_vars(b) - {x})
        case FLock(_, g, gt, b) | LockO(_, g, gt, b) | SLock(_, g, gt, b):
            if isinstance(g, str):
                return free_vars(gt) | (free_vars(b) - {g})
            return free_vars(g) | free_vars(gt) | free_vars(b)
        case SArrow(d, c):
            return free_vars(d) | free_vars(c)
    raise TypeError(f"not a term: {t!r}")


def bound_vars(t) -> frozenset[str]:
    match t:
        case OVar() | OConst() | FConst() | KType() | SBase() | str():
            return frozenset()
        case OApp(h, a) | FApp(h, a):
            return bound_vars(h) | bound_vars(a)
        case Unlock(_, w, wt, b):
            return bound_vars(w) | bound_vars(wt) | bound_vars(b)
        case Abs(x, d, b) | FPi(x, d, b) | KPi(x, d, b):
            return bound_vars(d) | bound_vars(b) | {x}
        case FLock(_, g, gt, b) | LockO(_, g, gt, b) | SLock(_, g, gt, b):
            extra = {g} if isinstance(g, str) else bound_vars(g)
            return bound_vars(gt) | bound_vars(b) | extra
        case SArrow(d, c):
            return bound_vars(d) | bound_vars(c)
    raise TypeError(f"not a term: {t!r}")


def names(t) -> set[str]:
    """Every identifier in ``t``: variables, binders and constants."""
    out: set[str] = set()

    def go(t):
        match t:
            case str():
                out.add(t)
            case OVar(n) | OConst(n) | FConst(n) | SBase(n):
                out.add(n)
            case KType():
                pass
            case OApp(h, a) | FApp(h, a) | SArrow(h, a):
                go(h)
                go(a)
            case Abs(x, d, b) | FPi(x, d, b) | KPi(x, d, b):
                out.add(x)
                go(d)
                go(b)
            case Unlock(_, w, wt, b) | FLock(_, w, wt, b) | LockO(_, w, wt, b) | SLock(_, w, wt, b):
                go(w)
                go(wt)
                go(b)

    go(t)
    return out


_TRAILING = re.compile(r"^(.*?)(\d*)$")


def fresh(base: str, avoid) -> str:
    """Deterministic fresh variant of ``base`` not in ``avoid``."""
    if base not in avoid and base != "_":
        return base
    stem = _TRAILING.match(base).group(1) or "v"
    if stem == "_":
        stem = "v"
    for i in itertools.count(1):
        cand = f"{stem}{i}"
        if cand not in avoid:
            return cand


# -- alpha equivalence -----------------------------------------------------


def alpha_key(t, env: tuple = ()):
    """Nameless structural key: bound variables become binder distances."""

    def var(n):
        for i in range(len(env) - 1, -1, -1):
            if env[i] == n:
                return ("B", len(env) - 1 - i)
        return ("F", n)

    match t:
        case OVar(n):
            return var(n)
        case OConst(n):
            return ("C", n)
        case FConst(n):
            return ("A", n)
        case SBase(n):
            return ("S", n)
        case KType():
            return ("Type",)
        case OApp(h, a):
            return ("app", alpha_key(h, env), alpha_key(a, env))
        case FApp(h, a):
            return ("fapp", alpha_key(h, env), alpha_key(a, env))
        case SArrow(d, c):
            return ("->", alpha_key(d, env), alpha_key(c, env))
        case Unlock(p, w, wt, b):
            return ("U", p, alpha_key(w, env), alpha_key(wt, env), alpha_key(b, env))
        case Abs(x, d, b) | FPi(x, d, b) | KPi(x, d, b):
            return (type(t).__name__, alpha_key(d, env), alpha_key(b, env + (x,)))
        case FLock(p, g, gt, b) | LockO(p, g, gt, b) | SLock(p, g, gt, b):
            tag = type(t).__name__
            if isinstance(g, str):
                return (tag, p, "bind", alpha_key(gt, env), alpha_key(b, env + (g,)))
            return (tag, p, alpha_key(g, env), alpha_key(gt, env), alpha_key(b, env))
    raise TypeError(f"not a term: {t!r}")


def alpha_eq(t1, t2) -> bool:
    if t1 is t2:
        return True
    return alpha_key(t1) == alpha_key(t2)


# -- renaming --------------------------------------------------------------


def rename(t, old: str, new: str):
    """Capture-avoiding replacement of the free variable ``old`` by ``new``."""
    if old == new:
        return t

    def under(x, body):
        # returns (binder, renamed body) for a binder scoping over body
        if x == old:
            return x, body
        if x == new and old in free_vars(body):
            x2 = fresh(x, names(body) | {old, new})
            body = rename(body, x, x2)
            x = x2
        return x, rename(body, old, new)

    match t:
        case OVar(n):
            return OVar(new, t.span) if n == old else t
        case OConst() | FConst() | KType() | SBase():
            return t
        case OApp(h, a):
            return OApp(rename(h, old, new), rename(a, old, new), t.span)
        case FApp(h, a):
            return FApp(rename(h, old, new), rename(a, old, new), t.span)
        case SArrow(d, c):
            return SArrow(rename(d, old, new), rename(c, old, new))
        case Unlock(p, w, wt, b):
            return Unlock(p, rename(w, old, new), rename(wt, old, new), rename(b, old, new), t.span)
        case Abs(x, d, b) | FPi(x, d, b) | KPi(x, d, b):
            x2, b2 = under(x, b)
            return type(t)(x2, rename(d, old, new), b2, t.span)
        case FLock(p, g, gt, b) | LockO(p, g, gt, b) | SLock(p, g, gt, b):
            gt2 = rename(gt, old, new)
            if isinstance(g, str):
                g2, b2 = under(g, b)
            else:
                g2, b2 = rename(g, old, new), rename(b, old, new)
            if isinstance(t, SLock):
                return SLock(p, g2, gt2, b2)
            return type(t)(p, g2, gt2, b2, t.span)
    raise TypeError(f"not a term: {t!r}")


def graft(t, mapping: dict):
    """Textual replacement of free variables by atomic objects (no re-normalization).

    Callers guarantee the replacements' free variables are not captured.
    """
    if not mapping:
        return t

    def drop(x):
        return {k: v for k, v in mapping.items() if k != x}

    match t:
        case OVar(n):
            return mapping.get(n, t)
        case OConst() | FConst() | KType() | SBase():
            return t
        case OApp(h, a):
            return OApp(graft(h, mapping), graft(a, mapping), t.span)
        case FApp(h, a):
            return FApp(graft(h, mapping), graft(a, mapping), t.span)
        case Unlock(p, w, wt, b):
            return Unlock(p, graft(w, mapping), graft(wt, mapping), graft(b, mapping), t.span)
        case Abs(x, d, b) | FPi(x, d, b) | KPi(x, d, b):
            return type(t)(x, graft(d, mapping), graft(b, drop(x)), t.span)
        case FLock(p, g, gt, b) | LockO(p, g, gt, b):
            if isinstance(g, str):
                return type(t)(p, g, graft(gt, mapping), graft(b, drop(g)), t.span)
            return type(t)(p, graft(g, mapping), graft(gt, mapping), graft(b, mapping), t.span)
    raise TypeError(f"cannot graft into {t!r}")


# -- erasure ---------------------------------------------------------------


def erase(f: Family) -> SimpleType:
    """Drop dependencies: applications lose their arguments, Pi becomes arrow,
    a lock keeps its predicate, guard and guard type and erases only its body."""
    match f:
        case FConst(a):
            return SBase(a)
        case FApp(h, _):
            return erase(h)
        case FPi(_, d, b):
            return SArrow(erase(d), erase(b))
        case FLock(p, g, gt, b):
            return SLock(p, g, gt, erase(b))
    raise TypeError(f"not a family: {f!r}")


def simple_size(rho: SimpleType) -> int:
    """Termination measure for hereditary substitution.

    Counts constructors, descending into a lock's guard type through its
    erasure, and ignores guard objects so that substitution never changes it.
    """
    match rho:
        case SBase():
            return 1
        case SArrow(d, c):
            return 1 + simple_size(d) + simple_size(c)
        case SLock(_, _, gt, b):
            return 1 + simple_size(erase(gt)) + simple_size(b)
    raise TypeError(f"not a simple type: {rho!r}")


def is_subexpression(rho: SimpleType, rho0: SimpleType) -> bool:
    if alpha_eq(rho, rho0):
        return True
    match rho0:
        case SArrow(d, c):
            return is_subexpression(rho, d) or is_subexpression(rho, c)
        case SLock(_, _, _, b):
            return is_subexpression(rho, b)
    return False


# -- misc ------------------------------------------------------------------


def term_size(t) -> int:
    match t:
        case str() | OVar() | OConst() | FConst() | KType() | SBase():
            return 1
        case OApp(h, a) | FApp(h, a) | SArrow(h, a):
            return 1 + term_size(h) + term_size(a)
        case Abs(_, d, b) | FPi(_, d, b) | KPi(_, d, b):
            return 1 + term_size(d) + term_size(b)
        case Unlock(_, w, wt, b) | FLock(_, w, wt, b) | LockO(_, w, wt, b) | SLock(_, w, wt, b):
            return 1 + term_size(w) + term_size(wt) + term_size(b)
    raise TypeError(f"not a term: {t!r}")


def check_mode(t, mode: Mode) -> None:
    """Raise ModeMismatch if a lock guard does not fit ``mode``."""
    match t:
        case str() | OVar() | OConst() | FConst() | KType() | SBase():
            return
        case OApp(h, a) | FApp(h, a) | SArrow(h, a):
            check_mode(h, mode)
            check_mode(a, mode)
        case Abs(_, d, b) | FPi(_, d, b) | KPi(_, d, b):
            check_mode(d, mode)
            check_mode(b, mode)
        case Unlock(_, w, wt, b):
            for s in (w, wt, b):
                check_mode(s, mode)
        case FLock(_, g, gt, b) | LockO(_, g, gt, b) | SLock(_, g, gt, b):
            if isinstance(g, str) != (mode is Mode.PQ):
                raise ModeMismatch(f"lock guard {g} does not fit system {mode.value}", span=getattr(t, "span", None))
            for s in (g, gt, b):
                check_mode(s, mode)
        case _:
            raise TypeError(f"not a term: {t!r}")


# -- skeletons -------------------------------------------------------------


@dataclass(frozen=True)
class Hole:
    name: str
    filler: Atomic
    family: "Family | None"


@dataclass(frozen=True)
class Skeleton:
    term: Canonical
    holes: tuple[Hole, ...]

    def fill(self):
        return graft(self.term, {h.name: h.filler for h in self.holes})

    def hole(self, name: str) -> Hole:
        return next(h for h in self.holes if h.name == name)


def skeleton(
    t: Canonical,
    sig,
    ctx: Context | None = None,
    env_sig: Signature | None = None,
    mode: Mode = Mode.P,
) -> Skeleton:
    """Split ``t`` into a term over ``sig``'s constants and its holes.

    ``sig`` may be a Signature or any collection of constant names.  Holes are
    the free variables of ``t`` and the maximal applications headed by a
    constant outside ``sig`` (just the constant when the application mentions
    a locally bound variable).  Alpha-equal fillers share a hole.  Hole
    families come from ``ctx`` for variables and, for foreign subterms, from
    synthesis in ``env_sig`` + ``ctx`` when it succeeds.
    """
    base = sig.names() if isinstance(sig, Signature) else set(sig)
    avoid = names(t) | (set(ctx.names()) if ctx else set())
    holes: list[Hole] = []
    by_key: dict = {}

    def hole_for(filler):
        key = alpha_key(filler)
        if key in by_key:
            return by_key[key]
        name = fresh(f"h{len(holes) + 1}", avoid)
        avoid.add(name)
        holes.append(Hole(name, filler, _hole_family(filler, ctx, env_sig, mode)))
        by_key[key] = OVar(name)
        return by_key[key]

    def walk(t, bound: frozenset):
        match t:
            case OVar(n):
                return t if n in bound else hole_for(t)
            case OConst(c):
                return t if c in base else hole_for(t)
            case OApp() | FApp():
                head, args = spine(t)
                if isinstance(head, OConst) and head.name not in base and not (free_vars(t) & bound):
                    return hole_for(t)
                h = walk(head, bound)
                return app(h, *(walk(a, bound) for a in args))
            case FConst() | KType():
                return t
            case Unlock(p, w, wt, b):
                return Unlock(p, walk(w, bound), walk(wt, bound), walk(b, bound), t.span)
            case Abs(x, d, b) | FPi(x, d, b) | KPi(x, d, b):
                return type(t)(x, walk(d, bound), walk(b, bound | {x}), t.span)
            case FLock(p, g, gt, b) | LockO(p, g, gt, b):
                if isinstance(g, str):
                    return type(t)(p, g, walk(gt, bound), walk(b, bound | {g}), t.span)
                return type(t)(p, walk(g, bound), walk(gt, bound), walk(b, bound), t.span)
        raise TypeError(f"not a term: {t!r}")

    return Skeleton(walk(t, frozenset()), tuple(holes))


def _hole_family(filler, ctx, env_sig, mode):
    if isinstance(filler, OVar):
        return ctx.lookup(filler.name) if ctx is not None else None
    if env_sig is None:
        return None
    from .checker import Checker  # checker imports this module
    from .errors import CheckError

    try:
        return Checker(env_sig, mode).synth_atomic_object(ctx or Context(), filler).classifier
    except CheckError:
        return None
