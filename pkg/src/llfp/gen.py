"""Seeded, type-directed generators of well-typed canonical judgements.

Everything is driven by a :class:`random.Random`, so a seed reproduces an
instance exactly.  Terms are built against their classifier, which makes them
eta-long by construction; atomic terms are grown from a head by applying it to
generated arguments and unlocking any lock on the way.  When a random head
does not reach the wanted atomic family the generator falls back to a fixed
inhabitant (``c`` for ``a``, ``d M`` for ``b M``), so generation always ends.

The only predicate used is ``True``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .hsubst import subst_family
from .surface.parser import parse_family, parse_signature
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
    ObjDecl,
    OConst,
    OVar,
    Signature,
    Unlock,
    alpha_eq,
    erase,
    fresh,
    rename,
    spine,
)

_COMMON = """
a : Type
b : a -> Type
c : a
d : Pi x : a . b x
f : (a -> a) -> a
k : ((a -> a) -> a) -> a -> a
"""

SIGNATURE_TEXT = {
    Mode.P: _COMMON + "g : (a -> a) -> lock[True; c : a] a\n",
    Mode.PQ: _COMMON + "g : (a -> a) -> lock[True; z : a] b z\n",
}

# closed families used for context entries and substitution indices
_POOL = {
    Mode.P: [
        "a", "b c", "a -> a", "(a -> a) -> a", "lock[True; c : a] a",
        "Pi y : a . b y", "a -> lock[True; c : a] a", "((a -> a) -> a) -> a",
        "lock[True; c : a] (a -> a)",
    ],
    Mode.PQ: [
        "a", "b c", "a -> a", "(a -> a) -> a", "lock[True; z : a] b z",
        "Pi y : a . b y", "a -> lock[True; z : a] a", "((a -> a) -> a) -> a",
        "lock[True; z : a] (a -> b z)",
    ],
}

_NAMES = "uvwpqrst"


def signature(mode: Mode) -> Signature:
    return parse_signature(SIGNATURE_TEXT[mode], mode)


def pool(mode: Mode) -> list:
    return [parse_family(s, mode) for s in _POOL[mode]]


def _target_head(f):
    while True:
        match f:
            case FPi(_, _, b) | FLock(_, _, _, b):
                f = b
            case _:
                head, _ = spine(f)
                return head.name


class Generator:
    def __init__(self, rng: random.Random, mode: Mode = Mode.P, favour: tuple = ()):
        self.rng = rng
        self.mode = mode
        self.sig = signature(mode)
        self.favour = set(favour)
        self.consts = [(OConst(d.name), d.family) for d in self.sig if isinstance(d, ObjDecl)]
        self.pool = pool(mode)

    # -- names --------------------------------------------------------------

    def fresh_name(self, ctx: Context, avoid=()) -> str:
        used = set(ctx.names()) | self.sig.names() | set(avoid)
        return fresh(self.rng.choice(_NAMES), used)

    def _open(self, ctx: Context, x: str, body, avoid=()):
        y = fresh(x, set(ctx.names()) | self.sig.names() | set(avoid))
        return y, (rename(body, x, y) if y != x else body)

    # -- families -----------------------------------------------------------

    def family(self, ctx: Context, depth: int = 2):
        r = self.rng.random()
        if depth <= 0 or r < 0.3:
            return FConst("a")
        if r < 0.55:
            return FApp(FConst("b"), self.check(ctx, FConst("a"), depth))
        if r < 0.85:
            dom = self.family(ctx, depth - 1)
            y = self.fresh_name(ctx)
            return FPi(y, dom, self.family(ctx.extend(y, dom), depth - 1))
        if self.mode is Mode.P:
            return FLock("True", self.check(ctx, FConst("a"), depth - 1), FConst("a"), self.family(ctx, depth - 1))
        z = self.fresh_name(ctx)
        return FLock("True", z, FConst("a"), self.family(ctx.extend(z, FConst("a")), depth - 1))

    def kind(self, ctx: Context, depth: int = 2):
        if depth <= 0 or self.rng.random() < 0.3:
            return KType()
        dom = self.family(ctx, depth - 1)
        y = self.fresh_name(ctx)
        return KPi(y, dom, self.kind(ctx.extend(y, dom), depth - 1))

    # -- objects ------------------------------------------------------------

    def check(self, ctx: Context, fam, depth: int = 3):
        """A canonical object of ``fam`` in ``ctx``."""
        match fam:
            case FPi(x, dom, body):
                y, body = self._open(ctx, x, body)
                return Abs(y, dom, self.check(ctx.extend(y, dom), body, depth))
            case FLock(p, str() as z, gt, body):
                y, body = self._open(ctx, z, body)
                return LockO(p, y, gt, self.check(ctx.extend(y, gt), body, depth))
            case FLock(p, g, gt, body):
                return LockO(p, g, gt, self.check(ctx, body, depth))
        if depth > 0:
            want = spine(fam)[0].name
            heads = [(OVar(x), f) for x, f in ctx if _target_head(f) == want]
            heads += [h for h in self.consts if _target_head(h[1]) == want]
            favoured = [h for h in heads if h[0].name in self.favour]
            for _ in range(3):
                pick = favoured if favoured and self.rng.random() < 0.6 else heads
                head, hf = self.rng.choice(pick)
                term, got = self.eliminate(ctx, head, hf, depth - 1)
                if alpha_eq(got, fam):
                    return term
        return self._fallback(ctx, fam)

    def _fallback(self, ctx: Context, fam):
        head, args = spine(fam)
        if head.name == "a":
            return OConst("c")
        (m,) = args
        return OApp(OConst("d"), m)

    def eliminate(self, ctx: Context, term, fam, depth: int):
        """Apply ``term`` to generated arguments and unlock it until atomic."""
        while True:
            match fam:
                case FPi(x, dom, body):
                    arg = self.check(ctx, dom, depth)
                    term = OApp(term, arg)
                    fam = subst_family(body, arg, x, erase(dom), self.mode)
                case FLock(p, str() as z, gt, body):
                    w = self.check(ctx, gt, depth)
                    term = Unlock(p, w, gt, term)
                    fam = subst_family(body, w, z, erase(gt), self.mode)
                case FLock(p, g, gt, body):
                    term = Unlock(p, g, gt, term)
                    fam = body
                case _:
                    return term, fam

    def atomic(self, ctx: Context, depth: int = 3):
        """A random atomic object together with its synthesized family."""
        heads = [(OVar(x), f) for x, f in ctx] + list(self.consts)
        favoured = [h for h in heads if h[0].name in self.favour]
        pick = favoured if favoured and self.rng.random() < 0.7 else heads
        head, hf = self.rng.choice(pick)
        return self.eliminate(ctx, head, hf, depth)

    def context(self, ctx: Context, n: int, open_families: bool = False, avoid=()) -> Context:
        """Extend ``ctx`` with ``n`` fresh entries."""
        out = []
        cur = ctx
        for _ in range(n):
            fam = self.family(cur, 1) if open_families and self.rng.random() < 0.5 else self.rng.choice(self.pool)
            x = self.fresh_name(cur, avoid)
            out.append((x, fam))
            cur = cur.extend(x, fam)
        return Context(out)


@dataclass
class SubstInstance:
    """``gamma, x0 : rho0, gamma2 |- m <= sigma`` and ``gamma |- m0 <= rho0``."""

    mode: Mode
    sig: Signature
    gamma: Context
    x0: str
    rho0: object
    m0: object
    gamma2: Context
    sigma: object
    m: object
    kind: object

    @property
    def full(self) -> Context:
        return self.gamma.extend(self.x0, self.rho0) + self.gamma2


def subst_instance(seed: int, mode: Mode = Mode.P, depth: int = 4) -> SubstInstance:
    rng = random.Random(seed)
    g = Generator(rng, mode)
    gamma = g.context(Context(), rng.randint(0, 2))
    rho0 = rng.choice(pool(mode))
    m0 = g.check(gamma, rho0, depth)
    x0 = fresh("x", set(gamma.names()) | g.sig.names())
    g.favour = {x0}
    inner = gamma.extend(x0, rho0)
    gamma2 = g.context(inner, rng.randint(0, 2), open_families=True)
    full = inner + gamma2
    sigma = g.family(full, 2)
    m = g.check(full, sigma, depth)
    kind = g.kind(full, 2)
    return SubstInstance(mode, g.sig, gamma, x0, rho0, m0, gamma2, sigma, m, kind)


@dataclass
class CompositionInstance:
    """``t1`` lives in ``gamma, x0 : rho0, x : rho2``; ``m2`` in ``gamma, x0 : rho0``."""

    mode: Mode
    sig: Signature
    gamma: Context
    x0: str
    rho0: object
    m0: object
    x: str
    rho2: object
    m2: object
    t1: object


def composition_instance(seed: int, mode: Mode = Mode.P, depth: int = 4) -> CompositionInstance:
    rng = random.Random(seed)
    g = Generator(rng, mode)
    gamma = g.context(Context(), rng.randint(0, 2))
    used = set(gamma.names()) | g.sig.names()
    x0 = fresh("x", used)
    x = fresh("y", used | {x0})
    rho0 = rng.choice(pool(mode))
    rho2 = rng.choice(pool(mode))
    m0 = g.check(gamma, rho0, depth)
    g.favour = {x0}
    m2 = g.check(gamma.extend(x0, rho0), rho2, depth)
    g.favour = {x0, x}
    full = gamma.extend(x0, rho0).extend(x, rho2)
    r = rng.random()
    if r < 0.5:
        t1, _ = g.atomic(full, depth)
    elif r < 0.8:
        t1 = g.check(full, g.family(full, 2), depth)
    elif r < 0.95:
        t1 = g.family(full, 2)
    else:
        t1 = g.kind(full, 2)
    return CompositionInstance(mode, g.sig, gamma, x0, rho0, m0, x, rho2, m2, t1)


def term_population(seed: int, mode: Mode = Mode.P, depth: int = 4):
    """A handful of well-formed terms of every sort, for syntax-level properties."""
    inst = subst_instance(seed, mode, depth)
    out = [inst.m, inst.m0, inst.sigma, inst.rho0, inst.kind]
    out += [f for _, f in inst.gamma2]
    return out


__all__ = [
    "Generator",
    "SubstInstance",
    "CompositionInstance",
    "signature",
    "pool",
    "subst_instance",
    "composition_instance",
    "term_population",
]
