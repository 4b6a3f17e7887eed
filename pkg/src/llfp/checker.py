"""Bidirectional checking for every judgement form, in both system modes.

Canonical objects are checked against a family, atomic objects and atomic
families synthesize their classifier.  The system is syntax directed; the one
choice point is a lock goal whose body mentions an unlock of the same lock,
where the nested-unlock rule is tried first (see :meth:`Checker.abstract_unlock`
for the search order) before falling back to the plain lock rule.

Each accepted judgement yields a :class:`Derivation` naming the rule used at
every node; predicate queries are recorded at unlock nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from . import errors as E
from .hsubst import DEFAULT_STEP_LIMIT, Monitor, subst_canonical, subst_family, subst_kind
from .predicates.base import OracleConfig, PredicateQuery, evaluate
from .syntax import (
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
    Mode,
    OApp,
    OConst,
    OVar,
    Signature,
    Unlock,
    alpha_eq,
    alpha_key,
    check_mode,
    erase,
    free_vars,
    fresh,
    is_atomic,
    names,
    rename,
)

# -- judgements ------------------------------------------------------------


@dataclass(frozen=True)
class SigJ:
    pass


@dataclass(frozen=True)
class CtxJ:
    ctx: Context


@dataclass(frozen=True)
class KindJ:
    ctx: Context
    kind: object


@dataclass(frozen=True)
class FamilyJ:
    ctx: Context
    family: object


@dataclass(frozen=True)
class SynthFamJ:
    ctx: Context
    family: object


@dataclass(frozen=True)
class CheckJ:
    ctx: Context
    term: object
    family: object


@dataclass(frozen=True)
class SynthJ:
    ctx: Context
    term: object


Judgement = Union[SigJ, CtxJ, KindJ, FamilyJ, SynthFamJ, CheckJ, SynthJ]


# -- derivations -----------------------------------------------------------


@dataclass(frozen=True)
class QueryRecord:
    pred: str
    judgement: str
    verdict: str


@dataclass
class Derivation:
    rule: str
    form: str
    ctx: Context | None = None
    subject: object = None
    classifier: object = None
    premises: list = field(default_factory=list)
    queries: list = field(default_factory=list)

    def conclusion(self) -> str:
        from .surface.printer import pretty_context

        g = (pretty_context(self.ctx) + " ") if self.ctx else ""
        match self.form:
            case "sig":
                return "sig"
            case "ctx":
                return f"|- {g}".rstrip()
            case "kind":
                return f"{g}|- {self.subject}"
            case "family":
                return f"{g}|- {self.subject} Type"
            case "synthfam" | "synth":
                return f"{g}|- {self.subject} => {self.classifier}"
            case "check":
                return f"{g}|- {self.subject} <= {self.classifier}"
        return self.form

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        lines = [f"{pad}({self.rule}) {self.conclusion()}"]
        for q in self.queries:
            lines.append(f"{pad}  [{q.pred}] {q.judgement} : {q.verdict}")
        for p in self.premises:
            lines.append(p.render(indent + 1))
        return "\n".join(lines)

    def rules(self) -> list[str]:
        out = [self.rule]
        for p in self.premises:
            out.extend(p.rules())
        return out

    def all_queries(self) -> list[QueryRecord]:
        out = list(self.queries)
        for p in self.premises:
            out.extend(p.all_queries())
        return out


@dataclass(frozen=True)
class Abstraction:
    """Result of inverting the nested-unlock substitution premises."""

    var: str
    unlock: Unlock
    atom: object
    unlocked: object  # the family tau with atom => lock[...] tau
    body: object  # M, with the unlock replaced by var
    family: object  # rho, likewise
    atom_derivation: Derivation


# -- checker ---------------------------------------------------------------


class Checker:
    """Checks judgements against a fixed signature in one system mode."""

    def __init__(
        self,
        sig: Signature,
        mode: Mode = Mode.P,
        oracles: OracleConfig | None = None,
        step_limit: int = DEFAULT_STEP_LIMIT,
    ):
        self.sig = sig
        self.mode = mode
        self.oracles = oracles if oracles is not None else OracleConfig()
        self.step_limit = step_limit
        self.monitor = Monitor(limit=step_limit)
        self._sig_ok = False
        self._sig_names = sig.names()

    # -- plumbing -----------------------------------------------------------

    def _tick(self):
        self.monitor.tick()

    def _extend(self, ctx: Context, x: str, fam, *bodies):
        """Extend ``ctx`` with ``x : fam``, renaming ``x`` in ``bodies`` if it clashes."""
        ctx2, z, out = self._open(ctx, fam, [(x, b) for b in bodies])
        return ctx2, z, out

    def _open(self, ctx: Context, fam, scoped):
        """Bind one variable of family ``fam`` for several bodies, each given
        with its own binder name.  Returns the extended context, the chosen
        name and the bodies renamed to it."""
        first = scoped[0][0]

        def usable(w):
            if w == "_" or w in ctx or w in self._sig_names:
                return False
            return all(w == b or w not in free_vars(t) for b, t in scoped)

        if usable(first):
            z = first
        else:
            avoid = set(ctx.names()) | self._sig_names
            for b, t in scoped:
                avoid |= names(t) | {b}
            z = fresh(first, avoid)
        return ctx.extend(z, fam), z, tuple(rename(t, b, z) for b, t in scoped)

    def _sub_family(self, f, m, x, dom):
        return subst_family(f, m, x, erase(dom), self.mode, self.monitor)

    # -- signatures and contexts --------------------------------------------

    def check_signature(self) -> Derivation:
        d = Derivation("S·Empty", "sig")
        seen: set[str] = set()
        for i, decl in enumerate(self.sig.decls):
            self._tick()
            if decl.name in seen:
                raise E.DuplicateName(f"{decl.name} is declared twice", span=decl.span)
            sub = Checker(self.sig.prefix(i), self.mode, self.oracles, self.step_limit)
            sub.monitor = self.monitor
            if isinstance(decl, FamDecl):
                try:
                    check_mode(decl.kind, self.mode)
                    prem = sub.check_kind(Context(), decl.kind)
                except E.CheckError as exc:
                    raise E.IllFormedKind(f"declaration {decl.name} : {decl.kind}", span=decl.span, cause=exc)
                d = Derivation("S·Kind", "sig", subject=decl.name, premises=[d, prem])
            else:
                try:
                    check_mode(decl.family, self.mode)
                    prem = sub.check_family(Context(), decl.family)
                except E.CheckError as exc:
                    raise E.IllFormedFamily(f"declaration {decl.name} : {decl.family}", span=decl.span, cause=exc)
                d = Derivation("S·Type", "sig", subject=decl.name, premises=[d, prem])
            seen.add(decl.name)
        self._sig_ok = True
        return d

    def ensure_signature(self):
        if not self._sig_ok:
            self.check_signature()

    def check_context(self, ctx: Context) -> Derivation:
        d = Derivation("C·Empty", "ctx", ctx=Context())
        prefix = Context()
        for x, fam in ctx:
            self._tick()
            if x in prefix:
                raise E.DuplicateVar(f"variable {x} is bound twice", span=getattr(fam, "span", None))
            try:
                check_mode(fam, self.mode)
                prem = self.check_family(prefix, fam)
            except E.CheckError as exc:
                raise E.IllFormedFamily(f"binding {x} : {fam}", span=getattr(fam, "span", None), cause=exc)
            prefix = prefix.extend(x, fam)
            d = Derivation("C·Type", "ctx", ctx=prefix, premises=[d, prem])
        return d

    # -- kinds and families -------------------------------------------------

    def check_kind(self, ctx: Context, k) -> Derivation:
        self._tick()
        match k:
            case KType():
                return Derivation("K·Type", "kind", ctx, k)
            case KPi(x, dom, body):
                dd = self.check_family(ctx, dom)
                ctx2, _, (body2,) = self._extend(ctx, x, dom, body)
                db = self.check_kind(ctx2, body2)
                return Derivation("K·Pi", "kind", ctx, k, premises=[dd, db])
        raise E.IllFormedKind(f"{k} is not a kind", span=getattr(k, "span", None))

    def synth_atomic_family(self, ctx: Context, f) -> Derivation:
        self._tick()
        match f:
            case FConst(a):
                kind = self.sig.family(a)
                if kind is None:
                    raise E.UnknownFamily(f"unknown family constant {a}", span=f.span)
                return Derivation("A·Const", "synthfam", ctx, f, kind)
            case FApp(head, arg):
                dh = self.synth_atomic_family(ctx, head)
                k = dh.classifier
                if not isinstance(k, KPi):
                    raise E.NotPiKind(f"{head} has kind {k}, which is not a Pi", span=f.span)
                try:
                    da = self.check_canonical(ctx, arg, k.dom)
                except E.CheckError as exc:
                    raise E.ArgCheckFailed(f"argument {arg} does not check against {k.dom}", span=f.span, cause=exc)
                res = subst_kind(k.body, arg, k.binder, erase(k.dom), self.mode, self.monitor)
                return Derivation("A·App", "synthfam", ctx, f, res, premises=[dh, da])
        raise E.IllFormedFamily(f"{f} is not an atomic family", span=getattr(f, "span", None))

    def check_family(self, ctx: Context, f) -> Derivation:
        self._tick()
        match f:
            case FConst() | FApp():
                ds = self.synth_atomic_family(ctx, f)
                if not isinstance(ds.classifier, KType):
                    raise E.NotAType(f"{f} has kind {ds.classifier}, not Type", span=f.span)
                return Derivation("F·Atom", "family", ctx, f, premises=[ds])
            case FPi(x, dom, body):
                dd = self.check_family(ctx, dom)
                ctx2, _, (body2,) = self._extend(ctx, x, dom, body)
                db = self.check_family(ctx2, body2)
                return Derivation("F·Pi", "family", ctx, f, premises=[dd, db])
            case FLock():
                return self._check_lock_family(ctx, f)
        raise E.IllFormedFamily(f"{f} is not a family", span=getattr(f, "span", None))

    def _check_lock_family(self, ctx: Context, f: FLock) -> Derivation:
        if isinstance(f.guard, str) != (self.mode is Mode.PQ):
            raise E.ModeMismatch(f"lock guard of {f} does not fit system {self.mode.value}", span=f.span)
        dt = self.check_family(ctx, f.guard_type)
        if self.mode is Mode.PQ:
            ctx_g, z, (body,) = self._extend(ctx, f.guard, f.guard_type, f.body)
            f = FLock(f.pred, z, f.guard_type, body, f.span)
        ab = self.abstract_unlock(ctx, None, f.body, f)
        if ab is not None:
            inner = FLock(f.pred, f.guard, f.guard_type, ab.family, f.span)
            ctx2 = ctx.extend(ab.var, ab.unlocked)
            dp = self.check_family(ctx2, inner)
            return Derivation("F·Nested·Unlock", "family", ctx, f, premises=[dp, ab.atom_derivation])
        if self.mode is Mode.PQ:
            db = self.check_family(ctx_g, f.body)
            return Derivation("F·Lock", "family", ctx, f, premises=[dt, db])
        db = self.check_family(ctx, f.body)
        dg = self.check_canonical(ctx, f.guard, f.guard_type)
        return Derivation("F·Lock", "family", ctx, f, premises=[dt, db, dg])

    # -- objects ------------------------------------------------------------

    def synth_atomic_object(self, ctx: Context, a) -> Derivation:
        self._tick()
        match a:
            case OConst(c):
                fam = self.sig.constant(c)
                if fam is None:
                    raise E.UnknownConst(f"unknown constant {c}", span=a.span)
                return Derivation("O·Const", "synth", ctx, a, fam)
            case OVar(x):
                fam = ctx.lookup(x)
                if fam is None:
                    raise E.UnknownVar(f"unbound variable {x}", span=a.span)
                return Derivation("O·Var", "synth", ctx, a, fam)
            case OApp(head, arg):
                dh = self.synth_atomic_object(ctx, head)
                pi = dh.classifier
                if not isinstance(pi, FPi):
                    raise E.NotPiType(f"{head} has type {pi}, which is not a Pi", span=a.span)
                da = self.check_canonical(ctx, arg, pi.dom)
                res = self._sub_family(pi.body, arg, pi.binder, pi.dom)
                return Derivation("O·App", "synth", ctx, a, res, premises=[dh, da])
            case Unlock():
                return self._synth_unlock(ctx, a)
        raise E.TypeMismatch(f"{a} is not an atomic object", span=getattr(a, "span", None))

    def _synth_unlock(self, ctx: Context, a: Unlock) -> Derivation:
        dh = self.synth_atomic_object(ctx, a.body)
        lock = dh.classifier
        if not isinstance(lock, FLock) or lock.pred != a.pred:
            raise E.NotLockType(f"{a.body} has type {lock}, not a {a.pred}-lock", span=a.span)
        if isinstance(lock.guard, str) != (self.mode is Mode.PQ):
            raise E.ModeMismatch(f"lock {lock} does not fit system {self.mode.value}", span=a.span)
        if not alpha_eq(lock.guard_type, a.witness_type):
            raise E.GuardMismatch(
                f"unlock annotation {a.witness_type} differs from lock guard type {lock.guard_type}", span=a.span
            )
        if self.mode is Mode.P and not alpha_eq(lock.guard, a.witness):
            raise E.GuardMismatch(f"unlock witness {a.witness} differs from lock guard {lock.guard}", span=a.span)
        dw = self.check_canonical(ctx, a.witness, a.witness_type)
        query = PredicateQuery(a.pred, self.sig, ctx, a.witness, a.witness_type, self.mode)
        verdict = evaluate(query, self.oracles)
        record = QueryRecord(a.pred, query.judgement(), str(verdict))
        if verdict.status == "fails":
            raise E.PredicateFailed(
                f"{a.pred} fails on {query.judgement()}: {verdict.reason}", pred=a.pred, verdict=verdict, span=a.span
            )
        if verdict.status != "holds":
            raise E.PredicateUnknown(
                f"{a.pred} undecided on {query.judgement()}: {verdict.reason}", pred=a.pred, verdict=verdict, span=a.span
            )
        if self.mode is Mode.PQ:
            res = self._sub_family(lock.body, a.witness, lock.guard, a.witness_type)
        else:
            res = lock.body
        return Derivation("O·Unlock", "synth", ctx, a, res, premises=[dh, dw], queries=[record])

    def check_canonical(self, ctx: Context, m, f) -> Derivation:
        self._tick()
        match f:
            case FPi(y, dom, cod):
                if not isinstance(m, Abs):
                    err = E.NotEtaLong if is_atomic(m) else E.TypeMismatch
                    raise err(f"{m} cannot check against non-atomic {f}", span=getattr(m, "span", None))
                if not alpha_eq(m.dom, dom):
                    raise E.TypeMismatch(f"abstraction domain {m.dom} differs from {dom}", span=m.span)
                ctx2, _, (body, cod) = self._open(ctx, dom, [(m.binder, m.body), (y, cod)])
                db = self.check_canonical(ctx2, body, cod)
                return Derivation("O·Abs", "check", ctx, m, f, premises=[db])
            case FLock():
                if not isinstance(m, LockO):
                    err = E.NotEtaLong if is_atomic(m) else E.TypeMismatch
                    raise err(f"{m} cannot check against non-atomic {f}", span=getattr(m, "span", None))
                return self._check_lock_object(ctx, m, f)
            case FConst() | FApp():
                if not is_atomic(m):
                    raise E.TypeMismatch(f"{m} is not atomic but its classifier {f} is", span=getattr(m, "span", None))
                ds = self.synth_atomic_object(ctx, m)
                if not alpha_eq(ds.classifier, f):
                    raise E.TypeMismatch(f"{m} has type {ds.classifier}, expected {f}", span=getattr(m, "span", None))
                return Derivation("O·Atom", "check", ctx, m, f, premises=[ds])
        raise E.IllFormedFamily(f"{f} is not a family", span=getattr(f, "span", None))

    def _check_lock_object(self, ctx: Context, m: LockO, f: FLock) -> Derivation:
        if m.pred != f.pred:
            raise E.TypeMismatch(f"{m.pred}-lock checked against {f.pred}-lock", span=m.span)
        if isinstance(m.guard, str) != (self.mode is Mode.PQ) or isinstance(f.guard, str) != (self.mode is Mode.PQ):
            raise E.ModeMismatch(f"lock guard of {m} does not fit system {self.mode.value}", span=m.span)
        if not alpha_eq(m.guard_type, f.guard_type):
            raise E.GuardMismatch(f"lock guard type {m.guard_type} differs from {f.guard_type}", span=m.span)
        if self.mode is Mode.PQ:
            ctx_g, z, (body, rho) = self._open(ctx, m.guard_type, [(m.guard, m.body), (f.guard, f.body)])
            m = LockO(m.pred, z, m.guard_type, body, m.span)
            f = FLock(f.pred, z, f.guard_type, rho, f.span)
        elif not alpha_eq(m.guard, f.guard):
            raise E.GuardMismatch(f"lock guard {m.guard} differs from {f.guard}", span=m.span)
        ab = self.abstract_unlock(ctx, m.body, f.body, f)
        if ab is not None:
            inner_m = LockO(m.pred, m.guard, m.guard_type, ab.body, m.span)
            inner_f = FLock(f.pred, f.guard, f.guard_type, ab.family, f.span)
            dp = self.check_canonical(ctx.extend(ab.var, ab.unlocked), inner_m, inner_f)
            return Derivation("O·Nested·Unlock", "check", ctx, m, f, premises=[dp, ab.atom_derivation])
        if self.mode is Mode.PQ:
            db = self.check_canonical(ctx_g, m.body, f.body)
            return Derivation("O·Lock", "check", ctx, m, f, premises=[db])
        db = self.check_canonical(ctx, m.body, f.body)
        dg = self.check_canonical(ctx, m.guard, m.guard_type)
        return Derivation("O·Lock", "check", ctx, m, f, premises=[db, dg])

    # -- nested unlock ------------------------------------------------------

    def abstract_unlock(self, ctx: Context, body, rho, lock: FLock) -> Abstraction | None:
        """Find an unlock of ``lock`` inside ``rho`` then ``body`` that can be abstracted.

        Candidates are visited leftmost-outermost, the family before the term.
        A candidate ``unlock[P; S : s] A`` qualifies when its annotation matches
        ``lock``, none of its free variables is bound between the lock and the
        occurrence, ``A`` synthesizes the matching lock type in ``ctx`` and
        replacing every alpha-equal occurrence by a fresh variable is undone
        exactly by hereditary substitution.  In PQ mode ``S`` must be the lock's
        own bound variable, which may not occur in the unlocked type.

        ``body`` is ``None`` when checking a family.
        """
        seen = set()
        for cand in _unlock_candidates(rho, body):
            key = alpha_key(cand)
            if key in seen:
                continue
            seen.add(key)
            ab = self._try_abstract(ctx, body, rho, lock, cand)
            if ab is not None:
                return ab
        return None

    def _try_abstract(self, ctx, body, rho, lock: FLock, cand: Unlock) -> Abstraction | None:
        if cand.pred != lock.pred or not alpha_eq(cand.witness_type, lock.guard_type):
            return None
        if self.mode is Mode.PQ:
            if cand.witness != OVar(lock.guard) or lock.guard in free_vars(cand.body):
                return None
        elif not alpha_eq(cand.witness, lock.guard):
            return None
        if not free_vars(cand.body) <= set(ctx.names()):
            return None
        trial = Checker(self.sig, self.mode, self.oracles, self.step_limit)
        trial.monitor = self.monitor
        try:
            da = trial.synth_atomic_object(ctx, cand.body)
        except E.CheckError:
            return None
        lt = da.classifier
        if not isinstance(lt, FLock) or lt.pred != lock.pred or not alpha_eq(lt.guard_type, lock.guard_type):
            return None
        if self.mode is Mode.PQ:
            if not isinstance(lt.guard, str) or lt.guard in free_vars(lt.body):
                return None
        elif not alpha_eq(lt.guard, lock.guard):
            return None
        tau = lt.body
        avoid = set(ctx.names()) | self._sig_names | names(rho) | names(cand)
        if body is not None:
            avoid |= names(body)
        if self.mode is Mode.PQ:
            avoid.add(lock.guard)
        y = fresh("u", avoid)
        key = alpha_key(cand)
        rho2 = _replace(rho, key, y, frozenset())
        body2 = _replace(body, key, y, frozenset()) if body is not None else None
        try:
            back_rho = subst_family(rho2, cand, y, erase(tau), self.mode, self.monitor)
            ok = alpha_eq(back_rho, rho)
            if ok and body is not None:
                ok = alpha_eq(subst_canonical(body2, cand, y, erase(tau), self.mode, self.monitor), body)
        except E.SubstUndefined:
            return None
        if not ok:
            return None
        return Abstraction(y, cand, cand.body, tau, body2, rho2, da)

    # -- dispatcher ---------------------------------------------------------

    def check_judgement(self, j: Judgement) -> Derivation:
        """Check any judgement form.  The signature, the context and (for
        checking goals) the classifier are validated first."""
        self.monitor = Monitor(limit=self.step_limit)
        if isinstance(j, SigJ):
            return self.check_signature()
        self.ensure_signature()
        self.check_context(j.ctx)
        match j:
            case CtxJ(ctx):
                return self.check_context(ctx)
            case KindJ(ctx, k):
                check_mode(k, self.mode)
                return self.check_kind(ctx, k)
            case FamilyJ(ctx, f):
                check_mode(f, self.mode)
                return self.check_family(ctx, f)
            case SynthFamJ(ctx, f):
                check_mode(f, self.mode)
                return self.synth_atomic_family(ctx, f)
            case CheckJ(ctx, m, f):
                check_mode(f, self.mode)
                check_mode(m, self.mode)
                self.check_family(ctx, f)
                return self.check_canonical(ctx, m, f)
            case SynthJ(ctx, a):
                check_mode(a, self.mode)
                return self.synth_atomic_object(ctx, a)
        raise TypeError(f"not a judgement: {j!r}")


def _unlock_candidates(rho, body):
    """Unlock subterms of ``rho`` then ``body`` in preorder, left to right."""
    out = []

    def go(t):
        match t:
            case Unlock(_, w, wt, b):
                out.append(t)
                go(w)
                go(wt)
                go(b)
            case OApp(h, a) | FApp(h, a):
                go(h)
                go(a)
            case Abs(_, d, b) | FPi(_, d, b) | KPi(_, d, b):
                go(d)
                go(b)
            case FLock(_, g, gt, b) | LockO(_, g, gt, b):
                if not isinstance(g, str):
                    go(g)
                go(gt)
                go(b)

    go(rho)
    if body is not None:
        go(body)
    return out


def _replace(t, key, y: str, bound: frozenset):
    """Replace subterms whose alpha-key is ``key`` by ``y`` unless one of
    their free variables is bound on the way down."""
    if isinstance(t, Unlock) and alpha_key(t) == key and not (free_vars(t) & bound):
        return OVar(y)
    match t:
        case OVar() | OConst() | FConst() | KType():
            return t
        case OApp(h, a):
            return OApp(_replace(h, key, y, bound), _replace(a, key, y, bound), t.span)
        case FApp(h, a):
            return FApp(_replace(h, key, y, bound), _replace(a, key, y, bound), t.span)
        case Unlock(p, w, wt, b):
            return Unlock(p, _replace(w, key, y, bound), _replace(wt, key, y, bound), _replace(b, key, y, bound), t.span)
        case Abs(x, d, b) | FPi(x, d, b) | KPi(x, d, b):
            return type(t)(x, _replace(d, key, y, bound), _replace(b, key, y, bound | {x}), t.span)
        case FLock(p, g, gt, b) | LockO(p, g, gt, b):
            if isinstance(g, str):
                return type(t)(p, g, _replace(gt, key, y, bound), _replace(b, key, y, bound | {g}), t.span)
            return type(t)(p, _replace(g, key, y, bound), _replace(gt, key, y, bound), _replace(b, key, y, bound), t.span)
    raise TypeError(f"not a term: {t!r}")


# -- module-level conveniences ---------------------------------------------


def check_signature(sig: Signature, mode: Mode = Mode.P, oracles=None) -> Derivation:
    return Checker(sig, mode, oracles).check_signature()


def check_context(sig: Signature, ctx: Context, mode: Mode = Mode.P, oracles=None) -> Derivation:
    return Checker(sig, mode, oracles).check_context(ctx)


def check_kind(sig: Signature, ctx: Context, k, mode: Mode = Mode.P, oracles=None) -> Derivation:
    return Checker(sig, mode, oracles).check_kind(ctx, k)


def synth_atomic_family(sig: Signature, ctx: Context, f, mode: Mode = Mode.P, oracles=None):
    return Checker(sig, mode, oracles).synth_atomic_family(ctx, f).classifier


def check_family(sig: Signature, ctx: Context, f, mode: Mode = Mode.P, oracles=None) -> Derivation:
    return Checker(sig, mode, oracles).check_family(ctx, f)


def synth_atomic_object(sig: Signature, ctx: Context, a, mode: Mode = Mode.P, oracles=None):
    return Checker(sig, mode, oracles).synth_atomic_object(ctx, a).classifier


def check_canonical(sig: Signature, ctx: Context, m, f, mode: Mode = Mode.P, oracles=None) -> Derivation:
    return Checker(sig, mode, oracles).check_canonical(ctx, m, f)


def check_judgement(sig: Signature, j: Judgement, mode: Mode = Mode.P, oracles=None) -> Derivation:
    return Checker(sig, mode, oracles).check_judgement(j)


def abstract_unlock(sig: Signature, ctx: Context, body, rho, lock: FLock, mode: Mode = Mode.P, oracles=None):
    return Checker(sig, mode, oracles).abstract_unlock(ctx, body, rho, lock)
