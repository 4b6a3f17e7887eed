"""Property checks for the well-behavedness contract of a predicate.

A predicate is well behaved when a verdict of ``holds`` survives

* ``1a``: extending the signature,
* ``1b``: weakening the context by a fresh variable, or permuting
  independent neighbouring entries,
* ``2``: hereditarily substituting a well-typed term for a context variable.

:func:`well_behaved_suite` replays these transformations on samples and
reports every case where the verdict does not hold afterwards.  Each
transformed judgement is also type-checked, so a broken sampler shows up as
``ill_typed`` instead of passing silently.

Samplers below build queries over the corpus signatures.  The Light sampler
only produces contexts in adequacy format (propositions of type ``o`` and
hypotheses of type ``T(B)``); with function-typed hypotheses substitution can
duplicate the bound variable and Light is not closed under it.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .. import errors as E
from ..hsubst import subst_canonical, subst_context, subst_family
from ..syntax import (
    Abs,
    Context,
    FamDecl,
    FApp,
    FConst,
    FPi,
    KType,
    Mode,
    OApp,
    OConst,
    OVar,
    Signature,
    Unlock,
    app,
    erase,
    free_vars,
    fresh,
)
from .base import OracleConfig, PredicateQuery, evaluate
from .builtins import minimal_root, numeral


@dataclass(frozen=True)
class Sample:
    """A query expected to hold, with material for the three closures."""

    query: PredicateQuery
    weakenings: tuple = ()  # families for a fresh context variable
    substitutions: tuple = ()  # (variable, term well-typed in the prefix before it)
    extra_decls: tuple = (FamDecl("wb_extra", KType()),)


@dataclass(frozen=True)
class Counterexample:
    item: str
    before: str
    after: str
    verdict: str

    def __str__(self):
        return f"[{self.item}] {self.before}  ~>  {self.after}: {self.verdict}"


@dataclass
class WellBehavedReport:
    pred: str
    samples: int = 0
    skipped: int = 0
    checked: Counter = field(default_factory=Counter)
    counterexamples: list = field(default_factory=list)
    ill_typed: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples and not self.ill_typed

    def failed_items(self) -> set[str]:
        return {c.item for c in self.counterexamples}

    def __str__(self):
        items = ", ".join(f"{k}: {self.checked[k]}" for k in ("1a", "1b", "2"))
        return (
            f"{self.pred}: {self.samples} sample(s), {self.skipped} skipped, checked {items}; "
            f"{len(self.counterexamples)} counterexample(s), {len(self.ill_typed)} ill-typed"
        )


def _well_typed(q: PredicateQuery) -> str | None:
    from ..checker import Checker, CheckJ

    try:
        Checker(q.sig, q.mode).check_judgement(CheckJ(q.ctx, q.subject, q.classifier))
    except E.LLFPError as exc:
        return f"{exc.code}: {exc}"
    return None


def _weakenings(q: PredicateQuery, fams: Iterable) -> Iterable[PredicateQuery]:
    entries = list(q.ctx)
    used = set(q.ctx.names()) | q.sig.names() | free_vars(q.subject) | free_vars(q.classifier)
    z = fresh("wb", used)
    for fam in fams:
        need = free_vars(fam)
        for i in range(len(entries) + 1):
            if need <= {x for x, _ in entries[:i]}:
                yield q.replace(ctx=Context(entries[:i] + [(z, fam)] + entries[i:]))


def _permutations(q: PredicateQuery) -> Iterable[PredicateQuery]:
    entries = list(q.ctx)
    for i in range(len(entries) - 1):
        (x, _), (_, g) = entries[i], entries[i + 1]
        if x not in free_vars(g):
            swapped = entries[:i] + [entries[i + 1], entries[i]] + entries[i + 2:]
            yield q.replace(ctx=Context(swapped))


def _substituted(q: PredicateQuery, x: str, m0) -> PredicateQuery:
    entries = list(q.ctx)
    i = q.ctx.names().index(x)
    rho = erase(entries[i][1])
    before, after = Context(entries[:i]), Context(entries[i + 1:])
    return q.replace(
        ctx=before + subst_context(after, m0, x, rho, q.mode),
        subject=subst_canonical(q.subject, m0, x, rho, q.mode),
        classifier=subst_family(q.classifier, m0, x, rho, q.mode),
    )


def well_behaved_suite(pred: str, sampler: Iterable[Sample], cfg: OracleConfig | None = None,
                       typecheck: bool = True) -> WellBehavedReport:
    """Run closures 1a, 1b and 2 for ``pred`` over the samples."""
    report = WellBehavedReport(pred)

    def probe(item, before, after):
        report.checked[item] += 1
        if typecheck:
            err = _well_typed(after)
            if err is not None:
                report.ill_typed.append(Counterexample(item, before.judgement(), after.judgement(), err))
                return
        v = evaluate(after, cfg)
        if not v.holds:
            report.counterexamples.append(Counterexample(item, before.judgement(), after.judgement(), str(v)))

    for sample in sampler:
        q = sample.query.replace(pred=pred)
        report.samples += 1
        if not evaluate(q, cfg).holds:
            report.skipped += 1
            continue
        probe("1a", q, q.replace(sig=q.sig.extend(sample.extra_decls)))
        for q2 in _weakenings(q, sample.weakenings):
            probe("1b", q, q2)
        for q2 in _permutations(q):
            probe("1b", q, q2)
        for x, m0 in sample.substitutions:
            try:
                q2 = _substituted(q, x, m0)
            except E.LLFPError as exc:
                report.ill_typed.append(Counterexample("2", q.judgement(), f"[{m0}/{x}]", f"{exc.code}: {exc}"))
                continue
            probe("2", q, q2)
    return report


# -- samplers ----------------------------------------------------------------


def generated_sampler(n: int, seed: int = 0, mode: Mode = Mode.P) -> Iterable[Sample]:
    """Queries over the generator signature: any canonical judgement."""
    from ..gen import pool, subst_instance

    fams = pool(mode)[:4]
    for s in range(seed, seed + n):
        inst = subst_instance(s, mode, depth=3)
        q = PredicateQuery("True", inst.sig, inst.full, inst.m, inst.sigma, mode)
        yield Sample(q, weakenings=tuple(fams), substitutions=((inst.x0, inst.m0),))


def _T(p):
    return FApp(FConst("T"), p)


def _lolli(a, b):
    return app(OConst("lolli"), a, b)


def _bang(a):
    return OApp(OConst("bang"), a)


def _prop(rng: random.Random, atoms: list, depth: int = 2):
    r = rng.random()
    if depth <= 0 or r < 0.5:
        return OVar(rng.choice(atoms))
    if r < 0.8:
        return _lolli(_prop(rng, atoms, depth - 1), _prop(rng, atoms, depth - 1))
    return _bang(_prop(rng, atoms, depth - 1))


def _identity_proof(p):
    """A closed proof of ``T (lolli p p)``."""
    ident = Abs("u", _T(p), OVar("u"))
    return Unlock("Light", ident, FPi("u", _T(p), _T(p)), app(OConst("c_abstr"), p, p, ident))


def _eal_atoms(rng: random.Random, k: int):
    atoms = [f"A{i}" for i in range(1, k + 1)]
    return atoms, [(a, FConst("o")) for a in atoms]


def _prop_substitutions(rng: random.Random, atoms: list):
    """Substitute the last atom by a proposition over the earlier ones."""
    if len(atoms) < 2:
        return ()
    return ((atoms[-1], _prop(rng, atoms[:-1])),)


def light_sampler(sig: Signature, n: int, seed: int = 0) -> Iterable[Sample]:
    rng = random.Random(seed)
    for _ in range(n):
        atoms, ctx = _eal_atoms(rng, rng.randint(1, 3))
        a = _prop(rng, atoms)
        b = _prop(rng, atoms)
        subs = list(_prop_substitutions(rng, atoms))
        shape = rng.randrange(4)
        if shape == 0:
            body, b = OVar("u"), a
        elif shape == 1:
            ctx.append(("y0", _T(_lolli(a, b))))
            ctx.append(("y", _T(_lolli(a, b))))
            body = app(OConst("c_appl"), a, b, OVar("u"), OVar("y"))
            subs.append(("y", OVar("y0")))
        elif shape == 2:
            ctx.append(("y", _T(b)))
            body = OVar("y")
        else:
            a = _bang(a)
            ctx.append(("f", _T(_lolli(a, _lolli(a, b)))))
            inner = app(OConst("c_appl"), a, _lolli(a, b), OVar("u"), OVar("f"))
            body = app(OConst("c_appl"), a, b, OVar("u"), inner)
        subject = Abs("u", _T(a), body)
        q = PredicateQuery("Light", sig, Context(ctx), subject, FPi("u", _T(a), _T(b)))
        weak = (FConst("o"), _T(_prop(rng, atoms)))
        yield Sample(q, weakenings=weak, substitutions=tuple(subs))


def closed_sampler(sig: Signature, n: int, seed: int = 0) -> Iterable[Sample]:
    rng = random.Random(seed)
    for _ in range(n):
        atoms, ctx = _eal_atoms(rng, rng.randint(1, 3))
        p = _prop(rng, atoms)
        subject, cls = _identity_proof(p), _T(_lolli(p, p))
        if rng.random() < 0.5:
            lp = _lolli(p, p)
            subject = app(OConst("c_appl"), lp, lp, subject, _identity_proof(lp))
        if rng.random() < 0.5:
            # an unused proof hypothesis does not make a hole
            ctx.append(("y", _T(_prop(rng, atoms))))
        q = PredicateQuery("Closed", sig, Context(ctx), subject, cls)
        yield Sample(q, weakenings=(FConst("o"),), substitutions=_prop_substitutions(rng, atoms))


def sqrt_sampler(sig: Signature, n: int, seed: int = 0) -> Iterable[Sample]:
    rng = random.Random(seed)
    nat = FConst("nat")
    for _ in range(n):
        root = rng.randint(0, 6)
        x, z = numeral(root * root), numeral(minimal_root(root * root))
        subject = app(OConst("pair"), x, z, app(OConst("arith"), x, z))
        ctx = [(f"n{i}", nat) for i in range(rng.randint(0, 2))]
        subs = tuple((v, numeral(rng.randint(0, 4))) for v, _ in ctx)
        q = PredicateQuery("SQRT", sig, Context(ctx), subject, FApp(FConst("prod"), x), Mode.PQ)
        yield Sample(q, weakenings=(nat, app(FConst("eval"), OConst("O"), OConst("O"))), substitutions=subs)


__all__ = [
    "Sample",
    "Counterexample",
    "WellBehavedReport",
    "well_behaved_suite",
    "generated_sampler",
    "light_sampler",
    "closed_sampler",
    "sqrt_sampler",
]
