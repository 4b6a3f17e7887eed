"""Built-in predicates for the case-study signatures, plus test predicates.

Each check takes a :class:`PredicateQuery` and a fuel budget.  Skeletons are
computed over the constants of the case study's own signature, so that
extending a signature with new constants never changes a verdict on terms
that do not use them.
"""

from __future__ import annotations

from ..errors import NonNumeral, ShapeError
from ..hsubst import subst_canonical
from ..syntax import (
    Abs,
    Context,
    FApp,
    FConst,
    FLock,
    FPi,
    LockO,
    OApp,
    OConst,
    OVar,
    SBase,
    Unlock,
    app,
    skeleton,
    spine,
)
from .base import Fails, Holds, Unknown, builtin, builtin_synth
from .normalize import ImpE, OutOfFuel, lam_from_term, lam_normalize, nd_from_term, nd_normalize

FPST_NAMES = frozenset(
    "o i T V lam eps imp delta lam_intro lam_elim imp_intro imp_elim prod pair".split()
)
EAL_NAMES = frozenset("o T V lolli bang c_appl c_val c_abstr c_promV1 c_promV2".split())
LAMBDA_N_NAMES = frozenset("o v Eq app var lam prod pair c_beta".split())
SQRT_NAMES = frozenset("nat O S plus minus mult sqroot eval prod pair fst arith sqrt".split())


# -- test predicates -------------------------------------------------------


@builtin("True")
def pred_true(q, fuel):
    return Holds()


@builtin("False")
def pred_false(q, fuel):
    return Fails("False never holds")


@builtin("EvenContext")
def pred_even_context(q, fuel):
    """Deliberately not well-behaved: holds iff the context has even length."""
    if len(q.ctx) % 2 == 0:
        return Holds()
    return Fails(f"context has odd length {len(q.ctx)}")


# -- helpers ---------------------------------------------------------------


def _family_head(f):
    head, args = spine(f)
    return (head.name if isinstance(head, FConst) else None), args


def _is(f, name: str, arity: int) -> bool:
    h, args = _family_head(f)
    return h == name and len(args) == arity


def _occurrences(t, name: str) -> int:
    match t:
        case OVar(n):
            return 1 if n == name else 0
        case OConst() | FConst():
            return 0
        case OApp(h, a) | FApp(h, a):
            return _occurrences(h, name) + _occurrences(a, name)
        case Abs(x, d, b) | FPi(x, d, b):
            return _occurrences(d, name) + (0 if x == name else _occurrences(b, name))
        case FLock(_, str() as g, gt, b) | LockO(_, str() as g, gt, b):
            return _occurrences(gt, name) + (0 if g == name else _occurrences(b, name))
        case FLock(_, g, gt, b) | LockO(_, g, gt, b) | Unlock(_, g, gt, b):
            return _occurrences(g, name) + _occurrences(gt, name) + _occurrences(b, name)
    raise TypeError(f"not a term: {t!r}")


def _unguarded(t, holes: set, guard: str, pos: int) -> set:
    """Holes with an occurrence not in argument ``pos`` of constant ``guard``."""
    out = set()

    def go(t):
        match t:
            case OVar(n):
                if n in holes:
                    out.add(n)
            case OApp() | FApp():
                head, args = spine(t)
                for i, a in enumerate(args):
                    if isinstance(head, OConst) and head.name == guard and i == pos and isinstance(a, OVar):
                        continue
                    go(a)
                if not isinstance(head, (OConst, FConst)):
                    go(head)
            case OConst() | FConst():
                pass
            case Abs(_, d, b) | FPi(_, d, b):
                go(d)
                go(b)
            case FLock(_, g, gt, b) | LockO(_, g, gt, b) | Unlock(_, g, gt, b):
                if not isinstance(g, str):
                    go(g)
                go(gt)
                go(b)

    go(t)
    return out


def _pair_components(q, arity: int):
    head, args = spine(q.subject)
    if not (isinstance(head, OConst) and head.name == "pair" and len(args) == arity):
        raise ShapeError(f"{q.pred} expects a pair, got {q.subject}")
    return args


# -- FPST ------------------------------------------------------------------


@builtin("Fitch", total=False)
def pred_fitch(q, fuel):
    """Both components have skeletons whose holes have type o or sit under
    delta, and the implication elimination combining them normalizes."""
    _, _, x, y = _pair_components(q, 4)
    for part in (x, y):
        sk = skeleton(part, FPST_NAMES, q.ctx, q.sig, q.mode)
        loose = {h.name for h in sk.holes if not (h.family is not None and _is(h.family, "o", 0))}
        bad = _unguarded(sk.term, loose, "delta", 1)
        if bad:
            fillers = ", ".join(str(sk.hole(n).filler) for n in sorted(bad))
            return Fails(f"hole(s) {fillers} neither of type o nor guarded by delta")
    deduction = ImpE(nd_from_term(x, q.pred), nd_from_term(y, q.pred))
    try:
        nd_normalize(deduction, fuel)
    except OutOfFuel:
        return Unknown("fuel")
    return Holds()


# -- normalizing lambda calculus --------------------------------------------


@builtin("PN", total=False)
def pred_pn(q, fuel):
    """Holes of both components sit under var, and M N normalizes outside var."""
    m, n = _pair_components(q, 2)
    for part in (m, n):
        sk = skeleton(part, LAMBDA_N_NAMES, q.ctx, q.sig, q.mode)
        bad = _unguarded(sk.term, {h.name for h in sk.holes}, "var", 0)
        if bad:
            fillers = ", ".join(str(sk.hole(k).filler) for k in sorted(bad))
            return Fails(f"hole(s) {fillers} not guarded by var")
    if not isinstance(m, Abs):
        raise ShapeError(f"PN expects an abstraction as first component, got {m}")
    mn = subst_canonical(m.body, n, m.binder, SBase("o"), q.mode)
    try:
        lam_normalize(lam_from_term(mn), fuel)
    except OutOfFuel:
        return Unknown("fuel")
    return Holds()


# -- EAL -------------------------------------------------------------------


@builtin("Light")
def pred_light(q, fuel):
    """If A is not banged, the bound variable of x occurs at most once."""
    sigma = q.classifier
    if not (isinstance(sigma, FPi) and _is(sigma.dom, "T", 1)):
        raise ShapeError(f"Light expects a classifier T(A) -> T(B), got {sigma}")
    (a,) = _family_head(sigma.dom)[1]
    ahead, aargs = spine(a)
    if isinstance(ahead, OConst) and ahead.name == "bang" and len(aargs) == 1:
        return Holds()
    x = q.subject
    if not isinstance(x, Abs):
        raise ShapeError(f"Light expects an abstraction, got {x}")
    count = _occurrences(x.body, x.binder)
    if count <= 1:
        return Holds()
    return Fails(f"bound variable {x.binder} occurs {count} times at non-banged type")


@builtin("Closed")
def pred_closed(q, fuel):
    """Every hole of the skeleton has type o."""
    if not (_is(q.classifier, "T", 1) or _is(q.classifier, "V", 1)):
        raise ShapeError(f"Closed expects a classifier T(A) or V(A), got {q.classifier}")
    sk = skeleton(q.subject, EAL_NAMES, q.ctx, q.sig, q.mode)
    bad = [h for h in sk.holes if not (h.family is not None and _is(h.family, "o", 0))]
    if bad:
        return Fails("free non-propositional hole(s): " + ", ".join(str(h.filler) for h in bad))
    return Holds()


def eal_lint(ctx: Context, term) -> list[str]:
    """Context variables of non-banged T-type that occur more than once in ``term``.

    This is the side condition of EAL adequacy, which lives outside the
    framework; it is reported, not enforced.
    """
    flagged = []
    for x, fam in ctx:
        if not _is(fam, "T", 1):
            continue
        (a,) = _family_head(fam)[1]
        ahead, aargs = spine(a)
        if isinstance(ahead, OConst) and ahead.name == "bang" and len(aargs) == 1:
            continue
        if _occurrences(term, x) > 1:
            flagged.append(x)
    return flagged


# -- SQRT ------------------------------------------------------------------


def numeral_value(t) -> int:
    n = 0
    while True:
        head, args = spine(t)
        if isinstance(head, OConst) and head.name == "O" and not args:
            return n
        if isinstance(head, OConst) and head.name == "S" and len(args) == 1:
            n += 1
            t = args[0]
            continue
        raise NonNumeral(f"{t} is not a closed numeral")


def numeral(n: int):
    t = OConst("O")
    for _ in range(n):
        t = OApp(OConst("S"), t)
    return t


def _truncated_sub(a: int, b: int) -> int:
    return a - b if a >= b else 0


def minimal_root(x: int) -> int | None:
    """Least N <= x with (x - N*N) + (N*N - x) = 0 in truncated arithmetic."""
    for n in range(x + 1):
        if _truncated_sub(x, n * n) + _truncated_sub(n * n, x) == 0:
            return n
    return None


@builtin("SQRT")
def pred_sqrt(q, fuel):
    if not _is(q.classifier, "prod", 1):
        raise ShapeError(f"SQRT expects a classifier prod x, got {q.classifier}")
    x = numeral_value(_family_head(q.classifier)[1][0])
    _, z, _ = _pair_components(q, 3)
    n = numeral_value(z)
    root = minimal_root(x)
    if root is not None and n == root:
        return Holds()
    if root is None:
        return Fails(f"{x} has no exact square root")
    return Fails(f"{n} is not the minimal root of {x} (which is {root})")


@builtin_synth("SQRT")
def synth_sqrt(sig, ctx, sigma, fuel):
    if not _is(sigma, "prod", 1):
        raise ShapeError(f"SQRT expects a classifier prod x, got {sigma}")
    xt = _family_head(sigma)[1][0]
    root = minimal_root(numeral_value(xt))
    if root is None:
        return None
    z = numeral(root)
    return app(OConst("pair"), xt, z, app(OConst("arith"), xt, z))
