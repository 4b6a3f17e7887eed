from hypothesis import given, settings
from hypothesis import strategies as st

from llfp.gen import term_population
from llfp.syntax import (
    Abs,
    Context,
    FApp,
    FConst,
    FLock,
    LockO,
    Mode,
    OApp,
    OConst,
    OVar,
    SArrow,
    SBase,
    SLock,
    alpha_eq,
    bound_vars,
    erase,
    free_vars,
    fresh,
    graft,
    rename,
    skeleton,
)
from support import Env

a = FConst("a")


def test_alpha_eq_examples():
    assert alpha_eq(Abs("x", a, OVar("x")), Abs("y", a, OVar("y")))
    assert not alpha_eq(Abs("x", a, OVar("x")), Abs("x", a, OConst("c")))
    lx = LockO("P", "x", a, OVar("x"))
    ly = LockO("P", "y", a, OVar("y"))
    assert alpha_eq(lx, ly)


def test_alpha_eq_free_variables_are_not_renamed():
    assert not alpha_eq(OVar("x"), OVar("y"))
    assert not alpha_eq(Abs("x", a, OVar("y")), Abs("y", a, OVar("y")))


def test_erase_examples():
    assert erase(a) == SBase("a")
    env = Env("a : Type\nb : a -> Type")
    assert erase(env.fam("Pi x : a . b x")) == SArrow(SBase("a"), SBase("b"))
    n = OConst("N")
    e = erase(FLock("P", n, a, a))
    assert isinstance(e, SLock) and e.pred == "P" and e.guard == n and e.body == SBase("a")


def test_erase_keeps_guard_and_type_verbatim():
    env = Env("a : Type\nb : a -> Type\nc : a")
    f = env.fam("lock[P; c : a] b c")
    e = erase(f)
    assert e.guard_type == a and e.body == SBase("b")


def test_free_vars_examples():
    assert free_vars(OVar("x")) == {"x"}
    assert free_vars(Abs("x", a, OVar("x"))) == set()
    t = LockO("P", "x", a, OApp(OVar("x"), OVar("y")))
    assert free_vars(t) == {"y"}


def test_p_mode_guard_is_an_ordinary_subterm():
    t = LockO("P", OVar("x"), a, OVar("x"))
    assert free_vars(t) == {"x"}


def test_fresh_avoids_names():
    assert fresh("x", {"x", "x1"}) == "x2"
    assert fresh("y", {"x"}) == "y"


def test_rename_is_capture_avoiding():
    t = Abs("y", a, OApp(OVar("x"), OVar("y")))
    r = rename(t, "x", "y")
    assert free_vars(r) == {"y"}
    assert alpha_eq(r, Abs("z", a, OApp(OVar("y"), OVar("z"))))


def test_skeleton_examples():
    sig = {"c", "a"}
    sk = skeleton(OConst("c"), sig)
    assert sk.term == OConst("c") and sk.holes == ()
    sk = skeleton(OApp(OConst("c"), OVar("x")), sig)
    assert len(sk.holes) == 1 and sk.holes[0].filler == OVar("x")
    assert sk.term == OApp(OConst("c"), OVar(sk.holes[0].name))
    sk = skeleton(OApp(OConst("c"), OConst("d")), sig)
    assert [h.filler for h in sk.holes] == [OConst("d")]
    assert alpha_eq(sk.fill(), OApp(OConst("c"), OConst("d")))


def test_skeleton_shares_alpha_equal_holes():
    t = OApp(OApp(OConst("c"), OVar("x")), OVar("x"))
    sk = skeleton(t, {"c"})
    assert len(sk.holes) == 1


def test_skeleton_hole_families_come_from_context():
    ctx = Context([("x", a)])
    sk = skeleton(OApp(OConst("c"), OVar("x")), {"c"}, ctx)
    assert sk.holes[0].family == a


def test_graft_replaces_free_variables():
    t = Abs("y", a, OApp(OVar("h"), OVar("y")))
    out = graft(t, {"h": OConst("f")})
    assert alpha_eq(out, Abs("y", a, OApp(OConst("f"), OVar("y"))))


def _population(seed):
    mode = Mode.PQ if seed % 2 else Mode.P
    return term_population(seed, mode, depth=3)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_alpha_eq_is_an_equivalence(seed):
    ts = _population(seed)
    for t in ts:
        assert alpha_eq(t, t)
    # a renamed copy of every term is alpha-equal to it, in both directions
    for t in ts:
        bv = sorted(bound_vars(t))
        u = t
        for v in bv:
            u = _rename_bound(u, v, v + "_r")
        assert alpha_eq(t, u) and alpha_eq(u, t)


def _rename_bound(t, old, new):
    """Rename every binder called ``old`` (and its occurrences) to ``new``."""
    from llfp.syntax import FPi, KPi

    match t:
        case Abs(x, d, b) | FPi(x, d, b) | KPi(x, d, b):
            d2 = _rename_bound(d, old, new)
            b2 = _rename_bound(b, old, new)
            if x == old:
                x, b2 = new, rename(b2, old, new)
            return type(t)(x, d2, b2)
        case LockO(p, g, gt, b) | FLock(p, g, gt, b):
            gt2 = _rename_bound(gt, old, new)
            b2 = _rename_bound(b, old, new)
            if isinstance(g, str):
                if g == old:
                    g, b2 = new, rename(b2, old, new)
            else:
                g = _rename_bound(g, old, new)
            return type(t)(p, g, gt2, b2)
        case OApp(h, x) | FApp(h, x):
            return type(t)(_rename_bound(h, old, new), _rename_bound(x, old, new))
        case _ if hasattr(t, "witness"):
            return type(t)(t.pred, _rename_bound(t.witness, old, new), _rename_bound(t.witness_type, old, new),
                           _rename_bound(t.body, old, new))
    return t


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_alpha_eq_transitive_on_populations(s1, s2):
    ts = _population(s1) + _population(s2)
    for x in ts:
        for y in ts:
            if not alpha_eq(x, y):
                continue
            for z in ts:
                if alpha_eq(y, z):
                    assert alpha_eq(x, z)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10_000))
def test_skeleton_resubstitution(seed):
    sig = {"c", "d", "f", "a", "b"}  # g and k become holes
    for t in _population(seed)[:2]:
        sk = skeleton(t, sig)
        assert alpha_eq(sk.fill(), t)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_erase_drops_all_dependencies(seed):
    from llfp.syntax import FPi

    def check(f):
        match f:
            case FPi(_, d, b):
                e = erase(f)
                assert e == SArrow(erase(d), erase(b))
                check(d)
                check(b)

    for t in _population(seed):
        check(t)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_free_and_bound_are_disjoint_on_generated_terms(seed):
    for t in _population(seed):
        assert not (free_vars(t) & bound_vars(t))
