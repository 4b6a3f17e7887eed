"""Hereditary substitution and the well-behavedness checks, from Python.

    python3 demos/04_metatheory.py
"""

from llfp.gen import subst_instance
from llfp.hsubst import subst, subst_canonical
from llfp.predicates.wellbehaved import generated_sampler, light_sampler, well_behaved_suite
from llfp.session import Session, load
from llfp.surface import parse_context, parse_family, parse_object, pretty, pretty_context
from llfp.syntax import erase


def substitution():
    print("-- hereditary substitution --")
    ctx = parse_context("x0 : a -> a, y : a")
    scope = set(ctx.names())
    target = parse_object("x0 (x0 y)", scope=scope)
    m0 = parse_object("\\z : a . f z z", scope=scope)
    rho0 = erase(parse_family("a -> a"))
    # substituting a lambda for a head variable reduces on the spot
    out = subst(target, m0, "x0", rho0)
    print(f"({pretty(target)})[{pretty(m0)} / x0] = {pretty(out.term)} : {pretty(out.stype)}")


def generated():
    print("\n-- a generated instance --")
    inst = subst_instance(11)
    print(f"context   {pretty_context(inst.full)}")
    print(f"term      {pretty(inst.m)} <= {pretty(inst.sigma)}")
    print(f"replace   {inst.x0} by {pretty(inst.m0)}")
    print(f"result    {pretty(subst_canonical(inst.m, inst.m0, inst.x0, erase(inst.rho0)))}")


def closures():
    print("\n-- well-behavedness --")
    script, mode = load("corpus/eal/signature.llfp")
    session = Session(mode)
    session.load_state(script)
    eal = session.sig
    print(well_behaved_suite("Light", light_sampler(eal, 50)))
    print(well_behaved_suite("True", generated_sampler(30)))
    broken = well_behaved_suite("EvenContext", generated_sampler(30))
    print(broken)
    print("first counterexample:", broken.counterexamples[0])


if __name__ == "__main__":
    substitution()
    generated()
    closures()
