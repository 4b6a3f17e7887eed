"""Shared helpers for the test modules."""

from __future__ import annotations

import pathlib

from llfp.hsubst import Reduces, Stays, subst, subst_atomic_object, subst_canonical
from llfp.session import Session, load
from llfp.surface import parse_context, parse_family, parse_object, parse_signature
from llfp.syntax import Mode, erase

ROOT = pathlib.Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"


def corpus_state(rel: str) -> Session:
    """Signature and context left behind by a corpus file (goals not run)."""
    script, mode = load(str(CORPUS / rel))
    s = Session(mode)
    s.load_state(script)
    return s


def corpus_signature(rel: str):
    return corpus_state(rel).sig


class Env:
    """Parse terms against one signature and context."""

    def __init__(self, sig: str, ctx: str = "", mode: Mode = Mode.P):
        self.mode = mode
        self.sig = parse_signature(sig, mode)
        self.ctx = parse_context(ctx, mode)

    @property
    def scope(self):
        return set(self.ctx.names())

    def obj(self, text: str, extra=()):
        return parse_object(text, mode=self.mode, scope=self.scope | set(extra))

    def fam(self, text: str, extra=()):
        return parse_family(text, mode=self.mode, scope=self.scope | set(extra))


def compose(inst):
    """Both sides of the composition lemma; returns (item, left, right)."""
    r0, r2 = erase(inst.rho0), erase(inst.rho2)
    mode = inst.mode
    m2p = subst_canonical(inst.m2, inst.m0, inst.x0, r0, mode)
    first = subst(inst.t1, inst.m2, inst.x, r2, mode)
    other = subst(inst.t1, inst.m0, inst.x0, r0, mode)
    if isinstance(first, Reduces):
        # item 2: A1[M2/x] = M : rho, A1[M0/x0] stays
        assert isinstance(other, Stays)
        left = (subst_canonical(first.term, inst.m0, inst.x0, r0, mode), first.stype)
        right_r = subst_atomic_object(other.term, m2p, inst.x, r2, mode)
        assert isinstance(right_r, Reduces)
        return "2", left, (right_r.term, right_r.stype)
    if isinstance(other, Reduces):
        # item 3: A1[M2/x] stays, A1[M0/x0] = M : rho
        left_r = subst_atomic_object(first.term, inst.m0, inst.x0, r0, mode)
        assert isinstance(left_r, Reduces)
        right = (subst_canonical(other.term, m2p, inst.x, r2, mode), other.stype)
        return "3", (left_r.term, left_r.stype), right
    t1p = first.term if isinstance(first, Stays) else first
    t1pp = other.term if isinstance(other, Stays) else other
    left = subst(t1p, inst.m0, inst.x0, r0, mode)
    right = subst(t1pp, m2p, inst.x, r2, mode)
    return "1", _unwrap(left), _unwrap(right)


def _unwrap(r):
    if isinstance(r, Reduces):
        return r.term, r.stype
    return (r.term if isinstance(r, Stays) else r), None
