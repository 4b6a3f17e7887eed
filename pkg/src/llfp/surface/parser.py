"""Recursive-descent parser for terms, signatures, contexts and scripts.

Terms are first read into a sort-agnostic raw tree and then converted to a
kind, family or object depending on where they occur.  An identifier is a
variable when it is bound by an enclosing binder or by the current context,
and a constant otherwise.

Grammar (ASCII; ``Π λ → ⊸ ⊃`` are accepted as aliases)::

    term  ::= Pi x1, .., xn : term . term
            | \\x : term . term
            | lock[P; guard : term] term
            | app [-> term]
    app   ::= unlock[P; term : term] app | atom atom*
    atom  ::= ident | Type | ( term )

In P mode a lock guard is a term; in PQ mode it is a binder name.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from ..errors import ParseError
from ..syntax import (
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
    ObjDecl,
    OApp,
    OConst,
    OVar,
    Signature,
    Unlock,
    is_atomic,
    is_atomic_family,
)
from .lexer import SourceSpan, Token, tokenize
from .script import CtxBlock, Expect, Goal, Include, Script, SigBlock, System


@dataclass(frozen=True)
class Raw:
    tag: str
    args: tuple
    span: SourceSpan


_ATOM_START = ("IDENT", "TYPE", "LPAREN")
GOAL_FORMS = ("check", "synth", "family", "kind", "synthfam", "sig", "ctx", "lint")


class Parser:
    def __init__(self, text: str, file: str | None = None, mode: Mode = Mode.P):
        self.toks: list[Token] = tokenize(text, file)
        self.pos = 0
        self.mode = mode
        self.file = file
        self.depth = 0  # bracket nesting
        self.decl_stop = False  # an "ident :" at depth 0 ends the current term

    # -- token plumbing -----------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def advance(self) -> Token:
        t = self.tok
        self.pos += 1
        return t

    def error(self, msg: str, expected=()) -> ParseError:
        found = self.tok.text or "end of input"
        return ParseError(f"{msg}, found {found!r}", span=self.tok.span, expected=expected)

    def expect(self, kind: str, text: str | None = None) -> Token:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            raise self.error(f"expected {text or kind}", expected=(text or kind,))
        return self.advance()

    def at(self, kind: str, text: str | None = None) -> bool:
        return self.tok.kind == kind and (text is None or self.tok.text == text)

    def _ident(self) -> str:
        return self.expect("IDENT").text

    def _span_from(self, start: SourceSpan) -> SourceSpan:
        prev = self.toks[self.pos - 1].span if self.pos > 0 else start
        return SourceSpan(start.file, start.start, prev.end, start.line, start.col)

    # -- raw terms ----------------------------------------------------------

    def term(self) -> Raw:
        start = self.tok.span
        if self.at("PI") or self.at("LAM"):
            tag = "pi" if self.advance().kind == "PI" else "lam"
            binders = [self._ident()]
            while self.at("COMMA"):
                self.advance()
                binders.append(self._ident())
            self.expect("COLON")
            dom = self.term()
            self.expect("DOT")
            body = self.term()
            for x in reversed(binders):
                body = Raw(tag, (x, dom, body), self._span_from(start))
            return body
        if self.at("LOCK"):
            self.advance()
            pred, guard, gtype = self._lock_header(binder=self.mode is Mode.PQ)
            body = self.term()
            return Raw("lock", (pred, guard, gtype, body), self._span_from(start))
        left = self.app()
        if self.at("ARROW"):
            self.advance()
            right = self.term()
            return Raw("pi", ("_", left, right), self._span_from(start))
        return left

    def _lock_header(self, binder: bool):
        self.expect("LBRACK")
        self.depth += 1
        pred = self._ident()
        self.expect("SEMI")
        guard = self._ident() if binder else self.term()
        self.expect("COLON")
        gtype = self.term()
        self.expect("RBRACK")
        self.depth -= 1
        return pred, guard, gtype

    def _stops(self) -> bool:
        if self.tok.kind not in _ATOM_START:
            return True
        return self.decl_stop and self.depth == 0 and self.tok.kind == "IDENT" and self.peek().kind == "COLON"

    def app(self) -> Raw:
        start = self.tok.span
        if self.at("UNLOCK"):
            self.advance()
            pred, wit, wtype = self._lock_header(binder=False)
            body = self.app()
            return Raw("unlock", (pred, wit, wtype, body), self._span_from(start))
        head = self.atom()
        while not self._stops():
            arg = self.atom()
            head = Raw("app", (head, arg), self._span_from(start))
        return head

    def atom(self) -> Raw:
        t = self.tok
        if t.kind == "IDENT":
            self.advance()
            return Raw("id", (t.text,), t.span)
        if t.kind == "TYPE":
            self.advance()
            return Raw("type", (), t.span)
        if t.kind == "LPAREN":
            self.advance()
            self.depth += 1
            inner = self.term()
            self.expect("RPAREN")
            self.depth -= 1
            return inner
        raise self.error("expected a term", expected=("identifier", "Type", "(", "Pi", "\\", "lock", "unlock"))

    # -- scripts ------------------------------------------------------------

    def script(self, base_dir: str | None, seen: frozenset = frozenset()) -> Script:
        directives = []
        header_mode = None
        scope: set[str] = set()
        ctx_seen = False
        while not self.at("EOF"):
            t = self.tok
            if t.kind == "DIRECTIVE":
                self.advance()
                if t.text == "%system":
                    word = self._ident()
                    if word not in ("p", "pq"):
                        raise ParseError(f"unknown system {word!r}", span=t.span, expected=("p", "pq"))
                    self.mode = Mode(word)
                    if not directives:
                        header_mode = self.mode
                    directives.append(System(self.mode, t.span))
                elif t.text == "%include":
                    path = self.expect("STRING").text[1:-1]
                    inc, inc_scope = self._include(path, base_dir, seen, t.span)
                    if inc_scope is not None:
                        scope, ctx_seen = inc_scope, True
                    directives.append(Include(path, inc, t.span))
                else:
                    raise ParseError(f"unknown directive {t.text}", span=t.span, expected=("%system", "%include"))
                continue
            if t.kind == "IDENT" and t.text == "signature":
                self.advance()
                directives.append(SigBlock(tuple(self._block(decls=True)), t.span))
                continue
            if t.kind == "IDENT" and t.text == "context":
                self.advance()
                entries = tuple(self._block(decls=False))
                scope, ctx_seen = {x for x, _ in entries}, True
                directives.append(CtxBlock(entries, t.span))
                continue
            if t.kind == "IDENT" and t.text in GOAL_FORMS:
                directives.append(self._goal(scope))
                continue
            raise self.error("expected a directive, block or goal", expected=("%system", "%include", "signature", "context") + GOAL_FORMS)
        s = Script(tuple(directives), self.file, header_mode)
        self.final_scope = scope if ctx_seen else None
        return s

    def _include(self, path, base_dir, seen, span):
        full = os.path.normpath(os.path.join(base_dir or ".", path))
        if full in seen:
            raise ParseError(f"include cycle through {path}", span=span)
        try:
            with open(full, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot include {path}: {exc}", span=span) from exc
        sub = Parser(text, full, self.mode)
        script = sub.script(os.path.dirname(full), seen | {full})
        self.mode = sub.mode
        return script, sub.final_scope

    def _block(self, decls: bool):
        """``{ name : classifier ... }``; signature decls or context entries."""
        self.expect("LBRACE")
        out = []
        scope: set[str] = set()
        saved = self.decl_stop
        self.decl_stop = True
        try:
            while not self.at("RBRACE"):
                name_tok = self.expect("IDENT")
                self.expect("COLON")
                raw = self.term()
                if decls:
                    out.append(to_decl(name_tok.text, raw, name_tok.span))
                else:
                    out.append((name_tok.text, to_family(raw, frozenset(scope))))
                    scope.add(name_tok.text)
                while self.at("DOT") or self.at("COMMA"):
                    self.advance()
        finally:
            self.decl_stop = saved
        self.expect("RBRACE")
        return out

    def _goal(self, scope: set[str]) -> Goal:
        start = self.tok.span
        form = self.advance().text
        sc = frozenset(scope)
        subject = classifier = lint = None
        if form == "check":
            subject = to_object(self.term(), sc)
            self.expect("COLON")
            classifier = to_family(self.term(), sc)
        elif form == "synth":
            subject = to_object(self.term(), sc)
            if self.at("COLON"):
                self.advance()
                classifier = to_family(self.term(), sc)
        elif form == "synthfam":
            subject = to_family(self.term(), sc)
            if self.at("COLON"):
                self.advance()
                classifier = to_kind(self.term(), sc)
        elif form == "family":
            subject = to_family(self.term(), sc)
        elif form == "kind":
            subject = to_kind(self.term(), sc)
        elif form == "lint":
            lint = self._ident()
            subject = to_object(self.term(), sc)
        expect = self._expect()
        return Goal(form, subject, classifier, expect, lint, self._span_from(start))

    def _expect(self) -> Expect:
        self.expect("EXPECT")
        word = self._ident()
        if word in ("valid", "invalid"):
            return Expect(word)
        if word != "error":
            raise ParseError(f"unknown expectation {word!r}", span=self.toks[self.pos - 1].span,
                             expected=("valid", "invalid", "error"))
        code = self._ident()
        arg = None
        if self.at("LPAREN"):
            self.advance()
            arg = self._ident()
            self.expect("RPAREN")
        return Expect("error", code, arg)


# -- conversion from raw trees ---------------------------------------------


def _err(msg: str, r: Raw) -> ParseError:
    return ParseError(msg, span=r.span)


def _guard(g, scope):
    if isinstance(g, str):
        return g, scope | {g}
    return to_object(g, scope), scope


def to_kind(r: Raw, scope: frozenset = frozenset()):
    match r.tag:
        case "type":
            return KType(r.span)
        case "pi":
            x, d, b = r.args
            return KPi(x, to_family(d, scope), to_kind(b, scope | {x}), r.span)
    raise _err("expected a kind", r)


def to_family(r: Raw, scope: frozenset = frozenset()):
    match r.tag:
        case "id":
            (name,) = r.args
            if name in scope:
                raise _err(f"variable {name} used as a family", r)
            return FConst(name, r.span)
        case "app":
            h, a = r.args
            head = to_family(h, scope)
            if not is_atomic_family(head):
                raise _err("only atomic families can be applied", r)
            return FApp(head, to_object(a, scope), r.span)
        case "pi":
            x, d, b = r.args
            return FPi(x, to_family(d, scope), to_family(b, scope | {x}), r.span)
        case "lock":
            p, g, gt, b = r.args
            guard, inner = _guard(g, scope)
            return FLock(p, guard, to_family(gt, scope), to_family(b, inner), r.span)
    raise _err("expected a family", r)


def to_object(r: Raw, scope: frozenset = frozenset()):
    match r.tag:
        case "id":
            (name,) = r.args
            return OVar(name, r.span) if name in scope else OConst(name, r.span)
        case "app":
            h, a = r.args
            head = to_object(h, scope)
            if not is_atomic(head):
                raise _err("only atomic objects can be applied", r)
            return OApp(head, to_object(a, scope), r.span)
        case "lam":
            x, d, b = r.args
            return Abs(x, to_family(d, scope), to_object(b, scope | {x}), r.span)
        case "lock":
            p, g, gt, b = r.args
            guard, inner = _guard(g, scope)
            return LockO(p, guard, to_family(gt, scope), to_object(b, inner), r.span)
        case "unlock":
            p, w, wt, b = r.args
            body = to_object(b, scope)
            if not is_atomic(body):
                raise _err("the body of an unlock must be atomic", r)
            return Unlock(p, to_object(w, scope), to_family(wt, scope), body, r.span)
    raise _err("expected an object", r)


def _is_kind(r: Raw) -> bool:
    while r.tag == "pi":
        r = r.args[2]
    return r.tag == "type"


def to_decl(name: str, r: Raw, span=None):
    if _is_kind(r):
        return FamDecl(name, to_kind(r), span)
    return ObjDecl(name, to_family(r), span)


# -- entry points ----------------------------------------------------------


def _finish(p: Parser):
    if not p.at("EOF"):
        raise p.error("unexpected trailing input", expected=("end of input",))


def parse_raw(text: str, mode: Mode = Mode.P) -> Raw:
    p = Parser(text, mode=mode)
    r = p.term()
    _finish(p)
    return r


def parse_object(text: str, mode: Mode = Mode.P, scope=frozenset()):
    return to_object(parse_raw(text, mode), frozenset(scope))


def parse_family(text: str, mode: Mode = Mode.P, scope=frozenset()):
    return to_family(parse_raw(text, mode), frozenset(scope))


def parse_kind(text: str, mode: Mode = Mode.P, scope=frozenset()):
    return to_kind(parse_raw(text, mode), frozenset(scope))


def parse_term(text: str, sort: str, mode: Mode = Mode.P, scope=frozenset()):
    conv = {"object": to_object, "family": to_family, "kind": to_kind}[sort]
    return conv(parse_raw(text, mode), frozenset(scope))


def _bare_block(text: str, mode: Mode, decls: bool):
    p = Parser("{" + text + "\n}", mode=mode)
    out = p._block(decls)
    _finish(p)
    return out


def parse_signature(text: str, mode: Mode = Mode.P) -> Signature:
    """Declarations ``name : classifier`` separated by newlines, ``.`` or ``,``."""
    return Signature(_bare_block(text, mode, decls=True))


def parse_context(text: str, mode: Mode = Mode.P) -> Context:
    return Context(_bare_block(text, mode, decls=False))


def parse_script(text: str, file: str | None = None, mode: Mode = Mode.P, base_dir: str | None = None) -> Script:
    p = Parser(text, file, mode)
    if base_dir is None and file is not None:
        base_dir = os.path.dirname(os.path.abspath(file))
    seen = frozenset({os.path.normpath(os.path.abspath(file))}) if file else frozenset()
    return p.script(base_dir, seen)


def parse_file(path: str, mode: Mode = Mode.P) -> Script:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_script(text, path, mode)
