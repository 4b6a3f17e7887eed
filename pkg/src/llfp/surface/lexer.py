"""Tokenizer for ``.llfp`` text."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError


@dataclass(frozen=True)
class SourceSpan:
    file: str | None
    start: int
    end: int
    line: int
    col: int

    def __str__(self):
        return f"{self.file or '<input>'}:{self.line}:{self.col}"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan


KEYWORDS = {"Type": "TYPE", "Pi": "PI", "lock": "LOCK", "unlock": "UNLOCK", "expect": "EXPECT"}

# Unicode spellings accepted on input; output is always ASCII
ALIASES = {"Π": ("PI", "Pi"), "λ": ("LAM", "\\"), "→": ("ARROW", "->"), "⊸": ("IDENT", "lolli"), "⊃": ("IDENT", "imp")}

_TOKEN = re.compile(
    r"""
    (?P<WS>[ \t\r\n]+)
  | (?P<COMMENT>--[^\n]*)
  | (?P<ARROW>->)
  | (?P<DIRECTIVE>%[A-Za-z]+)
  | (?P<STRING>"[^"\n]*")
  | (?P<IDENT>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<LAM>\\)
  | (?P<LPAREN>\()
  | (?P<RPAREN>\))
  | (?P<LBRACK>\[)
  | (?P<RBRACK>\])
  | (?P<LBRACE>\{)
  | (?P<RBRACE>\})
  | (?P<SEMI>;)
  | (?P<COLON>:)
  | (?P<DOT>\.)
  | (?P<COMMA>,)
    """,
    re.VERBOSE,
)


def tokenize(text: str, file: str | None = None) -> list[Token]:
    out: list[Token] = []
    pos, line, line_start = 0, 1, 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        span = SourceSpan(file, pos, pos + 1, line, pos - line_start + 1)
        if ch in ALIASES:
            kind, canon = ALIASES[ch]
            out.append(Token(kind, canon, span))
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {ch!r}", span=span, expected=("token",))
        kind, lexeme = m.lastgroup, m.group()
        span = SourceSpan(file, pos, m.end(), line, pos - line_start + 1)
        if kind == "IDENT":
            kind = KEYWORDS.get(lexeme, "IDENT")
        if kind not in ("WS", "COMMENT"):
            out.append(Token(kind, lexeme, span))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            line_start = pos + lexeme.rindex("\n") + 1
        pos = m.end()
    out.append(Token("EOF", "", SourceSpan(file, n, n, line, n - line_start + 1)))
    return out
