"""Concrete syntax: lexer, parser, printer and scripts."""

from .lexer import SourceSpan, tokenize
from .parser import (
    parse_context,
    parse_family,
    parse_file,
    parse_kind,
    parse_object,
    parse_script,
    parse_signature,
    parse_term,
)
from .printer import pretty, pretty_context, pretty_signature, print_script
from .script import CtxBlock, Expect, Goal, Include, Script, SigBlock, System

__all__ = [
    "SourceSpan", "tokenize", "parse_context", "parse_family", "parse_file", "parse_kind",
    "parse_object", "parse_script", "parse_signature", "parse_term", "pretty", "pretty_context",
    "pretty_signature", "print_script", "CtxBlock", "Expect", "Goal", "Include", "Script",
    "SigBlock", "System",
]
