"""Predicate queries, verdicts, oracle configuration and dispatch."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Callable

from ..errors import OracleConfigError, UnknownPredicate, UnsupportedSynthesis
from ..syntax import Context, Mode, Signature

DEFAULT_FUEL = 10_000
DEFAULT_TIMEOUT = 5.0


@dataclass(frozen=True)
class PredicateQuery:
    """The judgement ``ctx |- subject <= classifier`` shipped to predicate ``pred``."""

    pred: str
    sig: Signature
    ctx: Context
    subject: object
    classifier: object
    mode: Mode = Mode.P

    def judgement(self) -> str:
        from ..surface.printer import pretty_context

        g = pretty_context(self.ctx)
        return f"{g + ' ' if g else ''}|- {self.subject} <= {self.classifier}"

    def replace(self, **changes) -> "PredicateQuery":
        fields = dict(
            pred=self.pred, sig=self.sig, ctx=self.ctx, subject=self.subject,
            classifier=self.classifier, mode=self.mode,
        )
        fields.update(changes)
        return PredicateQuery(**fields)


@dataclass(frozen=True)
class Verdict:
    status: str  # "holds" | "fails" | "unknown"
    reason: str | None = None

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    def __str__(self):
        return self.status if self.reason is None else f"{self.status}({self.reason})"


HOLDS = Verdict("holds")


def Holds() -> Verdict:
    return HOLDS


def Fails(reason: str) -> Verdict:
    return Verdict("fails", reason)


def Unknown(reason: str) -> Verdict:
    """``reason`` is one of "fuel", "timeout", "unsupported" (optionally with detail after a colon)."""
    return Verdict("unknown", reason)


@dataclass(frozen=True)
class OracleSpec:
    builtin: str | None = None
    command: tuple[str, ...] | None = None
    fuel: int = DEFAULT_FUEL
    timeout: float = DEFAULT_TIMEOUT

    def __post_init__(self):
        if (self.builtin is None) == (self.command is None):
            raise OracleConfigError("an oracle needs exactly one of 'builtin' or 'command'")
        if self.fuel <= 0 or self.timeout <= 0:
            raise OracleConfigError("fuel and timeout must be positive")


@dataclass(frozen=True)
class BuiltinPredicate:
    name: str
    check: Callable
    synth: Callable | None = None
    total: bool = True


BUILTINS: dict[str, BuiltinPredicate] = {}


def builtin(name: str, *, total: bool = True):
    """Register ``fn(query, fuel) -> Verdict`` as a built-in predicate."""

    def deco(fn):
        BUILTINS[name] = BuiltinPredicate(name, fn, total=total)
        return fn

    return deco


def builtin_synth(name: str):
    """Attach ``fn(sig, ctx, sigma, fuel) -> term | None`` as witness synthesis for ``name``."""

    def deco(fn):
        b = BUILTINS[name]
        BUILTINS[name] = BuiltinPredicate(b.name, b.check, fn, b.total)
        return fn

    return deco


@dataclass
class OracleConfig:
    """Maps predicate names to built-ins or external commands.

    Names without an entry fall back to the built-in of the same name, with
    the default fuel and timeout.
    """

    entries: dict[str, OracleSpec] = field(default_factory=dict)
    default_fuel: int = DEFAULT_FUEL
    default_timeout: float = DEFAULT_TIMEOUT
    _clients: dict = field(default_factory=dict, repr=False)

    def spec_for(self, pred: str) -> OracleSpec:
        from . import builtins  # noqa: F401  (registers the built-ins)

        if pred in self.entries:
            return self.entries[pred]
        if pred in BUILTINS:
            return OracleSpec(builtin=pred, fuel=self.default_fuel, timeout=self.default_timeout)
        raise UnknownPredicate(f"no oracle registered for predicate {pred!r}")

    def client(self, spec: OracleSpec):
        from .external import ExternalOracle

        if spec.command not in self._clients:
            self._clients[spec.command] = ExternalOracle(spec.command)
        return self._clients[spec.command]

    def close(self):
        for c in self._clients.values():
            c.close()
        self._clients.clear()

    def with_fuel(self, pred: str, fuel: int) -> "OracleConfig":
        spec = self.spec_for(pred)
        entries = dict(self.entries)
        entries[pred] = OracleSpec(spec.builtin, spec.command, fuel, spec.timeout)
        return OracleConfig(entries, self.default_fuel, self.default_timeout)

    @classmethod
    def from_dict(cls, data: dict) -> "OracleConfig":
        if not isinstance(data, dict):
            raise OracleConfigError("oracle config must be an object")
        data = dict(data)
        default_fuel = data.pop("default_fuel", DEFAULT_FUEL)
        default_timeout = data.pop("default_timeout", DEFAULT_TIMEOUT)
        entries = {}
        for name, raw in data.get("predicates", data).items():
            if not isinstance(raw, dict):
                raise OracleConfigError(f"entry for {name!r} must be an object")
            unknown = set(raw) - {"builtin", "command", "fuel", "timeout"}
            if unknown:
                raise OracleConfigError(f"unknown keys for {name!r}: {sorted(unknown)}")
            command = raw.get("command")
            if isinstance(command, str):
                command = (command,)
            elif command is not None:
                command = tuple(command)
            builtin_name = raw.get("builtin")
            if builtin_name is None and command is None:
                builtin_name = name
            entries[name] = OracleSpec(
                builtin_name,
                command,
                int(raw.get("fuel", default_fuel)),
                float(raw.get("timeout", default_timeout)),
            )
        return cls(entries, default_fuel, default_timeout)

    @classmethod
    def load(cls, path: str) -> "OracleConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise OracleConfigError(f"cannot read oracle config {path}: {exc}") from exc
        return cls.from_dict(data)

    @classmethod
    def from_env(cls, path: str | None = None) -> "OracleConfig":
        path = path or os.environ.get("LLFP_ORACLES")
        return cls.load(path) if path else cls()


def evaluate(q: PredicateQuery, cfg: OracleConfig | None = None) -> Verdict:
    cfg = cfg or OracleConfig()
    spec = cfg.spec_for(q.pred)
    if spec.command is not None:
        return cfg.client(spec).check(q, spec.fuel, spec.timeout)
    impl = BUILTINS.get(spec.builtin)
    if impl is None:
        raise UnknownPredicate(f"unknown built-in {spec.builtin!r} for predicate {q.pred!r}")
    return impl.check(q, spec.fuel)


def synthesize_witness(pred: str, sig: Signature, ctx: Context, sigma, cfg: OracleConfig | None = None,
                       mode: Mode = Mode.PQ):
    """Ask the oracle for ``N`` with ``pred(ctx |- N <= sigma)``; ``None`` if there is none."""
    cfg = cfg or OracleConfig()
    spec = cfg.spec_for(pred)
    if spec.command is not None:
        return cfg.client(spec).synth(pred, sig, ctx, sigma, mode, spec.fuel, spec.timeout)
    impl = BUILTINS.get(spec.builtin)
    if impl is None or impl.synth is None:
        raise UnsupportedSynthesis(f"predicate {pred!r} cannot synthesize witnesses")
    return impl.synth(sig, ctx, sigma, spec.fuel)
