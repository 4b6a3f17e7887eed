"""External oracles: subprocesses speaking JSON lines on stdin/stdout.

Request::

    {"op": "check"|"synth", "pred": ..., "sig": ..., "ctx": ..., "term": ...,
     "type": ..., "fuel": ...}

Reply::

    {"verdict": "holds"|"fails"|"unknown", "reason": ..., "witness": ...}

Term fields use the surface syntax.  Replies come back in request order, one
per line.  A request that times out is abandoned but its reply is still
expected later; it is read and dropped before the next reply is matched.
Malformed replies become ``Unknown("unsupported")``.

:func:`serve` implements the other end, for writing oracles in Python.
"""

from __future__ import annotations

import json
import queue
import subprocess
import sys
import threading

from .base import Fails, Holds, PredicateQuery, Unknown, Verdict

_EOF = object()


def encode_query(q: PredicateQuery, fuel: int, op: str = "check") -> dict:
    from ..surface.printer import pretty, pretty_context, pretty_signature

    return {
        "op": op,
        "pred": q.pred,
        "sig": pretty_signature(q.sig),
        "ctx": pretty_context(q.ctx),
        "term": pretty(q.subject) if q.subject is not None else None,
        "type": pretty(q.classifier),
        "fuel": fuel,
        "mode": q.mode.value,
    }


def decode_verdict(reply) -> Verdict:
    if not isinstance(reply, dict):
        return Unknown("unsupported: reply is not an object")
    match reply.get("verdict"):
        case "holds":
            return Holds()
        case "fails":
            return Fails(str(reply.get("reason") or "oracle says no"))
        case "unknown":
            reason = reply.get("reason") or "unsupported"
            return Unknown(str(reason))
    return Unknown("unsupported: bad verdict field")


class ExternalOracle:
    """One subprocess; requests are serialized."""

    def __init__(self, command):
        self.command = tuple(command)
        self._lock = threading.Lock()
        self._replies: queue.Queue = queue.Queue()
        self._stale = 0
        self._proc = None

    def _start(self):
        if self._proc is not None and self._proc.poll() is None:
            return
        self._proc = subprocess.Popen(
            self.command,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            text=True,
            encoding="utf-8",
            bufsize=1,
        )
        self._replies = queue.Queue()
        self._stale = 0
        threading.Thread(target=self._read, args=(self._proc.stdout, self._replies), daemon=True).start()

    @staticmethod
    def _read(stream, sink):
        for line in stream:
            sink.put(line)
        sink.put(_EOF)

    def _exchange(self, request: dict, timeout: float):
        """Send one request and return the decoded reply, or a Verdict on failure."""
        with self._lock:
            try:
                self._start()
                self._proc.stdin.write(json.dumps(request) + "\n")
                self._proc.stdin.flush()
            except (OSError, ValueError) as exc:
                return Unknown(f"unsupported: cannot reach oracle ({exc})")
            while True:
                try:
                    line = self._replies.get(timeout=timeout)
                except queue.Empty:
                    self._stale += 1
                    return Unknown("timeout")
                if line is _EOF:
                    self._proc = None
                    return Unknown("unsupported: oracle exited")
                if self._stale:
                    self._stale -= 1
                    continue
                try:
                    return json.loads(line)
                except json.JSONDecodeError:
                    return Unknown("unsupported: reply is not JSON")

    def check(self, q: PredicateQuery, fuel: int, timeout: float) -> Verdict:
        reply = self._exchange(encode_query(q, fuel), timeout)
        return reply if isinstance(reply, Verdict) else decode_verdict(reply)

    def synth(self, pred, sig, ctx, sigma, mode, fuel: int, timeout: float):
        from ..surface.parser import parse_object

        q = PredicateQuery(pred, sig, ctx, None, sigma, mode)
        reply = self._exchange(encode_query(q, fuel, op="synth"), timeout)
        if isinstance(reply, Verdict) or not isinstance(reply, dict):
            return None
        witness = reply.get("witness")
        if reply.get("verdict") != "holds" or not witness:
            return None
        return parse_object(witness, mode=mode, scope=set(ctx.names()))

    def close(self):
        if self._proc is not None:
            try:
                self._proc.stdin.close()
                self._proc.wait(timeout=2)
            except (OSError, subprocess.TimeoutExpired):
                self._proc.kill()
            self._proc = None


def decode_query(request: dict) -> tuple[str, PredicateQuery, int]:
    """Parse a request back into a query; raises on malformed input."""
    from ..surface.parser import parse_context, parse_family, parse_object, parse_signature
    from ..syntax import Mode

    mode = Mode(request.get("mode", "p"))
    sig = parse_signature(request["sig"], mode=mode)
    ctx = parse_context(request["ctx"], mode=mode)
    scope = set(ctx.names())
    term = request.get("term")
    subject = parse_object(term, mode=mode, scope=scope) if term else None
    classifier = parse_family(request["type"], mode=mode, scope=scope)
    q = PredicateQuery(request["pred"], sig, ctx, subject, classifier, mode)
    return request.get("op", "check"), q, int(request.get("fuel", 10_000))


def serve(check, synth=None, stdin=None, stdout=None):
    """Answer requests until EOF.

    ``check(query, fuel) -> Verdict``; ``synth(query, fuel) -> term | None``
    where ``query.subject`` is ``None``.
    """
    from ..surface.printer import pretty

    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    for line in stdin:
        if not line.strip():
            continue
        try:
            op, q, fuel = decode_query(json.loads(line))
            if op == "synth":
                if synth is None:
                    reply = {"verdict": "unknown", "reason": "unsupported"}
                else:
                    w = synth(q, fuel)
                    reply = {"verdict": "holds", "witness": pretty(w)} if w is not None else {"verdict": "fails"}
            else:
                v = check(q, fuel)
                reply = {"verdict": v.status, "reason": v.reason}
        except Exception as exc:  # keep serving; the client maps this to unknown
            reply = {"verdict": "unknown", "reason": f"unsupported: {type(exc).__name__}: {exc}"}
        stdout.write(json.dumps(reply) + "\n")
        stdout.flush()


def main(argv=None):
    """``python -m llfp.predicates.external NAME`` serves a built-in predicate."""
    from . import builtins  # noqa: F401
    from .base import BUILTINS

    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 1 or argv[0] not in BUILTINS:
        print(f"usage: python -m llfp.predicates.external {{{','.join(sorted(BUILTINS))}}}", file=sys.stderr)
        return 2
    impl = BUILTINS[argv[0]]

    def synth(q, fuel):
        return impl.synth(q.sig, q.ctx, q.classifier, fuel)

    serve(impl.check, synth if impl.synth is not None else None)
    return 0


if __name__ == "__main__":
    sys.exit(main())
