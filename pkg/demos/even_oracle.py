"""A user-supplied predicate served over the line protocol.

``Even`` holds of a closed unary numeral with an even value.  The checker
starts this script once and sends one JSON request per line; see
``oracles.json`` for how it is wired in.
"""

from llfp.errors import NonNumeral
from llfp.predicates import Verdict
from llfp.predicates.builtins import numeral_value
from llfp.predicates.external import serve


def even(query, fuel):
    try:
        n = numeral_value(query.subject)
    except NonNumeral as exc:
        return Verdict("fails", f"not a numeral: {exc}")
    return Verdict("holds") if n % 2 == 0 else Verdict("fails", f"{n} is odd")


if __name__ == "__main__":
    serve(even)
