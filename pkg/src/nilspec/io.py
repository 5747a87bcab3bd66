"""JSON files for groups, automorphisms and spectrum reports.

Generators are 1-based in files and 0-based in memory. Integers outside the
53-bit safe range are written as decimal strings; the loaders accept either.
"""

from __future__ import annotations

import json
from typing import Any

from .group import GroupError, TwoStepGroup
from .intlin import IntMatrix
from .morphism import EndoData, MorphismError, from_matrices

SAFE = 2 ** 53 - 1


class FormatError(ValueError):
    """Malformed input; the message starts with the offending field."""

    def __init__(self, field: str, problem: str):
        super().__init__(f"{field}: {problem}")
        self.field = field


def encode_int(x: int):
    return x if -SAFE <= x <= SAFE else str(x)


def decode_int(v: Any, field: str) -> int:
    if isinstance(v, bool):
        raise FormatError(field, "expected an integer, got a boolean")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v.strip(), 10)
        except ValueError:
            raise FormatError(field, f"not an integer: {v!r}") from None
    if isinstance(v, float) and v.is_integer() and abs(v) <= SAFE:
        return int(v)
    raise FormatError(field, f"expected an integer, got {type(v).__name__}")


def _int_list(v: Any, field: str, length: int | None = None) -> list[int]:
    if not isinstance(v, list):
        raise FormatError(field, "expected a list")
    if length is not None and len(v) != length:
        raise FormatError(field, f"expected {length} entries, got {len(v)}")
    return [decode_int(x, f"{field}[{k}]") for k, x in enumerate(v)]


def _obj(v: Any, field: str) -> dict:
    if not isinstance(v, dict):
        raise FormatError(field, "expected a JSON object")
    return v


def _need(d: dict, key: str, field: str):
    if key not in d:
        raise FormatError(f"{field}{key}", "missing")
    return d[key]


def loads_json(text: str, field: str = "input") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(field, f"invalid JSON ({exc.msg} at line {exc.lineno})") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


# --- matrices ---------------------------------------------------------------

def matrix_to_json(M: IntMatrix) -> list[list]:
    return [[encode_int(x) for x in row] for row in M.tolist()]


def matrix_from_json(v: Any, field: str, shape: tuple[int, int]) -> IntMatrix:
    rows, cols = shape
    if not isinstance(v, list):
        raise FormatError(field, "expected a list of rows")
    if len(v) != rows:
        raise FormatError(field, f"expected {rows} rows, got {len(v)}")
    data = [_int_list(r, f"{field}[{k}]", cols) for k, r in enumerate(v)]
    return IntMatrix.from_rows(data, cols=cols)


# --- groups -----------------------------------------------------------------

def group_to_json(G: TwoStepGroup) -> dict:
    return {
        "n": G.n,
        "m": G.m,
        "commutators": [
            {"i": i + 1, "j": j + 1, "z": [encode_int(x) for x in c]} for (i, j), c in G.comm
        ],
    }


def group_from_json(v: Any) -> TwoStepGroup:
    d = _obj(v, "group")
    n = decode_int(_need(d, "n", ""), "n")
    m = decode_int(_need(d, "m", ""), "m")
    if n < 0:
        raise FormatError("n", "must be nonnegative")
    if m < 0:
        raise FormatError("m", "must be nonnegative")
    comms = d.get("commutators", [])
    if not isinstance(comms, list):
        raise FormatError("commutators", "expected a list")
    out = []
    seen = set()
    for k, entry in enumerate(comms):
        f = f"commutators[{k}]"
        entry = _obj(entry, f)
        i = decode_int(_need(entry, "i", f + "."), f + ".i")
        j = decode_int(_need(entry, "j", f + "."), f + ".j")
        z = _int_list(_need(entry, "z", f + "."), f + ".z", m)
        if not 1 <= i <= n:
            raise FormatError(f + ".i", f"{i} out of range 1..{n}")
        if not 1 <= j <= n:
            raise FormatError(f + ".j", f"{j} out of range 1..{n}")
        if i >= j:
            raise FormatError(f, f"need i < j, got i = {i}, j = {j}")
        if (i, j) in seen:
            raise FormatError(f, f"pair ({i}, {j}) given twice")
        seen.add((i, j))
        out.append(((i - 1, j - 1), tuple(z)))
    try:
        return TwoStepGroup(n, m, tuple(out))
    except GroupError as exc:
        raise FormatError("group", str(exc)) from None


def load_group(text: str) -> TwoStepGroup:
    return group_from_json(loads_json(text, "group"))


# --- automorphisms -----------------------------------------------------------

def aut_to_json(e: EndoData) -> dict:
    return {"A": matrix_to_json(e.A), "B": matrix_to_json(e.B), "D": matrix_to_json(e.D)}


def aut_from_json(v: Any, G: TwoStepGroup) -> EndoData:
    d = _obj(v, "automorphism")
    n, m = G.n, G.m
    A = matrix_from_json(_need(d, "A", ""), "A", (n, n))
    B = matrix_from_json(d["B"], "B", (m, n)) if "B" in d else None
    D = matrix_from_json(d["D"], "D", (m, m)) if d.get("D") is not None else None
    try:
        return from_matrices(G, A, B, D)
    except MorphismError as exc:
        raise FormatError("D", str(exc)) from None
    except GroupError as exc:
        raise FormatError("A", str(exc)) from None


def load_aut(text: str, G: TwoStepGroup) -> EndoData:
    return aut_from_json(loads_json(text, "automorphism"), G)


# --- spectrum ---------------------------------------------------------------

def spectrum_to_json(sample) -> dict:
    return {
        "height": sample.height,
        "finite_values": [encode_int(v) for v in sample.finite_values],
        "witnesses": {str(v): aut_to_json(sample.witnesses[v]) for v in sample.finite_values},
        "candidates_scanned": sample.candidates_scanned,
        "automorphisms_found": sample.automorphisms_found,
        "truncated": sample.truncated,
    }
