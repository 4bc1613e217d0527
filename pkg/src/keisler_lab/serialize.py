"""Canonical JSON for structures, weights and rationals, plus digests.

Serialization is deterministic: keys are sorted, sets are emitted in
sorted order and rationals are written as {"num", "den"} in lowest terms
with a convenience decimal.  Loaders validate shape and reject edges that
are not sorted ascending.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from fractions import Fraction
from typing import Union

from .coloring import WeightedHypergraph
from .structures import (BipartiteGraph, Feq2Structure, Hypergraph,
                         Tournament, build_tp2_grid, cyclic_graph,
                         random_maximal_free, search_small_alpha)


class FormatError(ValueError):
    """Input file or payload violates the documented format."""


def rational_to_json(value: Fraction) -> dict:
    value = Fraction(value)
    return {"num": value.numerator, "den": value.denominator,
            "decimal": float(value)}


def rational_from_json(payload) -> Fraction:
    if not isinstance(payload, dict) or "num" not in payload or "den" not in payload:
        raise FormatError(f"not a rational: {payload!r}")
    num, den = payload["num"], payload["den"]
    if not isinstance(num, int) or not isinstance(den, int) or den == 0:
        raise FormatError(f"not a rational: {payload!r}")
    return Fraction(num, den)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"cannot parse rational {text!r}: {exc}") from None


# ---------------------------------------------------------------------------
# Structures
# ---------------------------------------------------------------------------

Storable = Union[Hypergraph, Tournament, Feq2Structure]


def structure_to_json(structure: Storable) -> dict:
    if isinstance(structure, Hypergraph):
        return {"kind": "hypergraph", "r": structure.r, "n": structure.n,
                "edges": [list(e) for e in sorted(structure.edges)]}
    if isinstance(structure, Tournament):
        return {"kind": "tournament", "n": structure.n,
                "arcs": [list(a) for a in sorted(structure.arcs)]}
    if isinstance(structure, Feq2Structure):
        return {"kind": "feq2", "objects": structure.objects,
                "parameters": structure.parameters,
                "classes": [[list(b) for b in blocks]
                            for blocks in structure.classes]}
    raise FormatError(f"cannot serialize {type(structure).__name__}")


def _expect_int(value, what: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise FormatError(f"{what} must be an integer, got {value!r}")
    return value


def structure_from_json(payload: dict) -> Storable:
    if not isinstance(payload, dict):
        raise FormatError("structure payload must be an object")
    kind = payload.get("kind")
    if kind == "hypergraph":
        r = _expect_int(payload.get("r"), "r")
        n = _expect_int(payload.get("n"), "n")
        edges = payload.get("edges")
        if not isinstance(edges, list):
            raise FormatError("edges must be a list")
        seen = set()
        canon = []
        for e in edges:
            if not isinstance(e, list) or any(
                    not isinstance(v, int) for v in e):
                raise FormatError(f"edge {e!r} must be a list of integers")
            if e != sorted(e):
                raise FormatError(f"edge {e} is not sorted ascending")
            t = tuple(e)
            if t in seen:
                raise FormatError(f"duplicate edge {e}")
            seen.add(t)
            canon.append(t)
        try:
            return Hypergraph(r, n, frozenset(canon))
        except ValueError as exc:
            raise FormatError(str(exc)) from None
    if kind == "tournament":
        n = _expect_int(payload.get("n"), "n")
        arcs = payload.get("arcs")
        if not isinstance(arcs, list) or any(
                not isinstance(a, list) or len(a) != 2 for a in arcs):
            raise FormatError("arcs must be a list of pairs")
        try:
            return Tournament(n, frozenset((a[0], a[1]) for a in arcs))
        except ValueError as exc:
            raise FormatError(str(exc)) from None
    if kind == "feq2":
        objects = _expect_int(payload.get("objects"), "objects")
        parameters = _expect_int(payload.get("parameters"), "parameters")
        classes = payload.get("classes")
        if not isinstance(classes, list):
            raise FormatError("classes must be a list")
        try:
            return Feq2Structure(objects, parameters,
                                 tuple(tuple(tuple(b) for b in blocks)
                                       for blocks in classes))
        except (TypeError, ValueError) as exc:
            raise FormatError(str(exc)) from None
    raise FormatError(f"unknown structure kind {kind!r}")


def weighted_to_json(h: WeightedHypergraph) -> dict:
    return {"kind": "weighted-hypergraph", "n": h.n, "r": h.r,
            "weights": [[list(key), {"num": w.numerator, "den": w.denominator}]
                        for key, w in h.weights]}


def weighted_from_json(payload: dict) -> WeightedHypergraph:
    if not isinstance(payload, dict):
        raise FormatError("weighted hypergraph payload must be an object")
    n = _expect_int(payload.get("n"), "n")
    r = _expect_int(payload.get("r"), "r")
    raw = payload.get("weights")
    if not isinstance(raw, list):
        raise FormatError("weights must be a list")
    items = []
    for entry in raw:
        if not isinstance(entry, list) or len(entry) != 2:
            raise FormatError(f"weight entry {entry!r} must be [key, rational]")
        key, w = entry
        if not isinstance(key, list) or any(not isinstance(v, int) for v in key):
            raise FormatError(f"weight key {key!r} must be a list of integers")
        items.append((tuple(key), rational_from_json(w)))
    try:
        return WeightedHypergraph(n, r, tuple(
            (tuple(sorted(key)), w) for key, w in items))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


# ---------------------------------------------------------------------------
# Canonical bytes, digests and atomic writes
# ---------------------------------------------------------------------------

def canonical_dumps(payload) -> str:
    """Stable human-readable JSON: sorted keys, two-space indent."""
    return json.dumps(payload, sort_keys=True, indent=2,
                      ensure_ascii=True) + "\n"


def digest(payload) -> str:
    """sha256 over compact sorted-key JSON."""
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=True).encode("utf-8")
    return "sha256:" + hashlib.sha256(blob).hexdigest()


def structure_digest(structure: Storable) -> str:
    return digest(structure_to_json(structure))


def atomic_write_text(path: str, text: str) -> None:
    """Write via a temporary file in the target directory plus rename, so a
    crash never leaves a half-written report."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


def load_structure(path: str) -> Storable:
    return structure_from_json(load_json(path))


def load_weighted(path: str) -> WeightedHypergraph:
    return weighted_from_json(load_json(path))


# ---------------------------------------------------------------------------
# Inline structure specs (generator mini-syntax)
# ---------------------------------------------------------------------------

def _parse_seed_field(field: str, what: str) -> int:
    if not field.startswith("seed="):
        raise FormatError(f"{what}: expected seed=<int>, got {field!r}")
    try:
        return int(field[len("seed="):])
    except ValueError:
        raise FormatError(f"{what}: bad seed {field!r}") from None


def parse_structure_spec(spec: str) -> Storable:
    """Resolve an inline structure spec.

    Forms: gen:<n>:<r>:<s>:seed=<k> for a random maximal free hypergraph,
    circulant:<n>:<d1>,<d2>,... for a circulant graph,
    searchalpha:<n>:<s>:<target>:<budget>:seed=<k> for the alpha search,
    tp2grid:<k> for the path-parameter grid structure,
    and file:<path> (or a bare path) for a structure file.
    """
    if spec.startswith("gen:"):
        fields = spec.split(":")
        if len(fields) != 5:
            raise FormatError(f"gen spec needs gen:n:r:s:seed=..., got {spec!r}")
        try:
            n, r, s = (int(x) for x in fields[1:4])
        except ValueError:
            raise FormatError(f"bad numeric field in {spec!r}") from None
        seed = _parse_seed_field(fields[4], spec)
        try:
            return random_maximal_free(n, r, s, seed)
        except ValueError as exc:
            raise FormatError(f"{spec!r}: {exc}") from None
    if spec.startswith("circulant:"):
        fields = spec.split(":")
        if len(fields) != 3:
            raise FormatError(
                f"circulant spec needs circulant:n:d1,d2,..., got {spec!r}")
        try:
            n = int(fields[1])
            conns = [int(d) for d in fields[2].split(",") if d != ""]
        except ValueError:
            raise FormatError(f"bad numeric field in {spec!r}") from None
        try:
            return cyclic_graph(n, conns)
        except ValueError as exc:
            raise FormatError(f"{spec!r}: {exc}") from None
    if spec.startswith("searchalpha:"):
        fields = spec.split(":")
        if len(fields) != 6:
            raise FormatError(
                "searchalpha spec needs searchalpha:n:s:target:budget:seed=..., "
                f"got {spec!r}")
        try:
            n, s, target, budget = (int(x) for x in fields[1:5])
        except ValueError:
            raise FormatError(f"bad numeric field in {spec!r}") from None
        seed = _parse_seed_field(fields[5], spec)
        try:
            result = search_small_alpha(n, s, target, budget=budget, seed=seed)
        except ValueError as exc:
            raise FormatError(f"{spec!r}: {exc}") from None
        if not result.found:
            raise FormatError(
                f"{spec!r}: no graph with alpha <= {target} found "
                f"(best was {result.alpha})")
        return result.graph
    if spec.startswith("tp2grid:"):
        fields = spec.split(":")
        if len(fields) != 2:
            raise FormatError(f"tp2grid spec needs tp2grid:k, got {spec!r}")
        try:
            k = int(fields[1])
        except ValueError:
            raise FormatError(f"bad numeric field in {spec!r}") from None
        try:
            return build_tp2_grid(k)
        except ValueError as exc:
            raise FormatError(f"{spec!r}: {exc}") from None
    path = spec[len("file:"):] if spec.startswith("file:") else spec
    if not os.path.exists(path):
        raise FormatError(f"no such structure file: {path}")
    return load_structure(path)
