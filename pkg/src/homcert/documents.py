"""Self-contained JSON documents for every value the CLI exchanges.

One document carries one payload (matrix, module, complex, chain map,
relation, certificate, build tree, generator package or verdict) plus
the ring, so no ambient configuration is needed to interpret it.
Emission is deterministic (sorted keys, fixed indentation, trailing
newline), making documents diff-able and the emit/parse round trip
byte-stable.

Parsing validates invariants, not just syntax: matrix entries must be
canonical representatives, presentation shapes must match, and d^2 = 0
is checked on the declared data (the offending product is included in
the error message).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .complexes import ChainMap, Complex, ComplexError, PeriodicTail
from .duality import BuildTree
from .flatness import FlatCertificate, FlatRelation
from .generator import GeneratorPackage
from .matrices import Mat, MatrixError
from .modules import FPModule, ModuleMap, canonical_double_dual_map, dual_data
from .rings import Fp, RingDescriptor, Zmod, ZZ
from .verdicts import Verdict

FORMAT_VERSION = "1"

PAYLOAD_KINDS = (
    "matrix", "module", "complex", "chain_map", "relation", "certificate",
    "build_tree", "verdict", "generator_package",
)


class DocumentError(ValueError):
    pass


@dataclass(frozen=True)
class Document:
    version: str
    ring: RingDescriptor
    kind: str
    payload: Any


# -- encoding ---------------------------------------------------------


def ring_to_json(ring: RingDescriptor) -> dict:
    if ring.kind == "Z":
        return {"kind": "Z"}
    return {"kind": ring.kind, "n": ring.n}


def matrix_to_json(m: Mat) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": m.row_list()}


def module_to_json(m: FPModule) -> dict:
    return {"side": m.side, "presentation": matrix_to_json(m.presentation)}


def tail_to_json(t: PeriodicTail | None) -> dict | None:
    if t is None:
        return None
    return {"direction": t.direction, "threshold": t.threshold, "period": t.period}


def complex_to_json(c: Complex) -> dict:
    return {
        "side": c.side,
        "ranks": [[j, r] for j, r in sorted(c.ranks.items())],
        "diffs": [[j, matrix_to_json(d)] for j, d in sorted(c.diffs.items())],
        "tail_below": tail_to_json(c.tail_below),
        "tail_above": tail_to_json(c.tail_above),
    }


def chain_map_to_json(f: ChainMap) -> dict:
    return {
        "source": complex_to_json(f.source),
        "target": complex_to_json(f.target),
        "components": [[j, matrix_to_json(m)] for j, m in sorted(f.components.items())],
    }


def relation_to_json(rel: FlatRelation) -> dict:
    return {"a": matrix_to_json(rel.a), "z": matrix_to_json(rel.z)}


def certificate_to_json(cert: FlatCertificate) -> dict:
    return {"ast": matrix_to_json(cert.ast), "q": matrix_to_json(cert.q)}


def build_tree_to_json(tree: BuildTree) -> dict:
    return {
        "kind": tree.kind,
        "target": complex_to_json(tree.target),
        "payload": complex_to_json(tree.payload) if tree.payload is not None else None,
        "shift": tree.shift,
        "components": [[j, matrix_to_json(m)]
                       for j, m in sorted((tree.components or {}).items())],
        "children": [build_tree_to_json(c) for c in tree.children],
        "residual": tree.residual,
    }


def package_to_json(pkg: GeneratorPackage) -> dict:
    return {
        "module": module_to_json(pkg.module),
        "dual": module_to_json(pkg.dual),
        "dual_gens": matrix_to_json(pkg.dual_gens),
        "resolution": complex_to_json(pkg.resolution),
        "dual_complex": complex_to_json(pkg.dual_complex),
        "mu": matrix_to_json(pkg.mu.matrix),
        "comparison": matrix_to_json(pkg.comparison),
        "depth": pkg.depth,
        "complete": pkg.complete,
    }


def _jsonable(value: Any) -> Any:
    """Best-effort conversion of verdict detail values to plain JSON."""
    if isinstance(value, Mat):
        return matrix_to_json(value)
    if isinstance(value, FPModule):
        return module_to_json(value)
    if isinstance(value, ModuleMap):
        return matrix_to_json(value.matrix)
    if isinstance(value, Complex):
        return complex_to_json(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (str, int, bool)) or value is None:
        return value
    if hasattr(value, "__dataclass_fields__"):
        return {f: _jsonable(getattr(value, f)) for f in value.__dataclass_fields__}
    return str(value)


def verdict_to_json(v: Verdict) -> dict:
    return {
        "ok": v.ok,
        "code": v.code,
        "details": _jsonable(v.details),
        "window_relative": v.window_relative,
    }


_ENCODERS = {
    "matrix": matrix_to_json,
    "module": module_to_json,
    "complex": complex_to_json,
    "chain_map": chain_map_to_json,
    "relation": relation_to_json,
    "certificate": certificate_to_json,
    "build_tree": build_tree_to_json,
    "verdict": verdict_to_json,
    "generator_package": package_to_json,
}


def make_document(ring: RingDescriptor, kind: str, payload: Any) -> Document:
    if kind not in PAYLOAD_KINDS:
        raise DocumentError(f"unknown payload kind {kind!r}")
    return Document(FORMAT_VERSION, ring, kind, payload)


def emit_document(doc: Document) -> str:
    body = _ENCODERS[doc.kind](doc.payload)
    obj = {
        "version": doc.version,
        "ring": ring_to_json(doc.ring),
        "kind": doc.kind,
        "payload": body,
    }
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- decoding ---------------------------------------------------------


def _require(cond: bool, message: str):
    if not cond:
        raise DocumentError(message)


def ring_from_json(obj: Any) -> RingDescriptor:
    _require(isinstance(obj, dict) and "kind" in obj, "ring must be an object with a kind")
    kind = obj["kind"]
    try:
        if kind == "Z":
            return ZZ
        if kind == "Zmod":
            return Zmod(int(obj["n"]))
        if kind == "Fp":
            return Fp(int(obj["n"]))
    except (KeyError, ValueError, TypeError) as exc:
        raise DocumentError(f"bad ring parameters: {exc}") from exc
    raise DocumentError(f"unknown ring kind {kind!r}")


def matrix_from_json(ring: RingDescriptor, obj: Any) -> Mat:
    _require(isinstance(obj, dict), "matrix must be an object")
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        entries = obj["entries"]
    except (KeyError, ValueError, TypeError) as exc:
        raise DocumentError(f"bad matrix fields: {exc}") from exc
    _require(isinstance(entries, list) and len(entries) == rows,
             f"matrix needs {rows} entry rows")
    flat = []
    for row in entries:
        _require(isinstance(row, list) and len(row) == cols,
                 f"matrix rows must have {cols} entries")
        for e in row:
            _require(isinstance(e, int), "matrix entries must be integers")
            _require(ring.normalize(e) == e,
                     f"entry {e} is not a canonical representative over {ring}")
            flat.append(e)
    return Mat(ring, rows, cols, tuple(flat))


def module_from_json(ring: RingDescriptor, obj: Any) -> FPModule:
    _require(isinstance(obj, dict), "module must be an object")
    side = obj.get("side")
    _require(side in ("left", "right"), "module side must be left or right")
    pres = matrix_from_json(ring, obj.get("presentation"))
    return FPModule(ring, side, pres)


def tail_from_json(obj: Any) -> PeriodicTail | None:
    if obj is None:
        return None
    _require(isinstance(obj, dict), "tail must be an object or null")
    try:
        return PeriodicTail(int(obj["direction"]), int(obj["threshold"]),
                            int(obj["period"]))
    except (KeyError, ValueError, TypeError, ComplexError) as exc:
        raise DocumentError(f"bad periodic tail: {exc}") from exc


def complex_from_json(ring: RingDescriptor, obj: Any) -> Complex:
    _require(isinstance(obj, dict), "complex must be an object")
    side = obj.get("side")
    _require(side in ("left", "right"), "complex side must be left or right")
    ranks = {}
    for pair in obj.get("ranks", []):
        _require(isinstance(pair, list) and len(pair) == 2, "ranks must be [degree, rank] pairs")
        ranks[int(pair[0])] = int(pair[1])
    diffs = {}
    for pair in obj.get("diffs", []):
        _require(isinstance(pair, list) and len(pair) == 2, "diffs must be [degree, matrix] pairs")
        diffs[int(pair[0])] = matrix_from_json(ring, pair[1])
    try:
        return Complex(ring, side, ranks, diffs,
                       tail_from_json(obj.get("tail_below")),
                       tail_from_json(obj.get("tail_above")))
    except ComplexError as exc:
        raise DocumentError(str(exc)) from exc


def chain_map_from_json(ring: RingDescriptor, obj: Any) -> ChainMap:
    _require(isinstance(obj, dict), "chain map must be an object")
    src = complex_from_json(ring, obj.get("source"))
    tgt = complex_from_json(ring, obj.get("target"))
    comps = {}
    for pair in obj.get("components", []):
        _require(isinstance(pair, list) and len(pair) == 2,
                 "components must be [degree, matrix] pairs")
        j = int(pair[0])
        m = matrix_from_json(ring, pair[1])
        _require(m.rows == tgt.rank(j) and m.cols == src.rank(j),
                 f"component in degree {j} has shape {m.rows}x{m.cols}, expected "
                 f"{tgt.rank(j)}x{src.rank(j)}")
        comps[j] = m
    return ChainMap(src, tgt, comps)


def relation_from_json(ring: RingDescriptor, obj: Any) -> FlatRelation:
    _require(isinstance(obj, dict), "relation must be an object")
    try:
        return FlatRelation(ring, matrix_from_json(ring, obj.get("a")),
                            matrix_from_json(ring, obj.get("z")))
    except MatrixError as exc:
        raise DocumentError(str(exc)) from exc


def certificate_from_json(ring: RingDescriptor, obj: Any) -> FlatCertificate:
    _require(isinstance(obj, dict), "certificate must be an object")
    return FlatCertificate(matrix_from_json(ring, obj.get("ast")),
                           matrix_from_json(ring, obj.get("q")))


def build_tree_from_json(ring: RingDescriptor, obj: Any) -> BuildTree:
    _require(isinstance(obj, dict), "build tree must be an object")
    kind = obj.get("kind")
    _require(kind in ("leaf", "cone", "susp", "summand"), f"unknown node kind {kind!r}")
    comps = {}
    for pair in obj.get("components", []):
        comps[int(pair[0])] = matrix_from_json(ring, pair[1])
    return BuildTree(
        kind,
        complex_from_json(ring, obj.get("target")),
        payload=(complex_from_json(ring, obj["payload"])
                 if obj.get("payload") is not None else None),
        shift=int(obj.get("shift", 0)),
        children=tuple(build_tree_from_json(ring, c) for c in obj.get("children", [])),
        components=comps,
        residual=bool(obj.get("residual", False)),
    )


def verdict_from_json(obj: Any) -> Verdict:
    _require(isinstance(obj, dict), "verdict must be an object")
    return Verdict(bool(obj.get("ok")), str(obj.get("code")),
                   obj.get("details", {}), bool(obj.get("window_relative", False)))


def package_from_json(ring: RingDescriptor, obj: Any) -> GeneratorPackage:
    _require(isinstance(obj, dict), "generator package must be an object")
    module = module_from_json(ring, obj.get("module"))
    dual = module_from_json(ring, obj.get("dual"))
    dual_gens = matrix_from_json(ring, obj.get("dual_gens"))
    resolution = complex_from_json(ring, obj.get("resolution"))
    dual_complex = complex_from_json(ring, obj.get("dual_complex"))
    comparison = matrix_from_json(ring, obj.get("comparison"))
    mu_matrix = matrix_from_json(ring, obj.get("mu"))
    mstarstar, _ = dual_data(dual)
    mu = ModuleMap(module, mstarstar, mu_matrix)
    _require(canonical_double_dual_map(module).matrix == mu_matrix,
             "stored mu is not the canonical double-dual map")
    pi = ModuleMap(FPModule.free(ring, dual.side, dual.rank0), dual,
                   Mat.identity(ring, dual.rank0))
    return GeneratorPackage(module, dual, dual_gens, resolution, pi, mu,
                            dual_complex, comparison,
                            int(obj.get("depth", 0)), bool(obj.get("complete", False)))


def parse_document(text: str) -> Document:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    _require(isinstance(obj, dict), "document must be a JSON object")
    version = obj.get("version")
    _require(version == FORMAT_VERSION, f"unsupported format version {version!r}")
    ring = ring_from_json(obj.get("ring"))
    kind = obj.get("kind")
    _require(kind in PAYLOAD_KINDS, f"unknown payload kind {kind!r}")
    body = obj.get("payload")
    if kind == "matrix":
        payload = matrix_from_json(ring, body)
    elif kind == "module":
        payload = module_from_json(ring, body)
    elif kind == "complex":
        payload = complex_from_json(ring, body)
    elif kind == "chain_map":
        payload = chain_map_from_json(ring, body)
    elif kind == "relation":
        payload = relation_from_json(ring, body)
    elif kind == "certificate":
        payload = certificate_from_json(ring, body)
    elif kind == "build_tree":
        payload = build_tree_from_json(ring, body)
    elif kind == "generator_package":
        payload = package_from_json(ring, body)
    else:
        payload = verdict_from_json(body)
    return Document(version, ring, kind, payload)
