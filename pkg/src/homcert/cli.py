"""Command-line interface over the document format.

Every command reads JSON documents, performs one exact computation and
writes one document back (machine format) or a short human summary
(text format).  Exit status: 0 when the computation succeeds and any
verdict passes, 1 when a checked property fails (the counterexample
verdict is still printed as a document), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys

from .complexes import (ChainMap, Complex, ComplexError, dualize_complex,
                        homology, split_exactness_check)
from .documents import (Document, DocumentError, emit_document, make_document,
                        module_to_json, parse_document)
from .duality import decompose_resolution, dualize_chain_map, rebuild_verify
from .flatness import (EngineConfig, FlatRelation, cycle_flatness_probe,
                       flat_certificate, pd_bound_collapse)
from .generator import build_generator, resolve_module, verify_generator_quasi_iso
from .matrices import MatrixError
from .modules import FPModule, dualize_module
from .verdicts import Verdict


class UsageError(ValueError):
    pass


def _parse_window(text: str) -> tuple[int, int]:
    try:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    except ValueError as exc:
        raise UsageError(f"window must look like a..b, got {text!r}") from exc
    if lo > hi:
        raise UsageError(f"empty window {text!r}")
    return lo, hi


def _read_doc(path: str, *kinds: str) -> Document:
    try:
        with open(path) as fh:
            doc = parse_document(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    if kinds and doc.kind not in kinds:
        raise UsageError(
            f"{path}: expected a {' or '.join(kinds)} document, got {doc.kind}")
    return doc


def _module_invariants(m: FPModule) -> str:
    free, torsion = m.abelian_invariants()
    parts = ["R^%d" % free] if free else []
    parts += ["R/(%d)" % t for t in torsion]
    return " + ".join(parts) if parts else "0"


def _print(args, doc: Document, text: str):
    if args.format == "machine":
        sys.stdout.write(emit_document(doc))
    else:
        print(text)


def _verdict_exit(args, ring, v: Verdict) -> int:
    _print(args, make_document(ring, "verdict", v), str(v))
    return 0 if v.ok else 1


def cmd_resolve(args) -> int:
    doc = _read_doc(args.input, "module")
    c, complete = resolve_module(doc.payload, args.depth)
    span = c.support()
    note = "complete" if complete else f"periodic/truncated at depth {args.depth}"
    _print(args, make_document(doc.ring, "complex", c),
           f"resolution in degrees {span[0]}..{span[1]} ({note})"
           if span else "zero resolution")
    return 0


def cmd_dualize(args) -> int:
    doc = _read_doc(args.input, "module", "complex", "chain_map")
    if doc.kind == "module":
        out = make_document(doc.ring, "module", dualize_module(doc.payload))
        text = f"dual module: {_module_invariants(out.payload)}"
    elif doc.kind == "complex":
        out = make_document(doc.ring, "complex", dualize_complex(doc.payload))
        text = "dual complex"
    else:
        f = doc.payload
        spans = [s for s in (f.source.support(), f.target.support()) if s]
        lo = -max((s[1] for s in spans), default=0)
        hi = -min((s[0] for s in spans), default=0)
        out = make_document(doc.ring, "chain_map", dualize_chain_map(f, lo, hi))
        text = f"dual chain map in degrees {lo}..{hi}"
    _print(args, out, text)
    return 0


def cmd_generator(args) -> int:
    doc = _read_doc(args.input, "module")
    pkg = build_generator(doc.payload, args.depth)
    span = pkg.resolution.support()
    reach = f" to degree {span[0]}" if span else " (zero dual)"
    _print(args, make_document(doc.ring, "generator_package", pkg),
           f"package for {_module_invariants(pkg.module)}; resolution "
           f"{'complete' if pkg.complete else 'periodic'}{reach}")
    return 0


def cmd_check_qiso(args) -> int:
    pkg = _read_doc(args.package, "generator_package").payload
    qdoc = _read_doc(args.target, "complex")
    window = _parse_window(args.window)
    v = verify_generator_quasi_iso(pkg, qdoc.payload, window)
    return _verdict_exit(args, qdoc.ring, v)


def cmd_homology(args) -> int:
    doc = _read_doc(args.input, "complex")
    lo, hi = _parse_window(args.window)
    mods = {j: homology(doc.payload, j) for j in range(lo, hi + 1)}
    details = {str(j): module_to_json(m) for j, m in mods.items()}
    v = Verdict(True, "homology_computed", details)
    _print(args, make_document(doc.ring, "verdict", v),
           "\n".join(f"H^{j} = {_module_invariants(m)}" for j, m in mods.items()))
    return 0


def cmd_flat_cert(args) -> int:
    doc = _read_doc(args.relation, "relation")
    rel: FlatRelation = doc.payload
    if args.complex is None:
        cert = flat_certificate(rel)
        _print(args, make_document(doc.ring, "certificate", cert),
               f"certificate with {cert.ast.cols} witnesses")
        return 0
    qdoc = _read_doc(args.complex, "complex")
    v = cycle_flatness_probe(qdoc.payload, args.degree, rel)
    if v.ok:
        cert = v.details["certificate"].certificate
        _print(args, make_document(doc.ring, "certificate", cert),
               f"certified in degree {args.degree} with {cert.ast.cols} witnesses")
        return 0
    return _verdict_exit(args, doc.ring, v)


def cmd_decompose(args) -> int:
    doc = _read_doc(args.input, "module", "complex")
    if doc.kind == "module":
        q, _ = resolve_module(doc.payload, args.depth)
    else:
        q = doc.payload
    tree = decompose_resolution(q, args.depth)
    span = tree.target.support() or (0, 0)
    window = _parse_window(args.window) if args.window else (span[0], span[1])
    v = rebuild_verify(tree, window)
    if not v.ok:
        return _verdict_exit(args, doc.ring, v)
    _print(args, make_document(doc.ring, "build_tree", tree),
           f"{tree.free_leaf_count()} free leaves"
           + ("; residual window-relative leaf" if tree.has_residual() else ""))
    return 0


def cmd_split_check(args) -> int:
    doc = _read_doc(args.input, "complex")
    window = _parse_window(args.window)
    if args.bound is not None:
        v = pd_bound_collapse(doc.payload, EngineConfig(args.bound), window)
    else:
        v = split_exactness_check(doc.payload, window)
    return _verdict_exit(args, doc.ring, v)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homcert",
        description="exact homological algebra over Z, Z/n and F_p")
    parser.add_argument("--format", choices=("text", "machine"),
                        default="machine", help="output style")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for randomized helpers; the commands "
                        "here are deterministic and ignore it")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("resolve", help="free resolution of a module")
    p.add_argument("input")
    p.add_argument("--depth", type=int, default=24)
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("dualize", help="dual of a module, complex or chain map")
    p.add_argument("input")
    p.set_defaults(func=cmd_dualize)

    p = sub.add_parser("generator", help="compact generator package for a module")
    p.add_argument("input")
    p.add_argument("--depth", type=int, default=24)
    p.set_defaults(func=cmd_generator)

    p = sub.add_parser("check-qiso",
                       help="verify the comparison map against a target complex")
    p.add_argument("package")
    p.add_argument("target")
    p.add_argument("--window", default="-4..4")
    p.set_defaults(func=cmd_check_qiso)

    p = sub.add_parser("homology", help="homology modules in a window")
    p.add_argument("input")
    p.add_argument("--window", required=True)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("flat-cert",
                       help="flatness certificate for a relation, optionally "
                       "among cycles of a complex")
    p.add_argument("relation")
    p.add_argument("complex", nargs="?", default=None)
    p.add_argument("--degree", type=int, default=0)
    p.set_defaults(func=cmd_flat_cert)

    p = sub.add_parser("decompose",
                       help="build tree of a resolution over single-free leaves")
    p.add_argument("input")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--window", default=None)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("split-check",
                       help="split exactness, or the projective-dimension "
                       "collapse when --bound is given")
    p.add_argument("input")
    p.add_argument("--window", required=True)
    p.add_argument("--bound", type=int, default=None)
    p.set_defaults(func=cmd_split_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (UsageError, DocumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MatrixError, ComplexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
