"""Command-line front end: ``hilfor VERB [files] [flags]``."""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from . import bench
from .coprod import coproduct_bounded, coproduct_unbounded, free_algebra_oracle
from .dot import export_dot
from .errors import HilforError
from .filters import spectrum
from .forestspace import HForest, algebra_of, dual_space, validate_forest_space
from .freeext import godel_envelope
from .hilcore import check_prelinear, natural_order, validate_algebra
from .tensor import product_space
from .textio import (
    detect_kind,
    parse_algebra_doc,
    parse_forest_doc,
    serialize_algebra,
    serialize_forest,
)
from .worked import run_example_suite

VERBS = (
    "validate", "order", "spectrum", "dual", "algebra-of", "star", "tensor", "coprod0",
    "coprod", "enum", "certify", "oracle-free", "dot", "examples",
)

EXIT_OK, EXIT_INVALID, EXIT_COUNTEREXAMPLE, EXIT_CAP = 0, 1, 2, 3


class Outcome:
    """Text to print (or write to --out), an optional object for --dot, and an exit code."""

    def __init__(self, text="", obj=None, code=EXIT_OK, summary=None):
        self.text = text
        self.obj = obj
        self.code = code
        self.summary = summary or {}


def _read(path):
    return Path(path).read_text()


def _load(path):
    text = _read(path)
    if detect_kind(text) == "algebra":
        return parse_algebra_doc(text)
    return parse_forest_doc(text)


def _algebra(path):
    doc = _load(path)
    if not hasattr(doc, "algebra"):
        raise HilforError(f"{path}: expected an algebra file")
    return doc


def _forest(path):
    doc = _load(path)
    if not hasattr(doc, "forest"):
        raise HilforError(f"{path}: expected a forest file")
    return doc


def _cmd_validate(args):
    text = _read(args.files[0])
    if detect_kind(text) == "algebra":
        try:
            doc = parse_algebra_doc(text)
        except HilforError as exc:
            report = getattr(exc, "report", None)
            return Outcome(f"invalid: {exc}", code=EXIT_INVALID,
                           summary={"valid": "false", "axioms": ",".join(getattr(report, "checked", []))})
        A = doc.algebra
        report = validate_algebra(A.imp, A.one, A.zero)
        bad = check_prelinear(A)
        lines = [f"valid: {doc.name} ({A.n} elements; axioms {', '.join(report.checked)})",
                 "prelinear: yes" if bad is None else
                 "prelinear: no, l(%s, %s, %s) != 1" % tuple(A.name(x) for x in bad)]
        return Outcome("\n".join(lines), A, summary={"valid": "true", "n": A.n, "prelinear": str(bad is None).lower()})
    try:
        doc = parse_forest_doc(text)
    except HilforError as exc:
        return Outcome(f"invalid: {exc}", code=EXIT_INVALID, summary={"valid": "false"})
    FS = doc.forest
    rep = validate_forest_space(FS)
    return Outcome(f"valid: {doc.name} ({FS.n} nodes, {len(FS.base)} base sets)", FS,
                   summary={"valid": str(rep.valid).lower(), "n": FS.n, "base": len(FS.base)})


def _covers_text(P, name):
    return "\n".join(f"{name(a)} < {name(b)}" for a, b in sorted(P.covers))


def _cmd_order(args):
    doc = _load(args.files[0])
    if hasattr(doc, "algebra"):
        A = doc.algebra
        return Outcome(_covers_text(natural_order(A), A.name), A)
    FS = doc.forest
    return Outcome(_covers_text(FS.poset, FS.name), FS)


def _cmd_spectrum(args):
    A = _algebra(args.files[0]).algebra
    spec = spectrum(A, args.cap_n)
    lines = []
    for k, P in enumerate(spec.points):
        lines.append(f"P{k} = {{{', '.join(P.names())}}}")
    for a, b in sorted(spec.poset.covers):
        lines.append(f"P{a} < P{b}")
    lines.append("root system: " + ("yes" if spec.poset.is_root_system() else "no"))
    return Outcome("\n".join(lines), spec.poset, summary={"points": len(spec.points),
                                                           "root_system": str(spec.poset.is_root_system()).lower()})


def _cmd_dual(args):
    doc = _algebra(args.files[0])
    X = dual_space(doc.algebra, args.cap_n)
    return Outcome(serialize_forest(X, f"X_{doc.name}"), X, summary={"nodes": X.n, "base": len(X.base)})


def _cmd_algebra_of(args):
    doc = _forest(args.files[0])
    A = algebra_of(doc.forest)
    return Outcome(serialize_algebra(A, f"D_{doc.name}"), A, summary={"n": A.n})


def _cmd_star(args):
    doc = _algebra(args.files[0])
    G, psi = godel_envelope(doc.algebra, args.cap_n)
    text = serialize_algebra(G.algebra, f"{doc.name}_star", G.meet, G.join)
    images = " ".join(f"{doc.algebra.name(a)}->{G.algebra.name(psi.map[a])}" for a in range(doc.algebra.n))
    return Outcome(text + f"# psi {images}\n", G.algebra, summary={"n": G.algebra.n})


def _cmd_tensor(args):
    X, Y = _forest(args.files[0]), _forest(args.files[1])
    space = product_space(X.forest, Y.forest, close_base=args.close_base)
    Z = space.forest
    text = serialize_forest(Z, f"{X.name}_x_{Y.name}")
    if space.added:
        text += f"# closure added {len(space.added)} base sets\n"
    return Outcome(text, Z, summary={"nodes": Z.n, "base": len(Z.base), "added": len(space.added)})


def _certify_coprod(C, bounded, args):
    cap = args.cap_n if args.cap_n is not None else (6 if bounded else 5)
    cert = bench.certify_coproduct_universal(C.injL.src, C.injR.src, cap, bounded=bounded, data=C)
    if cert.ok:
        return f"# universal property certified: {cert.checked} cocones, targets <= {cap}\n", EXIT_OK
    return f"# counterexample: {cert.detail}\n", EXIT_COUNTEREXAMPLE


def _cmd_coprod(args, bounded):
    H, G = _algebra(args.files[0]), _algebra(args.files[1])
    if bounded:
        C = coproduct_bounded(H.algebra, G.algebra, close_base=args.close_base)
    else:
        C = coproduct_unbounded(H.algebra, G.algebra, close_base=args.close_base)
    op = "oplus" if bounded else "star"
    text = serialize_algebra(C.result, f"{H.name}_{op}_{G.name}")
    left = " ".join(f"{H.algebra.name(a)}->{C.result.name(C.injL.map[a])}" for a in range(H.algebra.n))
    right = " ".join(f"{G.algebra.name(a)}->{C.result.name(C.injR.map[a])}" for a in range(G.algebra.n))
    text += f"# injL {left}\n# injR {right}\n"
    code = EXIT_OK
    if args.certify:
        extra, code = _certify_coprod(C, bounded, args)
        text += extra
    return Outcome(text, C.result, code, summary={"n": C.result.n, "certified": str(args.certify and code == 0).lower()})


def _cmd_enum(args):
    kind = args.files[0]
    n = int(args.files[1])
    t = time.perf_counter()
    if kind == "forests":
        reps = bench.enumerate_forests(n, cap=args.cap_n)
        lines = [_covers_text(P, str) or "(no covers)" for P in reps]
    elif kind == "hforests":
        reps = [F for F in bench.enumerate_hforests(n, cap=args.cap_n) if F.n == n]
        lines = [serialize_forest(F, f"F{k}").rstrip() for k, F in enumerate(reps)]
    elif kind == "bph":
        reps = bench.enumerate_bph_algebras(n, cap=args.cap_n)
        lines = [serialize_algebra(A, f"B{k}").rstrip() for k, A in enumerate(reps)]
    elif kind == "hilbert":
        reps = bench.enumerate_hilbert_algebras(n, cap=args.cap_n)
        lines = [serialize_algebra(A, f"H{k}").rstrip() for k, A in enumerate(reps)]
    elif kind == "godel":
        reps = bench.godel_algebras(n)
        lines = [serialize_algebra(G.algebra, f"G{k}", G.meet, G.join).rstrip() for k, G in enumerate(reps)]
    else:
        raise HilforError(f"unknown enumeration kind {kind!r} (forests, hforests, bph, hilbert, godel)")
    report = bench.EnumerationReport(n, len(reps), reps, time.perf_counter() - t)
    text = "\n\n".join(lines) + f"\n# {kind} {report.summary()}\n"
    return Outcome(text, summary={"kind": kind, "size": n, "count": report.count})


def _cmd_certify(args):
    kind = args.files[0]
    paths = args.files[1:3]
    if len(paths) != 2:
        raise HilforError("certify needs a kind and two files")
    if kind == "product":
        X, Y = _forest(paths[0]), _forest(paths[1])
        cap = args.cap_n if args.cap_n is not None else 3
        cert = bench.certify_product_universal(X.forest, Y.forest, cap)
    elif kind in ("coprod0", "coprod"):
        H, G = _algebra(paths[0]), _algebra(paths[1])
        bounded = kind == "coprod0"
        cap = args.cap_n if args.cap_n is not None else (6 if bounded else 5)
        cert = bench.certify_coproduct_universal(H.algebra, G.algebra, cap, bounded=bounded)
    else:
        raise HilforError(f"unknown certification kind {kind!r} (product, coprod0, coprod)")
    if cert.ok:
        return Outcome(f"certified: {cert.checked} cones checked", summary={"ok": "true", "checked": cert.checked})
    return Outcome(f"counterexample: {cert.detail}", code=EXIT_COUNTEREXAMPLE,
                   summary={"ok": "false", "checked": cert.checked})


def _cmd_oracle_free(args):
    k = int(args.files[0])
    A = free_algebra_oracle(k, bounded=args.bounded, cap=args.cap_n)
    return Outcome(serialize_algebra(A, f"Free{k}{'_0' if args.bounded else ''}"), A, summary={"n": A.n})


def _cmd_dot(args):
    doc = _load(args.files[0])
    obj = doc.algebra if hasattr(doc, "algebra") else doc.forest
    return Outcome(export_dot(obj, base=args.base, name=doc.name), obj)


def _cmd_examples(args):
    report = run_example_suite()
    return Outcome("\n".join(report.lines()), code=EXIT_OK if report.ok else EXIT_INVALID,
                   summary={"ok": str(report.ok).lower()})


HANDLERS = {
    "validate": _cmd_validate,
    "order": _cmd_order,
    "spectrum": _cmd_spectrum,
    "dual": _cmd_dual,
    "algebra-of": _cmd_algebra_of,
    "star": _cmd_star,
    "tensor": _cmd_tensor,
    "coprod0": lambda a: _cmd_coprod(a, True),
    "coprod": lambda a: _cmd_coprod(a, False),
    "enum": _cmd_enum,
    "certify": _cmd_certify,
    "oracle-free": _cmd_oracle_free,
    "dot": _cmd_dot,
    "examples": _cmd_examples,
}

ARITY = {
    "validate": 1, "order": 1, "spectrum": 1, "dual": 1, "algebra-of": 1, "star": 1, "tensor": 2,
    "coprod0": 2, "coprod": 2, "enum": 2, "certify": 3, "oracle-free": 1, "dot": 1, "examples": 0,
}


class _Parser(argparse.ArgumentParser):
    """Usage errors count as invalid input (exit 1), not as counterexamples."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="hilfor", description=__doc__)
    p.add_argument("verb", choices=VERBS)
    p.add_argument("files", nargs="*", help="input files (enum: KIND N; certify: KIND A B; oracle-free: K)")
    p.add_argument("--out", help="write the main result here instead of stdout")
    p.add_argument("--dot", help="also write a DOT Hasse diagram of the result")
    p.add_argument("--certify", action="store_true", help="run universal-property certification")
    p.add_argument("--close-base", action="store_true", help="saturate the product base if the audit finds gaps")
    p.add_argument("--cap-n", type=int, default=None, help="size cap for enumerations and certification")
    p.add_argument("--format", choices=("text", "summary"), default="text")
    p.add_argument("--base", type=int, default=None, help="highlight this base set in DOT output")
    p.add_argument("--bounded", action="store_true", help="oracle-free: keep 0 as a constant")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def run(argv):
    """Run one command; returns (exit code, stdout text)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if len(args.files) != ARITY[args.verb]:
        parser.error(f"{args.verb} takes {ARITY[args.verb]} positional argument(s), got {len(args.files)}")
    try:
        out = HANDLERS[args.verb](args)
    except HilforError as exc:
        return exc.exit_code, f"error: {exc}\n"
    except (OSError, ValueError) as exc:
        return EXIT_INVALID, f"error: {exc}\n"
    if args.format == "summary":
        body = "".join(f"{k}={v}\n" for k, v in sorted(out.summary.items()))
        body = f"verb={args.verb}\nexit={out.code}\n" + body
    else:
        body = out.text if out.text.endswith("\n") else out.text + "\n"
    if args.dot and out.obj is not None:
        base = args.base if isinstance(out.obj, HForest) else None
        Path(args.dot).write_text(export_dot(out.obj, base=base))
    if args.out:
        Path(args.out).write_text(body)
        body = ""
    return out.code, body


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    logging.basicConfig(level=logging.INFO if "-v" in argv or "--verbose" in argv else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
