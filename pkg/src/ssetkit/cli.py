"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure (a check failed, a horn has
no filler), 2 input or truncation error, 3 resource cap exceeded.
A file argument of ``-`` reads standard input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from . import constructions as cons
from .core import DEFAULT_CAP, SSet, enumerate_maps, validate
from .errors import NotKanError, ParseError, RejectedInput, ResourceError, SSetError, TruncationError
from .hcnerve import MAX_K, discrete_enrichment, hc_nerve, validate_scat
from .invariants import (
    abelianize,
    euler_characteristic,
    homology,
    pi0,
    pi1_presentation,
    pi_n_classes,
    verify_homotopy,
)
from .kan import find_fillers, kan_report, make_horn
from .textio import Document, _Line, _resolve, parse, parse_file, render, to_json

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


@dataclass
class Outcome:
    code: int
    text: str
    data: dict[str, Any] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# input helpers


def _load(path: str, stdin=None) -> Document:
    if path == "-":
        return parse((stdin or sys.stdin).read())
    p = Path(path)
    if not p.exists():
        raise RejectedInput(f"no such file: {path}")
    return parse_file(p)


def _load_kind(path: str, kinds: tuple[str, ...], stdin=None) -> Document:
    doc = _load(path, stdin)
    if doc.kind not in kinds:
        raise RejectedInput(f"expected a {' or '.join(kinds)} document, got {doc.kind}")
    return doc


def _load_sset(path: str, stdin=None) -> SSet:
    return _load_kind(path, ("sset",), stdin).body


def _group_from_arg(arg: str, stdin=None) -> cons.FiniteGroup:
    m = re.fullmatch(r"Z/(\d+)", arg)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise RejectedInput("Z/n needs n >= 1")
        return cons.cyclic_group(n)
    m = re.fullmatch(r"S(\d)", arg)
    if m:
        return cons.symmetric_group(int(m.group(1)))
    doc = _load_kind(arg, ("group", "category"), stdin)
    if doc.kind == "category":
        raise RejectedInput("bg expects a group document; use 'nerve' for categories")
    report = cons.validate_group(doc.body)
    if not report:
        raise RejectedInput(f"not a group: {report.message}")
    return doc.body


def _need_dim(S: SSet, n: int, what: str) -> None:
    if n > S.truncation and not S.finite:
        raise TruncationError(f"{what} needs dimension {n}; truncation is {S.truncation}")


def _sset_output(S: SSet, fmt: str) -> Outcome:
    return Outcome(EXIT_OK, render(S), json.loads(to_json(S)))


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> Outcome:
    doc = _load(args.file, args.stdin)
    if doc.kind == "sset":
        report = validate(doc.body)
    elif doc.kind == "category":
        report = cons.validate_category(doc.body)
    elif doc.kind == "group":
        report = cons.validate_group(doc.body)
    elif doc.kind == "scat":
        report = validate_scat(doc.body)
    elif doc.kind == "map":
        report = doc.body.check()
    else:
        report = verify_homotopy(doc.body)
    return Outcome(EXIT_OK if report else EXIT_FAIL, str(report),
                   {"kind": doc.kind, "ok": bool(report), "message": report.message})


def cmd_std(args) -> Outcome:
    nums = args.params
    shape = args.shape
    want = {"simplex": 1, "boundary": 1, "sphere": 1, "horn": 2, "point": 0}[shape]
    if len(nums) != want:
        raise RejectedInput(f"std {shape} takes {want} integer argument(s)")
    if shape == "simplex":
        S = cons.standard_simplex(nums[0], args.truncate)
    elif shape == "boundary":
        S = cons.boundary(nums[0], args.truncate)
    elif shape == "sphere":
        S = cons.sphere(nums[0], args.truncate)
    elif shape == "horn":
        S = cons.horn(nums[0], nums[1], args.truncate)
    else:
        S = cons.point(args.truncate or 0)
    return _sset_output(S, args.format)


def cmd_kan(args) -> Outcome:
    S = _load_sset(args.file, args.stdin)
    _need_dim(S, args.max_dim, "kan check")
    report = kan_report(S, args.max_dim, inner_only=args.inner, cap=args.cap, jobs=args.jobs)
    data = {
        "ok": report.ok,
        "max_dim": report.max_dim,
        "inner_only": report.inner_only,
        "horns_checked": report.horns_checked,
        "min_fillers": report.min_fillers,
        "max_fillers": report.max_fillers,
        "counterexample": str(report.counterexample) if report.counterexample else None,
        "per_horn_type": {f"{n},{i}": list(v) for (n, i), v in report.per_horn_type.items()},
    }
    return Outcome(EXIT_OK if report.ok else EXIT_FAIL, str(report), data)


def cmd_fill(args) -> Outcome:
    S = _load_sset(args.file, args.stdin)
    n, i = args.n, args.i
    _need_dim(S, n, "fill")
    S = S.covering(n)
    if len(args.faces) != n:
        raise RejectedInput(f"horn Lambda^{n}_{i} needs {n} faces, got {len(args.faces)}")
    faces = []
    for k, raw in enumerate(args.faces):
        try:
            faces.append(_resolve(S, raw, n - 1, _Line(1, raw, 0)))
        except ParseError as exc:
            raise RejectedInput(f"face {k + 1}: {exc.reason}") from None
    h = make_horn(n, i, faces)
    fillers = find_fillers(S, h)
    lines = [str(h), f"fillers: {len(fillers)}"] + [f"  {c.filler}" for c in fillers]
    data = {"horn": str(h), "fillers": [str(c.filler) for c in fillers]}
    if not fillers:
        lines.append(f"no filler for {h}")
    return Outcome(EXIT_OK if fillers else EXIT_FAIL, "\n".join(lines), data)


def cmd_product(args) -> Outcome:
    A = _load_sset(args.left, args.stdin)
    B = _load_sset(args.right, args.stdin)
    return _sset_output(cons.product(A, B), args.format)


def cmd_nerve(args) -> Outcome:
    doc = _load_kind(args.file, ("category", "group"), args.stdin)
    C = doc.body if doc.kind == "category" else cons.group_as_category(doc.body)
    report = cons.validate_category(C)
    if not report:
        raise RejectedInput(f"not a category: {report.message}")
    return _sset_output(cons.nerve(C, args.truncate), args.format)


def cmd_bg(args) -> Outcome:
    return _sset_output(cons.bg(_group_from_arg(args.group, args.stdin), args.truncate), args.format)


def cmd_maps(args) -> Outcome:
    A = _load_sset(args.source, args.stdin)
    B = _load_sset(args.target, args.stdin)
    if not A.finite:
        raise TruncationError("the source of 'maps' must be a complete (finite) presentation")
    maps = enumerate_maps(A, B, cap=args.cap)
    lines = [f"maps: {len(maps)}"]
    listing = []
    for k, F in enumerate(maps):
        sends = [f"{x.base} -> {y}" for x, y in F.items()]
        listing.append(sends)
        if args.list:
            lines.append(f"[{k}] " + ", ".join(sends))
    return Outcome(EXIT_OK, "\n".join(lines), {"count": len(maps), "maps": listing if args.list else None})


def cmd_pi0(args) -> Outcome:
    classes = pi0(_load_sset(args.file, args.stdin))
    lines = [f"components: {len(classes)}"] + ["  " + " ".join(c) for c in classes]
    return Outcome(EXIT_OK, "\n".join(lines), {"count": len(classes), "components": classes})


def _base_vertex(S: SSet, base: str | None) -> str:
    if base is None:
        if not S.nondegenerate(0):
            raise RejectedInput("empty simplicial set has no base vertex")
        return S.nondegenerate(0)[0]
    return base


def cmd_pi1(args) -> Outcome:
    S = _load_sset(args.file, args.stdin)
    _need_dim(S, 2, "pi1")
    P = pi1_presentation(S, _base_vertex(S, args.base))
    simple = P.simplified()
    ab = abelianize(P)
    text = f"presentation: {P}\nsimplified: {simple}\nabelianization: {ab}"
    return Outcome(EXIT_OK, text, {"presentation": str(P), "simplified": str(simple), "abelianization": str(ab)})


def cmd_homology(args) -> Outcome:
    S = _load_sset(args.file, args.stdin)
    if args.deg is not None:
        degrees = [args.deg]
    else:
        degrees = list(range(S.truncation + 1 if S.finite else S.truncation))
    for d in degrees:
        _need_dim(S, d + 1, f"H_{d}")
    groups = [homology(S, d) for d in degrees]
    if args.deg is not None:
        text = str(groups[0])
    else:
        text = "\n".join(f"H_{d} = {g}" for d, g in zip(degrees, groups))
    return Outcome(EXIT_OK, text, {"homology": {str(d): str(g) for d, g in zip(degrees, groups)}})


def cmd_euler(args) -> Outcome:
    chi = euler_characteristic(_load_sset(args.file, args.stdin))
    return Outcome(EXIT_OK, str(chi), {"euler": chi})


def cmd_pin(args) -> Outcome:
    S = _load_sset(args.file, args.stdin)
    _need_dim(S, args.deg + 1, f"pi_{args.deg}")
    count, reps = pi_n_classes(S, _base_vertex(S, args.base), args.deg, cap=args.cap)
    lines = [f"classes: {count}"] + [f"  {r}" for r in reps]
    return Outcome(EXIT_OK, "\n".join(lines), {"count": count, "representatives": [str(r) for r in reps]})


def cmd_hcnerve(args) -> Outcome:
    doc = _load_kind(args.file, ("scat", "category", "group"), args.stdin)
    if doc.kind == "scat":
        C = doc.body
        report = validate_scat(C)
        if not report:
            raise RejectedInput(f"not a simplicial category: {report.message}")
    else:
        cat = doc.body if doc.kind == "category" else cons.group_as_category(doc.body)
        C = discrete_enrichment(cat)
    if args.max_dim > MAX_K:
        raise ResourceError(f"hcnerve is limited to dimension {MAX_K}", {"requested": args.max_dim})
    return _sset_output(hc_nerve(C, args.max_dim, cap=args.cap), args.format)


def cmd_export_cw(args) -> Outcome:
    S = _load_sset(args.file, args.stdin)
    counts = S.counts()
    lines = [f"cells {d}: {c}" for d, c in enumerate(counts)]
    data: dict[str, Any] = {"cells": counts}
    if S.finite:
        chi = euler_characteristic(S)
        lines.append(f"euler: {chi}")
        data["euler"] = chi
    else:
        lines.append(f"euler: undefined (truncated at {S.truncation})")
        data["euler"] = None
    return Outcome(EXIT_OK, "\n".join(lines), data)


# ---------------------------------------------------------------------------
# argument parsing


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ssetkit", description="Finite simplicial sets: checks and invariants.")
    parser.add_argument("--cap", type=int, default=DEFAULT_CAP, help="resource cap for exhaustive searches")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "check the identities of any document")
    p.add_argument("file")

    p = add("std", cmd_std, "print a standard simplicial set")
    p.add_argument("shape", choices=("simplex", "boundary", "horn", "sphere", "point"))
    p.add_argument("params", nargs="*", type=_nonneg)
    p.add_argument("--truncate", type=_nonneg, default=None)

    p = add("kan", cmd_kan, "horn-filling verdict")
    p.add_argument("file")
    p.add_argument("--max-dim", type=_nonneg, default=2)
    p.add_argument("--inner", action="store_true", help="inner horns only")
    p.add_argument("--jobs", type=int, default=1)

    p = add("fill", cmd_fill, "list the fillers of one horn")
    p.add_argument("file")
    p.add_argument("n", type=_nonneg)
    p.add_argument("i", type=_nonneg)
    p.add_argument("faces", nargs="*", help="faces for k != i, e.g. 's0 . 0'")

    p = add("product", cmd_product, "product of two simplicial sets")
    p.add_argument("left")
    p.add_argument("right")

    p = add("nerve", cmd_nerve, "nerve of a category")
    p.add_argument("file")
    p.add_argument("--truncate", type=_nonneg, default=3)

    p = add("bg", cmd_bg, "classifying space of a group (file, Z/n or Sn)")
    p.add_argument("group")
    p.add_argument("--truncate", type=_nonneg, default=3)

    p = add("maps", cmd_maps, "count simplicial maps A -> B")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--list", action="store_true")

    p = add("pi0", cmd_pi0, "connected components")
    p.add_argument("file")

    p = add("pi1", cmd_pi1, "edge-path presentation of the fundamental group")
    p.add_argument("file")
    p.add_argument("--base", default=None)

    p = add("homology", cmd_homology, "normalized simplicial homology")
    p.add_argument("file")
    p.add_argument("--deg", type=_nonneg, default=None)

    p = add("euler", cmd_euler, "Euler characteristic")
    p.add_argument("file")

    p = add("pin", cmd_pin, "classes of based n-simplices in a Kan complex")
    p.add_argument("file")
    p.add_argument("--base", default=None)
    p.add_argument("--deg", type=int, default=1)

    p = add("hcnerve", cmd_hcnerve, "homotopy coherent nerve of a simplicial category")
    p.add_argument("file", help="scat document, or a category/group taken with discrete homs")
    p.add_argument("--max-dim", type=_nonneg, default=2)
    p.add_argument("--discrete", action="store_true", help="accepted for clarity; categories are always discrete")

    p = add("export-cw", cmd_export_cw, "cell counts per dimension and Euler characteristic")
    p.add_argument("file")
    return parser


def _emit(outcome: Outcome, fmt: str, out) -> None:
    if fmt == "json":
        payload = dict(outcome.data)
        payload.setdefault("exit", outcome.code)
        out.write(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        text = outcome.text
        out.write(text if text.endswith("\n") else text + "\n")


def run(argv: list[str] | None = None, stdin=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    args.stdin = stdin
    try:
        outcome = args.func(args)
    except NotKanError as exc:
        outcome = Outcome(EXIT_FAIL, f"error: {exc}", {"error": str(exc)})
    except ResourceError as exc:
        progress = ", ".join(f"{k}={v}" for k, v in sorted(exc.progress.items()))
        stderr.write(f"error: {exc}" + (f" ({progress})" if progress else "") + "\n")
        return EXIT_RESOURCE
    except ParseError as exc:
        stderr.write(f"parse error: {exc}\n")
        return EXIT_INPUT
    except (RejectedInput, TruncationError, SSetError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    _emit(outcome, args.format, stdout)
    return outcome.code


def main() -> None:
    sys.exit(run())
