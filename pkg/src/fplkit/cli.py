"""Command-line front end: ``fplkit count | patterns | verify | tilings``.

Exit codes: 0 success (or every report verified/skipped), 1 usage or domain
error, 2 at least one refuted report.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Any, Sequence

from . import tilings, verify
from .cache import NullCache, ResultCache
from .enumeration import SymmetryClass, check_size, count_class, count_formula_A, refined_polynomial
from .errors import FplError
from .linkpat import pattern_counts

EXIT_OK, EXIT_ERROR, EXIT_REFUTED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2, which means "refuted" here
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def parse_range(text: str) -> list[int]:
    """``"3"`` -> [3]; ``"1..4"`` -> [1, 2, 3, 4]; ``"1,3,5"`` -> [1, 3, 5]."""
    out: list[int] = []
    for part in text.split(","):
        m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", part)
        if not m:
            raise UsageError(f"bad size range {text!r}")
        lo = int(m.group(1))
        hi = int(m.group(2)) if m.group(2) else lo
        if hi < lo:
            raise UsageError(f"empty range {part!r}")
        out.extend(range(lo, hi + 1))
    return out


def _emit(record: Any, path: str | None) -> None:
    text = json.dumps(record, indent=2, sort_keys=True)
    if path in (None, "-"):
        print(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _cache(args) -> ResultCache | NullCache:
    if getattr(args, "no_cache", False):
        return NullCache()
    return ResultCache(args.cache_dir)


# --- count ------------------------------------------------------------------------------


def formula_count(size: int, cls: SymmetryClass, jobs: int = 1) -> int:
    """Class size from the product identities, enumerating only the half-turn factor."""
    check_size(size, cls)
    if cls is SymmetryClass.PLAIN:
        return count_formula_A(size)
    if cls is SymmetryClass.QUARTER_TURN:
        n = size // 4
        return count_class(2 * n, SymmetryClass.HALF_TURN, jobs) * count_formula_A(n) ** 2
    if cls is SymmetryClass.QUASI_QUARTER_TURN:
        n = (size - 2) // 4
        return count_class(2 * n + 1, SymmetryClass.HALF_TURN, jobs) * count_formula_A(n + 1) * count_formula_A(n)
    raise UsageError("no product formula for the half-turn class; drop --formula-only")


def cmd_count(args) -> int:
    cls = SymmetryClass.parse(args.cls)
    check_size(args.size, cls)
    record: dict[str, Any] = {"operation": "count", "size": args.size, "class": cls.value}
    cache = _cache(args)
    if args.formula_only:
        if args.refined:
            raise UsageError("--refined needs enumeration; drop --formula-only")
        record["method"] = "formula"
        record["count"] = str(formula_count(args.size, cls, args.jobs))
    else:
        record["method"] = "enumeration"
        poly = cache.get("refined", args.size, cls.value)
        if poly is None:
            poly = [str(c) for c in refined_polynomial(args.size, cls, args.jobs)]
            cache.put("refined", args.size, cls.value, poly)
        record["count"] = str(sum(int(c) for c in poly))
        if args.refined:
            record["coefficients"] = poly
    if args.json:
        _emit(record, args.json)
    else:
        print(" ".join(record["coefficients"]) if args.refined else record["count"])
    return EXIT_OK


# --- patterns -------------------------------------------------------------------------------


def cmd_patterns(args) -> int:
    cls = SymmetryClass.parse(args.cls)
    cache = _cache(args)
    rows = cache.get("patterns", args.size, cls.value)
    if rows is None:
        dist = pattern_counts(args.size, cls)
        rows = [[w, str(c)] for w, c in dist.records()]
        cache.put("patterns", args.size, cls.value, rows)
    total = sum(int(c) for _, c in rows)
    if args.json:
        _emit(
            {
                "operation": "patterns",
                "size": args.size,
                "class": cls.value,
                "total": str(total),
                "distribution": [{"word": w, "count": c} for w, c in rows],
            },
            args.json,
        )
    else:
        width = max((len(w) for w, _ in rows), default=4)
        for w, c in rows:
            print(f"{w:<{width}}  {c}")
        print(f"{'total':<{width}}  {total}")
    return EXIT_OK


# --- verify ------------------------------------------------------------------------------------


def cmd_verify(args) -> int:
    verify.lookup(args.identity)
    if args.n:
        sizes = parse_range(args.n)
    elif args.max_n is not None:
        sizes = list(range(verify.min_size(args.identity), args.max_n + 1))
    else:
        raise UsageError("give --n or --max-n")
    reports = [verify.run(args.identity, s, force=args.force, jobs=args.jobs) for s in sizes]
    stream = sys.stderr if args.json == "-" else sys.stdout
    for r in reports:
        print(r.summary(), file=stream)
    if args.json:
        _emit([r.to_record() for r in reports], args.json)
    return EXIT_REFUTED if any(r.status == verify.REFUTED for r in reports) else EXIT_OK


# --- tilings -----------------------------------------------------------------------------------


def tiling_count(kind: str, n: int, method: str) -> int:
    if n < 1:
        raise UsageError("n must be at least 1")
    if kind == "cssc":
        if method == "brute":
            return tilings.count_cssc(2 * n)
        if method == "formula":
            return count_formula_A(n) ** 2
        raise UsageError(f"method {method!r} is only available for qcsscpp")
    return tilings.count_qcsscpp(2 * n + 1, method)


def cmd_tilings(args) -> int:
    size = 2 * args.n + (1 if args.kind == "qcsscpp" else 0)
    cache = _cache(args)
    value = cache.get("tilings", size, args.kind, args.method)
    if value is None:
        value = str(tiling_count(args.kind, args.n, args.method))
        cache.put("tilings", size, args.kind, value, args.method)
    record = {"operation": "tilings", "kind": args.kind, "n": args.n, "size": size, "method": args.method, "count": value}
    if args.json:
        _emit(record, args.json)
    else:
        print(value)
    return EXIT_OK


# --- parser ------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fplkit", description="Exact enumeration of symmetric fully-packed loops.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write a JSON record to PATH ('-' for stdout)")
    common.add_argument("--jobs", type=int, default=1, metavar="K", help="worker processes for enumeration")
    common.add_argument("--cache-dir", metavar="PATH", help="result cache directory (default: $FPLKIT_CACHE_DIR or ~/.cache/fplkit)")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the result cache")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    classes = [c.value for c in SymmetryClass]

    p = sub.add_parser("count", parents=[common], help="size of a symmetry class")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--class", dest="cls", choices=classes, default="plain")
    p.add_argument("--refined", action="store_true", help="print coefficients by first-row position")
    p.add_argument("--formula-only", action="store_true", help="use the product identities instead of enumerating the class")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("patterns", parents=[common], help="per-pattern counts of a class")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--class", dest="cls", choices=classes, default="plain")
    p.set_defaults(func=cmd_patterns)

    p = sub.add_parser("verify", parents=[common], help="check an identity at a range of sizes")
    p.add_argument("identity", help=", ".join(verify.IDENTITIES))
    p.add_argument("--n", help="size parameter or range, e.g. 3 or 1..4")
    p.add_argument("--max-n", type=int)
    p.add_argument("--force", action="store_true", help="run above the default size ceiling")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tilings", parents=[common], help="count symmetric rhombus tilings")
    p.add_argument("kind", choices=["cssc", "qcsscpp"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["brute", "lgv", "ciucu", "formula"], default="brute")
    p.set_defaults(func=cmd_tilings)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FplError, UsageError, ValueError) as exc:
        kind = type(exc).__name__
        print(f"error: {kind}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
