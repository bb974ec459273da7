"""Command-line front end.

Exit codes: 0 success/certified, 1 verification failure, 2 usage error,
3 search budget or cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

from . import __version__
from .bounds import (
    Characteristic,
    bound_report,
    characteristic,
    dihedral_lower_bound,
    exact_by_theorem,
    verify_gap_inequality,
    _singer_parameter,
)
from .cache import ResultCache, default_cache_path, make_record
from .constructions import bose_chowla_set, singer_set
from .errors import (
    BudgetExhaustedError,
    CacheFormatError,
    DiffbaseError,
    DomainError,
    ResourceLimitError,
)
from .groups import (
    Basis,
    GroupKind,
    GroupSpec,
    difference_cover,
    is_difference_basis,
)
from .search import (
    ORDER_CAP,
    SearchConfig,
    SearchOutcome,
    kernel_name,
    min_difference_basis,
)

DEFAULT_NODE_BUDGET = 10 ** 9

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _spec(kind: str, n: int) -> GroupSpec:
    return GroupSpec(GroupKind(kind), n)


def _load_cache(args) -> Optional[ResultCache]:
    if getattr(args, "no_cache", False):
        return None
    path = getattr(args, "cache", None) or default_cache_path()
    return ResultCache(path).load()


def _store(cache: Optional[ResultCache], spec: GroupSpec, out: SearchOutcome) -> None:
    if cache is None:
        return
    cache.put(
        make_record(
            spec,
            out.delta,
            out.witness.elems,
            out.certified,
            "search",
            tool_version=__version__,
        )
    )
    cache.save()


def _search_with_cache(
    spec: GroupSpec, cfg: SearchConfig, cache: Optional[ResultCache]
) -> SearchOutcome:
    if cache is not None:
        rec = cache.get(spec.kind, spec.n)
        if rec is not None and rec.certified:
            return SearchOutcome(
                delta=rec.delta,
                witness=Basis(spec, tuple(rec.witness)),
                certified=True,
                nodes_expanded=0,
                wall_time=0.0,
            )
    out = min_difference_basis(spec, cfg)
    _store(cache, spec, out)
    return out


def _fmt_elems(elems) -> str:
    return ",".join(str(e) for e in elems)


def cmd_delta(args) -> int:
    spec = _spec(args.kind, args.n)
    cfg = SearchConfig(
        node_budget=None if args.long else args.budget,
        parallel_width=args.parallel,
    )
    cache = _load_cache(args)
    out = _search_with_cache(spec, cfg, cache)
    status = "certified" if out.certified else "upper bound (budget exhausted)"
    print(f"{spec.describe()}: delta = {out.delta} ({status})")
    print(f"witness: {_fmt_elems(out.witness.elems)}")
    N = spec.universe_size
    print(f"characteristic: {characteristic(out.delta, N).render()}")
    rep = bound_report(spec, cache)
    for v, prov in sorted(rep.lower):
        print(f"lower {v}  [{prov}]")
    for e in sorted(rep.upper, key=lambda e: e.value):
        w = f" witness {_fmt_elems(e.witness.basis.elems)}" if e.witness else ""
        print(f"upper {e.value}  [{e.provenance}]{w}")
    print(f"nodes: {out.nodes_expanded}  time: {out.wall_time:.2f}s")
    return EXIT_OK if out.certified else EXIT_BUDGET


def _cyclic_row(n: int, cfg: SearchConfig, cache) -> dict:
    out = _search_with_cache(_spec("cyclic", n), cfg, cache)
    ch = characteristic(out.delta, n)
    return {
        "n": n,
        "delta": out.delta,
        "characteristic": ch.render(ellipsis=False),
        "certified": out.certified,
        "witness": _fmt_elems(out.witness.elems),
    }


def _dihedral_row(n: int, cfg: SearchConfig, cache) -> dict:
    out = _search_with_cache(_spec("dihedral", n), cfg, cache)
    outc = _search_with_cache(_spec("cyclic", n), cfg, cache)
    ch = characteristic(out.delta, 2 * n)
    return {
        "order": 2 * n,
        "lb": dihedral_lower_bound(n),
        "delta": out.delta,
        "two_delta_cyclic": 2 * outc.delta,
        "characteristic": ch.render(ellipsis=False),
        "certified": out.certified and outc.certified,
        "witness": _fmt_elems(out.witness.elems),
        "singer_double": _singer_parameter(n) is not None,
    }


def _bounds_only_row(kind: str, n: int, cache) -> dict:
    spec = _spec(kind, n)
    rep = bound_report(spec, cache)
    exact = rep.exact
    row = {
        "n": n,
        "delta": str(exact) if exact is not None else f"[{rep.best_lower},{rep.best_upper}]",
        "characteristic": characteristic(exact, spec.universe_size).render(ellipsis=False)
        if exact is not None
        else "",
        "certified": exact is not None,
        "witness": "",
    }
    if kind == "dihedral":
        row = {
            "order": 2 * n,
            "lb": dihedral_lower_bound(n),
            "delta": row["delta"],
            "two_delta_cyclic": "",
            "characteristic": row["characteristic"],
            "certified": row["certified"],
            "witness": "",
            "singer_double": _singer_parameter(n) is not None,
        }
    return row


def _emit_rows(rows: List[dict], columns: List[str], fmt: str) -> None:
    if fmt == "csv":
        print(",".join(columns))
        for r in rows:
            print(",".join(_csv_cell(r.get(c, "")) for c in columns))
    elif fmt == "json":
        for r in rows:
            print(json.dumps(r))
    else:
        widths = {
            c: max(len(c), *(len(str(r.get(c, ""))) for r in rows)) for c in columns
        }
        print("  ".join(c.ljust(widths[c]) for c in columns))
        for r in rows:
            mark = " *" if r.get("singer_double") else ""
            print("  ".join(str(r.get(c, "")).ljust(widths[c]) for c in columns) + mark)


def _csv_cell(v) -> str:
    s = str(v)
    return f'"{s}"' if "," in s else s


def cmd_table(args) -> int:
    kind = args.kind
    cache = _load_cache(args)
    if kind == "cyclic":
        ns = list(range(1, args.max + 1))
        columns = ["n", "delta", "characteristic", "certified", "witness"]
        cap_order = args.max
    else:
        ns = [n for n in range(1, args.max // 2 + 1)]
        columns = [
            "order",
            "lb",
            "delta",
            "two_delta_cyclic",
            "characteristic",
            "certified",
            "witness",
        ]
        cap_order = args.max
    if not args.bounds_only and cap_order > ORDER_CAP:
        print(
            f"error: order {cap_order} exceeds search cap {ORDER_CAP}; "
            "use --bounds-only",
            file=sys.stderr,
        )
        return EXIT_BUDGET
    cfg = SearchConfig(
        node_budget=None if args.long else DEFAULT_NODE_BUDGET,
        parallel_width=1,
    )
    if args.bounds_only:
        rows = [_bounds_only_row(kind, n, cache) for n in ns]
    else:
        worker = _cyclic_row if kind == "cyclic" else _dihedral_row
        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(lambda n: worker(n, cfg, cache), ns))
        if cache is not None:
            cache.save()
    key = "n" if kind == "cyclic" else "order"
    rows.sort(key=lambda r: r[key])
    if kind == "cyclic":
        for r in rows:
            r.pop("singer_double", None)
    _emit_rows(rows, columns, args.format)
    if not args.bounds_only and not all(r["certified"] for r in rows):
        return EXIT_BUDGET
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = _spec(args.kind, args.n)
    try:
        elems = tuple(sorted({int(x) for x in args.elements.split(",")}))
        b = Basis(spec, elems)
    except (ValueError, DomainError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    cover = difference_cover(b)
    if cover.all_set:
        print(f"PASS: {{{_fmt_elems(elems)}}} is a difference basis of {spec.describe()}")
        return EXIT_OK
    missing = cover.uncovered()
    if spec.kind is GroupKind.INTERVAL:
        missing = [i + 1 for i in missing]
    print(
        f"FAIL: {len(missing)} uncovered elements of {spec.describe()}: "
        f"{_fmt_elems(missing)}"
    )
    return EXIT_VERIFY_FAIL


def cmd_bounds(args) -> int:
    spec = _spec(args.kind, args.n)
    cache = _load_cache(args)
    rep = bound_report(spec, cache)
    print(f"{spec.describe()}:")
    for v, prov in sorted(rep.lower):
        print(f"  lower {v}  [{prov}]")
    for e in sorted(rep.upper, key=lambda e: e.value):
        w = f" witness {_fmt_elems(e.witness.basis.elems)}" if e.witness else ""
        print(f"  upper {e.value}  [{e.provenance}]{w}")
    print(f"  best: {rep.best_lower} .. {rep.best_upper}", end="")
    print(f"  exact: {rep.exact}" if rep.exact is not None else "")
    return EXIT_OK


def cmd_scan(args) -> int:
    cache = _load_cache(args)
    max_n = args.max // 2
    if args.bounds_only:
        unresolved = []
        resolved = []
        for n in range(1, max_n + 1):
            spec = _spec("dihedral", n)
            rep = bound_report(spec, cache)
            if rep.exact is not None:
                resolved.append((n, rep.exact))
                if not Characteristic(rep.exact, 2 * n).le_ratio(8, 22):
                    print(f"2n={2 * n}: exact {rep.exact} exceeds 8/sqrt(22)")
            elif not Characteristic(rep.best_upper, 2 * n).le_ratio(8, 22):
                unresolved.append((n, rep.best_upper))
        print(f"resolved without search: {len(resolved)} of {max_n}")
        print(f"unresolved (bound exceeds 8/sqrt(22)): "
              f"{_fmt_elems(2 * n for n, _ in unresolved)}")
        return EXIT_OK
    cfg = SearchConfig(node_budget=None if args.long else DEFAULT_NODE_BUDGET)
    best: Optional[Characteristic] = None
    best_n = None
    for n in range(1, max_n + 1):
        out = _search_with_cache(_spec("dihedral", n), cfg, cache)
        ch = characteristic(out.delta, 2 * n)
        if best is None or best <= ch:
            # keep the earliest argmax on ties
            if best is None or not ch <= best:
                best, best_n = ch, n
    if cache is not None:
        cache.save()
    print(
        f"argmax of certified characteristic over 2n <= {args.max}: "
        f"2n={2 * best_n}, value {best.render()}"
    )
    return EXIT_OK


def cmd_gapcheck(args) -> int:
    rep = verify_gap_inequality(args.lo, args.hi)
    print(
        f"consecutive prime-power pairs with q in [{args.lo},{args.hi}]: "
        f"{rep.pairs_checked} checked, {len(rep.violations)} violations"
    )
    for qk, qk1 in rep.violations:
        print(f"violation: q={qk}, next={qk1}")
    return EXIT_OK if rep.ok else EXIT_VERIFY_FAIL


def cmd_construct(args) -> int:
    if args.which == "singer":
        cb = singer_set(args.q)
        b = cb.basis
        print(f"perfect difference set mod {b.group.n} (size {len(b)}):")
    else:
        cb = bose_chowla_set(args.q)
        b = cb.basis
        print(f"Sidon set mod {b.group.n} (size {len(b)}):")
    print(_fmt_elems(b.elems))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="diffbase",
        description="Exact difference bases of cyclic/dihedral groups and intervals",
    )
    p.add_argument("--version", action="version", version=f"diffbase {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add_cache_opts(sp):
        sp.add_argument("--cache", help="cache file (default $DIFFBASE_CACHE or ./diffbase-cache.jsonl)")
        sp.add_argument("--no-cache", action="store_true")

    sp = sub.add_parser("delta", help="exact difference size of one group")
    sp.add_argument("kind", choices=["cyclic", "dihedral", "interval"])
    sp.add_argument("n", type=int)
    sp.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    sp.add_argument("--parallel", type=int, default=1)
    sp.add_argument("--long", action="store_true", help="remove the node budget")
    add_cache_opts(sp)
    sp.set_defaults(func=cmd_delta)

    sp = sub.add_parser("table", help="reproduce the difference-size tables")
    sp.add_argument("kind", choices=["cyclic", "dihedral"])
    sp.add_argument("--max", type=int, required=True, help="max n (cyclic) or max order 2n (dihedral)")
    sp.add_argument("--format", choices=["text", "csv", "json"], default="text")
    sp.add_argument("--long", action="store_true")
    sp.add_argument("--bounds-only", action="store_true")
    sp.add_argument("--workers", type=int, default=4)
    add_cache_opts(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("verify", help="check a claimed difference basis")
    sp.add_argument("kind", choices=["cyclic", "dihedral", "interval"])
    sp.add_argument("n", type=int)
    sp.add_argument("elements", help="comma-separated element indices")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bounds", help="bound ledger for one group")
    sp.add_argument("kind", choices=["cyclic", "dihedral", "interval"])
    sp.add_argument("n", type=int)
    add_cache_opts(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("scan", help="extremal dihedral characteristic scan")
    sp.add_argument("--max", type=int, required=True, help="max order 2n")
    sp.add_argument("--bounds-only", action="store_true")
    sp.add_argument("--long", action="store_true")
    add_cache_opts(sp)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("gapcheck", help="prime-power gap inequality verifier")
    sp.add_argument("--lo", type=int, required=True)
    sp.add_argument("--hi", type=int, required=True)
    sp.set_defaults(func=cmd_gapcheck)

    sp = sub.add_parser("construct", help="Singer / Bose-Chowla sets")
    sp.add_argument("which", choices=["singer", "bose"])
    sp.add_argument("q", type=int)
    sp.set_defaults(func=cmd_construct)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BudgetExhaustedError, ResourceLimitError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except CacheFormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VERIFY_FAIL
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DiffbaseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VERIFY_FAIL


if __name__ == "__main__":
    sys.exit(main())
