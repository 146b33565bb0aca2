"""Command-line front end.

Subcommands:

* ``numtheory {g|h|f|ratio|exceptions} N`` - exact values of the
  prime-power product g, the upper-half prime product h, the bound
  f = n*g/h, the log-bound ratio, and the scan for intervals (m/2, m]
  holding fewer than two primes.
* ``mgroup SPEC``  - maximal abelian subgroup order of one group.
* ``verify {a|goh|lemma|twoprime|equality|all} [SPEC ...]`` - run a
  check suite over the given groups (default: the pinned catalog).
* ``series N [N ...]`` - CSV of bound-ratio samples for plotting.

Group specs use the catalog DSL (`sym:5`, `psl2:13`, `frobenius:5:4`,
`agammal1:3`, `agl3_2`, `file:groups/m11.gens`); file paths resolve
against the working directory.  Flags may also be set through
environment variables with the ``ABELMAX_`` prefix (ABELMAX_BRUTE_CAP,
ABELMAX_ENUM_CAP, ABELMAX_WORKERS, ABELMAX_FORMAT, ABELMAX_OUT); a
command-line flag wins over its environment variable.

Exit codes: 0 success (including expected exceptions), 1 verification
failure, 2 usage error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import catalog, numtheory as nt, verify
from .errors import CapacityError, GeneratorFileError
from .perms import DEFAULT_ENUM_CAP
from .search import DEFAULT_BRUTE_CAP, max_abelian_order

_FORMATS = ("text", "json", "csv")


class _UsageError(Exception):
    pass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise _UsageError(f"{name} must be an integer, got {raw!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--brute-cap",
        type=int,
        default=_env_int("ABELMAX_BRUTE_CAP", DEFAULT_BRUTE_CAP),
        help="largest group order the brute-force oracle accepts",
    )
    common.add_argument(
        "--enum-cap",
        type=int,
        default=_env_int("ABELMAX_ENUM_CAP", DEFAULT_ENUM_CAP),
        help="largest group order that may be enumerated",
    )
    common.add_argument(
        "--workers",
        type=int,
        default=_env_int("ABELMAX_WORKERS", 1),
        help="worker threads for per-group checks in verify",
    )
    common.add_argument(
        "--out",
        default=os.environ.get("ABELMAX_OUT"),
        help="write the report/series to this path instead of stdout",
    )
    common.add_argument(
        "--format",
        choices=_FORMATS,
        default=os.environ.get("ABELMAX_FORMAT", "text"),
        help="report format for verify (series is always CSV)",
    )
    parser = argparse.ArgumentParser(
        prog="abelmax",
        description="maximal abelian subgroup orders and divisibility checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_nt = sub.add_parser(
        "numtheory", parents=[common], help="evaluate the arithmetic functions"
    )
    p_nt.add_argument("func", choices=["g", "h", "f", "ratio", "exceptions"])
    p_nt.add_argument("n", type=int)

    p_mg = sub.add_parser(
        "mgroup", parents=[common], help="maximal abelian order of one group"
    )
    p_mg.add_argument("spec")

    p_vf = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p_vf.add_argument("suite", choices=["a", "goh", "lemma", "twoprime", "equality", "all"])
    p_vf.add_argument("specs", nargs="*", help="group specs (default: pinned catalog)")
    p_vf.add_argument(
        "--manifest",
        help="read group specs from a manifest file (one per line, # comments)",
    )

    p_se = sub.add_parser("series", parents=[common], help="CSV of bound-ratio samples")
    p_se.add_argument("ns", type=int, nargs="*")
    return parser


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _cmd_numtheory(args) -> int:
    n = args.n
    if args.func == "g":
        print(nt.prime_power_product(n).value)
    elif args.func == "h":
        print(nt.upper_half_prime_product(n).value)
    elif args.func == "f":
        print(nt.order_bound(n).value)
    elif args.func == "ratio":
        print(f"{nt.asymptotic_ratio(n).ratio:.12g}")
    else:
        print(" ".join(map(str, nt.two_prime_interval_exceptions(n))))
    return 0


def _cmd_mgroup(args) -> int:
    spec = catalog.parse_spec(args.spec)
    group = catalog.build_group(spec, base_dir=Path.cwd())
    result = max_abelian_order(group, enum_cap=args.enum_cap)
    print(f"group: {spec.spec_string()}")
    print(f"order: {group.order_value} = {group.order.factored_str()}")
    print(f"m: {result.m}")
    gens = " ".join(g.cycle_string() for g in result.witness.generators) or "()"
    print(f"witness: {gens}")
    print(f"witness_normal: {'yes' if result.witness.normal_in_parent else 'no'}")
    print(f"nodes: {result.nodes_explored}")
    return 0


def _cmd_verify(args) -> int:
    if args.manifest and args.specs:
        raise _UsageError("give group specs or --manifest, not both")
    if args.manifest:
        specs = catalog.load_manifest(args.manifest)
    elif args.specs:
        specs = [catalog.parse_spec(s) for s in args.specs]
    else:
        specs = catalog.default_catalog_specs()
    entries = catalog.build_catalog(specs, base_dir=Path.cwd())
    report = verify.run_suite(
        args.suite, entries, enum_cap=args.enum_cap, workers=max(1, args.workers)
    )
    if args.format == "json":
        rendered = verify.report_to_json(report)
    elif args.format == "csv":
        rendered = verify.report_to_csv(report)
    else:
        rendered = verify.report_to_text(report)
    _write_output(rendered, args.out)
    s = report.summary
    summary_line = (
        f"verify {args.suite}: {s['checks']} checks, {s['passed']} passed, "
        f"{s['failed']} failed, {s['expected_exceptions']} expected exceptions"
    )
    if args.out is not None:
        print(summary_line)
    elif args.format != "text":
        print(summary_line, file=sys.stderr)
    if not report.all_passed:
        for c in report.checks:
            if not c.passed:
                print(
                    f"FAIL {c.theorem} {c.group_id} m={c.m} order={c.order} {c.detail}",
                    file=sys.stderr,
                )
        return 1
    return 0


def _cmd_series(args) -> int:
    lines = ["n,log_f,ratio"]
    for n in args.ns:
        sample = nt.asymptotic_ratio(n)
        lines.append(f"{sample.n},{sample.log_f:.12g},{sample.ratio:.12g}")
    _write_output("\n".join(lines) + "\n", args.out)
    return 0


def main(argv=None) -> int:
    try:
        parser = _build_parser()
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"abelmax: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        if exc.code is None:
            return 0
        return exc.code if isinstance(exc.code, int) else 2
    if args.workers < 1 or args.enum_cap < 1 or args.brute_cap < 1:
        print("abelmax: caps and workers must be positive", file=sys.stderr)
        return 2
    try:
        if args.command == "numtheory":
            return _cmd_numtheory(args)
        if args.command == "mgroup":
            return _cmd_mgroup(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_series(args)
    except CapacityError as exc:
        print(f"abelmax: capacity error: {exc}", file=sys.stderr)
        return 3
    except (_UsageError, GeneratorFileError, FileNotFoundError) as exc:
        print(f"abelmax: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"abelmax: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
