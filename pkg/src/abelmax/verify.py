"""Structured check suites over group catalogs.

Each check produces a TheoremCheck record carrying every number that
decided the verdict, so a report can be re-derived by hand.  Reports
serialize to JSON (nested) and CSV (one row per check, columns
``theorem,group_id,passed,m,order,detail_*``).  Timing never enters a
report, which keeps repeated runs byte-identical.

The checks:

* ``divisibility``          - |G| divides prime_power_product(m(G)); holds
                              unconditionally, so any failure flags a bug.
* ``refined_divisibility``  - some prime p in (m/2, m] has |G| dividing
                              p * g(m)/h(m).  Groups whose order carries
                              two primes above m/2 sit outside the
                              statement's hypothesis and are flagged as
                              expected exceptions, not failures; among
                              them the order-6 nonabelian group and the
                              order-60 simple group also break the
                              weaker inequality |G| <= m*g(m)/h(m) and
                              are tagged as the named exceptions.
* ``two_prime``             - the groups with two prime divisors above
                              m/2 are exactly the expected ones.
* ``equality``              - |G| = g(m(G)) exactly for sym:2..sym:5 and
                              nothing else.
* ``pgroup_bound``/``burnside`` - exponent bounds on p-groups.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import numtheory as nt
from .catalog import CatalogEntry, dihedral_group, elem_abelian_group, sym_group
from .perms import DEFAULT_ENUM_CAP, PermGroup
from .search import MaxAbelianResult, max_abelian_order, pgroup_bound_check

PGROUP_SUITE_ORDER_BOUND = 10_000

# Orders of the sporadic groups that belong on the two-large-prime list;
# only reachable through optional generator files.
SPORADIC_TWO_PRIME_ORDERS = {175_560, 50_232_960}


@dataclass
class TheoremCheck:
    theorem: str
    group_id: str
    passed: bool
    m: int
    order: int
    detail: dict[str, object] = field(default_factory=dict)


@dataclass
class LargePrimeReport:
    group_id: str
    order: nt.FactoredInteger
    m: int
    large_primes: list[int]
    case: str  # none | case1_frobenius | case2_s3 | case3_agammal | case4_almost_simple | unclassified


@dataclass
class VerificationReport:
    checks: list[TheoremCheck]
    summary: dict[str, int]

    @classmethod
    def from_checks(cls, checks: list[TheoremCheck]) -> "VerificationReport":
        expected = sum(1 for c in checks if c.detail.get("expected_exception"))
        return cls(
            checks,
            {
                "checks": len(checks),
                "passed": sum(1 for c in checks if c.passed),
                "failed": sum(1 for c in checks if not c.passed),
                "expected_exceptions": expected,
            },
        )

    @property
    def all_passed(self) -> bool:
        return self.summary["failed"] == 0


def entry_max_abelian(
    entry: CatalogEntry, enum_cap: int = DEFAULT_ENUM_CAP
) -> MaxAbelianResult:
    """m(G) for a catalog entry, computed once and cached on the entry."""
    result = entry.cache.get("max_abelian")
    if result is None:
        result = max_abelian_order(entry.group, enum_cap)
        entry.cache["max_abelian"] = result
    return result


def _precompute(entries, enum_cap: int, workers: int) -> None:
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(lambda e: entry_max_abelian(e, enum_cap), entries))
    else:
        for e in entries:
            entry_max_abelian(e, enum_cap)


# ── per-group checks ────────────────────────────────────────────────

def divisibility_check(
    entry: CatalogEntry, enum_cap: int = DEFAULT_ENUM_CAP
) -> TheoremCheck:
    """|G| divides the product of all prime powers <= m(G)."""
    m = entry_max_abelian(entry, enum_cap).m
    g_m = nt.prime_power_product(m)
    order = entry.group.order
    divides = order.divides(g_m)
    detail = {"g_m": g_m.value, "order_factored": order.factored_str()}
    if divides:
        detail["quotient"] = g_m.value // order.value
    return TheoremCheck("divisibility", entry.group_id, divides, m, order.value, detail)


def large_primes(
    entry: CatalogEntry, enum_cap: int = DEFAULT_ENUM_CAP
) -> LargePrimeReport:
    """Prime divisors of |G| strictly above m(G)/2."""
    m = entry_max_abelian(entry, enum_cap).m
    order = entry.group.order
    primes = sorted(p for p in order.factors if p > m / 2)
    return LargePrimeReport(entry.group_id, order, m, primes, "none")


def refined_divisibility_check(
    entry: CatalogEntry, enum_cap: int = DEFAULT_ENUM_CAP
) -> TheoremCheck:
    """|G| divides p * g(m)/h(m) for some prime p in (m/2, m].

    Groups with two large prime divisors fall outside the statement and
    are marked as expected exceptions; everything else must divide.
    """
    rep = large_primes(entry, enum_cap)
    m, order = rep.m, entry.group.order
    if order.value == 1:
        return TheoremCheck(
            "refined_divisibility", entry.group_id, True, m, 1,
            {"divides": True, "inequality_holds": True, "chosen_p": 0,
             "expected_exception": "", "note": "trivial group"},
        )
    g_m = nt.prime_power_product(m)
    h_m = nt.upper_half_prime_product(m)
    base = g_m.exact_div(h_m)
    candidates = nt.primes_in_halfopen(m / 2, m)
    chosen = 0
    for p in candidates:
        if order.divides(nt.FactoredInteger.from_factors({p: 1}) * base):
            chosen = p
            break
    inequality_holds = order.value <= m * base.value
    detail: dict[str, object] = {
        "g_m": g_m.value,
        "h_m": h_m.value,
        "candidate_primes": " ".join(map(str, candidates)),
        "chosen_p": chosen,
        "divides": chosen != 0,
        "inequality_holds": inequality_holds,
        "large_primes": " ".join(map(str, rep.large_primes)),
        "expected_exception": "",
    }
    passed = chosen != 0
    if not passed and len(rep.large_primes) >= 2:
        # outside the hypothesis; the inequality separates the named pair
        detail["expected_exception"] = (
            "two_large_primes" if inequality_holds else "named_inequality_exception"
        )
        passed = True
    return TheoremCheck(
        "refined_divisibility", entry.group_id, passed, m, order.value, detail
    )


# ── classification of the large-prime cases ─────────────────────────

def classify_large_prime_case(
    entry: CatalogEntry, enum_cap: int = DEFAULT_ENUM_CAP
) -> LargePrimeReport:
    """Which structural case a group with a large prime divisor falls in.

    The cases are tested most-specific first; a group that fits none of
    the predicates under the caps is reported ``unclassified`` rather
    than guessed.
    """
    rep = large_primes(entry, enum_cap)
    if not rep.large_primes:
        raise ValueError(f"{entry.group_id} has no large prime divisor")
    G = entry.group
    if G.order_value == 6 and not G.is_abelian():
        rep.case = "case2_s3"
        return rep
    for p in sorted(rep.large_primes, reverse=True):
        if G.order.factors.get(p) != 1:
            continue
        sylow = G.sylow_subgroup(p, enum_cap)
        if G.is_normal(sylow) and G.centralizer(sylow.generators, enum_cap).order == p:
            rep.case = "case1_frobenius"
            return rep
    minimals = G.minimal_normal_subgroups(enum_cap)
    for handle in minimals:
        o = handle.order
        if o > 1 and o & (o - 1) == 0:  # power of two
            sub = handle.group()
            if sub.is_abelian() and all(
                e.order() <= 2 for e in sub.enumerate_elements(enum_cap)
            ):
                mersenne = o - 1
                if mersenne in rep.large_primes:
                    rep.case = "case3_agammal"
                    return rep
    if len(minimals) == 1:
        sub = minimals[0].group()
        if (
            not sub.is_abelian()
            and sub.is_simple(enum_cap)
            and G.centralizer(minimals[0].generators, enum_cap).order == 1
        ):
            rep.case = "case4_almost_simple"
            return rep
    rep.case = "unclassified"
    return rep


# ── fingerprints for the expected two-large-prime set ───────────────

_A5_ORDER_PROFILE = Counter({1: 1, 2: 15, 3: 20, 5: 24})


def _order_profile(group: PermGroup, cap: int) -> Counter:
    return Counter(int(o) for o in group.element_table(cap).orders)


def is_expected_two_prime_group(
    entry: CatalogEntry, enum_cap: int = DEFAULT_ENUM_CAP
) -> bool:
    """Order-plus-structure fingerprint for the groups allowed two large primes.

    Matches the order-6 nonabelian group, the order-60 simple group,
    the projective groups psl2:p with p > 5 prime and (p+1)/2 prime,
    and the two sporadic orders reachable via generator files.
    """
    G = entry.group
    n = G.order_value
    if n == 6:
        return not G.is_abelian()
    if n == 60:
        return _order_profile(G, enum_cap) == _A5_ORDER_PROFILE
    if n in SPORADIC_TWO_PRIME_ORDERS:
        return True
    if G.order.factors:
        p = max(G.order.factors)
        if (
            p > 5
            and n == p * (p - 1) * (p + 1) // 2
            and nt.is_prime((p + 1) // 2)
            and G.order.factors[p] == 1
            and p in _order_profile(G, enum_cap)
        ):
            return True
    return False


# ── catalog scans ───────────────────────────────────────────────────

def two_large_prime_scan(
    entries: list[CatalogEntry],
    enum_cap: int = DEFAULT_ENUM_CAP,
    workers: int = 1,
) -> VerificationReport:
    """Flag groups with two large primes; they must be exactly the expected set."""
    _precompute(entries, enum_cap, workers)
    checks = []
    for entry in entries:
        rep = large_primes(entry, enum_cap)
        flagged = len(rep.large_primes) >= 2
        expected = is_expected_two_prime_group(entry, enum_cap)
        checks.append(
            TheoremCheck(
                "two_prime",
                entry.group_id,
                flagged == expected,
                rep.m,
                rep.order.value,
                {
                    "large_primes": " ".join(map(str, rep.large_primes)),
                    "flagged": flagged,
                    "expected": expected,
                },
            )
        )
    return VerificationReport.from_checks(checks)


_EQUALITY_FAMILIES = {("sym", (2,)), ("sym", (3,)), ("sym", (4,)), ("sym", (5,))}


def equality_scan(
    entries: list[CatalogEntry],
    enum_cap: int = DEFAULT_ENUM_CAP,
    workers: int = 1,
) -> VerificationReport:
    """Test |G| = prime_power_product(m(G)) exactly; equality only at sym:2..5."""
    _precompute(entries, enum_cap, workers)
    checks = []
    for entry in entries:
        m = entry_max_abelian(entry, enum_cap).m
        g_m = nt.prime_power_product(m)
        equal = entry.group.order_value == g_m.value
        # the equality statement concerns nontrivial groups; |G| = 1 = g(1)
        # vacuously and is not counted against the expected set
        expected = entry.group.order_value == 1 or (
            (entry.spec.family, entry.spec.params) in _EQUALITY_FAMILIES
        )
        checks.append(
            TheoremCheck(
                "equality",
                entry.group_id,
                equal == expected,
                m,
                entry.group.order_value,
                {"g_m": g_m.value, "equal": equal, "expected": expected},
            )
        )
    # The m = 10 equality case would need every group of order 2^6 checked
    # for an abelian subgroup of order >= 2^4; that sweep is outside desk
    # scale, so the item is recorded as open instead of silently dropped.
    checks.append(
        TheoremCheck(
            "equality",
            "order-64-exhaustive",
            True,
            10,
            nt.prime_power_product(10).value,
            {
                "status": "open_unverified",
                "expected_exception": "open_item",
                "note": "needs all 267 groups of order 64; not desk-checkable",
            },
        )
    )
    return VerificationReport.from_checks(checks)


# ── p-group suite ───────────────────────────────────────────────────

def catalog_pgroup_inputs(
    entries: list[CatalogEntry],
    enum_cap: int = DEFAULT_ENUM_CAP,
    order_bound: int = PGROUP_SUITE_ORDER_BOUND,
) -> list[tuple[str, PermGroup]]:
    """Sylow subgroups of the catalog groups under the order bound,
    plus a fixed family of explicit p-groups."""
    inputs: list[tuple[str, PermGroup]] = []
    for entry in entries:
        if entry.group.order_value > order_bound or entry.group.order_value == 1:
            continue
        for p in entry.group.order.factors:
            handle = entry.group.sylow_subgroup(p, enum_cap)
            inputs.append((f"sylow({entry.group_id},{p})", handle.group()))
    for n in (4, 8, 16, 32):
        inputs.append((f"dihedral:{n}", dihedral_group(n)))
    inputs.append(("sylow(sym:8,2)", sym_group(8).sylow_subgroup(2, enum_cap).group()))
    inputs.append(("sylow(sym:8,3)", sym_group(8).sylow_subgroup(3, enum_cap).group()))
    inputs.append(("elem_abelian:2:4", elem_abelian_group(2, 4)))
    inputs.append(("elem_abelian:3:2", elem_abelian_group(3, 2)))
    inputs.append(("elem_abelian:5:2", elem_abelian_group(5, 2)))
    return inputs


def pgroup_bound_suite(
    pgroups: list[tuple[str, PermGroup]], enum_cap: int = DEFAULT_ENUM_CAP
) -> VerificationReport:
    """Run the exponent-bound checks over a list of (id, p-group) pairs."""
    checks = []
    for gid, pg in pgroups:
        rep = pgroup_bound_check(pg, enum_cap)
        base = {"p": rep.p, "k": rep.k, "s": rep.s, "c": rep.c, "v": rep.v}
        checks.append(
            TheoremCheck(
                "pgroup_bound",
                gid,
                rep.bound_holds,
                rep.p**rep.s,
                pg.order_value,
                dict(base),
            )
        )
        checks.append(
            TheoremCheck(
                "burnside",
                gid,
                rep.burnside_holds,
                rep.p**rep.s,
                pg.order_value,
                dict(base),
            )
        )
    return VerificationReport.from_checks(checks)


# ── suite drivers ───────────────────────────────────────────────────

def run_suite(
    suite: str,
    entries: list[CatalogEntry],
    enum_cap: int = DEFAULT_ENUM_CAP,
    workers: int = 1,
) -> VerificationReport:
    """Run one of the named suites: a, goh, lemma, twoprime, equality, all."""
    if suite == "a":
        _precompute(entries, enum_cap, workers)
        return VerificationReport.from_checks(
            [divisibility_check(e, enum_cap) for e in entries]
        )
    if suite == "goh":
        _precompute(entries, enum_cap, workers)
        return VerificationReport.from_checks(
            [refined_divisibility_check(e, enum_cap) for e in entries]
        )
    if suite == "twoprime":
        return two_large_prime_scan(entries, enum_cap, workers)
    if suite == "equality":
        return equality_scan(entries, enum_cap, workers)
    if suite == "lemma":
        return pgroup_bound_suite(catalog_pgroup_inputs(entries, enum_cap), enum_cap)
    if suite == "all":
        _precompute(entries, enum_cap, workers)
        checks = []
        for report in (
            run_suite("a", entries, enum_cap, workers),
            run_suite("goh", entries, enum_cap, workers),
            run_suite("twoprime", entries, enum_cap, workers),
            run_suite("equality", entries, enum_cap, workers),
            run_suite("lemma", entries, enum_cap, workers),
        ):
            checks.extend(report.checks)
        return VerificationReport.from_checks(checks)
    raise ValueError(
        f"unknown suite {suite!r}; valid: a, goh, lemma, twoprime, equality, all"
    )


# ── serialization ───────────────────────────────────────────────────

def report_to_json(report: VerificationReport) -> str:
    payload = {
        "summary": report.summary,
        "checks": [
            {
                "theorem": c.theorem,
                "group_id": c.group_id,
                "passed": c.passed,
                "m": c.m,
                "order": c.order,
                "detail": dict(sorted(c.detail.items())),
            }
            for c in report.checks
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def report_to_csv(report: VerificationReport) -> str:
    detail_keys = sorted({k for c in report.checks for k in c.detail})
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["theorem", "group_id", "passed", "m", "order"]
                    + [f"detail_{k}" for k in detail_keys])
    for c in report.checks:
        row = [c.theorem, c.group_id, _csv_cell(c.passed), c.m, c.order]
        row += [_csv_cell(c.detail[k]) if k in c.detail else "" for k in detail_keys]
        writer.writerow(row)
    return buf.getvalue()


def report_to_text(report: VerificationReport) -> str:
    lines = []
    for c in report.checks:
        status = "pass" if c.passed else "FAIL"
        note = ""
        if c.detail.get("expected_exception"):
            note = f"  [expected exception: {c.detail['expected_exception']}]"
        lines.append(
            f"{status}  {c.theorem:20s} {c.group_id:24s} m={c.m} order={c.order}{note}"
        )
    s = report.summary
    lines.append(
        f"summary: {s['checks']} checks, {s['passed']} passed, {s['failed']} failed, "
        f"{s['expected_exceptions']} expected exceptions"
    )
    return "\n".join(lines) + "\n"
