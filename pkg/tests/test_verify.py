"""Tests for the verification harness and report serialization."""

import json

import pytest

from abelmax import catalog as cat
from abelmax import numtheory as nt
from abelmax import verify as vf


@pytest.fixture(scope="module")
def entries():
    return cat.build_catalog(cat.default_catalog_specs())


@pytest.fixture(scope="module")
def by_id(entries):
    return {e.group_id: e for e in entries}


def entry_for(spec):
    return cat.build_catalog([spec])[0]


# ── divisibility (unconditional) ────────────────────────────────────

def test_divisibility_s5():
    chk = vf.divisibility_check(entry_for("sym:5"))
    assert chk.passed and chk.m == 6
    assert chk.detail["g_m"] == 120 and chk.detail["quotient"] == 1


def test_divisibility_a5():
    chk = vf.divisibility_check(entry_for("alt:5"))
    assert chk.passed and chk.m == 5
    assert chk.detail["g_m"] == 120 and chk.detail["quotient"] == 2


def test_divisibility_m11():
    chk = vf.divisibility_check(entry_for("file:groups/m11.gens"))
    assert chk.passed and chk.m == 11
    assert chk.detail["g_m"] == 665280 and chk.detail["quotient"] == 84


def test_divisibility_detail_supports_rederivation(by_id):
    chk = vf.divisibility_check(by_id["sym:6"])
    assert chk.detail["g_m"] == nt.prime_power_product(chk.m).value
    assert chk.detail["g_m"] == chk.order * chk.detail["quotient"]


# ── refined divisibility ────────────────────────────────────────────

def test_refined_s4():
    chk = vf.refined_divisibility_check(entry_for("sym:4"))
    assert chk.passed and chk.detail["divides"]
    assert chk.detail["chosen_p"] == 3
    assert chk.detail["g_m"] == 24 and chk.detail["h_m"] == 3


def test_refined_s5():
    chk = vf.refined_divisibility_check(entry_for("sym:5"))
    assert chk.passed and chk.detail["chosen_p"] == 5


def test_refined_named_exceptions():
    s3 = vf.refined_divisibility_check(entry_for("sym:3"))
    assert s3.passed
    assert not s3.detail["divides"]
    assert not s3.detail["inequality_holds"]  # 3*6/6 = 3 < 6
    assert s3.detail["expected_exception"] == "named_inequality_exception"

    a5 = vf.refined_divisibility_check(entry_for("alt:5"))
    assert a5.passed
    assert not a5.detail["divides"]
    assert not a5.detail["inequality_holds"]  # 5*120/15 = 40 < 60
    assert a5.detail["expected_exception"] == "named_inequality_exception"


def test_refined_two_prime_exemption_keeps_inequality():
    chk = vf.refined_divisibility_check(entry_for("psl2:13"))
    assert chk.passed
    assert not chk.detail["divides"]
    assert chk.detail["inequality_holds"]
    assert chk.detail["expected_exception"] == "two_large_primes"


def test_refined_passes_catalog_except_exceptions(entries):
    report = vf.run_suite("goh", entries)
    assert report.all_passed
    excepted = {
        c.group_id for c in report.checks if c.detail["expected_exception"]
    }
    assert excepted == {"sym:3", "alt:5", "psl2:13"}
    named = {
        c.group_id
        for c in report.checks
        if c.detail["expected_exception"] == "named_inequality_exception"
    }
    assert named == {"sym:3", "alt:5"}
    # the weaker inequality |G| <= m*g(m)/h(m) fails nowhere else
    violating = {c.group_id for c in report.checks if not c.detail["inequality_holds"]}
    assert violating == {"sym:3", "alt:5"}


# ── large primes and classification ─────────────────────────────────

def test_large_primes_examples(by_id):
    assert vf.large_primes(by_id["alt:5"]).large_primes == [3, 5]
    assert vf.large_primes(by_id["psl2:13"]).large_primes == [7, 13]
    assert vf.large_primes(by_id["sym:6"]).large_primes == [5]


def test_large_primes_divide_order(by_id):
    for gid in ["alt:5", "psl2:13", "sym:6", "agl3_2"]:
        rep = vf.large_primes(by_id[gid])
        assert all(rep.order.value % p == 0 and p > rep.m / 2 for p in rep.large_primes)


@pytest.mark.parametrize(
    "gid,case",
    [
        ("frobenius:5:4", "case1_frobenius"),
        ("sym:3", "case2_s3"),
        ("agammal1:3", "case3_agammal"),
        ("alt:5", "case4_almost_simple"),
        ("psl2:7", "case4_almost_simple"),
    ],
)
def test_classification(by_id, gid, case):
    assert vf.classify_large_prime_case(by_id[gid]).case == case


def test_classification_post_hoc_predicates(by_id):
    # re-verify each returned case from first principles
    g = by_id["frobenius:5:4"].group
    sylow5 = g.sylow_subgroup(5)
    assert g.is_normal(sylow5) and g.centralizer(sylow5.generators).order == 5

    g = by_id["agammal1:3"].group
    minimals = g.minimal_normal_subgroups()
    assert any(
        h.order == 8 and h.group().is_abelian() and 7 in vf.large_primes(by_id["agammal1:3"]).large_primes
        for h in minimals
    )

    g = by_id["alt:5"].group
    (n,) = g.minimal_normal_subgroups()
    assert n.order == 60 and g.centralizer(n.generators).order == 1


def test_classification_requires_large_prime(by_id):
    with pytest.raises(ValueError, match="no large prime"):
        vf.classify_large_prime_case(by_id["alt:8"])  # m = 16, no prime > 8


def test_agammal1_2_classifies_as_case3():
    # the a = 2 field gives the order-24 symmetric group; the classifier
    # reports the elementary-abelian minimal normal subgroup case
    entry = entry_for("agammal1:2")
    assert vf.classify_large_prime_case(entry).case == "case3_agammal"


# ── scans ───────────────────────────────────────────────────────────

def test_two_prime_scan_default_catalog(entries):
    report = vf.two_large_prime_scan(entries)
    assert report.all_passed
    flagged = {c.group_id for c in report.checks if c.detail["flagged"]}
    assert flagged == {"sym:3", "alt:5", "psl2:13"}


def test_no_catalog_group_has_three_large_primes(entries):
    for entry in entries:
        assert len(vf.large_primes(entry).large_primes) <= 2


def test_random_products_stay_in_group(entries):
    # membership goes through the stabilizer chain, independent of the table
    import numpy as np

    from abelmax.perms import Permutation

    rng = np.random.default_rng(20260809)
    for entry in entries:
        table = entry.group.element_table()
        n = len(table)
        for i, j in rng.integers(0, n, size=(1000, 2)):
            prod = Permutation(table.matrix[int(i)].tolist()) * Permutation(
                table.matrix[int(j)].tolist()
            )
            assert entry.group.contains(prod)


def test_two_prime_scan_subset_without_psl2_13():
    entries = cat.build_catalog(["sym:3", "alt:5", "sym:6", "pgl2:7"])
    report = vf.two_large_prime_scan(entries)
    assert report.all_passed
    flagged = {c.group_id for c in report.checks if c.detail["flagged"]}
    assert flagged == {"sym:3", "alt:5"}


def test_pgl2_13_not_flagged():
    entries = cat.build_catalog(["pgl2:13"])
    report = vf.two_large_prime_scan(entries, enum_cap=250_000)
    (chk,) = report.checks
    assert chk.passed and not chk.detail["flagged"]
    assert chk.m == 14  # p + 1
    assert chk.detail["large_primes"] == "13"


def test_two_prime_fingerprints_catch_aliases():
    # isomorphic copies under other family names are still expected
    entries = cat.build_catalog(["dihedral:3", "frobenius:3:2", "psl2:5"])
    report = vf.two_large_prime_scan(entries)
    assert report.all_passed
    assert all(c.detail["flagged"] and c.detail["expected"] for c in report.checks)


def test_equality_scan(entries):
    report = vf.equality_scan(entries)
    assert report.all_passed
    equal = {c.group_id for c in report.checks if c.detail.get("equal")}
    assert equal == {"sym:2", "sym:3", "sym:4", "sym:5"}
    open_items = [c for c in report.checks if c.detail.get("status") == "open_unverified"]
    assert len(open_items) == 1 and open_items[0].m == 10


# ── p-group suite ───────────────────────────────────────────────────

def test_pgroup_suite_small():
    inputs = [
        ("dihedral:4", cat.dihedral_group(4)),
        ("elem_abelian:3:2", cat.elem_abelian_group(3, 2)),
        ("cyclic:7", cat.cyclic_group(7)),
    ]
    report = vf.pgroup_bound_suite(inputs)
    assert report.all_passed
    assert {c.theorem for c in report.checks} == {"pgroup_bound", "burnside"}
    d8_bound = next(
        c for c in report.checks
        if c.group_id == "dihedral:4" and c.theorem == "pgroup_bound"
    )
    assert d8_bound.detail["k"] == 3 and d8_bound.detail["s"] == 2


def test_catalog_pgroup_inputs_respect_bound(entries):
    inputs = vf.catalog_pgroup_inputs(entries)
    ids = [gid for gid, _ in inputs]
    assert "sylow(sym:8,2)" in ids
    assert any(gid.startswith("sylow(file") is False for gid in ids)
    assert not any(gid.startswith("sylow(alt:8") for gid in ids)  # 20160 > bound
    for gid, pg in inputs:
        assert len(pg.order.factors) == 1


# ── suite driver and reports ────────────────────────────────────────

def test_run_suite_all(entries):
    report = vf.run_suite("all", entries)
    assert report.all_passed
    assert report.summary["checks"] == len(report.checks)
    assert report.summary["expected_exceptions"] == 4
    themes = {c.theorem for c in report.checks}
    assert themes == {
        "divisibility",
        "refined_divisibility",
        "two_prime",
        "equality",
        "pgroup_bound",
        "burnside",
    }


def test_run_suite_rejects_unknown(entries):
    with pytest.raises(ValueError, match="unknown suite"):
        vf.run_suite("everything", entries)


def test_workers_do_not_change_results(entries):
    seq = vf.run_suite("a", entries, workers=1)
    par = vf.run_suite("a", entries, workers=4)
    assert [
        (c.theorem, c.group_id, c.passed, c.m, c.order, sorted(c.detail.items()))
        for c in seq.checks
    ] == [
        (c.theorem, c.group_id, c.passed, c.m, c.order, sorted(c.detail.items()))
        for c in par.checks
    ]


def test_json_report_schema(entries):
    report = vf.run_suite("twoprime", entries)
    payload = json.loads(vf.report_to_json(report))
    assert set(payload) == {"summary", "checks"}
    first = payload["checks"][0]
    assert set(first) == {"theorem", "group_id", "passed", "m", "order", "detail"}


def test_csv_report_schema(entries):
    report = vf.run_suite("equality", entries)
    text = vf.report_to_csv(report)
    lines = text.splitlines()
    header = lines[0].split(",")
    assert header[:5] == ["theorem", "group_id", "passed", "m", "order"]
    assert all(h.startswith("detail_") for h in header[5:])
    assert len(lines) == len(report.checks) + 1


def test_reports_are_deterministic(entries):
    a = vf.report_to_csv(vf.run_suite("equality", entries))
    b = vf.report_to_csv(vf.run_suite("equality", entries))
    assert a == b
    ja = vf.report_to_json(vf.run_suite("twoprime", entries))
    jb = vf.report_to_json(vf.run_suite("twoprime", entries))
    assert ja == jb
