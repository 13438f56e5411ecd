"""Acceptance criteria, one test and one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v``; the summary lines are
printed even when output capture is on.
"""

import time
from fractions import Fraction

import pytest

from bcmotzkin.bridge import BridgeConfig, bridge_mismatches, check_unstable_bridge
from bcmotzkin.combinatorics import (
    CatalanTable,
    MotzkinTable,
    catalan,
    catalan_generalized,
    check_vandermonde_like,
    motzkin_bc_direct,
    motzkin_bc_recursive,
    profiles,
)
from bcmotzkin.eo import EOStore, compare_eo, tr_step
from bcmotzkin.errors import TRIPWIRE_COUNTS, tripwire_total
from bcmotzkin.laplace import (
    FreeEnergyStore,
    degree_check,
    euler_char_check,
    intersection_numbers_from_F,
    inversion_check,
    stable_keys,
    string_equation_residuals,
    symmetry_check,
    vanishing_check,
)
from bcmotzkin.map_oracle import enumerate_cell_graphs
from bcmotzkin.polyalg import LaurentPoly
from bcmotzkin.reference import F03, F11, W03, W03_literal, W11

BRIDGE_SAMPLES = [(0, 1), (1, 1), (2, 3), (Fraction(1, 2), 1)]
BRIDGE_KEYS = [(1, 1), (0, 3), (1, 2), (0, 4)]


@pytest.fixture(scope="module")
def stores():
    return FreeEnergyStore(), EOStore(), CatalanTable(), MotzkinTable()


@pytest.fixture
def report(capsys):
    def emit(n, title, ok, elapsed=None, budget=None, detail=""):
        timing = ""
        if elapsed is not None:
            timing = f" ({elapsed:.2f} s" + (f", budget {budget} s)" if budget else ")")
        line = f"{'PASS' if ok else 'FAIL'}  criterion {n:>2}  {title}{timing}"
        if detail:
            line += f"  [{detail}]"
        with capsys.disabled():
            print("\n" + line)
        return ok
    return emit


def test_criterion_01_sequences(report):
    t0 = time.perf_counter()
    table = CatalanTable()
    cat = [catalan(k) for k in range(9)]
    cat_rec = [table.value(0, (2 * k,)) for k in range(9)]
    from bcmotzkin.combinatorics import ProfileKey
    mot = [motzkin_bc_direct(ProfileKey.of(0, (n,)), table).specialize(1, 1) for n in range(9)]
    elapsed = time.perf_counter() - t0
    ok = (cat == cat_rec == [1, 1, 2, 5, 14, 42, 132, 429, 1430]
          and mot == [1, 1, 2, 4, 9, 21, 51, 127, 323] and elapsed < 1)
    assert report(1, "Catalan and Motzkin sequences", ok, elapsed, 1)


def test_criterion_02_route_equivalence(report, stores):
    _, _, ct, mt = stores
    t0 = time.perf_counter()
    keys = list(profiles(2, 3, 12))
    bad = [k for k in keys if motzkin_bc_direct(k, ct) != motzkin_bc_recursive(k, mt)]
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60
    assert report(2, "direct binomial transform == recursion", ok, elapsed, 60, f"{len(keys)} keys"), bad[:5]


def test_criterion_03_catalan_reduction(report, stores):
    _, _, ct, _ = stores
    keys = list(profiles(2, 3, 12))
    bad = [k for k in keys if motzkin_bc_direct(k, ct).specialize(0, 1) != catalan_generalized(k, ct)]
    assert report(3, "M at (b,c)=(0,1) equals C", not bad, detail=f"{len(keys)} keys"), bad[:5]


def test_criterion_04_oracle(report, stores):
    _, _, ct, _ = stores
    t0 = time.perf_counter()
    keys = list(profiles(2, 2, 8)) + [k for k in profiles(2, 3, 6) if k.v == 3]
    bad = [k for k in keys if enumerate_cell_graphs(k.g, k.degrees) != catalan_generalized(k, ct)]
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60
    assert report(4, "map enumeration == recursion", ok, elapsed, 60, f"{len(keys)} profiles"), bad[:5]


def test_criterion_05_closed_forms(report, stores):
    fs, es, _, _ = stores
    checks = {
        "F11": fs.get(1, 1) == F11(),
        "F03": fs.get(0, 3) == F03(),
        "W11": es.get(1, 1).density == W11(),
        "W03 literal form": es.get(0, 3).density == W03_literal(),
    }
    failed = [k for k, v in checks.items() if not v]
    detail = "mismatch: " + ", ".join(failed) if failed else "all four"
    if failed:
        detail += f"; computed W03 = {es.get(0, 3).density!r}"
    assert report(5, "closed forms F11, F03, W11, W03", not failed, detail=detail)


def test_criterion_05_supplement_W03_from_F03(report, stores):
    # not a substitute for the literal form: both routes are checked against d1 d2 d3 F03
    fs, es, _, _ = stores
    F = fs.get(0, 3)
    d = F.partial("t1").partial("t2").partial("t3")
    ok = d == W03() and es.get(0, 3).density == W03()
    assert report(5, "(supplement) W03 == d1 d2 d3 F03 = (1/16)((t1 t2 t3)^-2 - 1)", ok)


def test_criterion_06_corollaries(report, stores):
    fs, _, _, _ = stores
    t0 = time.perf_counter()
    bad = []
    numbers = {}
    for g, v in stable_keys(4):
        F = fs.get(g, v)
        for name, fn in (("degree", lambda: degree_check(g, v, F)), ("inversion", lambda: inversion_check(F)),
                         ("symmetry", lambda: symmetry_check(F)), ("vanishing", lambda: vanishing_check(F)),
                         ("euler", lambda: euler_char_check(g, v, F))):
            if not fn():
                bad.append(f"{name} ({g},{v})")
        numbers[(g, v)] = intersection_numbers_from_F(g, v, F)
    bad += string_equation_residuals(numbers)
    if numbers[(0, 3)].get((0, 0, 0)) != 1:
        bad.append("<tau0^3>_0")
    if numbers[(1, 1)].get((1,)) != Fraction(1, 24):
        bad.append("<tau1>_1")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 300
    assert report(6, "corollaries for 2g-2+v <= 4", ok, elapsed, 300, "; ".join(bad[:5]) or "10 keys")


def test_criterion_07_topological_recursion(report, stores):
    fs, es, _, _ = stores
    t0 = time.perf_counter()
    bad = []
    for g, v in stable_keys(3):
        if not compare_eo(g, v, fs, es):
            bad.append(f"compare ({g},{v})")
        w = es.get(g, v)
        if not (w.is_even() and w.is_symmetric()):
            bad.append(f"parity/symmetry ({g},{v})")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 600
    assert report(7, "residue recursion == d1..dv F for 2g-2+v <= 3", ok, elapsed, 600, "; ".join(bad) or "7 keys")


def test_criterion_08_bridge(report, stores):
    fs, _, ct, _ = stores
    bad, timings = [], []
    for g, v in BRIDGE_KEYS:
        fs.get(g, v)
    for b, c in BRIDGE_SAMPLES:
        t0 = time.perf_counter()
        cfg = BridgeConfig(b, c, 10)
        for g, v in BRIDGE_KEYS:
            _, miss = bridge_mismatches(g, v, fs.get(g, v), cfg, ct)
            bad += miss
        bad += check_unstable_bridge(cfg, ct)
        dt = time.perf_counter() - t0
        timings.append(dt)
        if dt >= 300:
            bad.append(f"(b,c)=({b},{c}) took {dt:.1f} s")
    ok = not bad
    assert report(8, "Laplace bridge coefficients and unstable series", ok, max(timings), 300,
                  "; ".join(bad[:3]) or "max time per (b,c) shown")


def test_criterion_09_identities(report):
    bad = []
    for n in range(31):
        for i in range(n + 1):
            for j in range(n + 1 - i):
                if not check_vandermonde_like(n, i, j):
                    bad.append(("A", n, i, j))
    for k in range(1, 31):
        for a in range(1, k + 1):
            for b in range(k + 1 - a):
                if not check_vandermonde_like(k, a, b, variant=True):
                    bad.append(("C", k, a, b))
    assert report(9, "both binomial identities for n <= 30", not bad), bad[:5]


def test_criterion_10_tripwires(report):
    before = tripwire_total()
    snapshot = dict(TRIPWIRE_COUNTS)
    fs, es, ct = FreeEnergyStore(), EOStore(), CatalanTable()
    for g, v in stable_keys(4):
        fs.get(g, v)
    for g, v in stable_keys(3):
        tr_step(g, v, es)
        es.get(g, v)
    for b, c in BRIDGE_SAMPLES:
        cfg = BridgeConfig(b, c, 10)
        for g, v in BRIDGE_KEYS:
            bridge_mismatches(g, v, fs.get(g, v), cfg, ct)
        check_unstable_bridge(cfg, ct)
    fired = {k: TRIPWIRE_COUNTS.get(k, 0) - snapshot.get(k, 0) for k in TRIPWIRE_COUNTS}
    fired = {k: n for k, n in fired.items() if n}
    ok = tripwire_total() == before and all(isinstance(p, LaurentPoly) for p in fs.entries.values())
    assert report(10, "no exact-division, log-term or non-Laurent tripwire", ok,
                  detail=", ".join(f"{k}: {n}" for k, n in fired.items()) or "0 firings"), fired
