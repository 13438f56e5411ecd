import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bcmotzkin.combinatorics import (
    BCPolynomial,
    CatalanTable,
    MotzkinTable,
    ProfileKey,
    binomial,
    catalan,
    catalan_generalized,
    check_motzkin_01_recursion,
    check_vandermonde_like,
    motzkin,
    motzkin_bc_direct,
    motzkin_bc_recursive,
    profiles,
)
from bcmotzkin.errors import PreconditionError

KEYS = list(profiles(2, 3, 12))


@pytest.mark.parametrize("n,k,expected", [(4, 2, 6), (5, 0, 1), (3, 5, 0), (-2, 1, 0), (4, -1, 0)])
def test_binomial(n, k, expected):
    assert binomial(n, k) == expected


def test_catalan_and_motzkin_sequences():
    assert [catalan(k) for k in range(9)] == [1, 1, 2, 5, 14, 42, 132, 429, 1430]
    assert [motzkin(n) for n in range(9)] == [1, 1, 2, 4, 9, 21, 51, 127, 323]
    assert catalan(0) == 1 and catalan(3) == 5 and catalan(6) == 132


@pytest.mark.parametrize("g,mu,expected", [(0, (4,), 2), (0, (3,), 0), (0, (1, 1), 1), (1, (4,), 1), (0, (0,), 1)])
def test_generalized_catalan_examples(g, mu, expected, ctable):
    assert catalan_generalized(ProfileKey.of(g, mu), ctable) == expected


def test_aerated_catalan(ctable):
    for m in range(13):
        assert ctable.value(0, (m,)) == (catalan(m // 2) if m % 2 == 0 else 0)


def test_conventions(ctable):
    assert ctable.value(-1, (2,)) == 0
    assert ctable.value(0, (2, -1)) == 0
    assert ctable.value(0, (2, 0)) == 0
    assert ctable.value(1, (0,)) == 0


def test_motzkin_examples(ctable, mtable):
    b, c = BCPolynomial.b(), BCPolynomial.c()
    assert motzkin_bc_direct(ProfileKey.of(0, (4,)), ctable).specialize(1, 1) == 9
    assert motzkin_bc_recursive(ProfileKey.of(0, (2,)), mtable) == b * b + c * c
    assert motzkin_bc_recursive(ProfileKey.of(0, (0,)), mtable) == BCPolynomial.one()
    assert motzkin_bc_recursive(ProfileKey.of(0, (1, 1)), mtable) == c * c
    assert motzkin_bc_direct(ProfileKey.of(0, (1, 1)), ctable) == c * c


def test_zero_entry_gives_zero_polynomial(ctable, mtable):
    for g, n in [(0, (3, 0)), (1, (0,)), (0, (2, 2, 0)), (1, (0, 4))]:
        assert not motzkin_bc_direct(ProfileKey.of(g, n), ctable)
        assert not mtable.value(g, n)


def test_key_canonical_form():
    k = ProfileKey.of(1, (1, 4, 2))
    assert k.v == 3 and k.total == 7
    assert k.canonical().degrees == (4, 2, 1)
    with pytest.raises(PreconditionError):
        ProfileKey(0, 2, (1,))


def test_symmetry_under_slot_choice():
    # a fresh table per key would be slow; expand bypasses the memo for the top call
    ct, mt = CatalanTable(), MotzkinTable()
    for key in KEYS:
        if key.v == 1:
            continue
        for perm in set(itertools.permutations(key.degrees)):
            vals = {ct.expand(key.g, perm, slot) for slot in range(key.v)}
            assert vals == {ct.value(key.g, key.degrees)}, (key, perm)
        polys = {mt.expand(key.g, key.degrees, slot) for slot in range(key.v)}
        assert len(polys) == 1


def test_parity_and_nonnegativity(ctable):
    for key in KEYS:
        val = ctable.value(key.g, key.degrees)
        assert val >= 0
        if key.total % 2:
            assert val == 0


def test_catalan_reduction(ctable):
    for key in KEYS:
        assert motzkin_bc_direct(key, ctable).specialize(0, 1) == ctable.value(key.g, key.degrees)


def test_route_equivalence(ctable, mtable):
    for key in KEYS:
        assert motzkin_bc_direct(key, ctable) == motzkin_bc_recursive(key, mtable), key


def test_weight_structure(ctable):
    for key in KEYS:
        for eb, ec in motzkin_bc_direct(key, ctable).terms:
            assert eb + ec == key.total and ec % 2 == 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(KEYS), st.fractions(min_value=0, max_value=5, max_denominator=7),
       st.fractions(min_value=Fraction(1, 7), max_value=5, max_denominator=7))
def test_nonnegative_specializations(key, b, c):
    assert motzkin_bc_direct(key).specialize(b, c) >= 0


@pytest.mark.parametrize("n", range(1, 21))
def test_01_recursion_polynomial_mode(n, ctable):
    assert check_motzkin_01_recursion(n, table=ctable)


@pytest.mark.parametrize("n,b,c", [(1, 1, 1), (2, 1, 1), (4, 2, 3)])
def test_01_recursion_examples(n, b, c):
    assert check_motzkin_01_recursion(n, b, c)


def test_01_recursion_needs_positive_n():
    with pytest.raises(PreconditionError):
        check_motzkin_01_recursion(0)


@pytest.mark.parametrize("n,i,j", [(0, 0, 0), (5, 1, 2), (10, 0, 0)])
def test_vandermonde_examples(n, i, j):
    assert check_vandermonde_like(n, i, j)


def test_vandermonde_all_small():
    for n in range(31):
        for i in range(n + 1):
            for j in range(n + 1 - i):
                assert check_vandermonde_like(n, i, j)
    for k in range(1, 31):
        for a in range(1, k + 1):
            for b in range(k + 1 - a):
                assert check_vandermonde_like(k, a, b, variant=True)


def test_vandermonde_preconditions():
    with pytest.raises(PreconditionError):
        check_vandermonde_like(3, 2, 2)
    with pytest.raises(PreconditionError):
        check_vandermonde_like(3, 0, 1, variant=True)


def test_table_json_roundtrip(ctable, mtable):
    for key in KEYS[:60]:
        ctable.value(key.g, key.degrees)
        mtable.value(key.g, key.degrees)
    rows = json.loads(json.dumps(ctable.records()))
    assert rows == sorted(rows, key=lambda r: (r["g"], r["v"], r["n"]))
    assert CatalanTable.from_records(rows).memo == ctable.memo
    assert all(isinstance(r["value"], str) for r in rows)
    mt = MotzkinTable.from_records(json.loads(json.dumps(mtable.records())))
    assert mt.memo == mtable.memo


def test_bcpolynomial_json_and_arithmetic():
    b, c = BCPolynomial.b(), BCPolynomial.c()
    p = (b + c) * (b + c) - b * b
    assert p == c * c + (b * c).scale(2)
    assert BCPolynomial.from_json(p.to_json()) == p
    assert p.specialize(Fraction(1, 2), 3) == 9 + 3
    assert not (p - p).terms
