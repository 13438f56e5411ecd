from fractions import Fraction

import pytest

from bcmotzkin.eo import (
    EOForm,
    EOStore,
    compare_eo,
    diff_terms_differentiated,
    kernel,
    tr_bracket_terms,
    tr_terms,
    w02,
    w_from_F,
)
from bcmotzkin.errors import MissingDependencyError, PoleError, PreconditionError
from bcmotzkin.laplace import stable_keys
from bcmotzkin.polyalg import RationalFn, residue
from bcmotzkin.reference import W03, W03_literal, W11

KEYS = stable_keys(3)


@pytest.mark.parametrize("g,v", KEYS)
def test_routes_agree(g, v, fstore, estore):
    assert compare_eo(g, v, fstore, estore)


@pytest.mark.parametrize("g,v", KEYS)
def test_even_and_symmetric(g, v, estore):
    w = estore.get(g, v)
    assert w.is_even() and w.is_symmetric()


def test_w11(estore, fstore):
    assert estore.get(1, 1).density == W11()
    assert w_from_F(1, 1, fstore.get(1, 1)).density == W11()


def test_w03(estore, fstore):
    assert estore.get(0, 3).density == W03()
    assert w_from_F(0, 3, fstore.get(0, 3)).density == W03()


def test_w03_commonly_quoted_form_differs(estore):
    # the quoted expression is not even, while every W_{g,v} is
    assert W03_literal() != estore.get(0, 3).density
    assert not EOForm(0, 3, W03_literal()).is_even()
    assert EOForm(0, 3, W03()).is_even()


def test_w11_bracket_and_residue():
    store = EOStore()
    terms = tr_bracket_terms(1, 1, store)
    t, t1 = RationalFn.gens(("t", "t1"))
    (bracket, centers), = terms["III"]
    # w02(t, -t) = 1/(4t^2), carrying the -1 from d(-t)
    assert bracket == -1 / (4 * t ** 2) and centers == []
    assert not terms["I"] and not terms["IV"]
    f = kernel(1) * bracket
    total = -(residue(f, "t", "t1") + residue(f, "t", "-t1"))
    assert total.embed(("t1",), ["t1", "t1"]) == RationalFn(W11())


@pytest.mark.parametrize("g,v", KEYS)
def test_term_by_term(g, v, fstore, estore):
    estore.get(g, v)
    tr = tr_terms(g, v, estore)
    df = diff_terms_differentiated(g, v, fstore)
    assert df["II"].is_zero()
    assert RationalFn(tr["III"]) == df["III"]
    assert RationalFn(tr["IV"]) == df["IV"]
    if (g, v) == (0, 3):
        assert RationalFn(tr["I"]) == df["I"] + df["corr"]
    else:
        assert df["corr"].is_zero()
        assert RationalFn(tr["I"]) == df["I"]


def test_w02():
    V = ("t", "t1")
    t, t1 = RationalFn.gens(V)
    assert w02("t", "t1", V) == 1 / (t - t1) ** 2
    assert w02("-t", "t1", V) == 1 / (t + t1) ** 2
    with pytest.raises(PoleError):
        w02("t", "t", V)


def test_w02_is_mixed_derivative_of_F02():
    from bcmotzkin.laplace import UNSTABLE
    t1, t2 = RationalFn.gens(("t1", "t2"))
    # d1 d2 F02 is 1/(t1 + t2)^2; W02 in the recursion is 1/(t1 - t2)^2
    assert UNSTABLE.d2F02 == 1 / (t1 + t2) ** 2
    assert UNSTABLE.d2F02 != w02("t1", "t2", ("t1", "t2"))


def test_store_errors():
    s = EOStore()
    with pytest.raises(MissingDependencyError):
        s.require(1, 1)
    with pytest.raises(PreconditionError):
        s.get(0, 2)


def test_cache_warm_equals_cold(tmp_path, estore):
    from bcmotzkin.cache import DiskCache
    cold = EOStore(DiskCache(tmp_path))
    assert cold.get(1, 2).density == estore.get(1, 2).density
    warm = EOStore(DiskCache(tmp_path))
    assert warm.get(1, 2).density == estore.get(1, 2).density
