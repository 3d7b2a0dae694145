import itertools

import pytest

from trinim import algebra as alg
from trinim.classify import classify
from trinim.core import NULL, OutOfRange
from trinim.enumeration import universe
from trinim.gametypes import T0, T1, T2, TINF
from trinim.nim import (NimPosition, ReducedForm, nim_signature_table, nim_type,
                        random_positions, reduce_nim, to_game)
from trinim.notation import parse


def test_position_normalizes():
    assert NimPosition([2, 0, 1]) == NimPosition([1, 2])
    assert NimPosition.parse("1,1,2,5").heaps == (1, 1, 2, 5)
    assert NimPosition.parse("").heaps == ()
    with pytest.raises(OutOfRange):
        NimPosition([10])
    with pytest.raises(OutOfRange):
        NimPosition.parse("1,a")


def test_to_game(store):
    assert to_game(store, NimPosition()) == NULL
    assert to_game(store, NimPosition([1, 2])) == parse(store, "12")
    g = to_game(store, NimPosition([2, 2]))
    assert g == parse(store, "22") and classify(store, g) == TINF


@pytest.mark.parametrize("heaps, form", [
    ([2, 2, 3], ReducedForm("two_two")),
    ([1, 3], ReducedForm("ones_two", 1)),
    ([5], ReducedForm("three")),
    ([1, 1, 1], ReducedForm("ones", 3)),
    ([], ReducedForm("zero")),
    ([1, 1, 2, 5], ReducedForm("two_two")),
    ([2], ReducedForm("ones_two", 0)),
    ([1, 1, 7], ReducedForm("ones_two", 2)),
])
def test_reduce(heaps, form):
    assert reduce_nim(NimPosition(heaps)) == form


def test_reduced_notation():
    assert reduce_nim(NimPosition([1, 1, 2, 5])).notation() == "22"
    assert reduce_nim(NimPosition([9])).notation() == "3"
    assert reduce_nim(NimPosition([1, 4])).notation() == "12"
    assert reduce_nim(NimPosition()).notation() == "0"


@pytest.mark.parametrize("heaps, t", [([1, 1, 1], T0), ([1, 2], TINF), ([4], T1),
                                      ([], T0), ([1, 1], T2), ([3], T1)])
def test_nim_type_examples(heaps, t):
    assert nim_type(NimPosition(heaps)) == t


def test_closed_form_agrees_with_classifier(store):
    for p in random_positions(300, seed=8):
        assert nim_type(p) == classify(store, to_game(store, p))


def test_all_small_positions(store):
    for r in range(4):
        for heaps in itertools.combinations_with_replacement(range(1, 10), r):
            p = NimPosition(heaps)
            assert nim_type(p) == classify(store, to_game(store, p))


def test_reduction_is_battery_equivalent(store):
    battery = alg.default_battery(store)
    for p in random_positions(150, seed=9):
        g = to_game(store, p)
        r = to_game(store, reduce_nim(p).position())
        assert isinstance(alg.equivalent_up_to(store, g, r, battery), alg.IndistinguishableUpTo)


def test_signature_table_cells(store):
    ones = nim_signature_table(store, 5, 10, False)
    assert ones[2][0] == T1
    assert ones[4][0] == TINF
    with_two = nim_signature_table(store, 5, 10, True)
    assert with_two[0][2] == T1
    assert len(ones) == 6 and all(len(row) == 11 for row in ones)


def test_gang_up(store):
    for m, n in itertools.product(range(2, 10), repeat=2):
        assert classify(store, to_game(store, NimPosition([m, n]))) == TINF


def test_heap_claims_over_day3(store):
    heaps = [store.nim_heap(n) for n in range(10)]
    one = heaps[1]
    for g in universe(store, 3):
        t = {n: classify(store, store.sum(g, heaps[n])) for n in range(2, 10)}
        for n in range(2, 10):
            assert t[n] != T0
            if n >= 3:
                assert t[n] != T2
            assert classify(store, store.sum_all([g, one, heaps[n]])) != T2
        ones = [n for n in t if t[n] == T1]
        assert ones == [] or ones == list(range(2, 10))
        for m, n in itertools.product(range(2, 10), repeat=2):
            assert classify(store, store.sum_all([g, heaps[m], heaps[n]])) == TINF


def test_heap_equivalence_claims(store):
    battery = alg.default_battery(store)
    sig = lambda g: alg.signature(store, g, battery)
    three = sig(store.nim_heap(3))
    for n in range(4, 10):
        assert sig(store.nim_heap(n)) == three
    one_two = sig(parse(store, "12"))
    for m in range(3, 10):
        assert sig(store.sum(store.nim_heap(1), store.nim_heap(m))) == one_two


def test_basic_positions_pairwise_distinguished(store):
    forms = ([ReducedForm("zero"), ReducedForm("three"), ReducedForm("two_two")]
             + [ReducedForm("ones", a) for a in range(1, 7)]
             + [ReducedForm("ones_two", a) for a in range(6)])
    games = [to_game(store, f.position()) for f in forms]
    for g, h in itertools.combinations(games, 2):
        assert isinstance(alg.equivalent_up_to(store, g, h), alg.Distinguished)


def test_inequivalence_witnesses(store):
    p = lambda t: parse(store, t)
    c = lambda t: classify(store, p(t))
    assert c("22+1") == TINF
    assert c("3+1") == TINF
    assert c("3+2_2") == T1
    assert c("{0,11}+2") == T2
    assert c("{0,11}+3") == TINF
