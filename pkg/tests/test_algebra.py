import itertools

import numpy as np
import pytest

from trinim import algebra as alg
from trinim.bitscan import MaskEngine
from trinim.classify import classify
from trinim.core import NULL
from trinim.enumeration import universe
from trinim.gametypes import ALL_TYPES, T0, T1, T2, TINF, format_typeset, parse_typeset
from trinim.notation import parse, render


@pytest.fixture
def u3(store):
    return universe(store, 3)


def test_forbidden_list_is_complement_of_addition_table():
    assert len(alg.FORBIDDEN_EQUATIONS) == 18
    labels = {f.label for f in alg.FORBIDDEN_EQUATIONS}
    expected = {"O+P=N", "N+P=P", "O+O=P", "P+P=O", "O+N=O", "P+P=N", "O+P=P",
                "N+P=O", "N+N=P", "Q+P=N", "Q+P=P", "Q+O=P", "Q+P=O", "Q+N=O",
                "Q+N=P", "Q+Q=N", "Q+Q=P", "O+O=O"}
    assert labels == expected
    allowed = sum(len(alg.ADDITION_TABLE[(a, b)])
                  for a, b in itertools.combinations_with_replacement(ALL_TYPES, 2))
    assert allowed == 22 == len(alg.SAMPLE_SUMS)


def test_typeset_formatting():
    assert format_typeset(parse_typeset("12∞")) == "12∞"
    assert format_typeset(()) == "none"
    assert format_typeset(ALL_TYPES) == "All"
    assert format_typeset({T0}, zero_as_three=True) == "3"
    assert parse_typeset("3") == {T0}


def test_addition_table(store, u3):
    t = alg.derive_type_table(store, "addition", u3)
    assert t.cell(T0, TINF) == {TINF}
    assert t.cell(T1, T1) == {T1, T2, TINF}
    assert alg.table_matches(t, alg.ADDITION_TABLE) == []


def test_witnesses_are_needed(store, u3):
    bare = alg.derive_type_table(store, "addition", u3, extra_witnesses=[])
    assert alg.table_matches(bare, alg.ADDITION_TABLE) != []
    # Whatever is observed must still be allowed.
    for key, cell in bare.cells.items():
        assert cell <= alg.ADDITION_TABLE[key]


def test_subtraction_table(store, u3):
    t = alg.derive_type_table(store, "subtraction", u3)
    assert t.cell(T0, TINF) == frozenset()
    assert alg.table_matches(t, alg.SUBTRACTION_TABLE) == []
    for key in [(T1, T1), (TINF, T0), (TINF, T1), (TINF, T2), (TINF, TINF)]:
        assert t.cell(*key) == set(ALL_TYPES)


def test_multiple_tables(store, u3):
    dbl = alg.derive_type_table(store, "doubling", u3)
    assert dbl.cell(T2) == {T1, TINF}
    assert alg.table_matches(dbl, alg.DOUBLING_TABLE) == []
    tre = alg.derive_type_table(store, "trebling", u3)
    assert alg.table_matches(tre, alg.TREBLING_TABLE) == []
    assert alg.derive_type_table(store, "multiple:2", u3).cells == dbl.cells


def test_table_kinds():
    assert alg.parse_table_kind("trebling") == ("multiple", 3)
    assert alg.parse_table_kind("multiple:5") == ("multiple", 5)
    for bad in ("multiple:1", "multiple:x", "division"):
        with pytest.raises(alg.UsageError):
            alg.parse_table_kind(bad)


def test_empty_base_rejected(store):
    with pytest.raises(alg.UsageError):
        alg.derive_type_table(store, "addition", [])


@pytest.mark.parametrize("equation, left, right", alg.SAMPLE_SUMS)
def test_sample_sums_classify_as_claimed(store, equation, left, right):
    ta, tb, ts = alg.parse_equation(equation)
    g, h = parse(store, left), parse(store, right)
    assert sorted([classify(store, g), classify(store, h)]) == sorted([ta, tb])
    assert classify(store, store.sum(g, h)) == ts


def test_solve(store, u3):
    assert alg.solve_equation(store, T2, T2, T2, u3) is None
    g, h = alg.solve_equation(store, TINF, TINF, T2, u3)
    assert (classify(store, g), classify(store, h)) == (TINF, TINF)
    assert classify(store, store.sum(g, h)) == T2
    w = parse(store, "{1,11}")
    assert classify(store, store.sum(w, w)) == T2
    g, h = alg.solve_equation(store, T1, T1, T1, u3)
    assert classify(store, store.sum(g, h)) == T1
    for f in alg.FORBIDDEN_EQUATIONS:
        a, b = (sorted(f.addends) * 2)[:2]
        assert alg.solve_equation(store, a, b, f.sum, u3) is None


def test_solve_is_first_in_id_order(store, u3):
    g, h = alg.solve_equation(store, T1, T0, T1, u3)
    assert (g, h) == (store.nim_heap(1), NULL)


def test_parse_equation():
    assert alg.parse_equation("Q+Q=O") == (TINF, TINF, T2)
    assert alg.parse_equation("inf + 1 = 2") == (TINF, T1, T2)
    with pytest.raises(alg.UsageError):
        alg.parse_equation("Q+Q")


def test_scan_day3(store, u3):
    assert alg.scan_forbidden(store, u3) == []


def test_scan_reports_corrupted_table(store, u3):
    table = dict(alg.ADDITION_TABLE)
    table[(T1, T1)] = table[(T1, T1)] - {T2}
    viol = alg.scan_forbidden(store, u3, table=table)
    one = store.nim_heap(1)
    assert any(v.g == v.h == one and v.equation == "N+N=O" for v in viol)


def test_scan_extended_small(store, u3):
    u2 = universe(store, 2)
    assert alg.scan_forbidden(store, u2, u3) == []


def test_equivalence_examples(store):
    v = alg.equivalent_up_to(store, store.nim_heap(3), store.nim_heap(2))
    assert isinstance(v, alg.Distinguished)
    assert v.witness == parse(store, "{0,11}")
    assert (v.left, v.right) == (TINF, T2)
    for a, b in [("13", "12"), ("3", "4"), ("5", "9")]:
        v = alg.equivalent_up_to(store, parse(store, a), parse(store, b))
        assert isinstance(v, alg.IndistinguishableUpTo)
        assert v.battery_size == len(alg.default_battery(store))
    with pytest.raises(alg.UsageError):
        alg.equivalent_up_to(store, NULL, NULL, [])


def test_default_battery_contents(store):
    b = alg.default_battery(store)
    assert len(b) == len(set(b))
    for text in ("{0,11}", "22", "3", "2_10", "1^6", "11112", "{2}"):
        assert parse(store, text) in b
    assert set(universe(store, 3)) <= set(b)


def test_equivalence_is_an_equivalence(store, u3):
    battery = alg.default_battery(store)
    games = list(u3) + [parse(store, t) for t in ("3", "4", "13", "12", "22", "2222")]
    same = {(g, h): isinstance(alg.equivalent_up_to(store, g, h, battery),
                               alg.IndistinguishableUpTo)
            for g in games for h in games}
    for g in games:
        assert same[(g, g)]
        for h in games:
            assert same[(g, h)] == same[(h, g)]
            for k in games:
                if same[(g, h)] and same[(h, k)]:
                    assert same[(g, k)]


def test_signatures(store):
    sym = lambda g: "".join(t.symbol for t in alg.signature(store, g))
    assert sym(NULL) == "12012012012"
    assert sym(store.nim_heap(1)) == "∞∞120120120"
    assert sym(store.nim_heap(2)) == "∞∞1∞11∞11∞1"
    ctx = [NULL, store.nim_heap(1)]
    assert alg.signature(store, store.nim_heap(1), ctx) == [T1, T2]


def test_infinity_checks(store, day4_store):
    assert alg.infinity_absorption_check(store, parse(store, "22"))
    assert not alg.infinity_absorption_check(store, NULL)
    two1 = parse(store, "{2}")
    assert not alg.infinity_absorption_check(store, two1)
    assert classify(store, two1) == T2
    u4 = universe(day4_store, 4)
    assert alg.absorbs_all_nonzero(day4_store, parse(day4_store, "{2}"), u4)


def test_near_infinity(store, day4_store):
    found = alg.near_infinity_search(day4_store, universe(day4_store, 4), T2)
    assert parse(day4_store, "{2}") in found
    assert all(classify(day4_store, g) == T2 for g in found)
    assert alg.near_infinity_search(store, universe(store, 2), T0) == []
    result = alg.near_infinity_search(store, universe(store, 3), T1)
    assert isinstance(result, list)
    assert parse(store, "{2}") in alg.near_infinity_search(store, universe(store, 3), T2)


def test_only_zero_is_battery_equivalent_to_zero(day4_store):
    keep = alg.equivalent_to_zero_mask(day4_store)
    assert list(np.nonzero(keep)[0]) == [0]


def test_corollary_chain(store):
    p, q = parse(store, "111"), parse(store, "12")
    for k in range(4):
        assert classify(store, store.sum(store.multiple(p, k), q)) == TINF


def test_single_type_subtraction_entries(day4_store):
    """sum type s, known addend c => other addend is forced, over all pairs."""
    forced = {(T0, T0): T0, (T0, T1): T2, (T0, T2): T1,
              (T2, T0): T2, (T2, T1): T1, (T1, T0): T1}
    eng = MaskEngine.for_store(day4_store)
    for x in eng.day3:
        tx = classify(day4_store, x)
        sums = eng.context_types(x)
        for (s, c), other in forced.items():
            # day-4 game as the unknown addend, x as the known one
            if tx == c:
                assert np.all(eng.types[sums == s] == other)
            # and the other way round
            sel = (eng.types == c) & (sums == s)
            if sel.any():
                assert tx == other


def test_q_plus_p_is_q(day4_store):
    eng = MaskEngine.for_store(day4_store)
    for x in eng.day3:
        tx = classify(day4_store, x)
        sums = eng.context_types(x)
        if tx in (T0, TINF):
            other = TINF if tx == T0 else T0
            assert np.all(sums[eng.types == other] == TINF)


def test_day4_tables(day4_store):
    u4 = universe(day4_store, 4)
    for kind, ref in [("addition", alg.ADDITION_TABLE), ("subtraction", alg.SUBTRACTION_TABLE),
                      ("doubling", alg.DOUBLING_TABLE), ("trebling", alg.TREBLING_TABLE)]:
        assert alg.table_matches(alg.derive_type_table(day4_store, kind, u4), ref) == []


def test_self_sum_claims_day4(day4_store):
    eng = MaskEngine.for_store(day4_store)
    doubled, trebled = eng.multiple_types(2), eng.multiple_types(3)
    assert not np.any((eng.types == T1) & (doubled == T1))
    assert not np.any(trebled == T1)
    assert not np.any(np.isin(eng.types, [T2, TINF]) & (trebled == T2))


def test_higher_multiples_stay_within_addition_table(store, u3):
    t4 = alg.derive_type_table(store, "multiple:4", u3)
    t2 = alg.derive_type_table(store, "doubling", u3)
    # 4G = 2G + 2G, so every 4G type is reachable by adding two 2G types.
    for t, cell in t4.cells.items():
        possible = set()
        for a in t2.cell(t):
            for b in t2.cell(t):
                possible |= alg.ADDITION_TABLE[(a, b)]
        assert cell <= possible
