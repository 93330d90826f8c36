from fractions import Fraction
from itertools import combinations

from hypothesis import given, settings, strategies as st
import pytest

from sturmlab.errors import NotAFactorError, NotSturmianError, PreconditionError
from sturmlab.factors import (check_balance, check_complexity, check_counting_inequalities,
                              check_fact1, check_fact4, check_lemma_lastletter, check_separating,
                              check_special_unique, factor_table, is_balanced, richness,
                              slope_frequency, special_factors)
from sturmlab.words import exchange_spec, parse_word_spec, prefix

import oracles

FIB = parse_word_spec("fibonacci")
TRIB = parse_word_spec("tribonacci")
STURMIAN = ["fibonacci", "swap:fibonacci", "sturmian:d=2,(1)*", "mech:cf=[0;3,(1,2)]",
            "mech:cf=[0;2,(1)],rho=1/3"]


def test_factor_table_examples():
    assert set(factor_table(FIB, 2)) == {"ab", "ba", "aa"}
    assert factor_table(FIB, 2).certified
    assert set(factor_table(FIB, 3)) == {"aba", "baa", "aab", "bab"}
    assert list(factor_table(FIB, 0)) == [""]


@pytest.mark.parametrize("text", STURMIAN)
def test_tables_match_sliding_window_oracle(text):
    spec = parse_word_spec(text)
    word = prefix(spec, 20000)
    for m in (1, 5, 17, 60):
        table = factor_table(spec, m)
        assert set(table) == oracles.window_set(word, m)
        assert len(table) == m + 1
        vectors = sorted(table.abelian_vectors())
        assert len(vectors) == 2 and all(abs(x - y) == 1 for x, y in zip(*vectors))


def test_non_sturmian_table_rejected():
    with pytest.raises(NotSturmianError):
        factor_table(parse_word_spec("morphic:a->ab;b->ba;seed=a"), 4, mode="sturmian")


def test_heuristic_table_for_three_letters():
    table = factor_table(TRIB, 3)
    assert table.certificate == "saturated-heuristic"
    assert set(table) == oracles.window_set(prefix(TRIB, 20000), 3)


def brute_balanced(w):
    for m in range(1, len(w)):
        counts = [f.count("a") for f in oracles.window_set(w, m)]
        if max(counts) - min(counts) > 1:
            return False
    return True


def test_is_balanced_examples():
    assert is_balanced("abaababaaba")
    result = is_balanced("aabb")
    assert not result and result.witness == ("aa", "bb")
    assert is_balanced("a")


@settings(max_examples=200, deadline=None)
@given(st.text("ab", max_size=16))
def test_is_balanced_matches_brute_force(w):
    result = is_balanced(w)
    assert bool(result) == brute_balanced(w)
    if not result:
        u, v = result.witness
        assert len(u) == len(v) and abs(u.count("a") - v.count("a")) >= 2
        assert u in w and v in w


def test_special_factor_examples():
    assert special_factors(FIB, 1, "right") == ["a"]
    assert special_factors(FIB, 2, "left") == ["ab"]
    assert special_factors(FIB, 0, "left") == [""]


def test_richness_examples():
    assert (richness(FIB, "b").letter, richness(FIB, "b").witness) == ("b", "a")
    assert (richness(FIB, "ab").letter, richness(FIB, "ab").witness) == ("b", "aa")
    assert (richness(FIB, "aba").letter, richness(FIB, "aba").witness) == ("a", "bab")
    with pytest.raises(NotAFactorError):
        richness(FIB, "bb")
    with pytest.raises(PreconditionError):
        richness(TRIB, "ab")


@pytest.mark.parametrize("text", STURMIAN)
def test_richness_matches_brute_force_and_reversal(text):
    spec = parse_word_spec(text)
    word = prefix(spec, 8000)
    for m in (1, 2, 7, 30):
        for f in factor_table(spec, m):
            verdict = richness(spec, f)
            assert verdict.letter == oracles.brute_richness(word, f)
            assert richness(spec, f[::-1]).letter == verdict.letter
            z = verdict.letter
            assert f.count(z) > verdict.witness.count(z)


def test_frequency_examples():
    f_b = slope_frequency(FIB, "b")
    f_a = slope_frequency(FIB, "a")
    assert f_b.exact and f_b.cf.render() == "[0;2,(1)]"
    assert abs(f_b.value - 0.381966) < 1e-6 and abs(f_a.value - 0.618034) < 1e-6
    assert prefix(FIB, 13).count("a") == 8
    mech = slope_frequency(parse_word_spec("mech:cf=[0;2,(1)]"), "b")
    assert mech.cf == f_b.cf
    periodic = slope_frequency(parse_word_spec("literal:(ab)*"), "b")
    assert not periodic.exact and periodic.lower == periodic.upper == Fraction(1, 2)


def test_counting_examples():
    f_a = slope_frequency(FIB, "a")
    assert f_a.compare(Fraction(1 + 1, 2)) < 0 and f_a.compare(Fraction(1 - 1, 2)) > 0
    assert f_a.compare(Fraction(2, 3)) < 0


@pytest.mark.parametrize("check,kwargs", [
    (check_lemma_lastletter, {"m_max": 30}),
    (check_counting_inequalities, {"m_max": 60}),
    (check_special_unique, {"m_max": 60}),
    (check_complexity, {"m_max": 80}),
    (check_balance, {"n": 2000}),
])
@pytest.mark.parametrize("text", STURMIAN)
def test_sturmian_checks_pass(check, kwargs, text):
    report = check(parse_word_spec(text), **kwargs)
    assert report.passed, report.violations[:3]


def test_lastletter_single_case():
    report = check_lemma_lastletter(FIB, 1)
    assert {"factor": "a", "side": "right", "richness": "a", "witness": "b"} in report.witnesses


@pytest.mark.parametrize("text", ["fibonacci", "sturmian:d=(2,1)*", "tribonacci", "epi:dir=(abcd)*"])
def test_prefixes_left_special(text):
    assert check_fact1(parse_word_spec(text), 60).passed


def test_separating():
    assert check_separating(TRIB, 50).passed
    assert check_separating(FIB, 50).passed
    report = check_separating(parse_word_spec("literal:(bc)*"), 10)
    assert not report.passed and "bc" in report.witnesses


def test_fact4():
    assert check_fact4(TRIB, 20).passed
    assert check_fact4(FIB, 20).passed
    empty = [w for w in check_fact4(FIB, 0).witnesses if w["factor"] == ""]
    assert empty == [{"factor": "", "pivot": "a", "extensions": ["aa", "ab", "ba"]}]


def test_fact4_detects_failure():
    report = check_fact4(parse_word_spec("literal:(abcd)*"), 2)
    assert {"factor": "", "extensions": ["ab", "bc", "cd", "da"]} in report.violations
    thue_morse = check_fact4(parse_word_spec("morphic:a->ab;b->ba;seed=a"), 3)
    assert {"factor": "", "extensions": ["aa", "ab", "ba", "bb"]} in thue_morse.violations


def test_report_json_shape():
    doc = check_balance(FIB, 100).to_json()
    assert set(doc) >= {"check", "spec", "bound", "status", "violations", "witnesses"}
    assert doc["status"] == "pass"
