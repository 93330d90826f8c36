from fractions import Fraction
from decimal import Decimal

from hypothesis import given, settings, strategies as st
import pytest

from sturmlab.errors import (BothFoundError, NeitherFoundError, PreconditionError,
                             ResourceBoundError, SpecInvariantError, SpecSyntaxError)
from sturmlab.words import (EpisturmianDirective, Mechanical,
                            SturmianDirective, detect_type, exchange, exchange_spec,
                            parse_word_spec, prefix, window)
from sturmlab.contfrac import ContinuedFraction

import oracles

FIB = parse_word_spec("fibonacci")


def periodic(head, tail):
    return lambda k: head[k] if k < len(head) else tail[(k - len(head)) % len(tail)]


def test_fibonacci_prefix():
    assert prefix(FIB, 11) == "abaababaaba"
    assert prefix(FIB, 0) == ""


def test_tribonacci_prefix():
    assert prefix(parse_word_spec("tribonacci"), 7) == "abacaba"


def test_aliases():
    assert FIB == SturmianDirective((), (1,))
    assert parse_word_spec("epi:dir=(abc)*") == EpisturmianDirective("", "abc")


@pytest.mark.parametrize("text,head,tail", [
    ("sturmian:d=(1)*", (), (1,)),
    ("sturmian:d=2,(1)*", (2,), (1,)),
    ("sturmian:d=(1,3)*", (), (1, 3)),
    ("sturmian:d=3,1,(2)*", (3, 1), (2,)),
])
def test_directive_matches_standard_sequences(text, head, tail):
    spec = parse_word_spec(text)
    assert (spec.head, spec.tail) == (head, tail)
    assert prefix(spec, 3000) == oracles.standard_sturmian(periodic(head, tail), 3000)


@pytest.mark.parametrize("head,tail", [("", "abc"), ("", "ab"), ("a", "bc"), ("", "aabc"),
                                       ("ca", "abcd")])
def test_episturmian_matches_palindromic_closure(head, tail):
    text = f"epi:dir={head + ',' if head else ''}({tail})*"
    word = oracles.episturmian(periodic(head, tail), 1500)
    assert prefix(parse_word_spec(text), 1500) == word


def test_mechanical_equals_fibonacci():
    mech = parse_word_spec("mech:cf=[0;2,(1)],rho=0")
    assert prefix(mech, 13) == prefix(FIB, 13)
    assert prefix(mech, 10**4) == prefix(FIB, 10**4)


def test_mechanical_matches_decimal_oracle():
    for rho in ("0", "1/3", "5/7"):
        mech = parse_word_spec(f"mech:cf=[0;2,(1)],rho={rho}")
        assert prefix(mech, 2000) == oracles.golden_mechanical(2000, Decimal(Fraction(rho).numerator)
                                                               / Fraction(rho).denominator)


@pytest.mark.parametrize("head,tail,cf_head,cf_tail", [
    ((2,), (1,), (3,), (1,)),
    ((1,), (3,), (2,), (3,)),
    ((), (1, 2), (2,), (2, 1)),
    ((3,), (1, 2), (4,), (1, 2)),
])
def test_mechanical_agrees_with_directive(head, tail, cf_head, cf_tail):
    # Slope [0; 1+d1, d2, ...] with intercept 0 gives the characteristic word of d.
    mech = Mechanical(ContinuedFraction(cf_head, cf_tail), Fraction(0))
    assert prefix(mech, 5000) == prefix(SturmianDirective(head, tail), 5000)


def test_window_examples():
    assert window(FIB, 2, 4) == "aaba"
    assert window(FIB, 0, 5) == "abaab"
    assert window(FIB, 5, 0) == ""


def test_exchange():
    assert exchange("abaab") == "babba"
    assert exchange("") == ""
    assert prefix(exchange_spec(FIB), 5) == "babba"
    assert exchange_spec(exchange_spec(FIB)) == FIB
    with pytest.raises(PreconditionError):
        exchange("abc")


def test_detect_type():
    assert detect_type(FIB, 20) == "a"
    assert detect_type(exchange_spec(FIB), 20) == "b"
    with pytest.raises(NeitherFoundError):
        detect_type(parse_word_spec("literal:(ab)*"), 20)
    with pytest.raises(BothFoundError):
        detect_type(parse_word_spec("literal:(aabb)*"), 20)


@pytest.mark.parametrize("text", ["fibonacci", "sturmian:d=(2)*", "mech:cf=[0;3,(1,2)],rho=1/5",
                                  "sturmian:d=1,(3)*"])
def test_detect_type_flips_under_exchange(text):
    spec = parse_word_spec(text)
    assert detect_type(exchange_spec(spec)) == exchange(detect_type(spec))


def test_morphic_fixed_point():
    fib = parse_word_spec("morphic:a->ab;b->a;seed=a")
    assert prefix(fib, 500) == prefix(FIB, 500)
    thue = parse_word_spec("morphic:a->ab;b->ba;seed=a")
    assert prefix(thue, 8) == "abbabaab"


def test_literal_and_derived_grammar():
    assert prefix(parse_word_spec("literal:ab(c)*"), 5) == "abccc"
    assert prefix(parse_word_spec("cat:a+fibonacci"), 6) == "aabaab"
    assert prefix(parse_word_spec("desub:L_a:fibonacci"), 8) == "babbabab"
    assert prefix(parse_word_spec("swap:fibonacci"), 5) == "babba"


@pytest.mark.parametrize("text", [
    "fibonacci", "tribonacci", "sturmian:d=2,(1)*", "epi:dir=ab,(abc)*",
    "mech:cf=[0;3,(1,2)],rho=1/5", "morphic:a->ab;b->a;seed=a", "literal:ab(ba)*",
    "swap:fibonacci", "cat:ab+tribonacci", "desub:R_a:cat:a+fibonacci",
])
def test_render_round_trip(text):
    spec = parse_word_spec(text)
    assert parse_word_spec(spec.render()) == spec


@pytest.mark.parametrize("text,rule", [
    ("epi:dir=(aaa)*", "directive-tail-two-letters"),
    ("mech:cf=[0;2,(1)],rho=3/2", "rho-range"),
    ("sturmian:d=(0)*", "positive-partial-quotients"),
    ("morphic:a->ba;b->a;seed=a", "prolongable"),
])
def test_invariant_violations_name_the_rule(text, rule):
    with pytest.raises(SpecInvariantError) as info:
        parse_word_spec(text)
    assert info.value.rule == rule


@pytest.mark.parametrize("text", ["fibonaccix", "sturmian:d=(1)", "epi:dir=(abc)* ", "mech:cf=[0;2,(1)]x",
                                  "nonsense", "literal:(ab)", ""])
def test_syntax_errors(text):
    with pytest.raises(SpecSyntaxError):
        parse_word_spec(text)


def test_resource_bound(monkeypatch):
    monkeypatch.setenv("STURMLAB_MAX_PREFIX", "100")
    with pytest.raises(ResourceBoundError):
        prefix(parse_word_spec("sturmian:d=(7)*"), 101)


SPECS = st.sampled_from(["fibonacci", "tribonacci", "sturmian:d=(2,1)*",
                         "mech:cf=[0;3,(1,2)],rho=2/9", "epi:dir=(abcd)*"])


@settings(max_examples=50, deadline=None)
@given(SPECS, st.integers(0, 3000), st.integers(0, 3000))
def test_prefix_monotone(text, n, m):
    spec = parse_word_spec(text)
    n, m = sorted((n, m))
    assert prefix(spec, m)[:n] == prefix(spec, n)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=3),
       st.lists(st.integers(1, 4), min_size=1, max_size=3))
def test_directive_oracle_random(head, tail):
    spec = SturmianDirective(tuple(head), tuple(tail))
    assert prefix(spec, 800) == oracles.standard_sturmian(periodic(head, tail), 800)
