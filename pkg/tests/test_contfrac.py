from decimal import Decimal, getcontext
from fractions import Fraction

from hypothesis import given, settings, strategies as st
import pytest

from sturmlab.contfrac import ContinuedFraction, from_directive

getcontext().prec = 80
GOLDEN = (3 - Decimal(5).sqrt()) / 2  # [0;2,(1)]
SILVER = Decimal(2).sqrt() - 1        # [0;(2)]


def test_golden_convergents():
    cf = ContinuedFraction((2,), (1,))
    got = [c for _, c in zip(range(7), cf.convergents())]
    assert got == [Fraction(0), Fraction(1, 2), Fraction(1, 3), Fraction(2, 5),
                   Fraction(3, 8), Fraction(5, 13), Fraction(8, 21)]


def test_render():
    assert ContinuedFraction((3,), (1, 2)).render() == "[0;3,(1,2)]"
    assert ContinuedFraction((), (2,)).render() == "[0;(2)]"


@pytest.mark.parametrize("cf,value", [
    (ContinuedFraction((2,), (1,)), GOLDEN),
    (ContinuedFraction((), (2,)), SILVER),
])
@pytest.mark.parametrize("x", [Fraction(0), Fraction(1, 3), Fraction(2, 5), Fraction(5, 13),
                               Fraction(41, 99), Fraction(1, 2), Fraction(3, 7), Fraction(1)])
def test_compare_against_decimal(cf, value, x):
    expected = 1 if value > Decimal(x.numerator) / Decimal(x.denominator) else -1
    assert cf.compare(x) == expected


def test_bounds_bracket_value_within_precision():
    cf = ContinuedFraction((2,), (1,))
    lo, hi = cf.bounds(Fraction(1, 10**20))
    assert lo < hi and hi - lo <= Fraction(1, 10**20)
    assert Decimal(lo.numerator) / lo.denominator < GOLDEN < Decimal(hi.numerator) / hi.denominator
    assert abs(float(cf) - float(GOLDEN)) < 1e-15


def test_complement():
    assert ContinuedFraction((2,), (1,)).complement() == ContinuedFraction((1, 1), (1,))
    golden = ContinuedFraction((2,), (1,))
    assert abs(float(golden.complement()) - (1 - float(GOLDEN))) < 1e-15
    # [0;(1,2)] = sqrt(3) - 1 and its complement [0;3,(1,2)].
    c = ContinuedFraction((), (1, 2))
    assert c.complement() == ContinuedFraction((3,), (1, 2))
    assert abs(float(c) + float(c.complement()) - 1) < 1e-15


def test_from_directive_adds_one_to_first_term():
    assert from_directive((), (1,)) == ContinuedFraction((2,), (1,))
    assert from_directive((2,), (1,)) == ContinuedFraction((3,), (1,))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 5000), st.fractions(min_value=0, max_value=Fraction(99, 100)))
def test_floor_affine_matches_decimal(n, rho):
    cf = ContinuedFraction((2,), (1,))
    exact = GOLDEN * n + Decimal(rho.numerator) / Decimal(rho.denominator)
    assert cf.floor_affine(n, rho) == int(exact.to_integral_value(rounding="ROUND_FLOOR"))


def test_floors_affine_batch_matches_single():
    cf = ContinuedFraction((3,), (1, 2))
    rho = Fraction(2, 7)
    batch = cf.floors_affine(3000, rho)
    assert batch == [cf.floor_affine(n, rho) for n in range(3001)]


def test_rejects_nonpositive_terms():
    with pytest.raises(ValueError):
        ContinuedFraction((0,), (1,))
    with pytest.raises(ValueError):
        ContinuedFraction((1,), ())
