import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import random_genus2, sympy_disc6

from kumbrauer import polyarith as pa
from kumbrauer.curve_model import (CurveDegreeError, CurveSyntaxError, GenusTwoCurve, SingularCurveError,
                                   disc6, format_curve, parse_curve, reduce_mod_p)


def test_example_discriminant(example_curve):
    assert example_curve.discriminant() / 2**12 == 2**12 * 25 * 23


def test_disc_of_x6_minus_1_is_positive():
    # 6^6 = 46656; a sextic with six real roots has positive discriminant
    assert disc6([-1, 0, 0, 0, 0, 0, 1]) == 46656


@pytest.mark.parametrize("seed", range(25))
def test_disc6_matches_sympy(seed):
    rng = random.Random(seed)
    F, G = random_genus2(rng)
    h = pa.add([4 * a for a in F], pa.mul(G, G))
    assert disc6(h) == sympy_disc6(h)


def test_disc6_quintic_is_limit_of_sextics():
    # one root drifting to infinity: t^6 P(1/t)-style check through eps x^6 + P
    P = [3, -1, 0, 2, 5, 7]
    leading = [Fraction(0)] * 6 + [Fraction(1, 10**12)]
    near = disc6(pa.add(P, leading))
    assert abs(near - disc6(P)) / abs(disc6(P)) < Fraction(1, 10**6)


def test_disc6_degenerate_degrees():
    assert disc6([1, 0, 0, 0, 1]) == 0
    with pytest.raises(ValueError):
        disc6([0])


def test_parse_simple_and_with_g():
    C = parse_curve("y^2 + x^3*y = x^6 - 1")
    assert list(C.G) == [0, 0, 0, 1]
    assert list(C.F) == [-1, 0, 0, 0, 0, 0, 1]
    assert format_curve(C) == "y^2 + (x^3)*y = x^6 - 1"


def test_parse_accepts_rational_coefficients_and_spacing():
    C = parse_curve("y^2 = (1/2)*x^5 - 3/4 *x + 2")
    assert C.F.coefficients == (Fraction(2), Fraction(-3, 4), 0, 0, 0, Fraction(1, 2))


def test_parse_move_terms_across():
    assert parse_curve("y^2 - x^6 = x + 1") == parse_curve("y^2 = x^6 + x + 1")


def test_parse_errors():
    with pytest.raises(CurveSyntaxError):
        parse_curve("y^2 = 2x + x^6")
    with pytest.raises(CurveSyntaxError):
        parse_curve("y^2 = x^6 +")
    with pytest.raises(CurveDegreeError):
        parse_curve("y^2 = x^7 + 1")
    with pytest.raises(CurveDegreeError):
        parse_curve("y^2 + x^4*y = x^6 + 1")
    with pytest.raises(SingularCurveError):
        parse_curve("y^2 = x^5")
    with pytest.raises(SingularCurveError):
        parse_curve("y^2 = (x^3 - 1)^2")


def test_syntax_error_position():
    with pytest.raises(CurveSyntaxError) as info:
        parse_curve("y^2 = x^6 $ 1")
    assert info.value.position == 10


coeff = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@settings(max_examples=60, deadline=None)
@given(st.lists(coeff, min_size=7, max_size=7), st.lists(coeff, max_size=4))
def test_format_parse_round_trip(F, G):
    try:
        C = GenusTwoCurve(F, G)
    except (SingularCurveError, CurveDegreeError):
        return
    assert parse_curve(str(C)) == C


def test_reduction_flags():
    C = parse_curve("y^2 = x^6 + x^3 + x + 1")
    assert not reduce_mod_p(C, 2).good
    assert not reduce_mod_p(C, 5).good
    assert not reduce_mod_p(C, 23).good
    assert reduce_mod_p(C, 7).good
    D = parse_curve("y^2 = x^5 + 1/3")
    assert not reduce_mod_p(D, 3).good
    with pytest.raises(ValueError):
        reduce_mod_p(C, 9)
