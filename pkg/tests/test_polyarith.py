from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from kumbrauer import polyarith as pa

x = sympy.symbols("x")
polys = st.lists(st.integers(-9, 9), min_size=1, max_size=7)


def test_cyclotomic_matches_sympy():
    for n in range(1, 19):
        assert list(pa.cyclotomic(n)) == [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(n, x)).all_coeffs())]


@given(polys, polys.filter(lambda b: any(b)))
def test_divmod_reconstructs(a, b):
    q, r = pa.divmod_poly([Fraction(c) for c in a], [Fraction(c) for c in b])
    assert pa.trim(pa.add(pa.mul(q, b), r)) == pa.trim(a)
    assert pa.degree(r) < pa.degree(b)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 12), min_size=3, max_size=7), st.sampled_from([3, 5, 7, 11, 13]))
def test_degree_pattern_matches_sympy(coeffs, p):
    f = pa.trim([c % p for c in coeffs])
    if pa.degree(f) < 1:
        return
    P = sympy.Poly(list(reversed(f)), x, modulus=p)
    if sympy.gcd(P, P.diff(x)).degree() > 0:
        return
    expected = sorted(g.degree() for g, e in P.factor_list()[1] for _ in range(e))
    assert sorted(pa.distinct_degree_pattern(f, p)) == expected


def test_evaluate_and_reverse():
    assert pa.evaluate([1, 2, 3], 2) == 17
    assert pa.reverse([1, 2], 3) == [0, 0, 2, 1]
