"""Frobenius data of a genus-2 curve at good primes and Neron-Severi rank certificates.

Polynomials here use the reciprocal normalization: P1(T) = prod(1 - alpha_i T)
over the four Frobenius eigenvalues on H^1 of the Jacobian, P2(T) the same over
the six products alpha_i alpha_j (i < j) acting on H^2 = wedge^2 H^1.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from . import polyarith as pa
from .curve_model import reduce_mod_p, is_prime

FIELD_CEILING = 10**6
CYCLOTOMIC_ORDERS = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 18)


class BadReductionError(ValueError):
    pass


class WeilBoundError(ArithmeticError):
    pass


# --- F_{p^2} as F_p[t]/(t^2 - n) --------------------------------------------

def smallest_nonresidue(p):
    for n in range(2, p):
        if pow(n, (p - 1) // 2, p) == p - 1:
            return n
    raise ValueError(f"no non-residue mod {p}")


class Fp2:
    """Elements are pairs (a, b) meaning a + b t with t^2 = nonresidue."""

    def __init__(self, p):
        self.p = p
        self.n = smallest_nonresidue(p)

    def elements(self):
        p = self.p
        return [(a, b) for b in range(p) for a in range(p)]

    def mul(self, u, v):
        p = self.p
        return ((u[0] * v[0] + self.n * u[1] * v[1]) % p, (u[0] * v[1] + u[1] * v[0]) % p)

    def add(self, u, v):
        return ((u[0] + v[0]) % self.p, (u[1] + v[1]) % self.p)

    def evaluate(self, coeffs, x):
        acc = (0, 0)
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), (c % self.p, 0))
        return acc

    def norm(self, u):
        return (u[0] * u[0] - self.n * u[1] * u[1]) % self.p


def _legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _check_countable(red, n, ceiling):
    if not red.good:
        raise BadReductionError(f"bad reduction at p={red.p}")
    if n not in (1, 2):
        raise ValueError("n must be 1 or 2")
    if red.p ** n > ceiling:
        raise ValueError(f"field of size {red.p}^{n} exceeds the exhaustive ceiling {ceiling}")


def _infinity_points(f_bar, p, n):
    if len(f_bar) < 7:
        return 1
    if n == 2:
        return 2  # every element of F_p is a square in F_{p^2}
    return 2 if _legendre(f_bar[6], p) == 1 else 0


def count_points(red, n, ceiling=FIELD_CEILING):
    """Points of the smooth projective model of y^2 = f_bar(x) over F_{p^n}, by enumeration."""
    _check_countable(red, n, ceiling)
    p, f = red.p, list(red.f_bar)
    if n == 1:
        squares = [0] * p
        for y in range(p):
            squares[y * y % p] += 1
        affine = sum(squares[pa.evaluate(f, x) % p] for x in range(p))
    else:
        F = Fp2(p)
        elems = F.elements()
        squares = {}
        for y in elems:
            s = F.mul(y, y)
            squares[s] = squares.get(s, 0) + 1
        affine = sum(squares.get(F.evaluate(f, x), 0) for x in elems)
    return affine + _infinity_points(f, p, n)


def count_points_charsum(red, n, ceiling=FIELD_CEILING):
    """Same count through the quadratic character: q + sum chi(f(x)) + infinity."""
    _check_countable(red, n, ceiling)
    p, f = red.p, list(red.f_bar)
    if n == 1:
        s = sum(_legendre(pa.evaluate(f, x), p) for x in range(p))
        return p + s + _infinity_points(f, p, 1)
    F = Fp2(p)
    s = 0
    for x in F.elements():
        v = F.evaluate(f, x)
        if v != (0, 0):
            # v is a square in F_{p^2} iff its norm is a square in F_p
            s += _legendre(F.norm(v), p)
    return p * p + s + _infinity_points(f, p, 2)


# --- characteristic polynomials ---------------------------------------------

def h1_charpoly(N1, N2, p):
    a1 = N1 - (p + 1)
    twice_a2 = N2 - (p * p + 1) + a1 * a1
    if twice_a2 % 2:
        raise WeilBoundError("non-integral a2: point counts inconsistent")
    a2 = twice_a2 // 2
    P1 = [1, a1, a2, p * a1, p * p]
    check_weil(P1, p)
    return P1


def check_weil(P1, p):
    """Exact test that all reciprocal roots of P1 have absolute value sqrt(p).

    Writing the roots in conjugate pairs, P1 = (1 - s1 T + p T^2)(1 - s2 T + p T^2)
    with s1 + s2 = -a1 and s1 s2 = a2 - 2p; the Weil bound is that s1, s2 are
    real with |s_i| <= 2 sqrt(p).
    """
    a1, a2 = P1[1], P1[2]
    if abs(a1) > 4 * p ** 0.5 + 1e-9:
        raise WeilBoundError(f"|a1| too large for p={p}: {P1}")
    s_sum, s_prod = -a1, a2 - 2 * p
    disc = s_sum * s_sum - 4 * s_prod
    if disc < 0:
        raise WeilBoundError(f"non-real traces for p={p}: {P1}")
    # both roots of z^2 - s_sum z + s_prod lie in [-2 sqrt p, 2 sqrt p]
    # iff g(+-2 sqrt p) >= 0 and the vertex lies in the interval
    if abs(s_sum) > 4 * p ** 0.5 + 1e-9:
        raise WeilBoundError(f"traces out of range for p={p}: {P1}")
    if 4 * p + s_prod < 0 or (4 * p + s_prod) ** 2 < 4 * p * s_sum * s_sum:
        raise WeilBoundError(f"traces out of range for p={p}: {P1}")


def power_sums(P, count):
    """Power sums s_1..s_count of the reciprocal roots of P (P[0] = 1)."""
    e = [(-1) ** k * Fraction(c) for k, c in enumerate(P)]
    n = len(P) - 1
    s = [Fraction(0)] * (count + 1)
    for k in range(1, count + 1):
        acc = Fraction(0)
        for i in range(1, k):
            if i <= n:
                acc += (-1) ** (i - 1) * e[i] * s[k - i]
        if k <= n:
            acc += (-1) ** (k - 1) * k * e[k]
        s[k] = acc
    return s


def from_power_sums(s, n):
    """Reciprocal polynomial prod(1 - b_i T) of degree n from power sums of the b_i."""
    e = [Fraction(1)] + [Fraction(0)] * n
    for k in range(1, n + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * s[i]
        e[k] = acc / k
    coeffs = [(-1) ** k * e[k] for k in range(n + 1)]
    if any(c.denominator != 1 for c in coeffs):
        raise ArithmeticError("non-integral coefficients")
    return [int(c) for c in coeffs]


def h2_charpoly(P1, p):
    s = power_sums(P1, 12)
    t = [Fraction(0)] + [(s[k] ** 2 - s[2 * k]) / 2 for k in range(1, 7)]
    return from_power_sums(t, 6)


def base_change(P, n):
    """Reciprocal polynomial whose roots are the n-th powers of the roots of P."""
    deg = len(P) - 1
    s = power_sums(P, deg * n)
    return from_power_sums([Fraction(0)] + [s[k * n] for k in range(1, deg + 1)], deg)


def _unit_root_poly(P2, p):
    """Monic x^6 P2(1/(p x)): its roots are beta/p for the reciprocal roots beta."""
    return [Fraction(c, p ** k) for k, c in reversed(list(enumerate(P2)))]


def cyclotomic_factors(P2, p):
    """Multiplicities {n: m} of Phi_n dividing the normalized polynomial."""
    Q = pa.trim(_unit_root_poly(P2, p))
    found = {}
    for n in CYCLOTOMIC_ORDERS:
        phi = list(pa.cyclotomic(n))
        while pa.degree(Q) >= pa.degree(phi):
            q, r = pa.divmod_poly(Q, phi)
            if r:
                break
            Q = q
            found[n] = found.get(n, 0) + 1
    return found


def tate_rank_upper(P2, p):
    r = sum(m * (len(pa.cyclotomic(n)) - 1) for n, m in cyclotomic_factors(P2, p).items())
    assert r % 2 == 0, "Tate bound must be even"
    return r


def squarefree_part(n):
    """Square-free integer in the square class of the nonzero rational n."""
    n = Fraction(n)
    if n == 0:
        raise ValueError("zero has no square class")
    sign = -1 if n < 0 else 1
    m = abs(n.numerator) * n.denominator
    out = 1
    f = 2
    while f * f <= m:
        e = 0
        while m % f == 0:
            m //= f
            e += 1
        if e % 2:
            out *= f
        f += 1
    return sign * out * m


def artin_tate_delta(P2, p, r_p):
    """Square-free d with Disc NS(A_q) = -d modulo squares, read off the leading term at T = 1/q.

    If some eigenvalues are p times a nontrivial root of unity, the computation
    is done over F_{p^n}, n the lcm of their orders, where all of them become q = p^n.
    """
    orders = cyclotomic_factors(P2, p)
    if sum(m * (len(pa.cyclotomic(n)) - 1) for n, m in orders.items()) != r_p:
        raise ValueError("r_p does not match the cyclotomic part of P2")
    n = lcm(*orders) if orders else 1
    P = base_change(P2, n) if n > 1 else list(P2)
    q = p ** n
    rest, rem = pa.divmod_poly(P, pa.power([1, -q], r_p))
    assert not rem
    L = pa.evaluate(rest, Fraction(1, q))
    if L <= 0:
        raise ArithmeticError("leading term must be positive")
    # |Disc| = q L / #Br with #Br a square; Disc has sign (-1)^(r-1), r even
    return squarefree_part(q * L)


# --- certificates -----------------------------------------------------------

@dataclass(frozen=True)
class FrobeniusData:
    p: int
    N1: int
    N2: int
    P1: tuple
    P2: tuple
    r_p: int
    delta: int

    def as_dict(self):
        return {"p": self.p, "N1": self.N1, "N2": self.N2, "P1": list(self.P1),
                "P2": list(self.P2), "r_p": self.r_p, "delta": self.delta}


def frobenius_data(C, p, ceiling=FIELD_CEILING):
    red = reduce_mod_p(C, p)
    N1 = count_points(red, 1, ceiling)
    N2 = count_points(red, 2, ceiling)
    P1 = h1_charpoly(N1, N2, p)
    P2 = h2_charpoly(P1, p)
    r = tate_rank_upper(P2, p)
    return FrobeniusData(p, N1, N2, tuple(P1), tuple(P2), r, artin_tate_delta(P2, p, r))


@dataclass(frozen=True)
class RankCertificate:
    rank: int
    kind: str  # "even-match", "odd-delta" or "inconclusive"
    witnesses: tuple = ()
    lower: int = 1
    upper: int = 4
    records: tuple = field(default=(), compare=False)

    @property
    def certified(self):
        return self.kind != "inconclusive"

    def as_dict(self):
        return {"rank": self.rank, "kind": self.kind, "lower": self.lower, "upper": self.upper,
                "witnesses": [list(w) for w in self.witnesses]}


def good_primes(C, budget):
    for p in range(3, budget + 1, 2):
        if is_prime(p) and reduce_mod_p(C, p).good:
            yield p


def certify_rank(C, prime_budget, lower_bound=1, ceiling=FIELD_CEILING):
    """Certify the geometric Neron-Severi rank of Jac(C) from good primes p <= prime_budget.

    The Tate bound r_p is an even upper bound.  Two primes with the same r_p and
    different Artin-Tate classes lower it to r_p - 1.  The rank is declared exact
    only when the upper bound meets lower_bound (1 from the theta divisor unless
    the caller knows more); a match at an even upper bound is reported as
    even-match only when lower_bound says so.
    """
    upper = 4
    records = []
    by_rank = {}
    witnesses = ()
    for p in good_primes(C, prime_budget):
        if p * p > ceiling:
            break
        data = frobenius_data(C, p, ceiling)
        records.append(data)
        # reduction can only raise the rank, so r_p bounds the geometric rank of A
        upper = min(upper, data.r_p)
        for other in by_rank.get(data.r_p, []):
            if other.delta != data.delta:
                upper = min(upper, data.r_p - 1)
                witnesses = ((other.p, other.r_p, other.delta), (data.p, data.r_p, data.delta))
                break
        by_rank.setdefault(data.r_p, []).append(data)
        if upper <= lower_bound:
            break
    if upper == lower_bound:
        if witnesses and witnesses[0][1] - 1 == upper:
            kind = "odd-delta"
        else:
            kind = "even-match"
            best = min(records, key=lambda d: d.r_p)
            witnesses = ((best.p, best.r_p, best.delta),)
        return RankCertificate(upper, kind, witnesses, lower_bound, upper, tuple(records))
    return RankCertificate(upper, "inconclusive", witnesses, lower_bound, upper, tuple(records))
