"""Certified upper bounds for the isogeny, Faltings and Brauer-group constants.

Every quantity is an upper bound.  Magnitudes too large for floats are kept as
upward-rounded base-10 logarithms (BigMagnitude); sums inside the formulas are
done with upward-rounded mpmath floats.  Natural logarithms are written ``ln``.
"""
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import directed as dr
from .curve_model import disc6

PREC = dr.PREC
NEG_INF = mpmath.mpf("-inf")


def _q(x):
    """Exact rational from int, Fraction or decimal string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("pass exact decimals as strings, not floats")
    return Fraction(x)


class BigMagnitude:
    """A nonnegative real x stored as an upper bound for log10(x)."""

    __slots__ = ("log10", "prec", "exact")

    def __init__(self, log10, prec=PREC, exact=None):
        self.log10 = dr.exact(log10)
        self.prec = prec
        self.exact = exact

    @classmethod
    def of(cls, x, prec=PREC):
        x = _q(x)
        if x < 0:
            raise ValueError("magnitudes are nonnegative")
        if x == 0:
            return cls(NEG_INF, prec, x)
        return cls(dr.log10(dr.number(x, prec, "up"), prec, "up"), prec, x)

    @classmethod
    def bound(cls, x, prec=PREC):
        """From an mpf that is already an upper bound."""
        if x < 0:
            raise ValueError("magnitudes are nonnegative")
        if x == 0:
            return cls(NEG_INF, prec)
        return cls(dr.log10(x, prec, "up"), prec)

    def _coerce(self, other):
        return other if isinstance(other, BigMagnitude) else BigMagnitude.of(other, self.prec)

    def __mul__(self, other):
        other = self._coerce(other)
        if self.log10 == NEG_INF or other.log10 == NEG_INF:
            return BigMagnitude(NEG_INF, self.prec, Fraction(0))
        exact = self.exact * other.exact if self.exact is not None and other.exact is not None else None
        return BigMagnitude(dr.add(self.log10, other.log10, self.prec), self.prec, exact)

    __rmul__ = __mul__

    def __pow__(self, k):
        k = _q(k)
        if k < 0:
            raise ValueError("only nonnegative exponents keep upward rounding simple")
        if k == 0:
            return BigMagnitude(0, self.prec, Fraction(1))
        if self.log10 == NEG_INF:
            return BigMagnitude(NEG_INF, self.prec, Fraction(0))
        kk = dr.number(k, self.prec, "up" if self.log10 >= 0 else "down")
        exact = self.exact ** k if self.exact is not None and k.denominator == 1 else None
        return BigMagnitude(dr.mul(self.log10, kk, self.prec), self.prec, exact)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = sorted((self.log10, other.log10), reverse=True)
        exact = self.exact + other.exact if self.exact is not None and other.exact is not None else None
        if b == NEG_INF:
            return BigMagnitude(a, self.prec, exact)
        # log10(10^a + 10^b) = a + log10(1 + 10^(b - a))
        t = dr.exp10(dr.sub(b, a, self.prec), self.prec)
        s = dr.log10(dr.add(1, t, self.prec), self.prec)
        return BigMagnitude(dr.add(a, s, self.prec), self.prec, exact)

    __radd__ = __add__

    def ln(self):
        """Upper bound for the natural log of the value."""
        if self.exact is not None and self.exact > 0:
            return dr.ln(dr.number(self.exact, self.prec, "up"), self.prec)
        c = dr.ln10(self.prec, "up" if self.log10 >= 0 else "down")
        return dr.mul(self.log10, c, self.prec)

    def value(self):
        """Upper bound for the value as an mpf (the exponent range of mpf is unbounded)."""
        if self.exact is not None:
            return dr.number(self.exact, self.prec, "up")
        if self.log10 == NEG_INF:
            return mpmath.mpf(0)
        return dr.exp10(self.log10, self.prec)

    def __le__(self, other):
        return self.log10 <= self._coerce(other).log10

    def __ge__(self, other):
        return self.log10 >= self._coerce(other).log10

    def __lt__(self, other):
        return self.log10 < self._coerce(other).log10

    def __gt__(self, other):
        return self.log10 > self._coerce(other).log10

    def decimal(self):
        """'m e E' upper bound; for astronomically large values, '10^(m e E)'."""
        if self.log10 == NEG_INF:
            return "0"
        if abs(self.log10) < 10**6:
            return dr.decimal_string(self.value(), 6)
        return "10^(" + dr.decimal_string(self.log10, 6) + ")"

    def as_dict(self):
        return {"log10": dr.decimal_string(self.log10, 17) if self.log10 != NEG_INF else "-inf",
                "value": self.decimal()}

    def __repr__(self):
        return f"BigMagnitude({self.decimal()})"


def _ln_exact(x, prec, direction="up"):
    return dr.ln(dr.number(x, prec, direction), prec, direction)


def _affine(terms, prec):
    """Upper bound for a sum of (coefficient, mpf-upper-or-exact) terms, coefficients exact >= 0."""
    acc = mpmath.mpf(0)
    for coeff, value in terms:
        v = value if isinstance(value, mpmath.mpf) else dr.number(value, prec, "up")
        c = dr.number(coeff, prec, "up" if v >= 0 else "down")
        acc = dr.add(acc, dr.mul(c, v, prec), prec)
    return acc


def _positive(x, what):
    if x <= 0:
        raise ValueError(f"{what} must be positive, got {x}")
    return x


# --- heights ----------------------------------------------------------------

def imag_det(tau_imag):
    """det of the 2x2 imaginary part of a period matrix, exactly from decimal strings."""
    (a, b), (c, d) = [[_q(x) for x in row] for row in tau_imag]
    return a * d - b * c


def height_upper(C, tau_imag_det, abs_J10, prec=PREC):
    """Upper bound for the stable Faltings height of Jac(C) at the archimedean data given.

    -ln(2 pi^2) + ln(2^-12 |Disc6(4F+G^2)|)/10 - ln(2^(-1/5) |J10|^(1/10) det(Im tau)^(1/2))
    """
    det = _q(tau_imag_det)
    J = _q(abs_J10)
    if det <= 0 or J <= 0:
        raise ValueError("analytic inputs must be positive")
    delta = abs(disc6(C.sextic())) / 2**12
    two_pi2 = dr.mul(2, dr.mul(dr.pi(prec), dr.pi(prec), prec), prec)
    out = dr.sub(0, dr.ln(two_pi2, prec, "down"), prec)
    out = dr.add(out, dr.div(_ln_exact(delta, prec), 10, prec), prec)
    out = dr.add(out, dr.div(_ln_exact(2, prec), 5, prec), prec)
    out = dr.sub(out, dr.div(_ln_exact(J, prec, "down"), 10, prec, "down"), prec)
    out = dr.sub(out, dr.div(_ln_exact(det, prec, "down"), 2, prec, "down"), prec)
    return out


# --- Faltings constant ------------------------------------------------------

@dataclass(frozen=True)
class BoundContext:
    degree: int
    h: object  # upper bound for the Faltings height: exact rational, decimal string or mpf
    r: int = 1
    rbar: int = 1

    def __post_init__(self):
        if self.rbar not in (1, 2, 4) or self.r not in (1, 2, 4):
            raise ValueError("r and rbar must lie in {1, 2, 4}")
        if self.r > self.rbar:
            raise ValueError("need r <= rbar")
        if int(self.degree) != self.degree or self.degree < 1:
            raise ValueError("degree must be a positive integer")

    def h_up(self, prec=PREC):
        return self.h if isinstance(self.h, mpmath.mpf) else dr.number(_q(self.h), prec, "up")

    def m_A(self, prec=PREC):
        return max(mpmath.mpf(1), self.h_up(prec))


C1_EXACT = 4**11 * 9**12


def c1(prec=PREC):
    return BigMagnitude.of(C1_EXACT, prec)


def c2(degree, prec=PREC):
    return BigMagnitude.of(Fraction(75, 10) * 10**47 * degree, prec)


def c8(ctx, prec=PREC):
    if ctx.rbar == 1:
        return BigMagnitude.of(2, prec)
    d, m = ctx.degree, ctx.m_A(prec)
    inner = _affine([(Fraction(5, 4), m), (1, _ln_exact(d, prec)), (1, dr.ln(m, prec)), (1, 60)], prec)
    inner = dr.mul(dr.mul(dr.number(Fraction(504, 100) * 10**24 * d, prec), m, prec), inner, prec)
    return BigMagnitude.of(4**5 * 9**8, prec) * BigMagnitude.bound(inner, prec) ** Fraction(8, ctx.rbar)


def faltings_M(ctx, prec=PREC):
    """Upper bound for the integer killing coker(End_k(A) -> End_Gamma(A[m])), uniform in m."""
    d, h = ctx.degree, ctx.h_up(prec)
    C1, C2 = c1(prec), c2(d, prec)
    if ctx.rbar == 1:
        base = _affine([(2, h), (Fraction(8, 17), _ln_exact(d, prec)), (8, C1.ln()), (128, C2.ln()),
                        (1, 1503)], prec)
        base = BigMagnitude.bound(_positive(base, "Faltings base term"), prec)
        return BigMagnitude.of(2, prec) ** 4664 * C1 ** 16 * C2 ** 256 * base ** 512
    C8 = c8(ctx, prec)
    r, rb = ctx.r, ctx.rbar
    base = _affine([(16, C1.ln()), (Fraction(256, rb), C2.ln()), (16 * r, C8.ln()), (4, h),
                    (Fraction(16, 17), _ln_exact(d, prec)), (1, 1400)], prec)
    base = BigMagnitude.bound(_positive(base, "Faltings base term"), prec)
    lead = BigMagnitude.of(Fraction(r, 4), prec) ** Fraction(r, 2)
    return lead * BigMagnitude.of(2**48, prec) * C1 ** 16 * C2 ** 256 * C8 ** (17 * r) * base ** Fraction(512, rb)


@dataclass(frozen=True)
class ConstantsLedger:
    c1: BigMagnitude
    c2: BigMagnitude
    c3: BigMagnitude
    c4: BigMagnitude
    c5: BigMagnitude
    c6_bound: BigMagnitude
    c8: BigMagnitude
    u: BigMagnitude
    v: BigMagnitude
    C: BigMagnitude
    M: BigMagnitude

    def as_dict(self):
        return {k: getattr(self, k).as_dict() for k in self.__dataclass_fields__}


def constants_ledger(ctx, prec=PREC):
    d, h = ctx.degree, ctx.h_up(prec)
    C1, C2, C8 = c1(prec), c2(d, prec), c8(ctx, prec)
    c3 = _positive(_affine([(2, h), (Fraction(8, 17), _ln_exact(d, prec)), (1, Fraction(1039, 17))], prec), "c3")
    c3m = BigMagnitude.bound(c3, prec)
    sqrt_c2 = BigMagnitude.bound(dr.sqrt(dr.number(C2.exact, prec), prec), prec)
    c4 = sqrt_c2 * c3m
    c5 = sqrt_c2 * Fraction(1, 2)
    c7 = BigMagnitude.of(2**48, prec) * C1 ** 16 * C8 ** (16 * ctx.r)
    u = c7 ** Fraction(ctx.rbar, 512) * c5 * Fraction(512, ctx.rbar)
    v = c3m * Fraction(ctx.rbar, 256)  # c4 rbar / (512 c5) with c4 / c5 = 2 c3
    C = BigMagnitude.bound(dr.mul(2, dr.add(u.ln(), v.value(), prec), prec), prec) * u
    return ConstantsLedger(C1, C2, c3m, c4, c5, c7, C8, u, v, C, faltings_M(ctx, prec))


# --- isogeny constants ------------------------------------------------------

C2_CASES = ("distinct-one-nonCM", "distinct-both-CM", "equal-nonCM")


def isogeny_C1(h, degree, prec=PREC):
    base = _affine([(Fraction(17, 8), dr.number(_q(h), prec) if not isinstance(h, mpmath.mpf) else h),
                    (Fraction(5, 6), _ln_exact(degree, prec)), (1, Fraction(308, 10))], prec)
    return (BigMagnitude.of(230**8 * 3**8 * 4**159, prec) * BigMagnitude.of(degree, prec) ** 8
            * BigMagnitude.bound(_positive(base, "C1 base"), prec) ** 16)


def _up(x, prec):
    return x if isinstance(x, mpmath.mpf) else dr.number(_q(x), prec, "up")


def isogeny_C2(hE, hE2, degree, case, prec=PREC):
    if case not in C2_CASES:
        raise ValueError(f"unknown case {case!r}")
    d = degree
    m = max(mpmath.mpf(1), _up(hE, prec), _up(hE2, prec))
    ln_d = _ln_exact(d, prec) if not isinstance(d, mpmath.mpf) else dr.ln(d, prec)
    D = BigMagnitude.of(d, prec) if not isinstance(d, mpmath.mpf) else BigMagnitude.bound(d, prec)
    L = _affine([(1, m), (Fraction(1, 2), ln_d)], prec)
    if case == "distinct-one-nonCM":
        inner = _affine([(525100, m), (1, Fraction(442) * 10**6), (Fraction(867) * 10**4, ln_d),
                         (2**18, dr.ln(L, prec))], prec)
        return (BigMagnitude.of(Fraction(174, 100) * 10**571, prec) * D ** 66
                * BigMagnitude.bound(L, prec) ** 2 * BigMagnitude.bound(inner, prec) ** 128)
    if case == "distinct-both-CM":
        inner = _affine([(273, m), (2449, ln_d), (272, dr.ln(L, prec)), (1, 87900)], prec)
        return (BigMagnitude.of(Fraction(878, 100) * 10**342, prec) * D ** 36
                * BigMagnitude.bound(L, prec) ** 4 * BigMagnitude.bound(inner, prec) ** 64)
    inner = _affine([(273, m), (2177, ln_d), (1, 82600)], prec)
    return BigMagnitude.of(Fraction(361, 100) * 10**309, prec) * D ** 32 * BigMagnitude.bound(inner, prec) ** 64


def isogeny_C3(h, degree, prec=PREC):
    base = _affine([(Fraction(17, 8), _up(h, prec)), (Fraction(5, 6), _ln_exact(degree, prec)),
                    (1, Fraction(492, 10))], prec)
    return (BigMagnitude.of(230**8 * 3**8 * 4**167 * 18**64, prec) * BigMagnitude.of(degree, prec) ** 8
            * BigMagnitude.bound(_positive(base, "C3 base"), prec) ** 16)


def _c4c5_base(h, degree, C3, prec):
    # h + ln(C3)/2 + ln d + 25
    return _positive(_affine([(1, _up(h, prec)), (Fraction(1, 2), C3.ln()), (1, _ln_exact(degree, prec)),
                              (1, 25)], prec), "C4/C5 base")


def isogeny_C4_C5(h, degree, prec=PREC):
    C3 = isogeny_C3(h, degree, prec)
    X = BigMagnitude.bound(_c4c5_base(h, degree, C3, prec), prec)
    D2 = BigMagnitude.of(degree, prec) ** 2
    C4 = BigMagnitude.of(225 * 4**2 * 18**16, prec) * C3 * D2 * X ** 2
    C5 = BigMagnitude.of(1800 * 4**2 * 18**24, prec) * D2 * X ** 2
    return C4, C5


def newton_cm_bound(degree_kprime, unit_flag, prec=PREC):
    """Bound (25/2)^4 [k':Q]^4, without the first factor when the units of K are only +-1."""
    D4 = BigMagnitude.of(degree_kprime, prec) ** 4
    return D4 if unit_flag else BigMagnitude.of(Fraction(25, 2) ** 4, prec) * D4


def factorial_bound(n):
    """Upper bound for floor(n)! using n! <= n^n."""
    x = n.value()
    if x <= 1:
        return BigMagnitude.of(1, n.prec)
    return BigMagnitude(dr.mul(x, n.log10, n.prec), n.prec)


def brauer_product_bound(C2bound):
    return factorial_bound(C2bound) ** 4


def isogeny_brauer_factor(d, rbar):
    d = d if isinstance(d, BigMagnitude) else BigMagnitude.of(d)
    return d ** (6 - rbar)


def rank4_total_bound(h, degree, prec=PREC):
    C3 = isogeny_C3(h, degree, prec)
    X = BigMagnitude.bound(_c4c5_base(h, degree, C3, prec), prec)
    return (BigMagnitude.of(Fraction(880, 100) * 10**191, prec) * C3 ** 2
            * BigMagnitude.of(degree, prec) ** 16 * X ** 12)


def rank4_chain_bound(h, degree, prec=PREC):
    """12.5^4 C4^2 C5^4 d^4, the product the closed rank-4 bound is meant to dominate."""
    C4, C5 = isogeny_C4_C5(h, degree, prec)
    return BigMagnitude.of(Fraction(25, 2) ** 4, prec) * C4 ** 2 * C5 ** 4 * BigMagnitude.of(degree, prec) ** 4


def product_case_total_bound(h, degree, prec=PREC):
    """C3^4 (C2!)^4 with C2 maximised over its three cases at the worst admissible heights."""
    C3 = isogeny_C3(h, degree, prec)
    m = _affine([(1, _up(h, prec)), (1, Fraction(3, 2)), (Fraction(1, 2), C3.ln())], prec)
    m = max(mpmath.mpf(1), m)
    d1 = 4 * 18**8 * degree
    worst = max((isogeny_C2(m, m, d1, case, prec) for case in C2_CASES), key=lambda b: b.log10)
    return C3 ** 4 * brauer_product_bound(worst)


def transcendental_bound_rank1(M):
    """4 C^(50 C) with C = M."""
    if M.log10 < 0:
        raise ValueError("M must be at least 1")
    c = M.value()
    exponent = dr.mul(dr.mul(50, c, M.prec), M.log10, M.prec)
    return BigMagnitude(dr.add(dr.log10(mpmath.mpf(4), M.prec), exponent, M.prec), M.prec)


def geometric_brauer_torsion(rho, n):
    """Order of the n-torsion of (Q/Z)^(6 - rho)."""
    if not 1 <= rho <= 6 or n < 1:
        raise ValueError("need 1 <= rho <= 6 and n >= 1")
    return n ** (6 - rho)
