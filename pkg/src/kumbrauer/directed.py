"""Directed rounding on mpmath floats.

Field operations use mpmath's exact directed rounding.  Transcendental
functions are evaluated with GUARD extra bits and then pushed outward by a
relative margin of 2^-(prec-4), which dominates the error of the guarded
evaluation.
"""
from fractions import Fraction

import mpmath
from mpmath import libmp

PREC = 96
GUARD = 40

_RND = {"up": "c", "down": "f"}  # ceiling and floor; mpmath "u"/"d" round away from / toward zero


def _flip(direction):
    return "down" if direction == "up" else "up"


def exact(x):
    """mpf holding x without rounding to the global context precision."""
    if isinstance(x, mpmath.mpf):
        return x
    if isinstance(x, int):
        return mpmath.mp.make_mpf(libmp.from_int(x))
    raise TypeError(f"no exact mpf for {type(x).__name__}")


def number(x, prec=PREC, direction="up"):
    """mpf bound for an int, Fraction, decimal string, or mpf."""
    if isinstance(x, mpmath.mpf):
        return mpmath.fadd(x, 0, prec=prec, rounding=_RND[direction])
    if isinstance(x, float):
        x = Fraction(x)
    x = Fraction(x) if not isinstance(x, Fraction) else x
    raw = libmp.from_rational(x.numerator, x.denominator, prec, _RND[direction])
    return mpmath.mp.make_mpf(raw)


def add(a, b, prec=PREC, direction="up"):
    return mpmath.fadd(a, b, prec=prec, rounding=_RND[direction])


def sub(a, b, prec=PREC, direction="up"):
    return mpmath.fsub(a, b, prec=prec, rounding=_RND[direction])


def mul(a, b, prec=PREC, direction="up"):
    return mpmath.fmul(a, b, prec=prec, rounding=_RND[direction])


def div(a, b, prec=PREC, direction="up"):
    return mpmath.fdiv(a, b, prec=prec, rounding=_RND[direction])


def _widen(y, prec, direction):
    if y == 0:
        return mpmath.mpf(0)
    margin = mpmath.mp.make_mpf(libmp.mpf_shift(libmp.mpf_abs(y._mpf_), -(prec - 4)))
    op = mpmath.fadd if direction == "up" else mpmath.fsub
    return op(y, margin, prec=prec, rounding=_RND[direction])


def ln(x, prec=PREC, direction="up"):
    """Natural log of an mpf argument that is already a bound in the same direction."""
    if x <= 0:
        raise ValueError("log of a nonpositive number")
    with mpmath.workprec(prec + GUARD):
        y = mpmath.log(x)
    return _widen(y, prec, direction)


def log10(x, prec=PREC, direction="up"):
    if x <= 0:
        raise ValueError("log of a nonpositive number")
    with mpmath.workprec(prec + GUARD):
        y = mpmath.log10(x)
    return _widen(y, prec, direction)


def exp10(t, prec=PREC, direction="up"):
    with mpmath.workprec(prec + GUARD):
        y = mpmath.power(10, t)
    return _widen(y, prec, direction)


def pi(prec=PREC, direction="up"):
    with mpmath.workprec(prec + GUARD):
        y = +mpmath.pi
    return _widen(y, prec, direction)


def ln10(prec=PREC, direction="up"):
    with mpmath.workprec(prec + GUARD):
        y = mpmath.log(10)
    return _widen(y, prec, direction)


def sqrt(x, prec=PREC, direction="up"):
    return mpmath.mp.make_mpf(libmp.mpf_sqrt(exact(x)._mpf_, prec, _RND[direction]))


def to_fraction(x):
    sign, man, exp, _ = exact(x)._mpf_
    if not man:
        return Fraction(0)
    return (-1) ** sign * Fraction(man) * Fraction(2) ** exp


def decimal_string(x, digits=17, direction="up"):
    """Decimal rendering rounded in the given direction, as 'm e E'."""
    x = to_fraction(x) if not isinstance(x, Fraction) else x
    if x == 0:
        return "0"
    sign = "-" if x < 0 else ""
    ax = abs(x)
    rnd = direction if x > 0 else _flip(direction)
    e = len(str(ax.numerator)) - len(str(ax.denominator))
    if Fraction(10) ** e > ax:
        e -= 1
    scaled = ax / Fraction(10) ** (e - digits + 1)
    m = -((-scaled.numerator) // scaled.denominator) if rnd == "up" else scaled.numerator // scaled.denominator
    if m >= 10 ** digits:
        m = -((-m) // 10) if rnd == "up" else m // 10
        e += 1
    s = str(m)
    mant = s[0] + ("." + s[1:].rstrip("0") if s[1:].rstrip("0") else "")
    return f"{sign}{mant}e{e}"
