"""Genus-2 models y^2 + G(x) y = F(x) over Q: parsing, printing, discriminants, reduction."""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import polyarith as pa
from .intmat import determinant


class CurveError(ValueError):
    pass


class CurveSyntaxError(CurveError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class CurveDegreeError(CurveError):
    pass


class SingularCurveError(CurveError):
    pass


@dataclass(frozen=True)
class RationalPolynomial:
    coefficients: tuple
    degree_bound: int

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in pa.trim(self.coefficients))
        if len(coeffs) - 1 > self.degree_bound:
            raise CurveDegreeError(f"degree {len(coeffs) - 1} exceeds bound {self.degree_bound}")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def __iter__(self):
        return iter(self.coefficients)

    def __len__(self):
        return len(self.coefficients)

    def __getitem__(self, i):
        return self.coefficients[i]


def _clear_denominators(a):
    d = 1
    for c in a:
        d = d * Fraction(c).denominator // gcd(d, Fraction(c).denominator)
    return [int(Fraction(c) * d) for c in a], d


def _sylvester_resultant(a, b):
    """Res(a, b) from the Sylvester matrix, with an integer Bareiss determinant."""
    m, n = len(a) - 1, len(b) - 1
    A, da = _clear_denominators(a)
    B, db = _clear_denominators(b)
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(A)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(B)):
            row[i + j] = c
        rows.append(row)
    # Res(da a, db b) = da^n db^m Res(a, b)
    return Fraction(determinant(rows), da ** n * db ** m)


def disc6(P):
    """Discriminant of P viewed as a binary sextic form.

    Degree 6: -Res(P, P')/a6.  Degree 5 (one root at infinity): a5^2 * Disc5(P).
    Degree <= 4 means a repeated root at infinity, so the value is 0.
    """
    coeffs = pa.trim([Fraction(c) for c in P])
    if not coeffs:
        raise CurveError("discriminant of the zero polynomial")
    if len(coeffs) - 1 > 6:
        raise CurveDegreeError("degree exceeds 6")
    deg = len(coeffs) - 1
    if deg < 5:
        return Fraction(0)
    res = _sylvester_resultant(coeffs, pa.derivative(coeffs))
    if deg == 6:
        return -res / coeffs[6]
    # Disc5 = (-1)^10 Res / a5, times a5^2
    return res * coeffs[5]


@dataclass(frozen=True)
class GenusTwoCurve:
    F: RationalPolynomial
    G: RationalPolynomial

    def __post_init__(self):
        if not isinstance(self.F, RationalPolynomial):
            object.__setattr__(self, "F", RationalPolynomial(tuple(self.F), 6))
        if not isinstance(self.G, RationalPolynomial):
            object.__setattr__(self, "G", RationalPolynomial(tuple(self.G), 3))
        if self.F.degree > 6 or self.G.degree > 3:
            raise CurveDegreeError("need deg F <= 6 and deg G <= 3")
        h = self.sextic()
        if pa.degree(h) not in (5, 6) or disc6(h) == 0:
            raise SingularCurveError("singular model: disc6(4F + G^2) = 0")

    def sextic(self):
        """4F + G^2, the right-hand side after completing the square."""
        return pa.add(pa.scale(list(self.F), 4), pa.mul(list(self.G), list(self.G)))

    def discriminant(self):
        return disc6(self.sextic())

    def __str__(self):
        return format_curve(self)


def format_poly(coeffs):
    coeffs = pa.trim(coeffs)
    if not coeffs:
        return "0"
    out = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[k])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = "x" if k == 1 else f"x^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        if not out:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def format_curve(C):
    rhs = format_poly(list(C.F))
    if C.G.degree < 0:
        return f"y^2 = {rhs}"
    return f"y^2 + ({format_poly(list(C.G))})*y = {rhs}"


# --- parser -----------------------------------------------------------------
# Bivariate polynomials are dicts {(i, j): Fraction} for x^i y^j.

def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("num", int(text[i:j]), i))
            i = j
        elif ch in "xy":
            tokens.append(("var", ch, i))
            i += 1
        elif ch in "+-*/^()=":
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise CurveSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, len(text)))
    return tokens


def _padd(a, b, sign=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
        if out[k] == 0:
            del out[k]
    return out


def _pmul(a, b):
    out = {}
    for (i, j), u in a.items():
        for (k, l), v in b.items():
            key = (i + k, j + l)
            out[key] = out.get(key, 0) + u * v
    return {k: v for k, v in out.items() if v != 0}


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise CurveSyntaxError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def equation(self):
        lhs = self.expr()
        self.take("=")
        rhs = self.expr()
        self.take("end")
        return _padd(lhs, rhs, -1)

    def expr(self):
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        acc = {k: sign * v for k, v in self.term().items()}
        while self.peek()[0] in ("+", "-"):
            s = 1 if self.take()[0] == "+" else -1
            acc = _padd(acc, self.term(), s)
        return acc

    def term(self):
        acc = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "*":
                self.take()
                acc = _pmul(acc, self.factor())
            elif tok[0] == "/":
                self.take()
                pos = self.peek()[2]
                d = self.factor()
                if set(d) != {(0, 0)}:
                    raise CurveSyntaxError("division by a non-constant", pos)
                acc = {k: v / d[(0, 0)] for k, v in acc.items()}
            elif tok[0] == "var" and tok[1] == "y" and self._spaced(tok):
                # "G(x) y" is accepted; other juxtapositions such as 2x are not
                acc = _pmul(acc, self.factor())
            elif tok[0] in ("num", "var", "("):
                raise CurveSyntaxError("implicit multiplication is not allowed", tok[2])
            else:
                return acc

    def _spaced(self, tok):
        return tok[2] > 0 and self.text[tok[2] - 1].isspace()

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            e = self.take("num")[1]
            out = {(0, 0): Fraction(1)}
            for _ in range(e):
                out = _pmul(out, base)
            return out
        return base

    def atom(self):
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            return {(0, 0): Fraction(tok[1])} if tok[1] else {}
        if tok[0] == "var":
            self.take()
            return {(1, 0) if tok[1] == "x" else (0, 1): Fraction(1)}
        if tok[0] == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        raise CurveSyntaxError(f"unexpected {tok[1]!r}", tok[2])


def parse_curve(text):
    """Parse ``y^2 [+ G(x) y] = F(x)`` into a GenusTwoCurve."""
    poly = _Parser(text).equation()
    if any(j > 2 for _, j in poly):
        raise CurveDegreeError("y appears with degree above 2")
    lead = {i: v for (i, j), v in poly.items() if j == 2}
    if set(lead) != {0}:
        raise CurveSyntaxError("the y^2 coefficient must be a nonzero constant", 0)
    a = lead[0]

    def collect(j):
        deg = max((i for (i, jj) in poly if jj == j), default=-1)
        return [poly.get((i, j), Fraction(0)) / a for i in range(deg + 1)]

    G = collect(1)
    F = [-c for c in collect(0)]
    if pa.degree(F) > 6 or pa.degree(G) > 3:
        raise CurveDegreeError("need deg F <= 6 and deg G <= 3")
    return GenusTwoCurve(RationalPolynomial(tuple(F), 6), RationalPolynomial(tuple(G), 3))


# --- reduction --------------------------------------------------------------

@dataclass(frozen=True)
class PrimeReduction:
    p: int
    f_bar: tuple
    good: bool


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def reduce_mod_p(C, p):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    h = C.sextic()
    if any(Fraction(c).denominator % p == 0 for c in list(C.F) + list(C.G)):
        return PrimeReduction(p, (), False)
    f_bar = tuple(Fraction(c).numerator * pow(Fraction(c).denominator, -1, p) % p for c in h)
    f_bar = tuple(pa.trim(f_bar))
    good = p != 2 and disc6(h).numerator % p != 0
    return PrimeReduction(p, f_bar, good)
