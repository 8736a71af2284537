"""Dense univariate polynomial helpers over Q and Z/p.

Polynomials are tuples/lists of coefficients, index = degree, with no
trailing zeros (the zero polynomial is the empty list).
"""
from fractions import Fraction
from functools import lru_cache
from math import gcd


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a):
    return len(trim(a)) - 1


def add(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a, b):
    return add(a, [-c for c in b])


def scale(a, c):
    return trim([c * x for x in a])


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def power(a, n):
    out = [1]
    for _ in range(n):
        out = mul(out, a)
    return out


def derivative(a):
    return trim([i * a[i] for i in range(1, len(a))])


def divmod_poly(a, b):
    """Exact division with remainder over Q."""
    a = [Fraction(x) for x in trim(a)]
    b = [Fraction(x) for x in trim(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        a = trim(a)
    return trim(q), a


def evaluate(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def reverse(a, n):
    """x^n a(1/x) for deg a <= n."""
    a = list(a) + [0] * (n + 1 - len(a))
    return trim(a[::-1])


@lru_cache(maxsize=None)
def cyclotomic(n):
    """Integer coefficients of the n-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, r = divmod_poly(num, cyclotomic(d))
            assert not r
    return tuple(int(c) for c in num)


def content_primitive(a):
    """Scale a rational polynomial to a primitive integer one (positive lead)."""
    a = [Fraction(x) for x in trim(a)]
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def mod_p(a, p):
    return trim([x % p for x in a])


def mul_mod(a, b, p):
    return mod_p(mul(a, b), p)


def divmod_mod(a, b, p):
    a = mod_p(a, p)
    b = mod_p(b, p)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] * inv % p
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] = (a[i + shift] - c * y) % p
        a = trim(a)
    return trim(q), a


def gcd_mod(a, b, p):
    a, b = mod_p(a, p), mod_p(b, p)
    while b:
        a, b = b, divmod_mod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def powmod_mod(base, e, m, p):
    result = [1]
    base = divmod_mod(base, m, p)[1]
    while e:
        if e & 1:
            result = divmod_mod(mul(result, base), m, p)[1]
        base = divmod_mod(mul(base, base), m, p)[1]
        e >>= 1
    return result


def distinct_degree_pattern(f, p):
    """Degrees of the irreducible factors of a squarefree f over F_p, sorted descending."""
    f = mod_p(f, p)
    inv = pow(f[-1], -1, p)
    f = [c * inv % p for c in f]
    pattern = []
    h = [0, 1]
    d = 0
    while degree(f) > 0:
        d += 1
        if 2 * d > degree(f):
            pattern.append(degree(f))
            break
        h = powmod_mod(h, p, f, p)
        g = gcd_mod(f, sub(h, [0, 1]), p)
        k = degree(g)
        if k > 0:
            pattern.extend([d] * (k // d))
            f = divmod_mod(f, g, p)[0]
            h = divmod_mod(h, f, p)[1] if degree(f) > 0 else h
    return sorted(pattern, reverse=True)
