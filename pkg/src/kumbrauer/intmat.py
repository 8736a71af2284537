"""Integer matrix normal forms.

Matrices are lists of lists of Python ints.  Hermite form is row style: pivots
move left to right, pivots are positive, and entries above a pivot are reduced
into [0, pivot).
"""
from fractions import Fraction


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M):
    return [list(r) for r in zip(*M)] if M else []


def matmul(A, B):
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v):
    return [sum(a * b for a, b in zip(row, v)) for row in A]


class RowLattice:
    """Incrementally maintained echelon basis of the Z-span of inserted rows."""

    def __init__(self, ncols):
        self.ncols = ncols
        self.pivots = {}  # column -> row with leading entry in that column

    def insert(self, row):
        row = list(row)
        c = 0
        while True:
            while c < self.ncols and row[c] == 0:
                c += 1
            if c == self.ncols:
                return
            p = self.pivots.get(c)
            if p is None:
                if row[c] < 0:
                    row = [-x for x in row]
                self.pivots[c] = row
                return
            a, b = p[c], row[c]
            if b % a == 0:
                k = b // a
                row = [x - k * y for x, y in zip(row, p)]
                continue
            g, x, y = _xgcd(a, b)
            new_p = [x * u + y * v for u, v in zip(p, row)]
            row = [(a // g) * v - (b // g) * u for u, v in zip(p, row)]
            self.pivots[c] = new_p

    def rows(self):
        return [self.pivots[c] for c in sorted(self.pivots)]

    def hnf(self):
        return hnf(self.rows())


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hnf(rows):
    """Row Hermite normal form of the Z-span of the rows (zero rows dropped)."""
    if not rows:
        return []
    lat = RowLattice(len(rows[0]))
    for r in rows:
        lat.insert(r)
    H = lat.rows()
    for i, r in enumerate(H):
        c = next(j for j, x in enumerate(r) if x)
        for k in range(i):
            q = H[k][c] // r[c]
            if q:
                H[k] = [x - q * y for x, y in zip(H[k], r)]
    return H


def smith_normal_form(M):
    """Return (U, D, V) with U*M*V = D, U and V unimodular, D diagonal with d_i | d_{i+1}."""
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(r) for r in M]
    U = identity(m)
    V = identity(n)
    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        A[t], A[i] = A[i], A[t]
        U[t], U[i] = U[i], U[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        for row in V:
            row[t], row[j] = row[j], row[t]
        done = True
        piv = A[t][t]
        for i in range(t + 1, m):
            q = A[i][t] // piv
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                U[i] = [x - q * y for x, y in zip(U[i], U[t])]
            if A[i][t]:
                done = False
        for j in range(t + 1, n):
            q = A[t][j] // piv
            if q:
                for row in A:
                    row[j] -= q * row[t]
                for row in V:
                    row[j] -= q * row[t]
            if A[t][j]:
                done = False
        if not done:
            continue
        bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv), None)
        if bad is not None:
            A[t] = [x + y for x, y in zip(A[t], A[bad])]
            U[t] = [x + y for x, y in zip(U[t], U[bad])]
            continue
        if piv < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, A, V


def diagonal(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def invariant_factors(M):
    return [d for d in diagonal(smith_normal_form(M)[1]) if d]


def unimodular_inverse(V):
    Vi = rational_inverse(V)
    out = [[int(x) for x in row] for row in Vi]
    assert all(x.denominator == 1 for row in Vi for x in row)
    return out


def rational_inverse(M):
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def determinant(M):
    """Exact determinant via fraction-free (Bareiss) elimination."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((r for r in range(k + 1, n) if A[r][k]), None)
            if p is None:
                return 0
            A[k], A[p] = A[p], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def kernel_basis(M, ncols=None):
    """Z-basis of {x : M x = 0} as (basis columns, coordinate map).

    Returns (K, coords) where K is a list of basis vectors and coords(v)
    gives the integer coordinates of a kernel vector v in that basis.
    """
    if not M:
        n = ncols
        I = identity(n)
        return I, lambda v: list(v)
    n = len(M[0])
    U, D, V = smith_normal_form(M)
    r = sum(1 for d in diagonal(D) if d)
    Vi = unimodular_inverse(V)
    basis = [[V[i][j] for i in range(n)] for j in range(r, n)]

    def coords(v):
        w = matvec(Vi, v)
        if any(w[:r]):
            raise ValueError("vector is not in the kernel")
        return w[r:]

    return basis, coords
