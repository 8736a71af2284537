"""Integral lattices, discriminant forms, overlattices, and the Kummer / Neron-Severi lattices.

A lattice is stored through a basis in some ambient rational space with a
diagonal ambient Gram matrix.  Basis vectors are integer rows divided by a
common ``scale`` so that half-classes stay integral.
"""
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import intmat as im
from .galois_s6 import TORSION_VECTORS, PermGroup, compose, parse_cycles, rho


@dataclass(frozen=True)
class IntegerLattice:
    gram: tuple
    labels: tuple = ()
    basis: tuple = ()  # integer rows in ambient coordinates, divided by scale
    scale: int = 1
    ambient: tuple = ()  # diagonal of the ambient Gram matrix

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise ValueError("Gram matrix is not symmetric")
        if im.determinant([list(r) for r in g]) == 0:
            raise ValueError("degenerate lattice")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"b{i + 1}" for i in range(n)))

    @property
    def rank(self):
        return len(self.gram)

    @property
    def even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def det(self):
        return im.determinant([list(r) for r in self.gram])

    def signature(self):
        """(positive, negative) counts by exact symmetric Gaussian elimination."""
        A = [[Fraction(x) for x in row] for row in self.gram]
        n = len(A)
        pos = neg = 0
        for k in range(n):
            p = next((i for i in range(k, n) if A[i][i] != 0), None)
            if p is None:
                # no usable diagonal pivot: combine rows/cols to create one
                i, j = next((i, j) for i in range(k, n) for j in range(i + 1, n) if A[i][j] != 0)
                A[i] = [x + y for x, y in zip(A[i], A[j])]
                for row in A:
                    row[i] += row[j]
                p = i
            A[k], A[p] = A[p], A[k]
            for row in A:
                row[k], row[p] = row[p], row[k]
            d = A[k][k]
            pos, neg = (pos + 1, neg) if d > 0 else (pos, neg + 1)
            for i in range(k + 1, n):
                f = A[i][k] / d
                if f:
                    A[i] = [x - f * y for x, y in zip(A[i], A[k])]
            for i in range(k + 1, n):
                A[k][i] = A[i][k] = Fraction(0)
        return pos, neg

    def as_dict(self):
        return {"rank": self.rank, "gram": [list(r) for r in self.gram], "labels": list(self.labels),
                "basis": [list(r) for r in self.basis], "scale": self.scale}


def _ambient_pair(u, v, ambient, scale):
    s = sum(a * b * w for a, b, w in zip(u, v, ambient))
    q = Fraction(s, scale * scale)
    return q


def lattice_from_generators(gens, ambient, scale, labels=None):
    """Lattice spanned by integer rows gens/scale in the space with diagonal Gram ``ambient``."""
    B = im.hnf([list(g) for g in gens])
    gram = []
    for u in B:
        row = []
        for v in B:
            x = _ambient_pair(u, v, ambient, scale)
            if x.denominator != 1:
                raise ValueError("generators do not span an integral lattice")
            row.append(int(x))
        gram.append(row)
    return IntegerLattice(tuple(map(tuple, gram)), tuple(labels or ()), tuple(map(tuple, B)), scale,
                          tuple(ambient))


def orthogonal_sum(L1, L2):
    n1, n2 = L1.rank, L2.rank
    gram = [list(r) + [0] * n2 for r in L1.gram] + [[0] * n1 + list(r) for r in L2.gram]
    return IntegerLattice(tuple(map(tuple, gram)), tuple(L1.labels) + tuple(L2.labels))


def diagonal_lattice(entries):
    n = len(entries)
    return IntegerLattice(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)))


def index_in(sub, sup):
    """[sup : sub] for full-rank sublattices of the same ambient space (same scale)."""
    r = abs(im.determinant([list(x) for x in sub.basis]) * Fraction(1, sub.scale ** len(sub.basis)))
    s = abs(im.determinant([list(x) for x in sup.basis]) * Fraction(1, sup.scale ** len(sup.basis)))
    idx = r / s
    assert idx.denominator == 1
    return int(idx)


# --- discriminant forms -----------------------------------------------------

def _mod(x, m):
    x = Fraction(x)
    return x - m * (x // m)


@dataclass(frozen=True)
class DiscriminantForm:
    invariant_factors: tuple
    q: tuple  # q values of the generators, in Q/2Z
    b: tuple  # matrix of b on generators, in Q/Z
    generators: tuple = field(default=(), compare=False)  # lattice coordinates (Fractions)

    @property
    def order(self):
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def elements(self):
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def value(self, x):
        """q(sum x_i g_i) in Q/2Z."""
        n = len(x)
        s = sum(Fraction(x[i] * x[i]) * self.q[i] for i in range(n))
        s += sum(2 * x[i] * x[j] * self.b[i][j] for i in range(n) for j in range(i + 1, n))
        return _mod(s, 2)

    def pairing(self, x, y):
        n = len(x)
        return _mod(sum(x[i] * y[j] * self.b[i][j] for i in range(n) for j in range(n)), 1)

    def element_order(self, x):
        o = 1
        for xi, d in zip(x, self.invariant_factors):
            k = d // _gcd(xi % d, d) if xi % d else 1
            o = o * k // _gcd(o, k)
        return o

    def reduce(self, x):
        return tuple(xi % d for xi, d in zip(x, self.invariant_factors))

    def add(self, x, y):
        return self.reduce(tuple(a + b for a, b in zip(x, y)))

    def scale(self, k, x):
        return self.reduce(tuple(k * a for a in x))

    def direct_sum(self, other):
        n, m = len(self.q), len(other.q)
        b = [list(r) + [Fraction(0)] * m for r in self.b] + [[Fraction(0)] * n + list(r) for r in other.b]
        return DiscriminantForm(self.invariant_factors + other.invariant_factors, self.q + other.q,
                                tuple(map(tuple, b)))

    def as_dict(self):
        return {"invariant_factors": list(self.invariant_factors), "q": [str(x) for x in self.q],
                "b": [[str(x) for x in r] for r in self.b]}


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def discriminant_form(L):
    if not L.even:
        raise ValueError("discriminant forms need an even lattice")
    G = [list(r) for r in L.gram]
    U, D, V = im.smith_normal_form(G)
    diag = im.diagonal(D)
    gens, factors = [], []
    for i, d in enumerate(diag):
        if abs(d) > 1:
            gens.append([Fraction(V[r][i], abs(d)) for r in range(L.rank)])
            factors.append(abs(d))

    def pair(u, v):
        return sum(u[i] * G[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))

    q = tuple(_mod(pair(g, g), 2) for g in gens)
    b = tuple(tuple(_mod(pair(g, h), 1) for h in gens) for g in gens)
    return DiscriminantForm(tuple(factors), q, b, tuple(map(tuple, gens)))


def disc_coordinates(D, L, v):
    """Coordinates in D of the dual-lattice vector v (given in L-basis coordinates)."""
    for x in D.elements():
        w = [v[k] - sum(x[i] * D.generators[i][k] for i in range(len(x))) for k in range(L.rank)]
        if all(Fraction(t).denominator == 1 for t in w):
            return x
    raise ValueError("vector is not in the dual lattice")


def rank2_disc_form(n):
    """Discriminant form of the lattice with Gram [[2, n], [n, 0]]."""
    if n < 1:
        raise ValueError("n must be positive")
    return discriminant_form(IntegerLattice(((2, n), (n, 0))))


# --- overlattices -----------------------------------------------------------

def isotropic_subgroups(D, order, avoid=None):
    """Isotropic subgroups of D of the given order, as frozensets of elements.

    ``avoid`` is a predicate on nonzero elements that glue vectors must not satisfy.
    """
    elems = [x for x in D.elements() if any(x)]
    good = [x for x in elems if D.value(x) == 0 and order % D.element_order(x) == 0
            and not (avoid and avoid(x))]
    zero = tuple(0 for _ in D.invariant_factors)
    found = set()
    frontier = {frozenset([zero])}
    while frontier:
        nxt = set()
        for S in frontier:
            for x in good:
                if x in S:
                    continue
                T = _span(D, S | {x})
                if len(T) > order or order % len(T):
                    continue
                if any(D.value(y) != 0 or (avoid and any(y) and avoid(y)) for y in T):
                    continue
                if len(T) == order:
                    found.add(T)
                elif T not in nxt:
                    nxt.add(T)
        frontier = nxt
    return sorted(found, key=lambda T: sorted(T))


def _span(D, S):
    out = set(S)
    changed = True
    while changed:
        changed = False
        for a in list(out):
            for b in list(out):
                c = D.add(a, b)
                if c not in out:
                    out.add(c)
                    changed = True
    return frozenset(out)


def transvections(D):
    """Isometries x -> x + 2b(x,a) a for elements a of order 2 with q(a) = 1 mod 2."""
    out = []
    for a in D.elements():
        if any(a) and D.element_order(a) == 2 and D.value(a) == 1:
            out.append(a)

    def make(a):
        def t(x):
            c = int(2 * D.pairing(x, a)) % 2
            return D.add(x, D.scale(c, a)) if c else tuple(x)
        return t
    return [make(a) for a in out]


def subgroup_orbits(D, subgroups, maps):
    """Partition subgroups into orbits under the group generated by ``maps``."""
    remaining = set(subgroups)
    orbits = []
    for S in subgroups:
        if S not in remaining:
            continue
        orbit = {S}
        frontier = [S]
        while frontier:
            nxt = []
            for T in frontier:
                for f in maps:
                    U = frozenset(f(x) for x in T)
                    if U not in orbit:
                        orbit.add(U)
                        nxt.append(U)
            frontier = nxt
        orbits.append(sorted(orbit, key=lambda T: sorted(T)))
        remaining -= orbit
    return orbits


def overlattice(L, D, S):
    """The overlattice of L obtained by adjoining lifts of the subgroup S of D(L)."""
    # work in L-basis coordinates scaled by the exponent of S
    e = 1
    for x in S:
        e = e * D.element_order(x) // _gcd(e, D.element_order(x))
    n = L.rank
    gens = [[e * int(i == j) for j in range(n)] for i in range(n)]
    for x in S:
        v = [sum(x[i] * D.generators[i][k] for i in range(len(x))) for k in range(n)]
        gens.append([int(e * t) for t in v])
    return _coord_overlattice(L, gens, e)


def _coord_overlattice(L, gens, e):
    B = im.hnf(gens)
    G = L.gram
    gram = []
    for u in B:
        row = []
        for v in B:
            s = Fraction(sum(u[i] * G[i][j] * v[j] for i in range(L.rank) for j in range(L.rank)), e * e)
            assert s.denominator == 1
            row.append(int(s))
        gram.append(row)
    return IntegerLattice(tuple(map(tuple, gram)), L.labels, tuple(map(tuple, B)), e)


def enumerate_even_overlattices(L, index, avoid=None):
    """Even overlattices of L of the given index, one per orbit of isotropic subgroups.

    Orbits are taken under the isometries of D(L) generated by order-2
    transvections; this group is all of O(D(L)) for 2-elementary forms and a
    subgroup in general, so the number of classes returned is an upper bound.
    """
    if not L.even:
        raise ValueError("need an even lattice")
    D = discriminant_form(L)
    subs = isotropic_subgroups(D, index, avoid)
    orbits = subgroup_orbits(D, subs, transvections(D))
    out = []
    for orb in orbits:
        M = overlattice(L, D, orb[0])
        assert M.even
        out.append(M)
    return out


# --- the Kummer lattice and NS for geometric rank 1 ---------------------------

def _coordinate(k, i):
    """Value of the coordinate function x_i (1-based) at the 2-torsion point e_{k+1}."""
    return (TORSION_VECTORS[k] >> (i - 1)) & 1


def half_class_support(f):
    """Indices (0-based) where the F_2-valued function f on the 16 points is 1."""
    return [k for k in range(16) if f(k)]


KUMMER_FUNCTIONS = (
    ("1", lambda k: 1),
    ("x1", lambda k: _coordinate(k, 1)),
    ("x2", lambda k: _coordinate(k, 2)),
    ("x3", lambda k: _coordinate(k, 3)),
    ("x4", lambda k: _coordinate(k, 4)),
)

# Quadratic monomials spanning D(K), in the order giving the half-antidiagonal form.
QUADRATIC_MONOMIALS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


@dataclass(frozen=True)
class GaloisLattice:
    lattice: IntegerLattice
    group: PermGroup
    action: tuple  # integer matrices for group.generators (column action on coordinates)
    permutation_of: object = field(default=None, compare=False, repr=False)

    def matrix(self, sigma):
        """Action matrix of an arbitrary element of S6."""
        return self.permutation_of(sigma)

    def restrict(self, H):
        return GaloisLattice(self.lattice, H, tuple(self.matrix(g) for g in H.generators),
                             self.permutation_of)


def _action_builder(L, offset):
    """Matrices of sigma in S6 on the lattice basis: ambient E_i permuted by rho(sigma)."""
    B = [list(r) for r in L.basis]
    Bt = im.transpose(B)  # columns are basis vectors in ambient coordinates
    det = im.determinant(Bt)
    adj = [[int(x * det) for x in row] for row in im.rational_inverse(Bt)]

    def matrix(sigma):
        r = rho(sigma)
        # permuted basis: ambient coordinate offset+i moves to offset+r[i]
        PB = [row[:] for row in Bt]
        for i in range(16):
            PB[offset + r[i]] = Bt[offset + i]
        M = im.matmul(adj, PB)
        if any(x % det for row in M for x in row):
            raise ArithmeticError("action does not preserve the lattice")
        return tuple(tuple(x // det for x in row) for row in M)

    return matrix


S6_GENERATORS = (parse_cycles("(1,2)"), parse_cycles("(1,2,3,4,5,6)"))


@lru_cache(maxsize=1)
def kummer_lattice():
    """Rank-16 lattice spanned by the nodal classes and the five half-classes, with the S6 action."""
    gens = [[2 * int(i == j) for j in range(16)] for i in range(16)]
    for _, f in KUMMER_FUNCTIONS:
        gens.append([int(f(k)) for k in range(16)])
    labels = tuple(f"E{i + 1}" for i in range(16))
    L = lattice_from_generators(gens, (-2,) * 16, 2, labels)
    S6 = PermGroup(6, S6_GENERATORS)
    build = _action_builder(L, 0)
    return GaloisLattice(L, S6, tuple(build(g) for g in S6_GENERATORS), build)


def nodal_sublattice():
    return lattice_from_generators([[2 * int(i == j) for j in range(16)] for i in range(16)],
                                   (-2,) * 16, 2)


def kummer_glue_class(monomial):
    """Ambient vector (scale 2) of the half-class of x_i x_j, a generator of D(K)."""
    i, j = monomial
    return [_coordinate(k, i) * _coordinate(k, j) for k in range(16)]


def kummer_disc_basis():
    """The six classes x_i x_j of D(K) expressed in discriminant-form coordinates."""
    G = kummer_lattice()
    L = G.lattice
    D = discriminant_form(L)
    Bt = im.transpose([list(r) for r in L.basis])
    Binv = im.rational_inverse(Bt)
    out = []
    for m in QUADRATIC_MONOMIALS:
        v = kummer_glue_class(m)
        coords = [sum(Binv[i][k] * v[k] for k in range(16)) for i in range(16)]
        out.append(disc_coordinates(D, L, coords))
    return D, out


def isotropic_order2_square1(D, basis=None):
    """Order-2 elements x of D(K) with q(x) = 1 mod 2, in coordinates of ``basis``.

    With basis the classes of x1x2, x1x3, x1x4, x2x3, x2x4, x3x4, the form is
    q(x) = x1x6 + x2x5 + x3x4 mod 2 and there are 28 such elements; the four
    "diagonal" ones (1,0,0,0,0,1), (0,1,0,0,1,0), (0,0,1,1,0,0), (1,1,1,1,1,1)
    are returned by ``diagonal_square1_elements``.
    """
    if basis is None:
        return [x for x in D.elements() if any(x) and D.element_order(x) == 2 and D.value(x) == 1]
    out = []
    for c in itertools.product((0, 1), repeat=len(basis)):
        x = tuple(0 for _ in D.invariant_factors)
        for ci, b in zip(c, basis):
            if ci:
                x = D.add(x, b)
        if any(x) and D.value(x) == 1:
            out.append(c)
    return out


DIAGONAL_SQUARE1 = ((1, 0, 0, 0, 0, 1), (0, 1, 0, 0, 1, 0), (0, 0, 1, 1, 0, 0), (1, 1, 1, 1, 1, 1))


def diagonal_square1_elements():
    return list(DIAGONAL_SQUARE1)


# ambient order for NS: l first, then E1..E16
NS_AMBIENT = (4,) + (-2,) * 16
NS_GLUE = (0, 7, 11, 13, 14, 15)  # E1, E8, E12, E14, E15, E16 (0-based)


def ns_generators():
    gens = [[0] * 17 for _ in range(17)]
    gens[0][0] = 2
    for i in range(16):
        gens[i + 1][i + 1] = 2
    for _, f in KUMMER_FUNCTIONS:
        gens.append([0] + [int(f(k)) for k in range(16)])
    glue = [1] + [int(k in NS_GLUE) for k in range(16)]
    gens.append(glue)
    return gens, glue


@lru_cache(maxsize=1)
def ns_kummer_rank1():
    """Rank-17 Neron-Severi lattice of the Kummer surface when the Jacobian has geometric rank 1."""
    gens, _ = ns_generators()
    labels = ("l",) + tuple(f"E{i + 1}" for i in range(16))
    L = lattice_from_generators(gens, NS_AMBIENT, 2, labels)
    S6 = PermGroup(6, S6_GENERATORS)
    build = _cached(_action_builder(L, 1))
    return GaloisLattice(L, S6, tuple(build(g) for g in S6_GENERATORS), build)


def _cached(fn):
    cache = {}

    def wrapped(sigma):
        if sigma not in cache:
            cache[sigma] = fn(sigma)
        return cache[sigma]
    return wrapped


def lambda_lattice():
    """<l> + K, the index-2 sublattice of the rank-1 NS lattice."""
    gens, _ = ns_generators()
    labels = ("l",) + tuple(f"E{i + 1}" for i in range(16))
    return lattice_from_generators(gens[:-1], NS_AMBIENT, 2, labels)


def pairing(u, v, ambient=NS_AMBIENT, scale=2):
    return _ambient_pair(u, v, ambient, scale)


def check_galois_lattice(G, elements=None):
    """Verify Gram preservation and the homomorphism property on the full group."""
    gram = [list(r) for r in G.lattice.gram]
    elements = G.group.elements if elements is None else elements
    mats = {}
    for g in elements:
        M = [list(r) for r in G.matrix(g)]
        if im.matmul(im.matmul(im.transpose(M), gram), M) != gram:
            raise AssertionError(f"action of {g} does not preserve the form")
        mats[g] = M
    gens = list(G.group.generators)
    for g in elements:
        for s in gens:
            if im.matmul(mats[g], mats[s]) != mats[compose(g, s)]:
                raise AssertionError("action is not a homomorphism")
    return True


def lattice_json(G):
    data = G.lattice.as_dict()
    data["action"] = {"generators": ["(1,2)", "(1,2,3,4,5,6)"],
                      "matrices": [[list(r) for r in M] for M in G.action]}
    return json.dumps(data, sort_keys=True, indent=1)


def integral_on(L, D, coordinate):
    """Predicate: the lift of a D(L) element has integral ambient ``coordinate``.

    Used to keep a sublattice saturated: a glue vector whose image in the
    complementary factor is trivial would enlarge that sublattice.
    """
    def test(x):
        v = [sum(x[i] * D.generators[i][k] for i in range(len(x))) for k in range(L.rank)]
        c = sum(v[i] * L.basis[i][coordinate] for i in range(L.rank)) / L.scale
        return Fraction(c).denominator == 1
    return test


def rank1_overlattice_classes():
    """Even index-2 overlattices of <l> + K in which K stays saturated, up to isometry of D."""
    L = lambda_lattice()
    D = discriminant_form(L)
    return enumerate_even_overlattices(L, 2, avoid=integral_on(L, D, 0))
