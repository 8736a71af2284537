"""Permutations of the six Weierstrass points and of the sixteen 2-torsion points.

Permutations are tuples of 0-based images; (s*t)(i) = s(t(i)).  Cycle notation
at the interfaces is 1-based, e.g. "(1,2)(3,4,5)".
"""
import heapq
import itertools
import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

# 2-torsion point e_k written as the divisor class p_i - p_j of two Weierstrass points;
# e_1 = 0.  Index k-1 holds the pair for e_k.
TORSION_PAIRS = (
    None, (1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4), (5, 6),
    (1, 5), (2, 5), (3, 5), (4, 6), (4, 5), (3, 6), (2, 6), (1, 6),
)

# Coordinates of e_k in the basis v1..v4 (bit i <-> v_{i+1}).  e_15 is the class
# p_2 - p_6 = v2 + v3 + v4.
TORSION_VECTORS = (
    0b0000, 0b0001, 0b0010, 0b0011, 0b0100, 0b0101, 0b0110, 0b0111,
    0b1000, 0b1001, 0b1010, 0b1011, 0b1100, 0b1101, 0b1110, 0b1111,
)


def point_vector(i):
    """Class of p_i - p_1 in F_2^4: p_2..p_5 give the basis, p_6 the sum of all four."""
    if i == 1:
        return 0
    if i == 6:
        return 0b1111
    return 1 << (i - 2)


def pair_vector(pair):
    return point_vector(pair[0]) ^ point_vector(pair[1])


def check_torsion_table():
    """The pair and vector descriptions of the 16 points agree and are bijective."""
    for k in range(1, 16):
        assert pair_vector(TORSION_PAIRS[k]) == TORSION_VECTORS[k], k
    assert sorted(TORSION_VECTORS) == list(range(16))
    return True


_PAIR_INDEX = {frozenset(p): k for k, p in enumerate(TORSION_PAIRS) if p}


def compose(s, t):
    return tuple(s[i] for i in t)


def inverse(s):
    out = [0] * len(s)
    for i, j in enumerate(s):
        out[j] = i
    return tuple(out)


def identity(n):
    return tuple(range(n))


def parse_cycles(text, n=6):
    """'(1,2)(3,4,5)' -> permutation tuple; '()' or '' is the identity."""
    perm = list(range(n))
    text = text.replace(" ", "")
    if not re.fullmatch(r"(\((\d+(,\d+)*)?\))*", text):
        raise ValueError(f"bad cycle notation: {text!r}")
    # cycles compose right to left like everything else here
    for cyc in reversed(re.findall(r"\(([^)]*)\)", text)):
        if not cyc:
            continue
        pts = [int(x) - 1 for x in cyc.split(",")]
        if len(set(pts)) != len(pts) or min(pts) < 0 or max(pts) >= n:
            raise ValueError(f"bad cycle: ({cyc})")
        step = list(range(n))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            step[a] = b
        perm = [step[x] for x in perm]
    return tuple(perm)


def format_cycles(s):
    seen = set()
    out = []
    for i in range(len(s)):
        if i in seen or s[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = s[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = s[j]
        out.append("(" + ",".join(str(x + 1) for x in cyc) + ")")
    return "".join(out) or "()"


def cycle_type(s):
    seen = set()
    lengths = []
    for i in range(len(s)):
        if i in seen:
            continue
        n = 0
        j = i
        while j not in seen:
            seen.add(j)
            j = s[j]
            n += 1
        lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


def rho(sigma):
    """Induced permutation of e_1..e_16 (0-based) from a permutation of the six points."""
    out = [0]
    for k in range(1, 16):
        i, j = TORSION_PAIRS[k]
        out.append(_PAIR_INDEX[frozenset((sigma[i - 1] + 1, sigma[j - 1] + 1))])
    return tuple(out)


def element_order(s):
    n = 1
    t = s
    e = identity(len(s))
    while t != e:
        t = compose(s, t)
        n += 1
    return n


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple
    elements: frozenset = field(default=None, compare=False, repr=False)
    label: str = ""
    class_size: int = 1

    def __post_init__(self):
        if self.elements is None:
            object.__setattr__(self, "elements", frozenset(closure(self.generators, self.degree)))

    @property
    def order(self):
        return len(self.elements)

    def cycle_types(self):
        return frozenset(cycle_type(g) for g in self.elements)

    def as_dict(self):
        return {"order": self.order, "label": self.label, "class_size": self.class_size,
                "generators": [format_cycles(g) for g in self.generators]}


def closure(gens, n):
    e = identity(n)
    elems = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = compose(g, s)
                if h not in elems:
                    elems.add(h)
                    nxt.append(h)
        frontier = nxt
    return elems


def rho_group(H):
    return PermGroup(16, tuple(rho(g) for g in H.generators))


# --- S6 tables --------------------------------------------------------------

class _S6:
    def __init__(self):
        self.perms = sorted(itertools.permutations(range(6)))
        self.index = {p: i for i, p in enumerate(self.perms)}
        self.mul = [[self.index[compose(a, b)] for b in self.perms] for a in self.perms]
        self.inv = [self.index[inverse(a)] for a in self.perms]
        self.order = [element_order(p) for p in self.perms]

    def closure(self, gens, start=None):
        elems = set(start) if start else {0}
        frontier = list(elems)
        mul = self.mul
        while frontier:
            nxt = []
            for g in frontier:
                row = mul[g]
                for s in gens:
                    h = row[s]
                    if h not in elems:
                        elems.add(h)
                        nxt.append(h)
            frontier = nxt
        return frozenset(elems)

    def conjugate(self, g, K):
        mul, gi = self.mul, self.inv[g]
        return frozenset(mul[mul[g][x]][gi] for x in K)


@lru_cache(maxsize=1)
def s6():
    return _S6()


def _generating_set(S, K):
    """A small generating set of K: a single element, a pair, or a greedy fallback."""
    elems = sorted(K, key=lambda x: (-S.order[x], x))
    if len(K) == 1:
        return ()
    for a in elems:
        if S.order[a] == len(K):
            return (a,)
    for a in elems[:12]:
        for b in elems:
            if S.closure((a, b)) == K:
                return tuple(sorted((a, b)))
    gens = []
    cur = frozenset([0])
    for a in elems:
        if a not in cur:
            gens.append(a)
            cur = S.closure(gens)
            if cur == K:
                break
    for g in list(gens):
        rest = [h for h in gens if h != g]
        if S.closure(rest) == K:
            gens = rest
    return tuple(sorted(gens))


def _label(S, K):
    n = len(K)
    orders = [S.order[x] for x in K]
    inv = orders.count(2)
    abelian = all(S.mul[a][b] == S.mul[b][a] for a in K for b in K)
    center = sum(1 for a in K if all(S.mul[a][b] == S.mul[b][a] for b in K))
    top = max(orders)
    simple = {1: "1", 2: "C2", 3: "C3", 5: "C5", 9: "C3^2", 10: "D10", 16: "C2xD8", 20: "F20",
              48: "C2xS4", 60: "A5", 72: "S3wrC2", 120: "S5", 360: "A6", 720: "S6"}
    if n == 4:
        return "C4" if top == 4 else "V4"
    if n == 6:
        return "C6" if abelian else "S3"
    if n == 8:
        if abelian:
            return {2: "C2^3", 4: "C2xC4", 8: "C8"}[top]
        return "D8" if inv > 1 else "Q8"
    if n == 12:
        if top == 12:
            return "C12"
        if abelian:
            return "C2xC6"
        if inv == 1:
            return "Dic3"
        return "D12" if top == 6 else "A4"
    if n == 18:
        return "C3xS3" if center == 3 else "C3^2:C2"
    if n == 24:
        if inv == 1:
            return "SL(2,3)"
        return "C2xA4" if center == 2 else "S4"
    if n == 36:
        return "C3^2:C4" if top == 4 else "S3xS3"
    return simple.get(n, f"G{n}")


def enumerate_subgroup_classes():
    """Exhaustive search: one representative per conjugacy class of subgroups of S6.

    Every subgroup K > 1 is <H, c> for a maximal subgroup H and an element c of
    prime-power order outside H, so extending class representatives by such
    cyclic groups (in increasing order) reaches every class.
    """
    S = s6()
    cyclic = sorted({S.closure((g,)) for g in range(720) if S.order[g] in (2, 3, 4, 5)},
                    key=lambda c: (len(c), sorted(c)))
    cyc_gen = {c: min(x for x in c if S.order[x] == len(c)) for c in cyclic}
    seen = {}
    reps = []
    trivial = frozenset([0])
    heap = [(1, 0, trivial)]
    seen[trivial] = 0
    reps.append(trivial)
    while heap:
        _, _, H = heapq.heappop(heap)
        for c in cyclic:
            if c <= H:
                continue
            K = S.closure(tuple(H) + (cyc_gen[c],))
            if K in seen:
                continue
            cid = len(reps)
            for g in range(720):
                seen.setdefault(S.conjugate(g, K), cid)
            reps.append(K)
            heapq.heappush(heap, (len(K), cid, K))
    out = []
    for K in reps:
        size = sum(1 for v in seen.values() if v == reps.index(K))
        gens = tuple(S.perms[g] for g in _generating_set(S, K))
        out.append(PermGroup(6, gens, frozenset(S.perms[x] for x in K), _label(S, K), size))
    out.sort(key=lambda G: (G.order, G.label, -G.class_size, [format_cycles(g) for g in G.generators]))
    return out


CATALOGUE_VERSION = 1


def catalogue_json(classes):
    return json.dumps({"version": CATALOGUE_VERSION, "classes": [G.as_dict() for G in classes]},
                      indent=1, sort_keys=True)


@lru_cache(maxsize=1)
def subgroup_classes(exhaustive=False):
    """Conjugacy classes of subgroups of S6, from the checked-in catalogue or recomputed."""
    if exhaustive:
        return tuple(enumerate_subgroup_classes())
    data = json.loads(resources.files("kumbrauer.data").joinpath("s6_subgroups.json").read_text())
    if data["version"] != CATALOGUE_VERSION:
        raise ValueError("stale subgroup catalogue")
    return tuple(
        PermGroup(6, tuple(parse_cycles(g) for g in c["generators"]), None, c["label"], c["class_size"])
        for c in data["classes"])


def candidate_groups(observed, classes=None):
    """Classes containing an element of every observed cycle type."""
    observed = {tuple(sorted(t, reverse=True)) for t in observed}
    classes = subgroup_classes() if classes is None else classes
    return [G for G in classes if observed <= G.cycle_types()]


def frobenius_cycle_types(C, budget):
    """Factorization patterns of the binary sextic 4F + G^2 modulo good primes p <= budget."""
    from . import polyarith as pa
    from .curve_model import reduce_mod_p, is_prime
    types = set()
    for p in range(3, budget + 1, 2):
        if not is_prime(p):
            continue
        red = reduce_mod_p(C, p)
        if not red.good:
            continue
        pattern = pa.distinct_degree_pattern(list(red.f_bar), p)
        pattern += [1] * (6 - sum(pattern))  # roots at infinity
        types.add(tuple(sorted(pattern, reverse=True)))
    return types


def find_class(H, classes=None):
    """Index of the conjugacy class containing the subgroup H of S6."""
    S = s6()
    classes = subgroup_classes() if classes is None else classes
    K = frozenset(S.index[g] for g in H.elements)
    for i, G in enumerate(classes):
        if G.order != len(K):
            continue
        target = frozenset(S.index[g] for g in G.elements)
        if any(S.conjugate(g, target) == K for g in range(720)):
            return i
    raise LookupError("subgroup not found in catalogue")
