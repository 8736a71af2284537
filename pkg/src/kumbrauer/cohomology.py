"""H^1 of a finite permutation group acting on a free Z-module."""
import json
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from . import intmat as im
from .galois_s6 import compose, format_cycles, identity, subgroup_classes


class InconsistentActionError(ValueError):
    pass


@dataclass(frozen=True)
class CohomologyResult:
    invariant_factors: tuple

    @property
    def order(self):
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.invariant_factors)


def _quotient(Z_basis_coords, coboundaries, k):
    """Z^k modulo the span of the coboundary coordinate vectors."""
    if k == 0:
        return CohomologyResult(())
    Y = im.transpose([Z_basis_coords(b) for b in coboundaries]) if coboundaries else [[0] for _ in range(k)]
    diag = im.diagonal(im.smith_normal_form(Y)[1])
    rank = sum(1 for d in diag if d)
    if rank < k:
        raise InconsistentActionError("H^1 has a free part; the group is not acting through a finite quotient")
    return CohomologyResult(tuple(abs(d) for d in diag if abs(d) > 1))


def _check_matrix(M, n):
    if len(M) != n or any(len(r) != n for r in M):
        raise ValueError("action matrices must be square of the module rank")


def h1(group, matrices):
    """H^1(group, Z^n) with generator group.generators[i] acting by the column matrix matrices[i].

    A cocycle is pinned down by its values on the generators.  Every element gets
    a canonical word from a breadth-first spanning tree of the Cayley graph
    (generators tried in order), and each non-tree edge h -> h*s imposes
    f(h s) = f(h) + h f(s).
    """
    gens = list(group.generators)
    mats = [[list(r) for r in M] for M in matrices]
    if len(gens) != len(mats):
        raise ValueError("one matrix per generator")
    if not gens:
        return CohomologyResult(())
    n = len(mats[0])
    for M in mats:
        _check_matrix(M, n)
    N = n * len(gens)
    e = identity(group.degree)

    # A[h]: n x N matrix expressing f(h) in the unknowns; act[h]: action matrix of h
    A = {e: [[0] * N for _ in range(n)]}
    act = {e: im.identity(n)}
    order = [e]
    queue = deque([e])
    constraints = im.RowLattice(N)
    pending = []
    while queue:
        h = queue.popleft()
        for si, s in enumerate(gens):
            hs = compose(h, s)
            step = [row[:] for row in A[h]]
            Mh = act[h]
            for i in range(n):
                for j in range(n):
                    step[i][si * n + j] += Mh[i][j]
            prod = im.matmul(Mh, mats[si])
            if hs not in A:
                A[hs] = step
                act[hs] = prod
                order.append(hs)
                queue.append(hs)
            else:
                pending.append((hs, step, prod))
    if len(A) != len(group.elements):
        raise InconsistentActionError("generators do not generate the stated group")
    for hs, step, prod in pending:
        if prod != act[hs]:
            raise InconsistentActionError("the matrices do not define a homomorphism")
        for i in range(n):
            constraints.insert([a - b for a, b in zip(step[i], A[hs][i])])

    basis, coords = im.kernel_basis(constraints.rows(), N)
    cob = []
    for j in range(n):
        v = []
        for M in mats:
            v.extend(M[i][j] - int(i == j) for i in range(n))
        cob.append(v)
    result = _quotient(coords, cob, len(basis))
    for d in result.invariant_factors:
        assert len(group.elements) % d == 0
    return result


def h1_naive(elements, matrix_of):
    """H^1 with f(h) unknown for every element and every relation f(gh) = f(g) + g f(h)."""
    elements = sorted(elements)
    idx = {g: i for i, g in enumerate(elements)}
    mats = {g: [list(r) for r in matrix_of(g)] for g in elements}
    n = len(next(iter(mats.values())))
    N = n * len(elements)
    lat = im.RowLattice(N)
    for g in elements:
        for h in elements:
            gh = compose(g, h)
            for i in range(n):
                row = [0] * N
                row[idx[gh] * n + i] += 1
                row[idx[g] * n + i] -= 1
                for j in range(n):
                    row[idx[h] * n + j] -= mats[g][i][j]
                lat.insert(row)
    basis, coords = im.kernel_basis(lat.rows(), N)
    cob = []
    for j in range(n):
        v = []
        for g in elements:
            v.extend(mats[g][i][j] - int(i == j) for i in range(n))
        cob.append(v)
    return _quotient(coords, cob, len(basis))


def h1_lattice(G, H=None):
    """H^1 of the subgroup H (default: the whole group) on the Galois lattice G."""
    H = G.group if H is None else H
    return h1(H, [G.matrix(g) for g in H.generators])


def h1_all_classes(G=None, classes=None):
    """Table {class index: H^1} over all conjugacy classes of subgroups of S6."""
    if G is None:
        from .lattice_kit import ns_kummer_rank1
        G = ns_kummer_rank1()
    classes = subgroup_classes() if classes is None else classes
    return {i: h1_lattice(G, H) for i, H in enumerate(classes)}


def table_json(table, classes):
    rows = []
    for i, H in enumerate(classes):
        rows.append({"class": i, "order": H.order, "label": H.label,
                     "generators": [format_cycles(g) for g in H.generators],
                     "h1": list(table[i].invariant_factors)})
    return json.dumps({"version": 1, "module": "ns_kummer_rank1", "table": rows}, indent=1, sort_keys=True)


@lru_cache(maxsize=1)
def h1_table_fixture():
    data = json.loads(resources.files("kumbrauer.data").joinpath("h1_table.json").read_text())
    return {row["class"]: CohomologyResult(tuple(row["h1"])) for row in data["table"]}


def algebraic_bound(candidates, table=None):
    """Max of |H^1| over candidate subgroup classes (indices into the catalogue)."""
    candidates = list(candidates)
    if not candidates:
        raise ValueError("need at least one candidate")
    table = h1_table_fixture() if table is None else table
    return max(table[i].order for i in candidates)
