import itertools
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from kumbrauer.galois_s6 import (PermGroup, TORSION_PAIRS, candidate_groups, catalogue_json, check_torsion_table,
                                 compose, cycle_type, enumerate_subgroup_classes, find_class, format_cycles,
                                 frobenius_cycle_types, identity, inverse, parse_cycles, pair_vector, rho,
                                 subgroup_classes)

perm6 = st.permutations(range(6)).map(tuple)


def test_torsion_table_consistent():
    assert check_torsion_table()
    # e15 is p2 - p6
    assert TORSION_PAIRS[14] == (2, 6)
    assert pair_vector((2, 6)) == 0b1110


def test_rho_generator_images():
    assert format_cycles(rho(parse_cycles("(1,2)"))) == "(3,4)(5,6)(9,10)(15,16)"
    assert format_cycles(rho(parse_cycles("(1,2,3,4,5,6)"))) == "(2,4,7,13,8,16)(3,6,11,12,9,15)(5,10,14)"


@given(perm6, perm6)
def test_rho_is_a_homomorphism(s, t):
    assert rho(compose(s, t)) == compose(rho(s), rho(t))


@given(perm6)
def test_rho_fixes_zero_and_is_injective_on_pairs(s):
    r = rho(s)
    assert r[0] == 0
    assert sorted(r) == list(range(16))


def test_rho_matches_divisor_action():
    # sigma sends p_i - p_j to p_sigma(i) - p_sigma(j)
    s = parse_cycles("(1,3,5)(2,4)")
    r = rho(s)
    for k in range(1, 16):
        i, j = TORSION_PAIRS[k]
        assert set(TORSION_PAIRS[r[k]]) == {s[i - 1] + 1, s[j - 1] + 1}


@given(perm6)
def test_cycle_round_trip(s):
    assert parse_cycles(format_cycles(s)) == s
    assert compose(s, inverse(s)) == identity(6)


def test_composition_convention():
    # (s t)(i) = s(t(i)): (1,2) after (2,3) sends 3 -> 2 -> 1
    st_ = compose(parse_cycles("(1,2)"), parse_cycles("(2,3)"))
    assert st_[2] == 0
    assert parse_cycles("(1,2)(2,3)") == st_


def test_bad_cycle_notation():
    for text in ("(1,1)", "(0,2)", "(1,7)", "1,2", "(1,2"):
        with pytest.raises(ValueError):
            parse_cycles(text)


def test_catalogue_size_and_subgroup_count():
    classes = subgroup_classes()
    assert len(classes) == 56
    # S6 has 1455 subgroups in total
    assert sum(G.class_size for G in classes) == 1455
    orders = Counter(G.order for G in classes)
    assert orders[720] == 1 and orders[360] == 1 and orders[1] == 1
    assert orders[60] == 2 and orders[120] == 2
    # V4 appears in five classes (two of them inside A6)
    assert sum(1 for G in classes if G.label == "V4") == 5


def test_catalogue_orders_divide_720():
    for G in subgroup_classes():
        assert 720 % G.order == 0
        # the class size is the index of the normalizer, which contains G
        assert (720 // G.order) % G.class_size == 0


def test_enumeration_reproduces_the_fixture():
    fresh = enumerate_subgroup_classes()
    stored = subgroup_classes()
    assert catalogue_json(fresh) == catalogue_json(stored)


def test_class_sizes_by_brute_conjugation():
    # independent check on a few classes: count distinct conjugates directly
    classes = subgroup_classes()
    S6 = list(itertools.permutations(range(6)))
    for G in classes:
        if G.order not in (2, 60, 72):
            continue
        E = frozenset(G.elements)
        conj = {frozenset(compose(compose(g, h), inverse(g)) for h in E) for g in S6}
        assert len(conj) == G.class_size


def test_find_class_of_conjugate():
    classes = subgroup_classes()
    g = parse_cycles("(1,4,2)(3,6)")
    for i, G in enumerate(classes[:20]):
        H = PermGroup(6, tuple(compose(compose(g, x), inverse(g)) for x in G.generators))
        assert find_class(H, classes) == i


def test_example_galois_group_and_samples(example_curve):
    classes = subgroup_classes()
    # roots -1, i, -i, then the three roots of x^3 - x^2 + 1
    G = PermGroup(6, (parse_cycles("(2,3)"), parse_cycles("(4,5,6)"), parse_cycles("(4,5)")))
    assert G.order == 12
    idx = find_class(G, classes)
    observed = frobenius_cycle_types(example_curve, 200)
    assert observed <= G.cycle_types()
    assert classes[idx] in candidate_groups(observed, classes)
    assert (2, 1, 1, 1, 1) in observed and (3, 2, 1) in observed


def test_cycle_type():
    assert cycle_type(parse_cycles("(1,2,3)(4,5)")) == (3, 2, 1)
