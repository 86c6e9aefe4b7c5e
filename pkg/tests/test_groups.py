import itertools
import random

import numpy as np
import pytest

from cayleydist.groups import (
    EXCEPTIONAL,
    GroupCapExceeded,
    GroupTable,
    GroupTableError,
    PRESET_NAMES,
    aut_fixing_set,
    automorphism_action,
    cyclic,
    exceptional_name,
    group_automorphisms,
    left_translation,
    load_group,
    preset,
    right_regular,
    right_translation,
    save_group,
    small_groups,
)
from cayleydist.perm import Permutation, compose
from oracles import group_automorphisms as brute_automorphisms

ALL_PRESETS = [preset(nm) for nm in PRESET_NAMES]


@pytest.mark.parametrize("H", ALL_PRESETS, ids=PRESET_NAMES)
def test_preset_table_axioms(H):
    M = np.array(H.mul)
    m, e = H.order, H.identity
    full = np.arange(m)
    assert all((np.sort(M[a]) == full).all() for a in range(m))
    assert all((np.sort(M[:, b]) == full).all() for b in range(m))
    assert (M[e] == full).all() and (M[:, e] == full).all()
    assert all(M[x, H.inv[x]] == e for x in range(m))
    assert (M[M] == M[:, M]).all()  # (ab)c == a(bc)


def test_small_group_library_is_complete_up_to_12():
    counts = {}
    for H in small_groups(12):
        counts[H.order] = counts.get(H.order, 0) + 1
    assert counts == {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5}
    profiles = [(H.order, H.is_abelian(), H.order_profile()) for H in small_groups(12)]
    assert len(set(profiles)) == len(profiles)


def test_bad_tables_rejected():
    with pytest.raises(GroupTableError):
        GroupTable(((0, 1), (0, 1)))
    # Latin square with identity but not associative (order 5 loop)
    loop = ((0, 1, 2, 3, 4), (1, 0, 3, 4, 2), (2, 4, 0, 1, 3), (3, 2, 4, 0, 1), (4, 3, 1, 2, 0))
    with pytest.raises(GroupTableError):
        GroupTable(loop)


def test_save_load_round_trip(tmp_path):
    H = preset("Q8")
    save_group(H, tmp_path / "q8.json")
    assert load_group(tmp_path / "q8.json") == H


def test_aut_small_examples():
    assert len(group_automorphisms(preset("Z2"))) == 1
    aut = group_automorphisms(preset("Z2^2"))
    assert len(aut) == 6
    assert len(group_automorphisms(preset("Q8"))) == 24


@pytest.mark.parametrize("H", [H for H in small_groups(12) if H.order <= 9], ids=lambda H: H.name)
def test_automorphisms_match_brute_force(H):
    assert sorted(a.map for a in group_automorphisms(H)) == sorted(brute_automorphisms(H.mul))


@pytest.mark.parametrize("H", [H for H in small_groups(12) if H.order > 9] + [preset("Z2^4")], ids=lambda H: H.name)
def test_automorphisms_large_orders_sampled(H):
    autos = group_automorphisms(H)
    maps = {a.map for a in autos}
    assert len(maps) == len(autos)
    assert all(a.is_homomorphism() and a.map[H.identity] == H.identity for a in autos)
    # closed under composition: a finite set of bijections closed under products is a group
    sample = random.Random(1).sample(autos, min(len(autos), 12))
    for a, b in itertools.product(sample, repeat=2):
        assert (a * b).map in maps
    # sampled bijections fixing e: homomorphisms among them must be listed
    rng = random.Random(2)
    rest = [x for x in range(H.order) if x != H.identity]
    for _ in range(3000):
        imgs = rest[:]
        rng.shuffle(imgs)
        f = [0] * H.order
        f[H.identity] = H.identity
        for x, y in zip(rest, imgs):
            f[x] = y
        M = np.array(H.mul)
        f = np.array(f)
        if (f[M] == M[f][:, f]).all():
            assert tuple(f.tolist()) in maps


def test_aut_z2_4_is_gl42():
    assert len(group_automorphisms(preset("Z2^4"))) == 20160


def test_cap_exceeded():
    with pytest.raises(GroupCapExceeded):
        group_automorphisms(cyclic(65))
    assert len(group_automorphisms(cyclic(65), cap=70)) == 48


def test_aut_fixing_set():
    H = preset("S3")
    S = [x for x in range(H.order) if x != H.identity]
    assert len(aut_fixing_set(H, S)) == len(group_automorphisms(H))
    for n in range(3, 13):
        assert len(aut_fixing_set(cyclic(n), {1, n - 1})) == 2
    assert len(aut_fixing_set(cyclic(2), {1})) == 1


@pytest.mark.parametrize("name", ["Z12", "D6", "Q8", "A4", "Z2^3"])
def test_aut_fixing_set_is_subgroup(name):
    H = preset(name)
    S = [x for x in range(H.order) if H.element_order(x) == 2] or [1, H.inv[1]]
    autos = aut_fixing_set(H, S)
    maps = {a.map for a in autos}
    assert all((a * b).map in maps for a in autos for b in autos)
    assert all(a.inverse().map in maps for a in autos)


@pytest.mark.parametrize("H", ALL_PRESETS, ids=PRESET_NAMES)
def test_right_regular_is_regular(H):
    R = right_regular(H)
    assert R.order() == H.order
    elems = [g.images for g in R.elements()]
    for x in range(H.order):
        assert sorted(g[x] for g in elems) == list(range(H.order))


def test_right_regular_z2():
    assert right_regular(cyclic(2)).order() == 2


def test_klein_regular_representation():
    H = preset("Z2^2")
    for g in right_regular(H).elements():
        if not g.is_identity():
            assert sorted(len(c) for c in g.cycles()) == [2, 2]


def test_right_translation_formula():
    H = preset("S3")
    for a in range(6):
        assert right_translation(H, a).images == tuple(H.mul[x][a] for x in range(6))


def test_left_translation():
    H = preset("S3")
    assert left_translation(H, H.identity).is_identity()
    for a, b in itertools.product(range(6), repeat=2):
        R, L = right_translation(H, a), left_translation(H, b)
        assert compose(L, R) == compose(R, L)
    with pytest.raises(IndexError):
        left_translation(H, 6)


def test_s4_translation_pairs_distinct():
    H = preset("S4")
    sigma = list(itertools.permutations(range(4))).index((3, 2, 1, 0))
    maps = {(right_translation(H, a) * left_translation(H, b)).images for a in range(24) for b in (H.identity, sigma)}
    assert len(maps) == 48


def test_group_action_stabilizer_and_orbits():
    H = preset("Z2^2")
    A = automorphism_action(group_automorphisms(H))
    assert A.is_closed()
    assert A.faithful
    assert A.orbits() == [[0], [1, 2, 3]]
    assert len(A.stabilizer([1])) == 2
    assert len(A.stabilizer([1, 2])) == 1


def test_exceptional_detection():
    found = {H.name for H in small_groups(12) if exceptional_name(H)}
    assert found == {"Z2^2", "Z2^3", "Z3^2", "Q8"}
    assert exceptional_name(preset("Z2^4")) == "Z2^4"
    assert set(EXCEPTIONAL) == {"Z2^2", "Z2^3", "Z3^2", "Z2^4", "Q8"}


def test_exceptional_invariants_are_separating():
    # within each order the library covers, the element-order multiset of an
    # exceptional group is shared by no other group of that order
    for H in small_groups(12):
        name = exceptional_name(H)
        same = [K for K in small_groups(12) if K.order == H.order and K.order_profile() == H.order_profile()]
        assert len(same) == 1 or name is None


def test_generating_set_generates():
    for H in small_groups(12):
        assert H.generates(H.generating_set())


def test_preset_lookup():
    assert preset("z7").order == 7
    assert preset("S5").order == 120
    assert preset("D5").order == 10
    with pytest.raises(KeyError):
        preset("nope")


def test_permutation_group_conversion():
    from cayleydist.groups import from_permutations

    H = from_permutations([Permutation.parse("(1 2 3)", 3), Permutation.parse("(1 2)", 3)])
    assert H.order == 6 and not H.is_abelian()
