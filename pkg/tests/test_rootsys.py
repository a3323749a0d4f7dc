from itertools import permutations

import pytest

from qua.rootsys import (
    NoAdaptedBase,
    Root,
    all_roots,
    apply_perm,
    base_coordinates,
    convex_order,
    find_adapted_base,
    is_base,
    longest_word,
    positive_roots,
    positive_system,
    standard_base,
)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_counts(n):
    assert len(positive_roots(n)) == n * (n + 1) // 2
    assert len(all_roots(n)) == n * (n + 1)
    assert len(longest_word(n)) == n * (n + 1) // 2


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_convex_order_enumerates_positive_roots(n):
    order = convex_order(n)
    assert sorted(order) == positive_roots(n)


def test_convex_order_rank_two():
    assert convex_order(2) == [Root(1, 2), Root(1, 3), Root(2, 3)]


def test_root_addition():
    assert Root(1, 2).plus(Root(2, 3)) == Root(1, 3)
    assert Root(2, 3).plus(Root(1, 2)) == Root(1, 3)
    assert Root(1, 2).plus(Root(2, 1)) is None
    assert Root(1, 2).plus(Root(3, 4)) is None


@pytest.mark.parametrize("n", [2, 3])
def test_weyl_images_of_standard_base_are_bases(n):
    for w in permutations(range(1, n + 2)):
        base = tuple(apply_perm(w, r) for r in standard_base(n))
        assert is_base(base, n)
        assert len(positive_system(base, n)) == len(positive_roots(n))


def test_non_base_rejected():
    assert not is_base((Root(1, 2), Root(1, 3)), 2)
    assert not is_base((Root(1, 2), Root(2, 1)), 2)


def test_base_coordinates():
    base = standard_base(3)
    assert base_coordinates(Root(1, 4), base, 3) == [1, 1, 1]
    assert base_coordinates(Root(3, 1), base, 3) == [-1, -1, 0]


def test_adapted_base_contains_N_a_in_positive_part():
    N_a = {Root(2, 1), Root(3, 1)}
    base = find_adapted_base(N_a, set(), set(), n=2)
    pos = positive_system(base, 2)
    assert N_a <= pos
    assert all(r.positive for r in base if r not in N_a)


def test_adapted_base_rejects_bad_partition():
    with pytest.raises(NoAdaptedBase):
        find_adapted_base({Root(1, 2)}, {Root(1, 2), Root(2, 1)}, set(), n=2)
    with pytest.raises(NoAdaptedBase):
        find_adapted_base(set(), {Root(1, 2)}, set(), n=2)
