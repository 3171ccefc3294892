# Copyright 2025 Google LLC
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.core.interval import (
    Interval,
    NestedCollection,
    conjugate_interval,
    insert_caret,
    nested_collections,
    omega,
)
from app.core.permutation import (
    compose,
    identity,
    inverse,
    is_rotation,
    transposition,
    validate,
)
from app.core.trees import (
    LabeledTree,
    PlanarTree,
    all_planar_trees,
    contract_perm,
    expand_perm,
    expand_tree,
    least_reflection,
    nabla_tilde,
    nested_to_tree,
    simple_expand_labeled,
    simple_expand_perm,
    tree_to_nested,
)
from app.core.unrooted import (
    UnrootedLabeledTree,
    all_unrooted_trees,
    canonical_unrooted,
    expand_position,
    in_k_infinity,
    mirror,
    nabla_bar_down,
    nabla_bar_up,
    random_member,
    unrooted_class_members,
)

permutations = st.integers(min_value=1, max_value=7).flatmap(
    lambda n: st.permutations(list(range(1, n + 1))).map(tuple)
)


def test_compose_applies_right_factor_first() -> None:
    assert compose((2, 1, 3), (1, 3, 2)) == (2, 3, 1), "Expected a(b(x))"
    assert inverse((2, 3, 1)) == (3, 1, 2)


@given(permutations)
def test_inverse_cancels(p: tuple[int, ...]) -> None:
    assert compose(p, inverse(p)) == identity(len(p))
    assert compose(inverse(p), p) == identity(len(p))


def test_validate_rejects_non_bijections() -> None:
    with pytest.raises(ValueError):
        validate((1, 1, 3))
    with pytest.raises(ValueError):
        transposition(0, 2, 3)


def test_rotations() -> None:
    assert is_rotation((2, 3, 1))
    assert is_rotation(identity(4))
    assert not is_rotation((2, 1, 3))


def test_omega_reverses_the_interval() -> None:
    assert omega(Interval(2, 4), 5) == (1, 4, 3, 2, 5)
    with pytest.raises(ValueError):
        omega(Interval(2, 6), 5)


def test_conjugate_interval_reflects_inside() -> None:
    assert conjugate_interval(Interval(1, 5), Interval(1, 2)) == Interval(4, 5)
    assert conjugate_interval(Interval(1, 2), Interval(3, 4)) == Interval(3, 4)


def test_invalid_intervals() -> None:
    with pytest.raises(ValueError):
        Interval(2, 2)
    with pytest.raises(ValueError):
        NestedCollection(3, (Interval(1, 3),))
    with pytest.raises(ValueError):
        NestedCollection(3, (Interval(1, 2), Interval(2, 3)))


def test_nested_collections_count_associahedron_faces() -> None:
    assert len(nested_collections(3)) == 3, "K3 is a segment: two ends and itself"
    assert len(nested_collections(4)) == 11, "K4 is a pentagon"
    vertices = [c for c in nested_collections(4) if len(c) == 2]
    assert len(vertices) == 5


def test_insert_caret_shifts_later_labels() -> None:
    grown = insert_caret(NestedCollection.of(3, [(2, 3)]), 1)
    assert grown == NestedCollection.of(4, [(1, 2), (3, 4)])
    assert insert_caret(NestedCollection(1), 1) == NestedCollection(2)


def test_tree_and_nested_collection_agree() -> None:
    for c in nested_collections(5):
        assert tree_to_nested(nested_to_tree(c)) == c


def test_star_has_no_internal_vertices() -> None:
    assert tree_to_nested(PlanarTree.star(4)) == NestedCollection(4)
    assert PlanarTree.star(1).leaf_count == 1
    with pytest.raises(ValueError):
        PlanarTree.star(0)


def test_all_planar_trees() -> None:
    trees = all_planar_trees(4)
    assert len(trees) == 11, "K4 has eleven faces"
    assert len(set(trees)) == len(trees)
    assert PlanarTree.star(4) in trees
    assert PlanarTree(((1, 2), (3, 4))) in trees


def test_simple_expand_labeled_grows_a_caret() -> None:
    grown = simple_expand_labeled(LabeledTree(PlanarTree.star(2), (2, 1)), 1)
    assert grown.tree == PlanarTree(((1, 2), 3))
    assert grown.perm == (2, 3, 1), "Label 2 splits into 2, 3"


def test_expand_perm_doubles_labels() -> None:
    assert expand_perm((2, 1)) == (3, 4, 1, 2)


@given(permutations, st.data())
def test_simple_expansion_contracts_back(p: tuple[int, ...], data: st.DataObject) -> None:
    m = data.draw(st.integers(min_value=1, max_value=len(p)))
    grown = simple_expand_perm(p, m)
    assert grown[m] == grown[m - 1] + 1, "The split label must be consecutive"
    assert contract_perm(grown, m) == p


def test_simple_expand_perm_example() -> None:
    assert simple_expand_perm((2, 1, 3), 1) == (2, 3, 1, 4)


def test_nabla_is_an_involution() -> None:
    for c in nested_collections(4):
        for perm in itertools.permutations(range(1, 5)):
            lt = LabeledTree(nested_to_tree(c), perm)
            for v in c.intervals:
                assert nabla_tilde(nabla_tilde(lt, v), v) == lt


def test_expand_tree_examples() -> None:
    tripod = expand_tree(LabeledTree(PlanarTree.star(3), (1, 2, 3)))
    assert tripod.tree == PlanarTree(((1, 2), (3, 4), (5, 6)))
    assert tripod.perm == identity(6)
    rotated = expand_tree(LabeledTree(PlanarTree.star(3), (2, 3, 1)))
    assert rotated.perm == (3, 4, 5, 6, 1, 2), "Each label k becomes 2k - 1, 2k"


def test_least_reflection_picks_the_smaller_order() -> None:
    c = NestedCollection.of(4, [(3, 4)])
    assert least_reflection((3, 4, 2, 1), c) == ((3, 4, 1, 2), c), "The root keeps its order"
    flipped = least_reflection((3, 4, 2, 1), c, flip_root=True)
    assert flipped == ((1, 2, 4, 3), NestedCollection.of(4, [(1, 2)]))


def _tree(n: int, splits: list[tuple[int, int]], labels: tuple[int, ...]) -> UnrootedLabeledTree:
    return UnrootedLabeledTree(n, NestedCollection.of(n, splits), labels)


def test_expand_position_inside_a_split() -> None:
    ut = _tree(3, [(1, 2)], (0, 1, 2, 3))
    assert expand_position(ut, 1) == _tree(4, [(1, 2), (1, 3)], (0, 1, 2, 3, 4))
    assert expand_position(ut, 1, swap=True) == _tree(4, [(1, 2), (1, 3)], (0, 2, 1, 3, 4))


def test_expand_position_outside_every_split() -> None:
    ut = _tree(3, [(1, 2)], (0, 1, 2, 3))
    assert expand_position(ut, 3) == _tree(4, [(1, 2), (3, 4)], (0, 1, 2, 3, 4))
    with pytest.raises(ValueError):
        expand_position(ut, 4)


def _edge_carrying(ut: UnrootedLabeledTree, labels: set[int]) -> Interval:
    return next(
        t for t in ut.splits.intervals if {ut.labels[p] for p in range(t.lo, t.hi + 1)} == labels
    )


@pytest.mark.parametrize("n", [3, 4, 5])
def test_nabla_bar_moves(n: int) -> None:
    for ut in all_unrooted_trees(n):
        lt = LabeledTree(nested_to_tree(ut.splits), ut.labels[1:])
        for e in ut.splits.intervals:
            down = nabla_bar_down(ut, e)
            assert nabla_bar_down(down, e) == ut
            rooted = nabla_tilde(lt, e)
            assert (tree_to_nested(rooted.tree), rooted.perm) == (down.splits, down.labels[1:])
            up = nabla_bar_up(ut, e)
            side = {ut.labels[p] for p in range(e.lo, e.hi + 1)}
            assert nabla_bar_up(up, _edge_carrying(up, side)) == ut
            assert nabla_bar_up(down, e) == mirror(ut), "Reflecting both sides is the mirror"


def test_nabla_bar_needs_an_internal_edge() -> None:
    star = _tree(3, [], (0, 1, 2, 3))
    with pytest.raises(ValueError):
        nabla_bar_down(star, Interval(1, 2))
    with pytest.raises(ValueError):
        nabla_bar_up(star, Interval(1, 2))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_canonical_unrooted_is_the_least_class_member(n: int) -> None:
    for ut in all_unrooted_trees(n):
        members = unrooted_class_members(ut)
        assert canonical_unrooted(ut) == members[0]
        assert in_k_infinity(ut) == any(m.labels == tuple(range(n + 1)) for m in members)


def test_random_unrooted_member_stays_in_class() -> None:
    rng = random.Random(3)
    ut = _tree(5, [(1, 2), (1, 3), (4, 5)], (0, 3, 1, 5, 2, 4))
    for _ in range(20):
        assert canonical_unrooted(random_member(rng, ut)) == canonical_unrooted(ut)
