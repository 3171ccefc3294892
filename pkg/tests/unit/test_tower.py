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

import random

import pytest

from app.core.interval import NestedCollection
from app.core.permutation import identity, random_permutation
from app.core.unrooted import UnrootedLabeledTree
from app.groups.cyclic import rotation, to_cyclic
from app.groups.prefix import BinaryTree, CyclicTree
from app.groups.symbols import (
    TreePairSymbol,
    compose_n,
    identity_n,
    inverse_n,
    random_tree_pair,
    to_spheromorphism,
    transposition_symbol,
)
from app.tools.verify import other_representative, random_element
from app.tower.action import act, act_on_representative, check_inv, check_t_stabilizes
from app.tower.cells import (
    TowerCell,
    base_point,
    cells_equal,
    in_k_infinity,
    k_infinity_cells,
    leaf_count,
    make_bar_cell,
    random_cell,
    stabilize_to,
)


@pytest.fixture
def rng() -> random.Random:
    """Seeded generator for random cells and elements."""
    return random.Random(2024)


@pytest.fixture(scope="module")
def kinf_level_one() -> list[TowerCell]:
    """Every cell of the distinguished associahedron at level 1."""
    return k_infinity_cells(1)


def test_leaf_counts() -> None:
    assert leaf_count("tilde", 2) == 4
    assert leaf_count("bar", 1) == 6
    with pytest.raises(ValueError):
        leaf_count("tilde", 0)


def test_stabilization_keeps_the_cell(rng: random.Random) -> None:
    for variant, low in (("tilde", 1), ("bar", 0)):
        c = random_cell(rng, variant, low)  # type: ignore[arg-type]
        assert cells_equal(c, stabilize_to(c, low + 2))
        assert stabilize_to(c, low + 1).dimension == c.dimension
    with pytest.raises(ValueError):
        stabilize_to(base_point("bar"), -1)
    with pytest.raises(ValueError):
        cells_equal(base_point("bar"), base_point("tilde"))


def test_deep_stabilization() -> None:
    tilde = stabilize_to(base_point("tilde"), 6)
    assert tilde.cell.perm == identity(64)  # type: ignore[union-attr]
    assert len(tilde.cell.collection) == 62, "Every non-root vertex of the complete tree"  # type: ignore[union-attr]
    bar = stabilize_to(base_point("bar"), 4)
    assert len(bar.cell.splits) == 45  # type: ignore[union-attr]
    assert in_k_infinity(bar)


def test_action_of_a_sixteen_leaf_element(rng: random.Random) -> None:
    tree = BinaryTree.complete(4)
    g = TreePairSymbol(tree, tree, random_permutation(16, rng))
    c = random_cell(rng, "tilde", 2)
    moved = act(g, c)
    assert moved.level == 4
    assert cells_equal(act(inverse_n(to_spheromorphism(g)), moved), c)


def test_cell_json_round_trip(rng: random.Random) -> None:
    for variant, level in (("tilde", 2), ("bar", 1)):
        c = random_cell(rng, variant, level)  # type: ignore[arg-type]
        assert TowerCell.from_json(c.to_json()) == c


def test_identity_acts_trivially(rng: random.Random) -> None:
    c = random_cell(rng, "tilde", 2)
    assert cells_equal(act(identity_n(), c), c)
    d = random_cell(rng, "bar", 1)
    assert cells_equal(act(identity_n(CyclicTree), d), d)


@pytest.mark.parametrize("variant", ["tilde", "bar"])
def test_action_law(rng: random.Random, variant: str) -> None:
    low = 1 if variant == "tilde" else 0
    for _ in range(25):
        c = random_cell(rng, variant, rng.randint(low, low + 1))  # type: ignore[arg-type]
        g = random_element(rng, variant)  # type: ignore[arg-type]
        h = random_element(rng, variant)  # type: ignore[arg-type]
        gh = compose_n(to_spheromorphism(g), to_spheromorphism(h))
        assert cells_equal(act(gh, c), act(g, act(h, c))), f"Action law fails on {c.to_json()}"
        back = act(inverse_n(to_spheromorphism(g)), act(g, c))
        assert cells_equal(back, c)


@pytest.mark.parametrize("variant", ["tilde", "bar"])
def test_representative_independence(rng: random.Random, variant: str) -> None:
    low = 1 if variant == "tilde" else 0
    for _ in range(25):
        c = random_cell(rng, variant, low + 1)  # type: ignore[arg-type]
        g = random_element(rng, variant)  # type: ignore[arg-type]
        splits, labels = other_representative(rng, c)
        moved = act_on_representative(g, c.level, c.variant, splits, labels)
        assert cells_equal(moved, act(g, c))


def test_elements_act_on_their_own_tower(rng: random.Random) -> None:
    with pytest.raises(ValueError):
        act(random_tree_pair(rng, 3), base_point("bar"))
    with pytest.raises(ValueError):
        act(rotation(0, 1), base_point("tilde"))


def test_k_infinity_membership(kinf_level_one: list[TowerCell]) -> None:
    assert len(k_infinity_cells(0)) == 1
    assert all(in_k_infinity(c) for c in kinf_level_one)
    with pytest.raises(ValueError):
        in_k_infinity(base_point("tilde"))


def test_rotations_and_inversion_keep_k_infinity(kinf_level_one: list[TowerCell]) -> None:
    for k, r in ((0, 1), (1, 1), (1, 4), (2, 5)):
        assert check_t_stabilizes(rotation(k, r), kinf_level_one), f"rotation({k}, {r})"
    assert check_inv(kinf_level_one)


def test_a_transposition_leaves_k_infinity() -> None:
    top = make_bar_cell(1, UnrootedLabeledTree(5, NestedCollection(5), tuple(range(6))))
    swap = transposition_symbol(CyclicTree.complete(1), 1, 2)
    assert not check_t_stabilizes(swap, [top])


def test_grafted_elements_act_on_the_cyclic_tower() -> None:
    g = to_cyclic(transposition_symbol(BinaryTree.complete(1), 1, 2))
    image = act(g, base_point("bar"))
    assert image.variant == "bar"
    assert cells_equal(act(g, image), base_point("bar"))


def test_samples_must_lie_in_k_infinity() -> None:
    outside = make_bar_cell(1, UnrootedLabeledTree(5, NestedCollection(5), (0, 2, 1, 3, 4, 5)))
    assert not in_k_infinity(outside)
    with pytest.raises(ValueError):
        check_t_stabilizes(rotation(0, 1), [outside])
