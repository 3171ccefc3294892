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

from app.euler.cocycle import (
    CommutatorData,
    cocycle_identity_holds,
    commutator_data,
    euler_cocycle,
    p_check,
    pair_with_cycle,
    relation_holds,
    resolve_offset,
)
from app.euler.lifts import (
    LiftedNSymbol,
    LiftedVSymbol,
    lift,
    lifted_compose,
    lifted_expand,
    lifted_identity,
    lifted_inverse,
    pure_lift,
    random_lift,
    stable_length_at,
    stable_length_seq,
)
from app.euler.rclass import RClassBit, j, one, swap_parity_sequence, transfer_matrix, zero
from app.groups.automaton import flip_all, root_swap, spine_swap
from app.groups.prefix import BinaryTree
from app.groups.symbols import (
    SpheromorphismSymbol,
    TreePairSymbol,
    identity_n,
    random_spheromorphism,
    transposition_symbol,
)
from app.quasibraid.certificates import p_word
from app.quasibraid.words import QBWord


@pytest.fixture
def rng() -> random.Random:
    """Seeded generator for random elements and lifts."""
    return random.Random(5)


@pytest.fixture(scope="module")
def data() -> CommutatorData:
    """The lifted elements of the commutator relation [τ₁, σ][α, δ] = 1."""
    return commutator_data()


def test_rclass_normal_form() -> None:
    bit = RClassBit((0, 1, 1), (1,))
    assert bit.preperiod == (0,) and bit.period == (1,)
    assert RClassBit((0,), (1, 0)) == RClassBit((), (0, 1))
    assert RClassBit((), (0, 1)) != RClassBit((), (1, 0)), "Phase of the tail matters"
    assert RClassBit((1, 0), (1,)) == one(), "Finite prefixes are ignored"
    with pytest.raises(ValueError):
        RClassBit((), ())


def test_rclass_arithmetic() -> None:
    assert one() + one() == zero()
    assert j(1) == one() and j(0) == zero()
    assert RClassBit((), (0, 1)) + one() == RClassBit((), (1, 0))
    assert one().constant() == 1
    assert RClassBit((), (0, 1)).constant() is None
    assert one().cumulative() == RClassBit((), (0, 1))
    assert one().shift(2).head(4) == [0, 0, 1, 1]
    assert RClassBit.from_json(one().to_json()) == one()


def test_swap_parity_sequences() -> None:
    spine = swap_parity_sequence(spine_swap(2))
    assert spine.head(5) == [0, 0, 1, 1, 1]
    assert spine.cumulative().head(6) == [0, 0, 0, 1, 0, 1]
    assert swap_parity_sequence(root_swap()).head(3) == [1, 0, 0]
    assert swap_parity_sequence(flip_all()) == zero(), "2^k swaps is even from depth 1"
    assert transfer_matrix(spine_swap(2)).shape == (4, 4)


def test_lift_checks_the_word() -> None:
    tree = BinaryTree.from_json([[1, 2], 3])
    base = TreePairSymbol(tree, tree, (2, 1, 3))
    assert lift(base).word == QBWord.of(3, [(1, 2)])
    with pytest.raises(ValueError):
        lift(base, QBWord(3))


def test_lifted_v_symbols_read_the_leaf_map_off_the_word(data: CommutatorData) -> None:
    tree = BinaryTree.from_json([[1, 2], 3])
    v = LiftedVSymbol(tree, tree, QBWord.of(3, [(1, 3)]))
    assert v.perm == (3, 2, 1)
    assert lift(v) == lift(TreePairSymbol(tree, tree, (3, 2, 1)), QBWord.of(3, [(1, 3)]))
    assert data.tau1.word == QBWord.of(5, [(1, 3)])
    assert data.sigma.base.perm == (2, 1, 4, 3, 5)
    with pytest.raises(ValueError):
        LiftedVSymbol(tree, tree, QBWord(4))


def test_stable_length_matches_expansion(rng: random.Random) -> None:
    for _ in range(30):
        f = random_lift(rng, random_spheromorphism(rng, rng.randint(1, 4), 3))
        seq = stable_length_seq(f)
        for k in range(f.source.depth, f.source.depth + 4):
            assert seq[k] == stable_length_at(f, k), f"Level {k} of {f.to_json()}"


def test_expansion_keeps_the_stable_length(rng: random.Random) -> None:
    for _ in range(20):
        f = random_lift(rng, random_spheromorphism(rng, rng.randint(1, 4), 3))
        grown = lifted_expand(f, rng.randint(1, f.n))
        assert stable_length_seq(grown) == stable_length_seq(f)


def test_p_has_stable_length_one() -> None:
    assert stable_length_seq(pure_lift(p_word())) == one()
    report = p_check()
    assert report["pure"] and report["length"] == 1
    assert report["certificate"] and report["stable_length_is_one"]


def test_lifted_inverse(rng: random.Random) -> None:
    f = random_lift(rng, random_spheromorphism(rng, 3, 3))
    assert stable_length_seq(lifted_compose(f, lifted_inverse(f))) == zero()
    assert stable_length_seq(lifted_identity()) == zero()


def test_random_lift_of_a_one_leaf_element(rng: random.Random) -> None:
    tree = BinaryTree.trivial()
    alpha = SpheromorphismSymbol(tree, tree, (1,), (spine_swap(2),))
    f = random_lift(rng, alpha)
    assert f.word == QBWord(1), "A single leaf has only the empty word"
    assert stable_length_seq(f) == stable_length_seq(lift(alpha))


def test_cocycle_with_identity_vanishes(rng: random.Random) -> None:
    for _ in range(10):
        f = random_spheromorphism(rng, rng.randint(1, 3), 3)
        assert euler_cocycle(identity_n(), f) == zero()
        assert euler_cocycle(f, identity_n()) == zero()


def test_cocycle_identity(rng: random.Random) -> None:
    for _ in range(30):
        f, g, h = (random_spheromorphism(rng, rng.randint(1, 3), 3) for _ in range(3))
        assert cocycle_identity_holds(f, g, h)


def test_cocycle_does_not_depend_on_lifts(rng: random.Random) -> None:
    for _ in range(10):
        f, g = (random_spheromorphism(rng, rng.randint(1, 3), 3) for _ in range(2))
        fixed = euler_cocycle(f, g)
        assert euler_cocycle(random_lift(rng, f), random_lift(rng, g)) == fixed
        assert euler_cocycle(f, g, "reversal") == fixed


def test_offset_resolves_to_two() -> None:
    assert resolve_offset() == 2
    with pytest.raises(RuntimeError):
        resolve_offset([1])


def test_pairing_with_the_commutator_relation(data: CommutatorData, rng: random.Random) -> None:
    relation = data.relation()
    assert relation_holds(relation)
    assert pair_with_cycle(relation) == 1
    fresh = [(random_lift(rng, f.base), random_lift(rng, g.base)) for f, g in relation]
    assert pair_with_cycle(fresh) == 1, "The pairing must not depend on the lifts"
    assert len(data.to_json()["pairs"]) == 2


def test_trivial_relation_pairs_to_zero(rng: random.Random) -> None:
    f = random_spheromorphism(rng, 3, 3)
    assert pair_with_cycle([(f, f)]) == 0


def test_pairing_rejects_false_relations() -> None:
    tree = BinaryTree.complete(2)
    a = transposition_symbol(tree, 1, 2)
    b = transposition_symbol(tree, 2, 3)
    assert not relation_holds([(a, b)])
    with pytest.raises(ValueError):
        pair_with_cycle([(a, b)])


def test_lifted_json_round_trip() -> None:
    tree = BinaryTree.trivial()
    f = LiftedNSymbol(SpheromorphismSymbol(tree, tree, (1,), (spine_swap(2),)), QBWord(1))
    assert LiftedNSymbol.from_json(f.to_json()) == f
    with pytest.raises(ValueError):
        LiftedNSymbol(f.base, QBWord(2))
