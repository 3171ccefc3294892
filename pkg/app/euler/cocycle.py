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
"""The Euler cocycle of N and its pairing with explicit commutator relations."""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

from app.core.permutation import is_identity
from app.euler.lifts import (
    LiftedVSymbol,
    LiftedNSymbol,
    lift,
    lifted_commutator,
    lifted_compose,
    lifted_identity,
    pure_lift,
    stable_length_seq,
)
from app.euler.rclass import RClassBit, one
from app.groups.automaton import identity as identity_automaton
from app.groups.automaton import spine_swap
from app.groups.prefix import BinaryTree
from app.groups.symbols import (
    GroupElement,
    SpheromorphismSymbol,
    TreePairSymbol,
    as_spheromorphism,
    commutator_n,
    compose_n,
    equal_n,
    identity_n,
    is_identity_n,
    to_spheromorphism,
)
from app.quasibraid.certificates import commutator_chain, p_word
from app.quasibraid.words import QBWord, SectionMethod, length, phi

Liftable = GroupElement | LiftedNSymbol

OFFSET_CANDIDATES = (1, 2)


def _lifted(f: Liftable, method: SectionMethod) -> LiftedNSymbol:
    return f if isinstance(f, LiftedNSymbol) else lift(f, method=method)


def _base(f: Liftable) -> SpheromorphismSymbol:
    if isinstance(f, LiftedNSymbol):
        return f.base
    return to_spheromorphism(f)


def euler_cocycle(f: Liftable, g: Liftable, method: SectionMethod = "bubble") -> RClassBit:
    """c(f, g) = ℓ̃(f̄ḡ) + ℓ̃(f̄) + ℓ̃(ḡ) in R.

    Group elements are lifted along the section word; lifted symbols are used
    as given.
    """
    lf, lg = _lifted(f, method), _lifted(g, method)
    return (
        stable_length_seq(lifted_compose(lf, lg))
        + stable_length_seq(lf)
        + stable_length_seq(lg)
    )


def cocycle_identity_holds(
    f: GroupElement, g: GroupElement, h: GroupElement, method: SectionMethod = "bubble"
) -> bool:
    """c(f, g) + c(fg, h) = c(f, gh) + c(g, h)."""
    fg = compose_n(_base(f), _base(g))
    gh = compose_n(_base(g), _base(h))
    lhs = euler_cocycle(f, g, method) + euler_cocycle(fg, h, method)
    rhs = euler_cocycle(f, gh, method) + euler_cocycle(g, h, method)
    return lhs == rhs


def relation_holds(relation: Iterable[tuple[Liftable, Liftable]]) -> bool:
    """Π [f_i, g_i] is the identity of N."""
    product = identity_n()
    for f, g in relation:
        product = compose_n(product, commutator_n(_base(f), _base(g)))
    return is_identity_n(product)


def pair_with_cycle(
    relation: Sequence[tuple[Liftable, Liftable]], method: SectionMethod = "bubble"
) -> int:
    """Value of the Euler class on the 2-cycle of a commutator relation.

    The lifted product of commutators lies over the identity, so its stable
    length is a constant class j(b); b is returned.
    """
    if not relation_holds(relation):
        raise ValueError("The product of commutators is not the identity of N")
    total = lifted_identity()
    for f, g in relation:
        total = lifted_compose(total, lifted_commutator(_lifted(f, method), _lifted(g, method)))
    value = stable_length_seq(total).constant()
    if value is None:
        raise RuntimeError("Lifted relation has a non-constant stable length")
    logging.info(f"Relation of {len(relation)} commutators pairs to {value}")
    return value


# Elements for the pairing with [τ₁, σ][α, δ]

_CARET_LEFT = BinaryTree(("00", "01", "1"))
_CARET_RIGHT = BinaryTree(("0", "10", "11"))
_FIVE = BinaryTree(("000", "001", "010", "011", "1"))


def tau_element() -> TreePairSymbol:
    """Exchange the two quarters 00 and 01."""
    return TreePairSymbol(_CARET_LEFT, _CARET_LEFT, (2, 1, 3))


def delta_element() -> SpheromorphismSymbol:
    """Translation down the left spine: 00 -> 0, 01 -> 10, 1 -> 11."""
    automata = (identity_automaton(),) * 3
    return SpheromorphismSymbol(_CARET_RIGHT, _CARET_LEFT, (1, 2, 3), automata)


def alpha_element(offset: int) -> SpheromorphismSymbol:
    tree = BinaryTree.trivial()
    return SpheromorphismSymbol(tree, tree, (1,), (spine_swap(offset),))


def resolve_offset(candidates: Iterable[int] = OFFSET_CANDIDATES) -> int:
    """The start depth of the spine swap for which [δ, α] equals τ."""
    tau = as_spheromorphism(tau_element())
    for d in candidates:
        if equal_n(commutator_n(delta_element(), alpha_element(d)), tau):
            logging.info(f"Spine swap offset resolved to {d}")
            return d
        logging.debug(f"Offset {d} does not give [δ, α] = τ")
    raise RuntimeError("No spine swap offset satisfies [δ, α] = τ")


@dataclass(frozen=True)
class CommutatorData:
    offset: int
    tau: LiftedNSymbol
    tau1: LiftedNSymbol
    sigma: LiftedNSymbol
    alpha: LiftedNSymbol
    delta: LiftedNSymbol

    def relation(self) -> list[tuple[LiftedNSymbol, LiftedNSymbol]]:
        """[τ₁, σ][α, δ] = 1."""
        return [(self.tau1, self.sigma), (self.alpha, self.delta)]

    def to_json(self) -> dict[str, Any]:
        return {
            "offset": self.offset,
            "pairs": [{"f": f.to_json(), "g": g.to_json()} for f, g in self.relation()],
        }


def commutator_data() -> CommutatorData:
    offset = resolve_offset()
    # the V-elements carry their quasi-braid words; leaf maps are read off them
    tau = LiftedVSymbol(_CARET_LEFT, _CARET_LEFT, QBWord.of(3, [(1, 2)]))
    tau1 = LiftedVSymbol(_FIVE, _FIVE, QBWord.of(5, [(1, 3)]))
    sigma = LiftedVSymbol(_FIVE, _FIVE, QBWord.of(5, [(1, 2), (3, 4)]))
    if tau.to_symbol() != tau_element():
        raise RuntimeError(f"{tau.word} no longer lifts τ")
    commutator = commutator_n(tau1.to_lifted_n().base, sigma.to_lifted_n().base)
    if not equal_n(commutator, as_spheromorphism(tau.to_symbol())):
        raise RuntimeError("[τ₁, σ] no longer equals τ")
    return CommutatorData(
        offset=offset,
        tau=lift(tau),
        tau1=lift(tau1),
        sigma=lift(sigma),
        alpha=lift(alpha_element(offset), QBWord(1)),
        delta=lift(delta_element(), QBWord(3)),
    )


def p_check() -> dict[str, Any]:
    """Properties of the pure quasi-braid p used for the nontriviality of ℓ̃."""
    p = p_word()
    return {
        "word": str(p),
        "pure": is_identity(phi(p)),
        "length": length(p),
        "certificate": commutator_chain().check(),
        "stable_length_is_one": stable_length_seq(pure_lift(p)) == one(),
    }
