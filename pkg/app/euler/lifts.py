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
"""Lifted symbols for the extensions of V and N by the pure quasi-braids.

A lifted symbol is an ordinary symbol whose leaf map is replaced by a
quasi-braid word over it. Expanding a leaf expands the word at that label;
when the automaton on the leaf swaps its two halves the word picks up the
transposition of the two new labels.
"""

import logging
import random
from dataclasses import dataclass
from typing import Any

from app.core.interval import Interval
from app.core.permutation import Permutation, compose
from app.euler.rclass import RClassBit, j, swap_parity_sequence
from app.groups.automaton import (
    AutomorphismAutomaton,
    automaton_compose,
    is_identity_automaton,
)
from app.groups.prefix import BinaryTree, PrefixTree
from app.groups.symbols import (
    GroupElement,
    SpheromorphismSymbol,
    TreePairSymbol,
    as_spheromorphism,
    expand_spheromorphism,
    identity_n,
    inverse_n,
    refine,
    symbol_from_json,
    to_spheromorphism,
)
from app.quasibraid.expansion import simple_expand_word
from app.quasibraid.words import (
    QBWord,
    SectionMethod,
    free_reduce,
    inverse_word,
    is_pure,
    length,
    phi,
    random_section_word,
    section_word,
)


@dataclass(frozen=True)
class LiftedVSymbol:
    """A tree pair whose permutation is given by a quasi-braid word."""

    target: BinaryTree
    source: BinaryTree
    word: QBWord

    def __post_init__(self) -> None:
        if not isinstance(self.target, BinaryTree) or not isinstance(self.source, BinaryTree):
            raise ValueError("Lifted V-symbols live on rooted binary trees")
        if not self.target.n == self.source.n == self.word.n:
            raise ValueError(
                f"Leaf counts differ: target {self.target.n}, source {self.source.n}, "
                f"word ambient {self.word.n}"
            )

    @property
    def perm(self) -> Permutation:
        return phi(self.word)

    def to_symbol(self) -> TreePairSymbol:
        return TreePairSymbol(self.target, self.source, self.perm)

    def to_lifted_n(self) -> "LiftedNSymbol":
        return LiftedNSymbol(as_spheromorphism(self.to_symbol()), self.word)


@dataclass(frozen=True)
class LiftedNSymbol:
    base: SpheromorphismSymbol
    word: QBWord

    def __post_init__(self) -> None:
        if self.base.cyclic:
            raise ValueError("Lifts are defined for rooted symbols only")
        if self.word.n != self.base.n:
            raise ValueError(f"Word ambient {self.word.n} differs from {self.base.n} leaves")
        if phi(self.word) != self.base.perm:
            raise ValueError(
                f"Word {self.word} induces {phi(self.word)}, not the leaf map {self.base.perm}"
            )

    @property
    def target(self) -> PrefixTree:
        return self.base.target

    @property
    def source(self) -> PrefixTree:
        return self.base.source

    @property
    def perm(self) -> Permutation:
        return self.base.perm

    @property
    def automata(self) -> tuple[AutomorphismAutomaton, ...]:
        return self.base.automata

    @property
    def n(self) -> int:
        return self.base.n

    def to_json(self) -> dict[str, Any]:
        return {"base": self.base.to_json(), "word": self.word.to_json()}

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "LiftedNSymbol":
        base = symbol_from_json(obj["base"])
        if isinstance(base, TreePairSymbol):
            base = as_spheromorphism(base)
        return cls(base, QBWord.from_json(obj["word"]))


def lift(
    f: GroupElement | LiftedVSymbol,
    word: QBWord | None = None,
    method: SectionMethod = "bubble",
) -> LiftedNSymbol:
    """Lift a group element, by default along the fixed section word."""
    if isinstance(f, LiftedVSymbol):
        return f.to_lifted_n()
    base = to_spheromorphism(f)
    return LiftedNSymbol(base, word if word is not None else section_word(base.perm, method))


def random_lift(rng: random.Random, f: GroupElement, size: int = 4) -> LiftedNSymbol:
    base = to_spheromorphism(f)
    return LiftedNSymbol(base, random_section_word(rng, base.perm, size))


def lifted_identity() -> LiftedNSymbol:
    return LiftedNSymbol(identity_n(), QBWord(1))


def _comb(n: int) -> BinaryTree:
    tree = BinaryTree.trivial()
    while tree.n < n:
        tree = tree.expand(tree.n)
    return tree


def pure_lift(p: QBWord, tree: BinaryTree | None = None) -> LiftedNSymbol:
    """A pure word as an element over the identity of a tree with p.n leaves."""
    if not is_pure(p):
        raise ValueError(f"{p} is not a pure quasi-braid")
    tree = tree or _comb(p.n)
    return LiftedNSymbol(as_spheromorphism(TreePairSymbol(tree, tree, phi(p))), p)


def lifted_expand(f: LiftedNSymbol, i: int) -> LiftedNSymbol:
    word = simple_expand_word(f.word, i)
    if f.automata[i - 1].swap:
        word = word * QBWord(word.n, (Interval(i, i + 1),))
    return LiftedNSymbol(expand_spheromorphism(f.base, i), word)


def lifted_compose(f: LiftedNSymbol, g: LiftedNSymbol) -> LiftedNSymbol:
    """f·g with g acting first. The result is left unreduced: contracting a
    caret would have to contract the word too."""
    f, g = refine(f, g, lifted_expand)
    automata = tuple(
        automaton_compose(f.automata[g.perm[i] - 1], g.automata[i]) for i in range(g.n)
    )
    base = SpheromorphismSymbol(f.target, g.source, compose(f.perm, g.perm), automata)
    return LiftedNSymbol(base, free_reduce(f.word * g.word))


def lifted_inverse(f: LiftedNSymbol) -> LiftedNSymbol:
    return LiftedNSymbol(inverse_n(f.base), inverse_word(f.word))


def lifted_commutator(f: LiftedNSymbol, g: LiftedNSymbol) -> LiftedNSymbol:
    """[f, g] = f g f⁻¹ g⁻¹."""
    return lifted_compose(
        lifted_compose(f, g), lifted_compose(lifted_inverse(f), lifted_inverse(g))
    )


def expand_to_level(f: LiftedNSymbol, k: int) -> LiftedNSymbol:
    """Expand until the source is the complete tree of depth ``k``."""
    if k < f.source.depth:
        raise ValueError(f"Source has depth {f.source.depth}, deeper than level {k}")
    while True:
        shallow = [i for i in range(1, f.n + 1) if f.source.leaf_depth(i) < k]
        if not shallow:
            return f
        f = lifted_expand(f, shallow[0])


def stable_length_at(f: LiftedNSymbol, k: int) -> int:
    """ℓ(σ_k), by expanding the word all the way to level ``k``."""
    return length(expand_to_level(f, k).word)


def stable_length_seq(f: LiftedNSymbol) -> RClassBit:
    """ℓ̃(f) as an element of R.

    Expanding a label never changes the length of the word; only the twist
    added at a swapping vertex does. Level k therefore adds, for each source
    leaf a, the cumulative swap parity of its automaton up to depth k - d_a.
    The returned sequence agrees with ``stable_length_at`` from the source
    depth on.
    """
    total = j(length(f.word))
    for i, q in enumerate(f.automata, start=1):
        if is_identity_automaton(q):
            continue
        total = total + swap_parity_sequence(q).cumulative().shift(f.source.leaf_depth(i))
    logging.debug(f"Stable length of a {f.n}-leaf lift: {total}")
    return total
