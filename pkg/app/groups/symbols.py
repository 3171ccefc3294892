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
"""Symbols (α₁, α₀, σ) for Thompson's group V and (α₁, α₀, q_σ) for Neretin's
group N.

Source leaf ``i`` is sent to target leaf ``perm[i - 1]``; for N the automaton
attached to source leaf ``i`` describes how the subtree hanging there is
mapped onto the subtree of its target leaf. Products follow function
composition: ``compose_v(a, b)`` applies ``b`` first.
"""

import random
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any, Literal, Protocol, TypeVar

from app.core.permutation import (
    Permutation,
    compose,
    identity,
    inverse,
    is_identity,
    is_rotation,
    random_permutation,
    transposition,
    validate,
)
from app.core.trees import contract_perm, simple_expand_perm
from app.groups.automaton import (
    AutomorphismAutomaton,
    automaton_child,
    automaton_compose,
    automaton_inverse,
    identity as identity_automaton,
    is_finitary,
    is_identity_automaton,
    random_automaton,
)
from app.groups.prefix import BinaryTree, CyclicTree, PrefixTree, random_tree

Membership = Literal["F", "T", "V", "N"]


class Symbol(Protocol):
    """Anything with a source tree, a target tree and a leaf map."""

    @property
    def target(self) -> PrefixTree: ...

    @property
    def source(self) -> PrefixTree: ...

    @property
    def perm(self) -> Permutation: ...


S = TypeVar("S", bound=Symbol)


def _tree_from_json(obj: Any, cyclic: bool) -> PrefixTree:
    return CyclicTree.from_json(obj) if cyclic else BinaryTree.from_json(obj)


@dataclass(frozen=True)
class TreePairSymbol:
    target: PrefixTree
    source: PrefixTree
    perm: Permutation

    def __post_init__(self) -> None:
        object.__setattr__(self, "perm", validate(self.perm))
        if type(self.target) is not type(self.source):
            raise ValueError("Source and target trees must be of the same kind")
        if not (self.target.n == self.source.n == len(self.perm)):
            raise ValueError(
                f"Leaf counts differ: target {self.target.n}, source {self.source.n}, "
                f"perm {len(self.perm)}"
            )

    @property
    def n(self) -> int:
        return len(self.perm)

    @property
    def cyclic(self) -> bool:
        return isinstance(self.source, CyclicTree)

    def to_json(self) -> dict[str, Any]:
        return {
            "target": self.target.to_json(),
            "source": self.source.to_json(),
            "perm": list(self.perm),
        }


@dataclass(frozen=True)
class SpheromorphismSymbol:
    target: PrefixTree
    source: PrefixTree
    perm: Permutation
    automata: tuple[AutomorphismAutomaton, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "perm", validate(self.perm))
        object.__setattr__(self, "automata", tuple(self.automata))
        if type(self.target) is not type(self.source):
            raise ValueError("Source and target trees must be of the same kind")
        if not (self.target.n == self.source.n == len(self.perm) == len(self.automata)):
            raise ValueError(
                f"Sizes differ: target {self.target.n}, source {self.source.n}, "
                f"perm {len(self.perm)}, automata {len(self.automata)}"
            )

    @property
    def n(self) -> int:
        return len(self.perm)

    @property
    def cyclic(self) -> bool:
        return isinstance(self.source, CyclicTree)

    def to_json(self) -> dict[str, Any]:
        return {
            "target": self.target.to_json(),
            "source": self.source.to_json(),
            "perm": list(self.perm),
            "automata": [a.to_json() for a in self.automata],
        }


GroupElement = TreePairSymbol | SpheromorphismSymbol


def symbol_from_json(
    obj: dict[str, Any], cyclic: bool = False
) -> TreePairSymbol | SpheromorphismSymbol:
    target = _tree_from_json(obj["target"], cyclic)
    source = _tree_from_json(obj["source"], cyclic)
    perm = tuple(obj["perm"])
    if obj.get("automata") is None:
        return TreePairSymbol(target, source, perm)
    automata = tuple(AutomorphismAutomaton.from_json(a) for a in obj["automata"])
    return SpheromorphismSymbol(target, source, perm, automata)


# Thompson V


def identity_v(tree_cls: type[PrefixTree] = BinaryTree) -> TreePairSymbol:
    tree = tree_cls.trivial()
    return TreePairSymbol(tree, tree, identity(tree.n))


def expand_symbol(s: TreePairSymbol, i: int) -> TreePairSymbol:
    """Add carets below source leaf ``i`` and its target leaf, left to left."""
    return TreePairSymbol(
        s.target.expand(s.perm[i - 1]),
        s.source.expand(i),
        simple_expand_perm(s.perm, i),
    )


def _reducible_v(s: TreePairSymbol) -> int | None:
    for i in range(1, s.n):
        if (
            s.source.is_caret(i)
            and s.perm[i] == s.perm[i - 1] + 1
            and s.target.is_caret(s.perm[i - 1])
        ):
            return i
    return None


def reduce_symbol(s: TreePairSymbol) -> TreePairSymbol:
    """Cancel caret pairs until none is left; the result is the normal form."""
    while (i := _reducible_v(s)) is not None:
        s = TreePairSymbol(
            s.target.collapse(s.perm[i - 1]),
            s.source.collapse(i),
            contract_perm(s.perm, i),
        )
    return s


def refine(
    a: S,
    b: S,
    expand: Callable[[S, int], S],
) -> tuple[S, S]:
    """Expand until ``b.target == a.source``."""
    while b.target != a.source:
        for k, (x, y) in enumerate(zip(b.target.leaves, a.source.leaves, strict=False)):
            if x == y:
                continue
            if y.startswith(x):
                b = expand(b, inverse(b.perm)[k])
            elif x.startswith(y):
                a = expand(a, k + 1)
            else:
                raise ValueError(f"Trees diverge at leaves {x!r} and {y!r}")
            break
        else:
            raise ValueError("Trees of different kinds cannot be refined")
    return a, b


def compose_v(a: TreePairSymbol, b: TreePairSymbol) -> TreePairSymbol:
    """The product a·b (b acts first), reduced."""
    a, b = refine(a, b, expand_symbol)
    return reduce_symbol(TreePairSymbol(a.target, b.source, compose(a.perm, b.perm)))


def inverse_v(s: TreePairSymbol) -> TreePairSymbol:
    return TreePairSymbol(s.source, s.target, inverse(s.perm))


def symbols_equal_v(a: TreePairSymbol, b: TreePairSymbol) -> bool:
    return reduce_symbol(a) == reduce_symbol(b)


def transposition_symbol(tree: PrefixTree, i: int, j: int) -> TreePairSymbol:
    """Exchange leaves ``i`` and ``j`` of ``tree``."""
    return TreePairSymbol(tree, tree, transposition(i, j, tree.n))


def random_tree_pair(
    rng: random.Random, leaves: int, tree_cls: type[PrefixTree] = BinaryTree
) -> TreePairSymbol:
    return TreePairSymbol(
        random_tree(tree_cls, leaves, rng),
        random_tree(tree_cls, leaves, rng),
        random_permutation(leaves, rng),
    )


# Neretin N


def as_spheromorphism(s: TreePairSymbol) -> SpheromorphismSymbol:
    return SpheromorphismSymbol(
        s.target, s.source, s.perm, tuple(identity_automaton() for _ in range(s.n))
    )


def to_spheromorphism(s: TreePairSymbol | SpheromorphismSymbol) -> SpheromorphismSymbol:
    return s if isinstance(s, SpheromorphismSymbol) else as_spheromorphism(s)


def identity_n(tree_cls: type[PrefixTree] = BinaryTree) -> SpheromorphismSymbol:
    return as_spheromorphism(identity_v(tree_cls))


def expand_spheromorphism(s: SpheromorphismSymbol, i: int) -> SpheromorphismSymbol:
    """Split source leaf ``i``; its children follow the root swap of its automaton."""
    q = s.automata[i - 1]
    perm = list(simple_expand_perm(s.perm, i))
    if q.swap:
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    automata = (
        *s.automata[: i - 1],
        automaton_child(q, 0),
        automaton_child(q, 1),
        *s.automata[i:],
    )
    return SpheromorphismSymbol(
        s.target.expand(s.perm[i - 1]), s.source.expand(i), tuple(perm), automata
    )


def compose_n(a: SpheromorphismSymbol, b: SpheromorphismSymbol) -> SpheromorphismSymbol:
    a, b = refine(a, b, expand_spheromorphism)
    automata = tuple(
        automaton_compose(a.automata[b.perm[i] - 1], b.automata[i]) for i in range(b.n)
    )
    return reduce_n(
        SpheromorphismSymbol(a.target, b.source, compose(a.perm, b.perm), automata)
    )


def inverse_n(s: SpheromorphismSymbol) -> SpheromorphismSymbol:
    inv = inverse(s.perm)
    automata = tuple(automaton_inverse(s.automata[inv[j] - 1]) for j in range(s.n))
    return SpheromorphismSymbol(s.source, s.target, inv, automata)


def reduce_n(s: SpheromorphismSymbol) -> SpheromorphismSymbol:
    """Cancel caret pairs whose two automata act trivially."""
    while True:
        for i in range(1, s.n):
            if (
                s.source.is_caret(i)
                and s.perm[i] == s.perm[i - 1] + 1
                and s.target.is_caret(s.perm[i - 1])
                and is_identity_automaton(s.automata[i - 1])
                and is_identity_automaton(s.automata[i])
            ):
                s = SpheromorphismSymbol(
                    s.target.collapse(s.perm[i - 1]),
                    s.source.collapse(i),
                    contract_perm(s.perm, i),
                    (*s.automata[: i - 1], identity_automaton(), *s.automata[i + 1 :]),
                )
                break
        else:
            return s


def is_identity_n(s: SpheromorphismSymbol) -> bool:
    return (
        s.target == s.source
        and is_identity(s.perm)
        and all(is_identity_automaton(q) for q in s.automata)
    )


def equal_n(a: SpheromorphismSymbol, b: SpheromorphismSymbol) -> bool:
    return is_identity_n(compose_n(a, inverse_n(b)))


def commutator_n(a: SpheromorphismSymbol, b: SpheromorphismSymbol) -> SpheromorphismSymbol:
    """[a, b] = a b a⁻¹ b⁻¹."""
    return compose_n(compose_n(a, b), compose_n(inverse_n(a), inverse_n(b)))


def finitize(s: SpheromorphismSymbol) -> SpheromorphismSymbol:
    """Expand until every automaton is the identity; needs finitary automata."""
    if not all(is_finitary(q) for q in s.automata):
        raise ValueError("Symbol carries an automaton that is not finitary")
    i = 1
    while i <= s.n:
        if is_identity_automaton(s.automata[i - 1]):
            i += 1
        else:
            s = expand_spheromorphism(s, i)
    return s


def as_tree_pair(s: SpheromorphismSymbol) -> TreePairSymbol:
    expanded = finitize(s)
    return reduce_symbol(TreePairSymbol(expanded.target, expanded.source, expanded.perm))


def membership(s: TreePairSymbol | SpheromorphismSymbol) -> Membership:
    """Smallest of F ⊂ T ⊂ V ⊂ N containing the element."""
    if isinstance(s, SpheromorphismSymbol):
        if not all(is_finitary(q) for q in s.automata):
            return "N"
        s = as_tree_pair(s)
    reduced = reduce_symbol(s)
    if is_identity(reduced.perm):
        return "F"
    if is_rotation(reduced.perm):
        return "T"
    return "V"


def random_spheromorphism(
    rng: random.Random,
    leaves: int,
    max_states: int = 4,
    tree_cls: type[PrefixTree] = BinaryTree,
) -> SpheromorphismSymbol:
    base = random_tree_pair(rng, leaves, tree_cls)
    automata = tuple(random_automaton(rng, max_states) for _ in range(leaves))
    return SpheromorphismSymbol(base.target, base.source, base.perm, automata)

