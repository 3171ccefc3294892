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
"""Elements acting on the cyclic (unrooted) tower."""

from app.groups.automaton import flip_all
from app.groups.automaton import identity as identity_automaton
from app.groups.prefix import BinaryTree, CyclicTree
from app.groups.symbols import SpheromorphismSymbol, TreePairSymbol


def _graft(tree: BinaryTree) -> CyclicTree:
    return CyclicTree(tuple("a" + leaf for leaf in tree.leaves) + ("b", "c"))


def to_cyclic(
    s: TreePairSymbol | SpheromorphismSymbol,
) -> TreePairSymbol | SpheromorphismSymbol:
    """Graft a rooted symbol into branch ``a`` of the marked vertex; ``b`` and
    ``c`` stay fixed."""
    if s.cyclic:
        raise ValueError("Symbol is already cyclic")
    if not isinstance(s.source, BinaryTree) or not isinstance(s.target, BinaryTree):
        raise ValueError("Only rooted binary symbols can be grafted")
    perm = (*s.perm, s.n + 1, s.n + 2)
    target, source = _graft(s.target), _graft(s.source)
    if isinstance(s, SpheromorphismSymbol):
        automata = (*s.automata, identity_automaton(), identity_automaton())
        return SpheromorphismSymbol(target, source, perm, automata)
    return TreePairSymbol(target, source, perm)


def rotation(k: int, r: int) -> TreePairSymbol:
    """Turn the complete cyclic tree of depth ``k`` by ``r`` leaves."""
    tree = CyclicTree.complete(k)
    m = tree.n
    return TreePairSymbol(tree, tree, tuple((i - 1 + r) % m + 1 for i in range(1, m + 1)))


def inversion() -> SpheromorphismSymbol:
    """Reverse the cyclic order: branches a and c trade places, every subtree
    is reflected."""
    tree = CyclicTree.trivial()
    return SpheromorphismSymbol(tree, tree, (3, 2, 1), (flip_all(),) * 3)
