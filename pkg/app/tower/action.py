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
"""The action of V and N on the towers.

A cell at level K labels the leaves of the complete tree of depth K. The
group element is expanded until its source tree is that complete tree, the
labels are pushed through its leaf map, and the target tree is then grown to
a complete tree one leaf at a time, splitting the matching label of the cell.
When the automaton sitting on a grown leaf swaps, the two new labels come out
crossed; the caret vertex just added makes both orders equivalent.
"""

import logging
from collections.abc import Iterable

from app.core.interval import NestedCollection, insert_caret
from app.core.permutation import Permutation, inverse
from app.core.trees import simple_expand_perm
from app.core.unrooted import UnrootedLabeledTree, expand_position
from app.groups.automaton import AutomorphismAutomaton, automaton_child
from app.groups.cyclic import inversion
from app.groups.prefix import BinaryTree, CyclicTree, PrefixTree
from app.groups.symbols import (
    GroupElement,
    SpheromorphismSymbol,
    expand_spheromorphism,
    to_spheromorphism,
)
from app.strata.stratum import StratumClass
from app.tower.cells import (
    TowerCell,
    TowerVariant,
    in_k_infinity,
    make_bar_cell,
    make_tilde_cell,
    stabilize_to,
)


def _check_variant(g: SpheromorphismSymbol, variant: TowerVariant) -> None:
    if variant == "tilde" and not isinstance(g.source, BinaryTree):
        raise ValueError("Rooted elements act on the tilde tower only")
    if variant == "bar" and not isinstance(g.source, CyclicTree):
        raise ValueError("Cyclic elements act on the bar tower only")


def _expand_source_to(g: SpheromorphismSymbol, depth: int) -> SpheromorphismSymbol:
    target = type(g.source).complete(depth)
    while g.source != target:
        i = next(k for k in range(1, g.n + 1) if g.source.leaf_depth(k) < depth)
        g = expand_spheromorphism(g, i)
    return g


def _split_label(
    automata: dict[int, AutomorphismAutomaton], label: int
) -> tuple[dict[int, AutomorphismAutomaton], int]:
    """Shift labels above ``label`` and attach the child automata to the two
    new labels; returns the root swap bit of the split automaton."""
    q = automata[label]
    s = q.swap
    grown = {(v + 1 if v > label else v): a for v, a in automata.items() if v != label}
    grown[label + s] = automaton_child(q, 0)
    grown[label + 1 - s] = automaton_child(q, 1)
    return grown, s


def _shallow_leaf(target: PrefixTree) -> int | None:
    depth = target.depth
    return next((j for j in range(1, target.n + 1) if target.leaf_depth(j) < depth), None)


def _act_tilde(
    h: SpheromorphismSymbol, collection: NestedCollection, sigma: Permutation
) -> TowerCell:
    pi = tuple(h.perm[v - 1] for v in sigma)
    automata = {h.perm[v - 1]: h.automata[v - 1] for v in sigma}
    target = h.target
    while (j := _shallow_leaf(target)) is not None:
        i = inverse(pi)[j - 1]
        automata, s = _split_label(automata, j)
        collection = insert_caret(collection, i)
        expanded = list(simple_expand_perm(pi, i))
        if s:
            expanded[i - 1], expanded[i] = expanded[i], expanded[i - 1]
        pi = tuple(expanded)
        target = target.expand(j)
    logging.debug(f"Tilde action landed at level {target.depth}")
    return make_tilde_cell(target.depth, collection, pi)


def _act_bar(h: SpheromorphismSymbol, ut: UnrootedLabeledTree) -> TowerCell:
    # label l sits on source leaf l + 1
    automata = {h.perm[v] - 1: h.automata[v] for v in ut.labels}
    current = UnrootedLabeledTree(ut.n, ut.splits, tuple(h.perm[v] - 1 for v in ut.labels))
    target = h.target
    while (j := _shallow_leaf(target)) is not None:
        automata, s = _split_label(automata, j - 1)
        current = expand_position(current, current.labels.index(j - 1), bool(s))
        target = target.expand(j)
    logging.debug(f"Bar action landed at level {target.depth}")
    return make_bar_cell(target.depth, current)


def act_on_representative(
    g: GroupElement,
    level: int,
    variant: TowerVariant,
    collection: NestedCollection,
    labels: Permutation,
) -> TowerCell:
    """Act on one representative of a cell and canonicalize the result.

    For ``tilde`` cells ``labels`` is the permutation σ; for ``bar`` cells
    ``collection`` holds the splits and ``labels`` the cyclic labels 0..n.
    The representative is used as given unless the element needs a deeper
    source tree, in which case the stabilized canonical form is used.
    """
    h = to_spheromorphism(g)
    _check_variant(h, variant)
    depth = max(level, h.source.depth)
    h = _expand_source_to(h, depth)
    if variant == "tilde":
        if depth == level:
            return _act_tilde(h, collection, tuple(labels))
        deeper = stabilize_to(make_tilde_cell(level, collection, tuple(labels)), depth)
        return _act_tilde(h, deeper.cell.collection, deeper.cell.perm)  # type: ignore[union-attr]
    ut = UnrootedLabeledTree(collection.n, collection, tuple(labels))
    if depth == level:
        return _act_bar(h, ut)
    return _act_bar(h, stabilize_to(make_bar_cell(level, ut), depth).cell)  # type: ignore[arg-type]


def act(g: GroupElement, c: TowerCell) -> TowerCell:
    cell = c.cell
    if isinstance(cell, StratumClass):
        return act_on_representative(g, c.level, "tilde", cell.collection, cell.perm)
    return act_on_representative(g, c.level, "bar", cell.splits, cell.labels)


def check_t_stabilizes(g: GroupElement, cells: Iterable[TowerCell]) -> bool:
    """Every sampled cell of the distinguished associahedron stays inside it."""
    for c in cells:
        if not in_k_infinity(c):
            raise ValueError("Sample cells must lie in the distinguished associahedron")
        if not in_k_infinity(act(g, c)):
            logging.info(f"Cell {c.to_json()} leaves the distinguished associahedron")
            return False
    return True


def check_inv(cells: Iterable[TowerCell]) -> bool:
    """The order-reversing involution maps each sampled cell of the
    distinguished associahedron back into it."""
    return check_t_stabilizes(inversion(), cells)
