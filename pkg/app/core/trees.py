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
"""Planar rooted trees, labeled trees, nabla moves and dyadic expansions."""

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any, Union

from app.core.interval import (
    Interval,
    NestedCollection,
    insert_caret,
    nested_collections,
    omega,
)
from app.core.permutation import Permutation, compose, validate

Shape = Union[int, tuple["Shape", ...]]


def _leaves(shape: Shape) -> list[int]:
    if isinstance(shape, int):
        return [shape]
    out: list[int] = []
    for child in shape:
        out.extend(_leaves(child))
    return out


def _check_arity(shape: Shape) -> None:
    if isinstance(shape, int):
        return
    if len(shape) < 2:
        raise ValueError(f"Internal vertex with fewer than two children: {shape}")
    for child in shape:
        _check_arity(child)


@dataclass(frozen=True)
class PlanarTree:
    """A planar rooted tree; leaves are numbered 1..n from left to right.

    The shape is a nested tuple whose integer entries are the leaves, e.g.
    ``((1, 2), 3)`` is a caret on leaves 1, 2 joined with leaf 3.
    """

    shape: Shape

    def __post_init__(self) -> None:
        _check_arity(self.shape)
        leaves = _leaves(self.shape)
        if leaves != list(range(1, len(leaves) + 1)):
            raise ValueError(f"Leaves must read 1..n left to right, got {leaves}")

    @property
    def leaf_count(self) -> int:
        return len(_leaves(self.shape))

    @classmethod
    def star(cls, n: int) -> "PlanarTree":
        if n < 1:
            raise ValueError(f"A tree needs at least one leaf, got {n}")
        return cls(1 if n == 1 else tuple(range(1, n + 1)))

    @classmethod
    def from_json(cls, obj: Any) -> "PlanarTree":
        def convert(node: Any) -> Shape:
            if isinstance(node, bool):
                raise ValueError("Booleans are not tree nodes")
            if isinstance(node, int):
                return node
            if isinstance(node, list | tuple):
                return tuple(convert(child) for child in node)
            raise ValueError(f"Unexpected tree node {node!r}")

        return cls(convert(obj))

    def to_json(self) -> Any:
        def convert(node: Shape) -> Any:
            if isinstance(node, int):
                return node
            return [convert(child) for child in node]

        return convert(self.shape)


@dataclass(frozen=True)
class LabeledTree:
    """A planar tree together with the permutation labeling its leaves."""

    tree: PlanarTree
    perm: Permutation

    def __post_init__(self) -> None:
        object.__setattr__(self, "perm", validate(self.perm))
        if len(self.perm) != self.tree.leaf_count:
            raise ValueError(
                f"Permutation size {len(self.perm)} differs from leaf count "
                f"{self.tree.leaf_count}"
            )

    @property
    def n(self) -> int:
        return len(self.perm)


def tree_to_nested(t: PlanarTree) -> NestedCollection:
    n = t.leaf_count
    spans: list[Interval] = []

    def walk(node: Shape, is_root: bool) -> tuple[int, int]:
        if isinstance(node, int):
            return node, node
        bounds = [walk(child, False) for child in node]
        lo, hi = bounds[0][0], bounds[-1][1]
        if not is_root:
            spans.append(Interval(lo, hi))
        return lo, hi

    walk(t.shape, True)
    return NestedCollection(n, tuple(spans))


def nested_to_tree(c: NestedCollection) -> PlanarTree:
    if c.n == 1:
        return PlanarTree(1)

    def build(lo: int, hi: int, inner: list[Interval]) -> Shape:
        maximal = [
            t for t in inner if not any(u != t and u.contains(t) for u in inner)
        ]
        children: list[Shape] = []
        pos = lo
        for t in sorted(maximal):
            children.extend(range(pos, t.lo))
            below = [u for u in inner if u != t and t.contains(u)]
            children.append(build(t.lo, t.hi, below))
            pos = t.hi + 1
        children.extend(range(pos, hi + 1))
        return tuple(children)

    return PlanarTree(build(1, c.n, list(c.intervals)))


def all_planar_trees(n: int) -> list[PlanarTree]:
    return [nested_to_tree(c) for c in nested_collections(n)]


def nabla_tilde(lt: LabeledTree, v: Interval) -> LabeledTree:
    """Reflect the subtree at vertex ``v``: (𝒯, σ) -> (j_v 𝒯, σ·ω_v)."""
    collection = tree_to_nested(lt.tree)
    if v not in collection:
        raise ValueError(f"{v} is not a non-root vertex of the tree")
    return LabeledTree(
        nested_to_tree(collection.conjugated(v)),
        compose(lt.perm, omega(v, lt.n)),
    )


def expand_perm(sigma: Permutation) -> Permutation:
    """The expansion morphism Σ_n -> Σ_2n: τ(2i-1) = 2σ(i)-1, τ(2i) = 2σ(i)."""
    images: list[int] = []
    for v in sigma:
        images.extend((2 * v - 1, 2 * v))
    return tuple(images)


def expand_tree(lt: LabeledTree) -> LabeledTree:
    """Replace every leaf by a caret and the labels by their expansion."""

    def grow(node: Shape) -> Shape:
        if isinstance(node, int):
            return (2 * node - 1, 2 * node)
        return tuple(grow(child) for child in node)

    return LabeledTree(PlanarTree(grow(lt.tree.shape)), expand_perm(lt.perm))


def simple_expand_perm(sigma: Permutation, m: int) -> Permutation:
    """Split position ``m`` in two; its value k becomes k, k+1 and larger
    values shift up by one."""
    if not 1 <= m <= len(sigma):
        raise ValueError(f"Position {m} outside 1..{len(sigma)}")
    k = sigma[m - 1]

    def shift(v: int) -> int:
        return v if v <= k else v + 1

    return (
        tuple(shift(v) for v in sigma[:m])
        + (k + 1,)
        + tuple(shift(v) for v in sigma[m:])
    )


def contract_perm(sigma: Permutation, m: int) -> Permutation:
    """Inverse of :func:`simple_expand_perm` at position ``m``."""
    if not 1 <= m < len(sigma) or sigma[m] != sigma[m - 1] + 1:
        raise ValueError(f"Positions {m}, {m + 1} do not carry consecutive values")
    k = sigma[m - 1]
    rest = sigma[:m] + sigma[m + 1 :]
    return tuple(v if v <= k else v - 1 for v in rest)


def simple_expand_labeled(lt: LabeledTree, m: int) -> LabeledTree:
    """Grow leaf ``m`` of the tree into a caret and split its label."""
    collection = insert_caret(tree_to_nested(lt.tree), m)
    return LabeledTree(nested_to_tree(collection), simple_expand_perm(lt.perm, m))


def least_reflection(
    labels: Sequence[int], c: NestedCollection, flip_root: bool = False
) -> tuple[tuple[int, ...], NestedCollection]:
    """Lexicographically least labeling over all subtree reflections of (c, labels).

    Reflecting the subtrees at a subset of vertices is the same as reversing
    the child order at a subset of vertices. With distinct labels each vertex
    is settled bottom-up by comparing its two concatenations. The root order
    may be reversed only with ``flip_root``.
    """
    if len(labels) != c.n:
        raise ValueError(f"{len(labels)} labels for ambient {c.n}")

    def best(node: Shape, reversible: bool) -> tuple[tuple[int, ...], Shape]:
        if isinstance(node, int):
            return (labels[node - 1],), node
        parts = [best(child, True) for child in node]
        if reversible:
            backward = parts[::-1]
            if tuple(v for seq, _ in backward for v in seq) < tuple(
                v for seq, _ in parts for v in seq
            ):
                parts = backward
        return tuple(v for seq, _ in parts for v in seq), tuple(s for _, s in parts)

    ordered, shape = best(nested_to_tree(c).shape, flip_root)
    spans: list[Interval] = []

    def place(node: Shape, start: int, is_root: bool) -> int:
        if isinstance(node, int):
            return 1
        width = 0
        for child in node:
            width += place(child, start + width, False)
        if not is_root:
            spans.append(Interval(start, start + width - 1))
        return width

    place(shape, 1, True)
    return ordered, NestedCollection(c.n, tuple(spans))
