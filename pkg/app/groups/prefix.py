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
"""Finite binary trees stored as the prefix code of their leaf addresses.

A leaf address is a root name followed by a path of ``0`` (left) and ``1``
(right) steps. Rooted trees have the single root ``""``; cyclic trees hang
three binary branches ``a``, ``b`` and ``c`` off a marked vertex. For a
prefix code, lexicographic order of the addresses is left-to-right order.
"""

import random
from dataclasses import dataclass
from typing import Any, ClassVar, TypeVar

T = TypeVar("T", bound="PrefixTree")


@dataclass(frozen=True)
class PrefixTree:
    leaves: tuple[str, ...]

    ROOTS: ClassVar[tuple[str, ...]] = ("",)

    def __post_init__(self) -> None:
        leaves = tuple(self.leaves)
        object.__setattr__(self, "leaves", leaves)
        if list(leaves) != sorted(set(leaves)):
            raise ValueError(f"Leaves must be distinct and in left-to-right order: {leaves}")
        for root in self.ROOTS:
            own = [leaf for leaf in leaves if self._root_of(leaf) == root]
            if not own:
                raise ValueError(f"Branch {root!r} has no leaves")
            depth = max(len(leaf) - len(root) for leaf in own)
            if sum(2 ** (depth - (len(leaf) - len(root))) for leaf in own) != 2**depth:
                raise ValueError(f"Leaves under {root!r} do not form a complete tree")
        for left, right in zip(leaves, leaves[1:], strict=False):
            if right.startswith(left):
                raise ValueError(f"Leaf {left!r} is a prefix of {right!r}")

    def _root_of(self, address: str) -> str:
        for root in self.ROOTS:
            if root and address.startswith(root):
                return root
        if "" in self.ROOTS and set(address) <= {"0", "1"}:
            return ""
        raise ValueError(f"Address {address!r} is outside the tree")

    @property
    def n(self) -> int:
        return len(self.leaves)

    @property
    def depth(self) -> int:
        return max(len(leaf) - len(self._root_of(leaf)) for leaf in self.leaves)

    def leaf_depth(self, i: int) -> int:
        leaf = self.leaves[i - 1]
        return len(leaf) - len(self._root_of(leaf))

    @classmethod
    def trivial(cls: type[T]) -> T:
        return cls(cls.ROOTS)

    @classmethod
    def complete(cls: type[T], depth: int) -> T:
        if depth < 0:
            raise ValueError(f"Depth must be non-negative, got {depth}")
        paths = [format(k, f"0{depth}b") if depth else "" for k in range(2**depth)]
        return cls(tuple(root + path for root in cls.ROOTS for path in paths))

    def expand(self: T, i: int) -> T:
        """Hang a caret below leaf ``i`` (1-based)."""
        if not 1 <= i <= self.n:
            raise ValueError(f"Leaf {i} outside 1..{self.n}")
        leaf = self.leaves[i - 1]
        return type(self)((*self.leaves[: i - 1], leaf + "0", leaf + "1", *self.leaves[i:]))

    def is_caret(self, i: int) -> bool:
        """True when leaves ``i`` and ``i + 1`` are the two children of one vertex."""
        if not 1 <= i < self.n:
            return False
        left, right = self.leaves[i - 1], self.leaves[i]
        return (
            len(left) > len(self._root_of(left))
            and left[:-1] == right[:-1]
            and left[-1] == "0"
            and right[-1] == "1"
        )

    def collapse(self: T, i: int) -> T:
        if not self.is_caret(i):
            raise ValueError(f"Leaves {i}, {i + 1} do not form a caret")
        parent = self.leaves[i - 1][:-1]
        return type(self)((*self.leaves[: i - 1], parent, *self.leaves[i + 1 :]))

    def to_json(self) -> Any:
        counter = iter(range(1, self.n + 1))
        present = set(self.leaves)

        def build(address: str) -> Any:
            if address in present:
                return next(counter)
            return [build(address + "0"), build(address + "1")]

        if self.ROOTS == ("",):
            return build("")
        return [build(root) for root in self.ROOTS]

    @classmethod
    def from_json(cls: type[T], obj: Any) -> T:
        found: list[tuple[int, str]] = []

        def walk(node: Any, address: str) -> None:
            if isinstance(node, bool):
                raise ValueError("Booleans are not tree nodes")
            if isinstance(node, int):
                found.append((node, address))
                return
            if isinstance(node, list | tuple) and len(node) == 2:
                walk(node[0], address + "0")
                walk(node[1], address + "1")
                return
            raise ValueError(f"Binary tree nodes need exactly two children: {node!r}")

        if cls.ROOTS == ("",):
            walk(obj, "")
        else:
            if not isinstance(obj, list | tuple) or len(obj) != len(cls.ROOTS):
                raise ValueError(f"Expected {len(cls.ROOTS)} branches, got {obj!r}")
            for branch, root in zip(obj, cls.ROOTS, strict=True):
                walk(branch, root)
        numbers = [number for number, _ in found]
        if numbers != list(range(1, len(found) + 1)):
            raise ValueError(f"Leaves must read 1..n left to right, got {numbers}")
        return cls(tuple(address for _, address in found))


class BinaryTree(PrefixTree):
    """A rooted binary planar tree."""


class CyclicTree(PrefixTree):
    """Three binary branches around a marked vertex, read in cyclic order."""

    ROOTS: ClassVar[tuple[str, ...]] = ("a", "b", "c")


def random_tree(tree_cls: type[T], leaves: int, rng: random.Random) -> T:
    """Grow a tree by expanding uniformly chosen leaves."""
    tree = tree_cls.trivial()
    if leaves < tree.n:
        raise ValueError(f"A {tree_cls.__name__} has at least {tree.n} leaves")
    while tree.n < leaves:
        tree = tree.expand(rng.randint(1, tree.n))
    return tree
