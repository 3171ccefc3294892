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
"""Unrooted planar trees with a cyclic labeling.

An unrooted tree with n + 1 leaves is drawn with its leaves at the cyclic
positions 0..n. Every internal edge splits the positions into two arcs; the
edge is stored as the arc that avoids position 0, which is an interval of
[1, n]. The splits of a tree therefore form a nested collection on [1, n],
and reading the tree from position 0 gives back the rooted model.
"""

import random
from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from itertools import permutations
from typing import Any

from app.core.interval import Interval, NestedCollection, nested_collections
from app.core.trees import least_reflection

UnrootedKey = tuple[tuple[int, ...], tuple[tuple[int, int], ...]]


@dataclass(frozen=True)
class UnrootedLabeledTree:
    """Splits plus ``labels[p]``, the label carried by cyclic position ``p``."""

    n: int
    splits: NestedCollection
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"An unrooted tree needs at least 3 leaves, got {self.n + 1}")
        if self.splits.n != self.n:
            raise ValueError(
                f"Splits live on [1,{self.splits.n}] but the tree has ambient {self.n}"
            )
        labels = tuple(int(v) for v in self.labels)
        if sorted(labels) != list(range(self.n + 1)):
            raise ValueError(f"Labels must be a permutation of 0..{self.n}: {labels}")
        object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        return self.n + 1

    @property
    def key(self) -> UnrootedKey:
        return (self.labels, self.splits.key)

    @property
    def dimension(self) -> int:
        return (self.n - 2) - len(self.splits)

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "splits": [list(t.as_pair()) for t in self.splits.intervals],
            "labels": list(self.labels),
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "UnrootedLabeledTree":
        n = int(obj["n"])
        return cls(n, NestedCollection.of(n, obj.get("splits", [])), tuple(obj["labels"]))


def _normalize_arc(positions: Iterable[int], n: int) -> Interval:
    """Turn either side of a split into the stored arc avoiding position 0."""
    side = set(positions)
    if 0 in side:
        side = set(range(n + 1)) - side
    lo, hi = min(side), max(side)
    if hi - lo + 1 != len(side):
        raise ValueError(f"Positions {sorted(side)} do not form an arc")
    return Interval(lo, hi)


def _arc(t: Interval) -> set[int]:
    return set(range(t.lo, t.hi + 1))


def _rebuild(n: int, arcs: Iterable[Iterable[int]], labels: list[int]) -> UnrootedLabeledTree:
    splits = NestedCollection(n, tuple(_normalize_arc(a, n) for a in arcs))
    return UnrootedLabeledTree(n, splits, tuple(labels))


def rotate_to_origin(ut: UnrootedLabeledTree) -> UnrootedLabeledTree:
    """Rotate positions so that label 0 sits at position 0."""
    m = ut.size
    r = ut.labels.index(0)
    if r == 0:
        return ut
    labels = [ut.labels[(p + r) % m] for p in range(m)]
    arcs = [{(q - r) % m for q in _arc(t)} for t in ut.splits.intervals]
    return _rebuild(ut.n, arcs, labels)


def mirror(ut: UnrootedLabeledTree) -> UnrootedLabeledTree:
    """Reverse the cyclic order, keeping position 0 fixed."""
    m = ut.size
    labels = [ut.labels[(-p) % m] for p in range(m)]
    arcs = [{(-q) % m for q in _arc(t)} for t in ut.splits.intervals]
    return _rebuild(ut.n, arcs, labels)


def _require_edge(ut: UnrootedLabeledTree, e: Interval) -> None:
    if e not in ut.splits:
        raise ValueError(f"{e} is not an internal edge of the tree")


def nabla_bar_down(ut: UnrootedLabeledTree, e: Interval) -> UnrootedLabeledTree:
    """Reflect the side of edge ``e`` that avoids position 0."""
    _require_edge(ut, e)
    labels = list(ut.labels)
    for p in range(e.lo, e.hi + 1):
        labels[p] = ut.labels[e.lo + e.hi - p]
    splits = ut.splits.conjugated(e)
    return UnrootedLabeledTree(ut.n, splits, tuple(labels))


def nabla_bar_up(ut: UnrootedLabeledTree, e: Interval) -> UnrootedLabeledTree:
    """Reflect the side of edge ``e`` that contains position 0."""
    _require_edge(ut, e)
    m = ut.size
    a, b = e.hi + 1, e.lo - 1 + m

    def refl(p: int) -> int:
        lifted = p if p >= a else p + m
        return (a + b - lifted) % m

    inside = _arc(e)
    labels = list(ut.labels)
    for p in range(m):
        if p not in inside:
            labels[p] = ut.labels[refl(p)]
    arcs: list[set[int]] = []
    for t in ut.splits.intervals:
        x = _arc(t)
        if x <= inside:
            arcs.append(x)
        elif not (x & inside):
            arcs.append({refl(q) for q in x})
        else:
            outside = set(range(m)) - x
            arcs.append({refl(q) for q in outside})
    return rotate_to_origin(_rebuild(ut.n, arcs, labels))


def _neighbours(ut: UnrootedLabeledTree) -> Iterator[UnrootedLabeledTree]:
    for e in ut.splits.intervals:
        yield nabla_bar_down(ut, e)
        yield nabla_bar_up(ut, e)
    yield mirror(ut)


def unrooted_class_members(ut: UnrootedLabeledTree) -> list[UnrootedLabeledTree]:
    """Every origin-rotated tree reachable by ∇̄ moves and the mirror, sorted."""
    start = rotate_to_origin(ut)
    seen = {start.key: start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for nxt in _neighbours(current):
            if nxt.key not in seen:
                seen[nxt.key] = nxt
                queue.append(nxt)
    return [seen[k] for k in sorted(seen)]


def random_member(rng: random.Random, ut: UnrootedLabeledTree, steps: int = 8) -> UnrootedLabeledTree:
    """A random member of the class, reached by a walk of ∇̄ moves and mirrors."""
    current = rotate_to_origin(ut)
    for _ in range(steps):
        current = rng.choice(list(_neighbours(current)))
    return current


def canonical_unrooted(ut: UnrootedLabeledTree) -> UnrootedLabeledTree:
    """The least member of the class, read as a rooted tree hanging from label 0.

    Every ∇̄ move and the mirror reverse the cyclic order at some internal
    vertices, so the class allows a reversal at every vertex including the one
    next to label 0.
    """
    start = rotate_to_origin(ut)
    ordered, least = least_reflection(start.labels[1:], start.splits, flip_root=True)
    return UnrootedLabeledTree(ut.n, least, (0, *ordered))


def all_unrooted_trees(n: int) -> Iterator[UnrootedLabeledTree]:
    """Every origin-rotated labeled tree with n + 1 leaves."""
    collections = nested_collections(n)
    for perm in permutations(range(1, n + 1)):
        for c in collections:
            yield UnrootedLabeledTree(n, c, (0, *perm))


def expand_position(ut: UnrootedLabeledTree, p: int, swap: bool = False) -> UnrootedLabeledTree:
    """Grow the leaf at position ``p`` into two leaves joined by a new edge."""
    m = ut.size
    if not 0 <= p < m:
        raise ValueError(f"Position {p} outside 0..{ut.n}")
    l = ut.labels[p]
    shifted = [v if v < l else v + 1 for v in ut.labels]
    labels = shifted[:p] + [l, l + 1] + shifted[p + 1 :]
    if swap:
        labels[p], labels[p + 1] = labels[p + 1], labels[p]
    arcs: list[set[int]] = []
    for t in ut.splits.intervals:
        x = {q if q < p else q + 1 for q in _arc(t)}
        if p in _arc(t):
            x.add(p)
        arcs.append(x)
    arcs.append({p, p + 1})
    return rotate_to_origin(_rebuild(ut.n + 1, arcs, labels))


def stabilize_unrooted(ut: UnrootedLabeledTree) -> UnrootedLabeledTree:
    """Expand every leaf at once: position p -> 2p, 2p+1 and label l -> 2l, 2l+1."""
    m = ut.size
    labels = [0] * (2 * m)
    for p, l in enumerate(ut.labels):
        labels[2 * p], labels[2 * p + 1] = 2 * l, 2 * l + 1
    arcs: list[set[int]] = [
        {2 * q + s for q in _arc(t) for s in (0, 1)} for t in ut.splits.intervals
    ]
    arcs.extend({2 * p, 2 * p + 1} for p in range(m))
    return _rebuild(2 * m - 1, arcs, labels)


def in_k_infinity(ut: UnrootedLabeledTree) -> bool:
    """True when some member of the class carries the cyclic labeling 0, 1, ..., n."""
    return canonical_unrooted(ut).labels == tuple(range(ut.size))
