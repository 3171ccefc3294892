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
"""Strata of the rooted moduli complex as canonical classes [𝒯, σ].

Two pairs are identified when one is obtained from the other by reflecting a
subset 𝒯'' of the collection: σ' = σ·ω_(T1)···ω_(Tr) with T1 ⊂ ... ⊂ Tr in
containment-increasing order, and 𝒯' = j_(Tr)···j_(T1) 𝒯. The class is stored
as its lexicographically least representative.
"""

import random
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Any

from app.core.interval import Interval, NestedCollection, omega
from app.core.permutation import Permutation, compose, validate
from app.core.trees import (
    LabeledTree,
    expand_tree,
    least_reflection,
    nested_to_tree,
    tree_to_nested,
)

Pairs = tuple[tuple[int, int], ...]
RawKey = tuple[Permutation, Pairs]


@dataclass(frozen=True)
class StratumClass:
    collection: NestedCollection
    perm: Permutation

    def __post_init__(self) -> None:
        object.__setattr__(self, "perm", validate(self.perm))
        if len(self.perm) != self.collection.n:
            raise ValueError(
                f"Permutation size {len(self.perm)} differs from ambient "
                f"{self.collection.n}"
            )
        if self.collection.n < 2:
            raise ValueError(f"Strata need at least two leaves, got {self.collection.n}")

    @property
    def n(self) -> int:
        return self.collection.n

    @property
    def key(self) -> RawKey:
        return (self.perm, self.collection.key)

    @property
    def dimension(self) -> int:
        return (self.n - 2) - len(self.collection)

    @classmethod
    def from_key(cls, key: RawKey) -> "StratumClass":
        perm, pairs = key
        return cls(NestedCollection.of(len(perm), pairs), perm)

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "collection": [list(p) for p in self.collection.key],
            "perm": list(self.perm),
        }


def reflect_subset(perm: Permutation, pairs: Pairs, chosen: Iterable[tuple[int, int]]) -> RawKey:
    """Reflect the chosen vertices, smallest first."""
    images = list(perm)
    current = list(pairs)
    for lo, hi in sorted(chosen, key=lambda t: (t[1] - t[0], t[0])):
        images[lo - 1 : hi] = images[lo - 1 : hi][::-1]
        current = [
            (lo + hi - b, lo + hi - a) if lo <= a and b <= hi else (a, b)
            for a, b in current
        ]
    return (tuple(images), tuple(sorted(current)))


def raw_orbit(perm: Permutation, pairs: Pairs) -> list[RawKey]:
    """All 2^|𝒯| representatives of the class of (pairs, perm) as raw keys."""
    return [
        reflect_subset(perm, pairs, (t for bit, t in enumerate(pairs) if mask >> bit & 1))
        for mask in range(1 << len(pairs))
    ]


def random_member(rng: random.Random, c: StratumClass) -> StratumClass:
    """A uniformly random representative of the class of ``c``."""
    chosen = [t for t in c.collection.key if rng.random() < 0.5]
    return StratumClass.from_key(reflect_subset(c.perm, c.collection.key, chosen))


def raw_antipode(key: RawKey) -> RawKey:
    perm, pairs = key
    n = len(perm)
    return (perm[::-1], tuple(sorted((n + 1 - hi, n + 1 - lo) for lo, hi in pairs)))


def orbit(collection: NestedCollection, perm: Permutation) -> list[StratumClass]:
    return [StratumClass.from_key(k) for k in raw_orbit(validate(perm), collection.key)]


def canonicalize(collection: NestedCollection, perm: Permutation) -> StratumClass:
    ordered, least = least_reflection(validate(perm), collection)
    return StratumClass(least, ordered)


def is_face(a: StratumClass, b: StratumClass) -> bool:
    """True when ``b`` contains a coarsening of some representative of ``a``."""
    if a.n != b.n:
        raise ValueError(f"Ambient mismatch: {a.n} vs {b.n}")
    if len(a.collection) < len(b.collection):
        return False
    b_reps: dict[Permutation, list[frozenset[tuple[int, int]]]] = {}
    for perm, pairs in raw_orbit(b.perm, b.collection.key):
        b_reps.setdefault(perm, []).append(frozenset(pairs))
    for perm, pairs in raw_orbit(a.perm, a.collection.key):
        finer = frozenset(pairs)
        if any(coarser <= finer for coarser in b_reps.get(perm, ())):
            return True
    return False


def antipodal(c: StratumClass) -> StratumClass:
    """[𝒯, σ] -> [j_S 𝒯, σ·ω_S] with S the full interval [1, n]."""
    full = Interval(1, c.n)
    return canonicalize(c.collection.conjugated(full), compose(c.perm, omega(full, c.n)))


def stabilize_stratum(c: StratumClass) -> StratumClass:
    """Image under the dyadic embedding: every leaf becomes a caret."""
    expanded = expand_tree(LabeledTree(nested_to_tree(c.collection), c.perm))
    return canonicalize(tree_to_nested(expanded.tree), expanded.perm)
