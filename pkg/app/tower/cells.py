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
"""Cells of the two dyadic towers.

A ``tilde`` cell at level k is a class [𝒯, σ] on 2^k leaves; a ``bar`` cell at
level k is a class of cyclically labeled unrooted trees with 3·2^k leaves.
Cells are finite data; comparing cells of different levels stabilizes both to
the larger level first.
"""

import random
from dataclasses import dataclass
from typing import Any, Literal

from app.core.interval import (
    Interval,
    NestedCollection,
    nested_collections,
    proper_intervals,
)
from app.core.permutation import identity, random_permutation
from app.core.unrooted import (
    UnrootedLabeledTree,
    canonical_unrooted,
    in_k_infinity as unrooted_in_k_infinity,
    stabilize_unrooted,
)
from app.strata.stratum import StratumClass, canonicalize, stabilize_stratum

TowerVariant = Literal["tilde", "bar"]


def leaf_count(variant: TowerVariant, level: int) -> int:
    if variant == "tilde":
        if level < 1:
            raise ValueError(f"The rooted tower starts at level 1, got {level}")
        return 2**level
    if level < 0:
        raise ValueError(f"The cyclic tower starts at level 0, got {level}")
    return 3 * 2**level


@dataclass(frozen=True)
class TowerCell:
    variant: TowerVariant
    level: int
    cell: StratumClass | UnrootedLabeledTree

    def __post_init__(self) -> None:
        expected = leaf_count(self.variant, self.level)
        if self.variant == "tilde":
            if not isinstance(self.cell, StratumClass) or self.cell.n != expected:
                raise ValueError(f"A tilde cell at level {self.level} needs {expected} leaves")
        elif not isinstance(self.cell, UnrootedLabeledTree) or self.cell.size != expected:
            raise ValueError(f"A bar cell at level {self.level} needs {expected} leaves")

    @property
    def dimension(self) -> int:
        return self.cell.dimension

    def to_json(self) -> dict[str, Any]:
        return {"variant": self.variant, "level": self.level, **self.cell.to_json()}

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "TowerCell":
        variant = obj["variant"]
        level = int(obj["level"])
        n = leaf_count(variant, level)
        if variant == "tilde":
            return make_tilde_cell(level, NestedCollection.of(n, obj.get("collection", [])), tuple(obj["perm"]))
        if variant == "bar":
            splits = NestedCollection.of(n - 1, obj.get("splits", []))
            return make_bar_cell(level, UnrootedLabeledTree(n - 1, splits, tuple(obj["labels"])))
        raise ValueError(f"Unknown tower variant {variant!r}")


def make_tilde_cell(level: int, collection: NestedCollection, perm: tuple[int, ...]) -> TowerCell:
    return TowerCell("tilde", level, canonicalize(collection, perm))


def make_bar_cell(level: int, ut: UnrootedLabeledTree) -> TowerCell:
    return TowerCell("bar", level, canonical_unrooted(ut))


def base_point(variant: TowerVariant) -> TowerCell:
    if variant == "tilde":
        return make_tilde_cell(1, NestedCollection(2), identity(2))
    return make_bar_cell(0, UnrootedLabeledTree(2, NestedCollection(2), (0, 1, 2)))


def stabilize_to(c: TowerCell, level: int) -> TowerCell:
    if level < c.level:
        raise ValueError(f"Cannot stabilize from level {c.level} down to {level}")
    cell = c.cell
    for _ in range(level - c.level):
        if isinstance(cell, StratumClass):
            cell = stabilize_stratum(cell)
        else:
            cell = canonical_unrooted(stabilize_unrooted(cell))
    return TowerCell(c.variant, level, cell)


def cells_equal(a: TowerCell, b: TowerCell) -> bool:
    if a.variant != b.variant:
        raise ValueError(f"Cells live in different towers: {a.variant} vs {b.variant}")
    top = max(a.level, b.level)
    return stabilize_to(a, top).cell == stabilize_to(b, top).cell


def in_k_infinity(c: TowerCell) -> bool:
    """Cells of the distinguished associahedron: a representative carries the
    cyclic labeling."""
    if c.variant != "bar":
        raise ValueError("The distinguished associahedron lives in the cyclic tower")
    if not isinstance(c.cell, UnrootedLabeledTree):
        raise ValueError("Cyclic cells carry unrooted trees")
    return unrooted_in_k_infinity(c.cell)


def random_nested(rng: random.Random, n: int) -> NestedCollection:
    candidates = list(proper_intervals(n))
    rng.shuffle(candidates)
    chosen: list[Interval] = []
    for t in candidates:
        if rng.random() < 0.5 and all(t.compatible(u) for u in chosen):
            chosen.append(t)
    return NestedCollection(n, tuple(chosen))


def random_cell(rng: random.Random, variant: TowerVariant, level: int) -> TowerCell:
    n = leaf_count(variant, level)
    if variant == "tilde":
        return make_tilde_cell(level, random_nested(rng, n), random_permutation(n, rng))
    labels = (0, *random_permutation(n - 1, rng))
    return make_bar_cell(level, UnrootedLabeledTree(n - 1, random_nested(rng, n - 1), labels))


def k_infinity_cells(level: int) -> list[TowerCell]:
    """Every cell of the distinguished associahedron at a cyclic level."""
    n = leaf_count("bar", level) - 1
    cyclic = tuple(range(n + 1))
    found = {
        make_bar_cell(level, UnrootedLabeledTree(n, c, cyclic)).cell
        for c in nested_collections(n)
    }
    return sorted(
        (TowerCell("bar", level, ut) for ut in found), key=lambda c: c.cell.key
    )
