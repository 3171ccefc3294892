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
"""Face posets of the rooted moduli complex, its antipodal quotient and the
unrooted-tree model of the quotient."""

import logging
from collections import Counter
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Any, Literal

from app.config import get_settings
from app.core.interval import (
    NestedCollection,
    compatible_intervals,
    nested_collections,
    proper_intervals,
)
from app.core.permutation import Permutation
from app.core.unrooted import (
    UnrootedKey,
    UnrootedLabeledTree,
    all_unrooted_trees,
    unrooted_class_members,
)
from app.strata.stratum import (
    RawKey,
    StratumClass,
    canonicalize,
    raw_antipode,
    raw_orbit,
)

Variant = Literal["tilde", "bar", "bar-unrooted"]


@dataclass(frozen=True)
class Cell:
    dim: int
    key: Any
    payload: StratumClass | UnrootedLabeledTree

    def to_json(self) -> dict[str, Any]:
        if isinstance(self.payload, StratumClass):
            body = self.payload.to_json()
            return {"dim": self.dim, "collection": body["collection"], "perm": body["perm"]}
        body = self.payload.to_json()
        return {"dim": self.dim, "splits": body["splits"], "labels": body["labels"]}


@dataclass
class CellComplexModel:
    """Cells sorted by (dimension, canonical key) with their codimension-one faces.

    ``incidence[i]`` lists the indices of the faces of cell ``i``; an index
    appears once per time the face is met, so quotient gluings stay visible.
    """

    n: int
    variant: Variant
    cells: list[Cell]
    incidence: list[list[int]]
    index: dict[Any, int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self.index:
            self.index = {cell.key: i for i, cell in enumerate(self.cells)}

    @property
    def top_dimension(self) -> int:
        return self.n - 2

    def cells_of_dim(self, d: int) -> list[int]:
        return [i for i, cell in enumerate(self.cells) if cell.dim == d]


def check_range(n: int, max_n: int | None) -> None:
    bound = max_n if max_n is not None else get_settings().max_n
    if not 3 <= n <= bound:
        raise ValueError(f"Complexes are built for 3 <= n <= {bound}, got n={n}")


def _classes_for_perms(n: int, perms: Sequence[Permutation]) -> dict[RawKey, list[RawKey]]:
    """Canonical classes met by the given permutations, each with its faces."""
    memo: dict[RawKey, RawKey] = {}

    def canonical(state: RawKey) -> RawKey:
        found = memo.get(state)
        if found is None:
            reps = raw_orbit(*state)
            found = min(reps)
            for rep in reps:
                memo[rep] = found
        return found

    collections = nested_collections(n)
    classes: dict[RawKey, list[RawKey]] = {}
    for perm in perms:
        for c in collections:
            key = canonical((perm, c.key))
            if key in classes:
                continue
            rep = StratumClass.from_key(key)
            classes[key] = [
                canonical((key[0], tuple(sorted((*key[1], t.as_pair())))))
                for t in compatible_intervals(rep.collection)
            ]
    return classes


def _assemble(
    n: int,
    variant: Variant,
    classes: dict[Any, list[Any]],
    payload: Any,
    dimension: Any,
) -> CellComplexModel:
    ordered = sorted(classes, key=lambda k: (dimension(k), k))
    cells = [Cell(dimension(k), k, payload(k)) for k in ordered]
    index = {k: i for i, k in enumerate(ordered)}
    incidence = [sorted(index[f] for f in classes[k]) for k in ordered]
    model = CellComplexModel(n, variant, cells, incidence, index)
    logging.info(f"Built {variant} complex for n={n}: f-vector {f_vector(model)}")
    return model


def build_tilde_complex(
    n: int, jobs: int = 1, max_n: int | None = None
) -> CellComplexModel:
    """All classes [𝒯, σ] of the rooted complex with their codimension-one faces."""
    check_range(n, max_n)
    perms = list(permutations(range(1, n + 1)))
    if jobs > 1:
        chunks = [perms[i::jobs] for i in range(jobs)]
        classes: dict[RawKey, list[RawKey]] = {}
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_classes_for_perms, [n] * jobs, chunks):
                logging.info(f"Merging {len(part)} classes from a worker")
                classes.update(part)
    else:
        classes = _classes_for_perms(n, perms)
    return _assemble(
        n,
        "tilde",
        classes,
        StratumClass.from_key,
        lambda k: (n - 2) - len(k[1]),
    )


def _canonical_raw(key: RawKey) -> RawKey:
    perm, pairs = key
    return canonicalize(NestedCollection.of(len(perm), pairs), perm).key


def build_bar_complex(
    n: int, jobs: int = 1, max_n: int | None = None
) -> CellComplexModel:
    """Quotient of the rooted complex by the antipodal involution."""
    tilde = build_tilde_complex(n, jobs=jobs, max_n=max_n)
    rep: dict[RawKey, RawKey] = {}
    for cell in tilde.cells:
        other = _canonical_raw(raw_antipode(cell.key))
        if other == cell.key:
            raise RuntimeError(f"Antipodal involution fixes the cell {cell.key}")
        rep[cell.key] = min(cell.key, other)
    classes: dict[RawKey, list[RawKey]] = {}
    for i, cell in enumerate(tilde.cells):
        if rep[cell.key] != cell.key:
            continue
        faces = [rep[tilde.cells[j].key] for j in tilde.incidence[i]]
        for face, count in Counter(faces).items():
            if count > 1:
                logging.warning(
                    f"Cell {cell.key} meets face {face} {count} times in the quotient"
                )
        classes[cell.key] = faces
    return _assemble(
        n, "bar", classes, StratumClass.from_key, lambda k: (n - 2) - len(k[1])
    )


def build_bar_complex_unrooted(n: int, max_n: int | None = None) -> CellComplexModel:
    """The quotient complex built directly from cyclically labeled unrooted trees."""
    check_range(n, max_n)
    memo: dict[UnrootedKey, UnrootedLabeledTree] = {}

    def canonical(ut: UnrootedLabeledTree) -> UnrootedLabeledTree:
        found = memo.get(ut.key)
        if found is None:
            members = unrooted_class_members(ut)
            found = members[0]
            for member in members:
                memo[member.key] = found
        return found

    trees: dict[UnrootedKey, UnrootedLabeledTree] = {}
    classes: dict[UnrootedKey, list[UnrootedKey]] = {}
    for ut in all_unrooted_trees(n):
        rep = canonical(ut)
        if rep.key in classes:
            continue
        trees[rep.key] = rep
        classes[rep.key] = [
            canonical(
                UnrootedLabeledTree(n, rep.splits.with_interval(t), rep.labels)
            ).key
            for t in compatible_intervals(rep.splits)
        ]
    return _assemble(
        n,
        "bar-unrooted",
        classes,
        lambda k: trees[k],
        lambda k: (n - 2) - len(k[1]),
    )


def build_complex(
    n: int, variant: Variant, jobs: int = 1, max_n: int | None = None
) -> CellComplexModel:
    if variant == "tilde":
        return build_tilde_complex(n, jobs=jobs, max_n=max_n)
    if variant == "bar":
        return build_bar_complex(n, jobs=jobs, max_n=max_n)
    if variant == "bar-unrooted":
        return build_bar_complex_unrooted(n, max_n=max_n)
    raise ValueError(f"Unknown variant {variant!r}")


def f_vector(model: CellComplexModel) -> list[int]:
    counts = Counter(cell.dim for cell in model.cells)
    return [counts.get(d, 0) for d in range(model.top_dimension + 1)]


def euler_characteristic(model: CellComplexModel | Iterable[int]) -> int:
    values = f_vector(model) if isinstance(model, CellComplexModel) else list(model)
    return sum((-1) ** d * count for d, count in enumerate(values))


def codimension_one_count(n: int) -> int:
    """n! times the number of proper intervals of [1, n], halved."""
    factorial = 1
    for k in range(2, n + 1):
        factorial *= k
    return factorial * len(proper_intervals(n)) // 2


def complex_to_dict(model: CellComplexModel) -> dict[str, Any]:
    return {
        "n": model.n,
        "variant": model.variant,
        "cells": [cell.to_json() for cell in model.cells],
        "incidence": model.incidence,
    }
