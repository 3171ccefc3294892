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
"""Cellular chain complexes over F2 and their Betti numbers."""

import logging
from collections import Counter
from dataclasses import dataclass

import numpy as np

from app.strata.complex import CellComplexModel


@dataclass
class ChainComplexF2:
    """``columns[d][j]`` holds the (d-1)-cells in the boundary of the j-th d-cell,
    indices local to their dimension."""

    sizes: list[int]
    columns: list[list[tuple[int, ...]]]

    def matrix(self, d: int) -> np.ndarray:
        """Dense boundary matrix ∂_d with shape (f_(d-1), f_d)."""
        if d <= 0 or d >= len(self.sizes):
            rows = self.sizes[d - 1] if 0 < d <= len(self.sizes) else 0
            cols = self.sizes[d] if 0 <= d < len(self.sizes) else 0
            return np.zeros((rows, cols), dtype=np.uint8)
        out = np.zeros((self.sizes[d - 1], self.sizes[d]), dtype=np.uint8)
        for j, faces in enumerate(self.columns[d]):
            out[list(faces), j] = 1
        return out


def chain_complex(model: CellComplexModel) -> ChainComplexF2:
    top = model.top_dimension
    local: dict[int, int] = {}
    sizes = [0] * (top + 1)
    for i, cell in enumerate(model.cells):
        local[i] = sizes[cell.dim]
        sizes[cell.dim] += 1
    columns: list[list[tuple[int, ...]]] = [[] for _ in range(top + 1)]
    for i, cell in enumerate(model.cells):
        counts = Counter(model.incidence[i])
        for face, count in counts.items():
            if count % 2 == 0:
                logging.warning(
                    f"Face {model.cells[face].key} of cell {cell.key} appears "
                    f"{count} times and cancels mod 2"
                )
        columns[cell.dim].append(
            tuple(sorted(local[f] for f, count in counts.items() if count % 2))
        )
    return ChainComplexF2(sizes, columns)


def boundary_squared_vanishes(cc: ChainComplexF2) -> bool:
    """Sparse check that every ∂_(d-1)∂_d column is zero mod 2."""
    for d in range(2, len(cc.sizes)):
        for j, faces in enumerate(cc.columns[d]):
            parity = Counter(g for f in faces for g in cc.columns[d - 1][f])
            odd = [g for g, count in parity.items() if count % 2]
            if odd:
                logging.warning(f"∂∂ of cell {j} in dimension {d} hits {odd}")
                return False
    return True


def rank_f2(matrix: np.ndarray) -> int:
    """Rank over F2 by Gaussian elimination on bit-packed rows."""
    rows, cols = matrix.shape
    if rows == 0 or cols == 0:
        return 0
    packed = np.packbits(np.asarray(matrix, dtype=np.uint8) & 1, axis=1)
    rank = 0
    for c in range(cols):
        byte, shift = divmod(c, 8)
        column = (packed[rank:, byte] >> (7 - shift)) & 1
        hits = np.flatnonzero(column)
        if hits.size == 0:
            continue
        pivot = rank + int(hits[0])
        if pivot != rank:
            packed[[rank, pivot]] = packed[[pivot, rank]]
        below = (packed[:, byte] >> (7 - shift)) & 1
        below[: rank + 1] = 0
        mask = below.astype(bool)
        packed[mask] ^= packed[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def homology_f2(cc: ChainComplexF2) -> list[int]:
    """Betti numbers b_d = f_d - rank ∂_d - rank ∂_(d+1)."""
    ranks = [0] * (len(cc.sizes) + 1)
    for d in range(1, len(cc.sizes)):
        ranks[d] = rank_f2(cc.matrix(d))
    return [cc.sizes[d] - ranks[d] - ranks[d + 1] for d in range(len(cc.sizes))]
