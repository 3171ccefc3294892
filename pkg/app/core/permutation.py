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
"""Permutations as 1-based image tuples.

``p[i - 1]`` is the image of ``i``. Products follow function composition:
``compose(a, b)(x) == a(b(x))``, so the right factor acts first.
"""

import random
from collections.abc import Iterable, Sequence

Permutation = tuple[int, ...]


def validate(images: Iterable[int]) -> Permutation:
    """Checks bijectivity on {1..n} and returns the images as a tuple."""
    perm = tuple(int(v) for v in images)
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise ValueError(f"Not a permutation of 1..{len(perm)}: {perm}")
    return perm


def identity(n: int) -> Permutation:
    if n < 0:
        raise ValueError(f"Permutation size must be non-negative, got {n}")
    return tuple(range(1, n + 1))


def compose(a: Sequence[int], b: Sequence[int]) -> Permutation:
    if len(a) != len(b):
        raise ValueError(f"Size mismatch: {len(a)} vs {len(b)}")
    return tuple(a[x - 1] for x in b)


def inverse(a: Sequence[int]) -> Permutation:
    inv = [0] * len(a)
    for i, v in enumerate(a, start=1):
        inv[v - 1] = i
    return tuple(inv)


def transposition(i: int, j: int, n: int) -> Permutation:
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"Transposition ({i},{j}) outside 1..{n}")
    images = list(range(1, n + 1))
    images[i - 1], images[j - 1] = images[j - 1], images[i - 1]
    return tuple(images)


def is_identity(a: Sequence[int]) -> bool:
    return all(v == i for i, v in enumerate(a, start=1))


def is_rotation(a: Sequence[int]) -> bool:
    """True when ``a`` is a cyclic shift i -> i + r (mod n)."""
    n = len(a)
    if n == 0:
        return True
    shift = (a[0] - 1) % n
    return all(v == (i + shift) % n + 1 for i, v in enumerate(a))


def random_permutation(n: int, rng: random.Random) -> Permutation:
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return tuple(images)
