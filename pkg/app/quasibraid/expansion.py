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
"""Dyadic expansion homomorphisms between quasi-braid groups and the wreath
embeddings built from them."""

from app.core.interval import Interval
from app.quasibraid.words import QBWord


def expand_generator(t: Interval) -> list[Interval]:
    """α_[i,j] -> α_[2i-1,2j] α_[2i-1,2i] α_[2i+1,2i+2] ··· α_[2j-1,2j]."""
    return [Interval(2 * t.lo - 1, 2 * t.hi)] + [
        Interval(2 * k - 1, 2 * k) for k in range(t.lo, t.hi + 1)
    ]


def expand_word(w: QBWord) -> QBWord:
    """exp: Jₙ -> J₂ₙ, applied generator by generator."""
    factors = [u for t in w.factors for u in expand_generator(t)]
    return QBWord(2 * w.n, tuple(factors))


def simple_expand_word(w: QBWord, m: int) -> QBWord:
    """Expand the single label ``m`` into two labels.

    Factors are processed right to left while following the label: a support
    that holds the current label grows by one and is followed by the twist
    α_(m,m+1); supports to the right of it shift; the label then moves to its
    image under the reversal.
    """
    if not 1 <= m <= w.n:
        raise ValueError(f"Label {m} outside 1..{w.n}")
    out: list[list[Interval]] = []
    for t in reversed(w.factors):
        if t.lo <= m <= t.hi:
            out.append([Interval(t.lo, t.hi + 1), Interval(m, m + 1)])
            m = t.lo + t.hi - m
        elif t.lo > m:
            out.append([t.shifted(1)])
        else:
            out.append([t])
    factors = [u for block in reversed(out) for u in block]
    return QBWord(w.n + 1, tuple(factors))


def wreath_embed_left(w: QBWord, levels: int) -> QBWord:
    """Iterate the expansion ``levels`` times."""
    for _ in range(levels):
        w = expand_word(w)
    return w


def wreath_embed_right(w: QBWord, k: int) -> QBWord:
    """Repeat every generator in each of the 2^k consecutive blocks of size n."""
    n = w.n
    factors = [
        Interval((i - 1) * n + t.lo, (i - 1) * n + t.hi)
        for t in w.factors
        for i in range(1, 2**k + 1)
    ]
    return QBWord(n * 2**k, tuple(factors))
