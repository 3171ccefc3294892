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
"""Words in the quasi-braid generators α_T of Jₙ.

The leftmost factor is applied last under φ, so φ(α_T1 ··· α_Tr) is the
composite ω_T1 ∘ ··· ∘ ω_Tr.
"""

import random
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Any, Literal

from app.core.interval import Interval, omega
from app.core.permutation import (
    Permutation,
    compose,
    identity,
    is_identity,
    validate,
)

SectionMethod = Literal["bubble", "reversal"]


@dataclass(frozen=True)
class QBWord:
    n: int
    factors: tuple[Interval, ...] = ()

    def __post_init__(self) -> None:
        factors = tuple(Interval.coerce(t) for t in self.factors)
        object.__setattr__(self, "factors", factors)
        if self.n < 1:
            raise ValueError(f"Ambient must be positive, got {self.n}")
        for t in factors:
            if t.hi > self.n:
                raise ValueError(f"Generator {t} exceeds ambient {self.n}")

    @classmethod
    def of(cls, n: int, factors: Iterable[Interval | Iterable[int]] = ()) -> "QBWord":
        return cls(n, tuple(Interval.coerce(t) for t in factors))

    def __len__(self) -> int:
        return len(self.factors)

    def __mul__(self, other: "QBWord") -> "QBWord":
        if other.n != self.n:
            raise ValueError(f"Ambient mismatch: {self.n} vs {other.n}")
        return QBWord(self.n, self.factors + other.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "".join(f"α{t}" for t in self.factors)

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "factors": [list(t.as_pair()) for t in self.factors]}

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "QBWord":
        return cls.of(int(obj["n"]), obj.get("factors", []))


def phi(w: QBWord) -> Permutation:
    acc = identity(w.n)
    for t in w.factors:
        acc = compose(acc, omega(t, w.n))
    return acc


def length(w: QBWord) -> int:
    """The stable length: number of factors plus their support sizes, mod 2."""
    return sum(1 + t.size for t in w.factors) % 2


def is_pure(w: QBWord) -> bool:
    return is_identity(phi(w))


def free_reduce(w: QBWord) -> QBWord:
    """Cancel adjacent equal generators (each α_T is an involution)."""
    stack: list[Interval] = []
    for t in w.factors:
        if stack and stack[-1] == t:
            stack.pop()
        else:
            stack.append(t)
    return QBWord(w.n, tuple(stack))


def inverse_word(w: QBWord) -> QBWord:
    return QBWord(w.n, w.factors[::-1])


def j_s_automorphism(w: QBWord) -> QBWord:
    """α_T -> α_(j_S T), the reflection of every support in [1, n]."""
    return QBWord(w.n, tuple(Interval(w.n + 1 - t.hi, w.n + 1 - t.lo) for t in w.factors))


def alpha_hat(n: int) -> QBWord:
    """α_(1,2)·(α_(2,3)α_(1,2))···(α_(n-1,n)···α_(1,2)), a lift of ω_S."""
    factors = [Interval(i, i + 1) for m in range(2, n + 1) for i in range(m - 1, 0, -1)]
    return QBWord(n, tuple(factors))


def abelianization(w: QBWord) -> tuple[int, ...]:
    """Generator counts mod 2 per support size 2..n; constant on each relation."""
    counts = [0] * max(w.n - 1, 0)
    for t in w.factors:
        counts[t.size - 2] ^= 1
    return tuple(counts)


def section_word(sigma: Permutation, method: SectionMethod = "bubble") -> QBWord:
    """A word w with φ(w) = σ, built deterministically from reversals."""
    images = list(validate(sigma))
    n = len(images)
    used: list[Interval] = []
    if method == "bubble":
        for end in range(n, 1, -1):
            for p in range(1, end):
                if images[p - 1] > images[p]:
                    images[p - 1], images[p] = images[p], images[p - 1]
                    used.append(Interval(p, p + 1))
    elif method == "reversal":
        for i in range(1, n + 1):
            j = images.index(i) + 1
            if j > i:
                images[i - 1 : j] = images[i - 1 : j][::-1]
                used.append(Interval(i, j))
    else:
        raise ValueError(f"Unknown section method {method!r}")
    return QBWord(max(n, 1), tuple(reversed(used)))


def random_word(rng: random.Random, n: int, size: int) -> QBWord:
    if n < 2:
        return QBWord(max(n, 1))
    factors = []
    for _ in range(size):
        lo = rng.randint(1, n - 1)
        factors.append(Interval(lo, rng.randint(lo + 1, n)))
    return QBWord(n, tuple(factors))


def random_pure_word(rng: random.Random, n: int, size: int) -> QBWord:
    """u · section(φ(u))⁻¹ for a random word u."""
    u = random_word(rng, n, size)
    return free_reduce(u * inverse_word(section_word(phi(u), "bubble")))


def random_section_word(rng: random.Random, sigma: Permutation, size: int = 4) -> QBWord:
    """A randomized word over σ: a fixed section twisted by a random pure word."""
    twist = random_pure_word(rng, len(sigma), size)
    return free_reduce(section_word(sigma, rng.choice(["bubble", "reversal"])) * twist)