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
"""The group generated by the pure quasi-braids and a lift â of ω_S.

An element is stored as ``w · â^h`` with ``w`` pure and ``h`` in {0, 1}.
Conjugation by â acts on pure words as c(w) = α̂ j_S(w) α̂⁻¹, and â² is the
pure word α̂ j_S(α̂).
"""

from dataclasses import dataclass
from typing import Any

from app.core.interval import Interval
from app.quasibraid.expansion import simple_expand_word
from app.quasibraid.words import (
    QBWord,
    alpha_hat,
    free_reduce,
    inverse_word,
    is_pure,
    j_s_automorphism,
    length,
)


@dataclass(frozen=True)
class QElement:
    word: QBWord
    hat: int = 0

    def __post_init__(self) -> None:
        if self.hat not in (0, 1):
            raise ValueError(f"Hat flag must be 0 or 1, got {self.hat}")
        if not is_pure(self.word):
            raise ValueError(f"{self.word} is not a pure quasi-braid")

    @property
    def n(self) -> int:
        return self.word.n

    def to_json(self) -> dict[str, Any]:
        return {"word": self.word.to_json(), "hat": self.hat}

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "QElement":
        return cls(QBWord.from_json(obj["word"]), int(obj.get("hat", 0)))


def q_identity(n: int) -> QElement:
    return QElement(QBWord(n))


def a_hat(n: int) -> QElement:
    return QElement(QBWord(n), 1)


def hat_conjugate(w: QBWord) -> QBWord:
    """â w â⁻¹ for a pure word w."""
    ah = alpha_hat(w.n)
    return ah * j_s_automorphism(w) * inverse_word(ah)


def hat_square(n: int) -> QBWord:
    ah = alpha_hat(n)
    return ah * j_s_automorphism(ah)


def q_compose(a: QElement, b: QElement) -> QElement:
    if a.n != b.n:
        raise ValueError(f"Ambient mismatch: {a.n} vs {b.n}")
    if not a.hat:
        return QElement(free_reduce(a.word * b.word), b.hat)
    moved = hat_conjugate(b.word)
    if not b.hat:
        return QElement(free_reduce(a.word * moved), 1)
    return QElement(free_reduce(a.word * moved * hat_square(a.n)), 0)


def length_bar(q: QElement) -> int:
    """Stable length extended by ℓ̄(â) = 0."""
    return length(q.word)


def q_last_leaf_expand(q: QElement) -> QBWord:
    """Expansion at the last puncture; â goes to the pure word α̂·α_[1,n]."""
    n = q.n
    image = simple_expand_word(q.word, n)
    if q.hat:
        twist = QBWord(n + 1, alpha_hat(n).factors + (Interval(1, n),))
        image = image * twist
    return image
