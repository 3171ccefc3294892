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
"""Stored derivations for identities in the quasi-braid groups."""

from collections.abc import Iterable
from dataclasses import dataclass

from app.core.interval import Interval
from app.quasibraid.expansion import (
    expand_generator,
    expand_word,
    wreath_embed_left,
    wreath_embed_right,
)
from app.quasibraid.relations import (
    Relation,
    Step,
    invert_derivation,
    words_equal_by_certificate,
)
from app.quasibraid.words import QBWord, inverse_word, length, phi


@dataclass(frozen=True)
class Certificate:
    name: str
    description: str
    start: QBWord
    end: QBWord
    steps: tuple[Step, ...]

    def check(self) -> bool:
        """The derivation is valid and both ends share φ and ℓ."""
        return (
            words_equal_by_certificate(self.start, self.end, self.steps)
            and phi(self.start) == phi(self.end)
            and length(self.start) == length(self.end)
        )


def _w(n: int, *pairs: tuple[int, int]) -> QBWord:
    return QBWord.of(n, pairs)


def _steps(*items: tuple[int, Relation, int]) -> tuple[Step, ...]:
    return tuple(Step(pos, rel, direction) for pos, rel, direction in items)


def p_word() -> QBWord:
    """p = α_[1,3] α_[1,2] α_[3,4] α_[1,3] α_[1,4], a pure word of length 1."""
    p = _w(4, (1, 3), (1, 2), (3, 4), (1, 3), (1, 4))
    if phi(p) != (1, 2, 3, 4) or length(p) != 1:
        raise RuntimeError(f"{p} lost its defining properties")
    return p


def commutator_chain() -> Certificate:
    """[α_[1,3], α_[1,2]α_[3,4]] · exp(α_[1,2]) rewrites to p."""
    a = _w(4, (1, 3))
    b = _w(4, (1, 2), (3, 4))
    start = a * b * inverse_word(a) * inverse_word(b) * expand_word(_w(2, (1, 2)))
    return Certificate(
        "commutator-p",
        "commutator of α_[1,3] and α_[1,2]α_[3,4] times exp(α_[1,2]) equals p",
        start,
        p_word(),
        _steps((6, "slide", 1), (7, "slide", 1), (6, "commute", 1), (5, "square", 1), (4, "square", 1)),
    )


def wreath_commutation(k: int, s: Interval) -> Certificate:
    """exp(α_S) commutes with the right wreath image of α_[1,2] in J_(2^(k+1)).

    Each block generator is pushed left through exp(α_S), sliding across the
    long support when it lies below it; the reflected blocks are then sorted.
    """
    left = wreath_embed_left(_w(2**k, s.as_pair()), 1)
    right = wreath_embed_right(_w(2, (1, 2)), k)
    blocks = range(s.lo, s.hi + 1)
    steps: list[Step] = []
    moved: list[int] = []
    for i in range(1, 2**k + 1):
        p = len(moved) + len(left)
        for c in reversed(blocks):
            if c != i:
                steps.append(Step(p - 1, "commute"))
            p -= 1
        steps.append(Step(p - 1, "slide" if i in blocks else "commute"))
        moved.append(s.lo + s.hi - i if i in blocks else i)
    for stop in range(len(moved) - 1, 0, -1):
        for j in range(stop):
            if moved[j] > moved[j + 1]:
                moved[j], moved[j + 1] = moved[j + 1], moved[j]
                steps.append(Step(j, "commute"))
    return Certificate(
        f"wreath-commutation-{k}-{s.lo},{s.hi}",
        f"exp(α{s}) commutes with the {2**k} block copies of α_[1,2]",
        left * right,
        right * left,
        tuple(steps),
    )


def slide_expansion() -> Certificate:
    """exp maps the slide α_[1,3]α_[1,2] = α_[2,3]α_[1,3] to an identity of J6."""
    lhs = expand_word(_w(3, (1, 3), (1, 2)))
    rhs = expand_word(_w(3, (2, 3), (1, 3)))
    to_middle = _steps(
        (3, "commute", 1),
        (2, "slide", -1),
        (1, "slide", -1),
        (4, "commute", 1),
        (3, "square", 1),
        (3, "commute", 1),
        (2, "square", 1),
        (0, "slide", 1),
    )
    from_rhs = _steps((2, "slide", -1), (3, "square", 1), (1, "slide", -1), (2, "square", 1))
    return Certificate(
        "slide-expansion",
        "image under exp of the slide relation α_[1,3]α_[1,2] = α_[2,3]α_[1,3]",
        lhs,
        rhs,
        to_middle + tuple(invert_derivation(rhs, from_rhs)),
    )


def expansion_reordering() -> Certificate:
    """exp(α_[1,2]) = α_[1,2]α_[3,4]α_[1,4]."""
    return Certificate(
        "expansion-reordering",
        "the long support of exp(α_[1,2]) can be moved to the right",
        expand_word(_w(2, (1, 2))),
        _w(4, (1, 2), (3, 4), (1, 4)),
        _steps((0, "slide", 1), (1, "slide", 1), (0, "commute", 1)),
    )


def square_expansion(n: int, t: Interval) -> Certificate:
    """exp(α_T)² = 1: the long support slides left past its own blocks."""
    m = t.hi - t.lo + 1
    steps = [Step(pos, "slide", -1) for pos in range(m, 0, -1)]
    steps.append(Step(0, "square"))
    steps += [Step(pos, "square") for pos in range(m - 1, -1, -1)]
    return Certificate(
        f"square-expansion-{n}-{t.lo},{t.hi}",
        f"image under exp of α{t}α{t} = 1 in J{n}",
        expand_word(_w(n, t.as_pair(), t.as_pair())),
        QBWord(2 * n),
        tuple(steps),
    )


def commute_expansion(n: int, t: Interval, u: Interval) -> Certificate:
    """Images under exp of disjoint generators commute factor by factor."""
    a, b = len(expand_generator(t)), len(expand_generator(u))
    steps = tuple(
        Step(pos, "commute") for k in range(1, b + 1) for pos in range(a + k - 2, k - 2, -1)
    )
    return Certificate(
        f"commute-expansion-{n}-{t.lo},{t.hi}-{u.lo},{u.hi}",
        f"image under exp of α{t}α{u} = α{u}α{t} in J{n}",
        expand_word(_w(n, t.as_pair(), u.as_pair())),
        expand_word(_w(n, u.as_pair(), t.as_pair())),
        steps,
    )


def _generators(n: int) -> list[Interval]:
    return [Interval(lo, hi) for lo in range(1, n) for hi in range(lo + 1, n + 1)]


def stored_certificates() -> list[Certificate]:
    certificates = [commutator_chain(), slide_expansion(), expansion_reordering()]
    for n in (2, 3, 4):
        certificates += [square_expansion(n, t) for t in _generators(n)]
    for n in (4, 5):
        certificates += [
            commute_expansion(n, t, u)
            for t in _generators(n)
            for u in _generators(n)
            if t.disjoint(u)
        ]
    for k in (1, 2):
        certificates += [wreath_commutation(k, s) for s in _generators(2**k)]
    return certificates


def check_all(certificates: Iterable[Certificate] | None = None) -> dict[str, bool]:
    return {c.name: c.check() for c in (certificates or stored_certificates())}
