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
"""The defining relations of Jₙ as rewriting steps, derivation checking and a
bounded search for derivations.

Relations, with positions counted from 0 in the word:

* ``square``: α_T α_T = 1. Forward cancels the pair at ``pos``; backward
  inserts α_T α_T before ``pos``.
* ``slide``: α_T α_T' = α_(j_T T') α_T for T' ⊊ T. Forward rewrites the left
  side at ``pos``; backward rewrites α_U α_T (U ⊊ T) into α_T α_(j_T U).
* ``commute``: α_T α_T' = α_T' α_T for label-disjoint supports.
"""

import logging
from collections import Counter
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import Any, Literal

from app.core.interval import Interval, conjugate_interval
from app.quasibraid.words import QBWord, abelianization, free_reduce, length, phi

Relation = Literal["square", "slide", "commute"]
Verdict = Literal["equal", "distinct", "unknown"]


@dataclass(frozen=True)
class Step:
    pos: int
    rel: Relation
    dir: int = 1
    support: Interval | None = None

    def __post_init__(self) -> None:
        if self.rel not in ("square", "slide", "commute"):
            raise ValueError(f"Unknown relation {self.rel!r}")
        if self.dir not in (1, -1):
            raise ValueError(f"Direction must be +1 or -1, got {self.dir}")
        if self.support is not None:
            object.__setattr__(self, "support", Interval.coerce(self.support))

    def to_json(self) -> dict[str, Any]:
        body: dict[str, Any] = {"pos": self.pos, "rel": self.rel, "dir": self.dir}
        if self.support is not None:
            body["support"] = list(self.support.as_pair())
        return body

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "Step":
        support = obj.get("support")
        return cls(
            int(obj["pos"]),
            obj["rel"],
            int(obj.get("dir", 1)),
            Interval.coerce(support) if support is not None else None,
        )


def _pair(w: QBWord, pos: int) -> tuple[Interval, Interval]:
    if not 0 <= pos < len(w) - 1:
        raise ValueError(f"No factor pair at position {pos} in a word of length {len(w)}")
    return w.factors[pos], w.factors[pos + 1]


def apply_relation(w: QBWord, step: Step) -> QBWord:
    f = list(w.factors)
    pos = step.pos
    if step.rel == "square" and step.dir == -1:
        if step.support is None:
            raise ValueError("Inserting a square needs a support")
        if step.support.hi > w.n or not 0 <= pos <= len(w):
            raise ValueError(f"Cannot insert α{step.support}² at {pos}")
        f[pos:pos] = [step.support, step.support]
        return QBWord(w.n, tuple(f))
    left, right = _pair(w, pos)
    if step.rel == "square":
        if left != right:
            raise ValueError(f"α{left}α{right} at {pos} is not a square")
        del f[pos : pos + 2]
    elif step.rel == "slide" and step.dir == 1:
        if not (left.contains(right) and left != right):
            raise ValueError(f"α{left}α{right} at {pos} is not a forward slide")
        f[pos : pos + 2] = [conjugate_interval(left, right), left]
    elif step.rel == "slide":
        if not (right.contains(left) and left != right):
            raise ValueError(f"α{left}α{right} at {pos} is not a backward slide")
        f[pos : pos + 2] = [right, conjugate_interval(right, left)]
    else:
        if not left.disjoint(right):
            raise ValueError(f"α{left}α{right} at {pos} do not commute")
        f[pos : pos + 2] = [right, left]
    return QBWord(w.n, tuple(f))


def run_derivation(start: QBWord, steps: Sequence[Step]) -> list[QBWord]:
    """Every intermediate word, starting with ``start``."""
    words = [start]
    for step in steps:
        words.append(apply_relation(words[-1], step))
    return words


def words_equal_by_certificate(w1: QBWord, w2: QBWord, steps: Sequence[Step]) -> bool:
    try:
        words = run_derivation(w1, steps)
    except ValueError as e:
        logging.warning(f"Certificate step rejected: {e}")
        return False
    return words[-1] == w2


def invert_derivation(start: QBWord, steps: Sequence[Step]) -> list[Step]:
    """Steps leading from the end of the derivation back to ``start``."""
    words = run_derivation(start, steps)
    inverse: list[Step] = []
    for before, step in zip(words, steps, strict=False):
        if step.rel == "square" and step.dir == 1:
            inverse.append(Step(step.pos, "square", -1, before.factors[step.pos]))
        elif step.rel == "square":
            inverse.append(Step(step.pos, "square", 1))
        elif step.rel == "slide":
            inverse.append(Step(step.pos, "slide", -step.dir))
        else:
            inverse.append(Step(step.pos, "commute", step.dir))
    return inverse[::-1]


def reducing_moves(w: QBWord) -> Iterator[tuple[Step, QBWord]]:
    """Every relation step that does not lengthen the word."""
    for pos in range(len(w) - 1):
        left, right = w.factors[pos], w.factors[pos + 1]
        if left == right:
            candidates = [Step(pos, "square", 1)]
        elif left.contains(right):
            candidates = [Step(pos, "slide", 1)]
        elif right.contains(left):
            candidates = [Step(pos, "slide", -1)]
        elif left.disjoint(right):
            candidates = [Step(pos, "commute", 1)]
        else:
            candidates = []
        for step in candidates:
            yield step, apply_relation(w, step)


def _path(parents: dict[QBWord, tuple[QBWord, Step] | None], end: QBWord) -> list[Step]:
    steps: list[Step] = []
    node = end
    while (link := parents[node]) is not None:
        node, step = link
        steps.append(step)
    return steps[::-1]


def search_derivation(w1: QBWord, w2: QBWord, depth: int) -> list[Step] | None:
    """Bidirectional breadth-first search using non-lengthening moves from both
    ends; at most ``depth`` steps in total."""
    if w1.n != w2.n:
        raise ValueError(f"Ambient mismatch: {w1.n} vs {w2.n}")
    sides: list[dict[QBWord, tuple[QBWord, Step] | None]] = [{w1: None}, {w2: None}]
    frontiers = [[w1], [w2]]
    radius = [0, 0]
    meet = w1 if w1 in sides[1] else None
    while meet is None and radius[0] + radius[1] < depth:
        k = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        if not frontiers[k]:
            k = 1 - k
            if not frontiers[k]:
                break
        nxt: list[QBWord] = []
        for word in frontiers[k]:
            for step, image in reducing_moves(word):
                if image in sides[k]:
                    continue
                sides[k][image] = (word, step)
                nxt.append(image)
                if image in sides[1 - k]:
                    meet = image
                    break
            if meet is not None:
                break
        frontiers[k] = nxt
        radius[k] += 1
        logging.debug(f"Search side {k} radius {radius[k]}: {len(nxt)} new words")
    if meet is None:
        return None
    forward = _path(sides[0], meet)
    backward = _path(sides[1], meet)
    return forward + invert_derivation(w2, backward)


def bounded_equal(w1: QBWord, w2: QBWord, depth: int) -> Verdict:
    if w1.n != w2.n:
        raise ValueError(f"Ambient mismatch: {w1.n} vs {w2.n}")
    if phi(w1) != phi(w2) or length(w1) != length(w2):
        return "distinct"
    if abelianization(w1) != abelianization(w2):
        return "distinct"
    if search_derivation(w1, w2, depth) is not None:
        return "equal"
    return "unknown"


def reduced_word_ball(n: int, radius: int) -> dict[str, Any]:
    """Statistics of the freely reduced words with at most ``radius`` factors.

    Only adjacent equal factors cancel, so several of these words can be the
    same element of Jₙ: the counts bound the group ball from above and are
    not the ball itself.
    """
    if n < 2:
        raise ValueError(f"Quasi-braid groups need n >= 2, got {n}")
    generators = [Interval(lo, hi) for lo in range(1, n) for hi in range(lo + 1, n + 1)]
    layer = [QBWord(n)]
    seen = {QBWord(n)}
    for _ in range(radius):
        grown: list[QBWord] = []
        for w in layer:
            for t in generators:
                v = free_reduce(QBWord(n, (*w.factors, t)))
                if v not in seen:
                    seen.add(v)
                    grown.append(v)
        layer = grown
    images = Counter(phi(w) for w in seen)
    lengths = Counter(length(w) for w in seen)
    return {
        "n": n,
        "radius": radius,
        "generators": len(generators),
        "reduced_words": len(seen),
        "phi_images": len(images),
        "pure_words": sum(1 for w in seen if phi(w) == tuple(range(1, n + 1))),
        "length_one": lengths.get(1, 0),
    }
