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
"""Leaf-label intervals and nested collections.

For the type-A Coxeter graph the connected generator subsets are exactly the
intervals [lo, hi] of leaf labels, so an interval stands for the subset
{s_lo, ..., s_(hi-1)} and two intervals give a disconnected union precisely
when they are nested or share no label.
"""

from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import lru_cache

from app.core.permutation import Permutation


@dataclass(frozen=True, order=True)
class Interval:
    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo < 1 or self.hi <= self.lo:
            raise ValueError(f"Invalid interval [{self.lo},{self.hi}]")

    @classmethod
    def coerce(cls, value: "Interval | Iterable[int]") -> "Interval":
        if isinstance(value, Interval):
            return value
        lo, hi = value
        return cls(int(lo), int(hi))

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def contains(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def disjoint(self, other: "Interval") -> bool:
        return self.hi < other.lo or other.hi < self.lo

    def compatible(self, other: "Interval") -> bool:
        return self.contains(other) or other.contains(self) or self.disjoint(other)

    def shifted(self, offset: int) -> "Interval":
        return Interval(self.lo + offset, self.hi + offset)

    def as_pair(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi}]"


def omega(t: Interval, n: int) -> Permutation:
    """The longest element of the parabolic subgroup of ``t``: reverses lo..hi."""
    if t.hi > n:
        raise ValueError(f"Interval {t} exceeds ambient {n}")
    images = list(range(1, n + 1))
    images[t.lo - 1 : t.hi] = reversed(images[t.lo - 1 : t.hi])
    return tuple(images)


def conjugate_interval(t: Interval, u: Interval) -> Interval:
    """j_T U: reflect U inside T when U is contained in T, else leave it."""
    if t.contains(u):
        return Interval(t.lo + t.hi - u.hi, t.lo + t.hi - u.lo)
    return u


def is_nested(intervals: Iterable[Interval]) -> bool:
    items = list(intervals)
    return all(
        a.compatible(b) for i, a in enumerate(items) for b in items[i + 1 :]
    )


@dataclass(frozen=True)
class NestedCollection:
    """A set of proper intervals of [1, n], pairwise nested or label-disjoint."""

    n: int
    intervals: tuple[Interval, ...] = field(default=())

    def __post_init__(self) -> None:
        items = tuple(sorted(set(self.intervals)))
        for t in items:
            if t.hi > self.n:
                raise ValueError(f"Interval {t} exceeds ambient {self.n}")
            if t.lo == 1 and t.hi == self.n:
                raise ValueError(f"Interval {t} is not proper in ambient {self.n}")
        if not is_nested(items):
            raise ValueError(f"Collection {[str(t) for t in items]} is not nested")
        object.__setattr__(self, "intervals", items)

    @classmethod
    def of(
        cls, n: int, intervals: Iterable["Interval | Iterable[int]"] = ()
    ) -> "NestedCollection":
        return cls(n, tuple(Interval.coerce(t) for t in intervals))

    def __len__(self) -> int:
        return len(self.intervals)

    def __contains__(self, t: object) -> bool:
        return t in self.intervals

    @property
    def key(self) -> tuple[tuple[int, int], ...]:
        return tuple(t.as_pair() for t in self.intervals)

    def with_interval(self, t: Interval) -> "NestedCollection":
        return NestedCollection(self.n, (*self.intervals, t))

    def conjugated(self, t: Interval) -> "NestedCollection":
        """j_T applied to every member."""
        return NestedCollection(
            self.n, tuple(conjugate_interval(t, u) for u in self.intervals)
        )


@lru_cache(maxsize=None)
def proper_intervals(n: int) -> tuple[Interval, ...]:
    return tuple(
        Interval(lo, hi)
        for lo in range(1, n + 1)
        for hi in range(lo + 1, n + 1)
        if not (lo == 1 and hi == n)
    )


def compatible_intervals(c: NestedCollection) -> list[Interval]:
    """Proper intervals that refine ``c`` by one while keeping it nested."""
    return [
        t
        for t in proper_intervals(c.n)
        if t not in c.intervals and all(t.compatible(u) for u in c.intervals)
    ]


def nested_collections(n: int) -> list[NestedCollection]:
    """All nested collections on [1, n], i.e. the faces of the associahedron."""
    candidates = proper_intervals(n)
    found: list[tuple[Interval, ...]] = []

    def extend(start: int, chosen: list[Interval]) -> None:
        found.append(tuple(chosen))
        for idx in range(start, len(candidates)):
            t = candidates[idx]
            if all(t.compatible(u) for u in chosen):
                chosen.append(t)
                extend(idx + 1, chosen)
                chosen.pop()

    extend(0, [])
    return sorted(
        (NestedCollection(n, chosen) for chosen in found),
        key=lambda c: (len(c), c.key),
    )


def insert_caret(c: NestedCollection, m: int) -> NestedCollection:
    """Grow leaf ``m`` into a caret: labels after m shift by one."""
    if not 1 <= m <= c.n:
        raise ValueError(f"Leaf {m} outside 1..{c.n}")
    moved = [
        Interval(t.lo if t.lo <= m else t.lo + 1, t.hi if t.hi < m else t.hi + 1)
        for t in c.intervals
    ]
    if c.n + 1 > 2:
        moved.append(Interval(m, m + 1))
    return NestedCollection(c.n + 1, tuple(moved))
