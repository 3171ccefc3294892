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
"""Eventually periodic bit sequences and the ring R of their tails.

An ``RClassBit`` stores one concrete sequence as a preperiod followed by a
repeating period, always in its shortest form. Equality and hashing only look
at the tail, so two sequences that agree from some index on are the same
element of R.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any

import numpy as np

from app.groups.automaton import AutomorphismAutomaton

Bits = tuple[int, ...]


def _normalize(preperiod: Bits, period: Bits) -> tuple[Bits, Bits]:
    p = len(period)
    for d in range(1, p + 1):
        if p % d == 0 and period == period[:d] * (p // d):
            period = period[:d]
            break
    while preperiod and preperiod[-1] == period[-1]:
        preperiod = preperiod[:-1]
        period = (period[-1], *period[:-1])
    return preperiod, period


@dataclass(frozen=True, eq=False)
class RClassBit:
    preperiod: Bits = ()
    period: Bits = (0,)

    def __post_init__(self) -> None:
        pre = tuple(int(b) for b in self.preperiod)
        per = tuple(int(b) for b in self.period)
        if not per:
            raise ValueError("The period must not be empty")
        if any(b not in (0, 1) for b in pre + per):
            raise ValueError("Sequence entries must be bits")
        pre, per = _normalize(pre, per)
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    def __getitem__(self, k: int) -> int:
        if k < 0:
            raise IndexError(f"Negative index {k}")
        if k < len(self.preperiod):
            return self.preperiod[k]
        return self.period[(k - len(self.preperiod)) % len(self.period)]

    @property
    def tail_key(self) -> Bits:
        """The period read from an index divisible by its length."""
        p = len(self.period)
        start = -(-len(self.preperiod) // p) * p
        return tuple(self[k] for k in range(start, start + p))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RClassBit):
            return NotImplemented
        return self.tail_key == other.tail_key

    def __hash__(self) -> int:
        return hash(self.tail_key)

    def __add__(self, other: "RClassBit") -> "RClassBit":
        start = max(len(self.preperiod), len(other.preperiod))
        p = math.lcm(len(self.period), len(other.period))
        values = [self[k] ^ other[k] for k in range(start + p)]
        return RClassBit(tuple(values[:start]), tuple(values[start:]))

    def head(self, count: int) -> list[int]:
        return [self[k] for k in range(count)]

    def constant(self) -> int | None:
        """The bit b with self = j(b), or None when the tail is not constant."""
        return self.period[0] if len(self.period) == 1 else None

    def cumulative(self, initial: int = 0) -> "RClassBit":
        """S(k) = initial + sum of the entries before index k, mod 2."""
        start, p = len(self.preperiod), len(self.period)
        values = [initial & 1]
        for k in range(start + 2 * p - 1):
            values.append(values[-1] ^ self[k])
        return RClassBit(tuple(values[:start]), tuple(values[start:]))

    def shift(self, d: int) -> "RClassBit":
        """Delay by ``d`` indices, padding with zeros."""
        if d < 0:
            raise ValueError(f"Shift must be non-negative, got {d}")
        return RClassBit((0,) * d + self.preperiod, self.period)

    def to_json(self) -> dict[str, Any]:
        return {"preperiod": list(self.preperiod), "period": list(self.period)}

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "RClassBit":
        return cls(tuple(obj.get("preperiod", [])), tuple(obj["period"]))

    def __str__(self) -> str:
        pre = "".join(map(str, self.preperiod))
        return f"{pre}({''.join(map(str, self.period))})"


def zero() -> RClassBit:
    return RClassBit((), (0,))


def one() -> RClassBit:
    """1_R, the class of the all-ones sequence."""
    return RClassBit((), (1,))


def j(bit: int) -> RClassBit:
    """ℤ/2 -> R, 0 to the zero class and 1 to 1_R."""
    if bit not in (0, 1):
        raise ValueError(f"Expected a bit, got {bit}")
    return one() if bit else zero()


def transfer_matrix(a: AutomorphismAutomaton) -> np.ndarray:
    """M[t, s] counts, mod 2, the children of state s that are in state t."""
    m = len(a.states)
    matrix = np.zeros((m, m), dtype=np.uint8)
    for s, (_, left, right) in enumerate(a.states):
        matrix[left, s] ^= 1
        matrix[right, s] ^= 1
    return matrix


@lru_cache(maxsize=1024)
def swap_parity_sequence(a: AutomorphismAutomaton) -> RClassBit:
    """s_k = number of depth-k vertices where ``a`` swaps, mod 2.

    The state-count vectors v_{k+1} = M v_k live in a finite space, so they
    are eventually periodic; Floyd's cycle search finds the preperiod and the
    period, and s_k is read off each vector.
    """
    matrix = transfer_matrix(a)
    swaps = np.array([s for s, _, _ in a.states], dtype=np.uint8)

    def step(v: np.ndarray) -> np.ndarray:
        return (matrix @ v) % 2

    start = np.zeros(len(a.states), dtype=np.uint8)
    start[a.initial] = 1

    tortoise, hare = step(start), step(step(start))
    while not np.array_equal(tortoise, hare):
        tortoise, hare = step(tortoise), step(step(hare))

    mu = 0
    tortoise = start
    while not np.array_equal(tortoise, hare):
        tortoise, hare = step(tortoise), step(hare)
        mu += 1

    lam = 1
    hare = step(tortoise)
    while not np.array_equal(tortoise, hare):
        hare = step(hare)
        lam += 1

    bits: list[int] = []
    v = start
    for _ in range(mu + lam):
        bits.append(int(swaps @ v) % 2)
        v = step(v)
    return RClassBit(tuple(bits[:mu]), tuple(bits[mu:]))
