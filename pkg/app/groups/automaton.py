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
"""Finite-state automorphisms of the rooted binary tree.

A state is ``(swap, left, right)``. Reading the letter ``x`` at a state with
swap bit ``s`` outputs ``x ^ s`` and moves to the successor for ``x``, so the
state describes how the subtree below the current vertex is mapped onto the
image subtree.
"""

import random
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Any

State = tuple[int, int, int]


@dataclass(frozen=True)
class AutomorphismAutomaton:
    states: tuple[State, ...]
    initial: int = 0

    def __post_init__(self) -> None:
        states = tuple((int(s), int(l), int(r)) for s, l, r in self.states)
        object.__setattr__(self, "states", states)
        size = len(states)
        if not 0 <= self.initial < size:
            raise ValueError(f"Initial state {self.initial} outside 0..{size - 1}")
        for idx, (swap, left, right) in enumerate(states):
            if swap not in (0, 1):
                raise ValueError(f"State {idx} has swap bit {swap}")
            if not (0 <= left < size and 0 <= right < size):
                raise ValueError(f"State {idx} points outside 0..{size - 1}")

    @property
    def swap(self) -> int:
        return self.states[self.initial][0]

    def successor(self, state: int, letter: int) -> int:
        return self.states[state][1 + letter]

    def to_json(self) -> dict[str, Any]:
        return {
            "states": [{"swap": s, "left": l, "right": r} for s, l, r in self.states],
            "initial": self.initial,
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "AutomorphismAutomaton":
        return cls(
            tuple((st["swap"], st["left"], st["right"]) for st in obj["states"]),
            int(obj.get("initial", 0)),
        )


def identity() -> AutomorphismAutomaton:
    return AutomorphismAutomaton(((0, 0, 0),))


def root_swap() -> AutomorphismAutomaton:
    """Exchange the two halves below the root and nothing else."""
    return AutomorphismAutomaton(((1, 1, 1), (0, 1, 1)))


def flip_all() -> AutomorphismAutomaton:
    """Exchange the children of every vertex: the reflection of the tree."""
    return AutomorphismAutomaton(((1, 0, 0),))


def spine_swap(d: int) -> AutomorphismAutomaton:
    """Swap the children of every vertex 0^k with k >= d; 0^K -> 0^d 1^(K-d)."""
    if d < 0:
        raise ValueError(f"Start depth must be non-negative, got {d}")
    swapping, ident = d, d + 1
    states: list[State] = [(0, j + 1, ident) for j in range(d)]
    states.append((1, swapping, ident))
    states.append((0, ident, ident))
    return AutomorphismAutomaton(tuple(states))


def automaton_act(a: AutomorphismAutomaton, word: Iterable[int] | str) -> str:
    """Image of a root-to-vertex path given as a string or sequence of bits."""
    state = a.initial
    out: list[str] = []
    for ch in word:
        x = int(ch)
        if x not in (0, 1):
            raise ValueError(f"Letters must be 0 or 1, got {ch!r}")
        out.append(str(x ^ a.states[state][0]))
        state = a.successor(state, x)
    return "".join(out)


def _reachable(a: AutomorphismAutomaton) -> list[int]:
    order = [a.initial]
    seen = {a.initial}
    queue = deque(order)
    while queue:
        state = queue.popleft()
        for nxt in a.states[state][1:]:
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)
    return order


def automaton_minimize(a: AutomorphismAutomaton) -> AutomorphismAutomaton:
    """Moore refinement on reachable states, then breadth-first numbering."""
    reach = _reachable(a)
    block = {q: a.states[q][0] for q in reach}
    while True:
        signatures = {
            q: (block[q], block[a.states[q][1]], block[a.states[q][2]]) for q in reach
        }
        labels = {sig: idx for idx, sig in enumerate(sorted(set(signatures.values())))}
        refined = {q: labels[signatures[q]] for q in reach}
        if len(set(refined.values())) == len(set(block.values())):
            block = refined
            break
        block = refined
    representative: dict[int, int] = {}
    for q in reach:
        representative.setdefault(block[q], q)
    numbering: dict[int, int] = {block[a.initial]: 0}
    queue = deque([block[a.initial]])
    states: list[State] = []
    while queue:
        b = queue.popleft()
        q = representative[b]
        succ = []
        for nxt in a.states[q][1:]:
            nb = block[nxt]
            if nb not in numbering:
                numbering[nb] = len(numbering)
                queue.append(nb)
            succ.append(numbering[nb])
        states.append((a.states[q][0], succ[0], succ[1]))
    return AutomorphismAutomaton(tuple(states))


def automaton_child(a: AutomorphismAutomaton, letter: int) -> AutomorphismAutomaton:
    """The automorphism induced on the subtree below the child ``letter``."""
    return automaton_minimize(
        AutomorphismAutomaton(a.states, a.successor(a.initial, letter))
    )


def automaton_compose(
    p: AutomorphismAutomaton, q: AutomorphismAutomaton
) -> AutomorphismAutomaton:
    """p ∘ q: apply q first."""
    start = (p.initial, q.initial)
    index = {start: 0}
    pairs = [start]
    states: list[State] = []
    k = 0
    while k < len(pairs):
        i, j = pairs[k]
        sq = q.states[j][0]
        succ = []
        for x in (0, 1):
            nxt = (p.successor(i, x ^ sq), q.successor(j, x))
            if nxt not in index:
                index[nxt] = len(pairs)
                pairs.append(nxt)
            succ.append(index[nxt])
        states.append((p.states[i][0] ^ sq, succ[0], succ[1]))
        k += 1
    return automaton_minimize(AutomorphismAutomaton(tuple(states)))


def automaton_inverse(a: AutomorphismAutomaton) -> AutomorphismAutomaton:
    states = tuple(
        (s, r, l) if s else (s, l, r) for s, l, r in a.states
    )
    return automaton_minimize(AutomorphismAutomaton(states, a.initial))


def automaton_equal(a: AutomorphismAutomaton, b: AutomorphismAutomaton) -> bool:
    """Breadth-first exploration of state pairs; at most |a|·|b| pairs."""
    start = (a.initial, b.initial)
    seen = {start}
    queue = deque([start])
    while queue:
        i, j = queue.popleft()
        if a.states[i][0] != b.states[j][0]:
            return False
        for x in (0, 1):
            nxt = (a.successor(i, x), b.successor(j, x))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return True


def _trivial_states(a: AutomorphismAutomaton) -> set[int]:
    """States from which no swapping state is reachable."""
    size = len(a.states)
    nontrivial = {q for q in range(size) if a.states[q][0]}
    changed = True
    while changed:
        changed = False
        for q in range(size):
            if q not in nontrivial and (
                a.states[q][1] in nontrivial or a.states[q][2] in nontrivial
            ):
                nontrivial.add(q)
                changed = True
    return set(range(size)) - nontrivial


def is_identity_automaton(a: AutomorphismAutomaton) -> bool:
    return a.initial in _trivial_states(a)


def finitary_depth(a: AutomorphismAutomaton) -> int | None:
    """Depth below which ``a`` acts trivially, or None when it never does."""
    trivial = _trivial_states(a)
    memo: dict[int, int] = {}
    on_path: set[int] = set()

    def longest(q: int) -> int | None:
        if q in trivial:
            return 0
        if q in on_path:
            return None
        if q in memo:
            return memo[q]
        on_path.add(q)
        best = 0
        for nxt in a.states[q][1:]:
            sub = longest(nxt)
            if sub is None:
                return None
            best = max(best, sub)
        on_path.discard(q)
        memo[q] = best + 1
        return memo[q]

    return longest(a.initial)


def is_finitary(a: AutomorphismAutomaton) -> bool:
    return finitary_depth(a) is not None


def random_automaton(rng: random.Random, max_states: int = 4) -> AutomorphismAutomaton:
    size = rng.randint(1, max_states)
    states = tuple(
        (rng.randint(0, 1), rng.randrange(size), rng.randrange(size)) for _ in range(size)
    )
    return automaton_minimize(AutomorphismAutomaton(states))
