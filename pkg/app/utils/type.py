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
"""Schemas of the JSON documents read and written by the command line."""

from typing import Any, Literal

from pydantic import BaseModel, Field

SCHEMA_VERSION = 1

Pair = tuple[int, int]


class Word(BaseModel):
    """A quasi-braid word: ambient n and the supports of its generators."""

    n: int = Field(ge=1)
    factors: list[Pair] = []


class DerivationStep(BaseModel):
    pos: int = Field(ge=0)
    rel: Literal["square", "slide", "commute"]
    dir: Literal[1, -1] = 1
    support: Pair | None = None


class Derivation(BaseModel):
    start: Word
    end: Word
    steps: list[DerivationStep]


class QElementDoc(BaseModel):
    word: Word
    hat: Literal[0, 1] = 0


class AutomatonState(BaseModel):
    swap: Literal[0, 1]
    left: int = Field(ge=0)
    right: int = Field(ge=0)


class Automaton(BaseModel):
    states: list[AutomatonState] = Field(min_length=1)
    initial: int = Field(default=0, ge=0)


class Symbol(BaseModel):
    """A tree pair, or a spheromorphism when ``automata`` is present.

    Trees are nested two-element arrays whose leaves read 1..n from left to
    right; cyclic trees are an array of three such branches.
    """

    target: Any
    source: Any
    perm: list[int]
    automata: list[Automaton] | None = None
    cyclic: bool = False


class LiftedSymbol(BaseModel):
    base: Symbol
    word: Word


class CommutatorPair(BaseModel):
    f: LiftedSymbol | Symbol
    g: LiftedSymbol | Symbol


class Relation(BaseModel):
    """Π [f_i, g_i] = 1."""

    pairs: list[CommutatorPair] = Field(min_length=1)


class TowerCellDoc(BaseModel):
    variant: Literal["tilde", "bar"]
    level: int = Field(ge=0)
    collection: list[Pair] = []
    perm: list[int] | None = None
    splits: list[Pair] = []
    labels: list[int] | None = None


class RClass(BaseModel):
    preperiod: list[Literal[0, 1]] = []
    period: list[Literal[0, 1]] = Field(min_length=1)


class RunReport(BaseModel):
    """Everything a command prints. Timings are left out unless requested so
    that repeated runs are byte-identical."""

    schema_version: Literal[1] = SCHEMA_VERSION
    service_name: Literal["moduli-tower"] = "moduli-tower"
    command: list[str]
    inputs: dict[str, str] = {}
    status: Literal["success", "error"] = "success"
    outputs: dict[str, Any] = {}
    timings: dict[str, float] | None = None
