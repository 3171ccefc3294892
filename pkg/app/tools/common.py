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
"""Shared plumbing for the command handlers: reading validated documents,
turning schemas into domain objects, and the result-dictionary convention."""

import functools
import hashlib
import logging
from collections.abc import Callable
from pathlib import Path
from typing import Any, TypeVar

from pydantic import TypeAdapter, ValidationError

from app.core.interval import NestedCollection
from app.core.unrooted import UnrootedLabeledTree
from app.euler.lifts import LiftedNSymbol, LiftedVSymbol, lift
from app.groups.automaton import AutomorphismAutomaton
from app.groups.prefix import BinaryTree, CyclicTree, PrefixTree
from app.groups.symbols import SpheromorphismSymbol, TreePairSymbol
from app.quasibraid.qelement import QElement
from app.quasibraid.words import QBWord
from app.tower.cells import TowerCell, leaf_count, make_bar_cell, make_tilde_cell
from app.utils import type as schemas

ToolResult = dict[str, Any]
T = TypeVar("T")


def read_document(path: str, model: Any) -> tuple[Any, str]:
    """Validate a JSON file against ``model``, a schema class or a union of
    them; returns the document with the SHA-256 of the raw bytes."""
    raw = Path(path).read_bytes()
    return TypeAdapter(model).validate_json(raw), hashlib.sha256(raw).hexdigest()


class InputError(ValueError):
    """A document or argument rejected before any computation starts."""


def validates(func: Callable[..., T]) -> Callable[..., T]:
    """Report the domain errors of a converter or argument check as input errors."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> T:
        try:
            return func(*args, **kwargs)
        except InputError:
            raise
        except (ValueError, KeyError) as e:
            raise InputError(str(e)) from e

    return wrapper


def handle_errors(func: Callable[..., ToolResult]) -> Callable[..., ToolResult]:
    """Turn exceptions into ``{"status": "error", ...}`` results.

    Only validation failures count as input errors; anything raised once the
    computation runs, a ``ValueError`` included, is a computation error.
    """

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> ToolResult:
        try:
            return func(*args, **kwargs)
        except (InputError, ValidationError, OSError) as e:
            logging.warning(f"{func.__name__} rejected its input: {e}")
            return {"status": "error", "kind": "input", "message": str(e)}
        except Exception as e:
            logging.exception(f"{func.__name__} failed while computing")
            return {
                "status": "error",
                "kind": "computation",
                "message": f"{type(e).__name__}: {e}",
            }

    return wrapper


@validates
def to_word(doc: schemas.Word) -> QBWord:
    return QBWord.of(doc.n, doc.factors)


@validates
def to_automaton(doc: schemas.Automaton) -> AutomorphismAutomaton:
    return AutomorphismAutomaton(
        tuple((s.swap, s.left, s.right) for s in doc.states), doc.initial
    )


@validates
def to_symbol(doc: schemas.Symbol) -> TreePairSymbol | SpheromorphismSymbol:
    tree_cls: type[PrefixTree] = CyclicTree if doc.cyclic else BinaryTree
    target, source = tree_cls.from_json(doc.target), tree_cls.from_json(doc.source)
    if doc.automata is None:
        return TreePairSymbol(target, source, tuple(doc.perm))
    automata = tuple(to_automaton(a) for a in doc.automata)
    return SpheromorphismSymbol(target, source, tuple(doc.perm), automata)


def symbol_to_json(s: TreePairSymbol | SpheromorphismSymbol) -> dict[str, Any]:
    return {**s.to_json(), "cyclic": s.cyclic}


@validates
def to_lifted(doc: schemas.LiftedSymbol) -> LiftedNSymbol:
    base, word = to_symbol(doc.base), to_word(doc.word)
    if isinstance(base, TreePairSymbol) and isinstance(base.target, BinaryTree):
        lifted = LiftedVSymbol(base.target, base.source, word)
        if lifted.perm != base.perm:
            raise ValueError(f"Word {word} induces {lifted.perm}, not the leaf map {base.perm}")
        return lift(lifted)
    return lift(base, word)


@validates
def to_q_element(doc: schemas.QElementDoc) -> QElement:
    return QElement(to_word(doc.word), doc.hat)


@validates
def to_cell(doc: schemas.TowerCellDoc) -> TowerCell:
    n = leaf_count(doc.variant, doc.level)
    if doc.variant == "tilde":
        if doc.perm is None:
            raise ValueError("A tilde cell needs a permutation")
        return make_tilde_cell(doc.level, NestedCollection.of(n, doc.collection), tuple(doc.perm))
    if doc.labels is None:
        raise ValueError("A bar cell needs cyclic labels")
    splits = NestedCollection.of(n - 1, doc.splits)
    return make_bar_cell(doc.level, UnrootedLabeledTree(n - 1, splits, tuple(doc.labels)))
