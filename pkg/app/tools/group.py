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

from typing import Literal

from app.groups.symbols import (
    GroupElement,
    TreePairSymbol,
    compose_n,
    compose_v,
    equal_n,
    inverse_n,
    inverse_v,
    membership,
    reduce_n,
    reduce_symbol,
    to_spheromorphism,
)
from app.tools.common import InputError, ToolResult, handle_errors, symbol_to_json, to_symbol
from app.utils.type import Symbol

GroupOp = Literal["compose", "inverse", "reduce", "classify", "equal"]

ARITY: dict[str, int] = {"compose": 2, "inverse": 1, "reduce": 1, "classify": 1, "equal": 2}


@handle_errors
def cmd_group(op: GroupOp, symbols: list[Symbol]) -> ToolResult:
    """
    Runs one Thompson/Neretin operation on validated symbol documents.

    Args:
        op: "compose", "inverse", "reduce", "classify" or "equal"
        symbols: one or two symbols; for compose the first acts last

    Returns:
        Result dictionary with the resulting symbol, class or verdict
    """
    if op not in ARITY:
        raise InputError(f"Unknown group operation {op!r}")
    if len(symbols) != ARITY[op]:
        raise InputError(f"{op} takes {ARITY[op]} symbol(s), got {len(symbols)}")
    elements = [to_symbol(doc) for doc in symbols]
    if len({e.cyclic for e in elements}) > 1:
        raise InputError("Cannot mix rooted and cyclic symbols")

    if op == "compose":
        a, b = elements
        if isinstance(a, TreePairSymbol) and isinstance(b, TreePairSymbol):
            product: GroupElement = compose_v(a, b)
        else:
            product = compose_n(to_spheromorphism(a), to_spheromorphism(b))
        return {"status": "success", "symbol": symbol_to_json(product)}
    if op == "inverse":
        (a,) = elements
        inv = inverse_v(a) if isinstance(a, TreePairSymbol) else inverse_n(a)
        return {"status": "success", "symbol": symbol_to_json(inv)}
    if op == "reduce":
        (a,) = elements
        red = reduce_symbol(a) if isinstance(a, TreePairSymbol) else reduce_n(a)
        return {"status": "success", "symbol": symbol_to_json(red)}
    if op == "classify":
        (a,) = elements
        return {"status": "success", "class": membership(a)}
    a, b = elements
    return {"status": "success", "equal": equal_n(to_spheromorphism(a), to_spheromorphism(b))}
