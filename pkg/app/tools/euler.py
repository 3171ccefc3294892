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

from app.euler.cocycle import commutator_data, euler_cocycle, p_check, pair_with_cycle
from app.euler.lifts import LiftedNSymbol, lift, stable_length_seq
from app.quasibraid.words import SectionMethod
from app.tools.common import ToolResult, handle_errors, to_lifted, to_symbol, validates
from app.utils.type import LiftedSymbol, Relation, Symbol


@validates
def _read_lift(doc: LiftedSymbol | Symbol, method: SectionMethod) -> LiftedNSymbol:
    if isinstance(doc, LiftedSymbol):
        return to_lifted(doc)
    return lift(to_symbol(doc), method=method)


@handle_errors
def cmd_euler_cocycle(
    f: LiftedSymbol | Symbol, g: LiftedSymbol | Symbol, method: SectionMethod = "bubble"
) -> ToolResult:
    """
    Evaluates the Euler cocycle c(f, g) in R.

    Args:
        f: first element; plain symbols are lifted along the section word
        g: second element, acting first
        method: section used for plain symbols

    Returns:
        Result dictionary with the class as preperiod and period
    """
    value = euler_cocycle(_read_lift(f, method), _read_lift(g, method))
    return {"status": "success", "cocycle": value.to_json(), "constant": value.constant()}


@handle_errors
def cmd_euler_length(f: LiftedSymbol | Symbol, method: SectionMethod = "bubble") -> ToolResult:
    value = stable_length_seq(_read_lift(f, method))
    return {"status": "success", "stable_length": value.to_json(), "head": value.head(8)}


@handle_errors
def cmd_euler_pair(relation: Relation | None = None, method: SectionMethod = "bubble") -> ToolResult:
    """
    Pairs the Euler class with the 2-cycle of a commutator relation.

    Without a relation document the built-in relation [τ₁, σ][α, δ] = 1 is
    used, after resolving the start depth of the spine swap α.
    """
    if relation is None:
        data = commutator_data()
        pairs = data.relation()
        extra: ToolResult = {"offset": data.offset, "relation": data.to_json()}
    else:
        pairs = [(_read_lift(p.f, method), _read_lift(p.g, method)) for p in relation.pairs]
        extra = {}
    return {"status": "success", "pairing": pair_with_cycle(pairs), **extra}


@handle_errors
def cmd_euler_p_check() -> ToolResult:
    """Checks the pure quasi-braid p: φ(p) = id, ℓ(p) = 1 and its derivation."""
    report = p_check()
    if not (report["pure"] and report["length"] == 1 and report["certificate"]):
        return {"status": "error", "kind": "computation", "message": "p lost a property", **report}
    return {"status": "success", **report}
