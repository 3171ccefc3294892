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

from app.tools.common import InputError, ToolResult, handle_errors, to_cell, to_symbol
from app.tower.action import act
from app.tower.cells import in_k_infinity
from app.utils.type import Symbol, TowerCellDoc


@handle_errors
def cmd_tower_act(group: Symbol, cell: TowerCellDoc) -> ToolResult:
    """
    Acts with a V or N element on a cell of the matching tower.

    Args:
        group: symbol document, rooted for the tilde tower and cyclic for the bar tower
        cell: tower cell document

    Returns:
        Result dictionary with the canonical image cell
    """
    g, c = to_symbol(group), to_cell(cell)
    if g.cyclic != (c.variant == "bar"):
        kind = "cyclic" if g.cyclic else "rooted"
        raise InputError(f"A {kind} symbol cannot act on the {c.variant} tower")
    image = act(g, c)
    return {"status": "success", "cell": image.to_json(), "dimension": image.dimension}


@handle_errors
def cmd_tower_kinf(cell: TowerCellDoc) -> ToolResult:
    """Reports whether a cyclic-tower cell lies in the distinguished associahedron."""
    c = to_cell(cell)
    return {"status": "success", "in_k_infinity": in_k_infinity(c), "cell": c.to_json()}
