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

from typing import Any, Literal

from app.strata.complex import (
    Variant,
    build_complex,
    check_range,
    complex_to_dict,
    euler_characteristic,
    f_vector,
)
from app.strata.homology import boundary_squared_vanishes, chain_complex, homology_f2
from app.tools.common import InputError, ToolResult, handle_errors, validates

Emit = Literal["fvector", "chi", "betti", "complex"]


@handle_errors
def cmd_moduli(
    n: int, variant: Variant, emit: Emit, jobs: int = 1, max_n: int | None = None
) -> ToolResult:
    """
    Builds a moduli cell complex and reports one invariant of it.

    Args:
        n: number of leaves, the complex models M₀,ₙ₊₁(ℝ)
        variant: "tilde", "bar" or "bar-unrooted"
        emit: "fvector", "chi", "betti" or "complex"
        jobs: worker processes for the construction
        max_n: largest n accepted, from the settings

    Returns:
        Result dictionary with the requested invariant
    """
    if emit not in ("fvector", "chi", "betti", "complex"):
        raise InputError(f"Unknown emit target {emit!r}")
    if variant not in ("tilde", "bar", "bar-unrooted"):
        raise InputError(f"Unknown variant {variant!r}")
    validates(check_range)(n, max_n)
    model = build_complex(n, variant, jobs=jobs, max_n=max_n)
    result: dict[str, Any] = {"status": "success", "n": n, "variant": variant}
    if emit == "fvector":
        result["fvector"] = f_vector(model)
    elif emit == "chi":
        result["chi"] = euler_characteristic(model)
    elif emit == "betti":
        cc = chain_complex(model)
        if not boundary_squared_vanishes(cc):
            raise RuntimeError("The boundary map does not square to zero")
        result["betti"] = homology_f2(cc)
    else:
        result["complex"] = complex_to_dict(model)
    return result
