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

from app.quasibraid.certificates import check_all
from app.quasibraid.expansion import expand_word, simple_expand_word
from app.quasibraid.qelement import q_last_leaf_expand
from app.quasibraid.relations import (
    Step,
    bounded_equal,
    reduced_word_ball,
    search_derivation,
    words_equal_by_certificate,
)
from app.quasibraid.words import is_pure, length, phi
from app.tools.common import InputError, ToolResult, handle_errors, to_q_element, to_word
from app.utils.type import Derivation, QElementDoc, Word

@handle_errors
def cmd_qb_word(op: Literal["phi", "len"], word: Word) -> ToolResult:
    """
    Evaluates φ or the stable length ℓ on a quasi-braid word.

    Args:
        op: "phi" or "len"
        word: the validated word document

    Returns:
        Result dictionary with the permutation or the length bit
    """
    w = to_word(word)
    if op == "phi":
        return {"status": "success", "phi": list(phi(w))}
    if op == "len":
        return {"status": "success", "length": length(w)}
    raise InputError(f"Unknown word operation {op!r}")


@handle_errors
def cmd_qb_expand(
    word: Word | None = None,
    label: int | None = None,
    element: QElementDoc | None = None,
) -> ToolResult:
    """
    Applies an expansion morphism.

    Without ``label`` the dyadic expansion Jₙ -> J₂ₙ is used; with it only that
    label is doubled. A ``element`` document (a pure word with the â flag) is
    expanded at its last puncture.
    """
    if element is not None:
        image = q_last_leaf_expand(to_q_element(element))
        return {"status": "success", "word": image.to_json(), "pure": is_pure(image)}
    if word is None:
        raise InputError("expand needs a word or an element")
    w = to_word(word)
    if label is not None and not 1 <= label <= w.n:
        raise InputError(f"Label {label} is outside 1..{w.n}")
    image = expand_word(w) if label is None else simple_expand_word(w, label)
    return {"status": "success", "word": image.to_json(), "length": length(image)}


@handle_errors
def cmd_qb_check_cert(derivation: Derivation | None = None) -> ToolResult:
    """
    Validates a derivation document, or every stored certificate.

    Returns:
        Result dictionary; status "error" with kind "computation" when a
        certificate fails
    """
    if derivation is None:
        results = check_all()
    else:
        start, end = to_word(derivation.start), to_word(derivation.end)
        steps = [Step(s.pos, s.rel, s.dir, s.support) for s in derivation.steps]
        results = {"derivation": words_equal_by_certificate(start, end, steps)}
    if not all(results.values()):
        failed = sorted(name for name, ok in results.items() if not ok)
        return {
            "status": "error",
            "kind": "computation",
            "message": f"Certificates failed: {', '.join(failed)}",
            "certificates": results,
        }
    return {"status": "success", "certificates": results}


@handle_errors
def cmd_qb_ball(n: int, radius: int) -> ToolResult:
    if n < 2 or radius < 0:
        raise InputError(f"Balls need n >= 2 and radius >= 0, got n={n}, radius={radius}")
    return {"status": "success", "ball": reduced_word_ball(n, radius)}


@handle_errors
def cmd_qb_equal(first: Word, second: Word, depth: int = 6) -> ToolResult:
    """
    Decides equality of two words by invariants, then by bounded search.

    Returns:
        Result dictionary with "equal", "distinct" or "unknown", plus the
        derivation when one was found
    """
    w1, w2 = to_word(first), to_word(second)
    verdict = bounded_equal(w1, w2, depth)
    result: ToolResult = {"status": "success", "verdict": verdict}
    if verdict == "equal":
        steps = search_derivation(w1, w2, depth) or []
        result["steps"] = [s.to_json() for s in steps]
    return result
