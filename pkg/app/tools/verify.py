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
"""The acceptance battery behind ``verify``.

Each check returns whether it passed and a small JSON-able detail. The quick
suite runs the same checks over smaller ranges with fewer random samples.
"""

import logging
import math
import random
import time
from collections.abc import Callable
from typing import Any, Literal

from opentelemetry import trace
from opentelemetry.trace import Status, StatusCode

from app.core.interval import Interval, NestedCollection
from app.core.unrooted import UnrootedLabeledTree
from app.core.unrooted import random_member as random_unrooted_member
from app.euler.cocycle import (
    cocycle_identity_holds,
    commutator_data,
    euler_cocycle,
    pair_with_cycle,
    relation_holds,
)
from app.euler.lifts import random_lift
from app.groups.cyclic import inversion, rotation
from app.groups.prefix import BinaryTree, CyclicTree, PrefixTree
from app.groups.symbols import (
    GroupElement,
    compose_n,
    compose_v,
    equal_n,
    identity_n,
    identity_v,
    inverse_n,
    inverse_v,
    random_spheromorphism,
    random_tree_pair,
    symbols_equal_v,
    to_spheromorphism,
    transposition_symbol,
)
from app.quasibraid.certificates import check_all, p_word
from app.quasibraid.expansion import expand_word
from app.quasibraid.qelement import a_hat, q_last_leaf_expand
from app.quasibraid.relations import Relation, Step, apply_relation
from app.quasibraid.words import (
    QBWord,
    alpha_hat,
    is_pure,
    length,
    phi,
    random_pure_word,
    random_word,
)
from app.strata.complex import Variant, build_complex, euler_characteristic, f_vector
from app.strata.homology import boundary_squared_vanishes, chain_complex, homology_f2
from app.strata.stratum import StratumClass
from app.strata.stratum import random_member as random_stratum_member
from app.tools.common import InputError, ToolResult, handle_errors
from app.tower.action import act, act_on_representative, check_t_stabilizes
from app.tower.cells import (
    TowerCell,
    TowerVariant,
    cells_equal,
    k_infinity_cells,
    make_bar_cell,
    random_cell,
)

Suite = Literal["acceptance", "quick"]
Outcome = tuple[bool, dict[str, Any]]
Check = Callable[[random.Random, bool], Outcome]

tracer = trace.get_tracer(__name__)


# Cell complexes


def check_tiling(rng: random.Random, quick: bool) -> Outcome:
    """n! top cells in the rooted complex and n!/2 in its quotient."""
    found: dict[str, list[int]] = {"tilde": [], "bar": []}
    ok = True
    for n in range(3, 6 if quick else 7):
        tops: dict[Variant, int] = {
            "tilde": math.factorial(n),
            "bar": math.factorial(n) // 2,
        }
        for variant, expected in tops.items():
            model = build_complex(n, variant)
            top = len(model.cells_of_dim(model.top_dimension))
            found[variant].append(top)
            ok = ok and top == expected
    return ok, found


def check_fvectors(rng: random.Random, quick: bool) -> Outcome:
    expected: dict[tuple[Variant, int], tuple[list[int], int]] = {
        ("tilde", 3): ([6, 6], 0),
        ("bar", 3): ([3, 3], 0),
        ("tilde", 4): ([30, 60, 24], -6),
        ("bar", 4): ([15, 30, 12], -3),
    }
    found: dict[str, Any] = {}
    ok = True
    for (variant, n), want in expected.items():
        model = build_complex(n, variant)
        got = (f_vector(model), euler_characteristic(model))
        found[f"{variant}-{n}"] = {"fvector": got[0], "chi": got[1]}
        ok = ok and got == want
    return ok, found


def check_model_agreement(rng: random.Random, quick: bool) -> Outcome:
    """The antipodal quotient and the unrooted-tree model give the same complex."""
    found: dict[str, Any] = {}
    ok = True
    for n in range(3, 5 if quick else 6):
        quotient = build_complex(n, "bar")
        unrooted = build_complex(n, "bar-unrooted")
        a = [f_vector(quotient), homology_f2(chain_complex(quotient))]
        b = [f_vector(unrooted), homology_f2(chain_complex(unrooted))]
        found[str(n)] = {"quotient": a, "unrooted": b}
        ok = ok and a == b
    return ok, found


def check_boundary(rng: random.Random, quick: bool) -> Outcome:
    # building the quotient raises when the antipodal map fixes a class
    found: dict[str, bool] = {}
    for n in range(3, 6 if quick else 7):
        for variant in ("tilde", "bar"):
            model = build_complex(n, variant)  # type: ignore[arg-type]
            found[f"{variant}-{n}"] = boundary_squared_vanishes(chain_complex(model))
    return all(found.values()), found


def check_betti(rng: random.Random, quick: bool) -> Outcome:
    bar = homology_f2(chain_complex(build_complex(4, "bar")))
    tilde = homology_f2(chain_complex(build_complex(4, "tilde")))
    return bar == [1, 5, 1] and tilde == [1, 8, 1], {"bar-4": bar, "tilde-4": tilde}


# Quasi-braids


def check_length_relations(rng: random.Random, quick: bool) -> Outcome:
    """Every instance of the three defining relations keeps φ and ℓ."""
    moves: list[tuple[Relation, int]] = [("slide", 1), ("slide", -1), ("commute", 1)]
    instances = 0
    for n in range(2, 7 if quick else 9):
        gens = [Interval(lo, hi) for lo in range(1, n) for hi in range(lo + 1, n + 1)]
        for t in gens:
            square = apply_relation(QBWord(n), Step(0, "square", -1, t))
            instances += 1
            if length(square) or not is_pure(square):
                return False, {"n": n, "square": str(t)}
            for u in gens:
                w = QBWord(n, (t, u))
                for rel, direction in moves:
                    try:
                        v = apply_relation(w, Step(0, rel, direction))
                    except ValueError:
                        continue
                    instances += 1
                    if length(v) != length(w) or phi(v) != phi(w):
                        return False, {"n": n, "word": str(w), "relation": rel}
    return True, {"instances": instances}


def check_expansion(rng: random.Random, quick: bool) -> Outcome:
    samples = 100 if quick else 500
    for _ in range(samples):
        n = rng.randint(2, 6)
        w = random_word(rng, n, rng.randint(0, 6))
        if length(expand_word(w)) != length(w):
            return False, {"word": str(w)}
        p = random_pure_word(rng, n, rng.randint(0, 6))
        if not is_pure(expand_word(p)):
            return False, {"pure": str(p)}
    return True, {"samples": samples}


def check_pure_p(rng: random.Random, quick: bool) -> Outcome:
    p = p_word()
    return is_pure(p) and length(p) == 1, {"word": str(p), "length": length(p)}


def check_certificates(rng: random.Random, quick: bool) -> Outcome:
    results = check_all()
    return all(results.values()), results


def check_last_leaf_expansion(rng: random.Random, quick: bool) -> Outcome:
    """Expanding â at the last puncture gives the pure word α̂·α_[1,n]."""
    found: dict[str, str] = {}
    for n in range(2, 7):
        image = q_last_leaf_expand(a_hat(n))
        predicted = alpha_hat(n).factors + (Interval(1, n),)
        found[str(n)] = str(image)
        if not is_pure(image) or image.factors != predicted:
            return False, found
    return True, found


# Groups and towers


def check_group_axioms(rng: random.Random, quick: bool) -> Outcome:
    samples = 20 if quick else 100
    for _ in range(samples):
        a, b, c = (random_tree_pair(rng, rng.randint(1, 6)) for _ in range(3))
        if not symbols_equal_v(compose_v(compose_v(a, b), c), compose_v(a, compose_v(b, c))):
            return False, {"group": "V", "law": "associativity"}
        if not symbols_equal_v(compose_v(a, inverse_v(a)), identity_v()):
            return False, {"group": "V", "law": "inverse"}
        if not symbols_equal_v(compose_v(identity_v(), a), a):
            return False, {"group": "V", "law": "identity"}
        f, g, h = (random_spheromorphism(rng, rng.randint(1, 4), 4) for _ in range(3))
        if not equal_n(compose_n(compose_n(f, g), h), compose_n(f, compose_n(g, h))):
            return False, {"group": "N", "law": "associativity"}
        if not equal_n(compose_n(f, inverse_n(f)), identity_n()):
            return False, {"group": "N", "law": "inverse"}
        if not equal_n(compose_n(identity_n(), f), f):
            return False, {"group": "N", "law": "identity"}
    return True, {"triples": samples}


def random_element(rng: random.Random, variant: TowerVariant) -> GroupElement:
    """A small V- or N-element acting on the given tower."""
    tree_cls: type[PrefixTree] = CyclicTree if variant == "bar" else BinaryTree
    low = 3 if variant == "bar" else 1
    if rng.random() < 0.5:
        return random_tree_pair(rng, rng.randint(low, low + 3), tree_cls)
    return random_spheromorphism(rng, rng.randint(low, low + 2), 3, tree_cls)


def other_representative(rng: random.Random, c: TowerCell) -> tuple[Any, tuple[int, ...]]:
    """Splits and labels of a random member of the class of ``c``."""
    cell = c.cell
    if isinstance(cell, StratumClass):
        member = random_stratum_member(rng, cell)
        return member.collection, member.perm
    if not isinstance(cell, UnrootedLabeledTree):
        raise TypeError(f"Unexpected cell type {type(cell).__name__}")
    member = random_unrooted_member(rng, cell)
    return member.splits, member.labels


def check_action(rng: random.Random, quick: bool) -> Outcome:
    """(gh)·c = g·(h·c) and the result does not depend on the representative."""
    samples = 20 if quick else 100
    for variant in ("tilde", "bar"):
        for _ in range(samples):
            low = 1 if variant == "tilde" else 0
            c = random_cell(rng, variant, rng.randint(low, low + 1))  # type: ignore[arg-type]
            g = random_element(rng, variant)  # type: ignore[arg-type]
            h = random_element(rng, variant)  # type: ignore[arg-type]
            gh = compose_n(to_spheromorphism(g), to_spheromorphism(h))
            if not cells_equal(act(gh, c), act(g, act(h, c))):
                return False, {"variant": variant, "law": "action", "cell": c.to_json()}
            splits, labels = other_representative(rng, c)
            moved = act_on_representative(g, c.level, c.variant, splits, labels)
            if not cells_equal(moved, act(g, c)):
                return False, {"variant": variant, "law": "representative", "cell": c.to_json()}
    return True, {"pairs": 2 * samples}


def check_k_infinity(rng: random.Random, quick: bool) -> Outcome:
    """Rotations and the inversion keep the distinguished associahedron; a
    transposition does not."""
    cells = k_infinity_cells(1)
    if quick:
        cells = rng.sample(cells, min(len(cells), 10))
    found: dict[str, bool] = {}
    for k, r in ((0, 1), (1, 2), (1, 5), (2, 7)):
        found[f"rotation-{k}-{r}"] = check_t_stabilizes(rotation(k, r), cells)
    found["inversion"] = check_t_stabilizes(inversion(), cells)
    top = make_bar_cell(1, UnrootedLabeledTree(5, NestedCollection(5), tuple(range(6))))
    found["transposition-breaks"] = not check_t_stabilizes(
        transposition_symbol(CyclicTree.complete(1), 1, 2), [top]
    )
    return all(found.values()), found


# Euler class


def check_cocycle(rng: random.Random, quick: bool) -> Outcome:
    """The cocycle identity on random triples; c does not see the lifts."""
    triples = 20 if quick else 100
    for _ in range(triples):
        f, g, h = (random_spheromorphism(rng, rng.randint(1, 3), 3) for _ in range(3))
        if not cocycle_identity_holds(f, g, h):
            return False, {"law": "cocycle", "f": f.to_json(), "g": g.to_json(), "h": h.to_json()}
    resamples = 5 if quick else 20
    for _ in range(resamples):
        f, g = (random_spheromorphism(rng, rng.randint(1, 3), 3) for _ in range(2))
        fixed = euler_cocycle(f, g)
        if euler_cocycle(random_lift(rng, f), random_lift(rng, g)) != fixed:
            return False, {"law": "lift-independence", "f": f.to_json(), "g": g.to_json()}
        if euler_cocycle(f, g, "reversal") != fixed:
            return False, {"law": "section-method", "f": f.to_json(), "g": g.to_json()}
    return True, {"triples": triples, "resamples": resamples}


def check_pairing(rng: random.Random, quick: bool) -> Outcome:
    """[τ₁, σ][α, δ] = 1 in N and the Euler class takes the value 1 on it,
    whatever lifts are chosen."""
    data = commutator_data()
    relation = data.relation()
    if not relation_holds(relation):
        return False, {"offset": data.offset, "relation": False}
    value = pair_with_cycle(relation)
    relifted = []
    for _ in range(3 if quick else 10):
        fresh = [(random_lift(rng, f.base), random_lift(rng, g.base)) for f, g in relation]
        relifted.append(pair_with_cycle(fresh))
    detail = {"offset": data.offset, "value": value, "relifted": relifted}
    return value == 1 and all(v == 1 for v in relifted), detail


CHECKS: list[tuple[str, Check]] = [
    ("tiling", check_tiling),
    ("fvectors", check_fvectors),
    ("model-agreement", check_model_agreement),
    ("boundary", check_boundary),
    ("betti", check_betti),
    ("length-relations", check_length_relations),
    ("expansion", check_expansion),
    ("pure-p", check_pure_p),
    ("certificates", check_certificates),
    ("last-leaf-expansion", check_last_leaf_expansion),
    ("group-axioms", check_group_axioms),
    ("action", check_action),
    ("k-infinity", check_k_infinity),
    ("cocycle", check_cocycle),
    ("pairing", check_pairing),
]


@handle_errors
def run_suite(suite: Suite = "acceptance", seed: int = 0) -> ToolResult:
    """Run every check with its own seeded generator.

    A check that raises counts as failed; the suite reports a computation
    error as soon as any check fails.
    """
    if suite not in ("acceptance", "quick"):
        raise InputError(f"Unknown suite {suite!r}")
    quick = suite == "quick"
    checks: dict[str, Any] = {}
    timings: dict[str, float] = {}
    for index, (name, check) in enumerate(CHECKS):
        rng = random.Random(seed * 1000 + index)
        start = time.perf_counter()
        with tracer.start_as_current_span(f"verify.{name}") as span:
            try:
                passed, detail = check(rng, quick)
            except Exception as e:
                logging.exception(f"Check {name} raised")
                passed, detail = False, {"error": f"{type(e).__name__}: {e}"}
            if not passed:
                span.set_status(Status(StatusCode.ERROR, f"Check {name} failed"))
        timings[name] = round(time.perf_counter() - start, 3)
        checks[name] = {"passed": passed, "detail": detail}
        logging.info(f"Check {name}: {'passed' if passed else 'FAILED'} in {timings[name]}s")
    failed = [name for name, result in checks.items() if not result["passed"]]
    result: ToolResult = {
        "status": "error" if failed else "success",
        "suite": suite,
        "seed": seed,
        "checks": checks,
        "timings": timings,
    }
    if failed:
        result["kind"] = "computation"
        result["message"] = f"Failed checks: {', '.join(failed)}"
    return result
