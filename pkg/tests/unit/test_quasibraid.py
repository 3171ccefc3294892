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

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.core.interval import Interval
from app.quasibraid.certificates import (
    check_all,
    commute_expansion,
    p_word,
    square_expansion,
    stored_certificates,
    wreath_commutation,
)
from app.quasibraid.expansion import (
    expand_generator,
    expand_word,
    simple_expand_word,
    wreath_embed_left,
    wreath_embed_right,
)
from app.quasibraid.qelement import (
    QElement,
    a_hat,
    length_bar,
    q_compose,
    q_identity,
    q_last_leaf_expand,
)
from app.quasibraid.relations import (
    Step,
    apply_relation,
    bounded_equal,
    invert_derivation,
    reduced_word_ball,
    run_derivation,
    search_derivation,
    words_equal_by_certificate,
)
from app.quasibraid.words import (
    QBWord,
    abelianization,
    alpha_hat,
    free_reduce,
    inverse_word,
    is_pure,
    j_s_automorphism,
    length,
    phi,
    random_pure_word,
    random_word,
    section_word,
)

words = st.integers(min_value=2, max_value=6).flatmap(
    lambda n: st.lists(
        st.tuples(st.integers(1, n - 1), st.integers(1, n)).filter(lambda t: t[0] < t[1]),
        max_size=6,
    ).map(lambda pairs: QBWord.of(n, pairs))
)


def test_phi_and_length_of_generators() -> None:
    assert phi(QBWord.of(3, [(1, 2)])) == (2, 1, 3)
    assert length(QBWord.of(3, [(1, 2)])) == 1
    assert length(QBWord.of(3, [(1, 3)])) == 0
    assert str(QBWord(3)) == "1"


def test_p_is_pure_of_length_one() -> None:
    p = p_word()
    assert is_pure(p), "φ(p) must be the identity"
    assert length(p) == 1


def test_alpha_hat_lifts_the_reversal() -> None:
    assert alpha_hat(3).factors == (Interval(1, 2), Interval(2, 3), Interval(1, 2))
    for n in range(2, 7):
        assert phi(alpha_hat(n)) == tuple(range(n, 0, -1))


def test_j_s_reflects_supports() -> None:
    assert j_s_automorphism(QBWord.of(4, [(1, 2), (2, 4)])) == QBWord.of(4, [(3, 4), (1, 3)])


@given(words)
def test_free_reduce_keeps_invariants(w: QBWord) -> None:
    reduced = free_reduce(w * inverse_word(w))
    assert len(reduced) == 0, "w·w⁻¹ must cancel completely"
    assert phi(free_reduce(w)) == phi(w)
    assert length(free_reduce(w)) == length(w)


@given(st.permutations(list(range(1, 7))), st.sampled_from(["bubble", "reversal"]))
def test_section_words_lift_their_permutation(images: list[int], method: str) -> None:
    sigma = tuple(images)
    assert phi(section_word(sigma, method)) == sigma  # type: ignore[arg-type]


def test_abelianization_counts_by_support_size() -> None:
    assert abelianization(QBWord.of(4, [(1, 2), (2, 3), (1, 4)])) == (0, 0, 1)


def test_expand_generator() -> None:
    assert expand_generator(Interval(1, 2)) == [Interval(1, 4), Interval(1, 2), Interval(3, 4)]


@given(words)
@settings(max_examples=200)
def test_expansion_keeps_length(w: QBWord) -> None:
    assert length(expand_word(w)) == length(w)
    for m in range(1, w.n + 1):
        assert length(simple_expand_word(w, m)) == length(w)


def test_expansion_keeps_pure_words_pure() -> None:
    rng = random.Random(3)
    for _ in range(100):
        p = random_pure_word(rng, rng.randint(2, 6), rng.randint(0, 6))
        assert is_pure(p)
        assert is_pure(expand_word(p))


def test_wreath_embedding_repeats_blocks() -> None:
    assert wreath_embed_right(QBWord.of(2, [(1, 2)]), 1) == QBWord.of(4, [(1, 2), (3, 4)])


@given(words, st.integers(min_value=0, max_value=2))
def test_left_wreath_embedding_expands_blocks(w: QBWord, k: int) -> None:
    embedded = wreath_embed_left(w, k)
    assert embedded.n == w.n * 2**k
    assert length(embedded) == length(w)
    sigma, block = phi(w), 2**k
    expected = tuple((sigma[x // block] - 1) * block + x % block + 1 for x in range(embedded.n))
    assert phi(embedded) == expected, "Blocks move rigidly"


def test_left_wreath_embedding_of_a_generator() -> None:
    w = QBWord.of(2, [(1, 2)])
    assert wreath_embed_left(w, 0) == w
    assert wreath_embed_left(w, 1) == QBWord.of(4, [(1, 4), (1, 2), (3, 4)])
    assert wreath_embed_left(w, 2) == expand_word(expand_word(w))


def test_relations() -> None:
    slide = apply_relation(QBWord.of(3, [(1, 3), (1, 2)]), Step(0, "slide", 1))
    assert slide == QBWord.of(3, [(2, 3), (1, 3)])
    back = apply_relation(slide, Step(0, "slide", -1))
    assert back == QBWord.of(3, [(1, 3), (1, 2)])
    commuted = apply_relation(QBWord.of(4, [(1, 2), (3, 4)]), Step(0, "commute", 1))
    assert commuted == QBWord.of(4, [(3, 4), (1, 2)])
    grown = apply_relation(QBWord(3), Step(0, "square", -1, Interval(1, 2)))
    assert apply_relation(grown, Step(0, "square", 1)) == QBWord(3)


def test_invalid_steps_are_rejected() -> None:
    with pytest.raises(ValueError):
        apply_relation(QBWord.of(3, [(1, 2), (2, 3)]), Step(0, "commute", 1))
    with pytest.raises(ValueError):
        apply_relation(QBWord.of(3, [(1, 2)]), Step(0, "square", 1))
    with pytest.raises(ValueError):
        Step(0, "braid", 1)  # type: ignore[arg-type]
    assert not words_equal_by_certificate(
        QBWord.of(3, [(1, 2), (2, 3)]), QBWord(3), [Step(0, "square", 1)]
    )


def test_derivations_invert() -> None:
    for cert in stored_certificates():
        back = invert_derivation(cert.start, cert.steps)
        assert run_derivation(cert.end, back)[-1] == cert.start, cert.name


def test_stored_certificates_hold() -> None:
    results = check_all()
    assert results and all(results.values()), f"Failing certificates: {results}"


@pytest.mark.parametrize("n", [2, 3, 5])
def test_expansion_respects_squares(n: int) -> None:
    for lo in range(1, n):
        for hi in range(lo + 1, n + 1):
            cert = square_expansion(n, Interval(lo, hi))
            assert cert.check(), cert.name
            assert cert.end == QBWord(2 * n)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_expansion_respects_commutation(n: int) -> None:
    supports = [Interval(lo, hi) for lo in range(1, n) for hi in range(lo + 1, n + 1)]
    pairs = [(t, u) for t in supports for u in supports if t.disjoint(u)]
    assert pairs
    for t, u in pairs:
        assert commute_expansion(n, t, u).check(), f"{t} and {u}"


@pytest.mark.parametrize("k", [1, 2, 3])
def test_wreath_images_commute(k: int) -> None:
    for lo in range(1, 2**k):
        for hi in range(lo + 1, 2**k + 1):
            cert = wreath_commutation(k, Interval(lo, hi))
            assert cert.check(), cert.name
            left = wreath_embed_left(QBWord.of(2**k, [(lo, hi)]), 1)
            right = wreath_embed_right(QBWord.of(2, [(1, 2)]), k)
            assert (cert.start, cert.end) == (left * right, right * left)


def test_bounded_equality() -> None:
    lhs = QBWord.of(3, [(1, 3), (1, 2)])
    rhs = QBWord.of(3, [(2, 3), (1, 3)])
    assert bounded_equal(lhs, rhs, 2) == "equal"
    steps = search_derivation(lhs, rhs, 2)
    assert steps is not None and words_equal_by_certificate(lhs, rhs, steps)
    assert bounded_equal(QBWord.of(3, [(1, 2)]), QBWord(3), 4) == "distinct"


def test_reduced_word_ball_counts() -> None:
    stats = reduced_word_ball(3, 1)
    assert stats["generators"] == 3
    assert stats["reduced_words"] == 4
    two = reduced_word_ball(3, 2)
    assert two["reduced_words"] == 1 + 3 + 3 * 2, "Only immediate repeats cancel"
    with pytest.raises(ValueError):
        reduced_word_ball(1, 1)


def test_q_elements() -> None:
    with pytest.raises(ValueError):
        QElement(QBWord.of(3, [(1, 2)]))
    square = q_compose(a_hat(4), a_hat(4))
    assert square.hat == 0 and is_pure(square.word)
    assert q_compose(q_identity(4), a_hat(4)) == a_hat(4)
    assert length_bar(a_hat(4)) == 0


@pytest.mark.parametrize("n", range(2, 7))
def test_last_leaf_expansion_of_a_hat(n: int) -> None:
    image = q_last_leaf_expand(a_hat(n))
    assert is_pure(image)
    assert image.factors == alpha_hat(n).factors + (Interval(1, n),)


def test_random_words_stay_in_range() -> None:
    rng = random.Random(11)
    w = random_word(rng, 4, 10)
    assert len(w) == 10 and all(t.hi <= 4 for t in w.factors)
