import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import act, pairs_synchronizing
from syncbound.automaton import (
    Automaton,
    StateSet,
    apply_word,
    corank,
    format_word,
    is_synchronizing,
    parse_word,
    preimages,
    singleton_kernel,
)
from syncbound.errors import InvalidWordError


@st.composite
def automata(draw, max_n=12, max_m=3):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_m))
    rows = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=m, max_size=m), min_size=n, max_size=n))
    return Automaton(rows)


@st.composite
def automaton_and_words(draw, count=2, max_len=8):
    A = draw(automata())
    words = [tuple(draw(st.lists(st.integers(0, A.m - 1), max_size=max_len))) for _ in range(count)]
    return A, words


def test_apply_word_examples(c3):
    Q = StateSet.full(3)
    assert apply_word(Q, parse_word("b", 2), c3) == StateSet.of(3, [1, 2])
    assert apply_word(Q, parse_word("baab", 2), c3) == StateSet.of(3, [1])
    S = StateSet.of(3, [0, 2])
    assert apply_word(S, (), c3) == S


def test_invalid_letter(c3):
    with pytest.raises(InvalidWordError):
        apply_word(StateSet.full(3), (0, 2), c3)
    with pytest.raises(InvalidWordError):
        parse_word("c", 2)


def test_corank_examples(c3):
    assert corank((), c3) == 0
    assert corank(parse_word("b", 2), c3) == 1
    assert corank(parse_word("baab", 2), c3) == 2


def test_singleton_kernel_examples(c3):
    assert singleton_kernel(parse_word("b", 2), c3) == StateSet.of(3, [2])
    assert singleton_kernel((), c3) == StateSet.full(3)
    # corank 1 gives at least n - 2r = 1 state
    assert len(singleton_kernel((1,), c3)) >= 3 - 2


def test_is_synchronizing_examples(c3):
    assert is_synchronizing(c3)
    assert not is_synchronizing(Automaton([(1,), (2,), (0,)]))
    assert is_synchronizing(Automaton([(0, 0)]))


def test_automaton_validation():
    with pytest.raises(ValueError):
        Automaton([(0, 3), (1, 1)])
    with pytest.raises(ValueError):
        Automaton([(0, 1), (1,)])


def test_format_word_wide_alphabet():
    assert format_word((0, 1, 2), 3) == "abc"
    assert format_word((0, 27), 30) == "[0,27]"
    assert parse_word("[0,27]", 30) == (0, 27)


def test_wide_automaton_images():
    # more than one 8-bit chunk
    n = 21
    A = Automaton([((q * 5 + 1) % n, q // 2) for q in range(n)])
    S = StateSet.of(n, [0, 3, 8, 9, 17, 20])
    for w in [(0,), (1,), (0, 1, 1, 0), (1, 1, 1)]:
        assert set(apply_word(S, w, A)) == act(A.delta, set(S), w)


@settings(max_examples=200, deadline=None)
@given(automaton_and_words())
def test_action_is_associative_and_matches_sets(aw):
    A, (w, v) = aw
    Q = StateSet.full(A.n)
    left = apply_word(Q, w + v, A)
    assert left == apply_word(apply_word(Q, w, A), v, A)
    assert set(left) == act(A.delta, range(A.n), w + v)


@settings(max_examples=200, deadline=None)
@given(automaton_and_words())
def test_rank_never_grows(aw):
    A, (w, v) = aw
    Q = StateSet.full(A.n)
    wv = len(apply_word(Q, w + v, A))
    assert wv <= len(apply_word(Q, w, A))
    assert wv <= len(apply_word(Q, v, A))


@settings(max_examples=200, deadline=None)
@given(automaton_and_words(count=1))
def test_preimages_partition_and_kernel(aw):
    A, (u,) = aw
    blocks = preimages(u, A)
    union = 0
    for block in blocks.values():
        assert union & block == 0
        union |= block
    assert union == A.full_mask
    kernel = singleton_kernel(u, A)
    for block in blocks.values():
        if block.bit_count() >= 2:
            assert kernel.mask & block == 0


@settings(max_examples=300, deadline=None)
@given(automaton_and_words(count=1, max_len=12))
def test_kernel_size_bound(aw):
    A, (u,) = aw
    r = corank(u, A)
    if 2 * r <= A.n - 2:
        assert len(singleton_kernel(u, A)) >= A.n - 2 * r


@settings(max_examples=300, deadline=None)
@given(automata(max_n=8))
def test_is_synchronizing_matches_pair_oracle(A):
    assert is_synchronizing(A) == pairs_synchronizing(A.delta)
