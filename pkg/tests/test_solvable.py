import random

import pytest
from hypothesis import given, settings

from freesolv.abelian_fox import derivative_as_ring_element, fox_abelian, wp_metabelian
from freesolv.solvable import (
    PartitionFunction,
    SolvableRingElement,
    abelian_partition,
    collect_similar_terms,
    derivative_difference_is_zero,
    fox_solvable,
    partition,
    partition_chain,
    prefix_set,
    wp_solvable,
)
from freesolv.words import (
    Word,
    abelianize,
    commutator,
    concat,
    conjugate,
    free_reduce,
    generator,
    invert,
    parse_word,
    random_word,
)
from oracles import naive_partition_class2, naive_wp_class3
from strategies import word_pairs, words

COMM = parse_word("abAB", 2)
TWO_SQUARES = parse_word("bababABBBA", 2)


def double_commutator():
    a, b = generator(1, 2), generator(2, 2)
    c = commutator(a, b)
    return free_reduce(commutator(c, conjugate(c, invert(a))))


def as_abelian(e: SolvableRingElement):
    return {abelianize(e.prefix_word(j)): c for c, j in e.terms}


def test_prefix_set():
    D = prefix_set(parse_word("ab", 2))
    assert [str(p) for p in D] == ["", "a", "ab"]
    assert len(prefix_set(Word((), 2))) == 1
    assert [str(p) for p in prefix_set(COMM)] == ["", "a", "ab", "abA", "abAB"]


@pytest.mark.parametrize("text,reps", [
    ("abAB", (0, 1, 2, 3, 0)),
    ("aA", (0, 1, 0)),
    ("ab", (0, 1, 2)),
    ("", (0,)),
])
def test_abelian_partition(text, reps):
    assert abelian_partition(prefix_set(parse_word(text, 2))).reps == reps


def test_collect():
    P = PartitionFunction(1, (0, 1, 2, 3, 0))
    assert collect_similar_terms([(1, 3), (-1, 4)], P) == {3: 1, 0: -1}
    assert collect_similar_terms([(1, 2), (-1, 2)], P) == {}
    assert collect_similar_terms([], P) == {}
    assert list(collect_similar_terms([(1, 4), (1, 3), (1, 0)], P)) == [0, 3]


def test_derivative_difference():
    w = parse_word("aA", 2)
    D = prefix_set(w)
    assert derivative_difference_is_zero(D, abelian_partition(D), 0, 2, 1)
    D = prefix_set(COMM)
    P1 = abelian_partition(D)
    assert not derivative_difference_is_zero(D, P1, 0, 4, 1)
    assert not derivative_difference_is_zero(D, P1, 0, 4, 2)
    for s in range(5):
        assert derivative_difference_is_zero(D, P1, s, s, 1)


def test_derivative_difference_precondition():
    D = prefix_set(COMM)
    P1 = abelian_partition(D)
    with pytest.raises(ValueError):
        derivative_difference_is_zero(D, P1, 0, 1, 1)
    with pytest.raises(ValueError):
        derivative_difference_is_zero(D, P1, 0, 4, 3)


def test_partition_examples():
    assert partition(COMM, 2).reps == (0, 1, 2, 3, 4)
    assert partition(COMM, 2).reps == tuple(naive_partition_class2(COMM))
    assert partition(parse_word("aA", 2), 3).reps == (0, 1, 0)
    w = double_commutator()
    assert len(w) == 16
    P = partition(w, 2)
    assert P(0) == P(16)
    assert partition(Word((), 3), 4).reps == (0,)
    with pytest.raises(ValueError):
        partition(COMM, 0)


def test_wp_examples():
    a, b, c = (generator(k, 3) for k in (1, 2, 3))
    w = commutator(commutator(a, b), commutator(a, c))
    assert wp_solvable(w, 2)
    assert not wp_solvable(w, 3)
    assert naive_wp_class3(w) is False
    assert wp_solvable(Word((), 2), 5)


def test_fox_solvable_examples():
    assert fox_solvable(parse_word("aA", 2), 2, 1).is_zero()
    d1 = fox_solvable(COMM, 1, 1)
    expected = dict(derivative_as_ring_element(fox_abelian(COMM), 1).items())
    assert as_abelian(d1) == expected == {(0, 0): 1, (0, 1): -1}
    d2 = fox_solvable(TWO_SQUARES, 1, 2)
    assert as_abelian(d2) == {(0, 0): 1, (1, 0): -1, (2, 2): 1, (1, 2): -1}
    with pytest.raises(ValueError):
        fox_solvable(COMM, 2, 3)


def test_fox_solvable_representatives():
    e = fox_solvable(TWO_SQUARES, 2, 1)
    P = partition(TWO_SQUARES, 2)
    reps = [j for _, j in e.terms]
    assert len(set(reps)) == len(reps)
    assert all(P(j) == j for j in reps)
    assert all(c != 0 for c, _ in e.terms)


def test_json_round_trip():
    e = fox_solvable(TWO_SQUARES, 2, 2)
    data = e.to_json()
    assert data["class"] == 2
    assert all(set(t) == {"coeff", "prefix_index", "prefix_word"} for t in data["terms"])
    assert SolvableRingElement.from_json(data, TWO_SQUARES) == e


@given(words(max_len=30))
def test_d1_collapse(w):
    assert wp_solvable(w, 1) == (not any(abelianize(w)))
    m = fox_abelian(w)
    for k in range(1, w.rank + 1):
        assert as_abelian(fox_solvable(w, 1, k)) == dict(derivative_as_ring_element(m, k).items())


@given(words(max_len=30))
def test_d2_collapse(w):
    assert wp_solvable(w, 2) == wp_metabelian(w)


@given(words(max_len=16, max_rank=3))
def test_partition_class2_matches_naive(w):
    assert list(partition(w, 2).reps) == naive_partition_class2(w)


@given(words(max_len=30, max_rank=3))
def test_fox_consistency(w):
    for d in (1, 2, 3):
        vanish = all(fox_solvable(w, d, k).is_zero() for k in range(1, w.rank + 1))
        assert wp_solvable(w, d + 1) == vanish


@given(words(max_len=30, max_rank=3))
def test_class3_matches_flow_oracle(w):
    assert wp_solvable(w, 3) == naive_wp_class3(w)


@given(words(max_len=40, max_rank=3))
def test_refinement_chain(w):
    chain = partition_chain(w, 4)
    assert chain[0].reps == tuple(range(len(w) + 1))
    for c in range(1, len(chain)):
        P = chain[c]
        assert P.klass == c
        assert all(P(P(j)) == P(j) and P(j) <= j for j in range(len(w) + 1))
        if c >= 2:
            assert P.refines(chain[c - 1])


@given(words(max_len=30, max_rank=3))
def test_freely_equal_prefixes_share_representative(w):
    D = prefix_set(w)
    reduced = [free_reduce(p).letters for p in D]
    P = partition(w, 4)
    for i in range(len(reduced)):
        for j in range(i):
            if reduced[i] == reduced[j]:
                assert P(i) == P(j)


@given(word_pairs(max_len=15, max_rank=3))
def test_conjugation_and_inversion(pair):
    u, w = pair
    for d in (1, 2, 3):
        assert wp_solvable(concat(concat(u, w), invert(u)), d) == wp_solvable(w, d)
        assert wp_solvable(invert(w), d) == wp_solvable(w, d)


def test_constructed_trivial_words():
    rng = random.Random(11)
    for _ in range(30):
        u = random_word(6, 3, rng)
        v = random_word(6, 3, rng)
        x = random_word(5, 3, rng)
        y = random_word(5, 3, rng)
        c1 = commutator(commutator(u, v), commutator(x, y))
        assert wp_solvable(c1, 2)
        c2 = commutator(c1, commutator(commutator(v, x), commutator(y, u)))
        assert wp_solvable(c2, 3)
        assert naive_wp_class3(c2)


def test_monotone_in_class():
    rng = random.Random(5)
    for _ in range(200):
        w = random_word(rng.randint(0, 40), rng.randint(1, 3), rng)
        flags = [wp_solvable(w, d) for d in range(1, 5)]
        assert flags == sorted(flags, reverse=True)
