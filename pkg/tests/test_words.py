import pytest
from hypothesis import given, settings, strategies as st

from matchlab.errors import InvalidWordError, UndefinedDecompositionError
from matchlab.words import (
    E,
    count_words,
    decompose,
    distance,
    from_json,
    inverse,
    multiply,
    norm,
    reduce,
    to_json,
    validate,
    words_up_to,
)

from conftest import reduced_words


@pytest.mark.parametrize(
    "x, y, expected",
    [((1, 2), (2, 3), (1, 3)), ((1,), (1,), ()), ((1, 2, 1), (1, 2), (1,)), ((), (3,), (3,))],
)
def test_multiply_examples(x, y, expected):
    assert multiply(x, y, 3) == expected


def test_inverse_and_norm():
    assert inverse((1, 2, 3)) == (3, 2, 1)
    assert inverse(()) == ()
    assert inverse((2,)) == (2,)
    assert norm((1, 2, 1)) == 3
    assert norm(multiply((1, 2), (2, 1), 2)) == 0


def test_decompose():
    assert decompose((3, 1)) == ((3,), 1, 3)
    assert decompose((2,)) == ((), 2, 2)
    assert decompose((1, 2, 1)) == ((1, 2), 1, 1)
    with pytest.raises(UndefinedDecompositionError):
        decompose(E)


def test_distance_examples():
    assert distance((1,), (1, 2), 2) == 1
    assert distance((1, 2), (1, 2), 2) == 0
    assert distance((1,), (2,), 2) == 2


def test_distance_matches_bfs_in_cayley_ball():
    # oracle: shortest path in the explicit depth-4 ball of the Cayley tree
    k = 3
    nodes = list(words_up_to(k, 4))
    index = set(nodes)
    start = (1, 2)
    dist = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for c in range(1, k + 1):
                u = w[:-1] if w and w[-1] == c else w + (c,)
                if u in index and u not in dist:
                    dist[u] = dist[w] + 1
                    nxt.append(u)
        frontier = nxt
    for w in nodes:
        if len(w) <= 2:  # ball of radius 2 around (1,2) stays inside the depth-4 ball
            assert distance(start, w, k) == dist[w]


@pytest.mark.parametrize("bad", [(0,), (4,), (1, 1), ("a",), (True,)])
def test_validate_rejects(bad):
    with pytest.raises(InvalidWordError):
        validate(bad, 3)


@pytest.mark.parametrize("k", [0, 31, -1, 2.0])
def test_alphabet_bound(k):
    with pytest.raises(InvalidWordError):
        multiply((), (), k)


def test_reduce_cancels_pairs():
    assert reduce([1, 2, 2, 1, 3], 3) == (3,)


def test_json_round_trip():
    assert to_json((3, 1)) == [3, 1]
    assert from_json([3, 1], 3) == (3, 1)
    assert from_json([], 3) == E


@pytest.mark.parametrize("k,depth", [(1, 3), (2, 4), (3, 3), (4, 2)])
def test_words_up_to_counts_and_order(k, depth):
    words = list(words_up_to(k, depth))
    assert len(words) == len(set(words)) == count_words(k, depth)
    assert words == sorted(words, key=lambda w: (len(w), w))


ks = st.integers(1, 6)


@settings(max_examples=1000)
@given(st.data())
def test_group_axioms(data):
    k = data.draw(ks)
    x, y, z = (data.draw(reduced_words(k)) for _ in range(3))
    assert multiply(multiply(x, y, k), z, k) == multiply(x, multiply(y, z, k), k)
    assert multiply(x, inverse(x), k) == E
    assert multiply(x, E, k) == x == multiply(E, x, k)
    assert norm(inverse(x)) == norm(x)


@settings(max_examples=1000)
@given(st.data())
def test_norm_parity_and_additivity(data):
    k = data.draw(ks)
    x, y = data.draw(reduced_words(k)), data.draw(reduced_words(k))
    n = norm(multiply(x, y, k))
    assert n % 2 == (norm(x) + norm(y)) % 2
    additive = not x or not y or x[-1] != y[0]
    assert (n == norm(x) + norm(y)) == additive


@settings(max_examples=1000)
@given(st.data())
def test_metric_laws(data):
    k = data.draw(ks)
    x, y, z = (data.draw(reduced_words(k)) for _ in range(3))
    assert distance(x, y, k) == distance(y, x, k)
    assert (distance(x, y, k) == 0) == (x == y)
    assert distance(x, z, k) <= distance(x, y, k) + distance(y, z, k)
