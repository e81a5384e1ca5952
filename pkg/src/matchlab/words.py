"""Reduced words in the free Coxeter group G_k = <1..k | c^2 = e>.

A word is stored as a plain tuple of ints with no two adjacent letters equal,
so group equality is tuple equality and words hash cheaply.  The identity is
the empty tuple.  Every public function that takes ``k`` validates its
arguments; the underscore-prefixed helpers skip validation and are what the
oracle layers call in their inner loops.

>>> multiply((1, 2), (2, 3), 3)
(1, 3)
>>> inverse((1, 2, 3))
(3, 2, 1)
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence

from .errors import InvalidWordError, UndefinedDecompositionError

Word = tuple[int, ...]

E: Word = ()
MAX_K = 30


def check_alphabet(k: int) -> int:
    if not isinstance(k, int) or isinstance(k, bool) or not 1 <= k <= MAX_K:
        raise InvalidWordError(f"alphabet size must be an integer in 1..{MAX_K}, got {k!r}")
    return k


def validate(x: Sequence[int], k: int) -> Word:
    """Return ``x`` as a Word, raising if it is not reduced over 1..k."""
    check_alphabet(k)
    w = tuple(x)
    prev = 0
    for c in w:
        if not isinstance(c, int) or isinstance(c, bool) or not 1 <= c <= k:
            raise InvalidWordError(f"letter {c!r} outside 1..{k} in {list(w)}")
        if c == prev:
            raise InvalidWordError(f"word {list(w)} is not reduced")
        prev = c
    return w


def reduce(letters: Iterable[int], k: int) -> Word:
    """Freely reduce an arbitrary letter sequence (cancel ``cc`` pairs)."""
    check_alphabet(k)
    out: list[int] = []
    for c in letters:
        if not isinstance(c, int) or isinstance(c, bool) or not 1 <= c <= k:
            raise InvalidWordError(f"letter {c!r} outside 1..{k}")
        if out and out[-1] == c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def _mul(x: Word, y: Word) -> Word:
    m = 0
    lx, ly = len(x), len(y)
    while m < lx and m < ly and x[lx - 1 - m] == y[m]:
        m += 1
    if m == 0:
        return x + y
    return x[: lx - m] + y[m:]


def _step(x: Word, c: int) -> Word:
    """Right-multiply by a single generator."""
    if x and x[-1] == c:
        return x[:-1]
    return x + (c,)


def multiply(x: Sequence[int], y: Sequence[int], k: int) -> Word:
    return _mul(validate(x, k), validate(y, k))


def inverse(x: Sequence[int]) -> Word:
    # every generator is an involution, so inversion is reversal
    return tuple(reversed(x))


def norm(x: Sequence[int]) -> int:
    return len(x)


def tail(x: Word) -> int:
    if not x:
        raise UndefinedDecompositionError("the identity has no tail")
    return x[-1]


def head(x: Word) -> int:
    if not x:
        raise UndefinedDecompositionError("the identity has no head")
    return x[0]


def pred(x: Word) -> Word:
    if not x:
        raise UndefinedDecompositionError("the identity has no predecessor")
    return x[:-1]


def decompose(x: Sequence[int]) -> tuple[Word, int, int]:
    """Return ``(pred, tail, head)`` of a non-identity word."""
    w = tuple(x)
    if not w:
        raise UndefinedDecompositionError("cannot decompose the identity")
    return w[:-1], w[-1], w[0]


def distance(x: Sequence[int], y: Sequence[int], k: int) -> int:
    return len(_mul(inverse(validate(x, k)), validate(y, k)))


def sort_key(x: Word) -> tuple[int, Word]:
    """Length-lexicographic order, used for every enumeration and tie-break."""
    return (len(x), x)


def words_up_to(k: int, depth: int) -> Iterator[Word]:
    """All reduced words of norm <= depth over 1..k, in length-lex order."""
    check_alphabet(k)
    layer: list[Word] = [E]
    for _ in range(depth + 1):
        yield from layer
        layer = [w + (c,) for w in layer for c in range(1, k + 1) if not w or w[-1] != c]


def count_words(k: int, depth: int) -> int:
    """Number of reduced words of norm <= depth; 1 + k * sum (k-1)^i."""
    return 1 + sum(k * (k - 1) ** i for i in range(depth))


def to_json(x: Word) -> list[int]:
    return list(x)


def from_json(data: Sequence[int], k: int) -> Word:
    return validate(data, k)


def fmt(x: Word) -> str:
    """Human label: ``e`` for the identity, otherwise dot-joined letters."""
    return "e" if not x else "·".join(map(str, x))
