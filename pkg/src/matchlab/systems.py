"""Colour systems: prefix-closed subsets of G_k viewed as rooted coloured trees.

Infinite systems are membership oracles.  Every derived oracle (translation,
pruning, extensions, gluing) is a closure over its parent's ``contains``, so
a query against a deeply composed system walks down the composition and each
layer memoises what it has seen.  Only finite things -- depth restrictions
and balls -- are ever materialised.
"""

from __future__ import annotations

import os
from collections.abc import Callable, Iterable, Iterator

from .errors import (
    BallTooLarge,
    DepthBudgetExceeded,
    InvalidPruneError,
    NotANodeError,
    NotPrefixClosed,
)
from .words import E, Word, _mul, check_alphabet, sort_key, validate

MAX_BALL_NODES = 10**7


class DepthBudget:
    """A shared, adjustable depth limit.

    Oracles hold a reference rather than a number, so a run can widen the
    budget of everything it has built when a later translation shifts the
    queries deeper.
    """

    def __init__(self, limit: int):
        self.limit = limit

    def __int__(self) -> int:
        return self.limit

    def __repr__(self) -> str:
        return f"DepthBudget({self.limit})"


def cache_limit() -> int | None:
    """Per-oracle memo cap from ``MATCHLAB_CACHE_LIMIT`` (entries); None = unbounded."""
    raw = os.environ.get("MATCHLAB_CACHE_LIMIT")
    if not raw:
        return None
    limit = int(raw)
    return limit if limit > 0 else None


class ColourSystem:
    """Deterministic, memoised membership oracle for a k-colour system.

    ``member`` must be pure and prefix-closed; neither is checked on every
    query (see :meth:`check_prefix_closed`).  If ``depth_budget`` is set,
    querying a word longer than the budget raises instead of answering.
    """

    def __init__(
        self,
        k: int,
        member: Callable[[Word], bool],
        *,
        depth_budget: int | DepthBudget | None = None,
        name: str = "V",
    ):
        self.k = check_alphabet(k)
        self._member = member
        self.depth_budget = depth_budget
        self.name = name
        self._memo: dict[Word, bool] = {E: True}
        self._colours: dict[Word, frozenset[int]] = {}
        self._limit = cache_limit()

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} k={self.k}>"

    def contains(self, x: Word) -> bool:
        found = self._memo.get(x)
        if found is not None:
            return found
        budget = self.depth_budget
        if budget is not None and len(x) > int(budget):
            raise DepthBudgetExceeded(
                f"{self.name}: query of norm {len(x)} exceeds depth budget {int(budget)}"
            )
        found = bool(self._member(x))
        if self._limit is not None and len(self._memo) >= self._limit:
            self._memo.clear()
            self._memo[E] = True
        self._memo[x] = found
        return found

    __contains__ = contains

    def incident_colours(self, v: Word) -> frozenset[int]:
        cols = self._colours.get(v)
        if cols is None:
            if not self.contains(v):
                raise NotANodeError(f"{list(v)} is not a node of {self.name}")
            cols = frozenset(c for c in range(1, self.k + 1) if self.contains(_step_fast(v, c)))
            if self._limit is not None and len(self._colours) >= self._limit:
                self._colours.clear()
            self._colours[v] = cols
        return cols

    def degree(self, v: Word) -> int:
        return len(self.incident_colours(v))

    def children(self, v: Word) -> list[int]:
        """Colours leading away from the root at ``v``."""
        last = v[-1] if v else 0
        return [c for c in range(1, self.k + 1) if c != last and self.contains(v + (c,))]

    def iter_depth(self, h: int) -> Iterator[Word]:
        """Members of norm <= h in length-lex order, descending only through members."""
        layer: list[Word] = [E]
        for depth in range(h + 1):
            yield from layer
            if depth == h:
                break
            layer = [w + (c,) for w in layer for c in self.children(w)]

    def restrict_depth(self, h: int) -> "FiniteColourSystem":
        if h < 0:
            raise ValueError("depth must be non-negative")
        return FiniteColourSystem(self.k, self.iter_depth(h), checked=True, name=f"{self.name}[{h}]")

    def translate(self, u: Word) -> "ColourSystem":
        """The system ``u^-1 V``, i.e. V re-rooted at ``u``."""
        if not self.contains(u):
            raise NotANodeError(f"cannot translate {self.name} by non-member {list(u)}")
        if not u:
            return self
        parent = self.contains
        return ColourSystem(
            self.k,
            lambda x: parent(_mul(u, x)),
            name=f"{_label(u)}⁻¹{self.name}",
        )

    def prune(self, c: int) -> "ColourSystem":
        if c not in self.incident_colours(E):
            raise InvalidPruneError(f"colour {c} is not incident to the root of {self.name}")
        parent = self.contains
        return ColourSystem(
            self.k,
            lambda x: not x or (x[0] != c and parent(x)),
            depth_budget=self.depth_budget,
            name=f"prune({self.name},{c})",
        )

    def extract_ball(self, v: Word, radius: int) -> "RootedBall":
        """Radius-``radius`` ball around ``v``, re-rooted at e."""
        if radius < 0:
            raise ValueError("radius must be non-negative")
        if not self.contains(v):
            raise NotANodeError(f"{list(v)} is not a node of {self.name}")
        parent = self.contains
        if not v:
            return RootedBall(self.k, radius, parent)
        return RootedBall(self.k, radius, lambda w: parent(_mul(v, w)))

    def check_prefix_closed(self, depth: int, words: Iterable[Word] | None = None) -> None:
        """Exhaustively confirm prefix-closure on all reduced words up to ``depth``."""
        from .words import words_up_to

        for w in words if words is not None else words_up_to(self.k, depth):
            if w and self.contains(w) and not self.contains(w[:-1]):
                raise NotPrefixClosed(f"{self.name} contains {list(w)} but not its predecessor")


def _step_fast(x: Word, c: int) -> Word:
    if x and x[-1] == c:
        return x[:-1]
    return x + (c,)


def _label(u: Word) -> str:
    return "".join(map(str, u)) if u else "e"


class FiniteColourSystem(ColourSystem):
    """An explicit finite colour system; nodes kept in length-lex order."""

    def __init__(self, k: int, words: Iterable[Word], *, checked: bool = False, name: str = "W"):
        nodes = set()
        for w in words:
            nodes.add(tuple(w) if checked else validate(w, k))
        nodes.add(E)
        if not checked:
            for w in nodes:
                if w and w[:-1] not in nodes:
                    raise NotPrefixClosed(f"{list(w)} present without predecessor {list(w[:-1])}")
        self.node_set = frozenset(nodes)
        self.nodes: tuple[Word, ...] = tuple(sorted(nodes, key=sort_key))
        super().__init__(k, self.node_set.__contains__, name=name)

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.nodes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteColourSystem):
            return NotImplemented
        return self.k == other.k and self.node_set == other.node_set

    def __hash__(self) -> int:
        return hash((self.k, self.node_set))

    @property
    def depth(self) -> int:
        return len(self.nodes[-1])

    def edges(self) -> list[tuple[Word, Word, int]]:
        return edges(self)

    def to_json(self) -> dict:
        return {"k": self.k, "nodes": [list(w) for w in self.nodes]}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteColourSystem":
        return cls(int(data["k"]), (tuple(w) for w in data["nodes"]))


class RootedBall:
    """A rooted radius-R ball: everything a node knows after R-1 rounds.

    Membership is lazy, so an algorithm that inspects only part of the ball
    never pays for the rest; ``system`` materialises the full word set.
    Two balls are equal iff they have the same radius and the same word set.
    """

    def __init__(self, k: int, radius: int, member: Callable[[Word], bool]):
        self.k = check_alphabet(k)
        self.radius = radius
        self._member = member
        self._memo: dict[Word, bool] = {E: True}
        self._system: FiniteColourSystem | None = None

    @classmethod
    def from_system(cls, system: ColourSystem, radius: int) -> "RootedBall":
        return system.extract_ball(E, radius)

    @classmethod
    def from_words(cls, k: int, words: Iterable[Word], radius: int | None = None) -> "RootedBall":
        fs = words if isinstance(words, FiniteColourSystem) else FiniteColourSystem(k, words)
        r = fs.depth if radius is None else radius
        if fs.depth > r:
            raise ValueError(f"ball words reach norm {fs.depth} beyond radius {r}")
        ball = cls(k, r, fs.node_set.__contains__)
        ball._system = fs
        return ball

    def contains(self, w: Word) -> bool:
        if len(w) > self.radius:
            return False
        found = self._memo.get(w)
        if found is None:
            found = bool(self._member(w))
            self._memo[w] = found
        return found

    __contains__ = contains

    def children(self, w: Word) -> list[int]:
        if len(w) >= self.radius:
            return []
        last = w[-1] if w else 0
        return [c for c in range(1, self.k + 1) if c != last and self.contains(w + (c,))]

    def incident_colours(self, w: Word) -> frozenset[int]:
        return frozenset(c for c in range(1, self.k + 1) if self.contains(_step_fast(w, c)))

    @property
    def system(self) -> FiniteColourSystem:
        if self._system is None:
            found: list[Word] = []
            layer: list[Word] = [E]
            while layer:
                found.extend(layer)
                if len(found) > MAX_BALL_NODES:
                    raise BallTooLarge(f"ball exceeds {MAX_BALL_NODES} nodes")
                layer = [w + (c,) for w in layer for c in self.children(w)]
            self._system = FiniteColourSystem(self.k, found, checked=True, name="ball")
        return self._system

    @property
    def nodes(self) -> tuple[Word, ...]:
        return self.system.nodes

    def __len__(self) -> int:
        return len(self.system)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RootedBall):
            return NotImplemented
        return self.k == other.k and self.radius == other.radius and self.system == other.system

    def __hash__(self) -> int:
        return hash((self.k, self.radius, self.system.node_set))

    def __repr__(self) -> str:
        return f"<RootedBall k={self.k} radius={self.radius}>"


def edges(system: FiniteColourSystem) -> list[tuple[Word, Word, int]]:
    """One edge ``(pred(v), v, tail(v))`` per non-root node, in node order."""
    return [(v[:-1], v, v[-1]) for v in system.nodes if v]


def equal_to_depth(u: ColourSystem, v: ColourSystem, h: int) -> bool:
    if u.k != v.k:
        raise ValueError("systems over different alphabets")
    return u.restrict_depth(h).node_set == v.restrict_depth(h).node_set
