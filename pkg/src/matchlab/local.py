"""The LOCAL model on anonymous edge-coloured graphs.

An algorithm with running time r is a pure function of a node's radius-(r+1)
ball (:class:`BallAlgorithm`).  Graphs are finite and properly edge-coloured;
their nodes see truncated universal-cover balls (:func:`view_tree`), which is
all an anonymous node can learn in r rounds.
"""

from __future__ import annotations

import json
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ContractViolation, ModelError
from .systems import RootedBall
from .words import E, Word, check_alphabet

BOT = 0  # the unmatched output; also its JSON encoding


class ColouredGraph:
    """Finite graph with a proper edge colouring by colours 1..k."""

    def __init__(self, n: int, k: int, edges: Iterable[Sequence[int]]):
        if n < 0:
            raise ModelError("node count must be non-negative")
        self.n = n
        self.k = check_alphabet(k)
        self.adj: list[dict[int, int]] = [{} for _ in range(n)]
        for u, v, c in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ModelError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ModelError(f"self-loop at node {u}")
            if not 1 <= c <= k:
                raise ModelError(f"edge ({u},{v}) has colour {c} outside 1..{k}")
            for a, b in ((u, v), (v, u)):
                other = self.adj[a].get(c)
                if other is not None and other != b:
                    raise ModelError(f"node {a} has two edges of colour {c}")
                self.adj[a][c] = b
        self._array: np.ndarray | None = None

    @property
    def edges(self) -> list[tuple[int, int, int]]:
        return sorted((u, v, c) for u in range(self.n) for c, v in self.adj[u].items() if u < v)

    def colours(self, v: int) -> frozenset[int]:
        return frozenset(self.adj[v])

    def neighbour(self, v: int, c: int) -> int | None:
        return self.adj[v].get(c)

    def max_colour(self) -> int:
        return max((c for a in self.adj for c in a), default=0)

    def adjacency_array(self, k: int | None = None) -> np.ndarray:
        width = max(self.k, k or 0) + 1
        if self._array is None or self._array.shape[1] != width:
            arr = np.full((self.n, width), -1, dtype=np.int32)
            for v, nbrs in enumerate(self.adj):
                for c, u in nbrs.items():
                    arr[v, c] = u
            self._array = arr
        return self._array

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "ColouredGraph":
        return cls(int(data["n"]), int(data["k"]), (tuple(e) for e in data["edges"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColouredGraph):
            return NotImplemented
        return (self.n, self.k, self.edges) == (other.n, other.k, other.edges)

    def __repr__(self) -> str:
        return f"<ColouredGraph n={self.n} k={self.k} m={len(self.edges)}>"


@dataclass(frozen=True)
class MatchingOutput:
    outputs: tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.outputs[v]

    def __len__(self) -> int:
        return len(self.outputs)

    def to_json(self) -> dict:
        return {"outputs": list(self.outputs)}

    @classmethod
    def from_json(cls, data: dict) -> "MatchingOutput":
        return cls(tuple(int(x) for x in data["outputs"]))


@dataclass(frozen=True)
class BallAlgorithm:
    """A runtime-r distributed algorithm: a pure map from radius-(r+1) balls.

    ``graph_kernel`` is an optional whole-graph fast path that must agree
    with ``eval`` on every node's view (the test-suite checks this).
    """

    name: str
    k: int
    runtime: int
    rule: Callable[[RootedBall], int] = field(compare=False, repr=False)
    params: tuple = ()
    graph_kernel: Callable[["ColouredGraph"], np.ndarray] | None = field(
        default=None, compare=False, repr=False
    )

    @property
    def key(self) -> tuple:
        return (self.name, self.k, self.runtime, self.params)

    def eval(self, ball: RootedBall) -> int:
        if ball.radius != self.runtime + 1:
            raise ContractViolation(
                f"{self.name} has runtime {self.runtime} and needs radius {self.runtime + 1}, "
                f"got a radius-{ball.radius} ball"
            )
        if ball.k != self.k:
            raise ContractViolation(f"{self.name} is defined for k={self.k}, ball has k={ball.k}")
        out = int(self.rule(ball))
        if not 0 <= out <= self.k:
            raise ContractViolation(f"{self.name} produced {out}, outside 0..{self.k}")
        return out

    def to_json(self) -> dict:
        return {"name": self.name, "r": self.runtime, **dict(self.params)}


def greedy_cone(ball: RootedBall) -> tuple[list[int], list[int]]:
    """Subtree of the ball reachable from the root along strictly decreasing colours.

    Greedy's decision at the root only depends on these nodes: a node reached
    through an edge of colour c can influence its parent only via edges of
    colour below c.  Returned as parent/colour arrays, parents first.
    """
    k, radius = ball.k, ball.radius
    words: list[Word] = [E]
    bounds = [k + 1]
    parent = [-1]
    colour = [0]
    i = 0
    while i < len(words):
        w = words[i]
        if len(w) < radius:
            for c in range(1, bounds[i]):
                x = w + (c,)
                if ball.contains(x):
                    words.append(x)
                    bounds.append(c)
                    parent.append(i)
                    colour.append(c)
        i += 1
    return parent, colour


def greedy(k: int, r: int) -> BallAlgorithm:
    """Greedy maximal matching simulated on the node's own ball.

    With r = k-1 this is exactly the global greedy algorithm; with fewer
    rounds it is a legitimate runtime-r algorithm that ignores everything
    beyond its ball.
    """
    check_alphabet(k)
    if r < 0:
        raise ValueError("runtime must be non-negative")

    def rule(ball: RootedBall) -> int:
        parent, colour = greedy_cone(ball)
        if len(parent) == 1:
            return BOT
        return int(kernels.greedy_tree(parent, colour, k)[0])

    def on_graph(g: ColouredGraph) -> np.ndarray:
        return kernels.greedy_views(g.adjacency_array(k), k, r + 1)

    return BallAlgorithm("greedy", k, r, rule, (), on_graph)


def broken_lazy(k: int, r: int = 0) -> BallAlgorithm:
    """Always unmatched; fails M3 on any edge.  For verifier tests."""
    return BallAlgorithm("broken-lazy", check_alphabet(k), r, lambda ball: BOT)


ALGORITHMS: dict[str, Callable[..., BallAlgorithm]] = {
    "greedy": greedy,
    "broken-lazy": broken_lazy,
}


def build_algorithm(name: str, k: int, r: int | None = None, **params) -> BallAlgorithm:
    """Look up ``name`` in the registry; ``r`` defaults to k-1 for greedy."""
    try:
        factory = ALGORITHMS[name]
    except KeyError:
        raise KeyError(f"unknown algorithm {name!r}; known: {sorted(ALGORITHMS)}") from None
    if r is None:
        r = k - 1 if name == "greedy" else 0
    return factory(k, r, **params)


def _walker(g: ColouredGraph, v: int) -> Callable[[Word], bool]:
    ids: dict[Word, int] = {E: v}

    def member(w: Word) -> bool:
        node = ids.get(w[:-1]) if w else v
        if node is None:
            node = v
            for c in w[:-1]:
                node = g.adj[node].get(c)
                if node is None:
                    return False
        if not w:
            return True
        nxt = g.adj[node].get(w[-1])
        if nxt is None:
            return False
        ids[w] = nxt
        return True

    return member


def view_tree(g: ColouredGraph, v: int, radius: int, k: int | None = None) -> RootedBall:
    """The radius-``radius`` view of node v: its truncated universal cover."""
    if not 0 <= v < g.n:
        raise ModelError(f"node {v} outside 0..{g.n - 1}")
    return RootedBall(k or g.k, radius, _walker(g, v))


def _check_alphabet(a: BallAlgorithm, g: ColouredGraph) -> None:
    if g.max_colour() > a.k:
        raise ContractViolation(f"graph uses colour {g.max_colour()} but {a.name} has k={a.k}")


def run_on_graph(a: BallAlgorithm, g: ColouredGraph, *, use_kernel: bool = True) -> MatchingOutput:
    _check_alphabet(a, g)
    if use_kernel and a.graph_kernel is not None:
        return MatchingOutput(tuple(int(x) for x in a.graph_kernel(g)))
    radius = a.runtime + 1
    return MatchingOutput(tuple(a.eval(view_tree(g, v, radius, a.k)) for v in range(g.n)))


def simulate_rounds(a: BallAlgorithm, g: ColouredGraph) -> MatchingOutput:
    """Explicit synchronous round loop with full-information messages.

    Each node's state is its view, hash-consed as ``((c, neighbour_state), ...)``
    so identical subtrees are shared.  The initial state knows incident
    colours only; each round rebuilds a state from the neighbours' previous
    states.  After ``runtime`` rounds the state decodes to the radius-(r+1)
    ball handed to ``a.eval``.
    """
    _check_alphabet(a, g)
    table: dict[tuple, int] = {(): 0}
    children: list[dict[int, int]] = [{}]

    def intern(key: tuple) -> int:
        sid = table.get(key)
        if sid is None:
            sid = table[key] = len(children)
            children.append(dict(key))
        return sid

    state = [0] * g.n
    for _ in range(a.runtime + 1):
        state = [
            intern(tuple((c, state[u]) for c, u in sorted(g.adj[v].items()))) for v in range(g.n)
        ]

    def decode(sid: int) -> RootedBall:
        def member(w: Word) -> bool:
            cur = sid
            for c in w:
                cur = children[cur].get(c)
                if cur is None:
                    return False
            return True

        return RootedBall(a.k, a.runtime + 1, member)

    cache: dict[int, int] = {}
    out = []
    for sid in state:
        if sid not in cache:
            cache[sid] = a.eval(decode(sid))
        out.append(cache[sid])
    return MatchingOutput(tuple(out))


@dataclass(frozen=True)
class MatchingReport:
    ok: bool
    condition: str | None = None
    node: int | None = None
    colour: int | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "condition": self.condition, "node": self.node, "colour": self.colour}


def verify_matching(g: ColouredGraph, out: MatchingOutput | Sequence[int]) -> MatchingReport:
    """Check M1-M3 node by node; report the first breach in node order."""
    outs = out.outputs if isinstance(out, MatchingOutput) else tuple(out)
    if len(outs) != g.n:
        raise ModelError(f"{len(outs)} outputs for {g.n} nodes")
    for v in range(g.n):
        o = outs[v]
        nbrs = g.adj[v]
        if o != BOT and o not in nbrs:
            return MatchingReport(False, "M1", v, o)
        if o != BOT:
            if outs[nbrs[o]] != o:
                return MatchingReport(False, "M2", v, o)
        else:
            for c in sorted(nbrs):
                if outs[nbrs[c]] == BOT:
                    return MatchingReport(False, "M3", v, c)
    return MatchingReport(True)
