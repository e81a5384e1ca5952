"""Instance generators: seeded random coloured graphs and worst-case paths."""

from __future__ import annotations

import random
from collections.abc import Iterator
from dataclasses import dataclass

from .local import BOT, ColouredGraph, greedy, run_on_graph, verify_matching
from .words import check_alphabet


def gen_random_graph(n: int, k: int, seed: int) -> ColouredGraph:
    """Random graph with a proper k-edge-colouring, deterministic per seed.

    Makes n*k attempts; each draws two distinct nodes and, if they are not
    yet adjacent and share a free colour, joins them with a random one.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    check_alphabet(k)
    rng = random.Random(seed)
    used: list[set[int]] = [set() for _ in range(n)]
    nbrs: list[set[int]] = [set() for _ in range(n)]
    edges = []
    if n >= 2:
        for _ in range(n * k):
            u, v = rng.sample(range(n), 2)
            if v in nbrs[u]:
                continue
            free = [c for c in range(1, k + 1) if c not in used[u] and c not in used[v]]
            if not free:
                continue
            c = rng.choice(free)
            used[u].add(c)
            used[v].add(c)
            nbrs[u].add(v)
            nbrs[v].add(u)
            edges.append((u, v, c))
    return ColouredGraph(n, k, edges)


def path_graph(colours, k: int | None = None) -> ColouredGraph:
    seq = list(colours)
    return ColouredGraph(len(seq) + 1, k or max(seq, default=1), [(i, i + 1, c) for i, c in enumerate(seq)])


@dataclass(frozen=True)
class WorstCasePath:
    k: int
    colours: tuple[int, ...]
    unmatched: int
    matched: int

    @property
    def graph(self) -> ColouredGraph:
        return path_graph(self.colours, self.k)


def _mirrored(k: int, m: int, radius: int) -> Iterator[tuple[int, ...]]:
    """Proper colour sequences of length m whose two ends read the same for ``radius`` steps."""
    fixed = min(radius, m)
    seq: list[int] = []

    def rec(i: int):
        if i == m:
            yield tuple(seq)
            return
        j = m - 1 - i
        choices = [seq[j]] if j < i and j < fixed else range(1, k + 1)
        for c in choices:
            if seq and seq[-1] == c:
                continue
            seq.append(c)
            yield from rec(i + 1)
            seq.pop()

    yield from rec(0)


def find_worst_case_path(k: int, max_nodes: int | None = None) -> WorstCasePath:
    """First path (by node count, then colour sequence) fooling every (k-2)-round view.

    Its two endpoints have identical radius-(k-2) views, full greedy matches
    one and not the other, and greedy truncated to k-2 rounds is not a valid
    matching on it.  Only endpoint pairs are searched: equal endpoint views
    reduce to a mirror constraint on the sequence, which keeps the search
    small for every k <= 6.  The existence of such a path for each k >= 2 is
    witnessed by the sequence k-1, ..., 2, c, 1, 2, ..., k-1.
    """
    check_alphabet(k)
    if k < 2:
        raise ValueError("worst-case paths need k >= 2")
    max_nodes = max_nodes or 4 * k
    radius = k - 2
    full = greedy(k, k - 1)
    trunc = greedy(k, k - 2)
    for n in range(2, max_nodes + 1):
        for seq in _mirrored(k, n - 1, radius):
            g = path_graph(seq, k)
            out = run_on_graph(full, g).outputs
            ends = (out[0] == BOT, out[-1] == BOT)
            if ends[0] == ends[1]:
                continue
            if verify_matching(g, run_on_graph(trunc, g)).ok:
                continue
            u, v = (0, n - 1) if ends[0] else (n - 1, 0)
            return WorstCasePath(k, seq, u, v)
    raise RuntimeError(f"no worst-case path with at most {max_nodes} nodes for k={k}")


def gen_worst_case_path(k: int) -> ColouredGraph:
    return find_worst_case_path(k).graph
