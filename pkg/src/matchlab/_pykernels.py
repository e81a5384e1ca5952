"""Pure-Python reference kernels; same signatures as the compiled ``_ckernels``.

Array conventions shared by both backends:

* trees: ``parent[v]`` (root has -1) and ``colour[v]`` (colour of the edge
  to the parent, 0 at the root), nodes numbered so parents precede children;
* graphs: ``adj[v, c]`` is v's colour-c neighbour or -1; column 0 is unused.

Outputs are int32 arrays with 0 meaning unmatched.
"""

import numpy as np


def greedy_tree(parent, colour, k):
    """Run greedy steps 1..k on a rooted tree and return every node's state."""
    n = len(parent)
    matched = [0] * n
    by_colour = [[] for _ in range(k + 1)]
    for v in range(1, n):
        by_colour[colour[v]].append(v)
    for c in range(1, k + 1):
        for v in by_colour[c]:
            u = parent[v]
            if matched[v] == 0 and matched[u] == 0:
                matched[v] = matched[u] = c
    return np.asarray(matched, dtype=np.int32)


def greedy_graph(adj, k):
    """Global greedy on a finite properly coloured graph."""
    n = adj.shape[0]
    rows = adj.tolist()
    matched = [0] * n
    for c in range(1, k + 1):
        for v in range(n):
            u = rows[v][c]
            if u > v and matched[v] == 0 and matched[u] == 0:
                matched[v] = matched[u] = c
    return np.asarray(matched, dtype=np.int32)


def _match_step(rows, v, bound, depth_left):
    # v's subtree only uses colours below `bound`; returns the step at which
    # v gets matched there, or 0
    if depth_left == 0:
        return 0
    row = rows[v]
    for c in range(1, bound):
        u = row[c]
        if u >= 0 and _match_step(rows, u, c, depth_left - 1) == 0:
            return c
    return 0


def greedy_views(adj, k, radius):
    """Per node: greedy simulated on its radius-``radius`` view tree."""
    rows = adj.tolist()
    n = adj.shape[0]
    out = [_match_step(rows, v, k + 1, radius) for v in range(n)]
    return np.asarray(out, dtype=np.int32)
