# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; mirror of ``matchlab._pykernels``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def greedy_tree(parent, colour, int k):
    cdef const int[::1] par = np.ascontiguousarray(parent, dtype=np.int32)
    cdef const int[::1] col = np.ascontiguousarray(colour, dtype=np.int32)
    cdef Py_ssize_t n = par.shape[0]
    out = np.zeros(n, dtype=np.int32)
    cdef int[::1] m = out
    cdef Py_ssize_t v
    cdef int c, u
    for c in range(1, k + 1):
        for v in range(1, n):
            if col[v] == c:
                u = par[v]
                if m[v] == 0 and m[u] == 0:
                    m[v] = c
                    m[u] = c
    return out


def greedy_graph(adj, int k):
    cdef const int[:, ::1] a = np.ascontiguousarray(adj, dtype=np.int32)
    cdef Py_ssize_t n = a.shape[0]
    out = np.zeros(n, dtype=np.int32)
    cdef int[::1] m = out
    cdef Py_ssize_t v
    cdef int c, u
    for c in range(1, k + 1):
        for v in range(n):
            u = a[v, c]
            if u > v and m[v] == 0 and m[u] == 0:
                m[v] = c
                m[u] = c
    return out


cdef int _match_step(const int[:, ::1] a, int v, int bound, int depth_left) noexcept nogil:
    cdef int c, u
    if depth_left == 0:
        return 0
    for c in range(1, bound):
        u = a[v, c]
        if u >= 0 and _match_step(a, u, c, depth_left - 1) == 0:
            return c
    return 0


def greedy_views(adj, int k, int radius):
    cdef const int[:, ::1] a = np.ascontiguousarray(adj, dtype=np.int32)
    cdef Py_ssize_t n = a.shape[0]
    out = np.zeros(n, dtype=np.int32)
    cdef int[::1] m = out
    cdef Py_ssize_t v
    with nogil:
        for v in range(n):
            m[v] = _match_step(a, <int>v, k + 1, radius)
    return out
