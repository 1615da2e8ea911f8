# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled search core; the semantics twin of _speed_py.py.

Keep the two implementations in lockstep: same cell order, same propagation,
same node accounting, same output order.
"""

from libc.stdlib cimport free as c_free, malloc

IMPL_NAME = "cython"


cdef void _prefill(int* t, int n):
    cdef int u = n - 1
    cdef int i, j
    for i in range(n * n):
        t[i] = -1
    for j in range(n):
        t[u * n + j] = j
    for i in range(n):
        t[i * n + u] = u
        t[i * n + i] = u


cdef bint _propagate(int* t, int n, bint implicative, int* trail, int* trail_len):
    cdef int u = n - 1
    cdef bint changed = True
    cdef int i, j, x, y, z, v, w, c, i1, i2, c1, c2, a, b
    while changed:
        changed = False
        for i in range(n):
            for j in range(i + 1, n):
                if t[i * n + j] == u and t[j * n + i] == u:
                    return False
        if implicative:
            for x in range(n):
                for y in range(n):
                    v = t[x * n + y]
                    if v < 0:
                        continue
                    c = v * n + x
                    w = t[c]
                    if w < 0:
                        t[c] = x
                        trail[trail_len[0]] = c
                        trail_len[0] += 1
                        changed = True
                    elif w != x:
                        return False
        for x in range(n):
            for y in range(x + 1, n):
                for z in range(n):
                    i1 = t[y * n + z]
                    i2 = t[x * n + z]
                    if i1 < 0 or i2 < 0:
                        continue
                    c1 = x * n + i1
                    c2 = y * n + i2
                    a = t[c1]
                    b = t[c2]
                    if a >= 0 and b >= 0:
                        if a != b:
                            return False
                    elif a >= 0:
                        t[c2] = a
                        trail[trail_len[0]] = c2
                        trail_len[0] += 1
                        changed = True
                    elif b >= 0:
                        t[c1] = b
                        trail[trail_len[0]] = c1
                        trail_len[0] += 1
                        changed = True
    return True


cdef struct SearchState:
    int* t
    int* free_cells
    int n_free
    int* trail
    int trail_len
    int n
    bint implicative
    long node_budget
    long nodes
    bint exceeded


cdef void _rec(SearchState* s, list results):
    cdef int cell = -1
    cdef int i, v, mark, n2
    for i in range(s.n_free):
        if s.t[s.free_cells[i]] < 0:
            cell = s.free_cells[i]
            break
    if cell < 0:
        n2 = s.n * s.n
        results.append(tuple([s.t[i] for i in range(n2)]))
        return
    for v in range(s.n):
        if s.node_budget and s.nodes >= s.node_budget:
            s.exceeded = True
            return
        s.nodes += 1
        mark = s.trail_len
        s.t[cell] = v
        s.trail[s.trail_len] = cell
        s.trail_len += 1
        if _propagate(s.t, s.n, s.implicative, s.trail, &s.trail_len):
            _rec(s, results)
        while s.trail_len > mark:
            s.trail_len -= 1
            s.t[s.trail[s.trail_len]] = -1
        if s.exceeded:
            return


def search_tables(int n, bint implicative, long node_budget=0, int first_value=-1):
    """See _speed_py.search_tables; identical contract."""
    cdef int u = n - 1
    cdef int n2 = n * n
    cdef SearchState s
    cdef int i, j, k, c0, mark
    results: list = []

    s.t = <int*> malloc(n2 * sizeof(int))
    s.free_cells = <int*> malloc(n2 * sizeof(int))
    # worst-case trail: every cell forced once per decision level
    s.trail = <int*> malloc(n2 * n2 * sizeof(int))
    if s.t == NULL or s.free_cells == NULL or s.trail == NULL:
        c_free(s.t)
        c_free(s.free_cells)
        c_free(s.trail)
        raise MemoryError()
    try:
        _prefill(s.t, n)
        k = 0
        for i in range(u):
            for j in range(u):
                if i != j:
                    s.free_cells[k] = i * n + j
                    k += 1
        s.n_free = k
        s.trail_len = 0
        s.n = n
        s.implicative = implicative
        s.node_budget = node_budget
        s.nodes = 0
        s.exceeded = False

        if not _propagate(s.t, n, implicative, s.trail, &s.trail_len):
            return results, s.nodes, s.exceeded

        if s.n_free == 0:
            results.append(tuple([s.t[i] for i in range(n2)]))
            return results, s.nodes, s.exceeded

        c0 = s.free_cells[0]
        if first_value >= 0:
            if s.t[c0] >= 0:
                if s.t[c0] == first_value:
                    _rec(&s, results)
                return results, s.nodes, s.exceeded
            s.nodes += 1
            mark = s.trail_len
            s.t[c0] = first_value
            s.trail[s.trail_len] = c0
            s.trail_len += 1
            if _propagate(s.t, n, implicative, s.trail, &s.trail_len):
                _rec(&s, results)
            while s.trail_len > mark:
                s.trail_len -= 1
                s.t[s.trail[s.trail_len]] = -1
            return results, s.nodes, s.exceeded

        _rec(&s, results)
        return results, s.nodes, s.exceeded
    finally:
        c_free(s.t)
        c_free(s.free_cells)
        c_free(s.trail)
