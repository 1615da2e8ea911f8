"""Pure-Python twin of the compiled search core in _speed.pyx.

Both expose search_tables() with identical semantics and identical output
order; the package picks whichever is available at import time.  Keep the two
implementations in lockstep.
"""

from __future__ import annotations

IMPL_NAME = "python"


def _prefill(n: int) -> list[int]:
    """Cells forced by 1->x = x, x->1 = 1 and x->x = 1, unit at n-1."""
    u = n - 1
    t = [-1] * (n * n)
    for j in range(n):
        t[u * n + j] = j
    for i in range(n):
        t[i * n + u] = u
        t[i * n + i] = u
    return t


def _propagate(t: list[int], n: int, implicative: bool, trail: list[int]) -> bool:
    """Sweep to a fixpoint: force cells implied by the exchange law and (when
    implicative) the contraction law; fail on any violated instance.

    Every forced assignment is recorded on the trail for backtracking.
    Returns False on contradiction.
    """
    u = n - 1
    changed = True
    while changed:
        changed = False
        # antisymmetry: i -> j = 1 and j -> i = 1 with i != j is impossible
        for i in range(n):
            for j in range(i + 1, n):
                if t[i * n + j] == u and t[j * n + i] == u:
                    return False
        # contraction (x -> y) -> x = x
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
                        trail.append(c)
                        changed = True
                    elif w != x:
                        return False
        # exchange x -> (y -> z) = y -> (x -> z)
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
                        trail.append(c2)
                        changed = True
                    elif b >= 0:
                        t[c1] = b
                        trail.append(c1)
                        changed = True
    return True


def search_tables(
    n: int,
    implicative: bool,
    node_budget: int = 0,
    first_value: int = -1,
) -> tuple[list[tuple[int, ...]], int, bool]:
    """Depth-first fill of the free cells in row-major order.

    Returns (complete tables satisfying all axioms, nodes tried, budget
    exceeded).  A node is one attempted cell assignment.  node_budget 0 means
    unlimited.  first_value >= 0 restricts the first free cell to that value,
    which is how the driver splits work across workers.
    """
    u = n - 1
    t = _prefill(n)
    free = [i * n + j for i in range(u) for j in range(u) if i != j]
    results: list[tuple[int, ...]] = []
    nodes = 0
    exceeded = False

    trail: list[int] = []
    if not _propagate(t, n, implicative, trail):
        return results, nodes, exceeded

    def rec():
        nonlocal nodes, exceeded
        cell = -1
        for c in free:
            if t[c] < 0:
                cell = c
                break
        if cell < 0:
            results.append(tuple(t))
            return
        for v in range(n):
            if node_budget and nodes >= node_budget:
                exceeded = True
                return
            nodes += 1
            mark = len(trail)
            t[cell] = v
            trail.append(cell)
            if _propagate(t, n, implicative, trail):
                rec()
            while len(trail) > mark:
                t[trail.pop()] = -1
            if exceeded:
                return

    if not free:
        results.append(tuple(t))
        return results, nodes, exceeded

    c0 = free[0]
    if first_value >= 0:
        if t[c0] >= 0:
            if t[c0] == first_value:
                rec()
            return results, nodes, exceeded
        nodes += 1
        mark = len(trail)
        t[c0] = first_value
        trail.append(c0)
        if _propagate(t, n, implicative, trail):
            rec()
        while len(trail) > mark:
            t[trail.pop()] = -1
        return results, nodes, exceeded

    rec()
    return results, nodes, exceeded
