"""Brute-force oracles shared by the test modules."""

import itertools


def all_subsets(universe):
    """Every subset of ``universe`` as a sorted tuple."""
    items = sorted(universe)
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


def all_colorings(N, n):
    return itertools.product(range(1, n + 1), repeat=N)


def brute_alpha(vertices, edges):
    """Independence number by trying subsets from the largest size down."""
    vertices = list(vertices)
    adj = {v: set() for v in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    for r in range(len(vertices), -1, -1):
        for S in itertools.combinations(vertices, r):
            if all(w not in adj[u] for u, w in itertools.combinations(S, 2)):
                return r
    return 0


def pair_solutions(A, l, r):
    """Whether some l values and r values from A (repeats allowed) have equal sums."""
    A = sorted(set(A))
    if not A:
        return False
    left = {sum(c) for c in itertools.combinations_with_replacement(A, l)}
    right = {sum(c) for c in itertools.combinations_with_replacement(A, r)}
    return bool(left & right)
