import itertools
from functools import lru_cache

import pytest

from coxorbits.groups import build_group


@lru_cache(maxsize=None)
def cached_group(label: str):
    return build_group(label)


@pytest.fixture
def group():
    """Session-cached group factory: heavy tables survive across tests."""
    return cached_group


@lru_cache(maxsize=None)
def bfs_length_table(label: str) -> tuple[int, ...]:
    """Independent reflection-length oracle: breadth-first distance from the
    identity in the Cayley graph over the full reflection set.  Shares no
    logic with the geometric (fixed-space codimension) route."""
    w = cached_group(label)
    ids = w.element_ids()
    mult = w.refl_mult_table
    dist = [-1] * len(ids)
    start = ids[w.identity.comps]
    dist[start] = 0
    frontier = [start]
    d = 0
    while frontier:
        d += 1
        new = []
        for e in frontier:
            for row in mult:
                x = row[e]
                if dist[x] < 0:
                    dist[x] = d
                    new.append(x)
        frontier = new
    return tuple(dist)


def brute_reduced_factorizations(g, k: int) -> list[tuple[int, ...]]:
    """Oracle: all length-k reflection tuples multiplying to ``g``, found by
    filtering the full product space (exponential; tiny inputs only)."""
    w = g.group
    refl = [w.reflection(t) for t in w.reflection_ids()]
    out = []
    for tup in itertools.product(range(w.num_reflections), repeat=k):
        prod = w.identity
        for t in tup:
            prod = prod * refl[t]
        if prod == g:
            out.append(tup)
    return out
