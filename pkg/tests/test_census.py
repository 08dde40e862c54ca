from itertools import permutations

import pytest

from xhomotopy import census
from xhomotopy.graph import is_induced_inclusion

# isomorphism classes of graphs with loops allowed, and the connected ones
GRAPH_COUNTS = [1, 2, 6, 20, 90, 544]
CONNECTED_COUNTS = [0, 2, 3, 10, 50, 354]


def brute_classes(n):
    pairs = [(a, b) for a in range(n) for b in range(a, n)]
    seen = set()
    for bits in range(1 << len(pairs)):
        adj = [0] * n
        for k, (a, b) in enumerate(pairs):
            if bits >> k & 1:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
        best = min(
            tuple(sum(1 << p[w] for w in range(n) if adj[v] >> w & 1) for v in sorted(range(n), key=lambda v: p[v]))
            for p in permutations(range(n))
        )
        seen.add(best)
    return len(seen)


@pytest.mark.parametrize("n", range(6))
def test_graph_counts(n):
    assert len(census.graphs(n)) == GRAPH_COUNTS[n]
    assert sum(G.is_connected() for G in census.graphs(n)) == CONNECTED_COUNTS[n]


@pytest.mark.parametrize("n", range(5))
def test_counts_match_brute_force(n):
    assert brute_classes(n) == GRAPH_COUNTS[n]


def test_injective_maps_are_injective():
    B = census.graphs(3)[7]
    maps = list(census.injective_maps(B))
    assert all(i.is_injective() for i in maps)
    # sum over subsets S of 2^(edges of B[S])
    expected = sum(2 ** B.induced(B.labels_of(S)).num_edges for S in range(1 << len(B)))
    assert len(maps) == expected


def test_induced_inclusions():
    B = census.graphs(3)[-1]
    incs = list(census.induced_inclusions(B, proper=True))
    assert len(incs) == 7 and all(is_induced_inclusion(i) for i in incs)


def test_arrow_classes_counts():
    assert [len(census.injective_map_classes(n)) for n in range(4)] == [1, 6, 42, 413]
