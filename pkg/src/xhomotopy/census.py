"""Exhaustive small-instance generators for sweeps and tests.

Graphs on ``n`` vertices (loops allowed) are produced once per isomorphism
class, labelled ``"0" .. str(n - 1)``.  Classes on ``n`` vertices are grown
from classes on ``n - 1`` by adding a vertex with every possible
neighbourhood, then deduplicated by a canonical code.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product as cartesian
from typing import Iterator

from .graph import Graph, GraphMap, _bits, _popcount


def _relabelled(adj: tuple[int, ...], order: tuple[int, ...]) -> tuple[int, ...]:
    pos = {v: p for p, v in enumerate(order)}
    out = []
    for v in order:
        row = 0
        for u in _bits(adj[v]):
            row |= 1 << pos[u]
        out.append(row)
    return tuple(out)


def canonical_code(adj: tuple[int, ...]) -> tuple[int, ...]:
    """Minimum relabelled adjacency over orders refining an invariant partition."""
    n = len(adj)
    deg = [_popcount(r) for r in adj]
    inv = [
        (adj[v] >> v & 1, deg[v], tuple(sorted(deg[u] for u in _bits(adj[v]))))
        for v in range(n)
    ]
    keys = sorted(set(inv))
    cells = [[v for v in range(n) if inv[v] == k] for k in keys]
    best = None
    for parts in cartesian(*(permutations(c) for c in cells)):
        order = tuple(v for part in parts for v in part)
        code = _relabelled(adj, order)
        if best is None or code < best:
            best = code
    return best if best is not None else ()


@lru_cache(maxsize=None)
def _codes(n: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    found = set()
    for code in _codes(n - 1):
        for nbrs in range(1 << (n - 1)):
            for loop in (0, 1):
                adj = list(code) + [nbrs | (loop << (n - 1))]
                for u in _bits(nbrs):
                    adj[u] |= 1 << (n - 1)
                found.add(canonical_code(tuple(adj)))
    return tuple(sorted(found))


def graphs(n: int) -> list[Graph]:
    """One graph per isomorphism class on ``n`` vertices."""
    labels = tuple(str(k) for k in range(n))
    return [Graph._from_adj(labels, code) for code in _codes(n)]


def graphs_up_to(n: int) -> list[Graph]:
    return [G for k in range(n + 1) for G in graphs(k)]


def connected_graphs_up_to(n: int) -> list[Graph]:
    return [G for G in graphs_up_to(n) if G.is_connected()]


def injective_maps(B: Graph) -> Iterator[GraphMap]:
    """Every injective map into ``B`` up to relabelling the domain.

    The domain ranges over all spanning subgraphs of all induced subgraphs
    ``B[S]``, with the identity-on-labels map into ``B``.
    """
    n = len(B)
    for S in range(1 << n):
        sub = B.induced(B.labels_of(S))
        edges = sub.edges
        for chosen in range(1 << len(edges)):
            A = Graph(sub.vertices, (e for k, e in enumerate(edges) if chosen >> k & 1))
            yield GraphMap._trusted(A, B, [B.index[v] for v in A.vertices])


def induced_inclusions(B: Graph, proper: bool = False) -> Iterator[GraphMap]:
    n = len(B)
    for S in range(1 << n):
        if proper and S == (1 << n) - 1:
            continue
        A = B.induced(B.labels_of(S))
        yield GraphMap._trusted(A, B, [B.index[v] for v in A.vertices])


def _arrow_code(i: GraphMap) -> tuple:
    B = i.codomain
    n = len(B)
    inner = [0] * n
    for a, row in enumerate(i.domain.adj):
        for b in _bits(row):
            inner[i.images[a]] |= 1 << i.images[b]
    image = i.image_mask()
    best = None
    for order in permutations(range(n)):
        code = (
            tuple(image >> v & 1 for v in order),
            _relabelled(B.adj, order),
            _relabelled(tuple(inner), order),
        )
        if best is None or code < best:
            best = code
    return best


@lru_cache(maxsize=None)
def injective_map_classes(n: int) -> tuple[GraphMap, ...]:
    """Injective maps into graphs with at most ``n`` vertices, one per isomorphism class of arrows."""
    reps: dict = {}
    for B in graphs_up_to(n):
        for i in injective_maps(B):
            reps.setdefault(_arrow_code(i), i)
    return tuple(reps.values())
