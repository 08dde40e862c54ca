"""Finite graphs with loops, graph maps, and the standard families.

A graph stores its vertices as strings in a canonical (natural-sort) order and
keeps one adjacency bitmask per vertex.  A loop at ``v`` is the edge
``(v, v)`` and puts ``v`` in its own neighbourhood.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Mapping, Optional

from . import kernel
from .errors import GraphError, PreconditionError

_DIGITS = re.compile(r"(\d+)")


def label_key(label: str):
    """Natural sort key: ``"2" < "10"``, ties broken by the raw string."""
    parts = _DIGITS.split(label)
    return (
        tuple((0, int(p), "") if i % 2 else (1, 0, p) for i, p in enumerate(parts)),
        label,
    )


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class Graph:
    """Immutable finite undirected graph; loops allowed, no multi-edges."""

    __slots__ = ("vertices", "index", "adj", "_hash")

    def __init__(self, vertices: Iterable[Hashable] = (), edges: Iterable = ()):
        raw = list(vertices)
        labels = [str(v) for v in raw]
        if len(set(labels)) != len(labels):
            if len(set(raw)) != len(raw):
                dup = next(l for l in labels if labels.count(l) > 1)
                raise GraphError(f"duplicate vertex {dup!r}")
            raise GraphError("distinct vertices collide after conversion to str")
        order = tuple(sorted(labels, key=label_key))
        index = {v: i for i, v in enumerate(order)}
        adj = [0] * len(order)
        for e in edges:
            pair = tuple(e)
            if len(pair) != 2:
                raise GraphError(f"edge {e!r} does not have two endpoints")
            u, w = str(pair[0]), str(pair[1])
            for end in (u, w):
                if end not in index:
                    raise GraphError(f"edge ({u!r}, {w!r}) uses unknown vertex {end!r}")
            a, b = index[u], index[w]
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        self._init(order, index, tuple(adj))

    def _init(self, order, index, adj):
        object.__setattr__(self, "vertices", order)
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _from_adj(cls, order: tuple[str, ...], adj: tuple[int, ...]) -> "Graph":
        # order must already be canonical
        g = cls.__new__(cls)
        g._init(order, {v: i for i, v in enumerate(order)}, tuple(adj))
        return g

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.adj == other.adj

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.vertices, self.adj))
            object.__setattr__(self, "_hash", h)
        return h

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.index

    def __iter__(self):
        return iter(self.vertices)

    def __repr__(self):
        return f"Graph(vertices={list(self.vertices)!r}, edges={self.edges!r})"

    @property
    def edges(self) -> list[tuple[str, str]]:
        """Edges as ``(u, w)`` with ``u`` not after ``w``; loops are ``(v, v)``."""
        out = []
        for a, row in enumerate(self.adj):
            for b in _bits(row >> a << a):
                out.append((self.vertices[a], self.vertices[b]))
        return out

    @property
    def num_edges(self) -> int:
        return sum(_popcount(row >> a << a) for a, row in enumerate(self.adj))

    @property
    def looped_mask(self) -> int:
        return sum(1 << a for a, row in enumerate(self.adj) if row >> a & 1)

    def _idx(self, v) -> int:
        try:
            return self.index[str(v)]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def has_edge(self, u, w) -> bool:
        return bool(self.adj[self._idx(u)] >> self._idx(w) & 1)

    def is_looped(self, v) -> bool:
        a = self._idx(v)
        return bool(self.adj[a] >> a & 1)

    def neighborhood(self, v) -> frozenset[str]:
        return frozenset(self.vertices[b] for b in _bits(self.adj[self._idx(v)]))

    def degree(self, v) -> int:
        return _popcount(self.adj[self._idx(v)])

    def mask_of(self, labels: Iterable) -> int:
        m = 0
        for v in labels:
            m |= 1 << self._idx(v)
        return m

    def labels_of(self, mask: int) -> list[str]:
        return [self.vertices[b] for b in _bits(mask)]

    def induced(self, subset: Iterable) -> "Graph":
        keep = sorted({self._idx(v) for v in subset})
        pos = {a: i for i, a in enumerate(keep)}
        adj = []
        for a in keep:
            row = 0
            for b in _bits(self.adj[a]):
                if b in pos:
                    row |= 1 << pos[b]
            adj.append(row)
        return Graph._from_adj(tuple(self.vertices[a] for a in keep), tuple(adj))

    def remove_vertex(self, v) -> "Graph":
        a = self._idx(v)
        return self.induced(u for i, u in enumerate(self.vertices) if i != a)

    def components(self) -> list[frozenset[str]]:
        seen = 0
        comps = []
        for a in range(len(self.vertices)):
            if seen >> a & 1:
                continue
            comp = frontier = 1 << a
            while frontier:
                nxt = 0
                for b in _bits(frontier):
                    nxt |= self.adj[b]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(frozenset(self.labels_of(comp)))
        return comps

    def is_connected(self) -> bool:
        """Non-empty and in one piece."""
        return len(self.vertices) > 0 and len(self.components()) == 1

    def relabel(self, mapping: Mapping[str, str]) -> "Graph":
        return Graph(
            (mapping[v] for v in self.vertices),
            ((mapping[u], mapping[w]) for u, w in self.edges),
        )


def make_graph(vertices: Iterable = (), edges: Iterable = ()) -> Graph:
    return Graph(vertices, edges)


def neighborhood(G: Graph, v) -> frozenset[str]:
    return G.neighborhood(v)


def graph_with_loops(G: Graph, looped: Iterable) -> Graph:
    """Copy of ``G`` with loops added at ``looped``."""
    return Graph(G.vertices, G.edges + [(v, v) for v in looped])


_FAMILY_ALIASES = {
    "I": "path_I",
    "P": "path_P",
    "K": "complete_K",
    "C": "cycle_C",
    "L": "looped_tail_L",
}


def family(name: str, n: int) -> Graph:
    """The named graph families.

    ``path_I``: vertices 0..n, ``ij`` an edge when ``|i - j| <= 1`` (every
    vertex looped).  ``path_P``: simple path on 1..n.  ``complete_K``: simple
    complete graph on 1..n.  ``cycle_C``: simple cycle on 0..n-1, ``n >= 3``.
    ``looped_tail_L``: simple path on 0..n with a loop at 0.
    """
    name = _FAMILY_ALIASES.get(name, name)
    if not isinstance(n, int) or n < 0:
        raise GraphError(f"invalid size {n!r} for {name}")
    if name == "path_I":
        vs = range(n + 1)
        return Graph(vs, [(i, j) for i in vs for j in vs if abs(i - j) <= 1])
    if name == "path_P":
        if n < 1:
            raise GraphError("path_P needs n >= 1")
        return Graph(range(1, n + 1), [(i, i + 1) for i in range(1, n)])
    if name == "complete_K":
        vs = range(1, n + 1)
        return Graph(vs, [(i, j) for i in vs for j in vs if i < j])
    if name == "cycle_C":
        if n < 3:
            raise GraphError("cycle_C needs n >= 3")
        return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])
    if name == "looped_tail_L":
        return Graph(range(n + 1), [(0, 0)] + [(i, i + 1) for i in range(n)])
    raise GraphError(f"unknown family {name!r}")


class GraphMap:
    """Edge-preserving vertex assignment ``domain -> codomain``.

    ``images[k]`` is the codomain index of the ``k``-th domain vertex.
    """

    __slots__ = ("domain", "codomain", "images")

    def __init__(self, domain: Graph, codomain: Graph, assignment: Mapping):
        assignment = {str(k): str(v) for k, v in dict(assignment).items()}
        extra = set(assignment) - set(domain.vertices)
        if extra:
            raise GraphError(f"assignment names unknown domain vertex {sorted(extra)[0]!r}")
        images = []
        for v in domain.vertices:
            if v not in assignment:
                raise GraphError(f"assignment is not total: {v!r} has no image")
            w = assignment[v]
            if w not in codomain.index:
                raise GraphError(f"image {w!r} of {v!r} is not a codomain vertex")
            images.append(codomain.index[w])
        self._set(domain, codomain, tuple(images))
        bad = self.violated_edge()
        if bad is not None:
            u, w = bad
            raise GraphError(
                f"edge ({u!r}, {w!r}) maps to non-edge "
                f"({self(u)!r}, {self(w)!r})"
            )

    def _set(self, domain, codomain, images):
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "images", images)

    @classmethod
    def _trusted(cls, domain: Graph, codomain: Graph, images) -> "GraphMap":
        f = cls.__new__(cls)
        f._set(domain, codomain, tuple(images))
        return f

    @classmethod
    def from_images(cls, domain: Graph, codomain: Graph, images) -> "GraphMap":
        f = cls._trusted(domain, codomain, images)
        bad = f.violated_edge()
        if bad is not None:
            raise GraphError(f"edge {bad!r} is not preserved")
        return f

    def __setattr__(self, name, value):
        raise AttributeError("GraphMap is immutable")

    def violated_edge(self) -> Optional[tuple[str, str]]:
        cod = self.codomain.adj
        img = self.images
        for a, row in enumerate(self.domain.adj):
            for b in _bits(row >> a << a):
                if not cod[img[a]] >> img[b] & 1:
                    return self.domain.vertices[a], self.domain.vertices[b]
        return None

    def __call__(self, v) -> str:
        return self.codomain.vertices[self.images[self.domain._idx(v)]]

    @property
    def assignment(self) -> dict[str, str]:
        cv = self.codomain.vertices
        return {v: cv[c] for v, c in zip(self.domain.vertices, self.images)}

    def __eq__(self, other):
        if not isinstance(other, GraphMap):
            return NotImplemented
        return (
            self.images == other.images
            and self.domain == other.domain
            and self.codomain == other.codomain
        )

    def __hash__(self):
        return hash((self.domain, self.codomain, self.images))

    def __repr__(self):
        return f"GraphMap({self.assignment!r})"

    def image_mask(self) -> int:
        m = 0
        for c in self.images:
            m |= 1 << c
        return m

    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def is_surjective(self) -> bool:
        return len(set(self.images)) == len(self.codomain)

    def fiber_mask(self, w) -> int:
        c = self.codomain._idx(w)
        return sum(1 << a for a, x in enumerate(self.images) if x == c)


def identity(G: Graph) -> GraphMap:
    return GraphMap._trusted(G, G, range(len(G)))


def compose(g: GraphMap, f: GraphMap) -> GraphMap:
    """``g`` after ``f``."""
    if f.codomain != g.domain:
        raise GraphError("cannot compose: codomain of f differs from domain of g")
    return GraphMap._trusted(f.domain, g.codomain, (g.images[c] for c in f.images))


def inclusion(A: Graph, B: Graph) -> GraphMap:
    """The map sending each vertex of ``A`` to the equally named vertex of ``B``."""
    return GraphMap(A, B, {v: v for v in A.vertices})


def constant_map(A: Graph, B: Graph, target) -> GraphMap:
    return GraphMap(A, B, {v: target for v in A.vertices})


def all_maps(A: Graph, B: Graph, injective: bool = False) -> Iterator[GraphMap]:
    """Every graph map ``A -> B`` in lexicographic order of images."""
    for img in kernel.iter_homs(A.adj, B.adj, injective=injective):
        yield GraphMap._trusted(A, B, img)


def _profile(G: Graph, a: int):
    row = G.adj[a]
    return (row >> a & 1, _popcount(row),
            tuple(sorted(_popcount(G.adj[b]) for b in _bits(row))))


def is_isomorphic(G: Graph, H: Graph) -> Optional[GraphMap]:
    """A witness isomorphism ``G -> H`` or ``None``.

    A bijective map between graphs with equally many edges is an isomorphism,
    so the search is an injective homomorphism search restricted to vertices
    with matching loop/degree profiles.
    """
    n = len(G)
    if n != len(H) or G.num_edges != H.num_edges:
        return None
    gp = [_profile(G, a) for a in range(n)]
    hp = [_profile(H, b) for b in range(n)]
    if sorted(gp) != sorted(hp):
        return None
    allowed = [sum(1 << b for b in range(n) if hp[b] == gp[a]) for a in range(n)]
    img = kernel.first_hom(G.adj, H.adj, allowed, injective=True)
    if img is None:
        return None
    return GraphMap._trusted(G, H, img)


def inverse(phi: GraphMap) -> GraphMap:
    """Inverse of a bijective map (validated as a graph map)."""
    if not (phi.is_injective() and phi.is_surjective()):
        raise PreconditionError("map is not bijective")
    inv = [0] * len(phi.images)
    for a, c in enumerate(phi.images):
        inv[c] = a
    return GraphMap.from_images(phi.codomain, phi.domain, inv)


def is_induced_inclusion(i: GraphMap) -> bool:
    """Injective, and reflects adjacency (loops included)."""
    if not i.is_injective():
        return False
    cod = i.codomain.adj
    img = i.images
    dom = i.domain.adj
    n = len(img)
    for a in range(n):
        for b in range(a, n):
            if cod[img[a]] >> img[b] & 1 and not dom[a] >> b & 1:
                return False
    return True


@dataclass(frozen=True)
class FoldSequence:
    """Folds ``(removed, absorbing)`` taking ``start`` to ``end``."""

    start: Graph
    end: Graph
    steps: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple((str(v), str(w)) for v, w in self.steps))

    def replay(self) -> Graph:
        """Re-apply the steps from ``start``, checking each fold condition."""
        G = self.start
        for v, w in self.steps:
            if v == w or (G.adj[G._idx(v)] & ~G.adj[G._idx(w)]) != 0:
                raise GraphError(f"step ({v!r}, {w!r}) is not a fold")
            G = G.remove_vertex(v)
        return G

    def is_valid(self) -> bool:
        try:
            return self.replay() == self.end
        except GraphError:
            return False

    def retraction(self) -> GraphMap:
        """Composite of the fold maps, ``start -> end``."""
        target = {v: v for v in self.start.vertices}
        for v, w in self.steps:
            for u, t in target.items():
                if t == v:
                    target[u] = w
        return GraphMap(self.start, self.end, target)

    def inclusion(self) -> GraphMap:
        return inclusion(self.end, self.start)
