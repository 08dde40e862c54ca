"""Products, quotients, disjoint unions, pushouts and the mapping-cylinder glue."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import GraphError
from .graph import Graph, GraphMap, _bits, compose, family, label_key


def product_label(g: str, h: str) -> str:
    return f"({g},{h})"


def product(G: Graph, H: Graph) -> Graph:
    """Categorical product: ``(g,h) ~ (g',h')`` iff ``g ~ g'`` and ``h ~ h'``."""
    vs = [product_label(g, h) for g in G.vertices for h in H.vertices]
    edges = []
    for a, g in enumerate(G.vertices):
        for b in _bits(G.adj[a]):
            for c, h in enumerate(H.vertices):
                for d in _bits(H.adj[c]):
                    edges.append((product_label(g, h), product_label(G.vertices[b], H.vertices[d])))
    return Graph(vs, edges)


def projections(G: Graph, H: Graph) -> tuple[GraphMap, GraphMap]:
    P = product(G, H)
    left = GraphMap(P, G, {product_label(g, h): g for g in G.vertices for h in H.vertices})
    right = GraphMap(P, H, {product_label(g, h): h for g in G.vertices for h in H.vertices})
    return left, right


def disjoint_union(G: Graph, H: Graph, tags: tuple[str, str] = ("0", "1")) -> Graph:
    """Tagged union; vertex ``v`` of the first graph becomes ``"0:v"``."""
    t0, t1 = tags
    vs = [f"{t0}:{v}" for v in G.vertices] + [f"{t1}:{v}" for v in H.vertices]
    es = [(f"{t0}:{u}", f"{t0}:{w}") for u, w in G.edges]
    es += [(f"{t1}:{u}", f"{t1}:{w}") for u, w in H.edges]
    return Graph(vs, es)


def class_label(members: Iterable[str]) -> str:
    return "[" + ",".join(sorted(members, key=label_key)) + "]"


def quotient(G: Graph, classes: Iterable[Iterable]) -> tuple[Graph, GraphMap]:
    """Quotient by a partition of ``V(G)``.

    Two classes are adjacent when some pair of representatives is; a class is
    looped when two of its members are adjacent or one is looped.  Returns the
    quotient graph and the projection.
    """
    blocks = [sorted({str(v) for v in c}, key=label_key) for c in classes]
    seen: dict[str, int] = {}
    for k, block in enumerate(blocks):
        if not block:
            raise GraphError("empty class in partition")
        for v in block:
            if v not in G.index:
                raise GraphError(f"class member {v!r} is not a vertex")
            if v in seen:
                raise GraphError(f"vertex {v!r} lies in two classes")
            seen[v] = k
    if len(seen) != len(G):
        missing = next(v for v in G.vertices if v not in seen)
        raise GraphError(f"vertex {missing!r} is in no class")
    labels = [class_label(b) for b in blocks]
    if len(set(labels)) != len(labels):
        raise GraphError("class labels collide")
    owner = [seen[v] for v in G.vertices]
    edges = set()
    for a, row in enumerate(G.adj):
        for b in _bits(row):
            x, y = owner[a], owner[b]
            edges.add((min(x, y), max(x, y)))
    Q = Graph(labels, ((labels[x], labels[y]) for x, y in edges))
    proj = GraphMap(G, Q, {v: labels[seen[v]] for v in G.vertices})
    return Q, proj


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx

    def classes(self):
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


@dataclass(frozen=True)
class PushoutResult:
    """Pushout of ``f: A -> C`` and ``i: A -> B``.

    ``left_leg`` is the cobase change ``C -> object`` of ``i``;
    ``right_leg`` is the cobase change ``B -> object`` of ``f``.
    """

    object: Graph
    left_leg: GraphMap
    right_leg: GraphMap


def pushout_core(
    f_images, i_images, c_adj, b_adj
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...], list[list[int]]]:
    """Pushout of ``f: A -> C`` and ``i: A -> B`` on index and bitmask data.

    Nodes ``0 .. |C|-1`` are ``C`` and the rest are ``B``.  Returns the class
    of each ``C`` vertex, the class of each ``B`` vertex, the class adjacency
    masks and the member nodes of each class.
    """
    nc = len(c_adj)
    parent = list(range(nc + len(b_adj)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, c in enumerate(f_images):
        rc, rb = find(c), find(nc + i_images[a])
        if rc != rb:
            parent[max(rc, rb)] = min(rc, rb)
    cls = [0] * len(parent)
    members: list[list[int]] = []
    ids: dict[int, int] = {}
    for x in range(len(parent)):
        r = find(x)
        if r not in ids:
            ids[r] = len(members)
            members.append([])
        cls[x] = ids[r]
        members[ids[r]].append(x)
    adj = [0] * len(members)
    for x, row in enumerate(c_adj):
        for y in _bits(row):
            adj[cls[x]] |= 1 << cls[y]
    for x, row in enumerate(b_adj):
        for y in _bits(row):
            adj[cls[nc + x]] |= 1 << cls[nc + y]
    return tuple(cls[:nc]), tuple(cls[nc:]), tuple(adj), members


def pushout(f: GraphMap, i: GraphMap) -> PushoutResult:
    """Pushout of ``f: A -> C`` and ``i: A -> B``: ``C`` and ``B`` glued along ``A``.

    Vertices of ``C`` are tagged ``0:`` and those of ``B`` ``1:``; each vertex
    of the result is the class label of its members.
    """
    if f.domain != i.domain:
        raise GraphError("pushout needs maps with a common domain")
    C, B = f.codomain, i.codomain
    left_cls, right_cls, adj, members = pushout_core(f.images, i.images, C.adj, B.adj)
    names = [f"0:{v}" for v in C.vertices] + [f"1:{v}" for v in B.vertices]
    labels = [class_label(names[x] for x in m) for m in members]
    G = Graph(labels, ((labels[k], labels[h]) for k, row in enumerate(adj) for h in _bits(row)))
    left = GraphMap._trusted(C, G, (G.index[labels[k]] for k in left_cls))
    right = GraphMap._trusted(B, G, (G.index[labels[k]] for k in right_cls))
    if compose(left, f) != compose(right, i):
        raise AssertionError("pushout square does not commute")
    return PushoutResult(G, left, right)


def _glue_parts(i: GraphMap, n: int):
    A, B = i.domain, i.codomain
    AI = product(A, family("path_I", n))
    D = disjoint_union(AI, B)
    uf = _UnionFind(D.vertices)
    for a in A.vertices:
        uf.union(f"0:{product_label(a, '0')}", f"1:{i(a)}")
    return D, quotient(D, uf.classes())


def glue(i: GraphMap, n: int) -> tuple[Graph, GraphMap]:
    """``(A x I_n)`` glued to ``B`` along ``(a, 0) ~ i(a)``; returns the graph and ``j: B -> glue``."""
    if n < 0:
        raise GraphError("n must be a natural number")
    D, (Q, proj) = _glue_parts(i, n)
    B = i.codomain
    j = GraphMap._trusted(B, Q, (proj.images[D.index[f"1:{b}"]] for b in B.vertices))
    return Q, j


def glue_embedding(i: GraphMap, n: int) -> GraphMap:
    """The inclusion of the glue into ``B x I_n`` for injective ``i``."""
    if not i.is_injective():
        raise GraphError("glue embeds in B x I_n only for injective i")
    B = i.codomain
    D, (Q, proj) = _glue_parts(i, n)
    P = product(B, family("path_I", n))
    target = {}
    for v, c in zip(D.vertices, proj.images):
        tag, rest = v.split(":", 1)
        if tag == "1":
            image = product_label(rest, "0")
        else:
            a, k = rest[1:-1].rsplit(",", 1)
            image = product_label(i(a), k)
        target[Q.vertices[c]] = image
    return GraphMap(Q, P, target)
