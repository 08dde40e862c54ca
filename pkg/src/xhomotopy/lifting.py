"""Lifting problems: retractions, homotopy extension, and the fibration and
cofibration classes determined by unfolds."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Optional

from . import census, kernel
from .colimits import glue_embedding
from .errors import DisconnectedError, GraphError, PreconditionError
from .graph import (
    FoldSequence,
    Graph,
    GraphMap,
    _bits,
    compose,
    family,
    identity,
    is_induced_inclusion,
    is_isomorphic,
)
from .homotopy import fold_down, guard, is_x_equivalence


@dataclass(frozen=True)
class LiftingSquare:
    """Commuting square ``right . top == bottom . left``.

    ::

        A --top--> X
        |          |
       left      right
        v          v
        B -bottom> Y
    """

    left: GraphMap
    top: GraphMap
    bottom: GraphMap
    right: GraphMap

    def __post_init__(self):
        if self.left.domain != self.top.domain:
            raise GraphError("left and top must share a domain")
        if self.left.codomain != self.bottom.domain:
            raise GraphError("bottom must start where left ends")
        if self.top.codomain != self.right.domain:
            raise GraphError("right must start where top ends")
        if self.bottom.codomain != self.right.codomain:
            raise GraphError("bottom and right must share a codomain")
        if compose(self.right, self.top) != compose(self.bottom, self.left):
            raise GraphError("square does not commute")


def find_retraction(j: GraphMap, cap: Optional[int] = None) -> Optional[GraphMap]:
    """``r: T -> S`` with ``r . j == 1_S`` for injective ``j: S -> T``, or None."""
    if not j.is_injective():
        raise PreconditionError("retraction search needs an injective map")
    S, T = j.domain, j.codomain
    guard("find_retraction", len(T) - len(S), len(S), cap)
    allowed = [(1 << len(S)) - 1] * len(T)
    for s, t in enumerate(j.images):
        allowed[t] = 1 << s
    img = kernel.first_hom(T.adj, S.adj, allowed)
    return None if img is None else GraphMap._trusted(T, S, img)


def has_hep(i: GraphMap, n: int, cap: Optional[int] = None) -> bool:
    """Homotopy extension at length ``n``: the glue is a retract of ``B x I_n``."""
    if not i.is_injective():
        raise PreconditionError("HEP is decided for injective maps")
    return find_retraction(glue_embedding(i, n), cap) is not None


class HEPClass(enum.Enum):
    ISOMORPHISM = "Isomorphism"
    DISJOINT_SUMMAND = "DisjointSummand"
    NO_HEP = "NoHEP"


def hep_classify(i: GraphMap) -> HEPClass:
    """Structural HEP verdict for an injective map.

    ``DISJOINT_SUMMAND`` means ``i`` is an isomorphism onto an induced
    subgraph with no edge to the rest of ``B``.
    """
    if not i.is_injective():
        raise PreconditionError("classification is for injective maps")
    if is_induced_inclusion(i):
        if i.is_surjective():
            return HEPClass.ISOMORPHISM
        image = i.image_mask()
        if all(i.codomain.adj[c] & ~image == 0 for c in i.images):
            return HEPClass.DISJOINT_SUMMAND
    return HEPClass.NO_HEP


def find_lift(sq: LiftingSquare, cap: Optional[int] = None) -> Optional[GraphMap]:
    """Lexicographically first ``F: B -> X`` with ``F . left == top`` and ``right . F == bottom``."""
    i, f, g, p = sq.left, sq.top, sq.bottom, sq.right
    B, X = i.codomain, f.codomain
    allowed = [0] * len(B)
    for b, y in enumerate(g.images):
        allowed[b] = sum(1 << x for x, py in enumerate(p.images) if py == y)
    fixed: dict[int, int] = {}
    for a, b in enumerate(i.images):
        if fixed.setdefault(b, f.images[a]) != f.images[a]:
            return None
        allowed[b] &= 1 << f.images[a]
    guard("find_lift", len(B) - len(fixed), len(X), cap)
    img = kernel.first_hom(B.adj, X.adj, allowed)
    return None if img is None else GraphMap._trusted(B, X, img)


# -- unfolds and the class F -----------------------------------------------


def unfold_graph(A: Graph, nbrs, looped: bool, name: str = "v") -> Graph:
    """``A`` plus a new vertex adjacent to ``nbrs`` (and to itself if looped)."""
    if name in A.index:
        raise GraphError(f"vertex {name!r} already present")
    edges = A.edges + [(name, u) for u in nbrs]
    if looped:
        edges.append((name, name))
    return Graph(list(A.vertices) + [name], edges)


def unfolds(A: Graph, name: str = "v") -> Iterator[GraphMap]:
    """Every unfold ``A -> A + {v}`` (each admissible neighbourhood once)."""
    seen = set()
    for w, row in enumerate(A.adj):
        base = [u for u in _bits(row)]
        w_looped = row >> w & 1
        for r in range(len(base) + 1):
            for nb in combinations(base, r):
                for looped in (False, True):
                    if looped and (not w_looped or w not in nb):
                        continue
                    key = (frozenset(nb), looped)
                    if key in seen:
                        continue
                    seen.add(key)
                    B = unfold_graph(A, [A.vertices[u] for u in nb], looped, name)
                    yield GraphMap._trusted(A, B, [B.index[x] for x in A.vertices])


@lru_cache(maxsize=None)
def _unfold_lift_problems(X: Graph, cap: int) -> dict:
    """Distinct lift problems posed by unfold squares with top map into ``X``.

    Enumerates every unfold ``i: A -> A + {v}`` with ``|A| <= cap`` and every
    map ``f: A -> X``.  The lift only has to choose ``F(v)``, so a square is
    determined, up to the choice of ``g(v)``, by the set ``f(N(v) - {v})``
    and whether ``v`` is looped.  Returns ``{(image_mask, looped): witness}``.
    """
    found: dict = {}
    for n in range(1, cap + 1):
        for A in census.graphs(n):
            homs = list(kernel.iter_homs(A.adj, X.adj))
            if not homs:
                continue
            for i in unfolds(A):
                B = i.codomain
                v = B.index["v"]
                nb = [B.vertices[u] for u in _bits(B.adj[v]) if u != v]
                nb_idx = [A.index[u] for u in nb]
                looped = bool(B.adj[v] >> v & 1)
                for f in homs:
                    mask = 0
                    for a in nb_idx:
                        mask |= 1 << f[a]
                    found.setdefault((mask, looped), (i, f))
    return found


def _lift_failure(p: GraphMap, mask: int, looped: bool) -> Optional[int]:
    """A value ``y`` for ``g(v)`` that admits a commuting square but no lift."""
    X, Y = p.domain, p.codomain
    targets = (1 << len(Y)) - 1
    common = (1 << len(X)) - 1
    for t in _bits(mask):
        targets &= Y.adj[p.images[t]]
        common &= X.adj[t]
    if looped:
        targets &= Y.looped_mask
        common &= X.looped_mask
    for y in _bits(targets):
        if not any(p.images[x] == y for x in _bits(common)):
            return y
    return None


def rlp_counterexample(p: GraphMap, cap: int) -> Optional[LiftingSquare]:
    """An unfold square against ``p`` with no lift, or None."""
    for (mask, looped), (i, f) in sorted(
        _unfold_lift_problems(p.domain, cap).items(), key=lambda kv: (kv[0][1], kv[0][0])
    ):
        y = _lift_failure(p, mask, looped)
        if y is None:
            continue
        top = GraphMap._trusted(i.domain, p.domain, f)
        B = i.codomain
        v = B.index["v"]
        low = compose(p, top).images
        g = [0] * len(B)
        for a, b in enumerate(i.images):
            g[b] = low[a]
        g[v] = y
        sq = LiftingSquare(i, top, GraphMap.from_images(B, p.codomain, g), p)
        assert find_lift(sq) is None
        return sq
    return None


def has_rlp_against_unfolds(p: GraphMap, domain_size_cap: int) -> bool:
    """Brute-force right lifting against all unfolds out of graphs with at most ``domain_size_cap`` vertices."""
    return rlp_counterexample(p, domain_size_cap) is None


def edge_vertex_surjectivity(p: GraphMap) -> tuple[bool, bool]:
    X, Y = p.domain, p.codomain
    onto_vertices = p.is_surjective()
    hit = set()
    for a, row in enumerate(X.adj):
        for b in _bits(row):
            y1, y2 = p.images[a], p.images[b]
            hit.add((min(y1, y2), max(y1, y2)))
    onto_edges = hit == {(u, w) for u, row in enumerate(Y.adj) for w in _bits(row) if u <= w}
    return onto_vertices, onto_edges


def _fiber(p: GraphMap, y: int) -> int:
    return sum(1 << x for x, py in enumerate(p.images) if py == y)


K2 = family("complete_K", 2)
I0 = family("path_I", 0)


def in_class_f(p: GraphMap) -> bool:
    """Closed-form membership in the class of maps lifting against every unfold.

    For connected ``X`` and ``Y``: ``p`` must be onto the edges of ``Y``.
    When ``Y`` is ``K2`` or a single looped vertex nothing else is needed.
    Otherwise every fibre over a non-loop edge must be complete bipartite,
    every fibre over a looped vertex a clique, and such a fibre must contain
    a looped vertex whenever another looped vertex is adjacent to it.
    """
    X, Y = p.domain, p.codomain
    if not (X.is_connected() and Y.is_connected()):
        raise DisconnectedError("class F is characterised for connected graphs only")
    if not edge_vertex_surjectivity(p)[1]:
        return False
    if is_isomorphic(Y, K2) is not None or is_isomorphic(Y, I0) is not None:
        return True
    fibers = [_fiber(p, y) for y in range(len(Y))]
    looped_y = Y.looped_mask
    for y1, row in enumerate(Y.adj):
        for y2 in _bits(row):
            if y2 == y1:
                continue
            for x in _bits(fibers[y1]):
                if fibers[y2] & ~X.adj[x]:
                    return False
        if not row >> y1 & 1:
            continue
        fib = fibers[y1]
        for x in _bits(fib):
            if fib & ~X.adj[x] & ~(1 << x):
                return False
        if row & looped_y & ~(1 << y1) and not fib & X.looped_mask:
            return False
    return True


def _first_section(X: Graph, Y: Graph, choices: list) -> Optional[list]:
    img: list = []

    def extend(y: int) -> bool:
        if y == len(Y):
            return True
        for x in choices[y]:
            if all(X.adj[x] >> img[z] & 1 for z in _bits(Y.adj[y] & ((1 << y) - 1))):
                img.append(x)
                if extend(y + 1):
                    return True
                img.pop()
        return False

    return img if extend(0) else None


def section_of(p: GraphMap) -> GraphMap:
    """The canonical section ``s`` with ``p . s == 1_Y`` of an acyclic fibration.

    ``s(y)`` is drawn from the fibre over ``y`` (looped points only when ``y``
    is looped); the lexicographically first edge-preserving choice wins.  With
    complete bipartite fibre pairs that is simply the first point of each fibre.
    """
    if not in_class_f(p):
        raise PreconditionError("section_of needs a map in class F")
    if not is_x_equivalence(p):
        raise PreconditionError("section_of needs an x-homotopy equivalence")
    X, Y = p.domain, p.codomain
    choices = []
    for y in range(len(Y)):
        fib = _fiber(p, y)
        if Y.adj[y] >> y & 1:
            fib &= X.looped_mask
        if not fib:
            raise PreconditionError(f"fibre over {Y.vertices[y]!r} has no admissible point")
        choices.append(list(_bits(fib)))
    img = _first_section(X, Y, choices)
    if img is None:
        raise PreconditionError("no edge-preserving choice of fibre points")
    s = GraphMap.from_images(Y, X, img)
    if compose(p, s) != identity(Y):
        raise AssertionError("p . s is not the identity")
    return s


def fiber_fold_sequence(p: GraphMap) -> FoldSequence:
    """Folds inside fibres of ``p`` taking ``X`` down to the image of its section."""
    s = section_of(p)
    X = p.domain
    keep = [X.vertices[x] for x in s.images]
    seq = fold_down(X, keep, lambda v, w: p(v) == p(w))
    if seq is None:
        raise GraphError("the fibres do not fold onto the section")
    return seq


# -- the class C -----------------------------------------------------------


def in_class_c(i: GraphMap) -> bool:
    """Left lifting against acyclic class-F maps holds exactly for induced inclusions."""
    return is_induced_inclusion(i)


def looped_clique_collapse(n: int) -> GraphMap:
    """``K_n`` with one looped vertex, collapsed onto a looped vertex."""
    K = family("complete_K", n)
    X = Graph(K.vertices, K.edges + [("1", "1")])
    return GraphMap(X, I0, {x: "0" for x in X.vertices})


def looped_edge_collapse() -> GraphMap:
    """``{x, x'}`` with edges ``xx'`` and ``xx``, collapsed onto a looped vertex."""
    X = Graph(["x", "x'"], [("x", "x'"), ("x", "x")])
    return GraphMap(X, I0, {"x": "0", "x'": "0"})


def has_llp_against(i: GraphMap, p: GraphMap, cap: Optional[int] = None) -> bool:
    """Every commuting square from ``i`` to ``p`` has a lift (exhaustive)."""
    A, B = i.domain, i.codomain
    X, Y = p.domain, p.codomain
    guard("has_llp_against", len(A), len(X), cap)
    guard("has_llp_against", len(B), len(Y), cap)
    for f in kernel.iter_homs(A.adj, X.adj):
        top = GraphMap._trusted(A, X, f)
        pf = [p.images[x] for x in f]
        allowed = [(1 << len(Y)) - 1] * len(B)
        ok = True
        for a, b in enumerate(i.images):
            allowed[b] &= 1 << pf[a]
            if not allowed[b]:
                ok = False
        if not ok:
            continue
        for g in kernel.iter_homs(B.adj, Y.adj, allowed):
            sq = LiftingSquare(i, top, GraphMap._trusted(B, Y, g), p)
            if find_lift(sq, cap) is None:
                return False
    return True
