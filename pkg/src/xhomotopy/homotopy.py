"""Folds, stiff cores, x-homotopies of maps and x-homotopy equivalences.

Two maps ``f, g: A -> B`` are adjacent when ``f(x) ~ g(y)`` for every edge
``xy`` of ``A``; a homotopy ``A x I_n -> B`` is exactly a walk of length ``n``
in this relation on graph maps, so homotopy classes are its connected
components and every search here is a breadth-first search over it.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional

from . import kernel
from .colimits import product, product_label
from .errors import GraphError, PreconditionError, SizeGuardError
from .graph import (
    FoldSequence,
    Graph,
    GraphMap,
    _bits,
    compose,
    family,
    identity,
    inverse,
    is_induced_inclusion,
    is_isomorphic,
)

DEFAULT_CAP = 10**6
CAP_ENV = "XHOMOTOPY_CAP"


def default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    return int(raw) if raw else DEFAULT_CAP


def guard(what: str, n_domain: int, n_codomain: int, cap: Optional[int] = None) -> None:
    """Refuse enumerations of ``n_codomain ** n_domain`` assignments above the cap."""
    cap = default_cap() if cap is None else cap
    bound = n_codomain**n_domain
    if bound > cap:
        raise SizeGuardError(what, bound, cap)


# -- folds -----------------------------------------------------------------


def _fold_pairs(G: Graph) -> Iterator[tuple[int, int]]:
    adj = G.adj
    n = len(adj)
    for a in range(n):
        for b in range(n):
            if a != b and adj[a] & ~adj[b] == 0:
                yield a, b


def find_fold(G: Graph) -> Optional[tuple[str, str]]:
    """Lexicographically smallest ``(v, v')`` with ``N(v) <= N(v')``, or None if stiff."""
    for a, b in _fold_pairs(G):
        return G.vertices[a], G.vertices[b]
    return None


def is_stiff(G: Graph) -> bool:
    return find_fold(G) is None


def fold(G: Graph, v, w) -> tuple[Graph, GraphMap]:
    v, w = str(v), str(w)
    if v == w:
        raise PreconditionError("a vertex cannot fold to itself")
    if G.adj[G._idx(v)] & ~G.adj[G._idx(w)]:
        raise PreconditionError(f"N({v}) is not contained in N({w})")
    H = G.remove_vertex(v)
    f = GraphMap(G, H, {u: (w if u == v else u) for u in G.vertices})
    return H, f


def stiff_core(G: Graph) -> tuple[Graph, FoldSequence]:
    steps = []
    H = G
    while True:
        pair = find_fold(H)
        if pair is None:
            return H, FoldSequence(G, H, tuple(steps))
        steps.append(pair)
        H = H.remove_vertex(pair[0])


def is_unfold(i: GraphMap) -> bool:
    """Induced inclusion adding one vertex ``v`` with ``N(v) <= N(v')`` for some ``v'`` in the image.

    Neighbourhoods are taken in the codomain, so this is exactly the inclusion
    ``B - v -> B`` of a fold of ``v``; a looped ``v`` is allowed.
    """
    B = i.codomain
    if len(B) != len(i.domain) + 1 or not is_induced_inclusion(i):
        return False
    image = i.image_mask()
    (v,) = _bits(((1 << len(B)) - 1) & ~image)
    return any(B.adj[v] & ~B.adj[w] == 0 for w in _bits(image))


# -- homotopies ------------------------------------------------------------


def _adjacent(A: Graph, B: Graph, f: tuple, g: tuple) -> bool:
    cod = B.adj
    for a, row in enumerate(A.adj):
        for b in _bits(row):
            if not cod[f[a]] >> g[b] & 1:
                return False
    return True


def _neighbour_masks(A: Graph, B: Graph, f: tuple) -> list[int]:
    full = (1 << len(B)) - 1
    masks = []
    for row in A.adj:
        m = full
        for x in _bits(row):
            m &= B.adj[f[x]]
        masks.append(m)
    return masks


def _neighbours(A: Graph, B: Graph, f: tuple) -> Iterator[tuple[int, ...]]:
    return kernel.iter_homs(A.adj, B.adj, _neighbour_masks(A, B, f))


@dataclass(frozen=True)
class Homotopy:
    """Stages ``f_0, ..., f_n: A -> B``, consecutive stages adjacent."""

    stages: tuple[GraphMap, ...]

    def __post_init__(self):
        stages = tuple(self.stages)
        object.__setattr__(self, "stages", stages)
        if not stages:
            raise GraphError("a homotopy needs at least one stage")
        A, B = stages[0].domain, stages[0].codomain
        for s in stages:
            if s.domain != A or s.codomain != B:
                raise GraphError("homotopy stages must share domain and codomain")
        for s, t in zip(stages, stages[1:]):
            if not _adjacent(A, B, s.images, t.images):
                raise GraphError("consecutive stages are not adjacent")

    @property
    def length(self) -> int:
        return len(self.stages) - 1

    @property
    def source(self) -> GraphMap:
        return self.stages[0]

    @property
    def target(self) -> GraphMap:
        return self.stages[-1]

    def reversed(self) -> "Homotopy":
        return Homotopy(self.stages[::-1])

    def then(self, other: "Homotopy") -> "Homotopy":
        if self.target != other.source:
            raise GraphError("homotopies do not meet")
        return Homotopy(self.stages + other.stages[1:])

    def as_map(self) -> GraphMap:
        """The map ``A x I_n -> B`` with ``(a, k) -> f_k(a)``."""
        A, B = self.source.domain, self.source.codomain
        P = product(A, family("path_I", self.length))
        return GraphMap(
            P, B,
            {product_label(a, str(k)): s(a) for k, s in enumerate(self.stages) for a in A.vertices},
        )


def are_homotopic(
    f: GraphMap, g: GraphMap, max_n: Optional[int] = None, cap: Optional[int] = None
) -> Optional[Homotopy]:
    """Shortest homotopy from ``f`` to ``g`` of length at most ``max_n``, or None."""
    if f.domain != g.domain or f.codomain != g.codomain:
        raise PreconditionError("maps must share domain and codomain")
    A, B = f.domain, f.codomain
    guard("are_homotopic", len(A), len(B), cap)
    start, goal = f.images, g.images
    parent = {start: None}
    depth = {start: 0}
    queue = deque([start])
    while queue and goal not in parent:
        h = queue.popleft()
        if max_n is not None and depth[h] >= max_n:
            continue
        for k in _neighbours(A, B, h):
            if k not in parent:
                parent[k] = h
                depth[k] = depth[h] + 1
                queue.append(k)
    if goal not in parent:
        return None
    path = [goal]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return Homotopy(tuple(GraphMap._trusted(A, B, p) for p in reversed(path)))


def homotopy_class(f: GraphMap, cap: Optional[int] = None) -> frozenset[tuple[int, ...]]:
    """Image tuples of every map homotopic to ``f``."""
    A, B = f.domain, f.codomain
    guard("homotopy_class", len(A), len(B), cap)
    seen = {f.images}
    queue = deque([f.images])
    while queue:
        h = queue.popleft()
        for k in _neighbours(A, B, h):
            if k not in seen:
                seen.add(k)
                queue.append(k)
    return frozenset(seen)


# -- equivalences ----------------------------------------------------------


def homotopy_inverse(f: GraphMap, cap: Optional[int] = None) -> Optional[GraphMap]:
    """Some ``g: B -> A`` with ``gf ~ 1_A`` and ``fg ~ 1_B``, found by exhaustive search."""
    A, B = f.domain, f.codomain
    guard("homotopy_inverse", len(B), len(A), cap)
    class_a = homotopy_class(identity(A), cap)
    class_b = homotopy_class(identity(B), cap)
    fi = f.images
    for g in kernel.iter_homs(B.adj, A.adj):
        if tuple(g[c] for c in fi) in class_a and tuple(fi[a] for a in g) in class_b:
            return GraphMap._trusted(B, A, g)
    return None


def core_map(f: GraphMap) -> GraphMap:
    """``f`` transported to stiff cores: retraction after ``f`` after inclusion."""
    _, seq_a = stiff_core(f.domain)
    _, seq_b = stiff_core(f.codomain)
    return compose(seq_b.retraction(), compose(f, seq_a.inclusion()))


def is_x_equivalence(f: GraphMap, cap: Optional[int] = None, method: str = "search") -> bool:
    """Whether ``f`` has a homotopy inverse.

    ``method="search"`` enumerates all candidate inverses and is subject to
    the size guard.  ``method="core"`` decides through stiff cores: folds are
    equivalences, and an equivalence between stiff graphs is an isomorphism
    (a map adjacent to the identity of a stiff graph is the identity), so
    ``f`` is an equivalence iff ``core_map(f)`` is an isomorphism.
    """
    if method == "search":
        return homotopy_inverse(f, cap) is not None
    if method == "core":
        h = core_map(f)
        if not (h.is_injective() and h.is_surjective()):
            return False
        return h.domain.num_edges == h.codomain.num_edges
    raise ValueError(f"unknown method {method!r}")


def are_x_equivalent(G: Graph, H: Graph) -> bool:
    """Equivalent iff the stiff cores are isomorphic."""
    return is_isomorphic(stiff_core(G)[0], stiff_core(H)[0]) is not None


def x_equivalence_witness(G: Graph, H: Graph) -> Optional[tuple[GraphMap, GraphMap]]:
    """Mutually inverse equivalences ``G -> H`` and ``H -> G`` built from fold sequences."""
    core_g, seq_g = stiff_core(G)
    core_h, seq_h = stiff_core(H)
    phi = is_isomorphic(core_g, core_h)
    if phi is None:
        return None
    there = compose(seq_h.inclusion(), compose(phi, seq_g.retraction()))
    back = compose(seq_g.inclusion(), compose(inverse(phi), seq_h.retraction()))
    return there, back


# -- relative folds --------------------------------------------------------


def relative_folds(B: Graph, keep_mask: int) -> Iterator[tuple[str, str]]:
    """Folds of vertices outside ``keep_mask``."""
    for a, b in _fold_pairs(B):
        if not keep_mask >> a & 1:
            yield B.vertices[a], B.vertices[b]


def fold_down(
    B: Graph, keep: Iterable[str], pair_ok: Optional[Callable[[str, str], bool]] = None
) -> Optional[FoldSequence]:
    """Folds of vertices outside ``keep`` reducing ``B`` to ``B[keep]``, or None.

    Only folds ``(v, w)`` accepted by ``pair_ok`` are used.  Depth-first over
    fold orders with failed vertex sets memoised, so None is definitive.
    """
    keep = set(keep)
    dead: set[frozenset[str]] = set()

    def search(G: Graph) -> Optional[list[tuple[str, str]]]:
        if len(G) == len(keep):
            return []
        key = frozenset(G.vertices)
        if key in dead:
            return None
        for v, w in relative_folds(G, G.mask_of(keep)):
            if pair_ok is not None and not pair_ok(v, w):
                continue
            rest = search(G.remove_vertex(v))
            if rest is not None:
                return [(v, w)] + rest
        dead.add(key)
        return None

    steps = search(B)
    if steps is None:
        return None
    return FoldSequence(B, B.induced(keep), tuple(steps))


def relative_fold_sequence(i: GraphMap) -> Optional[FoldSequence]:
    """Folds of vertices outside the image reducing ``B`` to the image, or None."""
    if not is_induced_inclusion(i):
        raise PreconditionError("relative folds need an induced inclusion")
    return fold_down(i.codomain, (i.codomain.vertices[c] for c in i.images))
