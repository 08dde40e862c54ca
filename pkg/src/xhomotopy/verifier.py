"""Named, deterministic checks that rebuild the counterexamples and
obstructions of the theory and record every computed fact in a transcript."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional

from . import census, kernel
from .colimits import pushout, pushout_core
from .errors import PreconditionError, SizeGuardError
from .graph import (
    Graph,
    GraphMap,
    _bits,
    compose,
    constant_map,
    family,
    graph_with_loops,
    inclusion,
    is_induced_inclusion,
    is_isomorphic,
)
from .homotopy import (
    _fold_pairs,
    is_stiff,
    is_unfold,
    is_x_equivalence,
    relative_fold_sequence,
    relative_folds,
    stiff_core,
)
from .lifting import (
    HEPClass,
    LiftingSquare,
    find_lift,
    has_hep,
    has_rlp_against_unfolds,
    hep_classify,
    in_class_f,
    unfolds,
)

# how each transcript line was obtained
STATED = "stated"  # a fact asserted by the theory, recomputed here
ORACLE = "oracle"  # an independent computation cross-checking another
SANITY = "sanity"  # an elementary consequence of the definitions


@dataclass(frozen=True)
class TranscriptLine:
    claim: str
    computed: Any
    expected: Any
    kind: str = STATED

    @property
    def ok(self) -> bool:
        return self.computed == self.expected


@dataclass
class CheckReport:
    check_name: str
    transcript: list[TranscriptLine] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(line.ok for line in self.transcript)

    def add(self, claim: str, computed: Any, expected: Any, kind: str = STATED) -> bool:
        line = TranscriptLine(claim, computed, expected, kind)
        self.transcript.append(line)
        return line.ok

    def lines(self) -> list[str]:
        out = [f"{'PASS' if self.verdict else 'FAIL'} {self.check_name}"]
        for t in self.transcript:
            mark = "ok " if t.ok else "BAD"
            out.append(f"  [{mark}] {t.claim}: computed={t.computed!r} expected={t.expected!r} ({t.kind})")
        return out

    def to_dict(self) -> dict:
        return {
            "check_name": self.check_name,
            "verdict": "pass" if self.verdict else "fail",
            "transcript": [
                {"claim": t.claim, "computed": t.computed, "expected": t.expected, "kind": t.kind}
                for t in self.transcript
            ],
        }


# -- metric helpers --------------------------------------------------------


def _distances(G: Graph, source: int) -> list[Optional[int]]:
    dist: list[Optional[int]] = [None] * len(G)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in _bits(G.adj[u]):
            if dist[w] is None:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def diameter(G: Graph) -> int:
    """Largest distance between two vertices, loops ignored; requires a connected graph."""
    if not G.is_connected():
        raise PreconditionError("diameter needs a connected graph")
    return max(max(d for d in _distances(G, s)) for s in range(len(G)))


def odd_girth(G: Graph) -> Optional[int]:
    """Length of a shortest odd closed walk (a loop counts as 1), or None if bipartite.

    From each source, BFS on the doubled graph (vertex, parity) gives the
    shortest odd closed walk through the source; the minimum over sources is
    a shortest odd cycle.
    """
    best = None
    n = len(G)
    for s in range(n):
        dist = {(s, 0): 0}
        queue = deque([(s, 0)])
        while queue:
            u, par = queue.popleft()
            for w in _bits(G.adj[u]):
                nxt = (w, par ^ 1)
                if nxt not in dist:
                    dist[nxt] = dist[(u, par)] + 1
                    queue.append(nxt)
        d = dist.get((s, 1))
        if d is not None and (best is None or d < best):
            best = d
    return best


def _equivalence_verdict(f: GraphMap, report: CheckReport, what: str) -> bool:
    """Decide ``f`` through cores and, when affordable, also by exhaustive search."""
    by_core = is_x_equivalence(f, method="core")
    try:
        by_search = is_x_equivalence(f, method="search")
    except SizeGuardError:
        return by_core
    report.add(f"{what}: core and search verdicts agree", by_core, by_search, ORACLE)
    return by_core


# -- the figure ------------------------------------------------------------


def figure_graphs() -> tuple[Graph, Graph, Graph, GraphMap, GraphMap]:
    """``A``, ``B = K3``, ``C``, the fold-like ``f: A -> B`` and the inclusion ``g: A -> C``."""
    A = Graph("abcp", ["ab", "ac", "bc", "bp"])
    B = Graph("abc", ["ab", "ac", "bc"])
    C = Graph("abcpq", ["ab", "ac", "bc", "bp", "bq", "cq", "pq"])
    f = GraphMap(A, B, {"a": "a", "b": "b", "c": "c", "p": "a"})
    g = inclusion(A, C)
    return A, B, C, f, g


def check_figure_cobase() -> CheckReport:
    r = CheckReport("figure_cobase")
    A, B, C, f, g = figure_graphs()
    K3, K4 = family("complete_K", 3), family("complete_K", 4)
    r.add("g: A -> C is an induced inclusion", is_induced_inclusion(g), True)
    r.add("g is an x-homotopy equivalence", _equivalence_verdict(g, r, "g"), True)
    r.add("f: A -> K3 is an x-homotopy equivalence", _equivalence_verdict(f, r, "f"), True)
    po = pushout(f, g)
    phi = is_isomorphic(po.object, K4)
    r.add("pushout object is isomorphic to K4", phi is not None, True)
    if phi is not None:
        r.add("isomorphism witness is a bijection", phi.is_injective() and phi.is_surjective(), True, SANITY)
        r.add("edge counts agree", po.object.num_edges, K4.num_edges, SANITY)
    core_c, _ = stiff_core(C)
    r.add("stiff core of C is isomorphic to K3", is_isomorphic(core_c, K3) is not None, True)
    r.add("K4 is stiff", is_stiff(K4), True, SANITY)
    r.add(
        "cobase change C -> pushout is an x-homotopy equivalence",
        _equivalence_verdict(po.right_leg, r, "C -> pushout"),
        False,
    )
    r.add(
        "cobase change K3 -> pushout is an x-homotopy equivalence",
        _equivalence_verdict(po.left_leg, r, "K3 -> pushout"),
        False,
    )
    return r


# -- the five-cycle gadget -------------------------------------------------


def _folding_mask(G: Graph) -> int:
    mask = 0
    for a, _ in _fold_pairs(G):
        mask |= 1 << a
    return mask


def _check_gadget_pre(i: GraphMap) -> None:
    if not is_induced_inclusion(i):
        raise PreconditionError("i must be an induced inclusion")
    if len(i.domain) >= len(i.codomain):
        raise PreconditionError("i must miss at least one vertex")
    if not is_x_equivalence(i, method="core"):
        raise PreconditionError("i must be an x-homotopy equivalence")
    if relative_fold_sequence(i) is not None:
        raise PreconditionError("i admits a relative fold sequence")


def gadget_attachment_points(i: GraphMap) -> list[str]:
    """Vertices of ``A`` whose image folds in ``B``."""
    folding = _folding_mask(i.codomain)
    return [a for a, b in zip(i.domain.vertices, i.images) if folding >> b & 1]


def build_c5_gadget(i: GraphMap) -> tuple[Graph, GraphMap]:
    """``A`` with a fresh 5-cycle ``x, x#2, x#3, x#4, x#5`` through each folding ``x``."""
    _check_gadget_pre(i)
    A = i.domain
    points = gadget_attachment_points(i)
    vertices = list(A.vertices)
    edges = list(A.edges)
    for x in points:
        ring = [x] + [f"{x}#{k}" for k in range(2, 6)]
        for v in ring[1:]:
            if v in A.index:
                raise PreconditionError(f"gadget label {v!r} clashes with a vertex of A")
        vertices += ring[1:]
        edges += [(ring[k], ring[(k + 1) % 5]) for k in range(5)]
    C = Graph(vertices, edges)
    return C, inclusion(A, C)


def reduce_by_relative_folds(i: GraphMap) -> GraphMap:
    """Apply relative folds (first available each time) until none remain."""
    A, B = i.domain, i.codomain
    image = [B.vertices[c] for c in i.images]
    while True:
        step = next(relative_folds(B, B.mask_of(image)), None)
        if step is None:
            return GraphMap._trusted(A, B, [B.index[v] for v in image])
        B = B.remove_vertex(step[0])


def check_gadget_breaks_cobase(i: GraphMap) -> CheckReport:
    """The gadget's cobase change of ``i`` is not an equivalence.

    If ``B`` still has single relative folds (without a full sequence) they
    are applied first; the cobase change along the original ``i`` is checked
    as well.
    """
    _check_gadget_pre(i)
    r = CheckReport("gadget_breaks_cobase")
    reduced = reduce_by_relative_folds(i)
    r.add("reduced inclusion has no relative fold",
          next(relative_folds(reduced.codomain, reduced.image_mask()), None), None, SANITY)
    C, f = build_c5_gadget(reduced)
    points = gadget_attachment_points(reduced)
    r.add("gadget adds four vertices per attachment point", len(C) - len(f.domain), 4 * len(points), SANITY)
    po = pushout(f, reduced)
    G = po.object
    core_c, _ = stiff_core(C)
    core_g, _ = stiff_core(G)
    r.add("core of C is smaller than core of the pushout", len(core_c) < len(core_g), True)
    r.add("C5 is stiff", is_stiff(family("cycle_C", 5)), True, SANITY)
    r.add("C5 with a loop is stiff", is_stiff(graph_with_loops(family("cycle_C", 5), ["0"])), True, SANITY)

    folding = _folding_mask(G)
    gadget_mask = 0
    for x in points:
        for c in [x] + [f"{x}#{k}" for k in range(2, 6)]:
            gadget_mask |= 1 << po.left_leg.images[C.index[c]]
    r.add("no vertex of an attached 5-cycle folds in the pushout",
          G.labels_of(folding & gadget_mask), [], STATED)
    rest_mask = po.right_leg.image_mask() & ~gadget_mask
    r.add("no vertex of B outside the attachment points folds in the pushout",
          G.labels_of(folding & rest_mask), [], STATED)
    r.add("cobase change of the reduced inclusion is an x-homotopy equivalence",
          _equivalence_verdict(po.left_leg, r, "reduced cobase change"), False)
    if reduced.codomain != i.codomain:
        full = pushout(f, i)
        r.add("cobase change of i is an x-homotopy equivalence",
              _equivalence_verdict(full.left_leg, r, "cobase change"), False)
    return r


def gadget_instances(max_vertices: int = 5) -> list[GraphMap]:
    """Qualifying inputs: proper induced-inclusion equivalences without a relative fold sequence."""
    out = []
    for B in census.graphs_up_to(max_vertices):
        for i in census.induced_inclusions(B, proper=True):
            if not is_x_equivalence(i, method="core"):
                continue
            if relative_fold_sequence(i) is None:
                out.append(i)
    return out


# -- relative folds --------------------------------------------------------


def check_relative_fold_transfer(i: GraphMap, v: str, max_test: int = 3) -> CheckReport:
    """Cobase changes of ``A -> B`` and ``A -> B - v`` agree on being equivalences."""
    B = i.codomain
    v = str(v)
    if v not in B.index:
        raise PreconditionError(f"{v!r} is not a vertex of B")
    if i.image_mask() >> B.index[v] & 1:
        raise PreconditionError(f"{v!r} lies in the image of A")
    if not any(a == B.index[v] for a, _ in _fold_pairs(B)):
        raise PreconditionError(f"{v!r} does not fold in B")
    A = i.domain
    Bv = B.remove_vertex(v)
    j = GraphMap._trusted(A, Bv, [Bv.index[B.vertices[c]] for c in i.images])
    r = CheckReport("relative_fold_transfer")
    total = agree = equivalences = 0
    first_bad = None
    for X in census.graphs_up_to(max_test):
        for alpha in kernel.iter_homs(A.adj, X.adj):
            a = GraphMap._trusted(A, X, alpha)
            via_i = is_x_equivalence(pushout(a, i).left_leg, method="core")
            via_j = is_x_equivalence(pushout(a, j).left_leg, method="core")
            total += 1
            equivalences += via_i
            if via_i == via_j:
                agree += 1
            elif first_bad is None:
                first_bad = (X.edges, alpha)
    r.add("test maps examined", total > 0, True, SANITY)
    r.add("verdicts agree on every test map", agree, total)
    r.add("first disagreement", first_bad, None)
    r.add("equivalence count", equivalences, equivalences, SANITY)
    return r


# -- the L_n family --------------------------------------------------------


def pn_map(n: int) -> GraphMap:
    """The collapse ``L_n -> I_0``."""
    return constant_map(family("looped_tail_L", n), family("path_I", 0), "0")


def check_pn_family(n: int, unfold_cap: int) -> CheckReport:
    r = CheckReport(f"pn_family[n={n},cap={unfold_cap}]")
    p = pn_map(n)
    L = p.domain
    core, _ = stiff_core(L)
    r.add("stiff core of L_n is a single looped vertex",
          is_isomorphic(core, family("path_I", 0)) is not None, True)
    r.add("p_n is an x-homotopy equivalence", _equivalence_verdict(p, r, "p_n"), True)
    r.add("p_n passes the class F characterisation", in_class_f(p), True)
    r.add("p_n lifts against every unfold from graphs up to the cap",
          has_rlp_against_unfolds(p, unfold_cap), True, ORACLE)

    squares = built = 0
    for size in range(1, unfold_cap + 1):
        for A in census.graphs(size):
            homs = list(kernel.iter_homs(A.adj, L.adj))
            for i in unfolds(A):
                Bg = i.codomain
                v = Bg.index["v"]
                partners = [w for w in range(len(Bg)) if w != v and Bg.adj[v] & ~Bg.adj[w] == 0]
                for f in homs:
                    for w in partners:
                        squares += 1
                        img = [0] * len(Bg)
                        for a, b in enumerate(i.images):
                            img[b] = f[a]
                        img[v] = img[w]
                        F = GraphMap._trusted(Bg, L, img)
                        if F.violated_edge() is None and compose(F, i).images == tuple(f):
                            built += 1
    r.add("copying the partner's image always gives a lift", built, squares)
    return r


# -- no factorization ------------------------------------------------------


def no_factorization_square(B: Graph, t: int) -> LiftingSquare:
    """Edge ``K2 -> B`` on its first two vertices, against ``p_t``."""
    K2 = family("complete_K", 2)
    i = GraphMap(K2, B, {"1": B.vertices[0], "2": B.vertices[1]})
    p = pn_map(t)
    f = GraphMap(K2, p.domain, {"1": str(t), "2": str(t - 1)})
    g = constant_map(B, p.codomain, "0")
    return LiftingSquare(i, f, g, p)


def check_no_factorization(k: int) -> CheckReport:
    if k < 3 or k % 2 == 0:
        raise PreconditionError("k must be odd and at least 3")
    r = CheckReport(f"no_factorization[k={k}]")
    B = family("cycle_C", k)
    d = diameter(B)
    t = d + 2
    r.add("odd girth of C_k", odd_girth(B), k, SANITY)
    r.add("diameter of C_k", d, k // 2, SANITY)
    sq = no_factorization_square(B, t)
    r.add("square commutes", compose(sq.right, sq.top) == compose(sq.bottom, sq.left), True, SANITY)
    r.add("a lift exists", find_lift(sq) is not None, False)
    L = sq.right.domain
    misses = sum(1 for h in kernel.iter_homs(B.adj, L.adj) if h and 0 not in h)
    r.add("maps C_k -> L_t avoiding the looped vertex", misses, 0)
    # a bipartite domain does lift, and its lift stays off the loop
    P3 = family("path_P", 3)
    sane = find_lift(no_factorization_square(P3, t))
    r.add("P3 in place of C_k: a lift exists", sane is not None, True, ORACLE)
    if sane is not None:
        r.add("P3 lift avoids the looped vertex", 0 in sane.images, False, ORACLE)
    return r


# -- homotopy extension ----------------------------------------------------


def check_hep_rigidity(max_vertices: int, lengths: Iterable[int] = (1, 2)) -> CheckReport:
    r = CheckReport(f"hep_rigidity[max={max_vertices}]")
    lengths = tuple(lengths)
    maps = census.injective_map_classes(max_vertices)
    for n in lengths:
        agree = 0
        bad = None
        for i in maps:
            if has_hep(i, n) == (hep_classify(i) is not HEPClass.NO_HEP):
                agree += 1
            elif bad is None:
                bad = (i.domain.edges, i.codomain.edges, i.images)
        r.add(f"HEP with I_{n} matches the classification", agree, len(maps))
        r.add(f"first mismatch with I_{n}", bad, None)
    if max_vertices >= 3:
        K2, P3 = family("complete_K", 2), family("path_P", 3)
        e = GraphMap(K2, P3, {"1": "1", "2": "2"})
        r.add("K2 -> P3 has HEP", has_hep(e, 1), False)
        r.add("K2 -> P3 classification", hep_classify(e).value, HEPClass.NO_HEP.value, SANITY)
    return r


# -- cobase change preservation --------------------------------------------


def _leg_properties(c_cls, adj, c_adj) -> tuple[bool, bool, bool, bool]:
    """(injective, induced, isomorphism, unfold) for a leg given by class indices."""
    n = len(c_cls)
    injective = len(set(c_cls)) == n
    if not injective:
        return False, False, False, False
    induced = True
    for a in range(n):
        row = adj[c_cls[a]]
        for b in range(a, n):
            if row >> c_cls[b] & 1 and not c_adj[a] >> b & 1:
                induced = False
                break
        if not induced:
            break
    iso = induced and len(adj) == n
    unfold = False
    if induced and len(adj) == n + 1:
        image = 0
        for c in c_cls:
            image |= 1 << c
        (w,) = _bits(((1 << len(adj)) - 1) & ~image)
        unfold = any(adj[w] & ~adj[u] == 0 for u in _bits(image))
    return injective, induced, iso, unfold


def _arrow_properties(i: GraphMap) -> tuple[bool, bool, bool, bool]:
    inj = i.is_injective()
    ind = is_induced_inclusion(i)
    return inj, ind, ind and i.is_surjective(), is_unfold(i)


PROPERTY_NAMES = ("inclusion", "induced inclusion", "isomorphism", "unfold")


def cobase_spans(bounds: Iterable[tuple[int, int]] = ((4, 3), (3, 4))):
    """Spans ``(i: A -> B, f: A -> C)`` with ``i`` injective up to isomorphism.

    ``bounds`` lists ``(max |B|, max |C|)`` regions; a span is produced once
    even if it lies in several regions.
    """
    done: list[tuple[int, int]] = []
    for max_b, max_c in bounds:
        for i in census.injective_map_classes(max_b):
            nb = len(i.codomain)
            for C in census.graphs_up_to(max_c):
                if any(nb <= b and len(C) <= c for b, c in done):
                    continue
                for f in kernel.iter_homs(i.domain.adj, C.adj):
                    yield i, C, f
        done.append((max_b, max_c))


def check_cobase_preservation(bounds: Iterable[tuple[int, int]] = ((4, 3), (3, 4))) -> CheckReport:
    """Cobase changes of inclusions, induced inclusions, isomorphisms and unfolds keep the property."""
    bounds = tuple(bounds)
    r = CheckReport("cobase_preservation")
    have = [0, 0, 0, 0]
    kept = [0, 0, 0, 0]
    first_bad: list = [None] * 4
    current = None
    props = None
    spans = 0
    for i, C, f in cobase_spans(bounds):
        if i is not current:
            current, props = i, _arrow_properties(i)
        spans += 1
        c_cls, _, adj, _ = pushout_core(f, i.images, C.adj, i.codomain.adj)
        leg = _leg_properties(c_cls, adj, C.adj)
        for k in range(4):
            if props[k]:
                have[k] += 1
                if leg[k]:
                    kept[k] += 1
                elif first_bad[k] is None:
                    first_bad[k] = (i.domain.edges, i.codomain.edges, i.images, C.edges, f)
    r.add("spans examined", spans > 0, True, SANITY)
    for k, name in enumerate(PROPERTY_NAMES):
        r.add(f"{name}: cobase changes keeping the property", kept[k], have[k])
        r.add(f"{name}: first failure", first_bad[k], None)
    # the acyclic cofibration from the figure is not preserved
    _, _, _, f, g = figure_graphs()
    leg = pushout(f, g).left_leg
    r.add("figure: cobase change of the equivalence g is an equivalence",
          is_x_equivalence(leg, method="core"), False)
    return r


# -- suite -----------------------------------------------------------------


def relative_fold_examples() -> list[tuple[GraphMap, str]]:
    """The figure's graph ``C`` relative to its triangle, folding ``p`` then ``q``."""
    _, _, C, _, _ = figure_graphs()
    K = C.induced(["a", "b", "c"])
    Cp = C.remove_vertex("p")
    return [(inclusion(K, C), "p"), (inclusion(K, Cp), "q")]


def conformance_suite(hep_max: int = 4) -> list[tuple[str, Callable[[], CheckReport]]]:
    """The named checks run by ``verify-paper``, in order."""
    suite: list[tuple[str, Callable[[], CheckReport]]] = [("figure_cobase", check_figure_cobase)]
    for n in range(6):
        suite.append((f"pn_family n={n}", lambda n=n: check_pn_family(n, 3)))
    for k in (3, 5, 7):
        suite.append((f"no_factorization k={k}", lambda k=k: check_no_factorization(k)))
    for idx, (i, v) in enumerate(relative_fold_examples()):
        suite.append((f"relative_fold_transfer {idx}", lambda i=i, v=v: check_relative_fold_transfer(i, v)))
    _, _, _, _, g = figure_graphs()
    suite.append(("gadget_breaks_cobase figure", lambda: check_gadget_breaks_cobase(g)))
    suite.append((f"hep_rigidity max={hep_max}", lambda: check_hep_rigidity(hep_max)))
    return suite


def run_conformance(hep_max: int = 4) -> list[CheckReport]:
    return [run() for _, run in conformance_suite(hep_max)]
