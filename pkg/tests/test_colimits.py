import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import graphs, maps
from xhomotopy import kernel
from xhomotopy.colimits import (
    disjoint_union,
    glue,
    glue_embedding,
    product,
    projections,
    pushout,
    quotient,
)
from xhomotopy.errors import GraphError
from xhomotopy.graph import Graph, GraphMap, compose, family, identity, inclusion, is_induced_inclusion, is_isomorphic
from xhomotopy.homotopy import is_unfold, stiff_core


def iso(G, H):
    return is_isomorphic(G, H) is not None


class TestProduct:
    @given(graphs(max_size=4))
    def test_looped_vertex_is_a_unit(self, G):
        assert iso(product(family("I", 0), G), G)

    def test_two_edges(self):
        P = product(family("K", 2), family("K", 2))
        assert P.num_edges == 2 and not P.looped_mask
        assert len(P.components()) == 2

    def test_edge_count_by_definition(self):
        G, H = family("I", 1), family("K", 2)
        P = product(G, H)
        # ordered adjacent pairs in each factor; unordered in the product
        ordered = sum(bin(r).count("1") for r in G.adj) * sum(bin(r).count("1") for r in H.adj)
        loops = sum(1 for v in P.vertices if P.is_looped(v))
        assert P.num_edges == (ordered - loops) // 2 + loops

    @given(graphs(max_size=3), graphs(max_size=3))
    def test_commutative(self, G, H):
        assert iso(product(G, H), product(H, G))

    @settings(max_examples=40)
    @given(graphs(max_size=2), graphs(max_size=2), graphs(max_size=2))
    def test_associative(self, G, H, K):
        assert iso(product(product(G, H), K), product(G, product(H, K)))

    def test_projections_are_maps(self):
        p, q = projections(family("C", 3), family("I", 1))
        assert p.domain == q.domain


class TestQuotient:
    @given(graphs(max_size=5))
    def test_discrete_partition(self, G):
        Q, _ = quotient(G, [[v] for v in G.vertices])
        assert iso(Q, G)

    def test_path_ends_merged(self):
        Q, proj = quotient(family("P", 3), [["1", "3"], ["2"]])
        assert iso(Q, family("K", 2))
        assert proj("1") == proj("3")

    def test_adjacent_pair_becomes_loop(self):
        Q, _ = quotient(family("K", 2), [["1", "2"]])
        assert iso(Q, family("I", 0))

    def test_non_adjacent_class_stays_unlooped(self):
        Q, _ = quotient(family("P", 3), [["1", "3"], ["2"]])
        assert not Q.is_looped("[1,3]")

    def test_not_a_partition(self):
        G = family("P", 3)
        with pytest.raises(GraphError):
            quotient(G, [["1"], ["2"]])
        with pytest.raises(GraphError):
            quotient(G, [["1", "2"], ["2", "3"]])
        with pytest.raises(GraphError):
            quotient(G, [["1", "2", "3", "9"]])


class TestDisjointUnion:
    def test_empty_summand(self):
        G = family("C", 5)
        assert iso(disjoint_union(G, Graph()), G)

    def test_two_loops(self):
        I0 = family("I", 0)
        U = disjoint_union(I0, I0)
        assert bin(U.looped_mask).count("1") == 2 and U.num_edges == 2

    def test_counts(self):
        U = disjoint_union(family("K", 2), family("K", 3))
        assert len(U) == 5 and U.num_edges == 4


def oracle_pushout(f, i):
    """Disjoint union then quotient by the closure of f(a) ~ i(a)."""
    C, B = f.codomain, i.codomain
    D = disjoint_union(C, B)
    cls = {v: {v} for v in D.vertices}
    for a in f.domain.vertices:
        x, y = f"0:{f(a)}", f"1:{i(a)}"
        if cls[x] is not cls[y]:
            merged = cls[x] | cls[y]
            for v in merged:
                cls[v] = merged
    blocks = {id(c): c for c in cls.values()}.values()
    return quotient(D, blocks)


class TestPushout:
    @given(graphs(max_size=3), graphs(max_size=3), graphs(max_size=3), st.data())
    def test_matches_quotient_oracle(self, A, B, C, data):
        f = data.draw(maps(A, C))
        i = data.draw(maps(A, B))
        if f is None or i is None:
            return
        res = pushout(f, i)
        Q, proj = oracle_pushout(f, i)
        assert res.object == Q
        assert compose(res.left_leg, f) == compose(res.right_leg, i)

    @settings(max_examples=60)
    @given(graphs(max_size=2), graphs(max_size=3), graphs(max_size=3), graphs(max_size=3), st.data())
    def test_universal_property(self, A, B, C, Z, data):
        f = data.draw(maps(A, C))
        i = data.draw(maps(A, B))
        if f is None or i is None:
            return
        res = pushout(f, i)
        G = res.object
        for u in kernel.iter_homs(B.adj, Z.adj):
            ui = tuple(u[b] for b in i.images)
            for w in kernel.iter_homs(C.adj, Z.adj):
                if tuple(w[c] for c in f.images) != ui:
                    continue
                mediating = [
                    m
                    for m in kernel.iter_homs(G.adj, Z.adj)
                    if tuple(m[g] for g in res.left_leg.images) == w
                    and tuple(m[g] for g in res.right_leg.images) == u
                ]
                assert len(mediating) == 1

    def test_along_identity(self):
        B = family("C", 4)
        A = B.induced(["0", "1"])
        i = inclusion(A, B)
        res = pushout(identity(A), i)
        assert iso(res.object, B)
        assert res.right_leg.is_injective() and res.right_leg.is_surjective()

    def test_figure_pushout_is_k4(self):
        A = Graph("abcp", ["ab", "ac", "bc", "bp"])
        K3 = Graph("abc", ["ab", "ac", "bc"])
        C = Graph("abcpq", ["ab", "ac", "bc", "bp", "bq", "cq", "pq"])
        f = GraphMap(A, K3, {"a": "a", "b": "b", "c": "c", "p": "a"})
        res = pushout(f, inclusion(A, C))
        assert iso(res.object, family("K", 4))
        # a and p are not adjacent, so their class carries no loop
        assert res.object.looped_mask == 0
        assert "[0:a,1:a,1:p]" in res.object.vertices

    def test_unfold_cobase_change_is_unfold(self):
        A = family("K", 2)
        B = family("P", 3)
        i = GraphMap(A, B, {"1": "1", "2": "2"})
        assert is_unfold(i)
        C = family("C", 5)
        f = GraphMap(A, C, {"1": "0", "2": "1"})
        res = pushout(f, i)
        assert len(res.object) == len(C) + 1
        assert is_unfold(res.left_leg)

    def test_domain_mismatch(self):
        with pytest.raises(GraphError):
            pushout(identity(family("K", 2)), identity(family("K", 3)))


class TestGlue:
    @given(graphs(max_size=3), graphs(max_size=3), st.data())
    def test_zero_length(self, A, B, data):
        i = data.draw(maps(A, B))
        if i is None or not i.is_injective():
            return
        Q, j = glue(i, 0)
        assert iso(Q, B)
        assert j.is_injective() and j.is_surjective()

    @pytest.mark.parametrize("n", range(4))
    def test_looped_vertex(self, n):
        I0 = family("I", 0)
        Q, _ = glue(identity(I0), n)
        assert iso(stiff_core(Q)[0], I0)

    def test_edge_in_path_counts(self):
        i = GraphMap(family("K", 2), family("P", 3), {"1": "1", "2": "2"})
        Q, _ = glue(i, 1)
        assert len(Q) == 5

    @settings(max_examples=60)
    @given(graphs(max_size=3), graphs(max_size=3), st.integers(0, 2), st.data())
    def test_j_is_induced_when_i_is(self, A, B, n, data):
        i = data.draw(maps(A, B))
        if i is None:
            return
        _, j = glue(i, n)
        if is_induced_inclusion(i):
            assert is_induced_inclusion(j)
        if i.is_injective():
            e = glue_embedding(i, n)
            assert e.is_injective()

    def test_negative_length(self):
        with pytest.raises(GraphError):
            glue(identity(family("K", 2)), -1)
