"""Acceptance suite: one test per criterion, each tagged for the PASS/FAIL summary.

Run ``pytest tests/test_acceptance.py -v -s`` to see the summary and the
diagnostic output of each criterion.
"""

import time

import pytest

from xhomotopy import census
from xhomotopy.graph import Graph, all_maps, compose, identity, is_isomorphic
from xhomotopy.homotopy import are_homotopic, homotopy_class, is_x_equivalence, stiff_core
from xhomotopy.lifting import (
    HEPClass,
    has_hep,
    has_rlp_against_unfolds,
    hep_classify,
    in_class_f,
    rlp_counterexample,
    section_of,
)
from xhomotopy.verifier import (
    check_cobase_preservation,
    check_figure_cobase,
    check_gadget_breaks_cobase,
    check_no_factorization,
    check_pn_family,
    gadget_instances,
)

# number of labelled induced inclusions with |B| <= 5 that are equivalences
# without a relative fold sequence; frozen from an independent run
GADGET_INSTANCES = 1399


def report(name, ok, lines=()):
    print(f"\n{'PASS' if ok else 'FAIL'} {name}")
    for line in lines:
        print(f"    {line}")


def test_figure_counterexample(record_property):
    record_property("criterion", "1 figure counterexample")
    t = time.perf_counter()
    r = check_figure_cobase()
    dt = time.perf_counter() - t
    report("figure counterexample", r.verdict and dt < 1.0, r.lines()[1:] + [f"runtime {dt:.3f} s"])
    assert r.verdict, "\n".join(r.lines())
    assert dt < 1.0


def test_hep_trichotomy(record_property):
    record_property("criterion", "2 hep trichotomy")
    bad, count = [], 0
    for B in census.graphs_up_to(4):
        for i in census.injective_maps(B):
            cls = hep_classify(i)
            for n in (1, 2):
                count += 1
                if has_hep(i, n) != (cls is not HEPClass.NO_HEP):
                    bad.append((i, n, cls))
    report("hep trichotomy", not bad, [f"{count} (map, n) pairs, {len(bad)} disagreements"])
    assert not bad, bad[:5]


def test_class_f_characterisation(record_property):
    record_property("criterion", "3 class F characterisation")
    disagreements, count = [], 0
    for X in census.connected_graphs_up_to(4):
        for Y in census.connected_graphs_up_to(3):
            if len(Y) == 0:
                continue
            for p in all_maps(X, Y):
                count += 1
                char = in_class_f(p)
                rlp = has_rlp_against_unfolds(p, 4)
                if char != rlp:
                    disagreements.append((p, char, rlp))
    lines = [f"{count} maps, {len(disagreements)} disagreements"]
    fp = sum(1 for _, c, _ in disagreements if c)
    lines.append(f"characterisation true, lifting fails: {fp}")
    lines.append(f"characterisation false, lifting holds: {len(disagreements) - fp}")
    for p, char, rlp in disagreements[:6]:
        lines.append(f"p = {p.assignment} : {list(p.domain.edges)} -> {list(p.codomain.edges)}")
        lines.append(f"    in_class_f={char} rlp={rlp}")
        sq = rlp_counterexample(p, 4)
        if sq is not None:
            lines.append(f"    failing unfold {list(sq.left.domain.edges)} -> {list(sq.left.codomain.edges)}")
    report("class F characterisation", not disagreements, lines)
    assert not disagreements, "\n".join(lines)


def test_section_law(record_property):
    record_property("criterion", "4 section law")
    count, bad = 0, []
    for X in census.connected_graphs_up_to(4):
        for Y in census.connected_graphs_up_to(4):
            for p in all_maps(X, Y):
                if not in_class_f(p) or not is_x_equivalence(p, method="core"):
                    continue
                count += 1
                s = section_of(p)
                if compose(p, s) != identity(Y):
                    bad.append(p)
    report("section law", count > 0 and not bad, [f"{count} acyclic class-F maps, {len(bad)} failures"])
    assert count > 0 and not bad


def test_cobase_preservation(record_property):
    record_property("criterion", "5 cobase preservation")
    r = check_cobase_preservation()
    report("cobase preservation", r.verdict, r.lines()[1:])
    assert r.verdict, "\n".join(r.lines())


@pytest.mark.parametrize("n", range(6))
def test_pn_family(record_property, n):
    record_property("criterion", f"6 pn family n={n}")
    r = check_pn_family(n, 3)
    report(f"pn family n={n}", r.verdict, r.lines()[1:])
    assert r.verdict, "\n".join(r.lines())


@pytest.mark.parametrize("k", [3, 5, 7])
def test_no_factorization(record_property, k):
    record_property("criterion", f"7 no factorization k={k}")
    t = time.perf_counter()
    r = check_no_factorization(k)
    dt = time.perf_counter() - t
    report(f"no factorization k={k}", r.verdict and dt < 10.0, r.lines()[1:] + [f"runtime {dt:.3f} s"])
    assert r.verdict, "\n".join(r.lines())
    assert dt < 10.0


def test_gadget(record_property):
    record_property("criterion", "8 gadget")
    instances = list(gadget_instances(5))
    failed = [i for i in instances if not check_gadget_breaks_cobase(i).verdict]
    report("gadget", not failed and len(instances) == GADGET_INSTANCES, [f"{len(instances)} instances, {len(failed)} failures"])
    assert len(instances) == GADGET_INSTANCES
    assert not failed


def _fold_order_terminals(G: Graph) -> set[int]:
    """Vertex sets of every stiff graph reachable by some order of folds."""
    adj, n = G.adj, len(G)
    seen, terminals, stack = set(), set(), [(1 << n) - 1]
    while stack:
        mask = stack.pop()
        if mask in seen:
            continue
        seen.add(mask)
        moves = [
            v
            for v in range(n)
            if mask >> v & 1
            and any(w != v and mask >> w & 1 and adj[v] & mask & ~adj[w] == 0 for w in range(n))
        ]
        if not moves:
            terminals.add(mask)
        stack.extend(mask & ~(1 << v) for v in moves)
    return terminals


def test_core_confluence_and_homotopy_relation(record_property):
    record_property("criterion", "9 core confluence and homotopy relation")
    lines, ok = [], True

    graphs_checked, orders_bad = 0, []
    for G in census.graphs_up_to(5):
        graphs_checked += 1
        reps = [G.induced(G.labels_of(m)) for m in _fold_order_terminals(G)]
        core, _ = stiff_core(G)
        if any(is_isomorphic(H, core) is None for H in reps):
            orders_bad.append(G)
    lines.append(f"{graphs_checked} graphs, {len(orders_bad)} with non-isomorphic terminal cores")
    ok &= not orders_bad

    pairs, relation_bad = 0, 0
    small = census.graphs_up_to(3)
    for A in small:
        for B in small:
            ms = list(all_maps(A, B))
            hom = {}
            for f in ms:
                for g in ms:
                    hom[f.images, g.images] = are_homotopic(f, g)
                    pairs += 1
            for f in ms:
                cls = homotopy_class(f)
                if hom[f.images, f.images] is None:
                    relation_bad += 1
                for g in ms:
                    h = hom[f.images, g.images]
                    if (h is not None) != (g.images in cls):
                        relation_bad += 1
                    if h is None:
                        relation_bad += hom[g.images, f.images] is not None
                        continue
                    r = h.reversed()
                    if r.source != g or r.target != f or hom[g.images, f.images] is None:
                        relation_bad += 1
                    for k in ms:
                        h2 = hom[g.images, k.images]
                        if h2 is None:
                            continue
                        joined = h.then(h2)
                        if joined.source != f or joined.target != k or hom[f.images, k.images] is None:
                            relation_bad += 1
    lines.append(f"{pairs} map pairs, {relation_bad} relation violations")
    ok &= relation_bad == 0
    report("core confluence and homotopy relation", ok, lines)
    assert ok, lines
