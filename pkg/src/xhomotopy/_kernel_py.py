"""Pure-Python homomorphism search.

Graphs are given as adjacency bitmasks indexed by vertex position; a loop at
``v`` is bit ``v`` of ``adj[v]``.  Solutions are produced in lexicographic
order of the image tuple, assigning domain vertices in index order and trying
codomain candidates in increasing index.
"""

from __future__ import annotations

from typing import Iterator, Sequence


def iter_homs(
    dom_adj: Sequence[int],
    cod_adj: Sequence[int],
    allowed: Sequence[int],
    injective: bool = False,
) -> Iterator[tuple[int, ...]]:
    n = len(dom_adj)
    if n == 0:
        yield ()
        return
    if any(a == 0 for a in allowed):
        return
    # later[k]: neighbours of k with a larger index
    later = [[j for j in range(k + 1, n) if dom_adj[k] >> j & 1] for k in range(n)]
    cand = [list(allowed)] + [[0] * n for _ in range(n)]
    rem = [0] * n
    img = [0] * n
    used = 0
    k = 0
    rem[0] = cand[0][0]
    while True:
        r = rem[k]
        if r == 0:
            if k == 0:
                return
            k -= 1
            if injective:
                used &= ~(1 << img[k])
            continue
        low = r & -r
        rem[k] = r ^ low
        c = low.bit_length() - 1
        img[k] = c
        cur = cand[k]
        nxt = cand[k + 1]
        block = (used | low) if injective else 0
        ok = True
        nbr = cod_adj[c]
        for j in range(k + 1, n):
            m = cur[j] & ~block
            nxt[j] = m
        for j in later[k]:
            m = nxt[j] & nbr
            if m == 0:
                ok = False
                break
            nxt[j] = m
        if not ok:
            continue
        if injective and any(nxt[j] == 0 for j in range(k + 1, n)):
            continue
        if k == n - 1:
            yield tuple(img)
            continue
        if injective:
            used |= low
        k += 1
        rem[k] = nxt[k]
