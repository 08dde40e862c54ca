"""Backend selection for the homomorphism search.

The compiled extension is used when it imports and both graphs fit in 64-bit
masks; otherwise the pure-Python generator runs.  Setting
``XHOMOTOPY_PURE=1`` forces the fallback.
"""

from __future__ import annotations

import os
from typing import Iterator, Optional, Sequence

from . import _kernel_py

try:  # pragma: no cover - depends on the build
    from . import _kernel as _compiled
except ImportError:  # pragma: no cover
    _compiled = None

_FORCE_PURE = os.environ.get("XHOMOTOPY_PURE", "") not in ("", "0")


def backend() -> str:
    """Name of the backend used for graphs that fit in 64 bits."""
    return "python" if _compiled is None or _FORCE_PURE else "compiled"


def iter_homs(
    dom_adj: Sequence[int],
    cod_adj: Sequence[int],
    allowed: Optional[Sequence[int]] = None,
    injective: bool = False,
    force: Optional[str] = None,
) -> Iterator[tuple[int, ...]]:
    """Enumerate edge-preserving assignments in lexicographic order.

    ``allowed[k]`` is a bitmask of admissible images for domain vertex ``k``.
    Looped domain vertices are restricted to looped codomain vertices here,
    so both backends see the same pre-filtered candidate sets.
    """
    n, m = len(dom_adj), len(cod_adj)
    full = (1 << m) - 1
    looped = 0
    for c in range(m):
        if cod_adj[c] >> c & 1:
            looped |= 1 << c
    masks = list(allowed) if allowed is not None else [full] * n
    for k in range(n):
        masks[k] &= full
        if dom_adj[k] >> k & 1:
            masks[k] &= looped
    use = force or backend()
    if use == "compiled" and _compiled is not None and n <= 64 and m <= 64:
        return _compiled.iter_homs(list(dom_adj), list(cod_adj), masks, injective)
    return _kernel_py.iter_homs(dom_adj, cod_adj, masks, injective)


def first_hom(dom_adj, cod_adj, allowed=None, injective=False, force=None):
    for img in iter_homs(dom_adj, cod_adj, allowed, injective, force):
        return img
    return None


def count_homs(dom_adj, cod_adj, allowed=None, injective=False, force=None) -> int:
    return sum(1 for _ in iter_homs(dom_adj, cod_adj, allowed, injective, force))
