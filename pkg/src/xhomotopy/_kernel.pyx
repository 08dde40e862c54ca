# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled homomorphism search over graphs with at most 64 vertices.

Same contract and solution order as ``_kernel_py.iter_homs``.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int lowbit_index(uint64_t x) nogil:
    return __builtin_ctzll(x)


cdef class HomIter:
    cdef int n
    cdef bint injective
    cdef bint done
    cdef int k
    cdef uint64_t used
    cdef uint64_t* cod_adj
    cdef uint64_t* dom_later      # neighbours of k with larger index
    cdef uint64_t* cand           # (n + 1) x n
    cdef uint64_t* rem
    cdef int* img

    def __cinit__(self, dom_adj, cod_adj, allowed, bint injective=False):
        cdef int n = len(dom_adj)
        cdef int m = len(cod_adj)
        cdef int i, j
        cdef uint64_t row
        self.n = n
        self.injective = injective
        self.done = False
        self.k = 0
        self.used = 0
        self.cod_adj = <uint64_t*> malloc(max(m, 1) * sizeof(uint64_t))
        self.dom_later = <uint64_t*> malloc(max(n, 1) * sizeof(uint64_t))
        self.cand = <uint64_t*> malloc(max((n + 1) * n, 1) * sizeof(uint64_t))
        self.rem = <uint64_t*> malloc(max(n, 1) * sizeof(uint64_t))
        self.img = <int*> malloc(max(n, 1) * sizeof(int))
        if (not self.cod_adj or not self.dom_later or not self.cand
                or not self.rem or not self.img):
            raise MemoryError()
        for i in range(m):
            self.cod_adj[i] = <uint64_t> cod_adj[i]
        for i in range(n):
            row = <uint64_t> dom_adj[i]
            if i + 1 < 64:
                row = (row >> (i + 1)) << (i + 1)
            else:
                row = 0
            self.dom_later[i] = row
            self.cand[i] = <uint64_t> allowed[i]
            if self.cand[i] == 0:
                self.done = True
        if n > 0:
            self.rem[0] = self.cand[0]

    def __dealloc__(self):
        free(self.cod_adj)
        free(self.dom_later)
        free(self.cand)
        free(self.rem)
        free(self.img)

    def __iter__(self):
        return self

    def __next__(self):
        if self.done:
            raise StopIteration
        if self.n == 0:
            self.done = True
            return ()
        if self._advance():
            return tuple([self.img[i] for i in range(self.n)])
        self.done = True
        raise StopIteration

    cdef bint _advance(self):
        cdef int n = self.n
        cdef int k = self.k
        cdef int c, j
        cdef uint64_t r, low, block, nbr, msk, later
        cdef uint64_t* cur
        cdef uint64_t* nxt
        cdef bint ok
        while True:
            r = self.rem[k]
            if r == 0:
                if k == 0:
                    self.k = 0
                    return False
                k -= 1
                if self.injective:
                    self.used &= ~((<uint64_t> 1) << self.img[k])
                continue
            low = r & (~r + 1)
            self.rem[k] = r ^ low
            c = lowbit_index(low)
            self.img[k] = c
            cur = self.cand + k * n
            nxt = self.cand + (k + 1) * n
            block = (self.used | low) if self.injective else 0
            nbr = self.cod_adj[c]
            later = self.dom_later[k]
            ok = True
            for j in range(k + 1, n):
                msk = cur[j] & ~block
                if (later >> j) & 1:
                    msk &= nbr
                    if msk == 0:
                        ok = False
                        break
                elif self.injective and msk == 0:
                    ok = False
                    break
                nxt[j] = msk
            if not ok:
                continue
            if k == n - 1:
                self.k = k
                return True
            if self.injective:
                self.used |= low
            k += 1
            self.rem[k] = nxt[k]


def iter_homs(dom_adj, cod_adj, allowed, bint injective=False):
    return HomIter(dom_adj, cod_adj, allowed, injective)
