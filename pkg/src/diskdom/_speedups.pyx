# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same semantics and scan order as ``_purepy``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY
from libc.stdint cimport uint64_t, int64_t

cnp.import_array()

NAME = "cython"

cdef double TIE_EPS = 1e-9


def multicover_enum(const int[::1] indptr, const int[::1] indices, const int[::1] demand,
                    const double[::1] weights):
    cdef int m = weights.shape[0]
    cdef int nr = demand.shape[0]
    cdef int[::1] count = np.zeros(nr, dtype=np.intc)
    cdef int deficit = 0
    cdef int r, j, q
    cdef uint64_t i, bit, mask = 0, best_mask = 0, total
    cdef double w = 0.0, best_w = INFINITY
    cdef bint found = False
    if m > 62:
        raise ValueError("too many choices for exhaustive enumeration")
    for r in range(nr):
        if demand[r] > 0:
            deficit += 1
    if deficit == 0:
        best_w = 0.0
        found = True
    total = (<uint64_t>1) << m
    i = 1
    while i < total:
        j = 0
        while not ((i >> j) & 1):
            j += 1
        bit = (<uint64_t>1) << j
        if mask & bit:
            mask ^= bit
            w -= weights[j]
            for q in range(indptr[j], indptr[j + 1]):
                r = indices[q]
                if count[r] == demand[r]:
                    deficit += 1
                count[r] -= 1
        else:
            mask |= bit
            w += weights[j]
            for q in range(indptr[j], indptr[j + 1]):
                r = indices[q]
                count[r] += 1
                if count[r] == demand[r]:
                    deficit -= 1
        if deficit == 0 and w < best_w - TIE_EPS:
            best_w = w
            best_mask = mask
            found = True
        i += 1
    if not found:
        return INFINITY, -1, int(total)
    return best_w, int(best_mask), int(total)


def lkc_relax(const int64_t[:, ::1] prev, const double[::1] prev_cost, const int64_t[:, ::1] cur,
              const int64_t[::1] rank, const double[::1] weights):
    cdef Py_ssize_t ncur = cur.shape[0], nprev = prev.shape[0], K = cur.shape[1]
    cdef Py_ssize_t c, p, a, b
    cdef int64_t top, d
    cdef double bc, pc, add
    cdef Py_ssize_t ba
    cdef bint ok, inrow
    best = np.full(ncur, INFINITY)
    arg = np.full(ncur, -1, dtype=np.int64)
    cdef double[::1] bv = best
    cdef int64_t[::1] av = arg
    for c in range(ncur):
        top = rank[cur[c, 0]]
        for a in range(1, K):
            if rank[cur[c, a]] > top:
                top = rank[cur[c, a]]
        bc = INFINITY
        ba = -1
        for p in range(nprev):
            pc = prev_cost[p]
            if pc == INFINITY:
                continue
            ok = True
            for a in range(K):
                d = prev[p, a]
                inrow = False
                for b in range(K):
                    if cur[c, b] == d:
                        inrow = True
                        break
                if not inrow and rank[d] <= top:
                    ok = False
                    break
            if not ok:
                continue
            add = 0.0
            for b in range(K):
                d = cur[c, b]
                inrow = False
                for a in range(K):
                    if prev[p, a] == d:
                        inrow = True
                        break
                if not inrow:
                    add += weights[d]
            if pc + add < bc:
                bc = pc + add
                ba = p
        bv[c] = bc
        av[c] = ba
    return best, arg


cdef inline void _add_planes(uint64_t* planes, int nplanes, uint64_t carry) nogil:
    cdef int b
    cdef uint64_t nxt
    for b in range(nplanes):
        nxt = planes[b] & carry
        planes[b] ^= carry
        carry = nxt
        if not carry:
            break


cdef inline uint64_t _equal_to(uint64_t* planes, int nplanes, int value, uint64_t full) nogil:
    cdef uint64_t out = full
    cdef int b
    for b in range(nplanes):
        if (value >> b) & 1:
            out &= planes[b]
        else:
            out &= ~planes[b] & full
    return out


cdef inline bint _next_comb(Py_ssize_t* idx, int t, Py_ssize_t n) nogil:
    cdef int a = t - 1
    cdef int b
    while a >= 0 and idx[a] == n - t + a:
        a -= 1
    if a < 0:
        return False
    idx[a] += 1
    for b in range(a + 1, t):
        idx[b] = idx[b - 1] + 1
    return True


def find_swap(const uint64_t[::1] masks, const int64_t[::1] members, const int64_t[::1] outside,
              int nconstraints, int k):
    cdef uint64_t full
    cdef Py_ssize_t M = members.shape[0], O = outside.shape[0]
    cdef int nplanes = 1, sp = 1, s, t, c, a
    cdef uint64_t mplanes[64]
    cdef uint64_t splanes[16]
    cdef uint64_t exact[17]
    cdef Py_ssize_t sidx[16]
    cdef Py_ssize_t tidx[16]
    cdef uint64_t uncovered, got
    cdef Py_ssize_t q
    if nconstraints > 64 or k > 15:
        raise ValueError("compiled swap search supports at most 64 constraints and k <= 15")
    full = <uint64_t>0xFFFFFFFFFFFFFFFF if nconstraints == 64 else ((<uint64_t>1) << nconstraints) - 1
    while (1 << nplanes) <= max(k, M):
        nplanes += 1
    while (1 << sp) <= k:
        sp += 1
    for a in range(nplanes):
        mplanes[a] = 0
    for q in range(M):
        _add_planes(mplanes, nplanes, masks[members[q]])
    exact[0] = 0
    for c in range(1, k + 1):
        exact[c] = _equal_to(mplanes, nplanes, c, full)
    for s in range(1, min(k, M) + 1):
        for a in range(s):
            sidx[a] = a
        while True:
            for a in range(sp):
                splanes[a] = 0
            for a in range(s):
                _add_planes(splanes, sp, masks[members[sidx[a]]])
            uncovered = 0
            for c in range(1, s + 1):
                uncovered |= _equal_to(splanes, sp, c, full) & exact[c]
            if uncovered == 0:
                return tuple(int(members[sidx[a]]) for a in range(s)), ()
            for t in range(1, s):
                if t > O:
                    break
                for a in range(t):
                    tidx[a] = a
                while True:
                    got = 0
                    for a in range(t):
                        got |= masks[outside[tidx[a]]]
                    if uncovered & ~got == 0:
                        return (tuple(int(members[sidx[a]]) for a in range(s)),
                                tuple(int(outside[tidx[a]]) for a in range(t)))
                    if not _next_comb(tidx, t, O):
                        break
            if not _next_comb(sidx, s, M):
                break
    return None
