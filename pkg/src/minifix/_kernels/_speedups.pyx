# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: Zhang-Shasha tree edit distance and PACV distance.

Contracts mirror minifix._kernels.pure exactly; see there for the array
layout documentation.
"""

import numpy as np

NAME = "compiled"


def ted_dist(int[:] la, int[:] lma, int[:] kra,
             int[:] lb, int[:] lmb, int[:] krb):
    cdef int na = la.shape[0]
    cdef int nb = lb.shape[0]
    if na == 0:
        return nb
    if nb == 0:
        return na
    td_arr = np.zeros((na, nb), dtype=np.int32)
    fd_arr = np.zeros((na + 1, nb + 1), dtype=np.int32)
    cdef int[:, :] td = td_arr
    cdef int[:, :] fd = fd_arr
    cdef Py_ssize_t ii, jj
    cdef int i, j, li, lj, m, n, ioff, joff, x, y, nx, ny, p, q, cost, best, cand
    for ii in range(kra.shape[0]):
        i = kra[ii]
        li = lma[i]
        m = i - li + 2
        ioff = li - 1
        for jj in range(krb.shape[0]):
            j = krb[jj]
            lj = lmb[j]
            n = j - lj + 2
            joff = lj - 1
            fd[0, 0] = 0
            for x in range(1, m):
                fd[x, 0] = x
            for y in range(1, n):
                fd[0, y] = y
            for x in range(1, m):
                nx = x + ioff
                for y in range(1, n):
                    ny = y + joff
                    if lma[nx] == li and lmb[ny] == lj:
                        cost = 0 if la[nx] == lb[ny] else 1
                        best = fd[x - 1, y] + 1
                        cand = fd[x, y - 1] + 1
                        if cand < best:
                            best = cand
                        cand = fd[x - 1, y - 1] + cost
                        if cand < best:
                            best = cand
                        fd[x, y] = best
                        td[nx, ny] = best
                    else:
                        p = lma[nx] - 1 - ioff
                        q = lmb[ny] - 1 - joff
                        best = fd[x - 1, y] + 1
                        cand = fd[x, y - 1] + 1
                        if cand < best:
                            best = cand
                        cand = fd[p, q] + td[nx, ny]
                        if cand < best:
                            best = cand
                        fd[x, y] = best
    return int(td[na - 1, nb - 1])


def pacv_sq_dist(long long[:] ids_a, long long[:] offs_a, double[:] hts_a,
                 long long[:] ids_b, long long[:] offs_b, double[:] hts_b):
    cdef Py_ssize_t na = ids_a.shape[0]
    cdef Py_ssize_t nb = ids_b.shape[0]
    cdef Py_ssize_t ia = 0, ib = 0, t, sa, ea, sb, eb, len_a, len_b, phi
    cdef double acc = 0.0, x, y, d
    while ia < na or ib < nb:
        if ib >= nb or (ia < na and ids_a[ia] < ids_b[ib]):
            for t in range(offs_a[ia], offs_a[ia + 1]):
                acc += hts_a[t] * hts_a[t]
            ia += 1
        elif ia >= na or ids_b[ib] < ids_a[ia]:
            for t in range(offs_b[ib], offs_b[ib + 1]):
                acc += hts_b[t] * hts_b[t]
            ib += 1
        else:
            sa = offs_a[ia]
            ea = offs_a[ia + 1]
            sb = offs_b[ib]
            eb = offs_b[ib + 1]
            len_a = ea - sa
            len_b = eb - sb
            phi = len_a if len_a > len_b else len_b
            for t in range(phi):
                x = hts_a[sa + t] if t < len_a else 0.0
                y = hts_b[sb + t] if t < len_b else 0.0
                d = x - y
                acc += d * d
            ia += 1
            ib += 1
    return acc
