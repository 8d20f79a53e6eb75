"""Pure-Python twins of the compiled kernels.

Same contracts as _speedups; used when the extension is unavailable or
MINIFIX_PURE=1 is set.  Inputs are index arrays produced by the embed
module (any integer/float sequences are accepted).
"""

from __future__ import annotations

NAME = "pure"


def ted_dist(la, lma, kra, lb, lmb, krb) -> int:
    """Zhang-Shasha tree edit distance over flattened postorder arrays.

    la/lb: interned labels by postorder position; lma/lmb: postorder index
    of each node's leftmost leaf descendant; kra/krb: keyroots ascending.
    Unit costs: insert = delete = relabel = 1.
    """
    la, lma, kra = list(la), list(lma), list(kra)
    lb, lmb, krb = list(lb), list(lmb), list(krb)
    na, nb = len(la), len(lb)
    if na == 0:
        return nb
    if nb == 0:
        return na
    td = [[0] * nb for _ in range(na)]
    for i in kra:
        li = lma[i]
        m = i - li + 2
        ioff = li - 1
        for j in krb:
            lj = lmb[j]
            n = j - lj + 2
            joff = lj - 1
            fd = [[0] * n for _ in range(m)]
            for x in range(1, m):
                fd[x][0] = x
            for y in range(1, n):
                fd[0][y] = y
            for x in range(1, m):
                row = fd[x]
                prev = fd[x - 1]
                nx = x + ioff
                for y in range(1, n):
                    ny = y + joff
                    if lma[nx] == li and lmb[ny] == lj:
                        cost = 0 if la[nx] == lb[ny] else 1
                        best = prev[y] + 1
                        cand = row[y - 1] + 1
                        if cand < best:
                            best = cand
                        cand = prev[y - 1] + cost
                        if cand < best:
                            best = cand
                        row[y] = best
                        td[nx][ny] = best
                    else:
                        p = lma[nx] - 1 - ioff
                        q = lmb[ny] - 1 - joff
                        best = prev[y] + 1
                        cand = row[y - 1] + 1
                        if cand < best:
                            best = cand
                        cand = fd[p][q] + td[nx][ny]
                        if cand < best:
                            best = cand
                        row[y] = best
    return td[na - 1][nb - 1]


def pacv_sq_dist(ids_a, offs_a, hts_a, ids_b, offs_b, hts_b) -> float:
    """Sum over patterns of squared differences between descending-sorted,
    zero-padded height lists (the caller takes the square root)."""
    ids_a, offs_a, hts_a = list(ids_a), list(offs_a), list(hts_a)
    ids_b, offs_b, hts_b = list(ids_b), list(offs_b), list(hts_b)
    na, nb = len(ids_a), len(ids_b)
    ia = ib = 0
    acc = 0.0
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
            sa, ea = offs_a[ia], offs_a[ia + 1]
            sb, eb = offs_b[ib], offs_b[ib + 1]
            len_a, len_b = ea - sa, eb - sb
            for t in range(max(len_a, len_b)):
                x = hts_a[sa + t] if t < len_a else 0.0
                y = hts_b[sb + t] if t < len_b else 0.0
                d = x - y
                acc += d * d
            ia += 1
            ib += 1
    return acc
