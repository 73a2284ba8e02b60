"""Pure-Python integer kernels for Gaussian-integer matrices.

A matrix over Z[i] is a pair of nested sequences (re, im) of Python
ints.  These are the reference implementations of the hot kernels; the
compiled backend in ``_speedups`` mirrors them on int64 with overflow
detection and falls back here when values outgrow machine words.

All results are exact: Python ints never overflow, and the Bareiss
elimination divides only by quantities that divide exactly.
"""

from __future__ import annotations


def matmul(a_re, a_im, b_re, b_im):
    """Gaussian-integer matrix product; returns (re, im) nested lists."""
    n = len(a_re)
    inner = len(b_re)
    p = len(b_re[0]) if inner else 0
    c_re = [[0] * p for _ in range(n)]
    c_im = [[0] * p for _ in range(n)]
    for i in range(n):
        ar, ai = a_re[i], a_im[i]
        cr, ci = c_re[i], c_im[i]
        for k in range(inner):
            x, y = ar[k], ai[k]
            if x == 0 and y == 0:
                continue
            br, bi = b_re[k], b_im[k]
            if y == 0:
                for j in range(p):
                    u, v = br[j], bi[j]
                    if u:
                        cr[j] += x * u
                    if v:
                        ci[j] += x * v
            elif x == 0:
                for j in range(p):
                    u, v = br[j], bi[j]
                    if v:
                        cr[j] -= y * v
                    if u:
                        ci[j] += y * u
            else:
                for j in range(p):
                    u, v = br[j], bi[j]
                    if u or v:
                        cr[j] += x * u - y * v
                        ci[j] += x * v + y * u
    return c_re, c_im


def rank(m_re, m_im):
    """Rank over Q(i) by fraction-free (Bareiss) elimination on Z[i]."""
    rows = len(m_re)
    cols = len(m_re[0]) if rows else 0
    if rows == 0 or cols == 0:
        return 0
    re = [list(r) for r in m_re]
    im = [list(r) for r in m_im]
    prev_re, prev_im, prev_sq = 1, 0, 1
    r = 0
    for c in range(cols):
        pivot = -1
        for i in range(r, rows):
            if re[i][c] or im[i][c]:
                pivot = i
                break
        if pivot == -1:
            continue
        if pivot != r:
            re[r], re[pivot] = re[pivot], re[r]
            im[r], im[pivot] = im[pivot], im[r]
        pr, pi = re[r][c], im[r][c]
        for i in range(r + 1, rows):
            xr, xi = re[i][c], im[i][c]
            row_re, row_im = re[i], im[i]
            top_re, top_im = re[r], im[r]
            for j in range(c + 1, cols):
                # Bareiss step: (m[i][j]*piv - m[i][c]*m[r][j]) / prev
                tr = row_re[j] * pr - row_im[j] * pi - (xr * top_re[j] - xi * top_im[j])
                ti = row_re[j] * pi + row_im[j] * pr - (xr * top_im[j] + xi * top_re[j])
                if prev_sq == 1 and prev_im == 0:
                    row_re[j] = tr if prev_re == 1 else -tr
                    row_im[j] = ti if prev_re == 1 else -ti
                else:
                    ur = tr * prev_re + ti * prev_im
                    ui = ti * prev_re - tr * prev_im
                    qr, rem_r = divmod(ur, prev_sq)
                    qi, rem_i = divmod(ui, prev_sq)
                    if rem_r or rem_i:
                        raise ArithmeticError("inexact Bareiss division")
                    row_re[j] = qr
                    row_im[j] = qi
            row_re[c] = 0
            row_im[c] = 0
        prev_re, prev_im = pr, pi
        prev_sq = pr * pr + pi * pi
        r += 1
        if r == rows:
            break
    return r
