# cython: language_level=3
# cython: overflowcheck=True
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled int64 kernels for Gaussian-integer matrices.

Mirrors ``_pure_kernels`` exactly.  Every arithmetic step is
overflow-checked; an OverflowError (raised either while converting a
Python int into an int64 slot or by a checked operation) tells the
dispatcher in ``kernels`` to redo the call with the pure big-int path,
so results are always exact.
"""

from libc.stdlib cimport free, malloc

cdef long long* _alloc(Py_ssize_t count) except NULL:
    cdef long long* buf = <long long*> malloc(count * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    return buf


cdef void _fill(long long* buf, rows_obj, Py_ssize_t nrows, Py_ssize_t ncols) except *:
    cdef Py_ssize_t i, j
    for i in range(nrows):
        row = rows_obj[i]
        for j in range(ncols):
            buf[i * ncols + j] = row[j]


def matmul(a_re, a_im, b_re, b_im):
    cdef Py_ssize_t n = len(a_re)
    cdef Py_ssize_t inner = len(b_re)
    cdef Py_ssize_t p = 0
    if inner:
        p = len(b_re[0])
    cdef long long* ar = NULL
    cdef long long* ai = NULL
    cdef long long* br = NULL
    cdef long long* bi = NULL
    cdef long long* cr = NULL
    cdef long long* ci = NULL
    cdef Py_ssize_t i, j, k
    cdef long long x, y, u, v
    if n == 0 or inner == 0 or p == 0:
        return [[0] * p for _ in range(n)], [[0] * p for _ in range(n)]
    try:
        ar = _alloc(n * inner)
        ai = _alloc(n * inner)
        br = _alloc(inner * p)
        bi = _alloc(inner * p)
        cr = _alloc(n * p)
        ci = _alloc(n * p)
        _fill(ar, a_re, n, inner)
        _fill(ai, a_im, n, inner)
        _fill(br, b_re, inner, p)
        _fill(bi, b_im, inner, p)
        for i in range(n * p):
            cr[i] = 0
            ci[i] = 0
        for i in range(n):
            for k in range(inner):
                x = ar[i * inner + k]
                y = ai[i * inner + k]
                if x == 0 and y == 0:
                    continue
                for j in range(p):
                    u = br[k * p + j]
                    v = bi[k * p + j]
                    if u == 0 and v == 0:
                        continue
                    cr[i * p + j] = cr[i * p + j] + (x * u - y * v)
                    ci[i * p + j] = ci[i * p + j] + (x * v + y * u)
        out_re = [[cr[i * p + j] for j in range(p)] for i in range(n)]
        out_im = [[ci[i * p + j] for j in range(p)] for i in range(n)]
        return out_re, out_im
    finally:
        free(ar)
        free(ai)
        free(br)
        free(bi)
        free(cr)
        free(ci)


def rank(m_re, m_im):
    cdef Py_ssize_t rows = len(m_re)
    cdef Py_ssize_t cols = 0
    if rows:
        cols = len(m_re[0])
    if rows == 0 or cols == 0:
        return 0
    cdef long long* re = NULL
    cdef long long* im = NULL
    cdef long long* tmp = NULL
    cdef Py_ssize_t i, j, c, r, pivot
    cdef long long pr, pi, xr, xi, tr, ti, ur, ui, qr, qi
    cdef long long prev_re = 1
    cdef long long prev_im = 0
    cdef long long prev_sq = 1
    try:
        re = _alloc(rows * cols)
        im = _alloc(rows * cols)
        tmp = _alloc(cols)
        _fill(re, m_re, rows, cols)
        _fill(im, m_im, rows, cols)
        r = 0
        for c in range(cols):
            pivot = -1
            for i in range(r, rows):
                if re[i * cols + c] != 0 or im[i * cols + c] != 0:
                    pivot = i
                    break
            if pivot == -1:
                continue
            if pivot != r:
                for j in range(cols):
                    tmp[j] = re[r * cols + j]
                    re[r * cols + j] = re[pivot * cols + j]
                    re[pivot * cols + j] = tmp[j]
                    tmp[j] = im[r * cols + j]
                    im[r * cols + j] = im[pivot * cols + j]
                    im[pivot * cols + j] = tmp[j]
            pr = re[r * cols + c]
            pi = im[r * cols + c]
            for i in range(r + 1, rows):
                xr = re[i * cols + c]
                xi = im[i * cols + c]
                for j in range(c + 1, cols):
                    tr = (re[i * cols + j] * pr - im[i * cols + j] * pi
                          - (xr * re[r * cols + j] - xi * im[r * cols + j]))
                    ti = (re[i * cols + j] * pi + im[i * cols + j] * pr
                          - (xr * im[r * cols + j] + xi * re[r * cols + j]))
                    if prev_sq == 1 and prev_im == 0:
                        if prev_re == 1:
                            re[i * cols + j] = tr
                            im[i * cols + j] = ti
                        else:
                            re[i * cols + j] = -tr
                            im[i * cols + j] = -ti
                    else:
                        ur = tr * prev_re + ti * prev_im
                        ui = ti * prev_re - tr * prev_im
                        qr = ur // prev_sq
                        qi = ui // prev_sq
                        if qr * prev_sq != ur or qi * prev_sq != ui:
                            raise ArithmeticError("inexact Bareiss division")
                        re[i * cols + j] = qr
                        im[i * cols + j] = qi
                re[i * cols + c] = 0
                im[i * cols + c] = 0
            prev_re = pr
            prev_im = pi
            prev_sq = pr * pr + pi * pi
            r += 1
            if r == rows:
                break
        return r
    finally:
        free(re)
        free(im)
        free(tmp)
