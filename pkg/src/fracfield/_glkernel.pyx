# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Grünwald-Letnikov sums over batches of 1-D lines.

Each row of ``lines`` is one line; weights are already truncated by the
caller. Both kernels release the GIL so callers may split rows over threads.
"""


def gl_left(const double[:, ::1] lines, const double[::1] w, double[:, ::1] out):
    """out[r, i] = sum_{j=0..min(i, nw-1)} w[j] * lines[r, i - j]"""
    cdef Py_ssize_t m = lines.shape[0]
    cdef Py_ssize_t n = lines.shape[1]
    cdef Py_ssize_t nw = w.shape[0]
    cdef Py_ssize_t r, i, j, jmax
    cdef double s
    with nogil:
        for r in range(m):
            for i in range(n):
                jmax = i if i < nw - 1 else nw - 1
                s = 0.0
                for j in range(jmax + 1):
                    s += w[j] * lines[r, i - j]
                out[r, i] = s


def gl_right(const double[:, ::1] lines, const double[::1] w, double[:, ::1] out):
    """out[r, i] = sum_{j=0..min(n-1-i, nw-1)} w[j] * lines[r, i + j]"""
    cdef Py_ssize_t m = lines.shape[0]
    cdef Py_ssize_t n = lines.shape[1]
    cdef Py_ssize_t nw = w.shape[0]
    cdef Py_ssize_t r, i, j, jmax
    cdef double s
    with nogil:
        for r in range(m):
            for i in range(n):
                jmax = n - 1 - i
                if jmax > nw - 1:
                    jmax = nw - 1
                s = 0.0
                for j in range(jmax + 1):
                    s += w[j] * lines[r, i + j]
                out[r, i] = s
