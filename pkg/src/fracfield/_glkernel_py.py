"""Pure-numpy Grünwald-Letnikov sums; same contract as the compiled kernel."""

import numpy as np


def gl_left(lines, w, out):
    n = lines.shape[1]
    out[...] = 0.0
    # one vectorized pass per lag keeps the summation exact-in-order per lag
    for j in range(min(len(w), n)):
        if w[j] == 0.0:
            continue
        out[:, j:] += w[j] * lines[:, : n - j]


def gl_right(lines, w, out):
    n = lines.shape[1]
    out[...] = 0.0
    for j in range(min(len(w), n)):
        if w[j] == 0.0:
            continue
        out[:, : n - j] += w[j] * lines[:, j:]
