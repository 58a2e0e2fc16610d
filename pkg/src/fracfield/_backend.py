"""Kernel selection.

The compiled extension is used when it imports; otherwise the numpy
fallback. ``FRACFIELD_BACKEND=python`` forces the fallback and
``FRACFIELD_THREADS`` caps the number of worker threads used to split
line batches (compiled backend only, since it releases the GIL).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _glkernel_py

try:
    from . import _glkernel as _compiled
except ImportError:  # extension not built
    _compiled = None

_KERNELS = {"python": _glkernel_py}
if _compiled is not None:
    _KERNELS["cython"] = _compiled

if os.environ.get("FRACFIELD_BACKEND", "").lower() == "python" or _compiled is None:
    BACKEND = "python"
else:
    BACKEND = "cython"

# below this many samples per batch, thread dispatch costs more than it saves
_MIN_PARALLEL_WORK = 1 << 18


def available_backends() -> list[str]:
    return sorted(_KERNELS)


def max_threads() -> int:
    raw = os.environ.get("FRACFIELD_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def gl_apply(lines: np.ndarray, w: np.ndarray, side: str, backend: str | None = None) -> np.ndarray:
    """Run the left or right GL sum over each row of a 2-D array.

    Results do not depend on the thread count: rows are independent and each
    row is summed in the same order regardless of how the batch is split.
    """
    name = backend or BACKEND
    try:
        kernel = _KERNELS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable backend {name!r}") from None
    fn = kernel.gl_left if side == "left" else kernel.gl_right
    lines = np.ascontiguousarray(lines, dtype=np.float64)
    w = np.ascontiguousarray(w, dtype=np.float64)
    out = np.empty_like(lines)
    m, n = lines.shape
    threads = max_threads() if name == "cython" else 1
    if threads > 1 and m > 1 and m * n * min(len(w), n) >= _MIN_PARALLEL_WORK:
        chunks = np.array_split(np.arange(m), min(threads, m))
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            futures = [pool.submit(fn, lines[c[0]:c[-1] + 1], w, out[c[0]:c[-1] + 1]) for c in chunks]
            for f in futures:
                f.result()
    else:
        fn(lines, w, out)
    return out
