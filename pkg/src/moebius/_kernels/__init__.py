"""Hot-kernel selection: the compiled extension when it built, else the
numpy fallback.  Callers use the chunked wrappers, which partition the row
range across a thread pool and merge deterministically (extremal value, ties
broken by row-major witness order), so results never depend on worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

try:  # pragma: no cover - exercised only when the extension is present
    from . import _ckernels as _impl
except ImportError:  # pragma: no cover
    from . import _pykernels as _impl

from . import _pykernels

BACKEND = _impl.BACKEND


def kernel_backend() -> str:
    """'c' when the compiled extension is active, 'python' otherwise."""
    return BACKEND


def _chunks(n: int, workers: int):
    workers = max(1, min(workers, n))
    step = (n + workers - 1) // workers
    return [(lo, min(lo + step, n)) for lo in range(0, n, step)]


def _run_chunked(fn, d: np.ndarray, workers: int, pick_max: bool):
    d = np.ascontiguousarray(d, dtype=np.float64)
    n = d.shape[0]
    ranges = _chunks(n, workers)
    if len(ranges) == 1:
        results = [fn(d, *ranges[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
            results = list(pool.map(lambda r: fn(d, *r), ranges))
    best = None
    for res in results:  # chunk order == row order, so first win is row-major
        if best is None:
            best = res
        elif pick_max and res[0] > best[0]:
            best = res
        elif not pick_max and res[0] < best[0]:
            best = res
    return best


def quasi_constant_scan(d: np.ndarray, workers: int = 1):
    """Max of d[x,z]/max(d[x,y], d[y,z]) over distinct triples of a finite
    float matrix.  Returns (ratio, (x, y, z)); ratio -1.0 if no triple."""
    r, x, y, z = _run_chunked(_impl.quasi_scan, d, workers, pick_max=True)
    return r, (x, y, z)


def corner_margin_scan(d: np.ndarray, workers: int = 1):
    """Min corner measure over non-degenerate quadruples of a finite float
    matrix.  Returns (margin, (w, x, y, z)); margin inf if no quadruple."""
    m, w, x, y, z = _run_chunked(_impl.corner_scan, d, workers, pick_max=False)
    return m, (w, x, y, z)


def corner_margin_sampled(d: np.ndarray, quads: np.ndarray):
    """Corner measures for an explicit array of quadruple indices (k, 4);
    vectorized, backend-independent.  Returns (margin, (w,x,y,z))."""
    d = np.asarray(d, dtype=np.float64)
    w, x, y, z = (quads[:, 0], quads[:, 1], quads[:, 2], quads[:, 3])
    a = d[w, x] * d[y, z]
    b = d[w, y] * d[z, x]
    c = d[w, z] * d[x, y]
    m1 = np.maximum(a, b) / c
    m2 = np.maximum(a, c) / b
    m3 = np.maximum(b, c) / a
    measure = np.minimum(np.minimum(m1, m2), m3)
    k = int(measure.argmin())
    return float(measure[k]), tuple(int(v) for v in quads[k])


def python_backend():
    """Direct handle on the fallback, for parity tests and benchmarks."""
    return _pykernels


def compiled_backend():
    """The compiled module, or None when it did not build."""
    return _impl if _impl.BACKEND == "c" else None
