"""Kernel backend selection.

The hot sweep loops (choice-function space scans, copy-structure
enumeration) exist twice: a compiled Cython extension `_ckernel` and the
interpreted `_pykernel`.  The compiled one is picked when importable; set
CJLAB_KERNEL=py or CJLAB_KERNEL=c to force a backend.
"""

from __future__ import annotations

import os

from . import _pykernel

_forced = os.environ.get("CJLAB_KERNEL", "").lower()

if _forced in ("py", "python"):
    _impl = _pykernel
    BACKEND = "python"
else:
    try:
        from . import _ckernel as _impl  # type: ignore[attr-defined]

        BACKEND = "c"
    except ImportError:
        if _forced == "c":
            raise ImportError(
                "CJLAB_KERNEL=c requested but the compiled kernel is "
                "not built; install with the Cython extension enabled")
        _impl = _pykernel
        BACKEND = "python"

CLOSURES = _pykernel.CLOSURES


def active_backend():
    return BACKEND


def backends():
    """All importable backends, for cross-checking and benchmarks."""
    out = {"python": _pykernel}
    try:
        from . import _ckernel  # type: ignore[attr-defined]

        out["c"] = _ckernel
    except ImportError:
        pass
    return out


def function_props(n, dmask, fvals):
    return _impl.function_props(n, dmask, list(fvals))


def run_rows(n, specs):
    return _impl.run_rows(n, specs)


def run_rows_sampled(n, specs, samples, seed):
    """Seeded random (domain, function) sample of the |U| = n space.

    Sampling lives here so that both backends see the identical stream;
    only the per-function property bitmap is delegated."""
    import random

    rng = random.Random(seed)
    nsub = 1 << n
    results = [[0, None] for _ in specs]
    for _ in range(samples):
        dmask = rng.randrange(1 << nsub)
        fvals = [rng.randrange(nsub) if dmask >> s & 1 else 0
                 for s in range(nsub)]
        cbits = _pykernel._closure_bits(n, dmask)
        props = _impl.function_props(n, dmask, fvals)
        for i, (left, side, clos, right) in enumerate(specs):
            if (all(cbits >> c & 1 for c in clos)
                    and all(props >> p & 1 for p in left)
                    and all(props >> p & 1 for p in side)):
                results[i][0] += 1
                if results[i][1] is None and not all(props >> p & 1
                                                     for p in right):
                    results[i][1] = (dmask, tuple(fvals))
    return [(count, witness) for count, witness in results]


def one_infinity_sweep(max_points):
    return _impl.one_infinity_sweep(max_points)
