"""Pure-python sweep kernels.

Same API as the compiled extension `_ckernel`; used as the fallback when
the extension is unavailable.  The hot loops enumerate every (domain,
choice-function) pair over a small universe, or every ranked copy
structure, so this backend is orders of magnitude slower than the
compiled one for universe size 3 and copy counts above 6.

Row specs are tuples
    (left, side_props, closures, right)
of property-index tuples / closure-index tuples; see `choice.ROW_TABLE`.
Closure indices follow CLOSURES below.
"""

from __future__ import annotations

from . import _bitprops as bp

CLOSURES = ("inter", "union", "diff", "sing", "powerset")


def function_props(n, dmask, fvals):
    """Bitmask over _bitprops.PROPERTIES for one choice function."""
    return bp.all_props(n, fvals, dmask)


def _closure_bits(n, dmask):
    flags = bp.closure_flags(n, dmask)
    out = 0
    for i, name in enumerate(CLOSURES):
        if flags[name]:
            out |= 1 << i
    return out


def _eval_specs(specs, active, n, fvals, dmask, results):
    cache = [None] * len(bp.PROPERTIES)

    def holds(pid):
        v = cache[pid]
        if v is None:
            v = bp.prop_holds(bp.PROPERTIES[pid], n, fvals, dmask)
            cache[pid] = v
        return v

    for idx in active:
        left, side, _, right = specs[idx]
        if all(holds(p) for p in left) and all(holds(p) for p in side):
            res = results[idx]
            res[0] += 1
            if res[1] is None and not all(holds(p) for p in right):
                res[1] = (dmask, tuple(fvals))


def run_rows(n, specs):
    """One pass over every (domain, function) pair with |U| = n.

    Returns, per spec, [satisfying_count, witness]: the count of pairs
    meeting the left side plus side conditions, and the first pair that
    additionally violates the right side (None when there is none).
    """
    nsub = 1 << n
    results = [[0, None] for _ in specs]
    fvals = [0] * nsub
    for dmask in range(1 << nsub):
        cbits = _closure_bits(n, dmask)
        active = [i for i, s in enumerate(specs)
                  if all(cbits >> c & 1 for c in s[2])]
        if not active:
            continue
        positions = [s for s in range(nsub) if dmask >> s & 1]
        for p in positions:
            fvals[p] = 0
        while True:
            _eval_specs(specs, active, n, fvals, dmask, results)
            i = 0
            while i < len(positions):
                fvals[positions[i]] += 1
                if fvals[positions[i]] < nsub:
                    break
                fvals[positions[i]] = 0
                i += 1
            if i == len(positions):
                break
    return [(count, witness) for count, witness in results]


# ------------------------------------------------------- 1-infinity sweep

def _rank_vectors(m):
    """All rank vectors of length m whose values cover an initial segment
    0..k; these are exactly the ordered partitions (strict weak orders)."""
    if m == 0:
        yield []
        return
    vec = [0] * m

    def rec(i, used):
        if i == m:
            top = used.bit_length() - 1
            if used == (1 << (top + 1)) - 1:
                yield list(vec)
            return
        rem = m - i - 1
        for r in range(m):
            nu = used | (1 << r)
            gaps = nu.bit_length() - bin(nu).count("1")
            if gaps <= rem:
                vec[i] = r
                yield from rec(i + 1, nu)

    yield from rec(0, 0)


def _mu_table(npoints, copy_points, ranks, kept=None):
    """mu(X) for every X as a bitmask table; copies may be filtered to the
    kept index set."""
    idx = range(len(copy_points)) if kept is None else kept
    table = [0] * (1 << npoints)
    for x in range(1 << npoints):
        best = None
        for i in idx:
            if x >> copy_points[i] & 1:
                if best is None or ranks[i] < best:
                    best = ranks[i]
        if best is None:
            continue
        out = 0
        for i in idx:
            if x >> copy_points[i] & 1 and ranks[i] == best:
                out |= 1 << copy_points[i]
        table[x] = out
    return table


def one_infinity_sweep(max_points):
    """Exhaustively check copy-collapse over every ranked cycle-free
    structure with at most `max_points` base points, at most two copies per
    point, and at most one copyless point.

    For each structure the minimum-selection table before and after the
    collapse (keep one minimal copy per point, chain-mark copyless points)
    must agree on every subset, and the result must have exactly one copy
    or a chain mark per point.  Returns (structures, failures, witness).
    """
    structures = 0
    failures = 0
    witness = None
    for npoints in range(1, max_points + 1):
        for copyless in (0, 1):
            ncopied = npoints - copyless
            if ncopied < 0:
                continue
            for twos in range(1 << ncopied):
                copy_points = []
                copy_index = []
                for p in range(ncopied):
                    copy_points.append(p)
                    copy_index.append(0)
                    if twos >> p & 1:
                        copy_points.append(p)
                        copy_index.append(1)
                m = len(copy_points)
                for ranks in _rank_vectors(m):
                    structures += 1
                    before = _mu_table(npoints, copy_points, ranks)
                    # keep the least-indexed minimal copy of each point
                    kept = []
                    for p in range(ncopied):
                        own = [i for i in range(m) if copy_points[i] == p]
                        best = min(ranks[i] for i in own)
                        kept.append(min(i for i in own if ranks[i] == best))
                    after = _mu_table(npoints, copy_points, ranks, kept)
                    ok = before == after
                    # cardinality: one kept copy per copied point, chain
                    # mark for the copyless one
                    counts = [0] * npoints
                    for i in kept:
                        counts[copy_points[i]] += 1
                    ok = ok and all(c == 1 for c in counts[:ncopied])
                    if not ok and witness is None:
                        failures += 1
                        witness = (npoints, copyless, twos, list(ranks))
                    elif not ok:
                        failures += 1
    return structures, failures, witness
