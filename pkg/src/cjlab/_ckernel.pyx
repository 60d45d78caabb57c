# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sweep kernels: the hot enumeration loops over choice-function
spaces and ranked copy structures, bit-twiddled in C.

Mirrors the `_pykernel` API and semantics exactly (property order and skip
rules follow `_bitprops`); cross-backend agreement is asserted by the test
suite on full small spaces and random large instances.
"""

from libc.string cimport memset

# property indices, matching _bitprops.PROPERTIES
DEF P_SUB = 0
DEF P_PR = 1
DEF P_PR2 = 2
DEF P_EQ = 3
DEF P_EQ2 = 4
DEF P_EMPTY = 5
DEF P_EMPTYFIN = 6
DEF P_OR = 7
DEF P_WOR = 8
DEF P_DISJOR = 9
DEF P_CUT = 10
DEF P_CM = 11
DEF P_RESM = 12
DEF P_CUM = 13
DEF P_SUBSUP = 14
DEF P_RATM = 15
DEF P_PAR = 16
DEF P_CUP = 17
DEF P_CUP2 = 18
DEF P_ELEM = 19
DEF NPROPS = 20

DEF MAXSUB = 16          # up to |U| = 4 -> 16 subsets
DEF MAXROWS = 64
DEF MAXTERMS = 8

CLOSURES = ("inter", "union", "diff", "sing", "powerset")


cdef bint _prop_holds(int pid, int n, int nsub, unsigned short* fv,
                      unsigned int dmask, unsigned short* dom,
                      int ndom) nogil:
    cdef int i, j, k, a, b
    cdef unsigned short x, y, u, pair
    cdef bint found, untestable
    if pid == P_SUB:
        for i in range(ndom):
            x = dom[i]
            if fv[x] & ~x & (nsub - 1):
                return 0
        return 1
    if pid == P_PR:
        for i in range(ndom):
            x = dom[i]
            for j in range(ndom):
                y = dom[j]
                if x & ~y:
                    continue
                if fv[y] & x & ~fv[x]:
                    return 0
        return 1
    if pid == P_PR2:
        for i in range(ndom):
            x = dom[i]
            for j in range(ndom):
                y = dom[j]
                if not dmask >> (x & y) & 1:
                    continue
                if fv[x] & y & ~fv[x & y]:
                    return 0
        return 1
    if pid == P_EQ:
        for i in range(ndom):
            x = dom[i]
            for j in range(ndom):
                y = dom[j]
                if x & ~y:
                    continue
                if x & fv[y] and fv[x] != (fv[y] & x):
                    return 0
        return 1
    if pid == P_EQ2:
        for i in range(ndom):
            x = dom[i]
            for j in range(ndom):
                y = dom[j]
                if not dmask >> (x & y) & 1:
                    continue
                if fv[y] & x and fv[y & x] != (fv[y] & x):
                    return 0
        return 1
    if pid == P_EMPTY:
        for i in range(ndom):
            x = dom[i]
            if fv[x] == 0 and x != 0:
                return 0
        return 1
    if pid == P_EMPTYFIN:
        for i in range(ndom):
            x = dom[i]
            if x != 0 and fv[x] == 0:
                return 0
        return 1
    if pid == P_OR:
        for i in range(ndom):
            x = dom[i]
            for j in range(ndom):
                y = dom[j]
                if not dmask >> (x | y) & 1:
                    continue
                if fv[x | y] & ~(fv[x] | fv[y]):
                    return 0
        return 1
    if pid == P_WOR:
        for i in range(ndom):
            x = dom[i]
            for j in range(ndom):
                y = dom[j]
                if not dmask >> (x | y) & 1:
                    continue
                if fv[x | y] & ~(fv[x] | y):
                    return 0
        return 1
    if pid == P_DISJOR:
        for i in range(ndom):
            x = dom[i]
            for j in range(ndom):
                y = dom[j]
                if not dmask >> (x | y) & 1:
                    continue
                if (x & y) == 0 and fv[x | y] & ~(fv[x] | fv[y]):
                    return 0
        return 1
    if pid == P_CUT:
        for i in range(ndom):
            x = dom[i]
            for j in range(ndom):
                y = dom[j]
                if fv[x] & ~y == 0 and y & ~x == 0 and fv[x] & ~fv[y]:
                    return 0
        return 1
    if pid == P_CM:
        for i in range(ndom):
            x = dom[i]
            for j in range(ndom):
                y = dom[j]
                if fv[x] & ~y == 0 and y & ~x == 0 and fv[y] & ~fv[x]:
                    return 0
        return 1
    if pid == P_RESM:
        for i in range(ndom):
            x = dom[i]
            for a in range(nsub):
                if not dmask >> (x & a) & 1:
                    continue
                for b in range(nsub):
                    if fv[x] & ~(a & b) == 0 and fv[x & a] & ~b:
                        return 0
        return 1
    if pid == P_CUM:
        for i in range(ndom):
            x = dom[i]
            for j in range(ndom):
                y = dom[j]
                if fv[x] & ~y == 0 and y & ~x == 0 and fv[x] != fv[y]:
                    return 0
        return 1
    if pid == P_SUBSUP:
        for i in range(ndom):
            x = dom[i]
            for j in range(ndom):
                y = dom[j]
                if fv[x] & ~y == 0 and fv[y] & ~x == 0 and fv[x] != fv[y]:
                    return 0
        return 1
    if pid == P_RATM:
        for i in range(ndom):
            x = dom[i]
            for j in range(ndom):
                y = dom[j]
                if x & ~y:
                    continue
                if x & fv[y] and fv[x] & ~(fv[y] & x):
                    return 0
        return 1
    if pid == P_PAR:
        for i in range(ndom):
            x = dom[i]
            for j in range(ndom):
                y = dom[j]
                if not dmask >> (x | y) & 1:
                    continue
                u = fv[x | y]
                if u != fv[x] and u != fv[y] and u != (fv[x] | fv[y]):
                    return 0
        return 1
    if pid == P_CUP:
        for i in range(ndom):
            x = dom[i]
            for j in range(ndom):
                y = dom[j]
                if not dmask >> (x | y) & 1:
                    continue
                if fv[y] & x & ~fv[x] and fv[x | y] & y:
                    return 0
        return 1
    if pid == P_CUP2:
        for i in range(ndom):
            x = dom[i]
            for j in range(ndom):
                y = dom[j]
                if not dmask >> (x | y) & 1:
                    continue
                if fv[y] & x & ~fv[x] and fv[x | y] != fv[x]:
                    return 0
        return 1
    if pid == P_ELEM:
        for i in range(ndom):
            x = dom[i]
            for a in range(n):
                if not (x & ~fv[x]) >> a & 1:
                    continue
                found = 0
                untestable = 0
                for b in range(n):
                    if not x >> b & 1:
                        continue
                    pair = (1 << a) | (1 << b)
                    if not dmask >> pair & 1:
                        untestable = 1
                        continue
                    if not fv[pair] >> a & 1:
                        found = 1
                        break
                if not found and not untestable:
                    return 0
        return 1
    return 0


cdef unsigned int _closure_bits(int n, int nsub, unsigned int dmask,
                                unsigned short* dom, int ndom) nogil:
    cdef unsigned int out = 0
    cdef int i, j, a
    cdef bint ok
    ok = 1
    for i in range(ndom):
        for j in range(ndom):
            if not dmask >> (dom[i] & dom[j]) & 1:
                ok = 0
                break
        if not ok:
            break
    if ok:
        out |= 1  # inter
    ok = 1
    for i in range(ndom):
        for j in range(ndom):
            if not dmask >> (dom[i] | dom[j]) & 1:
                ok = 0
                break
        if not ok:
            break
    if ok:
        out |= 2  # union
    ok = 1
    for i in range(ndom):
        for j in range(ndom):
            if not dmask >> (dom[i] & ~dom[j] & (nsub - 1)) & 1:
                ok = 0
                break
        if not ok:
            break
    if ok:
        out |= 4  # diff
    ok = 1
    for a in range(n):
        if not dmask >> (1 << a) & 1:
            ok = 0
            break
    if ok:
        out |= 8  # sing
    if dmask == (<unsigned int> 1 << nsub) - 1:
        out |= 16  # powerset
    return out


def function_props(int n, unsigned int dmask, fvals):
    """Bitmask over the property order for one choice function."""
    cdef unsigned short fv[MAXSUB]
    cdef unsigned short dom[MAXSUB]
    cdef int nsub = 1 << n
    cdef int i, ndom = 0
    cdef unsigned int out = 0
    if n > 4:
        raise ValueError("compiled kernel supports universes up to size 4")
    for i in range(nsub):
        fv[i] = fvals[i]
    for i in range(nsub):
        if dmask >> i & 1:
            dom[ndom] = i
            ndom += 1
    for i in range(NPROPS):
        if _prop_holds(i, n, nsub, fv, dmask, dom, ndom):
            out |= <unsigned int> 1 << i
    return out


def run_rows(int n, specs):
    """One pass over every (domain, function) pair with |U| = n; see the
    interpreted twin for the result shape."""
    cdef int nrows = len(specs)
    if nrows > MAXROWS:
        raise ValueError("too many row specs")
    if n > 3:
        raise ValueError("exhaustive sweep supports universes up to size 3")
    cdef int nsub = 1 << n
    cdef int nleft[MAXROWS]
    cdef int nside[MAXROWS]
    cdef int nclos[MAXROWS]
    cdef int nright[MAXROWS]
    cdef int left[MAXROWS][MAXTERMS]
    cdef int side[MAXROWS][MAXTERMS]
    cdef int clos[MAXROWS][MAXTERMS]
    cdef int right[MAXROWS][MAXTERMS]
    cdef unsigned long long counts[MAXROWS]
    cdef int r, t
    witnesses = [None] * nrows
    for r in range(nrows):
        l, s, c, rr = specs[r]
        nleft[r] = len(l)
        nside[r] = len(s)
        nclos[r] = len(c)
        nright[r] = len(rr)
        for t in range(len(l)):
            left[r][t] = l[t]
        for t in range(len(s)):
            side[r][t] = s[t]
        for t in range(len(c)):
            clos[r][t] = c[t]
        for t in range(len(rr)):
            right[r][t] = rr[t]
        counts[r] = 0

    cdef unsigned short fv[MAXSUB]
    cdef unsigned short dom[MAXSUB]
    cdef unsigned short positions[MAXSUB]
    cdef signed char cache[NPROPS]
    cdef bint active[MAXROWS]
    cdef unsigned int dmask, cbits
    cdef int ndom, npos, i, pid
    cdef bint any_active, ok, rok
    cdef unsigned long long total_dmask = <unsigned long long> 1 << nsub

    for i in range(nsub):
        fv[i] = 0
    for dmask in range(total_dmask):
        ndom = 0
        for i in range(nsub):
            if dmask >> i & 1:
                dom[ndom] = i
                ndom += 1
        cbits = _closure_bits(n, nsub, dmask, dom, ndom)
        any_active = 0
        for r in range(nrows):
            ok = 1
            for t in range(nclos[r]):
                if not cbits >> clos[r][t] & 1:
                    ok = 0
                    break
            active[r] = ok
            if ok:
                any_active = 1
        if not any_active:
            continue
        npos = ndom
        for i in range(npos):
            positions[i] = dom[i]
            fv[dom[i]] = 0
        while True:
            memset(cache, -1, NPROPS)
            for r in range(nrows):
                if not active[r]:
                    continue
                ok = 1
                for t in range(nleft[r]):
                    pid = left[r][t]
                    if cache[pid] < 0:
                        cache[pid] = _prop_holds(pid, n, nsub, fv, dmask,
                                                 dom, ndom)
                    if not cache[pid]:
                        ok = 0
                        break
                if ok:
                    for t in range(nside[r]):
                        pid = side[r][t]
                        if cache[pid] < 0:
                            cache[pid] = _prop_holds(pid, n, nsub, fv, dmask,
                                                     dom, ndom)
                        if not cache[pid]:
                            ok = 0
                            break
                if not ok:
                    continue
                counts[r] += 1
                if witnesses[r] is None:
                    rok = 1
                    for t in range(nright[r]):
                        pid = right[r][t]
                        if cache[pid] < 0:
                            cache[pid] = _prop_holds(pid, n, nsub, fv, dmask,
                                                     dom, ndom)
                        if not cache[pid]:
                            rok = 0
                            break
                    if not rok:
                        witnesses[r] = (dmask,
                                        tuple(fv[i] for i in range(nsub)))
            # odometer
            i = 0
            while i < npos:
                fv[positions[i]] += 1
                if fv[positions[i]] < nsub:
                    break
                fv[positions[i]] = 0
                i += 1
            if i == npos:
                break
    return [(counts[r], witnesses[r]) for r in range(nrows)]


# ------------------------------------------------------- 1-infinity sweep

def one_infinity_sweep(int max_points):
    """Exhaustive mu-preservation check of the copy collapse over every
    ranked cycle-free structure with <= max_points base points, <= 2 copies
    per point and <= 1 copyless point; see the interpreted twin."""
    cdef unsigned long long structures = 0
    cdef unsigned long long failures = 0
    cdef int npoints, copyless, ncopied, twos, m, i, j, p, x, top
    cdef int ranks[8]
    cdef int copy_points[8]
    cdef int kept[4]
    cdef int minrank[4]
    cdef int best, used
    cdef int before[16]
    cdef int after[16]
    cdef bint ok, valid
    cdef unsigned long long total, v, vv
    witness = None
    if max_points > 4:
        raise ValueError("compiled kernel supports at most 4 base points")
    for npoints in range(1, max_points + 1):
        for copyless in range(2):
            ncopied = npoints - copyless
            if ncopied < 0:
                continue
            for twos in range(1 << ncopied):
                m = 0
                for p in range(ncopied):
                    copy_points[m] = p
                    m += 1
                    if twos >> p & 1:
                        copy_points[m] = p
                        m += 1
                total = 1
                for i in range(m):
                    total *= m
                if m == 0:
                    total = 1
                for v in range(total):
                    # decode base-m digits into ranks
                    used = 0
                    top = 0
                    if m:
                        vv = v
                        for i in range(m):
                            ranks[i] = <int> (vv % m)
                            vv //= m
                            used |= 1 << ranks[i]
                    # initial-segment filter
                    valid = 1
                    if m:
                        top = used
                        i = 0
                        while top > 1:
                            if not top & 1:
                                valid = 0
                                break
                            top >>= 1
                        if used == 0:
                            valid = 0
                    if m == 0:
                        valid = 1
                    if not valid:
                        continue
                    structures += 1
                    # mu over all subsets, all copies
                    for x in range(1 << npoints):
                        best = 127
                        for i in range(m):
                            if x >> copy_points[i] & 1 and ranks[i] < best:
                                best = ranks[i]
                        before[x] = 0
                        if best < 127:
                            for i in range(m):
                                if x >> copy_points[i] & 1 and ranks[i] == best:
                                    before[x] |= 1 << copy_points[i]
                    # keep least-indexed minimal copy per point
                    for p in range(ncopied):
                        best = 127
                        for i in range(m):
                            if copy_points[i] == p and ranks[i] < best:
                                best = ranks[i]
                        for i in range(m):
                            if copy_points[i] == p and ranks[i] == best:
                                kept[p] = i
                                break
                    for x in range(1 << npoints):
                        best = 127
                        for p in range(ncopied):
                            if x >> p & 1 and ranks[kept[p]] < best:
                                best = ranks[kept[p]]
                        after[x] = 0
                        if best < 127:
                            for p in range(ncopied):
                                if x >> p & 1 and ranks[kept[p]] == best:
                                    after[x] |= 1 << p
                    ok = 1
                    for x in range(1 << npoints):
                        if before[x] != after[x]:
                            ok = 0
                            break
                    if not ok:
                        failures += 1
                        if witness is None:
                            witness = (npoints, copyless, twos,
                                       [ranks[i] for i in range(m)])
    return structures, failures, witness
