"""Bit-level semantics of the choice-function properties.

Sets over a universe of size n are int bitmasks (bit i = i-th element).
A choice function is a sequence `fvals` indexed by subset mask, meaningful
only at positions that belong to the domain bitmap `dmask` (bit s of dmask
set iff subset s is in the domain).

Quantifier conventions: capital letters that stand for theory-definable
sets range over the domain; A and B letters range over all subsets of the
universe; a, b range over elements.  Instances whose required combined set
(union / intersection / pair) is outside the domain are skipped and counted
separately.  Each scan returns (witness_or_None, checked, skipped); the
witness is a dict of label -> mask (or element index for a, b).
"""

from __future__ import annotations

PROPERTIES = (
    "sub", "pr", "pr2", "eq", "eq2", "empty", "emptyfin", "or", "wor",
    "disjor", "cut", "cm", "resm", "cum", "subsup", "ratm", "par", "cup",
    "cup2", "elem",
)
PROP_INDEX = {p: i for i, p in enumerate(PROPERTIES)}


def domain_list(dmask, n):
    return [s for s in range(1 << n) if dmask >> s & 1]


def closure_flags(n, dmask):
    """Closure conditions of a domain: intersection, union, difference,
    singleton containment, full powerset."""
    dom = domain_list(dmask, n)
    inter = all(dmask >> (x & y) & 1 for x in dom for y in dom)
    union = all(dmask >> (x | y) & 1 for x in dom for y in dom)
    diff = all(dmask >> (x & ~y) & 1 for x in dom for y in dom)
    sing = all(dmask >> (1 << a) & 1 for a in range(n))
    powerset = dmask == (1 << (1 << n)) - 1
    return {"inter": inter, "union": union, "diff": diff, "sing": sing,
            "powerset": powerset}


def prop_scan(prop, n, fvals, dmask):
    """Scan every instance of `prop`; return (witness, checked, skipped)."""
    dom = domain_list(dmask, n)
    checked = 0
    skipped = 0

    if prop == "sub":
        for x in dom:
            checked += 1
            if fvals[x] & ~x:
                return {"X": x}, checked, skipped
    elif prop == "pr":
        for x in dom:
            for y in dom:
                checked += 1
                if x & ~y == 0 and fvals[y] & x & ~fvals[x]:
                    return {"X": x, "Y": y}, checked, skipped
    elif prop == "pr2":
        for x in dom:
            for y in dom:
                if not dmask >> (x & y) & 1:
                    skipped += 1
                    continue
                checked += 1
                if fvals[x] & y & ~fvals[x & y]:
                    return {"X": x, "Y": y}, checked, skipped
    elif prop == "eq":
        for x in dom:
            for y in dom:
                checked += 1
                if x & ~y == 0 and x & fvals[y] and fvals[x] != fvals[y] & x:
                    return {"X": x, "Y": y}, checked, skipped
    elif prop == "eq2":
        for x in dom:
            for y in dom:
                if not dmask >> (x & y) & 1:
                    skipped += 1
                    continue
                checked += 1
                if fvals[y] & x and fvals[y & x] != fvals[y] & x:
                    return {"X": x, "Y": y}, checked, skipped
    elif prop == "empty":
        for x in dom:
            checked += 1
            if fvals[x] == 0 and x != 0:
                return {"X": x}, checked, skipped
    elif prop == "emptyfin":
        for x in dom:
            checked += 1
            if x != 0 and fvals[x] == 0:
                return {"X": x}, checked, skipped
    elif prop == "or":
        for x in dom:
            for y in dom:
                if not dmask >> (x | y) & 1:
                    skipped += 1
                    continue
                checked += 1
                if fvals[x | y] & ~(fvals[x] | fvals[y]):
                    return {"X": x, "Y": y}, checked, skipped
    elif prop == "wor":
        for x in dom:
            for y in dom:
                if not dmask >> (x | y) & 1:
                    skipped += 1
                    continue
                checked += 1
                if fvals[x | y] & ~(fvals[x] | y):
                    return {"X": x, "Y": y}, checked, skipped
    elif prop == "disjor":
        for x in dom:
            for y in dom:
                if not dmask >> (x | y) & 1:
                    skipped += 1
                    continue
                checked += 1
                if x & y == 0 and fvals[x | y] & ~(fvals[x] | fvals[y]):
                    return {"X": x, "Y": y}, checked, skipped
    elif prop == "cut":
        for x in dom:
            for y in dom:
                checked += 1
                if fvals[x] & ~y == 0 and y & ~x == 0 and fvals[x] & ~fvals[y]:
                    return {"X": x, "Y": y}, checked, skipped
    elif prop == "cm":
        for x in dom:
            for y in dom:
                checked += 1
                if fvals[x] & ~y == 0 and y & ~x == 0 and fvals[y] & ~fvals[x]:
                    return {"X": x, "Y": y}, checked, skipped
    elif prop == "resm":
        full = (1 << n) - 1
        for x in dom:
            for a in range(full + 1):
                if not dmask >> (x & a) & 1:
                    skipped += full + 1
                    continue
                for b in range(full + 1):
                    checked += 1
                    if fvals[x] & ~(a & b) == 0 and fvals[x & a] & ~b:
                        return {"X": x, "A": a, "B": b}, checked, skipped
    elif prop == "cum":
        for x in dom:
            for y in dom:
                checked += 1
                if fvals[x] & ~y == 0 and y & ~x == 0 and fvals[x] != fvals[y]:
                    return {"X": x, "Y": y}, checked, skipped
    elif prop == "subsup":
        for x in dom:
            for y in dom:
                checked += 1
                if (fvals[x] & ~y == 0 and fvals[y] & ~x == 0
                        and fvals[x] != fvals[y]):
                    return {"X": x, "Y": y}, checked, skipped
    elif prop == "ratm":
        for x in dom:
            for y in dom:
                checked += 1
                if (x & ~y == 0 and x & fvals[y]
                        and fvals[x] & ~(fvals[y] & x)):
                    return {"X": x, "Y": y}, checked, skipped
    elif prop == "par":
        for x in dom:
            for y in dom:
                if not dmask >> (x | y) & 1:
                    skipped += 1
                    continue
                checked += 1
                u = fvals[x | y]
                if u != fvals[x] and u != fvals[y] and u != fvals[x] | fvals[y]:
                    return {"X": x, "Y": y}, checked, skipped
    elif prop == "cup":
        for x in dom:
            for y in dom:
                if not dmask >> (x | y) & 1:
                    skipped += 1
                    continue
                checked += 1
                if fvals[y] & x & ~fvals[x] and fvals[x | y] & y:
                    return {"X": x, "Y": y}, checked, skipped
    elif prop == "cup2":
        for x in dom:
            for y in dom:
                if not dmask >> (x | y) & 1:
                    skipped += 1
                    continue
                checked += 1
                if fvals[y] & x & ~fvals[x] and fvals[x | y] != fvals[x]:
                    return {"X": x, "Y": y}, checked, skipped
    elif prop == "elem":
        for x in dom:
            rest = x & ~fvals[x]
            for a in range(n):
                if not rest >> a & 1:
                    checked += 1
                    continue
                found = False
                untestable = False
                for b in range(n):
                    if not x >> b & 1:
                        continue
                    pair = (1 << a) | (1 << b)
                    if not dmask >> pair & 1:
                        untestable = True
                        continue
                    if not fvals[pair] >> a & 1:
                        found = True
                        break
                if found:
                    checked += 1
                elif untestable:
                    skipped += 1
                else:
                    return {"X": x, "a": a}, checked, skipped
    else:
        raise ValueError(f"unknown property id {prop!r}")
    return None, checked, skipped


def prop_holds(prop, n, fvals, dmask):
    """True iff no instance of `prop` is violated (vacuous counts as true)."""
    witness, _, _ = prop_scan(prop, n, fvals, dmask)
    return witness is None


def all_props(n, fvals, dmask):
    """Bitmask over PROPERTIES: bit i set iff property i holds."""
    out = 0
    for i, prop in enumerate(PROPERTIES):
        if prop_holds(prop, n, fvals, dmask):
            out |= 1 << i
    return out
