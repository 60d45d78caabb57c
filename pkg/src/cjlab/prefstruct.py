"""Preferential structures with copies: minimization, smoothness, rankedness.

A structure holds base points, indexed copies <point, index>, a strict
relation on copies (edge (c, d) reads c < d: c attacks / is better than d),
and an optional chain marker per point.  A chain-marked point stands for an
infinite strictly descending chain of copies of that point; by convention
the chain copies sit above every explicit copy, chains of distinct points
are mutually comparable, and a chain-marked point may not also carry
explicit copies.  Consequences used throughout:

  * a chain-marked point never contributes a minimal copy;
  * chain copies never attack explicit copies;
  * chains never break rankedness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .choice import ChoiceFunction, check_property


class PreconditionFailed(ValueError):
    pass


class PrefStructure:
    def __init__(self, points, copies, edges=(), omega=()):
        self.points = tuple(points)
        if len(set(self.points)) != len(self.points):
            raise ValueError("duplicate points")
        pointset = set(self.points)
        self.copies = tuple(sorted((p, int(i)) for p, i in copies))
        if len(set(self.copies)) != len(self.copies):
            raise ValueError("duplicate copies")
        for p, _ in self.copies:
            if p not in pointset:
                raise ValueError(f"copy of unknown point {p!r}")
        self.omega = frozenset(omega)
        if not self.omega <= pointset:
            raise ValueError("chain marker on unknown point")
        carried = {p for p, _ in self.copies}
        clash = self.omega & carried
        if clash:
            raise ValueError(
                f"points {sorted(clash)} are chain-marked and carry copies")
        copyset = set(self.copies)
        norm = set()
        for a, b in edges:
            a = (a[0], int(a[1]))
            b = (b[0], int(b[1]))
            if a not in copyset or b not in copyset:
                raise ValueError(f"edge endpoint not a copy: {a} -> {b}")
            if a == b:
                raise ValueError(f"reflexive edge on {a}")
            norm.add((a, b))
        self.edges = frozenset(norm)

    def __eq__(self, other):
        return (isinstance(other, PrefStructure)
                and self.points == other.points
                and self.copies == other.copies
                and self.edges == other.edges
                and self.omega == other.omega)

    def __repr__(self):
        return (f"PrefStructure(points={self.points!r}, copies={self.copies!r}, "
                f"edges={sorted(self.edges)!r}, omega={sorted(self.omega)!r})")

    def copies_of(self, point):
        return [c for c in self.copies if c[0] == point]

    def below(self, copy):
        return [a for a, b in self.edges if b == copy]

    # ---- json -----------------------------------------------------------
    def to_dict(self):
        return {
            "points": list(self.points),
            "copies": [{"point": p, "index": i} for p, i in self.copies],
            "omega": sorted(self.omega),
            "edges": [[{"point": a[0], "index": a[1]},
                       {"point": b[0], "index": b[1]}]
                      for a, b in sorted(self.edges)],
        }

    @staticmethod
    def _copyref(obj):
        if isinstance(obj, dict):
            return (obj["point"], int(obj["index"]))
        return (obj[0], int(obj[1]))

    @classmethod
    def from_dict(cls, data):
        try:
            points = data["points"]
            copies = [cls._copyref(c) for c in data["copies"]]
            omega = data.get("omega", [])
            edges = [(cls._copyref(a), cls._copyref(b))
                     for a, b in data.get("edges", [])]
        except (KeyError, TypeError, IndexError) as exc:
            raise ValueError(f"malformed structure data: {exc}")
        return cls(points, copies, edges, omega)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


def single_copy(points, order, omega=()):
    """Structure with one copy per point and point-level edges."""
    pts = tuple(points)
    om = frozenset(omega)
    copies = [(p, 0) for p in pts if p not in om]
    edges = [((a, 0), (b, 0)) for a, b in order]
    return PrefStructure(pts, copies, edges, om)


def mu(s, xs):
    """Points of X with some copy unattacked from inside X."""
    x = frozenset(xs)
    if not x <= set(s.points):
        raise ValueError("mu argument not a subset of the points")
    inside = [c for c in s.copies if c[0] in x]
    attacked = {b for a, b in s.edges if a[0] in x}
    return frozenset(c[0] for c in inside if c not in attacked)


def _minimal_copies(s, x):
    inside = [c for c in s.copies if c[0] in x]
    attacked = {b for a, b in s.edges if a[0] in x}
    return [c for c in inside if c not in attacked]


def is_smooth(s, family):
    """Copy-level smoothness over every X in the family.

    Every copy of an X-point must be unattacked in X or attacked by an
    X-minimal copy; a chain-marked point in X needs some X-minimal explicit
    copy below its chain.  Returns (flag, witness) with the first failing
    (X, copy-or-point).
    """
    for xs in sorted(family, key=lambda f: (len(f), sorted(f))):
        x = frozenset(xs)
        minimal = set(_minimal_copies(s, x))
        for c in sorted(c for c in s.copies if c[0] in x):
            attackers = [a for a, b in s.edges if b == c and a[0] in x]
            if attackers and not any(a in minimal for a in attackers):
                return False, (x, c)
        for p in sorted(s.omega & x):
            if not minimal:
                return False, (x, p)
    return True, None


def is_ranked(s):
    """Layering condition on the explicit copies: for incomparable x, y,
    anything below x is below y and anything above x is above y.
    Returns (flag, witness (x, y, z))."""
    edge = s.edges
    cs = s.copies
    for x in cs:
        for y in cs:
            if x >= y:
                continue
            if (x, y) in edge or (y, x) in edge:
                continue
            for z in cs:
                if ((z, x) in edge and (z, y) not in edge) or \
                   ((z, y) in edge and (z, x) not in edge):
                    return False, (x, y, z)
                if ((x, z) in edge and (y, z) not in edge) or \
                   ((y, z) in edge and (x, z) not in edge):
                    return False, (x, y, z)
    return True, None


def has_cycle(s):
    """True iff the explicit copy relation has a directed cycle."""
    succ = {c: [] for c in s.copies}
    for a, b in s.edges:
        succ[a].append(b)
    state = {c: 0 for c in s.copies}  # 0 new, 1 open, 2 done

    def visit(c):
        state[c] = 1
        for d in succ[c]:
            if state[d] == 1:
                return True
            if state[d] == 0 and visit(d):
                return True
        state[c] = 2
        return False

    return any(state[c] == 0 and visit(c) for c in s.copies)


@dataclass
class RankAssignment:
    ranks: tuple            # ordered rank values 0..k-1
    of: dict                # copy -> rank

    def levels(self):
        out = [[] for _ in self.ranks]
        for c, r in self.of.items():
            out[r].append(c)
        return [tuple(sorted(level)) for level in out]


def rank_of(s):
    """Rank function realizing the copy relation: x < y iff rank x < rank y.

    Requires a ranked, cycle-free structure; incomparability classes become
    the linearly ordered ranks."""
    ok, wit = is_ranked(s)
    if not ok:
        raise PreconditionFailed(f"structure is not ranked: witness {wit}")
    if has_cycle(s):
        raise PreconditionFailed("copy relation has a cycle")
    classes = []
    for c in s.copies:
        for cls in classes:
            d = cls[0]
            if (c, d) not in s.edges and (d, c) not in s.edges:
                cls.append(c)
                break
        else:
            classes.append([c])
    # order classes by how many other classes lie strictly below them
    snapshot = list(classes)
    classes.sort(key=lambda cls: sum((other[0], cls[0]) in s.edges
                                     for other in snapshot))
    of = {}
    for r, cls in enumerate(classes):
        for c in cls:
            of[c] = r
    for x in s.copies:
        for y in s.copies:
            if ((x, y) in s.edges) != (of[x] < of[y]):
                raise PreconditionFailed(
                    f"rank construction failed on pair {x}, {y}")
    return RankAssignment(tuple(range(len(classes))), of)


def check_rank_trans(s):
    """Transitivity of a ranked cycle-free relation; None when the
    precondition (ranked and cycle-free) fails."""
    if not is_ranked(s)[0] or has_cycle(s):
        return None
    for a, b in s.edges:
        for c, d in s.edges:
            if b == c and (a, d) not in s.edges:
                return False
    return True


RANK_HOLD_PROPERTIES = ("sub", "eq", "pr", "eq2", "par", "cup", "cup2",
                        "elem", "ratm")


def mu_function(s, family):
    """Minimization as a ChoiceFunction over the given domain family."""
    return ChoiceFunction(s.points, {frozenset(x): mu(s, x) for x in family})


def check_rank_hold(s, family):
    """The nine minimization properties of a ranked structure over the
    family; instances blocked by missing domain closure are skipped by the
    property checkers themselves."""
    ok, wit = is_ranked(s)
    if not ok:
        raise PreconditionFailed(f"structure is not ranked: witness {wit}")
    cf = mu_function(s, family)
    return [check_property(cf, p) for p in RANK_HOLD_PROPERTIES]
