"""Constructive representation of choice functions by ranked structures.

Three constructions: extending an arbitrary relation to a total preorder
whose symmetric pairs stay inside the reflexive-transitive closure, building
a ranked single-copy structure realizing a choice function that satisfies
sub + empty + eq over a union-closed domain, and collapsing a ranked
structure to the one-copy-or-chain shape while preserving minimization.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import prefstruct
from .choice import check_closure, check_property
from .prefstruct import PreconditionFailed, PrefStructure


@dataclass(frozen=True)
class TotalPreorder:
    carrier: tuple
    pairs: frozenset

    def holds(self, x, y):
        return (x, y) in self.pairs

    def strict(self, x, y):
        return (x, y) in self.pairs and (y, x) not in self.pairs

    def validate(self):
        """Totality, reflexivity and transitivity by enumeration."""
        c = self.carrier
        for x in c:
            if (x, x) not in self.pairs:
                return False
            for y in c:
                if (x, y) not in self.pairs and (y, x) not in self.pairs:
                    return False
                for z in c:
                    if ((x, y) in self.pairs and (y, z) in self.pairs
                            and (x, z) not in self.pairs):
                        return False
        return True


def rt_closure(carrier, pairs):
    """Reflexive-transitive closure as row bitmasks over carrier indices."""
    n = len(carrier)
    index = {x: i for i, x in enumerate(carrier)}
    rows = [1 << i for i in range(n)]
    for x, y in pairs:
        rows[index[x]] |= 1 << index[y]
    for k in range(n):
        bit = 1 << k
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rows[k]
    return rows


def extend_to_total_preorder(carrier, relation):
    """Total preorder S extending the relation, with xSy and ySx only for
    pairs already equivalent under the reflexive-transitive closure.

    Equivalence classes of the closure are partially ordered and then
    linearized; ties break deterministically by the class's least carrier
    element, so incomparable elements end up strictly ordered in carrier
    order."""
    carrier = tuple(carrier)
    if len(set(carrier)) != len(carrier):
        raise ValueError("duplicate carrier elements")
    n = len(carrier)
    rows = rt_closure(carrier, relation)
    # equivalence classes of mutual closure reachability
    cls_of = [-1] * n
    classes = []
    for i in range(n):
        if cls_of[i] >= 0:
            continue
        members = [j for j in range(n)
                   if rows[i] >> j & 1 and rows[j] >> i & 1]
        for j in members:
            cls_of[j] = len(classes)
        classes.append(members)
    # Kahn linearization of the class order, least-member tie-break
    preds = []
    for a, members in enumerate(classes):
        i = members[0]
        preds.append({cls_of[j] for j in range(n)
                      if rows[j] >> i & 1 and cls_of[j] != a})
    order = []
    remaining = set(range(len(classes)))
    while remaining:
        ready = [a for a in remaining if not (preds[a] & remaining)]
        ready.sort(key=lambda a: min(classes[a]))
        pick = ready[0]
        order.append(pick)
        remaining.discard(pick)
    level = {}
    for rank, a in enumerate(order):
        for j in classes[a]:
            level[carrier[j]] = rank
    pairs = frozenset((x, y) for x in carrier for y in carrier
                      if level[x] <= level[y])
    return TotalPreorder(carrier, pairs)


def represent_ranked(cf):
    """Ranked single-copy structure whose minimization equals cf on the
    whole domain.

    Preconditions: the domain is closed under finite unions and cf
    satisfies sub, empty and eq; violations raise PreconditionFailed with
    the offending property and witness."""
    if not check_closure(cf).union:
        raise PreconditionFailed("domain is not closed under finite unions")
    for prop in ("sub", "empty", "eq"):
        rep = check_property(cf, prop)
        if not rep.passed:
            raise PreconditionFailed(
                f"choice function fails ({prop}): witness {rep.to_dict()['counterexample']}")
    universe = cf.universe
    relation = {(a, a) for a in universe}
    for xs, fx in cf.assignment.items():
        for a in fx:
            for b in xs:
                relation.add((a, b))
    total = extend_to_total_preorder(universe, relation)
    order = [(a, b) for a in universe for b in universe if total.strict(a, b)]
    return prefstruct.single_copy(universe, order)


def representation_mismatches(cf, s):
    """Domain sets where the structure's minimization differs from cf."""
    out = []
    for xs in sorted(cf.domain, key=lambda f: (len(f), sorted(f))):
        if prefstruct.mu(s, xs) != cf.assignment[xs]:
            out.append(xs)
    return out


def verify_representation(cf, s):
    """True iff s is ranked, smooth over the domain of cf, and its
    minimization agrees with cf on every domain set."""
    if not prefstruct.is_ranked(s)[0]:
        return False
    if not prefstruct.is_smooth(s, cf.domain)[0]:
        return False
    return not representation_mismatches(cf, s)


def is_one_infinity(s):
    """Every point carries exactly one explicit copy or a chain marker."""
    for p in s.points:
        if p in s.omega:
            continue
        if len(s.copies_of(p)) != 1:
            return False
    return True


def normalize_one_infinity(s, points=None):
    """Collapse a ranked cycle-free structure to one copy or a chain per
    point without changing minimization on any subset of the base set.

    Chain-marked points stay marked; a point with explicit copies keeps
    exactly its least-indexed copy that no same-point copy attacks; a point
    of the base set without copies becomes chain-marked (the chains sit
    above everything and are mutually comparable, so they stay ranked and
    acyclic and never contribute minima)."""
    ok, wit = prefstruct.is_ranked(s)
    if not ok:
        raise PreconditionFailed(f"structure is not ranked: witness {wit}")
    if prefstruct.has_cycle(s):
        raise PreconditionFailed("copy relation has a cycle")
    if points is None:
        points = s.points
    points = tuple(points)
    needed = {p for p, _ in s.copies} | set(s.omega)
    if not needed <= set(points):
        raise ValueError("base set must contain every point of the structure")
    kept = []
    for p in points:
        if p in s.omega:
            continue
        own = s.copies_of(p)
        if not own:
            continue
        minimal = [c for c in own if not any((d, c) in s.edges for d in own)]
        kept.append(min(minimal))
    keptset = set(kept)
    edges = [(a, b) for a, b in s.edges if a in keptset and b in keptset]
    omega = set(s.omega) | {p for p in points
                            if p not in s.omega and not s.copies_of(p)}
    return PrefStructure(points, kept, edges, omega)


# ------------------------------------------------------------------- json

def preorder_to_dict(t):
    return {"carrier": list(t.carrier),
            "pairs": [[x, y] for x, y in sorted(t.pairs)]}


def preorder_from_dict(data):
    return TotalPreorder(tuple(data["carrier"]),
                         frozenset((x, y) for x, y in data["pairs"]))


def preorder_from_json(text):
    return preorder_from_dict(json.loads(text))
