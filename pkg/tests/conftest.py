"""Shared test helpers: generators and small independent oracles."""

import itertools
import random
from math import comb

from cjlab import syntax as S
from cjlab.choice import ChoiceFunction

LEAF_OPS = ("atom", "top", "bot")
UNARY_OPS = ("not",) + S.UNARY_MODALS + ("oa", "op")
BINARY_OPS = ("and", "or", "imp", "iff", "ocond")


def random_formula(rng, depth, atoms=("p", "q", "r")):
    """Random formula over every operator, up to the given depth."""
    if depth == 0 or rng.random() < 0.2:
        op = rng.choice(LEAF_OPS)
        if op == "atom":
            return S.Atom(rng.choice(atoms))
        return S.Top if op == "top" else S.Bot
    if rng.random() < 0.45:
        return S.Formula(rng.choice(UNARY_OPS),
                         (random_formula(rng, depth - 1, atoms),))
    return S.Formula(rng.choice(BINARY_OPS),
                     (random_formula(rng, depth - 1, atoms),
                      random_formula(rng, depth - 1, atoms)))


def powerset(items):
    items = sorted(items)
    for r in range(len(items) + 1):
        for combo in itertools.combinations(items, r):
            yield frozenset(combo)


def all_choice_functions(universe):
    """Every total choice function on the powerset (values unrestricted)."""
    universe = tuple(universe)
    subsets = list(powerset(universe))
    values = list(powerset(universe))
    for assign in itertools.product(values, repeat=len(subsets)):
        yield ChoiceFunction(universe, dict(zip(subsets, assign)))


def sub_respecting_choice_functions(universe):
    """Every f with f(X) a subset of X on the powerset domain."""
    universe = tuple(universe)
    subsets = list(powerset(universe))
    pools = [[frozenset(c) for c in powerset(s)] for s in subsets]
    for assign in itertools.product(*pools):
        yield ChoiceFunction(universe, dict(zip(subsets, assign)))


def ordered_partitions(items):
    """All ordered set partitions, independently of the package kernels."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in ordered_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] | {first}] + part[i + 1:]
        for i in range(len(part) + 1):
            yield part[:i] + [{first}] + part[i:]


def fubini(n):
    f = [1] + [0] * n
    for m in range(1, n + 1):
        f[m] = sum(comb(m, k) * f[m - k] for k in range(1, m + 1))
    return f[n]


def min_choice_function(universe, rank):
    """Minimum selection of a rank map, computed by brute force."""
    def best(xs):
        if not xs:
            return frozenset()
        low = min(rank[x] for x in xs)
        return frozenset(x for x in xs if rank[x] == low)
    return ChoiceFunction(universe, {s: best(s) for s in powerset(universe)})


def random_prefstructure(rng, max_points=4, max_copies=3, omega_ok=False):
    from cjlab.prefstruct import PrefStructure

    npts = rng.randint(1, max_points)
    points = tuple(f"x{i}" for i in range(npts))
    omega = set()
    if omega_ok and npts > 1 and rng.random() < 0.3:
        omega.add(points[-1])
    copies = []
    for p in points:
        if p in omega:
            continue
        for i in range(rng.randint(1, max_copies)):
            copies.append((p, i))
    edges = set()
    for a in copies:
        for b in copies:
            if a != b and rng.random() < 0.3:
                edges.add((a, b))
    return PrefStructure(points, copies, edges, omega)
