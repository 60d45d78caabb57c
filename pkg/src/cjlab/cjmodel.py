"""Finite Carmo-Jones deontic models.

A model is <W, av, pv, ob, V>: worlds, an actual and a potential
accessibility map, a family map ob assigning to each context X a family of
"good" subsets, and an atom valuation.  The module checks the frame
conditions 3-a..5-d, evaluates every operator of the deontic language, and
verifies the fifteen axiom schemas by quantifying the schematic letters
over all subsets of W (the clauses only depend on truth sets, so subsets
exhaust the schema instances).

Obligation clauses test family membership through traces: a set counts as
a member of ob(X) iff some stored member agrees with it inside X.  Under
frame condition 5-b this is exactly stored membership, and it makes
normalization (cutting families down to subsets of their context) truth
preserving.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import syntax
from .prefstruct import PreconditionFailed

CONDITION_IDS = ("3-a", "4-a", "4-b", "5-a", "5-b", "5-c", "5-d")


class EvalError(ValueError):
    pass


class CJModel:
    def __init__(self, worlds, atoms, valuation, av, pv, ob):
        self.worlds = tuple(worlds)
        self.atoms = tuple(atoms)
        if len(set(self.worlds)) != len(self.worlds):
            raise ValueError("duplicate worlds")
        if len(set(self.atoms)) != len(self.atoms):
            raise ValueError("duplicate atoms")
        wset = set(self.worlds)
        self.valuation = {a: frozenset(valuation.get(a, ())) for a in self.atoms}
        for a, ws in self.valuation.items():
            if not ws <= wset:
                raise ValueError(f"valuation of {a!r} mentions unknown worlds")
        self.av = {w: frozenset(av[w]) for w in self.worlds}
        self.pv = {w: frozenset(pv[w]) for w in self.worlds}
        for m in (self.av, self.pv):
            for w, ws in m.items():
                if not ws <= wset:
                    raise ValueError(f"accessibility of {w!r} mentions unknown worlds")
        self.ob = {}
        for xs, fam in (ob.items() if hasattr(ob, "items") else ob):
            x = frozenset(xs)
            if not x <= wset:
                raise ValueError(f"ob context {sorted(xs)} mentions unknown worlds")
            family = frozenset(frozenset(a) for a in fam)
            for a in family:
                if not a <= wset:
                    raise ValueError("ob family member mentions unknown worlds")
            if family:
                self.ob[x] = family
        self._index = {w: i for i, w in enumerate(self.worlds)}
        self._build_bits()

    # ---- bit machinery ---------------------------------------------------
    def _build_bits(self):
        n = len(self.worlds)
        self.n = n
        self.full = (1 << n) - 1
        self._vbits = {a: self.mask_of(ws) for a, ws in self.valuation.items()}
        self._avbits = [self.mask_of(self.av[w]) for w in self.worlds]
        self._pvbits = [self.mask_of(self.pv[w]) for w in self.worlds]
        self._convbits = [0] * n
        for i in range(n):
            for j in range(n):
                if self._avbits[j] >> i & 1:
                    self._convbits[i] |= 1 << j
        self._obbits = [0] * (1 << n)
        self._trbits = [0] * (1 << n)
        for x, family in self.ob.items():
            xm = self.mask_of(x)
            for a in family:
                am = self.mask_of(a)
                self._obbits[xm] |= 1 << am
                self._trbits[xm] |= 1 << (am & xm)

    def mask_of(self, ws):
        out = 0
        for w in ws:
            out |= 1 << self._index[w]
        return out

    def set_of(self, mask):
        return frozenset(w for i, w in enumerate(self.worlds) if mask >> i & 1)

    def family_of(self, xs):
        """Stored ob family of a context (empty when absent)."""
        return self.ob.get(frozenset(xs), frozenset())

    def __eq__(self, other):
        return (isinstance(other, CJModel)
                and self.worlds == other.worlds and self.atoms == other.atoms
                and self.valuation == other.valuation
                and self.av == other.av and self.pv == other.pv
                and self.ob == other.ob)

    # ---- json -------------------------------------------------------------
    def to_dict(self):
        return {
            "atoms": list(self.atoms),
            "worlds": list(self.worlds),
            "valuation": {a: sorted(ws) for a, ws in self.valuation.items()},
            "av": {w: sorted(ws) for w, ws in self.av.items()},
            "pv": {w: sorted(ws) for w, ws in self.pv.items()},
            "ob": [{"X": sorted(x), "family": sorted(sorted(a) for a in fam)}
                   for x, fam in sorted(self.ob.items(),
                                        key=lambda kv: (len(kv[0]), sorted(kv[0])))],
        }

    @classmethod
    def from_dict(cls, data):
        try:
            worlds = data["worlds"]
            atoms = data["atoms"]
            valuation = data["valuation"]
            av = data["av"]
            pv = data["pv"]
            ob = [(e["X"], e["family"]) for e in data.get("ob", [])]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed model data: {exc}")
        for seq in [worlds, atoms] + [e[0] for e in ob]:
            if len(set(seq)) != len(seq):
                raise ValueError(f"duplicate ids in {seq}")
        seen = set()
        for xs, _ in ob:
            if frozenset(xs) in seen:
                raise ValueError(f"duplicate ob context {xs}")
            seen.add(frozenset(xs))
        return cls(worlds, atoms, valuation, av, pv, ob)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


# --------------------------------------------------------------- frame check

@dataclass
class ConditionResult:
    condition: str
    passed: bool
    witness: dict | None = None

    def to_dict(self):
        wit = None
        if self.witness is not None:
            wit = {k: (sorted(v) if isinstance(v, frozenset) else v)
                   for k, v in self.witness.items()}
        return {"condition": self.condition, "passed": self.passed,
                "witness": wit}


@dataclass
class FrameReport:
    conditions: dict

    @property
    def passed(self):
        return all(c.passed for c in self.conditions.values())

    def failing(self):
        return [c.condition for c in self.conditions.values() if not c.passed]

    def to_dict(self):
        return {cid: res.to_dict() for cid, res in self.conditions.items()}


def _submasks_ascending(mask, n):
    return [s for s in range(1 << n) if s & ~mask == 0]


def check_frame(m):
    """Frame conditions 3-a..5-d by exhaustive quantification; each result
    carries the first counterexample in ascending world/subset order."""
    res = {}
    witness = None
    for i, w in enumerate(m.worlds):
        if m._avbits[i] == 0:
            witness = {"w": w}
            break
    res["3-a"] = ConditionResult("3-a", witness is None, witness)
    witness = None
    for i, w in enumerate(m.worlds):
        if m._avbits[i] & ~m._pvbits[i]:
            witness = {"w": w}
            break
    res["4-a"] = ConditionResult("4-a", witness is None, witness)
    witness = None
    for i, w in enumerate(m.worlds):
        if not m._pvbits[i] >> i & 1:
            witness = {"w": w}
            break
    res["4-b"] = ConditionResult("4-b", witness is None, witness)
    witness = None
    for x in range(1 << m.n):
        if m._obbits[x] & 1:
            witness = {"X": m.set_of(x)}
            break
    res["5-a"] = ConditionResult("5-a", witness is None, witness)
    # 5-b: membership depends only on the trace inside X
    witness = None
    for x in range(1 << m.n):
        fam = m._obbits[x]
        if fam == 0:
            continue
        comp = m.full & ~x
        outside = _submasks_ascending(comp, m.n)
        for y in range(1 << m.n):
            if not fam >> y & 1:
                continue
            t = y & x
            for s in outside:
                z = t | s
                if not fam >> z & 1:
                    witness = {"X": m.set_of(x), "Y": m.set_of(y),
                               "Z": m.set_of(z)}
                    break
            if witness:
                break
        if witness:
            break
    res["5-b"] = ConditionResult("5-b", witness is None, witness)
    witness = None
    for x in range(1 << m.n):
        fam = m._obbits[x]
        members = [y for y in range(1 << m.n) if fam >> y & 1]
        for y in members:
            for z in members:
                if not fam >> (y & z) & 1:
                    witness = {"X": m.set_of(x), "Y": m.set_of(y),
                               "Z": m.set_of(z)}
                    break
            if witness:
                break
        if witness:
            break
    res["5-c"] = ConditionResult("5-c", witness is None, witness)
    witness = None
    for x in range(1 << m.n):
        fam = m._obbits[x]
        if fam == 0:
            continue
        members = [y for y in range(1 << m.n) if fam >> y & 1 and y & ~x == 0]
        supers = [x | s for s in _submasks_ascending(m.full & ~x, m.n)]
        for y in members:
            for z in supers:
                need = (z & ~x) | y
                if not m._obbits[z] >> need & 1:
                    witness = {"X": m.set_of(x), "Y": m.set_of(y),
                               "Z": m.set_of(z), "required": m.set_of(need)}
                    break
            if witness:
                break
        if witness:
            break
    res["5-d"] = ConditionResult("5-d", witness is None, witness)
    return FrameReport(res)


# ------------------------------------------------------------- truth clauses

def _trace_member(m, x, a):
    """Membership of a in ob(x) up to agreement inside x."""
    return m._trbits[x] >> (a & x) & 1


def _ocond_holds(m, a, b):
    """World-independent clause for O(a/b) on truth sets."""
    if a & b == 0:
        return False
    sub = b
    while True:
        if sub & a and not _trace_member(m, sub, a):
            return False
        if sub == 0:
            return True
        sub = (sub - 1) & b


def _oa_mask(m, a, acc):
    out = 0
    for i in range(m.n):
        w = acc[i]
        if _trace_member(m, w, a) and w & ~a:
            out |= 1 << i
    return out


def _truth_mask(m, f):
    op = f.op
    if op == "atom":
        if f.name not in m._vbits:
            raise EvalError(f"atom {f.name!r} is not declared in the model")
        return m._vbits[f.name]
    if op == "top":
        return m.full
    if op == "bot":
        return 0
    if op == "not":
        return m.full & ~_truth_mask(m, f.args[0])
    if op == "and":
        return _truth_mask(m, f.args[0]) & _truth_mask(m, f.args[1])
    if op == "or":
        return _truth_mask(m, f.args[0]) | _truth_mask(m, f.args[1])
    if op == "imp":
        return (m.full & ~_truth_mask(m, f.args[0])) | _truth_mask(m, f.args[1])
    if op == "iff":
        return m.full & ~(_truth_mask(m, f.args[0]) ^ _truth_mask(m, f.args[1]))
    if op in ("boxa", "diaa", "boxp", "diap"):
        body = _truth_mask(m, f.args[0])
        acc = m._avbits if op[-1] == "a" else m._pvbits
        out = 0
        for i in range(m.n):
            if op.startswith("box"):
                if acc[i] & ~body == 0:
                    out |= 1 << i
            elif acc[i] & body:
                out |= 1 << i
        return out
    if op == "diaconv":
        body = _truth_mask(m, f.args[0])
        out = 0
        for i in range(m.n):
            if m._convbits[i] & body:
                out |= 1 << i
        return out
    if op == "ocond":
        a = _truth_mask(m, f.args[0])
        b = _truth_mask(m, f.args[1])
        return m.full if _ocond_holds(m, a, b) else 0
    if op == "oa":
        return _oa_mask(m, _truth_mask(m, f.args[0]), m._avbits)
    if op == "op":
        return _oa_mask(m, _truth_mask(m, f.args[0]), m._pvbits)
    raise EvalError(f"operator {op!r} is outside the deontic language")


def truth_set(m, f):
    """Worlds where f holds."""
    return m.set_of(_truth_mask(m, f))


def eval_world(m, w, f):
    """Truth of f at world w."""
    if w not in m._index:
        raise EvalError(f"unknown world {w!r}")
    return bool(_truth_mask(m, f) >> m._index[w] & 1)


def violation_check(m, w, antecedent, consequent, strengthened=False):
    """Truth at w of: some actual predecessor postulated the obligation of
    the consequent given the antecedent while both were actually possible,
    and here the antecedent holds without the consequent.  The strengthened
    form also requires the failure to be actually settled."""
    a, b = antecedent, consequent
    core = syntax.And(
        syntax.DiaConv(syntax.And(syntax.Ocond(b, a),
                                  syntax.DiaA(syntax.And(a, b)))),
        syntax.And(a, syntax.Not(b)))
    if strengthened:
        core = syntax.And(core, syntax.BoxA(syntax.And(a, syntax.Not(b))))
    return eval_world(m, w, core)


# -------------------------------------------------------------- axiom check

@dataclass
class AxiomResult:
    axiom: str
    passed: bool
    witness: dict | None = None

    def to_dict(self):
        wit = None
        if self.witness is not None:
            wit = {k: (sorted(v) if isinstance(v, frozenset) else v)
                   for k, v in self.witness.items()}
        return {"axiom": self.axiom, "passed": self.passed, "witness": wit}


@dataclass
class AxiomReport:
    results: list

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def failing(self):
        return [r.axiom for r in self.results if not r.passed]

    def to_dict(self):
        return {r.axiom: r.to_dict() for r in self.results}


class _Tables:
    """Per-model caches for schema checking."""

    def __init__(self, m):
        self.m = m
        size = 1 << m.n
        self.boxa = [self._box(m._avbits, a) for a in range(size)]
        self.diaa = [self._dia(m._avbits, a) for a in range(size)]
        self.boxp = [self._box(m._pvbits, a) for a in range(size)]
        self.diap = [self._dia(m._pvbits, a) for a in range(size)]
        self.oa = [_oa_mask(m, a, m._avbits) for a in range(size)]
        self.op = [_oa_mask(m, a, m._pvbits) for a in range(size)]
        self.o = [[_ocond_holds(m, a, b) for b in range(size)]
                  for a in range(size)]

    def _box(self, acc, a):
        out = 0
        for i in range(self.m.n):
            if acc[i] & ~a == 0:
                out |= 1 << i
        return out

    def _dia(self, acc, a):
        out = 0
        for i in range(self.m.n):
            if acc[i] & a:
                out |= 1 << i
        return out


def check_axioms(m, samples=64, seed=0):
    """All fifteen axiom schemas with letters quantified over subsets of W.

    The two inference-rule axioms are checked as their frame-level content
    plus K-schema instances; turnstile premises are read as set inclusion /
    equality over W.  Monadic axioms check both the actual and the
    potential half.  First counterexample per axiom in ascending subset
    order.  Beyond six worlds the subset space is too big for the triple
    loops; the letters then range over a seeded random pool of `samples`
    subsets (always containing the empty and the full set), so the check
    is a sound spot check rather than exhaustive."""
    t = _Tables(m)
    full = m.full
    size = 1 << m.n
    if m.n <= 6:
        sets = range(size)
    else:
        import random as _random

        rng = _random.Random(seed)
        pool = {0, full}
        while len(pool) < min(samples, size):
            pool.add(rng.randrange(size))
        sets = sorted(pool)
    results = []

    def record(axiom, witness):
        results.append(AxiomResult(axiom, witness is None, witness))

    def w(**kw):
        return {k: m.set_of(v) if isinstance(v, int) else v
                for k, v in kw.items()}

    # (1) KT for the potential box
    witness = None
    for a in sets:
        if t.boxp[a] & ~a:
            witness = w(scheme="T", phi=a)
            break
    if witness is None:
        for a in sets:
            for b in sets:
                if t.boxp[(full & ~a) | b] & t.boxp[a] & ~t.boxp[b]:
                    witness = w(scheme="K", phi=a, psi=b)
                    break
            if witness:
                break
    record("1", witness)
    # (2) KD for the actual box
    witness = None
    for a in sets:
        if t.boxa[a] & ~t.diaa[a]:
            witness = w(scheme="D", phi=a)
            break
    if witness is None:
        for a in sets:
            for b in sets:
                if t.boxa[(full & ~a) | b] & t.boxa[a] & ~t.boxa[b]:
                    witness = w(scheme="K", phi=a, psi=b)
                    break
            if witness:
                break
    record("2", witness)
    # (3) potential necessity implies actual necessity
    witness = None
    for a in sets:
        if t.boxp[a] & ~t.boxa[a]:
            witness = w(phi=a)
            break
    record("3", witness)
    # (4) nothing obliges the impossible
    witness = None
    for b in sets:
        if t.o[0][b]:
            witness = w(psi=b)
            break
    record("4", witness)
    # (5) conjunction of obligations
    witness = None
    for a in sets:
        for a2 in sets:
            for c in sets:
                if t.o[a][c] and t.o[a2][c] and not t.o[a & a2][c]:
                    witness = w(phi=a, phi2=a2, psi=c)
                    break
            if witness:
                break
        if witness:
            break
    record("5", witness)
    # (6) strengthening to the obligatory antecedent part
    witness = None
    for a in sets:
        for c in sets:
            if t.o[a][c] and not t.o[a][a & c]:
                witness = w(phi=a, psi=c)
                break
        if witness:
            break
    record("6", witness)
    # (7) antecedent replacement under set equality (identity at set level)
    witness = None
    for a in sets:
        for b in sets:
            if t.o[a][b] != t.o[a][b]:
                witness = w(phi=a, psi=b)
                break
    record("7", witness)
    # (8) consequent replacement under agreement inside the antecedent
    witness = None
    for b in sets:
        for a in sets:
            for a2 in sets:
                if a & b == a2 & b and t.o[a][b] != t.o[a2][b]:
                    witness = w(phi=a, phi2=a2, psi=b)
                    break
            if witness:
                break
        if witness:
            break
    record("8", witness)
    # (9) obligations are potentially settled
    witness = None
    for a in sets:
        for b in sets:
            o = full if t.o[a][b] else 0
            if t.diap[o] & ~t.boxp[o]:
                witness = w(phi=a, psi=b)
                break
        if witness:
            break
    record("9", witness)
    # (10) strengthening the antecedent under potential compatibility
    witness = None
    for a in sets:
        for b in sets:
            if not t.o[a][b]:
                continue
            for b2 in sets:
                lhs = t.diap[b & b2 & a]
                if lhs and not t.o[a][b & b2]:
                    witness = w(phi=a, psi=b, psi2=b2)
                    break
            if witness:
                break
        if witness:
            break
    record("10", witness)
    # (11)-(15): both monadic halves
    halves = (("a", t.oa, t.boxa, t.diaa), ("p", t.op, t.boxp, t.diap))

    witness = None
    for half, oax, boxx, diax in halves:
        for a in sets:
            for b in sets:
                if oax[a] & oax[b] & ~oax[a & b]:
                    witness = w(half=half, phi=a, psi=b)
                    break
            if witness:
                break
        if witness:
            break
    record("11", witness)
    witness = None
    for half, oax, boxx, diax in halves:
        for a in sets:
            if boxx[a] & (oax[a] | oax[full & ~a]):
                witness = w(half=half, phi=a)
                break
        if witness:
            break
    record("12", witness)
    witness = None
    for half, oax, boxx, diax in halves:
        for a in sets:
            for b in sets:
                if boxx[full & ~(a ^ b)] & (oax[a] ^ oax[b]):
                    witness = w(half=half, phi=a, psi=b)
                    break
            if witness:
                break
        if witness:
            break
    record("13", witness)
    witness = None
    for half, oax, boxx, diax in halves:
        for a in sets:
            for b in sets:
                if not t.o[a][b]:
                    continue
                if boxx[b] & diax[a] & diax[full & ~a] & ~oax[a]:
                    witness = w(half=half, phi=a, psi=b)
                    break
            if witness:
                break
        if witness:
            break
    record("14", witness)
    witness = None
    for half, oax, boxx, diax in halves:
        for a in sets:
            for b in sets:
                if not t.o[a][b]:
                    continue
                if diax[a & b] & diax[b & ~a] & ~oax[(full & ~b) | a]:
                    witness = w(half=half, phi=a, psi=b)
                    break
            if witness:
                break
        if witness:
            break
    record("15", witness)
    return AxiomReport(results)


# ------------------------------------------------- canonical witness model

def build_example_1_1(force_5d=False):
    """Four-world model over atoms p, q whose ob families are the superset
    filters of the two p-worlds: it satisfies every axiom, fails frame
    condition 5-d, and does not validate O(p/p).  With force_5d the filter
    of the whole p-set is added (the 5-d completion), making O(p/p) hold."""
    worlds = ("m1", "m2", "m3", "m4")
    valuation = {"p": {"m1", "m2"}, "q": {"m1", "m3"}}
    wset = frozenset(worlds)
    every = [frozenset(c) for c in _powerset(worlds)]
    ob = {
        frozenset({"m1"}): frozenset(a for a in every if "m1" in a),
        frozenset({"m2"}): frozenset(a for a in every if "m2" in a),
    }
    if force_5d:
        ob[frozenset({"m1", "m2"})] = frozenset(
            a for a in every if {"m1", "m2"} <= a)
    acc = {word: wset for word in worlds}
    return CJModel(worlds, ("p", "q"), valuation, acc, acc, ob)


def _powerset(xs):
    xs = tuple(xs)
    for mask in range(1 << len(xs)):
        yield tuple(x for i, x in enumerate(xs) if mask >> i & 1)


# ----------------------------------------------------- ob transformations

def normalize_ob(m):
    """Replace each family by its traces inside the context.

    Requires 5-b (otherwise cutting members down to the context is not
    meaning preserving for the stored data); truth sets are unchanged since
    the obligation clauses already test membership by trace."""
    rep = check_frame(m)
    if not rep.conditions["5-b"].passed:
        raise PreconditionFailed(
            f"5-b fails: witness {rep.conditions['5-b'].to_dict()['witness']}")
    ob = {x: frozenset(a & x for a in fam) for x, fam in m.ob.items()}
    return CJModel(m.worlds, m.atoms, m.valuation, m.av, m.pv, ob)


def mu_from_ob(m, xs):
    """Least member of ob(X): the intersection of the family, which must
    itself belong (finite intersection closure).  None when the family is
    empty."""
    x = frozenset(xs)
    fam = m.ob.get(x, frozenset())
    if not fam:
        return None
    inter = frozenset.intersection(*fam)
    trs = {a & x for a in fam}
    if inter & x not in trs:
        raise PreconditionFailed(
            f"ob({sorted(x)}) is not closed under intersection")
    return inter


def ob_from_mu(worlds, mu_map):
    """Family map generated by a partial least-member function: each
    defined context gets every set that covers its least member inside the
    context (the trace-insensitive completion); undefined contexts get the
    empty family.  The result violates 5-a exactly where the least member
    is empty."""
    worlds = tuple(worlds)
    every = [frozenset(c) for c in _powerset(worlds)]
    ob = {}
    for xs, mu in mu_map.items():
        x = frozenset(xs)
        if mu is None:
            continue
        mu = frozenset(mu)
        if not mu <= x:
            raise ValueError(f"least member {sorted(mu)} not inside {sorted(x)}")
        ob[x] = frozenset(a for a in every if mu <= (a & x))
    return ob


# ------------------------------------------------------- random generation

def random_model(rng, max_worlds=4):
    """Seeded random model over two atoms.

    Accessibility honours 3-a/4-a/4-b most of the time (small deliberate
    violation rate keeps the frame filter honest).  Families come either
    from a random rank function over an upward-closed support (these also
    satisfy 5-d) or from random intersection-closed trace families (these
    usually fail 5-d); both satisfy 5-a..5-c by construction up to a small
    injected violation rate."""
    n = rng.randint(1, max_worlds)
    worlds = tuple(f"w{i}" for i in range(n))
    atoms = ("p", "q")
    valuation = {a: frozenset(w for w in worlds if rng.random() < 0.5)
                 for a in atoms}
    av = {}
    pv = {}
    for w in worlds:
        base = {w} if rng.random() >= 0.05 else set()
        pvw = set(base)
        for v in worlds:
            if rng.random() < 0.5:
                pvw.add(v)
        avw = {v for v in pvw if rng.random() < 0.6}
        if not avw and pvw and rng.random() >= 0.05:
            avw = {rng.choice(sorted(pvw))}
        if rng.random() < 0.03 and worlds:
            avw.add(rng.choice(worlds))  # may leave pv: breaks 4-a
        av[w] = frozenset(avw)
        pv[w] = frozenset(pvw)
    every = [frozenset(c) for c in _powerset(worlds)]
    nonempty = [x for x in every if x]
    ob = {}
    if rng.random() < 0.55 and nonempty:
        # ranked: least members from a rank function, upward-closed support
        rank = {w: rng.randrange(n) for w in worlds}
        gens = [rng.choice(nonempty) for _ in range(rng.randint(1, 3))]
        for x in nonempty:
            if not any(g <= x for g in gens):
                continue
            best = min(rank[w] for w in x)
            mu = frozenset(w for w in x if rank[w] == best)
            ob[x] = frozenset(a for a in every if mu <= (a & x))
    else:
        # random intersection-closed trace families
        for x in nonempty:
            if rng.random() < 0.45:
                continue
            seeds = [frozenset(w for w in x if rng.random() < 0.6) or x
                     for _ in range(rng.randint(1, 3))]
            traces = set(seeds)
            while True:
                extra = {a & b for a in traces for b in traces} - traces
                if not extra:
                    break
                traces |= extra
            if frozenset() in traces:
                continue
            ob[x] = frozenset(a for a in every
                              if (a & x) in traces)
    if ob and rng.random() < 0.05:
        # inject a 5-a violation
        x = rng.choice(sorted(ob, key=sorted))
        ob[x] = ob[x] | {frozenset()}
    return CJModel(worlds, atoms, valuation, av, pv, ob)
