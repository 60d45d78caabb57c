"""Bimodal Kripke models: transitive accessibility with an entry point,
an independent minimality relation, and the derived complement relation.

The complement relation is never stored: w sees w' through it exactly when
w does not see w' through the accessibility relation (literal complement;
models with a non-reflexive accessibility relation are flagged in reports
rather than re-interpreted).  Minimality of a world within the worlds
satisfying a formula is expressed inside the language as "the formula holds
and no minimality-successor satisfies it"; conditionals translate to a box
over the implication from minimal satisfaction to the conclusion.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import prefstruct, syntax
from .cjmodel import EvalError
from .syntax import And, Box, Dia, DiaComp, DiaMin, Imp, Not


class BiModalModel:
    def __init__(self, worlds, entry, valuation, acc, minrel):
        self.worlds = tuple(worlds)
        if len(set(self.worlds)) != len(self.worlds):
            raise ValueError("duplicate worlds")
        if entry not in self.worlds:
            raise ValueError(f"entry point {entry!r} is not a world")
        self.entry = entry
        wset = set(self.worlds)
        self.valuation = {a: frozenset(ws) for a, ws in valuation.items()}
        for a, ws in self.valuation.items():
            if not ws <= wset:
                raise ValueError(f"valuation of {a!r} mentions unknown worlds")
        self.acc = frozenset((a, b) for a, b in acc)
        self.minrel = frozenset((a, b) for a, b in minrel)
        for rel, name in ((self.acc, "R"), (self.minrel, "R'")):
            for a, b in rel:
                if a not in wset or b not in wset:
                    raise ValueError(f"{name} mentions unknown worlds")
        for a, b in self.acc:
            for c, d in self.acc:
                if b == c and (a, d) not in self.acc:
                    raise ValueError(f"R is not transitive: {a}->{b}->{d}")
        for a, b in self.minrel:
            if a == b:
                raise ValueError(f"R' is not irreflexive at {a!r}")
        self._index = {w: i for i, w in enumerate(self.worlds)}
        n = len(self.worlds)
        self.n = n
        self.full = (1 << n) - 1
        self._vbits = {a: self.mask_of(ws) for a, ws in self.valuation.items()}
        self._rbits = [0] * n
        self._rminbits = [0] * n
        for a, b in self.acc:
            self._rbits[self._index[a]] |= 1 << self._index[b]
        for a, b in self.minrel:
            self._rminbits[self._index[a]] |= 1 << self._index[b]
        if self._rbits[self._index[entry]] != self.full:
            raise ValueError("every world must be visible from the entry point")

    def mask_of(self, ws):
        out = 0
        for w in ws:
            out |= 1 << self._index[w]
        return out

    def set_of(self, mask):
        return frozenset(w for i, w in enumerate(self.worlds) if mask >> i & 1)

    def successors(self, w):
        """R(w), the set of accessible worlds."""
        return self.set_of(self._rbits[self._index[w]])

    def r_reflexive(self):
        return all(self._rbits[i] >> i & 1 for i in range(self.n))

    # ---- json -------------------------------------------------------------
    def to_dict(self):
        return {"worlds": list(self.worlds), "entry": self.entry,
                "valuation": {a: sorted(ws) for a, ws in self.valuation.items()},
                "R": [[a, b] for a, b in sorted(self.acc)],
                "Rmin": [[a, b] for a, b in sorted(self.minrel)]}

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(data["worlds"], data["entry"], data["valuation"],
                       [tuple(e) for e in data["R"]],
                       [tuple(e) for e in data.get("Rmin", [])])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed bimodal model data: {exc}")

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


# --------------------------------------------------------------- evaluation

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
    if op in ("box", "dia", "boxmin", "diamin", "boxcomp", "diacomp"):
        body = _truth_mask(m, f.args[0])
        out = 0
        for i in range(m.n):
            if op == "box":
                succ = m._rbits[i]
            elif op == "dia":
                succ = m._rbits[i]
            elif op in ("boxmin", "diamin"):
                succ = m._rminbits[i]
            else:
                succ = m.full & ~m._rbits[i]
            if op.startswith("box"):
                if succ & ~body == 0:
                    out |= 1 << i
            elif succ & body:
                out |= 1 << i
        return out
    raise EvalError(f"operator {op!r} is outside the bimodal language")


def truth_set(m, f):
    return m.set_of(_truth_mask(m, f))


def eval_bimodal(m, w, f):
    if w not in m._index:
        raise EvalError(f"unknown world {w!r}")
    return bool(_truth_mask(m, f) >> m._index[w] & 1)


# -------------------------------------------------------------- translations

def minimal_models_formula(alpha):
    """Holds at a world iff alpha does and no minimality-successor
    satisfies alpha."""
    return And(alpha, Not(DiaMin(alpha)))


def translate_conditional(alpha, beta):
    """Defeasible conditional at the entry point: everywhere accessible, if
    the antecedent holds minimally then the conclusion holds."""
    return Box(Imp(minimal_models_formula(alpha), beta))


def translate_ratm(phi, psi, psi2):
    """Rational-monotony schema as one closed formula."""
    premise = And(
        Box(Imp(minimal_models_formula(phi), psi)),
        Dia(And(phi, And(Not(DiaMin(phi)), psi2))))
    conclusion = Box(Imp(
        And(phi, And(psi2, Not(DiaMin(And(phi, psi2))))), psi))
    return Imp(premise, conclusion)


def characterization_formula(phi_m):
    """Holds at m iff phi_m is true exactly on the accessible worlds."""
    return And(Box(phi_m), Not(DiaComp(phi_m)))


def characterizes_successors(m, w, phi):
    """True iff the truth set of phi equals R(w), expressed inside the
    language through the complement modality."""
    return eval_bimodal(m, w, characterization_formula(phi))


def translate_and_schema(phi_m, phi, phi2):
    """Conjunction rule for antecedents given as a successor set: from the
    entry point, any world whose successors are pinned down by phi_m and
    whose minimal phi_m-worlds satisfy both conclusions also has them
    jointly."""
    mm = minimal_models_formula(phi_m)
    premise = And(characterization_formula(phi_m),
                  And(Box(Imp(mm, phi)), Box(Imp(mm, phi2))))
    return Box(Imp(premise, Box(Imp(mm, And(phi, phi2)))))


# ----------------------------------------------------- set-level machinery

def char_formula(m, ws):
    """Formula over the model's atoms with exactly the given truth set."""
    mask = m.mask_of(ws)
    if mask == 0:
        return syntax.Bot
    atoms = sorted(m.valuation)
    disjuncts = []
    for i, w in enumerate(m.worlds):
        if not mask >> i & 1:
            continue
        lits = [syntax.Atom(a) if w in m.valuation[a]
                else Not(syntax.Atom(a)) for a in atoms]
        conj = lits[-1] if lits else syntax.Top
        for lit in reversed(lits[:-1]):
            conj = And(lit, conj)
        disjuncts.append(conj)
    out = disjuncts[-1]
    for d in reversed(disjuncts[:-1]):
        out = syntax.Or(d, out)
    if _truth_mask(m, out) != mask:
        raise EvalError(f"world set {sorted(ws)} is not definable in the "
                        "model's atoms")
    return out


def definable_masks(m):
    """Masks definable by a classical formula: unions of valuation classes."""
    classes = {}
    for i, w in enumerate(m.worlds):
        key = tuple(w in m.valuation[a] for a in sorted(m.valuation))
        classes.setdefault(key, 0)
        classes[key] |= 1 << i
    blocks = list(classes.values())
    out = set()
    for pick in range(1 << len(blocks)):
        mask = 0
        for j, b in enumerate(blocks):
            if pick >> j & 1:
                mask |= b
        out.add(mask)
    return sorted(out)


def min_structure(m):
    """The minimality relation as a single-copy preferential structure: a
    world is attacked by its minimality-successors."""
    order = [(b, a) for a, b in m.minrel]
    return prefstruct.single_copy(m.worlds, order)


@dataclass
class AgreementReport:
    pairs_checked: int
    disagreements: list
    r_reflexive: bool

    @property
    def passed(self):
        return not self.disagreements

    def to_dict(self):
        return {"pairs_checked": self.pairs_checked,
                "r_reflexive": self.r_reflexive,
                "disagreements": [
                    {"alpha": sorted(a), "beta": sorted(b),
                     "translated": lhs, "preferential": rhs}
                    for a, b, lhs, rhs in self.disagreements]}


def agreement_check(m):
    """Translated conditionals against preferential minimization.

    For every definable pair (alpha, beta): the translated conditional
    holds at the entry point iff the minimal alpha-worlds among the worlds
    accessible from the entry all satisfy beta, minimality taken from the
    single-copy preferential reading of the minimality relation."""
    s = min_structure(m)
    ru = m.successors(m.entry)
    masks = definable_masks(m)
    sets = {mask: m.set_of(mask) for mask in masks}
    formulas = {mask: char_formula(m, sets[mask]) for mask in masks}
    disagreements = []
    pairs = 0
    for am in masks:
        alpha_set = sets[am]
        mins = prefstruct.mu(s, alpha_set & ru)
        for bm in masks:
            beta_set = sets[bm]
            pairs += 1
            lhs = eval_bimodal(m, m.entry,
                               translate_conditional(formulas[am], formulas[bm]))
            rhs = mins <= beta_set
            if lhs != rhs:
                disagreements.append((alpha_set, beta_set, lhs, rhs))
    return AgreementReport(pairs, disagreements, m.r_reflexive())


# ------------------------------------------------------------- enumeration

def attach_distinct_valuation(n):
    """Valuation over ceil(log2 n) atoms separating n worlds w0..w{n-1}."""
    k = max(1, (n - 1).bit_length())
    worlds = tuple(f"w{i}" for i in range(n))
    valuation = {f"a{j}": frozenset(w for i, w in enumerate(worlds)
                                    if i >> j & 1)
                 for j in range(k)}
    return worlds, valuation


def enumerate_models(n):
    """All models on n worlds with transitive R reaching every world from
    the entry w0 and arbitrary irreflexive minimality relation, worlds
    separated by a distinct valuation."""
    worlds, valuation = attach_distinct_valuation(n)
    full = (1 << n) - 1
    others = list(range(1, n))
    free_rows = 1 << (n * len(others))
    for assign in range(free_rows):
        rows = [full]
        a = assign
        for _ in others:
            rows.append(a & full)
            a >>= n
        ok = True
        for i in range(n):
            for j in range(n):
                if rows[i] >> j & 1 and rows[i] | rows[j] != rows[i]:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        acc = [(worlds[i], worlds[j]) for i in range(n) for j in range(n)
               if rows[i] >> j & 1]
        offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
        for sel in range(1 << len(offdiag)):
            minrel = [(worlds[i], worlds[j])
                      for k, (i, j) in enumerate(offdiag) if sel >> k & 1]
            yield BiModalModel(worlds, worlds[0], valuation, acc, minrel)
