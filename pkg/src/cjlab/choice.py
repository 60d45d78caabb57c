"""Abstract choice functions f: Y -> P(U) and their algebraic properties.

Properties go by short ascii ids (canonical column below); the usual
mu-names are accepted as aliases everywhere a property id is expected.

    sub       f(X) subset of X
    pr        X <= Y  =>  f(Y) n X <= f(X)
    pr2       f(X) n Y <= f(X n Y)
    eq        X <= Y, X n f(Y) != 0  =>  f(X) = f(Y) n X
    eq2       f(Y) n X != 0  =>  f(Y n X) = f(Y) n X
    empty     f(X) = 0  =>  X = 0
    emptyfin  X != 0  =>  f(X) != 0
    or        f(X u Y) <= f(X) u f(Y)
    wor       f(X u Y) <= f(X) u Y
    disjor    X n Y = 0  =>  f(X u Y) <= f(X) u f(Y)
    cut       f(X) <= Y <= X  =>  f(X) <= f(Y)
    cm        f(X) <= Y <= X  =>  f(Y) <= f(X)
    resm      f(X) <= A n B  =>  f(X n A) <= B
    cum       f(X) <= Y <= X  =>  f(X) = f(Y)
    subsup    f(X) <= Y, f(Y) <= X  =>  f(X) = f(Y)
    ratm      X <= Y, X n f(Y) != 0  =>  f(X) <= f(Y) n X
    par       f(X u Y) is one of f(X), f(Y), f(X) u f(Y)
    cup       f(Y) n (X - f(X)) != 0  =>  f(X u Y) n Y = 0
    cup2      f(Y) n (X - f(X)) != 0  =>  f(X u Y) = f(X)
    elem      a in X - f(X)  =>  some b in X with a not in f({a,b})
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import _bitprops as bp
from . import kernel

PROPERTIES = bp.PROPERTIES

_ALIASES = {
    "sub": "sub", "subset": "sub", "⊆": "sub", "inc": "sub",
    "pr": "pr",
    "pr'": "pr2", "pr′": "pr2", "pr2": "pr2",
    "eq": "eq", "=": "eq",
    "eq2": "eq2", "eq'": "eq2", "='": "eq2", "=′": "eq2",
    "empty": "empty", "∅": "empty", "0": "empty",
    "emptyfin": "emptyfin", "∅fin": "emptyfin", "0fin": "emptyfin",
    "or": "or", "wor": "wor", "disjor": "disjor",
    "cut": "cut", "cm": "cm", "resm": "resm", "cum": "cum",
    "subsup": "subsup", "⊆⊇": "subsup",
    "ratm": "ratm",
    "par": "par", "||": "par", "∥": "par",
    "cup": "cup", "∪": "cup",
    "cup2": "cup2", "cup'": "cup2", "∪'": "cup2", "∪′": "cup2",
    "elem": "elem", "in": "elem", "∈": "elem",
}


def normalize_property_id(name):
    """Canonical property id for any accepted spelling (muPR, (μPR), pr…)."""
    s = str(name).strip().strip("()").replace("µ", "μ").strip()
    if s.startswith("μ"):
        s = s[1:]
    low = s.lower()
    if low.startswith("mu_"):
        low = low[3:]
    elif low.startswith("mu") and low not in _ALIASES:
        low = low[2:]
    low = low.strip("_- ")
    key = low if low in _ALIASES else s if s in _ALIASES else None
    if key is None:
        raise ValueError(f"unknown property id {name!r}")
    return _ALIASES[key]


class ChoiceFunction:
    """f: Y -> P(U) with explicit finite domain Y over universe U."""

    def __init__(self, universe, assignment):
        self.universe = tuple(universe)
        if len(set(self.universe)) != len(self.universe):
            raise ValueError("duplicate universe elements")
        self.index = {x: i for i, x in enumerate(self.universe)}
        u = frozenset(self.universe)
        amap = {}
        for key, value in (assignment.items() if hasattr(assignment, "items")
                           else assignment):
            k = frozenset(key)
            v = frozenset(value)
            if not k <= u or not v <= u:
                bad = (k | v) - u
                raise ValueError(f"elements outside the universe: {sorted(bad)}")
            if k in amap:
                raise ValueError(f"duplicate domain set {sorted(key)}")
            amap[k] = v
        self.assignment = amap

    @property
    def domain(self):
        return frozenset(self.assignment)

    def __call__(self, xs):
        return self.assignment[frozenset(xs)]

    def __eq__(self, other):
        return (isinstance(other, ChoiceFunction)
                and self.universe == other.universe
                and self.assignment == other.assignment)

    def __repr__(self):
        ent = {tuple(sorted(k)): tuple(sorted(v))
               for k, v in sorted(self.assignment.items(), key=lambda kv: sorted(kv[0]))}
        return f"ChoiceFunction({self.universe!r}, {ent!r})"

    # ---- bit view -------------------------------------------------------
    def mask_of(self, xs):
        out = 0
        for x in xs:
            out |= 1 << self.index[x]
        return out

    def set_of(self, mask):
        return frozenset(x for i, x in enumerate(self.universe) if mask >> i & 1)

    def as_bits(self):
        """(n, fvals list indexed by subset mask, domain bitmap)."""
        n = len(self.universe)
        fvals = [0] * (1 << n)
        dmask = 0
        for k, v in self.assignment.items():
            km = self.mask_of(k)
            dmask |= 1 << km
            fvals[km] = self.mask_of(v)
        return n, fvals, dmask

    @classmethod
    def from_bits(cls, n, fvals, dmask, universe=None):
        universe = tuple(universe) if universe else tuple("abcdefgh"[:n])
        assignment = {}
        for s in range(1 << n):
            if dmask >> s & 1:
                k = frozenset(universe[i] for i in range(n) if s >> i & 1)
                v = frozenset(universe[i] for i in range(n) if fvals[s] >> i & 1)
                assignment[k] = v
        return cls(universe, assignment)

    # ---- json -----------------------------------------------------------
    def to_dict(self):
        entries = [{"X": sorted(k), "fX": sorted(v)}
                   for k, v in sorted(self.assignment.items(),
                                      key=lambda kv: (len(kv[0]), sorted(kv[0])))]
        return {"universe": list(self.universe), "entries": entries}

    @classmethod
    def from_dict(cls, data):
        try:
            universe = data["universe"]
            entries = [(e["X"], e["fX"]) for e in data["entries"]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed choice-function data: {exc}")
        for xs, _ in entries:
            if len(set(xs)) != len(xs):
                raise ValueError(f"duplicate elements in {xs}")
        return cls(universe, entries)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


@dataclass
class PropertyReport:
    property: str
    verdict: str                    # "pass" | "fail" | "vacuous"
    checked: int
    skipped: int
    counterexample: dict | None = None

    @property
    def passed(self):
        return self.verdict != "fail"

    def to_dict(self):
        ce = None
        if self.counterexample is not None:
            ce = {k: (sorted(v) if isinstance(v, frozenset) else v)
                  for k, v in self.counterexample.items()}
        return {"property": self.property, "verdict": self.verdict,
                "checked": self.checked, "skipped": self.skipped,
                "counterexample": ce}


def check_property(cf, prop):
    """Exhaustively check one property over the domain of cf."""
    pid = normalize_property_id(prop)
    n, fvals, dmask = cf.as_bits()
    witness, checked, skipped = bp.prop_scan(pid, n, fvals, dmask)
    if witness is not None:
        ce = {}
        for label, value in witness.items():
            if label in ("a", "b"):
                ce[label] = cf.universe[value]
            else:
                ce[label] = cf.set_of(value)
        return PropertyReport(pid, "fail", checked, skipped, ce)
    verdict = "pass" if checked else "vacuous"
    return PropertyReport(pid, verdict, checked, skipped)


def check_properties(cf, props=None):
    props = PROPERTIES if props is None else props
    return [check_property(cf, p) for p in props]


@dataclass
class ClosureReport:
    inter: bool
    union: bool
    diff: bool
    singletons: bool
    powerset: bool

    def to_dict(self):
        return {"inter": self.inter, "union": self.union, "diff": self.diff,
                "singletons": self.singletons, "powerset": self.powerset}


def check_closure(cf):
    """Closure flags of the domain: intersections, unions, difference,
    singleton containment, full powerset."""
    n, _, dmask = cf.as_bits()
    flags = bp.closure_flags(n, dmask)
    return ClosureReport(flags["inter"], flags["union"], flags["diff"],
                         flags["sing"], flags["powerset"])


# ----------------------------------------------------- interdependency rows

@dataclass(frozen=True)
class Implication:
    left: tuple
    side_props: tuple = ()
    closures: tuple = ()
    right: tuple = ()


@dataclass(frozen=True)
class RowSpec:
    implications: tuple
    kind: str                      # "verify" (=>) or "witness" (=/=>)
    note: str = ""


def _imp(left, right, side=(), clos=()):
    return Implication(tuple(left), tuple(side), tuple(clos), tuple(right))


ROW_TABLE = {
    "1.1": RowSpec((_imp(["pr"], ["pr2"], side=["sub"], clos=["inter"]),), "verify"),
    "1.2": RowSpec((_imp(["pr2"], ["pr"]),), "verify"),
    "2.1": RowSpec((_imp(["pr"], ["or"], side=["sub"]),), "verify"),
    "2.2": RowSpec((_imp(["or"], ["pr"], side=["sub"], clos=["diff"]),), "verify"),
    "2.3": RowSpec((_imp(["pr"], ["wor"], side=["sub"]),), "verify"),
    "2.4": RowSpec((_imp(["wor"], ["pr"], side=["sub"], clos=["diff"]),), "verify"),
    "3": RowSpec((_imp(["pr"], ["cut"]),), "verify"),
    "4": RowSpec((_imp(["sub", "subsup", "cum", "ratm"], ["pr"], clos=["inter"]),),
                 "witness"),
    "5.1": RowSpec((_imp(["cm"], ["resm"], side=["sub"], clos=["inter"]),), "verify"),
    "5.2": RowSpec((_imp(["resm"], ["cm"]),), "verify",
                   note="stated for the infinite case; holds at finite scale"),
    "6": RowSpec((_imp(["cm", "cut"], ["cum"]), _imp(["cum"], ["cm", "cut"])),
                 "verify"),
    "7": RowSpec((_imp(["sub", "subsup"], ["cum"]),), "verify"),
    "8": RowSpec((_imp(["sub", "cum"], ["subsup"], clos=["inter"]),), "verify"),
    "9": RowSpec((_imp(["sub", "cum"], ["subsup"]),), "witness"),
    "10": RowSpec((_imp(["ratm", "pr"], ["eq"]),), "verify"),
    "11": RowSpec((_imp(["eq"], ["pr", "ratm"]),), "verify"),
    "12.1": RowSpec((_imp(["eq"], ["eq2"], side=["sub"], clos=["inter"]),), "verify"),
    "12.2": RowSpec((_imp(["eq2"], ["eq"]),), "verify"),
    "13": RowSpec((_imp(["sub", "eq"], ["cup"], clos=["union"]),), "verify"),
    "14": RowSpec((_imp(["sub", "empty", "eq"], ["par", "cup2", "cum"],
                        clos=["union"]),), "verify"),
    "15": RowSpec((_imp(["sub", "par"], ["eq"], clos=["diff"]),), "verify"),
    "16": RowSpec((_imp(["par", "elem", "pr", "sub"], ["eq"],
                        clos=["union", "sing"]),), "verify"),
    "17": RowSpec((_imp(["cum", "eq"], ["elem"], clos=["union", "sing"]),), "verify"),
    "18": RowSpec((_imp(["cum", "eq", "sub"], ["par"], clos=["union"]),), "verify"),
    "19": RowSpec((_imp(["pr", "cum", "par"], ["eq"], side=["sub"],
                        clos=["powerset"]),), "verify",
                  note="sub included: the domain-richness gloss presumes a "
                       "choice function; without it constant functions "
                       "falsify the row"),
    "20": RowSpec((_imp(["sub", "pr", "eq"], ["par"]),), "witness"),
    "21": RowSpec((_imp(["sub", "pr", "par"], ["eq"]),), "witness",
                  note="non-implication without difference closure"),
    "22": RowSpec((_imp(["sub", "pr", "par", "eq", "cup"], ["elem"]),), "witness"),
}

_CLOSURE_INDEX = {name: i for i, name in enumerate(kernel.CLOSURES)}


def _compile_row(row):
    return [
        (tuple(bp.PROP_INDEX[p] for p in imp.left),
         tuple(bp.PROP_INDEX[p] for p in imp.side_props),
         tuple(_CLOSURE_INDEX[c] for c in imp.closures),
         tuple(bp.PROP_INDEX[p] for p in imp.right))
        for imp in row.implications
    ]


@dataclass
class InterdepResult:
    row: str
    kind: str
    cap: int
    mode: str
    checked: int
    witness: ChoiceFunction | None
    verdict: str
    backend: str = field(default_factory=kernel.active_backend)
    seed: int | None = None

    @property
    def passed(self):
        if self.kind == "verify":
            return self.witness is None
        return True  # witness rows report, they do not fail

    def to_dict(self):
        return {"row": self.row, "kind": self.kind, "cap": self.cap,
                "mode": self.mode, "checked": self.checked,
                "verdict": self.verdict, "backend": self.backend,
                "seed": self.seed,
                "witness": self.witness.to_dict() if self.witness else None}


MAX_EXHAUSTIVE_CAP = 3


def check_interdependency_batch(rows, cap=3):
    """One shared scan for several rows (the per-function property work is
    memoized across rows, so this is much cheaper than row-by-row calls).
    Returns {row id: InterdepResult}; exhaustive caps only."""
    if cap > MAX_EXHAUSTIVE_CAP:
        raise ValueError(f"cap too large: {cap} (enumeration bound exceeded)")
    rows = [str(r) for r in rows]
    for key in rows:
        if key not in ROW_TABLE:
            raise ValueError(f"unknown row id {key!r}; known: {sorted(ROW_TABLE)}")
    specs = []
    owner = []
    for key in rows:
        for imp in _compile_row(ROW_TABLE[key]):
            specs.append(imp)
            owner.append(key)
    checked = {key: 0 for key in rows}
    witness = {key: None for key in rows}
    for n in range(cap + 1):
        for (count, wit), key in zip(kernel.run_rows(n, specs), owner):
            checked[key] += count
            if witness[key] is None and wit is not None:
                witness[key] = ChoiceFunction.from_bits(n, list(wit[1]), wit[0])
    out = {}
    for key in rows:
        spec = ROW_TABLE[key]
        if spec.kind == "verify":
            verdict = ("verified to cap %d" % cap if witness[key] is None
                       else "counterexample found (implementation bug)")
        else:
            verdict = ("witness found" if witness[key] is not None
                       else "no witness up to cap %d" % cap)
        out[key] = InterdepResult(key, spec.kind, cap, "exhaustive",
                                  checked[key], witness[key], verdict)
    return out


def check_interdependency(row, cap=3, samples=20000, seed=0):
    """Scan choice functions over universes of size <= cap for one row.

    Verify rows (=>): every function satisfying the left side and the side
    conditions must satisfy the right side; a counterexample would be an
    implementation bug.  Witness rows (=/=>): search the same space for a
    function witnessing the non-implication.
    """
    key = str(row)
    if key not in ROW_TABLE:
        raise ValueError(f"unknown row id {row!r}; known: {sorted(ROW_TABLE)}")
    if cap > MAX_EXHAUSTIVE_CAP + 1:
        raise ValueError(f"cap too large: {cap} (enumeration bound exceeded)")
    spec = ROW_TABLE[key]
    compiled = _compile_row(spec)
    checked = 0
    witness = None
    mode = "exhaustive"
    for n in range(min(cap, MAX_EXHAUSTIVE_CAP) + 1):
        for count, wit in kernel.run_rows(n, compiled):
            checked += count
            if witness is None and wit is not None:
                witness = ChoiceFunction.from_bits(n, list(wit[1]), wit[0])
    if cap > MAX_EXHAUSTIVE_CAP:
        mode = "exhaustive<=3 + sampled@4"
        for count, wit in kernel.run_rows_sampled(4, compiled, samples, seed):
            checked += count
            if witness is None and wit is not None:
                witness = ChoiceFunction.from_bits(4, list(wit[1]), wit[0])
    if spec.kind == "verify":
        verdict = ("verified to cap %d" % cap if witness is None
                   else "counterexample found (implementation bug)")
    else:
        verdict = ("witness found" if witness is not None
                   else "no witness up to cap %d" % cap)
    return InterdepResult(key, spec.kind, cap, mode, checked, witness, verdict,
                          seed=seed if cap > MAX_EXHAUSTIVE_CAP else None)
