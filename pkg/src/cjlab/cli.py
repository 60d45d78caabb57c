"""Command-line front end.

Exit codes: 0 every requested check passed, 1 some semantic check failed
(frame condition, axiom, property, rule, verification or precondition),
2 input could not be read or parsed.  All randomness is seeded and the
seed is echoed in the report.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import cjmodel, consequence, kernel, modal, represent, syntax
from .choice import (ChoiceFunction, ROW_TABLE, check_closure,
                     check_interdependency, check_properties,
                     normalize_property_id)
from .prefstruct import PrefStructure, PreconditionFailed


def _digest(parts):
    h = hashlib.sha256()
    for p in parts:
        h.update(p if isinstance(p, bytes) else str(p).encode())
        h.update(b"\0")
    return h.hexdigest()[:16]


class Report:
    def __init__(self, command, digest, seed=None):
        self.command = command
        self.digest = digest
        self.seed = seed
        self.verdicts = []
        self._start = time.perf_counter()

    def add(self, check_id, passed, witness=None):
        self.verdicts.append({"check": check_id, "pass": bool(passed),
                              "witness": witness})

    @property
    def all_pass(self):
        return all(v["pass"] for v in self.verdicts)

    def to_dict(self):
        return {"command": self.command, "inputs": self.digest,
                "seed": self.seed, "backend": kernel.active_backend(),
                "verdicts": self.verdicts,
                "timing_s": round(time.perf_counter() - self._start, 6)}

    def emit(self, as_json, extra_lines=()):
        if as_json:
            print(json.dumps(self.to_dict(), indent=2))
            return
        for line in extra_lines:
            print(line)
        for v in self.verdicts:
            mark = "PASS" if v["pass"] else "FAIL"
            wit = "" if v["witness"] is None else f"  witness: {v['witness']}"
            print(f"{v['check']}: {mark}{wit}")


def _clean(obj):
    if isinstance(obj, (frozenset, set)):
        return sorted(_clean(x) for x in obj)
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(x) for x in obj]
    return obj


def _read(path):
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")


class InputError(Exception):
    pass


def _load_model(path):
    raw = _read(path)
    try:
        return cjmodel.CJModel.from_json(raw.decode()), raw
    except (ValueError, UnicodeDecodeError) as exc:
        raise InputError(f"bad model file {path}: {exc}")


def _load_cf(path):
    raw = _read(path)
    try:
        return ChoiceFunction.from_json(raw.decode()), raw
    except (ValueError, UnicodeDecodeError) as exc:
        raise InputError(f"bad choice-function file {path}: {exc}")


def _load_structure(path):
    raw = _read(path)
    try:
        return PrefStructure.from_json(raw.decode()), raw
    except (ValueError, UnicodeDecodeError) as exc:
        raise InputError(f"bad structure file {path}: {exc}")


def _parse_formula(text):
    try:
        return syntax.parse(text)
    except syntax.ParseError as exc:
        raise InputError(f"bad formula {text!r}: {exc}")


# ------------------------------------------------------------------ commands

def cmd_check_cj(args):
    model, raw = _load_model(args.model)
    report = Report("check-cj", _digest([raw, args.only or ""]))
    wanted = (args.only or "frame,axioms").split(",")
    bad = set(wanted) - {"frame", "axioms"}
    if bad:
        raise InputError(f"unknown check group(s): {sorted(bad)}")
    if "frame" in wanted:
        fr = cjmodel.check_frame(model)
        for cid, res in fr.conditions.items():
            report.add(f"frame:{cid}", res.passed, _clean(res.witness))
    if "axioms" in wanted:
        ax = cjmodel.check_axioms(model, seed=args.seed)
        for res in ax.results:
            report.add(f"axiom:{res.axiom}", res.passed, _clean(res.witness))
    report.emit(args.json)
    return 0 if report.all_pass else 1


def cmd_example_1_1(args):
    report = Report("example-1-1", _digest([args.force_5d]))
    model = cjmodel.build_example_1_1(force_5d=args.force_5d)
    fr = cjmodel.check_frame(model)
    for cid, res in fr.conditions.items():
        report.add(f"frame:{cid}", res.passed, _clean(res.witness))
    ax = cjmodel.check_axioms(model)
    for res in ax.results:
        report.add(f"axiom:{res.axiom}", res.passed, _clean(res.witness))
    opp = cjmodel.truth_set(model, syntax.parse("O(p / p)"))
    valid = opp == frozenset(model.worlds)
    report.add("O(p/p):valid", valid)
    n_ax = sum(1 for r in ax.results if r.passed)
    summary = "axioms: %d/15 pass; 5-d: %s; O(p/p): %s" % (
        n_ax, "PASS" if fr.conditions["5-d"].passed else "FAIL",
        "valid" if valid else "not valid")
    report.emit(args.json, extra_lines=[summary])
    semantic_ok = fr.passed and ax.passed
    return 0 if semantic_ok else 1


def cmd_props(args):
    cf, raw = _load_cf(args.input)
    report = Report("props", _digest([raw, args.only or ""]))
    try:
        props = ([normalize_property_id(p) for p in args.only.split(",")]
                 if args.only else None)
    except ValueError as exc:
        raise InputError(str(exc))
    for rep in check_properties(cf, props):
        report.add(f"prop:{rep.property}", rep.passed,
                   _clean(rep.counterexample))
    cl = check_closure(cf)
    report.add("closure", True, cl.to_dict())
    report.emit(args.json)
    return 0 if report.all_pass else 1


def cmd_rules(args):
    cf, raw = _load_cf(args.input)
    atoms = [a for a in args.atoms.split(",") if a]
    try:
        rel = consequence.relation_from(atoms, cf)
    except ValueError as exc:
        raise InputError(str(exc))
    report = Report("rules", _digest([raw, args.atoms, args.only or ""]))
    try:
        rules = ([consequence.normalize_rule_id(r)
                  for r in args.only.split(",")]
                 if args.only else consequence.RULES)
    except ValueError as exc:
        raise InputError(str(exc))
    for rid in rules:
        rep = consequence.check_logical_rule(rel, rid)
        report.add(f"rule:{rep.property}", rep.passed,
                   _clean(rep.counterexample))
    report.emit(args.json)
    return 0 if report.all_pass else 1


def cmd_interdep(args):
    rows = args.row.split(",") if args.row else sorted(ROW_TABLE)
    report = Report("interdep", _digest([args.row or "", args.cap, args.seed]),
                    seed=args.seed)
    code = 0
    for row in rows:
        try:
            res = check_interdependency(row, cap=args.cap,
                                        samples=args.samples, seed=args.seed)
        except ValueError as exc:
            raise InputError(str(exc))
        witness = res.witness.to_dict() if res.witness is not None else None
        report.add(f"row:{row} [{res.verdict}]", res.passed, witness)
        if not res.passed:
            code = 1
    report.emit(args.json)
    return code


def cmd_correspond(args):
    cf, raw = _load_cf(args.input)
    report = Report("correspond", _digest([raw]))
    try:
        verdicts = consequence.correspondence_check(cf)
    except ValueError as exc:
        raise InputError(str(exc))
    for v in verdicts:
        report.add(f"row:{v.row} {v.rule} {v.direction} ({v.prop})", v.agree,
                   None if v.agree else v.to_dict())
    report.emit(args.json)
    return 0 if report.all_pass else 1


def cmd_represent(args):
    cf, raw = _load_cf(args.input)
    report = Report("represent", _digest([raw, bool(args.verify)]))
    try:
        structure = represent.represent_ranked(cf)
    except PreconditionFailed as exc:
        report.add("preconditions", False, str(exc))
        report.emit(args.json)
        return 1
    report.add("constructed", True,
               None if args.out else structure.to_dict())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(structure.to_json())
    if args.verify:
        ok = represent.verify_representation(cf, structure)
        mism = represent.representation_mismatches(cf, structure)
        report.add("verified", ok, _clean(mism) if mism else None)
    report.emit(args.json, extra_lines=[] if args.out or args.json else
                [structure.to_json()])
    return 0 if report.all_pass else 1


def cmd_normalize(args):
    structure, raw = _load_structure(args.input)
    report = Report("normalize", _digest([raw, args.points or ""]))
    points = args.points.split(",") if args.points else None
    try:
        out = represent.normalize_one_infinity(structure, points)
    except (PreconditionFailed, ValueError) as exc:
        report.add("preconditions", False, str(exc))
        report.emit(args.json)
        return 1
    base = points if points is not None else structure.points
    agree = all(represent.prefstruct.mu(structure, set(xs))
                == represent.prefstruct.mu(out, set(xs))
                for xs in _subsets(base))
    report.add("one-infinity", represent.is_one_infinity(out))
    report.add("minimization-preserved", agree)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out.to_json())
        report.emit(args.json)
    else:
        report.emit(args.json, extra_lines=[out.to_json()])
    return 0 if report.all_pass else 1


def _subsets(items):
    items = [x for x in items]
    for mask in range(1 << len(items)):
        yield [x for i, x in enumerate(items) if mask >> i & 1]


def cmd_translate(args):
    report = Report("translate", _digest([args.mode, args.alpha or "",
                                          args.beta or "", args.phi or "",
                                          args.psi or "", args.psiprime or "",
                                          args.phim or ""]))
    needed = {"minimal": ("alpha",), "cond": ("alpha", "beta"),
              "ratm": ("phi", "psi", "psiprime"),
              "and": ("phim", "phi", "psi")}[args.mode]
    missing = [name for name in needed if getattr(args, name) is None]
    if missing:
        raise InputError(f"mode {args.mode!r} needs --"
                         + ", --".join(missing))
    if args.mode == "minimal":
        f = modal.minimal_models_formula(_parse_formula(args.alpha))
    elif args.mode == "cond":
        f = modal.translate_conditional(_parse_formula(args.alpha),
                                        _parse_formula(args.beta))
    elif args.mode == "ratm":
        f = modal.translate_ratm(_parse_formula(args.phi),
                                 _parse_formula(args.psi),
                                 _parse_formula(args.psiprime))
    else:
        f = modal.translate_and_schema(_parse_formula(args.phim),
                                       _parse_formula(args.phi),
                                       _parse_formula(args.psi))
    rendered = syntax.render(f)
    if args.json:
        report.add("translated", True, rendered)
        report.emit(True)
    else:
        print(rendered)
    return 0


def cmd_agree(args):
    raw = _read(args.model)
    try:
        model = modal.BiModalModel.from_json(raw.decode())
    except (ValueError, UnicodeDecodeError) as exc:
        raise InputError(f"bad bimodal model file {args.model}: {exc}")
    report = Report("agree", _digest([raw]))
    rep = modal.agreement_check(model)
    report.add("r-reflexive", True, rep.r_reflexive)
    report.add(f"agreement ({rep.pairs_checked} pairs)", rep.passed,
               rep.to_dict()["disagreements"] or None)
    report.emit(args.json)
    return 0 if rep.passed else 1


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="cjlab",
        description="finite-model workbench for dyadic deontic logic and "
                    "ranked preferential semantics")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true",
                       help="machine-readable report")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("check-cj", help="frame + axiom check of a model file")
    p.add_argument("model")
    p.add_argument("--only", help="comma list: frame,axioms")
    common(p)
    p.set_defaults(func=cmd_check_cj)

    p = sub.add_parser("example-1-1",
                       help="build the incompleteness witness and check it")
    p.add_argument("--force-5d", action="store_true",
                   help="add the 5-d completion of the p-context")
    common(p)
    p.set_defaults(func=cmd_example_1_1)

    p = sub.add_parser("props", help="algebraic properties of a choice function")
    p.add_argument("input")
    p.add_argument("--only", help="comma list of property ids")
    common(p)
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("rules", help="logical rules of the induced relation")
    p.add_argument("input")
    p.add_argument("--atoms", required=True, help="comma list of atoms")
    p.add_argument("--only", help="comma list of rule ids")
    common(p)
    p.set_defaults(func=cmd_rules)

    p = sub.add_parser("interdep", help="algebraic interdependency rows")
    p.add_argument("--row", help="comma list of row ids (default: all)")
    p.add_argument("--cap", type=int, default=3)
    p.add_argument("--samples", type=int, default=20000)
    common(p)
    p.set_defaults(func=cmd_interdep)

    p = sub.add_parser("correspond",
                       help="logic vs algebra correspondence for one function")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=cmd_correspond)

    p = sub.add_parser("represent",
                       help="build a ranked structure realizing a choice function")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.add_argument("--verify", action="store_true")
    common(p)
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("normalize", help="collapse to one copy or chain per point")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.add_argument("--points", help="comma list extending the base set")
    common(p)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("translate", help="modal translations")
    p.add_argument("--mode", choices=("minimal", "cond", "ratm", "and"),
                   default="cond")
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("--phi")
    p.add_argument("--psi")
    p.add_argument("--psiprime")
    p.add_argument("--phim")
    common(p)
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("agree",
                       help="translated conditionals vs preferential choice")
    p.add_argument("--model", required=True)
    common(p)
    p.set_defaults(func=cmd_agree)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
