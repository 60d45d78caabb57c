"""Formula language: AST, parser and renderer.

One node class tagged by operator.  The concrete syntax (ASCII) is:

    ~  &  |  ->  <->          classical connectives
    true  false               constants
    [a] <a>  [p] <p>          actual / potential necessity and possibility
    []  <>                    accessibility box / diamond
    [m] <m>                   minimality box / diamond
    [c] <c>                   complement-of-accessibility box / diamond
    <inv>                     converse possibility
    O(B/A)  Oa(B)  Op(B)      conditional and monadic obligations

Precedence ~ > & > | > -> > <->, binary connectives right-associative,
modal prefixes bind tighter than any binary connective.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class ParseError(ValueError):
    """Syntax error carrying the byte offset and the expected token set."""

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f"{message} at offset {offset}"
        if expected:
            detail += " (expected one of: %s)" % ", ".join(sorted(self.expected))
        super().__init__(detail)


@dataclass(frozen=True)
class Formula:
    op: str
    args: tuple["Formula", ...] = ()
    name: str = ""

    def __repr__(self):
        return f"Formula({render(self)!r})"


# Operator families.  `ocond` stores (consequent, antecedent).
UNARY_MODALS = ("boxa", "diaa", "boxp", "diap", "box", "dia",
                "boxmin", "diamin", "boxcomp", "diacomp", "diaconv")
CLASSICAL_OPS = frozenset({"atom", "top", "bot", "not", "and", "or", "imp", "iff"})
CJ_OPS = CLASSICAL_OPS | {"boxa", "diaa", "boxp", "diap", "diaconv", "ocond", "oa", "op"}
BIMODAL_OPS = CLASSICAL_OPS | {"box", "dia", "boxmin", "diamin", "boxcomp", "diacomp"}


def Atom(name):
    return Formula("atom", name=name)


Top = Formula("top")
Bot = Formula("bot")


def Not(f):
    return Formula("not", (f,))


def And(f, g):
    return Formula("and", (f, g))


def Or(f, g):
    return Formula("or", (f, g))


def Imp(f, g):
    return Formula("imp", (f, g))


def Iff(f, g):
    return Formula("iff", (f, g))


def BoxA(f):
    return Formula("boxa", (f,))


def DiaA(f):
    return Formula("diaa", (f,))


def BoxP(f):
    return Formula("boxp", (f,))


def DiaP(f):
    return Formula("diap", (f,))


def Box(f):
    return Formula("box", (f,))


def Dia(f):
    return Formula("dia", (f,))


def BoxMin(f):
    return Formula("boxmin", (f,))


def DiaMin(f):
    return Formula("diamin", (f,))


def BoxComp(f):
    return Formula("boxcomp", (f,))


def DiaComp(f):
    return Formula("diacomp", (f,))


def DiaConv(f):
    return Formula("diaconv", (f,))


def Oa(f):
    return Formula("oa", (f,))


def Op(f):
    return Formula("op", (f,))


def Ocond(consequent, antecedent):
    return Formula("ocond", (consequent, antecedent))


def atoms(f):
    """Set of atom names occurring in f."""
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g.op == "atom":
            out.add(g.name)
        stack.extend(g.args)
    return out


def operators(f):
    """Set of operator tags occurring in f."""
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        out.add(g.op)
        stack.extend(g.args)
    return out


# ---------------------------------------------------------------- tokenizer

_MODAL_TOKENS = {
    "[a]": "boxa", "<a>": "diaa", "[p]": "boxp", "<p>": "diap",
    "[]": "box", "<>": "dia", "[m]": "boxmin", "<m>": "diamin",
    "[c]": "boxcomp", "<c>": "diacomp", "<inv>": "diaconv",
}
_KEYWORDS = {"true", "false", "O", "Oa", "Op"}

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<iff><->)
      | (?P<imp>->)
      | (?P<modal>\[a\]|\[p\]|\[m\]|\[c\]|\[\]|<a>|<p>|<m>|<c>|<inv>|<>)
      | (?P<badmodal>\[[A-Za-z0-9_]*\]|<[A-Za-z0-9_]+>)
      | (?P<punct>[&|~()/])
      | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
    """,
    re.X,
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        value = m.group()
        if kind == "badmodal":
            raise ParseError(f"unknown operator name {value!r}", pos)
        if kind != "ws":
            tokens.append((value, pos))
        pos = m.end()
    tokens.append(("<end>", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok, pos = self.tokens[self.i]
        if tok != value:
            raise ParseError(f"found {tok!r}", pos, {value})
        self.i += 1

    def form(self):
        items = [self.imp()]
        while self.peek() == "<->":
            self.next()
            items.append(self.imp())
        out = items[-1]
        for g in reversed(items[:-1]):
            out = Iff(g, out)
        return out

    def imp(self):
        left = self.disj()
        if self.peek() == "->":
            self.next()
            return Imp(left, self.imp())
        return left

    def disj(self):
        items = [self.conj()]
        while self.peek() == "|":
            self.next()
            items.append(self.conj())
        out = items[-1]
        for g in reversed(items[:-1]):
            out = Or(g, out)
        return out

    def conj(self):
        items = [self.unary()]
        while self.peek() == "&":
            self.next()
            items.append(self.unary())
        out = items[-1]
        for g in reversed(items[:-1]):
            out = And(g, out)
        return out

    def unary(self):
        tok = self.peek()
        if tok == "~":
            self.next()
            return Not(self.unary())
        if tok in _MODAL_TOKENS:
            self.next()
            return Formula(_MODAL_TOKENS[tok], (self.unary(),))
        return self.prim()

    def prim(self):
        tok, pos = self.next()
        if tok == "true":
            return Top
        if tok == "false":
            return Bot
        if tok == "O":
            self.expect("(")
            consequent = self.form()
            self.expect("/")
            antecedent = self.form()
            self.expect(")")
            return Ocond(consequent, antecedent)
        if tok in ("Oa", "Op"):
            self.expect("(")
            body = self.form()
            self.expect(")")
            return Oa(body) if tok == "Oa" else Op(body)
        if tok == "(":
            body = self.form()
            self.expect(")")
            return body
        if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", tok) and tok not in _KEYWORDS:
            return Atom(tok)
        raise ParseError(f"found {tok!r}", pos,
                         {"true", "false", "O", "Oa", "Op", "(", "<identifier>"})


def parse(text):
    """Parse the concrete syntax into a Formula."""
    p = _Parser(text)
    f = p.form()
    tok, pos = p.tokens[p.i]
    if tok != "<end>":
        raise ParseError(f"trailing input {tok!r}", pos, {"<end>"})
    return f


# ----------------------------------------------------------------- renderer

_PREC = {"iff": 1, "imp": 2, "or": 3, "and": 4, "not": 5}
_PREC.update({op: 5 for op in UNARY_MODALS})
_ATOMIC_PREC = 6  # atoms, constants and the O-forms delimit themselves

_MODAL_SYMBOL = {v: k for k, v in _MODAL_TOKENS.items()}


def _prec(f):
    return _PREC.get(f.op, _ATOMIC_PREC)


def _render(f, minlevel):
    op = f.op
    if op == "atom":
        s = f.name
    elif op == "top":
        s = "true"
    elif op == "bot":
        s = "false"
    elif op == "not":
        s = "~" + _render(f.args[0], 5)
    elif op in _MODAL_SYMBOL:
        body = _render(f.args[0], 5)
        sep = "" if body.startswith("(") else " "
        s = _MODAL_SYMBOL[op] + sep + body
    elif op == "and":
        s = _render(f.args[0], 5) + " & " + _render(f.args[1], 4)
    elif op == "or":
        s = _render(f.args[0], 4) + " | " + _render(f.args[1], 3)
    elif op == "imp":
        s = _render(f.args[0], 3) + " -> " + _render(f.args[1], 2)
    elif op == "iff":
        s = _render(f.args[0], 2) + " <-> " + _render(f.args[1], 1)
    elif op == "ocond":
        s = "O(%s / %s)" % (_render(f.args[0], 1), _render(f.args[1], 1))
    elif op == "oa":
        s = "Oa(%s)" % _render(f.args[0], 1)
    elif op == "op":
        s = "Op(%s)" % _render(f.args[0], 1)
    else:
        raise ValueError(f"unknown operator {op!r}")
    if _prec(f) < minlevel:
        return "(" + s + ")"
    return s


def render(f):
    """Concrete syntax for f; parse(render(f)) is structurally equal to f."""
    return _render(f, 1)
