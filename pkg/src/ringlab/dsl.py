"""Ring expression language.

Grammar (LL(1), whitespace insignificant, "x" left-associative):

    expr    := term ("x" term)*
    term    := "Z" nat | "ZZ"
             | "quot(" expr "," gens ")"
             | "idz(" expr "," modexpr ")"
             | "dup(" expr "," gens ")"
             | "amal(" expr "," expr "," hom "," gens ")"
             | "loc(" expr "," elems ")"
             | "polyfix:" ident
    gens    := "<" elem ("," elem)* ">"
    elems   := "{" elem ("," elem)* "}"
    elem    := nat | "(" elem ("," elem)* ")"
    hom     := "id" | "hom#" nat
    modexpr := mfactor ("x" mfactor)*
    mfactor := "self" | "ZZ" | "Z" nat
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .ring import HARD_CAP, RingError, build_product, build_zn

CORPUS_CAP = 64


class ParseError(ValueError):
    def __init__(self, offset, expected, message):
        self.offset = offset
        self.expected = tuple(sorted(expected))
        self.message = message
        super().__init__(f"at offset {offset}: {message} (expected one of: {', '.join(self.expected)})")


class ElaborationError(ValueError):
    pass


# AST ------------------------------------------------------------------------

Elem = Union[int, tuple]


@dataclass(frozen=True)
class ZMod:
    n: int


@dataclass(frozen=True)
class ZZ:
    pass


@dataclass(frozen=True)
class Prod:
    factors: tuple


@dataclass(frozen=True)
class Quot:
    ring: object
    gens: tuple


@dataclass(frozen=True)
class Idz:
    ring: object
    module: tuple  # of ModFactor-like leaves: "self", ZZ(), ZMod(d)


@dataclass(frozen=True)
class Dup:
    ring: object
    gens: tuple


@dataclass(frozen=True)
class Amal:
    left: object
    right: object
    hom: str  # "id" or "hom#k"
    gens: tuple


@dataclass(frozen=True)
class Loc:
    ring: object
    elems: tuple


@dataclass(frozen=True)
class PolyFix:
    name: str


# lexer ----------------------------------------------------------------------

_TOKEN_RE = [
    ("POLYFIX", re.compile(r"polyfix:")),
    ("HOM", re.compile(r"hom#")),
    ("KW", re.compile(r"(quot|idz|dup|amal|loc|self)(?![A-Za-z0-9_#])")),
    ("ID", re.compile(r"id(?![A-Za-z0-9_#])")),
    ("ZZ", re.compile(r"ZZ")),
    ("ZMOD", re.compile(r"Z(?=[0-9])")),
    ("X", re.compile(r"x")),
    ("NAT", re.compile(r"[0-9]+")),
    ("PUNCT", re.compile(r"[(),<>{}]")),
]
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_WS = re.compile(r"\s*")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


def tokenize(text):
    out, pos = [], 0
    while True:
        pos = _WS.match(text, pos).end()
        if pos >= len(text):
            break
        if out and out[-1].kind == "POLYFIX":
            m = _IDENT.match(text, pos)
            if not m:
                raise ParseError(pos, {"identifier"}, "bad fixture name")
            out.append(Token("IDENT", m.group(), pos))
            pos = m.end()
            continue
        for kind, rx in _TOKEN_RE:
            m = rx.match(text, pos)
            if m:
                tok = m.group()
                out.append(Token("PUNCT" if kind == "PUNCT" else kind, tok, pos))
                pos = m.end()
                break
        else:
            raise ParseError(pos, {"term", "x", "punctuation"}, f"unexpected character {text[pos]!r}")
    out.append(Token("EOF", "", len(text)))
    return out


# parser ---------------------------------------------------------------------

_TERM_START = {"Z<n>", "ZZ", "quot", "idz", "dup", "amal", "loc", "polyfix:"}


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def fail(self, expected, message=None):
        t = self.tok
        got = "end of input" if t.kind == "EOF" else repr(t.text)
        raise ParseError(t.offset, expected, message or f"unexpected {got}")

    def eat(self, kind, text=None):
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            self.fail({text or kind})
        self.i += 1
        return t

    def at(self, kind, text=None):
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def nat(self):
        if not self.at("NAT"):
            self.fail({"<nat>"})
        return int(self.eat("NAT").text)

    def expr(self):
        terms = [self.term()]
        while self.at("X"):
            self.eat("X")
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Prod(tuple(terms))

    def term(self):
        t = self.tok
        if t.kind == "ZMOD":
            self.eat("ZMOD")
            return ZMod(self.nat())
        if t.kind == "ZZ":
            self.eat("ZZ")
            return ZZ()
        if t.kind == "POLYFIX":
            self.eat("POLYFIX")
            if not self.at("IDENT"):
                self.fail({"identifier"})
            return PolyFix(self.eat("IDENT").text)
        if t.kind == "KW" and t.text != "self":
            kw = t.text
            self.eat("KW")
            self.eat("PUNCT", "(")
            base = self.expr()
            self.eat("PUNCT", ",")
            if kw == "quot":
                node = Quot(base, self.gens())
            elif kw == "dup":
                node = Dup(base, self.gens())
            elif kw == "idz":
                node = Idz(base, self.modexpr())
            elif kw == "loc":
                node = Loc(base, self.elems())
            else:
                right = self.expr()
                self.eat("PUNCT", ",")
                hom = self.hom()
                self.eat("PUNCT", ",")
                node = Amal(base, right, hom, self.gens())
            self.eat("PUNCT", ")")
            return node
        self.fail(_TERM_START)

    def hom(self):
        if self.at("ID"):
            self.eat("ID")
            return "id"
        if self.at("HOM"):
            self.eat("HOM")
            return f"hom#{self.nat()}"
        self.fail({"id", "hom#"})

    def elem(self):
        if self.at("NAT"):
            return self.nat()
        if self.at("PUNCT", "("):
            self.eat("PUNCT", "(")
            items = [self.elem()]
            while self.at("PUNCT", ","):
                self.eat("PUNCT", ",")
                items.append(self.elem())
            self.eat("PUNCT", ")")
            return tuple(items)
        self.fail({"<nat>", "("})

    def _seq(self, open_, close):
        self.eat("PUNCT", open_)
        items = [self.elem()]
        while self.at("PUNCT", ","):
            self.eat("PUNCT", ",")
            items.append(self.elem())
        self.eat("PUNCT", close)
        return tuple(items)

    def gens(self):
        return self._seq("<", ">")

    def elems(self):
        return self._seq("{", "}")

    def mfactor(self):
        if self.at("KW", "self"):
            self.eat("KW")
            return "self"
        if self.at("ZZ"):
            self.eat("ZZ")
            return ZZ()
        if self.at("ZMOD"):
            self.eat("ZMOD")
            return ZMod(self.nat())
        self.fail({"self", "ZZ", "Z<n>"})

    def modexpr(self):
        out = [self.mfactor()]
        while self.at("X"):
            self.eat("X")
            out.append(self.mfactor())
        return tuple(out)

    def finish(self):
        if not self.at("EOF"):
            self.fail({"end of input"})


def parse_ring_expr(text):
    p = _Parser(text)
    e = p.expr()
    p.finish()
    return e


def parse_gens(text):
    """A generator list "<a,b>"; a bare comma list "a,b" is accepted too."""
    text = text.strip()
    if not text.startswith("<"):
        text = "<" + text + ">"
    p = _Parser(text)
    g = p.gens()
    p.finish()
    return g


def parse_modexpr(text):
    p = _Parser(text)
    m = p.modexpr()
    p.finish()
    return m


def parse_elem(text):
    p = _Parser(text)
    e = p.elem()
    p.finish()
    return e


# formatting -----------------------------------------------------------------

def format_elem(e):
    if isinstance(e, tuple):
        return "(" + ",".join(format_elem(v) for v in e) + ")"
    return str(e)


def _fmt_list(items, open_, close):
    return open_ + ", ".join(format_elem(v) for v in items) + close


def format_modexpr(m):
    return " x ".join("self" if f == "self" else format_canonical(f) for f in m)


def format_canonical(e):
    if isinstance(e, ZMod):
        return f"Z{e.n}"
    if isinstance(e, ZZ):
        return "ZZ"
    if isinstance(e, Prod):
        return " x ".join(format_canonical(f) for f in e.factors)
    if isinstance(e, Quot):
        return f"quot({format_canonical(e.ring)}, {_fmt_list(e.gens, '<', '>')})"
    if isinstance(e, Dup):
        return f"dup({format_canonical(e.ring)}, {_fmt_list(e.gens, '<', '>')})"
    if isinstance(e, Idz):
        return f"idz({format_canonical(e.ring)}, {format_modexpr(e.module)})"
    if isinstance(e, Amal):
        return (f"amal({format_canonical(e.left)}, {format_canonical(e.right)}, {e.hom}, "
                f"{_fmt_list(e.gens, '<', '>')})")
    if isinstance(e, Loc):
        return f"loc({format_canonical(e.ring)}, {_fmt_list(e.elems, '{', '}')})"
    if isinstance(e, PolyFix):
        return f"polyfix:{e.name}"
    raise TypeError(f"not a ring expression: {e!r}")


# elaboration ----------------------------------------------------------------

def is_symbolic(e):
    if isinstance(e, (ZZ, PolyFix)):
        return True
    if isinstance(e, ZMod):
        return False
    if isinstance(e, Prod):
        return any(is_symbolic(f) for f in e.factors)
    if isinstance(e, Quot) and isinstance(e.ring, ZZ):
        return False  # quot(ZZ, <n>) is Z_n
    if isinstance(e, Amal):
        return is_symbolic(e.left) or is_symbolic(e.right)
    return is_symbolic(e.ring)


def resolve_elem(R, e):
    try:
        return R.element(format_elem(e))
    except (RingError, ValueError) as exc:
        raise ElaborationError(str(exc)) from None


def resolve_gens(R, gens):
    from .ideals import generate_ideal

    return generate_ideal(R, [resolve_elem(R, g) for g in gens])


def _check_cap(order, cap, what):
    if order > cap:
        from .ideals import CapacityError

        raise CapacityError(f"{what} would have order {order}, above the cap {cap}")


def elaborate_module(R, mexpr, cap=HARD_CAP):
    """A finite module over R from a modexpr."""
    from .modules import ModuleError, build_module

    parts = []
    for f in mexpr:
        if f == "self":
            parts.append(build_module(R, "self"))
        elif isinstance(f, ZMod):
            try:
                parts.append(build_module(R, "cyclic", d=f.n))
            except ModuleError as exc:
                raise ElaborationError(str(exc)) from None
        else:
            raise ElaborationError("ZZ modules need a symbolic base ring")
    if len(parts) == 1:
        return parts[0]
    order = 1
    for P in parts:
        order *= P.order
    _check_cap(order, cap, "module")
    return build_module(R, "product", factors=parts)


def elaborate(e, cap=HARD_CAP):
    """Turn an AST into a RingTable (finite) or a symbolic ring."""
    if isinstance(e, str):
        e = parse_ring_expr(e)
    try:
        if is_symbolic(e):
            from .symbolic.rings import sym_ring_from_ast

            return sym_ring_from_ast(e)
        return _elab_finite(e, cap)
    except RingError as exc:
        raise ElaborationError(str(exc)) from None


def _elab_finite(e, cap):
    from .constructions import (
        ConstructionError,
        amalgamation,
        duplication,
        enumerate_homs,
        idealization,
        localization,
        quotient_ring,
    )

    try:
        if isinstance(e, ZMod):
            _check_cap(e.n, cap, f"Z{e.n}")
            return build_zn(e.n)
        if isinstance(e, Prod):
            parts = [_elab_finite(f, cap) for f in e.factors]
            order = 1
            for P in parts:
                order *= P.order
            _check_cap(order, cap, "product")
            return build_product(parts, label=format_canonical(e))
        if isinstance(e, Quot):
            if isinstance(e.ring, ZZ):
                if len(e.gens) != 1 or not isinstance(e.gens[0], int):
                    raise ElaborationError("quot(ZZ, <n>) takes a single integer generator")
                _check_cap(e.gens[0], cap, "quotient")
                return build_zn(e.gens[0])
            R = _elab_finite(e.ring, cap)
            Q, _ = quotient_ring(R, resolve_gens(R, e.gens), label=format_canonical(e))
            return Q
        if isinstance(e, Idz):
            R = _elab_finite(e.ring, cap)
            M = elaborate_module(R, e.module, cap)
            _check_cap(R.order * M.order, cap, "idealization")
            return idealization(R, M, label=format_canonical(e))
        if isinstance(e, Dup):
            R = _elab_finite(e.ring, cap)
            J = resolve_gens(R, e.gens)
            _check_cap(R.order * J.size, cap, "duplication")
            return duplication(R, J, label=format_canonical(e)).ring
        if isinstance(e, Amal):
            R1 = _elab_finite(e.left, cap)
            if e.hom == "id":
                if format_canonical(e.left) != format_canonical(e.right):
                    raise ElaborationError("hom 'id' needs identical source and target expressions")
                R2 = R1
            else:
                R2 = _elab_finite(e.right, cap)
            J = resolve_gens(R2, e.gens)
            _check_cap(R1.order * J.size, cap, "amalgamation")
            homs = enumerate_homs(R1, R2)
            if e.hom == "id":
                f = next(h for h in homs if h.is_identity)
            else:
                k = int(e.hom[4:])
                if k >= len(homs):
                    raise ElaborationError(f"{e.hom}: only {len(homs)} homomorphisms {R1.label} -> {R2.label}")
                f = homs[k]
            return amalgamation(R1, R2, f, J, label=format_canonical(e)).ring
        if isinstance(e, Loc):
            R = _elab_finite(e.ring, cap)
            S = [resolve_elem(R, s) for s in e.elems]
            return localization(R, S, label=format_canonical(e)).ring
    except (ConstructionError, RingError) as exc:
        raise ElaborationError(str(exc)) from None
    raise ElaborationError(f"cannot elaborate {e!r}")
