import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringlab.dsl import (
    ZZ,
    Amal,
    Dup,
    ElaborationError,
    Idz,
    Loc,
    ParseError,
    PolyFix,
    Prod,
    Quot,
    ZMod,
    elaborate,
    elaborate_module,
    format_canonical,
    is_symbolic,
    parse_elem,
    parse_gens,
    parse_modexpr,
    parse_ring_expr,
)
from ringlab.ideals import CapacityError

nats = st.integers(min_value=0, max_value=200)
elems = st.recursive(nats, lambda inner: st.lists(inner, min_size=1, max_size=3).map(tuple), max_leaves=6)
gens = st.lists(elems, min_size=1, max_size=3).map(tuple)
mfactor = st.one_of(st.just("self"), st.just(ZZ()), nats.map(ZMod))
modexpr = st.lists(mfactor, min_size=1, max_size=3).map(tuple)
leaf = st.one_of(nats.map(ZMod), st.just(ZZ()), st.sampled_from(["Zx", "Zy_2", "poly"]).map(PolyFix))
hom = st.one_of(st.just("id"), nats.map(lambda k: f"hom#{k}"))


def _extend(inner):
    term = st.one_of(
        st.builds(Quot, inner, gens),
        st.builds(Idz, inner, modexpr),
        st.builds(Dup, inner, gens),
        st.builds(Amal, inner, inner, hom, gens),
        st.builds(Loc, inner, gens),
    )
    # a product never has a product as a factor: "x" is flat and left-associative
    flat = st.one_of(leaf, term)
    return st.one_of(term, st.lists(flat, min_size=2, max_size=3).map(lambda fs: Prod(tuple(fs))))


ring_asts = st.recursive(leaf, _extend, max_leaves=8)


@settings(max_examples=300, deadline=None)
@given(ring_asts)
def test_roundtrip(ast):
    text = format_canonical(ast)
    assert parse_ring_expr(text) == ast


@given(ring_asts)
def test_whitespace_insignificant(ast):
    text = format_canonical(ast)
    # spaces around punctuation are optional; "x" after an identifier still needs one
    assert parse_ring_expr(text.replace(", ", ",")) == ast
    assert parse_ring_expr("  " + text.replace(",", " , ").replace("(", "( ") + " ") == ast


def test_examples():
    assert parse_ring_expr("Z12") == ZMod(12)
    assert parse_ring_expr("Z2 x Z2 x Z2") == Prod((ZMod(2), ZMod(2), ZMod(2)))
    assert parse_ring_expr("dup(Z4, <2>)") == Dup(ZMod(4), (2,))
    assert parse_ring_expr("idz(ZZ, Z4)") == Idz(ZZ(), (ZMod(4),))
    assert parse_ring_expr("quot(Z2 x Z3, <(1,0)>)") == Quot(Prod((ZMod(2), ZMod(3))), ((1, 0),))
    assert parse_ring_expr("amal(Z4, Z2, hom#1, <1>)") == Amal(ZMod(4), ZMod(2), "hom#1", (1,))
    assert parse_ring_expr("polyfix:Zx") == PolyFix("Zx")


def test_gens_and_elems():
    assert parse_gens("<4>") == (4,)
    assert parse_gens("4, (1,2)") == (4, (1, 2))
    assert parse_elem("(2,(1,0))") == (2, (1, 0))
    assert parse_modexpr("self x Z3") == ("self", ZMod(3))


@pytest.mark.parametrize("text, offset", [("Zx", 0), ("Z2 x", 4), ("dup(Z4 <2>)", 7), ("Z2 y Z3", 3),
                                          ("", 0), ("quot(Z4, <>)", 10)])
def test_parse_error_offsets(text, offset):
    with pytest.raises(ParseError) as exc:
        parse_ring_expr(text)
    assert exc.value.offset == offset
    assert str(exc.value).startswith(f"at offset {offset}:")
    assert exc.value.expected


def test_elaborate_orders():
    assert elaborate(parse_ring_expr("Z12")).order == 12
    assert elaborate(parse_ring_expr("Z2 x Z3")).order == 6
    assert elaborate(parse_ring_expr("dup(Z4, <2>)")).order == 8
    assert elaborate(parse_ring_expr("idz(Z4, Z2)")).order == 8
    assert elaborate(parse_ring_expr("quot(Z12, <4>)")).order == 4
    assert elaborate(parse_ring_expr("quot(ZZ, <6>)")).order == 6
    assert elaborate(parse_ring_expr("loc(Z12, {3})")).order == 4  # Z4 x Z3 with the Z3 part killed


def test_symbolic_tier():
    for text in ("ZZ", "ZZ x Z4", "idz(ZZ, Z4)", "polyfix:Zx"):
        assert is_symbolic(parse_ring_expr(text))
    assert not is_symbolic(parse_ring_expr("quot(ZZ, <6>)"))
    assert elaborate(parse_ring_expr("ZZ x ZZ")).kind == "product"


def test_elaboration_errors():
    with pytest.raises(ElaborationError):
        elaborate(parse_ring_expr("Z1"))
    with pytest.raises(ElaborationError):
        elaborate(parse_ring_expr("dup(Z4, <7>)"))
    with pytest.raises(ElaborationError):
        elaborate(parse_ring_expr("polyfix:Zq"))
    with pytest.raises(CapacityError):
        elaborate(parse_ring_expr("Z64 x Z64"), cap=64)


def test_module_expressions():
    R = elaborate(parse_ring_expr("Z12"))
    assert elaborate_module(R, parse_modexpr("self")).order == 12
    assert elaborate_module(R, parse_modexpr("Z4 x Z3")).order == 12
    with pytest.raises(ElaborationError):
        elaborate_module(R, parse_modexpr("Z5"))
    with pytest.raises(ElaborationError):
        elaborate_module(R, parse_modexpr("ZZ"))
