import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ as SZZ
from sympy.matrices.normalforms import smith_normal_form

from ringlab.dsl import parse_ring_expr
from ringlab.symbolic.lattice import hnf, in_lattice, matmul, smith
from ringlab.symbolic.poly import format_poly, pmul, poly_ideal_from_gens
from ringlab.symbolic.rings import (
    SymbolicError,
    SymRing,
    bounded_ideal_search,
    cchar_closed_form,
    decide_ideal,
    format_sym_elem,
    sym_classify,
    sym_ideal,
    sym_ideal_from_comps,
    sym_ring_from_ast,
    witness_holds,
)

ZxZ = SymRing((0, 0), label="ZZ x ZZ")
Z = SymRing((0,), label="ZZ")

matrices = st.integers(1, 3).flatmap(
    lambda m: st.integers(1, 3).flatmap(
        lambda n: st.lists(st.lists(st.integers(-12, 12), min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_smith_matches_sympy(A):
    D, P, Q = smith(A)
    n = len(A[0])
    diag = matmul(matmul(P, A), Q)
    for i, row in enumerate(diag):
        for j, v in enumerate(row):
            assert v == (D[i] if i == j and i < len(D) else 0)
    ref = smith_normal_form(Matrix(A), domain=SZZ)
    ref_diag = [abs(ref[i, i]) for i in range(min(ref.shape)) if ref[i, i] != 0]
    assert D == ref_diag
    assert all(D[i + 1] % D[i] == 0 for i in range(len(D) - 1))
    assert n == len(Q)


@settings(max_examples=100, deadline=None)
@given(matrices, st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_hnf_spans_same_lattice(A, coeffs):
    n = len(A[0])
    H = hnf(A, n)
    # every input row, and any integer combination, lies in the HNF lattice
    for row in A:
        assert in_lattice(H, row)
    combo = [sum(c * row[j] for c, row in zip(coeffs, A)) for j in range(n)]
    assert in_lattice(H, combo)


def test_product_classification():
    cls = sym_classify(sym_ideal_from_comps(ZxZ, (4, 6)))
    assert not cls.flags["semi_r"] and cls.witnesses["semi_r"] == (2, 6)
    assert sym_classify(sym_ideal_from_comps(ZxZ, (4, 0))).flags["semi_r"]
    assert sym_classify(sym_ideal_from_comps(ZxZ, (6, 10))).flags["semi_r"]


def test_integers():
    assert decide_ideal(sym_ideal_from_comps(Z, (8,)), "semi_r").witness == 4
    assert decide_ideal(sym_ideal_from_comps(Z, (6,)), "semiprime").proved
    v = decide_ideal(sym_ideal_from_comps(Z, (6,)), "r")
    assert v.refuted and witness_holds(sym_ideal_from_comps(Z, (6,)), "r", v.witness)


def test_idealization_classification():
    A = SymRing((0,), idz=4, label="idz(ZZ, Z4)")
    assert sym_classify(sym_ideal_from_comps(A, (4, 1))).flags["semi_r"]
    cls = sym_classify(sym_ideal_from_comps(A, (9, 1)))
    assert not cls.flags["semi_r"] and cls.witnesses["semi_r"] == (3, 0)


@pytest.mark.parametrize("n1", range(0, 13))
def test_cchar_closed_form_against_search(n1):
    for n2 in range(0, 13):
        I = sym_ideal_from_comps(ZxZ, (n1, n2))
        if I.is_proper:
            # a refutation needs a coordinate as large as the other component, so search that high
            h = max(n1, n2, 1)
            assert cchar_closed_form(I) == (not bounded_ideal_search(I, "semi_r", h).refuted)


def test_polynomial_fixture():
    R = sym_ring_from_ast(parse_ring_expr("polyfix:Zx"))
    I = sym_ideal(R, [(0, 1), 4])
    v = decide_ideal(I, "semi_r")
    assert v.refuted and witness_holds(I, "semi_r", v.witness)  # the constant 2 comes first
    assert witness_holds(I, "semi_r", (2, 1)) and format_sym_elem(R, (2, 1)) == "2+x"
    J = sym_ideal(R, [(0, 0, 1)])
    assert format_sym_elem(R, decide_ideal(J, "semi_r").witness) == "x"
    assert decide_ideal(sym_ideal(R, [(0, 1)]), "prime").proved
    assert format_poly(pmul((1, 1), (1, 1))) == "1+2x+x^2"
    with pytest.raises(ValueError):
        poly_ideal_from_gens([(1, 1, 1), (2,)])


def test_unsupported_symbolic_rings():
    with pytest.raises(Exception):
        sym_ring_from_ast(parse_ring_expr("dup(ZZ, <2>)"))
    with pytest.raises(SymbolicError):
        sym_classify(sym_ideal(sym_ring_from_ast(parse_ring_expr("polyfix:Zx")), [(0, 1)]))
