import pytest

from ringlab.dsl import elaborate, elaborate_module, parse_modexpr, parse_ring_expr
from ringlab.ideals import generate_ideal
from ringlab.modules import (
    SUB_IMPLICATIONS,
    all_submodules,
    build_module,
    colon_mi,
    colon_rm,
    d_annihilator,
    eqM_condition,
    enumerate_module_homs,
    generate_submodule,
    ideal_times,
    is_pure,
    m_rad,
    m_rad_formula,
    module_flags,
    quotient_module,
    semi_r_submodule_by_power,
    submodule_of_mask,
    torsion_mask,
    verify_module_axioms,
)
from ringlab.ring import build_zn


def module(ring, mexpr):
    R = elaborate(parse_ring_expr(ring))
    return elaborate_module(R, parse_modexpr(mexpr))


def test_self_module_flags():
    M = module("Z12", "self")
    f = module_flags(M)
    assert f.is_faithful and f.is_multiplication
    assert not f.is_torsion and not f.is_torsion_free  # units are not torsion, 6 is


def test_cyclic_module_not_faithful():
    M = build_module(build_zn(12), "cyclic", d=4)
    assert verify_module_axioms(M) == []
    assert not module_flags(M).is_faithful
    assert len(all_submodules(M)) == 3


def test_four_in_z12_submodule():
    M = module("Z12", "self")
    N = generate_submodule(M, [4])
    f = N.flags
    assert f.is_semi_r and f.is_r and not f.is_semiprime and not f.is_sr_alt
    assert f.satisfies_D
    assert semi_r_submodule_by_power(N, 2) is None


def test_colons_and_products():
    R = build_zn(12)
    M = build_module(R, "self")
    N = generate_submodule(M, [4])
    assert colon_rm(N).members == [0, 4, 8]
    I = generate_ideal(R, [2])
    assert colon_mi(N, I).members == [0, 2, 4, 6, 8, 10]
    full = submodule_of_mask(M, M.full)
    assert ideal_times(I, full).members == [0, 2, 4, 6, 8, 10]


def test_mrad_formula_on_faithful_multiplication():
    M = module("Z2 x Z4", "self")
    for N in all_submodules(M):
        if N.is_proper:
            assert m_rad(N).mask == m_rad_formula(N).mask


def test_torsion_and_D():
    M = module("Z12", "self")
    assert torsion_mask(M) == M.ring.zd_mask  # T(R) over itself is zd(R)
    for N in all_submodules(M):
        if N.is_proper:
            assert d_annihilator(N)
            assert eqM_condition(N)


def test_pure_submodules_of_self():
    M = module("Z6", "self")
    pure = [N.describe() for N in all_submodules(M) if is_pure(N)]
    # Z6 = Z2 x Z3: the idempotent ideals are pure
    assert len(pure) == 4


@pytest.mark.parametrize("ring, mexpr", [("Z8", "self"), ("Z4", "Z2 x Z2"), ("Z2 x Z2", "self"),
                                         ("Z12", "Z4 x Z3"), ("idz(Z4, Z2)", "self")])
def test_submodule_implications(ring, mexpr):
    M = module(ring, mexpr)
    for N in all_submodules(M):
        f = N.flags
        for a, b in SUB_IMPLICATIONS:
            assert not f.get(a) or f.get(b)


def test_quotient_and_homs():
    M = module("Z4", "self")
    N = generate_submodule(M, [2])
    Q, proj = quotient_module(M, N)
    assert Q.order == 2 and proj[3] == 1
    homs = enumerate_module_homs(M, M)
    assert len(homs) == 4  # multiplication by each element
