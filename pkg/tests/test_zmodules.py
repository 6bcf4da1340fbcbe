import pytest

from ringlab.dsl import parse_modexpr
from ringlab.symbolic.zmodules import (
    FGZModule,
    decide_submodule,
    sym_classify_submodule,
    sym_submodule,
    submodule_witness_holds,
    zmodule_from_modexpr,
)

ZxZ = FGZModule((0, 0), "ZZ x ZZ")


def test_six_z_times_zero():
    N = sym_submodule(ZxZ, [(6, 0)])
    cls = sym_classify_submodule(N)
    assert cls.flags["semi_r"] and not cls.flags["r"] and not cls.flags["sr_intro"]
    assert cls.flags["satisfies_D"]
    for flag in ("r", "sr_intro"):
        w = cls.witnesses[flag]
        assert submodule_witness_holds(N, flag, w)


def test_z8_times_z():
    M = zmodule_from_modexpr(parse_modexpr("Z8 x ZZ"))
    N = sym_submodule(M, [(4, 0)])
    assert decide_submodule(N, "semi_r").proved
    v = decide_submodule(N, "semiprime")
    assert v.refuted and submodule_witness_holds(N, "semiprime", v.witness)


@pytest.mark.parametrize("g", [(2, 0), (4, 0), (6, 0), (4, 6), (2, 2), (0, 9), (3, 5), (1, 0)])
def test_torsion_free_semi_r_equals_semiprime(g):
    N = sym_submodule(ZxZ, [g])
    f = sym_classify_submodule(N, 6).flags
    assert f["semi_r"] == f["semiprime"]


def test_membership_and_properness():
    N = sym_submodule(ZxZ, [(2, 0), (0, 3)])
    assert (4, 9) in N and (1, 0) not in N
    assert N.is_proper and N.quotient_torsion == (6,)
    assert not sym_submodule(ZxZ, [(1, 0), (0, 1)]).is_proper


def test_cyclic_torsion_module():
    M = zmodule_from_modexpr(parse_modexpr("Z12"))
    N = sym_submodule(M, [4])
    f = sym_classify_submodule(N).flags
    assert f["r"] and f["semi_r"] and f["satisfies_D"]
