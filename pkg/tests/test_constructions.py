import pytest

from ringlab.constructions import (
    ConstructionError,
    amalg_module,
    amalg_zd_envelope,
    amalgamation,
    dup_module,
    duplication,
    enumerate_homs,
    enumerate_subrings,
    ideal_idealization,
    idealization,
    localization,
    localize_ideal,
    make_hom,
    quotient_ring,
    transfer_ideal_I,
    transfer_N1,
    transfer_N2,
    z_of_ideal,
)
from ringlab.ideals import all_ideals, generate_ideal
from ringlab.modules import all_submodules, build_module, generate_submodule, verify_module_axioms
from ringlab.ring import build_product, build_zn, ring_flags, verify_ring_axioms


def test_quotient_z12_by_4():
    R = build_zn(12)
    Q, proj = quotient_ring(R, generate_ideal(R, [4]))
    assert Q.order == 4 and verify_ring_axioms(Q) == []
    assert proj(5) == 1 and proj.is_surjective
    assert proj.kernel.members == [0, 4, 8]
    with pytest.raises(ConstructionError):
        quotient_ring(R, generate_ideal(R, [1]))


def test_homs_z4_to_z2():
    homs = enumerate_homs(build_zn(4), build_zn(2))
    assert len(homs) == 1 and homs[0].images == (0, 1, 0, 1)
    assert enumerate_homs(build_zn(2), build_zn(4)) == []  # 2 = 0 in Z2 but not in Z4
    with pytest.raises(ConstructionError):
        make_hom(build_zn(4), build_zn(2), (0, 1, 1, 1))


def test_localization_kills_torsion():
    R = build_zn(12)
    loc = localization(R, [3])
    assert loc.ring.order == 4
    assert localize_ideal(loc, generate_ideal(R, [2])).members == [0, 2]
    with pytest.raises(ConstructionError):
        localization(R, [0])


def test_idealization():
    R = build_zn(4)
    M = build_module(R, "cyclic", d=2)
    A = idealization(R, M)
    assert A.order == 8 and verify_ring_axioms(A) == []
    I = ideal_idealization(A, generate_ideal(R, [2]), generate_submodule(M, [1]))
    assert I.size == 4
    assert I.flags.is_semi_r
    with pytest.raises(ConstructionError):
        ideal_idealization(A, generate_ideal(R, [1]), generate_submodule(M, [0]))


def test_duplication_z4():
    R = build_zn(4)
    A = duplication(R, generate_ideal(R, [2]))
    T = A.ring
    assert T.order == 8 and verify_ring_axioms(T) == []
    assert not ring_flags(T).is_reduced
    # the zero divisors sit inside the envelope A u B
    a, b = amalg_zd_envelope(A)
    assert T.zd_mask & ~(a | b) == 0
    I = transfer_ideal_I(A, generate_ideal(R, [2]))
    assert I.size == 4


def test_amalgamation_over_projection():
    R1, R2 = build_zn(4), build_zn(2)
    f = enumerate_homs(R1, R2)[0]
    A = amalgamation(R1, R2, f, generate_ideal(R2, [1]))
    assert A.ring.order == 8
    assert z_of_ideal(generate_ideal(R2, [1])) == 1  # only 0 kills the nonzero element of Z2


def test_duplication_module():
    R = build_zn(4)
    A = duplication(R, generate_ideal(R, [2]))
    M = build_module(R, "self")
    AM = dup_module(A, M)
    assert verify_module_axioms(AM.module) == []
    assert AM.module.order == 8
    N = generate_submodule(M, [2])
    assert transfer_N1(AM, N).size == 4
    assert transfer_N2(AM, N).size == 4


def test_amalg_module_rejects_nonlinear_phi():
    R = build_zn(4)
    A = duplication(R, generate_ideal(R, [2]))
    M = build_module(R, "self")
    with pytest.raises(ConstructionError):
        amalg_module(A, M, M, (0, 2, 1, 3))


def test_subrings_of_product():
    S = build_product([build_zn(2), build_zn(2)])
    subs = enumerate_subrings(S)
    # the prime subring and the whole ring
    assert sorted(sub.ring.order for sub in subs) == [2, 4]
