import numpy as np
import pytest

from ringlab.ring import (
    RingError,
    annihilator_elem,
    build_product,
    build_zn,
    make_ring,
    nilradical,
    ring_flags,
    units,
    verify_ring_axioms,
    zero_divisors,
)


def test_zn_basics():
    R = build_zn(12)
    assert R.order == 12 and R.characteristic == 12
    assert units(R) == {1, 5, 7, 11}
    assert zero_divisors(R) == {0, 2, 3, 4, 6, 8, 9, 10}
    assert nilradical(R).members == [0, 6]
    assert annihilator_elem(R, 4).members == [0, 3, 6, 9]


@pytest.mark.parametrize("n", range(2, 37))
def test_zn_axioms_and_uz(n):
    R = build_zn(n)
    assert verify_ring_axioms(R) == []
    assert ring_flags(R).is_uz


def test_product_names_and_flags():
    R = build_product([build_zn(2), build_zn(2), build_zn(2)])
    assert R.order == 8
    assert R.element("(0,0,1)") == 1
    f = ring_flags(R)
    assert f.is_boolean and f.is_reduced and not f.is_domain


def test_field_and_domain():
    f = ring_flags(build_zn(7))
    assert f.is_field and f.is_domain and f.is_reduced
    assert not ring_flags(build_zn(4)).is_reduced


def test_broken_table_reports_axiom():
    R = build_zn(4)
    mul = np.array(R.mul)
    mul[2, 3] = 1  # breaks commutativity
    bad = verify_ring_axioms(make_ring(R.add, mul, 1, R.names, verify=False))
    assert any(v.axiom == "multiplicative commutativity" for v in bad)
    with pytest.raises(RingError):
        make_ring(R.add, mul, 1, R.names)


def test_zero_ring_rejected():
    with pytest.raises(RingError):
        build_zn(1)
