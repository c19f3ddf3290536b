from itertools import product

import pytest
from hypothesis import given, strategies as st

from bordered_twist.algebra import (CHORDS, IDEMPOTENTS, Alg, DDCoeff, alg_d, alg_mul, dd_mul,
                                    elements_between, mul, mul_seq, parse_alg)

R1, R2, R3, R12, R23, R123, I0, I1 = (Alg.R1, Alg.R2, Alg.R3, Alg.R12, Alg.R23, Alg.R123,
                                      Alg.I0, Alg.I1)

elements = st.sampled_from(list(Alg))


def test_nonzero_chord_products():
    assert alg_mul(R1, R2) == {R12}
    assert alg_mul(R2, R3) == {R23}
    assert alg_mul(R1, R23) == {R123}
    assert alg_mul(R12, R3) == {R123}


def test_all_other_chord_products_vanish():
    nonzero = {(R1, R2), (R2, R3), (R1, R23), (R12, R3)}
    for a, b in product(CHORDS, CHORDS):
        if (a, b) not in nonzero:
            assert alg_mul(a, b) == frozenset(), (a, b)


def test_reverse_order_vanishes():
    assert alg_mul(R2, R1) == frozenset()
    assert alg_mul(R3, R2) == frozenset()


@pytest.mark.parametrize("a", list(Alg))
def test_idempotents_act_as_units(a):
    assert alg_mul(Alg.idem(a.source), a) == {a}
    assert alg_mul(a, Alg.idem(a.target)) == {a}
    other_left, other_right = Alg.idem(1 - a.source), Alg.idem(1 - a.target)
    assert alg_mul(other_left, a) == frozenset()
    assert alg_mul(a, other_right) == frozenset()


def test_idempotents_sum_to_unit():
    for a in Alg:
        total = frozenset()
        for e in IDEMPOTENTS:
            total ^= alg_mul(e, a)
        assert total == {a}


def test_associativity_exhaustive():
    for a, b, c in product(Alg, repeat=3):
        ab = mul(a, b)
        bc = mul(b, c)
        left = mul(ab, c) if ab is not None else None
        right = mul(a, bc) if bc is not None else None
        assert left == right, (a, b, c)


def test_chord_ends():
    assert [(c.source, c.target) for c in CHORDS] == [(0, 1), (1, 0), (0, 1), (0, 0), (1, 1), (0, 1)]


def test_differential_is_zero():
    assert all(alg_d(a) == frozenset() for a in Alg)


def test_mul_seq():
    assert mul_seq([R1, R2, R3]) == R123
    assert mul_seq([R3, R2]) is None


def test_elements_between():
    assert set(elements_between(0, 1)) == {R1, R3, R123}
    assert set(elements_between(1, 0)) == {R2}
    assert set(elements_between(0, 0)) == {I0, R12}
    assert set(elements_between(1, 1)) == {I1, R23}


def test_dd_mul_examples():
    assert dd_mul(DDCoeff(R1, R2), DDCoeff(R2, R3)) == {DDCoeff(R12, R23)}
    assert dd_mul(DDCoeff(R1, R3), DDCoeff(R2, I1)) == {DDCoeff(R12, R3)}
    assert dd_mul(DDCoeff(R1, R3), DDCoeff(R2, R2)) == frozenset()
    assert dd_mul(DDCoeff(R2, R2), DDCoeff(R1, R3)) == frozenset()


@given(elements, elements, elements, elements)
def test_dd_mul_is_componentwise(a, b, c, d):
    left, right = alg_mul(a, c), alg_mul(b, d)
    expected = frozenset(DDCoeff(x, y) for x in left for y in right)
    assert dd_mul(DDCoeff(a, b), DDCoeff(c, d)) == expected


def test_parse_alg():
    assert parse_alg("rho123") == R123
    assert parse_alg("sigma2") == R2
    assert parse_alg("i1") == I1
    with pytest.raises(ValueError):
        parse_alg("rho13")
