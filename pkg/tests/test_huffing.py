import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qhuff.huffing import MOD3, HuffSpec, OffStride, deflate, extract_progression, huff
from qhuff.matrices import source_series
from qhuff.series import INF, Series


def test_huff_literal():
    s = Series(0, [1, 1, 1, 1], 10)
    h = huff(s)
    assert h.coefficients(0, 3) == [1, 0, 0, 1]
    assert h.valid_to == 10


def test_huff_negative_lead():
    s = Series(-2, [5, 6, 7, 8, 9], 10)
    h = huff(s)
    assert h.coefficient(-2) == 0
    assert h.coefficient(0) == 7
    assert h.coefficient(2) == 0


def test_huff_other_residue():
    s = Series(0, [1, 2, 3, 4], 10)
    h = huff(s, HuffSpec(2, 1))
    assert h.coefficients(0, 3) == [0, 2, 0, 4]


def test_huff_spec_validation():
    with pytest.raises(ValueError):
        HuffSpec(0, 0)
    with pytest.raises(ValueError):
        HuffSpec(3, 3)
    with pytest.raises(ValueError):
        HuffSpec(3, -1)


def test_huff_idempotent_and_linear():
    a = Series(-1, [3, 1, 4, 1, 5, 9, 2], 20)
    b = Series(0, [2, 7, 1, 8], 20)
    assert huff(huff(a)) == huff(a)
    assert huff(a + b) == huff(a) + huff(b)


def test_huff_source_constants():
    s = source_series(64)
    assert huff(s).equal_up_to(Series.constant(-1), 60)
    assert huff(s.power(2)).equal_up_to(Series.constant(-3), 60)
    assert huff(Series.constant(1)).equal_up_to(Series.constant(1), 60)


def test_deflate_literal():
    s = Series(0, [1, 0, 0, 5, 0, 0, 7], 8)
    d = deflate(s, 3)
    assert d.coefficients(0, 2) == [1, 5, 7]
    assert d.valid_to == 8 // 3


def test_deflate_negative_lead():
    s = Series(-3, [2, 0, 0, 4], 6)
    d = deflate(s, 3)
    assert d.coefficient(-1) == 2 and d.coefficient(0) == 4


def test_deflate_off_stride_names_exponent():
    s = Series(0, [1, 0, 1, 0, 2], 8)
    with pytest.raises(OffStride) as err:
        deflate(s, 3)
    assert "exponent 2" in str(err.value)


def test_deflate_infinite_bound_passes_through():
    d = deflate(Series.monomial(4, 6), 3)
    assert d == Series.monomial(4, 2)
    assert d.valid_to == INF


def test_extract_literal():
    s = Series(0, list(range(10)), 9)
    e = extract_progression(s, 3, 2)
    assert e.coefficients(0, 2) == [2, 5, 8]
    assert e.valid_to == (9 - 2) // 3


def test_extract_validates():
    with pytest.raises(ValueError):
        extract_progression(Series.one(), 0, 0)
    with pytest.raises(ValueError):
        extract_progression(Series.one(), 3, 3)


def test_extract_negative_lead():
    s = Series(-4, [1, 2, 3, 4, 5, 6, 7], 2)
    e = extract_progression(s, 3, 1)
    # exponents 1 mod 3 at or above the lead: q^-4 -> n=-2? no: -4 = 3*(-2)+2
    # picked exponents are -2 (n=-1), 1 (n=0)
    assert e.coefficient(-1) == 3
    assert e.coefficient(0) == 6


def test_extract_agrees_with_huff_then_deflate():
    s = Series(0, [3, 1, 4, 1, 5, 9, 2, 6, 5, 3], 9)
    via_pair = deflate(huff(s), 3)
    direct = extract_progression(s, 3, 0)
    assert via_pair == direct


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=12),
       st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=8))
def test_huff_multiplicative_over_pure_series(raw, pure):
    """A factor supported on multiples of 3 moves through the operator."""
    g = Series(0, raw, 60)
    f = Series(0, pure, 20).dilate(3).truncate(60)
    left = huff(f * g)
    right = f * huff(g)
    top = int(min(left.valid_to, right.valid_to, 60))
    assert left.equal_up_to(right, top)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=15),
       st.integers(min_value=-5, max_value=5))
def test_huff_splits_into_residue_classes(raw, lead):
    s = Series(lead, raw, 40)
    total = Series.zero()
    for r in range(3):
        total = total + huff(s, HuffSpec(3, r))
    assert total.equal_up_to(s, 40)
