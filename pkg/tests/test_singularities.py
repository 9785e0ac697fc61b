from fractions import Fraction
from math import gcd

import pytest

from config import CLASSIFY_T_MAX_ORDER
from src.core.singularities import (
    CyclicQuotientType,
    TFactorization,
    classify_T,
    milnor_number_of_smoothing,
    normalize,
    qg_deformation_dim,
    resolve,
    t_annotations,
)
from src.core.exactmath import determinant
from src.core.hj import chain_matrix, reverse
from src.utils.errors import NonIsolatedFixedLocus, NotTType, SmoothInput


@pytest.mark.parametrize(
    "r, a, b, q",
    [
        (4, 1, 1, 1),
        (4, 1, 3, 3),
        (4, 3, 1, 3),
        (4, 3, 3, 1),
        (9, 2, 4, 2),
        (7, 3, 5, 4),
    ],
)
def test_normalize(r, a, b, q):
    t = normalize(r, a, b)
    assert (t.r, t.q) == (r, q)
    assert str(t) == f"1/{r}(1,{q})"


def test_normalize_smooth():
    t = normalize(1, 0, 0)
    assert t.is_smooth
    assert str(t) == "smooth"


@pytest.mark.parametrize("r, a, b", [(4, 2, 1), (4, 1, 2), (6, 3, 1)])
def test_normalize_non_isolated(r, a, b):
    with pytest.raises(NonIsolatedFixedLocus):
        normalize(r, a, b)


@pytest.mark.parametrize(
    "r, q, label",
    [
        (4, 1, "T(d=1,n=2,a=1)"),
        (4, 3, "A_3"),
        (9, 2, "T(d=1,n=3,a=1)"),
        (9, 5, "T(d=1,n=3,a=2)"),
        (8, 3, "T(d=2,n=2,a=1)"),
        (18, 5, "T(d=2,n=3,a=1)"),
        (2, 1, "A_1"),
        (5, 2, "not_class_t"),
        (7, 3, "not_class_t"),
    ],
)
def test_classify_T(r, q, label):
    assert str(classify_T(normalize(r, 1, q))) == label


def test_classify_smooth():
    assert classify_T(normalize(1, 0, 0)).kind == "smooth"


def test_rdp_has_no_t_annotation():
    for r in range(2, 60):
        assert classify_T(normalize(r, 1, r - 1)).annotations == ()


def test_t_factorization_is_unique():
    for r in range(2, 150):
        for q in range(1, r):
            if gcd(r, q) == 1:
                assert len(t_annotations(normalize(r, 1, q))) <= 1


def test_t_annotations_roundtrip():
    for t in t_annotations(normalize(50, 1, 9)):
        assert (t.r, t.q) == (50, 9)
    assert t_annotations(normalize(50, 1, 9)) == [TFactorization(d=2, n=5, a=1)]


def test_t_annotations_guard():
    huge = CyclicQuotientType(r=CLASSIFY_T_MAX_ORDER + 1, a=1, b=1, q=1)
    with pytest.raises(ValueError):
        t_annotations(huge)


def test_t_factorization_validation():
    with pytest.raises(ValueError):
        TFactorization(d=1, n=4, a=2)
    with pytest.raises(ValueError):
        TFactorization(d=0, n=2, a=1)


def test_resolve_wahl_point():
    data = resolve(normalize(4, 1, 1))
    assert data.string.terms == (4,)
    assert data.discrepancies == (Fraction(-1, 2),)
    assert data.delta_K2 == -1
    assert data.delta_chi == 1


def test_resolve_a3():
    data = resolve(normalize(4, 1, 3))
    assert data.string.terms == (2, 2, 2)
    assert data.discrepancies == (0, 0, 0)
    assert data.delta_K2 == 0
    assert data.delta_chi == 3


def test_resolve_1_9_1_2():
    data = resolve(normalize(9, 1, 2))
    assert data.string.terms == (5, 2)
    assert data.discrepancies == (Fraction(-2, 3), Fraction(-1, 3))
    assert data.delta_K2 == -2


def test_wahl_points_lose_k_from_K2():
    # for d = 1 the resolution lowers K^2 by the number of exceptional curves
    for n in range(2, 12):
        for a in range(1, n):
            if gcd(a, n) == 1:
                data = resolve(normalize(n * n, 1, n * a - 1))
                assert data.delta_K2 == -data.delta_chi


def test_discrepancies_in_klt_range():
    for r in range(2, 40):
        for q in range(1, r):
            if gcd(r, q) == 1:
                assert all(-1 < x <= 0 for x in resolve(normalize(r, 1, q)).discrepancies)


def test_resolve_smooth():
    with pytest.raises(SmoothInput):
        resolve(normalize(1, 0, 0))


def test_qg_deformation_dim():
    assert qg_deformation_dim(classify_T(normalize(8, 1, 3))) == 2
    assert milnor_number_of_smoothing(classify_T(normalize(8, 1, 3))) == 1
    assert milnor_number_of_smoothing(classify_T(normalize(4, 1, 1))) == 0
    with pytest.raises(NotTType):
        qg_deformation_dim(classify_T(normalize(4, 1, 3)))
    with pytest.raises(NotTType):
        qg_deformation_dim(classify_T(normalize(5, 1, 2)))


def test_proportional_weights_give_one_germ():
    assert normalize(4, 1, 1) == normalize(4, 3, 3)
    assert normalize(4, 1, 3) == normalize(4, 3, 1)
    assert len({normalize(7, a, 2 * a) for a in range(1, 7)}) == 1
    assert (normalize(9, 2, 4).a, normalize(9, 2, 4).b) == (1, 2)


def _coprime_pairs(limit):
    return [(r, q) for r in range(2, limit) for q in range(1, r) if gcd(r, q) == 1]


def test_swapped_coordinates_give_reversed_resolution():
    for r, q in _coprime_pairs(40):
        data = resolve(normalize(r, 1, q))
        swapped = resolve(normalize(r, q, 1))
        assert swapped.string == reverse(data.string)
        assert swapped.delta_K2 == data.delta_K2
        assert swapped.delta_chi == data.delta_chi


def test_resolution_chain_determinant_is_group_order():
    for r, q in _coprime_pairs(40):
        assert abs(determinant(chain_matrix(resolve(normalize(r, 1, q)).string))) == r


def test_discrepancies_vanish_only_for_double_points():
    for r, q in _coprime_pairs(40):
        data = resolve(normalize(r, 1, q))
        assert all(x == 0 for x in data.discrepancies) == classify_T(normalize(r, 1, q)).is_rdp
        assert (data.delta_K2 == 0) == (q == r - 1)
