import random
from fractions import Fraction

import pytest
import sympy as sp

from src.core.smoothing import (
    Y,
    TFamilySpec,
    action_free,
    action_preserves,
    central_fibre_type,
    family_polynomial,
    fiber_smooth,
    smoothing_report,
)
from src.utils.errors import InvalidSpec


def test_wahl_family():
    report = smoothing_report(TFamilySpec.of(1, 2, 1, [1]))
    assert str(report.central_fibre) == "1/4(1,1)"
    assert str(report.classification) == "T(d=1,n=2,a=1)"
    assert report.resolution.string.terms == (4,)
    assert report.action_preserves
    assert report.fiber_smooth
    assert report.action_free
    assert (report.milnor_number, report.k) == (0, 1)
    assert (report.delta_chi, report.delta_sigma) == (-1, 1)
    assert report.cpq.matches == ((2, 1),)


def test_degenerate_parameter():
    spec = TFamilySpec.of(1, 2, 1, [0])
    assert not fiber_smooth(spec)
    assert not action_free(spec)


def test_d_two_family():
    report = smoothing_report(TFamilySpec.of(2, 2, 1, [1, 0]))
    assert str(report.central_fibre) == "1/8(1,3)"
    assert report.resolution.string.terms == (3, 3)
    assert report.fiber_smooth and report.action_free
    assert (report.milnor_number, report.k) == (1, 2)
    assert (report.delta_chi, report.delta_sigma) == (-1, 1)
    assert report.cpq.matches == ()


def test_double_root_family():
    # y^4 - 2 y^2 + 1 = (y^2 - 1)^2
    spec = TFamilySpec.of(2, 2, 1, [1, -2])
    assert not fiber_smooth(spec)
    assert action_free(spec)


def test_both_cpq_conventions_match_for_n_three():
    report = smoothing_report(TFamilySpec.of(1, 3, 1, [Fraction(1, 2)]))
    assert report.resolution.string.terms == (5, 2)
    assert report.cpq.candidates == ((3, 1), (3, 2))
    assert report.cpq.matches == ((3, 1), (3, 2))


def test_a_is_read_modulo_n():
    assert central_fibre_type(TFamilySpec.of(1, 3, 4, [1])) == central_fibre_type(TFamilySpec.of(1, 3, 1, [1]))


def test_family_polynomial():
    p = family_polynomial(TFamilySpec.of(2, 3, 1, [2, Fraction(-1, 3)]))
    assert p.as_expr() == Y**6 - sp.Rational(1, 3) * Y**3 + 2


@pytest.mark.parametrize(
    "d, n, a, t",
    [
        (0, 2, 1, []),
        (1, 1, 1, [1]),
        (1, 4, 2, [1]),
        (2, 2, 1, [1]),
    ],
)
def test_invalid_family(d, n, a, t):
    with pytest.raises(InvalidSpec):
        TFamilySpec.of(d, n, a, t)


def test_fiber_smooth_agrees_with_resultant():
    rng = random.Random(20240601)
    for _ in range(30):
        d = rng.randint(1, 3)
        n = rng.randint(2, 4)
        t = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(d)]
        spec = TFamilySpec.of(d, n, 1, t)
        p = family_polynomial(spec)
        assert fiber_smooth(spec) == (p.resultant(p.diff()) != 0)
        assert action_preserves(spec)
