import random
from fractions import Fraction

import pytest

from src.core.surfaces import (
    FourManifoldInvariants,
    HirzebruchClass,
    canonical_class,
    det_twisted_cotangent,
    double_cover,
    fibre,
    genus_bidegree,
    genus_smooth_member,
    hirzebruch_invariants,
    intersect,
    is_effective,
    negative_section,
    p1xp1_class,
    projective_plane_double_cover,
    recognize_en,
    split_preimage,
)
from src.utils.errors import IneffectiveBranch, MeetsBranch, MixedSurfaces


@pytest.mark.parametrize("e", [0, 1, 4, 7])
def test_intersection_numbers(e):
    C0, f = negative_section(e), fibre(e)
    assert intersect(C0, C0) == -e
    assert intersect(C0, f) == 1
    assert intersect(f, f) == 0
    assert intersect(canonical_class(e), canonical_class(e)) == 8


def test_class_arithmetic():
    C0, f = negative_section(4), fibre(4)
    assert 2 * C0 + 8 * f == HirzebruchClass(e=4, a=2, b=8)
    assert C0 - f == HirzebruchClass(e=4, a=1, b=-1)
    with pytest.raises(MixedSurfaces):
        intersect(C0, fibre(3))
    with pytest.raises(ValueError):
        HirzebruchClass(e=-1, a=0, b=1)


def test_is_effective():
    assert is_effective(HirzebruchClass(e=4, a=0, b=0))
    assert is_effective(HirzebruchClass(e=4, a=2, b=8))
    assert not is_effective(HirzebruchClass(e=4, a=0, b=-2))


@pytest.mark.parametrize(
    "x, genus",
    [
        (HirzebruchClass(e=4, a=0, b=1), 0),
        (HirzebruchClass(e=4, a=1, b=0), 0),
        (HirzebruchClass(e=4, a=2, b=8), 3),
        (HirzebruchClass(e=4, a=4, b=16), 21),
        (HirzebruchClass(e=0, a=2, b=2), 1),
    ],
)
def test_genus_smooth_member(x, genus):
    assert genus_smooth_member(x) == genus


def test_genus_on_p1xp1_agrees_with_bidegree_formula():
    for a in range(1, 7):
        for b in range(1, 7):
            assert genus_smooth_member(p1xp1_class(a, b)) == genus_bidegree(a, b)
    assert genus_bidegree(4, 4) == 9
    with pytest.raises(ValueError):
        genus_bidegree(0, 3)


def test_invariants_derived_fields():
    m = FourManifoldInvariants(chi=48, sigma=-32)
    assert (m.c1sq, m.chi_h, m.b2, m.bplus, m.bminus) == (0, 4, 46, 7, 39)
    assert m.noether_holds()
    assert m.consistency_issues() == []
    assert m.notes == ("b1 = 0 assumed",)


def test_consistency_trap():
    # integral chi_h, but b+ comes out negative
    m = FourManifoldInvariants(chi=3, sigma=-35)
    assert m.chi_h == -8
    assert m.bplus == -17
    assert any("negative" in issue for issue in m.consistency_issues())
    assert FourManifoldInvariants(chi=10, sigma=-4).consistency_issues()[0].startswith("chi_h")


def test_double_cover_of_sigma4_is_e4():
    cover = double_cover(hirzebruch_invariants(4), HirzebruchClass(e=4, a=2, b=8))
    assert (cover.chi, cover.sigma, cover.c1sq, cover.chi_h) == (48, -32, 0, 4)
    assert recognize_en(cover) == 4


def test_double_cover_of_quadric():
    cover = double_cover(hirzebruch_invariants(0), HirzebruchClass(e=0, a=1, b=1))
    assert (cover.chi, cover.c1sq, cover.chi_h) == (8, 4, 1)
    assert cover.sigma == -4


def test_double_cover_with_empty_branch():
    cover = double_cover(hirzebruch_invariants(2), HirzebruchClass(e=2, a=0, b=0))
    assert (cover.chi, cover.sigma) == (8, 0)
    assert any("disconnected" in note for note in cover.notes)


def test_double_cover_ineffective_branch():
    with pytest.raises(IneffectiveBranch):
        double_cover(hirzebruch_invariants(4), HirzebruchClass(e=4, a=1, b=-3))


@pytest.mark.parametrize(
    "degree, chi, sigma, c1sq, chi_h",
    [
        (2, 4, 0, 8, 1),
        (6, 24, -16, 0, 2),
        (8, 46, -30, 2, 4),
    ],
)
def test_projective_plane_double_cover(degree, chi, sigma, c1sq, chi_h):
    cover = projective_plane_double_cover(degree)
    assert (cover.chi, cover.sigma, cover.c1sq, cover.chi_h) == (chi, sigma, c1sq, chi_h)


@pytest.mark.parametrize("degree", [0, 3, -2])
def test_projective_plane_double_cover_needs_even_degree(degree):
    with pytest.raises(IneffectiveBranch):
        projective_plane_double_cover(degree)


def test_split_preimage_of_negative_section():
    branch = HirzebruchClass(e=4, a=4, b=16)
    pre = split_preimage(negative_section(4), branch)
    assert (pre.components, pre.each_selfint) == (2, -4)
    with pytest.raises(MeetsBranch):
        split_preimage(fibre(4), branch)


def test_det_twisted_cotangent():
    d = HirzebruchClass(e=4, a=1, b=2)
    assert det_twisted_cotangent(4, d) == HirzebruchClass(e=4, a=0, b=-2)
    assert not is_effective(det_twisted_cotangent(4, d))


@pytest.mark.parametrize(
    "chi, sigma, n",
    [
        (12, -8, 1),
        (24, -16, 2),
        (48, -32, 4),
        (46, -30, None),
        (0, 0, None),
        (36, -20, None),
    ],
)
def test_recognize_en(chi, sigma, n):
    assert recognize_en(FourManifoldInvariants(chi=chi, sigma=sigma)) == n


def test_invariants_are_exact():
    m = FourManifoldInvariants(chi=3, sigma=1)
    assert m.chi_h == Fraction(1)
    assert m.c1sq == 9


def test_intersection_is_symmetric_and_bilinear():
    rng = random.Random(17)
    for _ in range(100):
        e = rng.randint(0, 6)
        x, y, z = (HirzebruchClass(e=e, a=rng.randint(-5, 5), b=rng.randint(-5, 5)) for _ in range(3))
        k = rng.randint(-4, 4)
        assert intersect(x, y) == intersect(y, x)
        assert intersect(x + z, y) == intersect(x, y) + intersect(z, y)
        assert intersect(k * x, y) == k * intersect(x, y)
