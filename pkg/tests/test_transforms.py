import pytest

from igmax.transforms import (
    RowColMap,
    Transformation,
    constant_element,
    rect_band,
    rect_band_coords,
)


def T(*images):
    return Transformation(tuple(images))


def test_images_must_be_in_range():
    with pytest.raises(ValueError):
        T(1, 4, 2)
    with pytest.raises(ValueError):
        T(0, 1)


def test_after_composes_right_to_left():
    # the product of the first and third row patterns lands on the seventh
    f = T(1, 2, 2)
    g = T(1, 1, 3)
    assert f.after(g) == T(1, 1, 2)


def test_after_identity_cases():
    g = T(2, 3, 1, 1)
    assert Transformation.identity(4).after(g) == g
    assert g.after(Transformation.identity(4)) == g


def test_after_collapses_relation_maps_to_constant():
    # two different relation maps compose to the constant at the first one's
    # even row
    f = T(2, 2, 3, 2, 2)
    g = T(4, 4, 4, 4, 5)
    assert f.after(g) == Transformation.constant(2, 5)


def test_then_is_left_to_right():
    # column maps of the third and sixth K4 patterns: 12 -> 4 -> 13
    s3 = T(1, 2, 3, 4, 1, 2, 3, 4, 1, 2, 3, 4, 1, 2, 3, 4)
    s6 = T(1, 5, 9, 13, 5, 1, 13, 9, 9, 13, 1, 5, 13, 9, 5, 1)
    composite = s3.then(s6)
    assert composite(12) == 13
    # matches the ninth pattern's column action (1,g,h) -> (1,h^-1,1),
    # which for K4 sends column (g,h) to column (h,1)
    s9 = T(*([1, 5, 9, 13] * 4))
    assert composite == s9


def test_then_identity_cases():
    f = T(3, 1, 2)
    assert f.then(Transformation.identity(3)) == f
    assert Transformation.identity(3).then(f) == f


def test_then_absorbs_into_first_factor_for_row_idempotents():
    # column maps of row idempotents fix each other's images, so the
    # composite keeps the first factor
    s2 = T(1, 2, 3, 4, 1, 2, 1, 1)
    s5 = T(1, 2, 3, 4, 1, 1, 4, 2)
    assert s2.then(s5) == s2


def test_degree_mismatch_rejected():
    with pytest.raises(ValueError):
        T(1, 2).after(T(1, 2, 3))
    with pytest.raises(ValueError):
        RowColMap(T(1), T(1)) * RowColMap(T(1, 2), T(1))


def test_mul_componentwise():
    a = RowColMap(T(1, 2, 2), T(1, 1, 3, 3))
    b = RowColMap(T(1, 1, 3), T(2, 2, 2, 4))
    p = a * b
    assert p.left == a.left.after(b.left)
    assert p.right == a.right.then(b.right)


def test_rect_band_multiplication_law():
    amb = (3, 4)
    p = constant_element(1, 2, amb) * constant_element(3, 4, amb)
    assert p == constant_element(1, 4, amb)


def test_constant_element_shape_and_roundtrip():
    e = constant_element(2, 3, (3, 16))
    assert e.left.images == (2, 2, 2)
    assert e.right.images == (3,) * 16
    assert rect_band_coords(e) == (2, 3)
    assert e.is_idempotent()


def test_constant_element_out_of_range():
    with pytest.raises(ValueError):
        constant_element(4, 1, (3, 4))
    with pytest.raises(ValueError):
        constant_element(1, 0, (3, 4))


def test_rect_band_coords_none_for_nonconstant():
    a = RowColMap(T(1, 2, 2), T(1))
    assert rect_band_coords(a) is None


def test_rect_band_enumeration():
    band = rect_band((2, 3))
    assert len(band) == 6
    assert band[0] == constant_element(1, 1, (2, 3))
    assert band[-1] == constant_element(2, 3, (2, 3))
    assert all(b.is_idempotent() for b in band)


def test_ideal_property():
    amb = (3, 4)
    a = RowColMap(T(1, 2, 2), T(2, 2, 2, 4))
    rho = constant_element(2, 3, amb)
    assert rect_band_coords(a * rho) is not None
    assert rect_band_coords(rho * a) is not None


def test_non_idempotent_relation_row_product():
    # relation map times the row map at its odd row gives a non-idempotent
    mu_left = T(2, 2, 3, 2, 2).after(T(1, 3, 3, 3, 3))
    assert mu_left == T(2, 3, 3, 3, 3)
    assert not mu_left.is_idempotent()


def test_transformation_ordering():
    assert T(1) < T(2, 1)           # degree first
    assert T(1, 2, 2) < T(1, 3, 1)  # then images
