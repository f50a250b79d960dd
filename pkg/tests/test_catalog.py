"""Preset grammar, kernels, matrix fields, symbols, test functions, and the
field algebra."""

import numpy as np
import pytest

from hauscomm import catalog
from hauscomm.catalog import (
    dilate,
    linear_combination,
    preset_kernel,
    preset_matrix_field,
    preset_symbol,
    preset_testfn,
    product,
    scale,
)
from hauscomm.errors import CatalogMissError, InvalidInputError


def test_unknown_presets_list_alternatives():
    with pytest.raises(CatalogMissError) as exc:
        preset_kernel("annulus")
    assert "annulus" in str(exc.value)
    with pytest.raises(CatalogMissError) as exc:
        preset_kernel("frobnicator(1)")
    assert "annulus(a,b)" in " ".join(exc.value.valid)
    with pytest.raises(CatalogMissError):
        preset_matrix_field("spiral(1)")
    with pytest.raises(CatalogMissError):
        preset_symbol("nope")
    with pytest.raises(CatalogMissError):
        preset_testfn("nope(3)")


def test_annulus_kernel_support():
    k = preset_kernel("annulus(1,2)")
    assert k.r_lo == 1.0 and k.r_hi == 2.0
    pts = np.array([[0.5], [1.5], [-1.5], [2.5]])
    assert list(k.evaluate(pts)) == [0.0, 1.0, 1.0, 0.0]


def test_power_kernel_weights_base():
    k = preset_kernel("power(-0.5,annulus(1,4))")
    assert k.r_lo == 1.0 and k.r_hi == 4.0
    assert np.isclose(k([2.0]), 2.0 ** 0.5)
    assert k([5.0]) == 0.0
    assert k.integrability == "power-law"
    assert k.radial


def test_halfline_kernel_is_one_sided():
    k = preset_kernel("halfline(0,1)")
    assert k([0.5]) == 1.0
    assert k([-0.5]) == 0.0
    assert not k.radial
    with pytest.raises(InvalidInputError):
        k.evaluate(np.zeros((2, 2)))


def test_bump_kernel_smooth_compact():
    k = preset_kernel("bump(1,2)")
    assert k([1.0]) == 0.0 and k([2.0]) == 0.0
    assert k([1.5]) == pytest.approx(np.exp(-1.0))


def test_zero_kernel():
    k = preset_kernel("zero")
    assert np.all(k.evaluate(np.array([[1.2], [1.7]])) == 0.0)


def test_radial_field_action():
    fld = preset_matrix_field("radial")
    ys = np.array([[0.5], [2.0]])
    out = fld.apply_to(np.array([3.0]), ys)
    assert np.allclose(out[:, 0], [6.0, 1.5])
    assert np.allclose(fld.op_norm_at(ys), [2.0, 0.5])
    assert np.allclose(fld.absdet_inv_at(ys), [0.5, 2.0])
    assert fld.direction_free
    assert fld.preimage_radii(0.5, 3.0) == (6.0,)


def test_dilation_field_action():
    fld = preset_matrix_field("dilation(2)")
    ys = np.ones((3, 2))
    out = fld.apply_to(np.array([1.0, -1.0]), ys)
    assert out.shape == (3, 2)
    assert np.allclose(out, [[2.0, -2.0]] * 3)
    assert np.allclose(fld.op_norm_at(ys), 2.0)
    assert np.allclose(fld.absdet_inv_at(ys), 0.25)


def test_shear_and_rotation_fields():
    fld = preset_matrix_field("shear(1)")
    phi = (1 + np.sqrt(5)) / 2
    assert np.isclose(fld.op_norm_at(np.ones((1, 2)))[0], phi, rtol=1e-10)
    rot = preset_matrix_field("rotation-scale(0.5,0.7853981633974483)")
    assert np.isclose(rot.op_norm_at(np.ones((1, 2)))[0], 0.5, rtol=1e-10)
    assert np.isclose(rot.absdet_inv_at(np.ones((1, 2)))[0], 4.0, rtol=1e-10)


def test_batched_apply_to_shapes():
    for name in ("radial", "dilation(3)", "shear(0.5)"):
        fld = preset_matrix_field(name)
        n = 2
        ys = np.random.default_rng(0).uniform(1, 2, (5, n))
        xs = np.random.default_rng(1).uniform(-1, 1, (7, n))
        out = fld.apply_to(xs, ys)
        assert out.shape == (5, 7, n)
        single = fld.apply_to(xs[0], ys)
        assert np.allclose(out[:, 0, :], single)


def test_symbols():
    b = preset_symbol("power-beta(0.5)")
    assert b([4.0]) == 2.0
    assert "lipschitz_beta" in b.tags
    h = preset_symbol("halfspace")
    assert h([1.0]) != h([-1.0])
    lb = preset_symbol("log-bump")
    assert np.isclose(lb([np.e]), 1.0)
    c = preset_symbol("constant(2.5)")
    assert c([9.0]) == 2.5


def test_testfns():
    f = preset_testfn("shell-indicator(0)")
    assert f([0.75]) == 1.0 and f([1.5]) == 0.0
    assert 0.5 in f.breakpoints and 1.0 in f.breakpoints
    g = preset_testfn("ball-indicator(2)")
    assert g([1.0, 1.0]) == 1.0 and g([2.0, 2.0]) == 0.0
    one = preset_testfn("one")
    assert np.all(one.evaluate(np.zeros((4, 3))) == 1.0)
    d = preset_testfn("power-decay(0.75)")
    assert d([1.0]) > d([4.0]) > 0.0


def test_dilate_scales_argument_and_breakpoints():
    f = preset_testfn("ball-indicator(1)")
    g = dilate(f, 4.0)
    assert g([0.2]) == 1.0 and g([0.3]) == 0.0
    assert np.isclose(min(g.breakpoints), 0.25)


def test_scale_product_linear_combination():
    f = preset_testfn("ball-indicator(1)")
    b = preset_symbol("power-beta(0.5)")
    assert scale(f, -2.0)([0.5]) == -2.0
    assert product(b, f)([0.25]) == 0.5
    h = linear_combination([1.0, 2.0], [preset_testfn("shell-indicator(0)"),
                                        preset_testfn("shell-indicator(1)")])
    assert h([0.75]) == 1.0 and h([1.5]) == 2.0 and h([3.0]) == 0.0
    assert set(h.breakpoints) >= {0.5, 1.0, 2.0}


def test_scalar_field_call_is_scalar():
    f = preset_testfn("bump")
    v = f([0.0, 0.0])
    assert isinstance(v, float) and v == 1.0
