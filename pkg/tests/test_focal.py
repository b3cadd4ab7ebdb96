import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isocartan.focal import (
    EmptyWindow,
    NotProper,
    PoleError,
    block_radii_complex,
    block_radii_real,
    default_windows,
    focal_radii,
    focal_radii_complex,
    focal_radii_real,
    jacobi_coeff,
    jacobi_coeff_prime,
    tau,
    tau_hat,
)
from isocartan.model import AmbientKind, CurvatureBlock, HypersurfaceModel


def nc(*blocks):
    return HypersurfaceModel(AmbientKind.noncompact(), tuple(CurvatureBlock(*b) for b in blocks))


class TestKernels:
    def test_tau_values(self):
        assert tau(2 * math.pi / 3, 1.0) == pytest.approx(-1 / math.sqrt(3), abs=1e-14)
        assert tau(0.5, 0.0) == 2.0

    def test_tau_hat_values(self):
        z = complex(1, math.pi / 2)
        assert tau_hat(z, -1.0) == pytest.approx(math.tanh(1), abs=1e-14)
        assert tau_hat(2.0, 0.0) == 0.5

    def test_tau_pole(self):
        with pytest.raises(PoleError):
            tau(math.pi, 1.0)

    def test_tau_hat_pole(self):
        with pytest.raises(PoleError):
            tau_hat(1j * math.pi, -1.0)

    def test_domains(self):
        with pytest.raises(ValueError):
            tau(1.0, -1.0)
        with pytest.raises(ValueError):
            tau_hat(1.0, 1.0)

    def test_vectorised_coeff(self):
        s = np.linspace(0, 1, 5)
        assert jacobi_coeff(s, 2.0, -1.0).shape == (5,)
        assert jacobi_coeff(0.0, 2.0, -1.0) == 1.0
        assert jacobi_coeff_prime(0.0, 2.0, -1.0) == -2.0

    @pytest.mark.parametrize("lam,mu", [(0.7, 4.0), (-1.3, 1.0), (2.0, 0.0), (3.0, -4.0), (0.2, -1.0)])
    def test_derivative(self, lam, mu):
        s, h = 0.37 + 0.2j, 1e-6
        fd = (jacobi_coeff(s + h, lam, mu) - jacobi_coeff(s - h, lam, mu)) / (2 * h)
        assert abs(fd - jacobi_coeff_prime(s, lam, mu)) < 1e-8


class TestClosedForms:
    def test_sphere_radius(self):
        # lam = cot t in S^n: first focal radius t
        assert block_radii_real(1 / math.tan(0.4), 1.0, (0, math.pi)) == pytest.approx([0.4])

    def test_real_lattice(self):
        rs = block_radii_real(1.0, 1.0, (0, 3 * math.pi))
        assert rs == pytest.approx([math.pi / 4 + k * math.pi for k in range(3)])

    def test_flat(self):
        assert block_radii_real(2.0, 0.0, (0, 5)) == [0.5]
        assert block_radii_real(0.0, 0.0, (0, 5)) == []

    def test_window_is_open_closed(self):
        assert block_radii_real(1.0, 0.0, (1.0, 2.0)) == []
        assert block_radii_real(1.0, 0.0, (0.0, 1.0)) == [1.0]

    def test_ch2_radii(self):
        lam = 1 / math.tanh(1)
        rs = block_radii_complex(lam, -1.0, (0, 3), (-2 * math.pi, 2 * math.pi))
        assert [r.imag for r in rs] == pytest.approx([k * math.pi for k in range(-2, 3)])
        assert all(r.real == pytest.approx(1.0) for r in rs)

    def test_tanh_branch(self):
        rs = block_radii_complex(math.tanh(1), -1.0, (0, 3), (0, math.pi))
        assert rs == [pytest.approx(complex(1, math.pi / 2))]

    def test_non_proper_block_has_none(self):
        assert block_radii_complex(1.0, -1.0, (0, 3), (-9, 9)) == []

    @pytest.mark.parametrize("lam,mu", [(1.7, 1.0), (-0.4, 4.0), (3.0, 9.0)])
    def test_real_radii_are_zeros(self, lam, mu):
        for r in block_radii_real(lam, mu, (0, 10)):
            assert abs(jacobi_coeff(r, lam, mu)) < 1e-12

    @pytest.mark.parametrize("lam,mu", [(1.5, -1.0), (0.3, -1.0), (-0.3, -4.0), (-5.0, -4.0), (2.0, 0.0)])
    def test_complex_radii_are_zeros(self, lam, mu):
        for r in block_radii_complex(lam, mu, (-5, 5), (-7, 7)):
            assert abs(jacobi_coeff(r, lam, mu)) < 1e-12
            assert tau_hat(r, mu) == pytest.approx(lam, abs=1e-9)


class TestModelRadii:
    def test_merge_shared_radius(self):
        # CH^2 sphere: both blocks focal at r = 1
        m = nc((2 / math.tanh(2), -4.0, 1), (1 / math.tanh(1), -1.0, 2))
        rs = focal_radii_complex(m, (0, 3), (0, 0))
        assert len(rs) == 1
        assert rs[0].blocks == (0, 1) and rs[0].multiplicity == 3

    def test_compact_dispatch(self):
        m = HypersurfaceModel(AmbientKind.compact(), (CurvatureBlock(1.0, 1.0, 2),))
        rs = focal_radii(m, (0, 2 * math.pi))
        assert [r.value.real for r in rs] == pytest.approx([math.pi / 4, 5 * math.pi / 4])
        assert all(r.is_real for r in rs)

    def test_empty_window(self):
        with pytest.raises(EmptyWindow):
            focal_radii_complex(nc((0.0, 0.0, 1)), (0, 3), (-1, 1))

    def test_strict_non_proper(self):
        with pytest.raises(NotProper) as exc:
            focal_radii_complex(nc((2.0, -1.0, 1), (1.0, -1.0, 1)), strict=True)
        assert exc.value.blocks == (1,)

    def test_non_proper_skipped(self):
        rs = focal_radii_complex(nc((2.0, -1.0, 1), (1.0, -1.0, 1)), (0, 3), (-1, 1))
        assert all(r.blocks == (0,) for r in rs)

    def test_real_rejects_noncompact(self):
        with pytest.raises(ValueError):
            focal_radii_real(nc((2.0, -1.0, 1)))

    def test_default_windows_cover_radii(self):
        m = nc((1.0001, -1.0, 1))
        (lo, hi), _ = default_windows(m)
        assert hi >= math.atanh(1 / 1.0001)

    def test_to_dict(self):
        m = nc((2.0, 0.0, 3))
        d = focal_radii(m)[0].to_dict()
        assert d == {"re": 0.5, "im": 0.0, "mult": 3, "blocks": [0]}


betas = st.floats(0.2, 3.0)
lams = st.floats(-6, 6).filter(lambda x: abs(x) > 1e-3)


@settings(max_examples=300, deadline=None)
@given(b=betas, lam=lams)
def test_conjugation_symmetry(b, lam):
    if abs(abs(lam) - b) < 1e-6:
        return
    rs = block_radii_complex(lam, -b * b, (-10, 10), (-8, 8))
    keys = sorted((round(r.real, 9), round(r.imag, 9)) for r in rs)
    conj = sorted((round(r.real, 9), round(-r.imag, 9)) for r in rs)
    assert keys == conj


@settings(max_examples=300, deadline=None)
@given(z=st.complex_numbers(min_magnitude=0.1, max_magnitude=5), e=st.integers(4, 12))
def test_tau_hat_limit(z, e):
    s = -(10.0 ** -e)
    assert abs(tau_hat(z, s) - 1 / z) <= abs(z) * abs(s) + 1e-12


@settings(max_examples=300, deadline=None)
@given(r=st.floats(0.1, 1.4), e=st.integers(4, 12))
def test_tau_limit(r, e):
    s = 10.0 ** -e
    assert abs(tau(r, s) - 1 / r) <= r * s + 1e-12
