import math

import pytest

from isocartan.fixtures import (
    CATALOG,
    FixtureSpec,
    PoleParams,
    UnknownFamily,
    build,
    parse_params,
    parse_value,
)
from isocartan.model import HypersurfaceModel, is_proper, validate

from conftest import IDENTITY_FIXTURES, windows_for
from isocartan.cartan import verify_model


class TestBuild:
    def test_ch2_example(self):
        m = build(FixtureSpec("ComplexHyperbolicGeodesicSphere", {"n": 2, "t": 1.0}))
        (b0, b1) = m.blocks
        assert (round(b0.lam, 4), b0.mu, b0.mult) == (2.0746, -4.0, 1)
        assert (round(b1.lam, 4), b1.mu, b1.mult) == (1.3130, -1.0, 2)

    def test_cpn(self):
        m = build(FixtureSpec("ComplexProjectiveGeodesicSphere", {"n": 3, "t": 0.3}))
        assert [b.mu for b in m.blocks] == [4.0, 1.0]
        assert m.dim == 5

    def test_sphere_scaled(self):
        m = build(FixtureSpec("SphereGeodesicSphere", {"n": 4, "t": 0.5, "c": 4.0}))
        assert m.blocks[0].lam == pytest.approx(2 / math.tan(1.0))
        assert m.blocks[0].mult == 3

    def test_quaternionic_mults(self):
        m = build(FixtureSpec("QuaternionicGeodesicSphere", {"ambient": "noncompact", "n": 3, "t": 0.5}))
        assert [b.mult for b in m.blocks] == [3, 8]

    def test_cayley_marked(self):
        assert not CATALOG["op2-sphere"].verified
        assert CATALOG["cp2-sphere"].verified

    def test_tube_structure(self):
        m = build(FixtureSpec("RootDataTube", {"projection": "G2", "s0": 0.7, "vertical": "2", "d0_vertical": 1}))
        pairs = [(round(b.lam, 12), b.mu, b.mult) for b in m.blocks]
        assert pairs == [
            (round(math.tanh(0.7), 12), -1.0, 4),
            (round(2 / math.tanh(1.4), 12), -4.0, 1),
            (round(1 / 0.7, 12), 0.0, 1),
            (0.0, 0.0, 1),
        ]

    def test_pole(self):
        with pytest.raises(PoleParams):
            build(FixtureSpec("ComplexProjectiveGeodesicSphere", {"n": 2, "t": math.pi / 2}))

    def test_bad_vertical_class(self):
        with pytest.raises(PoleParams):
            build(FixtureSpec("RootDataTube", {"projection": "A2", "vertical": "3"}))

    def test_unknown_family(self):
        with pytest.raises(UnknownFamily):
            FixtureSpec("Torus")


class TestCatalog:
    @pytest.mark.parametrize("name", list(CATALOG))
    def test_valid(self, catalog, name):
        m = catalog[name]
        assert validate(m).ok
        if m.ambient.is_noncompact_like:
            assert is_proper(m)

    @pytest.mark.parametrize("name", list(CATALOG))
    def test_json_round_trip(self, catalog, name):
        m = catalog[name]
        assert HypersurfaceModel.from_json(m.to_json()) == m

    @pytest.mark.parametrize("name", IDENTITY_FIXTURES)
    def test_identity(self, catalog, name):
        m = catalog[name]
        for rep in verify_model(m, *windows_for(m)):
            assert rep.passed


class TestParams:
    def test_pi_arithmetic(self):
        assert parse_value("pi/6") == pytest.approx(math.pi / 6)

    def test_string_fallback(self):
        assert parse_value("1,2") == "1,2"
        assert parse_value("noncompact") == "noncompact"

    def test_pairs(self):
        assert parse_params(["n=3", "t=0.5"]) == {"n": 3, "t": 0.5}

    def test_bad_pair(self):
        with pytest.raises(ValueError):
            parse_params(["n3"])
