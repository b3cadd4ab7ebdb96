import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isocartan.model import (
    AmbientKind,
    CurvatureBlock,
    HypersurfaceModel,
    ModelError,
    WrongAmbient,
    is_proper,
    validate,
)


def nc(*blocks):
    return HypersurfaceModel(AmbientKind.noncompact(), tuple(CurvatureBlock(*b) for b in blocks))


class TestAmbient:
    def test_kinds(self):
        assert AmbientKind.compact().is_compact_like
        assert AmbientKind.noncompact().is_noncompact_like
        assert AmbientKind.spaceform(1).is_compact_like
        assert AmbientKind.spaceform(0).is_noncompact_like
        assert AmbientKind.spaceform(-1).is_noncompact_like

    def test_spaceform_needs_c(self):
        with pytest.raises(ModelError):
            AmbientKind("spaceform")

    def test_unknown_kind(self):
        with pytest.raises(ModelError, match="ambient.kind"):
            AmbientKind("flat")


class TestValidate:
    def test_wrong_mu_sign(self):
        rep = validate(HypersurfaceModel(AmbientKind.compact(), (CurvatureBlock(1.0, -1.0, 2),)))
        assert not rep.ok and "mu sign" in rep.violations[0]

    def test_spaceform_mismatch(self):
        rep = validate(HypersurfaceModel(AmbientKind.spaceform(1.0), (CurvatureBlock(1.0, 2.0, 2),)))
        assert "differs from space form curvature" in rep.violations[0]

    def test_bad_mult(self):
        rep = validate(nc((1.0, -1.0, 0)))
        assert any("mult" in v for v in rep.violations)

    def test_duplicates_merge(self):
        rep = validate(nc((2.0, -1.0, 1), (3.0, -4.0, 1), (2.0, -1.0, 2)))
        assert rep.ok
        assert rep.model.blocks == (CurvatureBlock(2.0, -1.0, 3), CurvatureBlock(3.0, -4.0, 1))
        assert rep.warnings

    def test_near_duplicate_warns(self):
        rep = validate(nc((2.0, -1.0, 1), (2.0 + 1e-14, -1.0, 1)))
        assert any("near-duplicate" in w for w in rep.warnings)
        assert len(rep.model.blocks) == 2

    def test_expected_dim(self):
        assert not validate(nc((2.0, -1.0, 3)), expected_dim=4).ok

    def test_empty(self):
        assert not validate(nc()).ok


class TestProper:
    def test_witness(self):
        rep = is_proper(nc((2.0, -1.0, 1), (-2.0, -4.0, 1), (0.0, 0.0, 1)))
        assert not rep.proper and rep.witnesses == (1,)

    def test_proper(self):
        assert is_proper(nc((1 / math.tanh(1), -1.0, 2)))

    def test_compact_rejected(self):
        with pytest.raises(WrongAmbient):
            is_proper(HypersurfaceModel(AmbientKind.compact(), (CurvatureBlock(1.0, 1.0, 1),)))


class TestJson:
    def test_field_named_on_error(self):
        bad = {"ambient": {"kind": "noncompact"}, "blocks": [{"lambda": 1, "mu": "x", "mult": 1}]}
        with pytest.raises(ModelError) as exc:
            HypersurfaceModel.from_dict(bad)
        assert exc.value.field == "blocks[0].mu"

    def test_missing_key(self):
        with pytest.raises(ModelError, match=r"blocks\[1\].mult"):
            HypersurfaceModel.from_dict(
                {"ambient": {"kind": "compact"}, "blocks": [{"lambda": 1, "mu": 1, "mult": 1}, {"lambda": 1, "mu": 1}]}
            )

    def test_invalid_json(self):
        with pytest.raises(ModelError, match="invalid JSON"):
            HypersurfaceModel.from_json("{")

    def test_lambda_key(self):
        d = json.loads(nc((2.0, -1.0, 3)).to_json())
        assert d["blocks"][0] == {"lambda": 2.0, "mu": -1.0, "mult": 3}


finite = st.floats(-50, 50, allow_nan=False)
blocks = st.lists(st.tuples(finite, st.floats(-50, 0), st.integers(1, 9)), min_size=1, max_size=6)


@settings(max_examples=200, deadline=None)
@given(bs=blocks, name=st.text(max_size=8))
def test_json_round_trip(bs, name):
    m = HypersurfaceModel(AmbientKind.noncompact(), tuple(CurvatureBlock(*b) for b in bs), name)
    again = HypersurfaceModel.from_json(m.to_json())
    assert again == m
    assert again.to_json() == m.to_json()


@settings(max_examples=200, deadline=None)
@given(bs=blocks)
def test_merge_preserves_dimension(bs):
    m = HypersurfaceModel(AmbientKind.noncompact(), tuple(CurvatureBlock(*b) for b in bs))
    merged = m.merged()
    assert merged.dim == m.dim
    assert len({b.pair for b in merged.blocks}) == len(merged.blocks)
