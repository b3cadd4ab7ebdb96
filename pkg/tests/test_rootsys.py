from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isocartan.rootsys import (
    RootDataError,
    RootProjection,
    RootClass,
    RootSystemData,
    SymmetricSpaceEntry,
    ZeroVector,
    census_entry,
    expected_count,
    jacobi_spectrum,
    length_labels,
    positive_roots,
    project_roots,
    spec_count_bound,
)


class TestPositiveRoots:
    @pytest.mark.parametrize(
        "family,rank",
        [("A", 1), ("A", 4), ("B", 2), ("B", 5), ("C", 3), ("D", 2), ("D", 4), ("D", 6),
         ("BC", 1), ("BC", 3), ("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)],
    )
    def test_counts_match_classification(self, family, rank):
        assert len(positive_roots(family, rank)) == expected_count(family, rank)

    def test_g2_roots_in_simple_coordinates(self):
        assert set(positive_roots("G", 2)) == {(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)}

    def test_bc1_is_a_and_2a(self):
        assert positive_roots("BC", 1) == ((1,), (2,))

    def test_sorted_by_height(self):
        heights = [sum(r) for r in positive_roots("E", 6)]
        assert heights == sorted(heights)
        assert max(heights) == 11

    def test_unknown_family(self):
        with pytest.raises(RootDataError):
            positive_roots("H", 3)

    def test_length_labels(self):
        assert length_labels("A", 3) == ("root",)
        assert length_labels("B", 2) == ("short", "long")
        assert length_labels("BC", 2) == ("short", "middle", "long")


class TestRootSystemData:
    def test_dimension_of_hyperbolic_plane_types(self):
        ch2 = RootSystemData("BC", 1, {"short": 2, "long": 1})
        assert ch2.dimension == 4
        assert ch2.n_rank_one == 1

    def test_missing_multiplicity(self):
        with pytest.raises(RootDataError, match="no multiplicity"):
            RootSystemData("B", 3, {"short": 1})

    def test_nonpositive_multiplicity(self):
        with pytest.raises(RootDataError):
            RootSystemData("A", 2, {"root": 0})

    def test_census_entry_ch2(self):
        row = census_entry(SymmetricSpaceEntry("AIII", "SU(1,2)/S(U(1)xU(2))", RootSystemData("BC", 1, {"short": 2, "long": 1})))
        assert row.as_tuple() == (2, 1, 3, 3)

    def test_ambient_dim_cross_check(self):
        with pytest.raises(RootDataError):
            SymmetricSpaceEntry("AI", "x", RootSystemData.uniform("A", 2, 1), ambient_dim=6)


class TestBound:
    def test_rank_offsets(self):
        assert spec_count_bound(1, 1, 1) == 3
        assert spec_count_bound(1, 1, 2) == 4
        assert spec_count_bound(1, 1, 5) == 5

    @pytest.mark.parametrize(
        "short,long,bound",
        [(2, 1, 3), (6, 1, 3), (4, 3, 4), (8, 3, 4), (8, 7, 4)],
    )
    def test_rank_one_hyperbolic_bounds(self, short, long, bound):
        # complex hyperbolic spaces give 3; quaternionic and Cayley give 4
        proj = project_roots(RootSystemData("BC", 1, {"short": short, "long": long}), (1,))
        assert proj.spec_bound() == bound


class TestProjection:
    def test_a2_diagonal(self):
        proj = project_roots(RootSystemData.uniform("A", 2, 1), (1, 1))
        assert [(c.beta, c.total_mult) for c in proj.classes] == [(1, 2), (2, 1)]
        assert proj.kernel_dim == 1

    def test_g2_regular_has_six_classes(self):
        proj = project_roots(RootSystemData.uniform("G", 2, 1), (1, 3))
        assert [int(c.beta) for c in proj.classes] == [1, 3, 4, 5, 6, 9]
        assert proj.kernel_mult == 0

    def test_kernel_roots(self):
        proj = project_roots(RootSystemData.uniform("B", 2, 1), (0, 1))
        assert proj.kernel_mult == 1
        assert proj.kernel_dim == 2

    def test_zero_vector(self):
        with pytest.raises(ZeroVector):
            project_roots(RootSystemData.uniform("A", 2, 1), (0, 0))

    def test_wrong_length(self):
        with pytest.raises(RootDataError):
            project_roots(RootSystemData.uniform("A", 2, 1), (1,))

    def test_spectrum_signs(self):
        proj = project_roots(RootSystemData.uniform("A", 2, 1), (1, 1))
        assert jacobi_spectrum(proj, "noncompact") == [(-4.0, 1), (-1.0, 2), (0.0, 1)]
        assert jacobi_spectrum(proj, "compact") == [(0.0, 1), (1.0, 2), (4.0, 1)]

    def test_dict_round_trip(self):
        proj = RootProjection((RootClass(Fraction(1, 2), 3), RootClass(Fraction(2), 1)), 2, 3)
        assert RootProjection.from_dict(proj.to_dict()) == proj

    def test_duplicate_beta_rejected(self):
        with pytest.raises(RootDataError):
            RootProjection((RootClass(Fraction(1), 1), RootClass(Fraction(1), 2)))


vectors = st.lists(st.integers(-5, 5), min_size=2, max_size=2).filter(any)


@settings(max_examples=200, deadline=None)
@given(v=vectors, family=st.sampled_from(["A", "B", "C", "G", "BC"]))
def test_projection_preserves_dimension(v, family):
    rs = RootSystemData.uniform(family, 2, 2)
    proj = project_roots(rs, v)
    total = sum(c.total_mult for c in proj.classes) + proj.kernel_dim
    # tangent space of the hypersurface plus the normal line
    assert total + 1 == rs.dimension


@settings(max_examples=200, deadline=None)
@given(v=vectors, family=st.sampled_from(["A", "B", "G"]))
def test_projection_sign_invariant(v, family):
    rs = RootSystemData.uniform(family, 2, 1)
    assert project_roots(rs, v) == project_roots(rs, [-x for x in v])
