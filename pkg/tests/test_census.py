import json
import time
from fractions import Fraction

import pytest

from isocartan.census import (
    BUILDERS,
    build_entry,
    compute_census,
    eval_expr,
    load_golden,
    render_csv,
    render_json,
    render_markdown,
)
from isocartan.rootsys import census_entry


@pytest.fixture(scope="module")
def lines():
    return compute_census()


class TestEvalExpr:
    def test_exact_division(self):
        assert eval_expr("n*(n-1)/2", {"n": 5}) == 10

    def test_power_and_negation(self):
        assert eval_expr("-p**2+3", {"p": 2}) == Fraction(-1)

    def test_rejects_calls(self):
        with pytest.raises(ValueError):
            eval_expr("abs(n)", {"n": 1})


class TestGolden:
    def test_both_tables_present(self):
        tables = {row.table for row in load_golden()}
        assert tables == {1, 2}

    def test_every_family_has_a_builder(self):
        assert {row.family for row in load_golden()} <= set(BUILDERS)


class TestCensus:
    def test_only_flagged_rows_differ(self, lines):
        diffs = [ln for ln in lines if not ln.matches]
        assert all(ln.flagged for ln in diffs)
        assert len({(ln.family, ln.case) for ln in diffs}) <= 2

    def test_flagged_rows_do_differ(self, lines):
        flagged = [ln for ln in lines if ln.flagged]
        assert flagged and not any(ln.matches for ln in flagged)

    def test_eii_is_rank_four(self):
        row = census_entry(build_entry("EII", {}))
        assert row.as_tuple() == (24, 12, 38, 39)

    @pytest.mark.parametrize("n", [5, 6, 7, 8])
    def test_diii_against_formula(self, lines, n):
        hits = [ln for ln in lines if ln.type == "DIII" and ln.params.get("n") == n]
        assert hits and all(ln.matches for ln in hits)

    def test_split_so33_is_type_d(self):
        row = census_entry(build_entry("BDI", {"p": 3, "q": 3}))
        assert row.sharp_dp == 6

    def test_runtime(self):
        start = time.perf_counter()
        compute_census()
        assert time.perf_counter() - start < 1.0


class TestRender:
    def test_markdown_has_both_tables(self, lines):
        md = render_markdown(lines)
        assert "### Table 1" in md and "### Table 2" in md
        assert "(flagged)" in md

    def test_csv_header(self, lines):
        head = render_csv(lines).splitlines()[0]
        assert head.startswith("Table,Type,G/K")

    def test_json_is_deterministic(self, lines):
        assert render_json(lines) == render_json(compute_census())
        assert len(json.loads(render_json(lines))) == len(lines)
