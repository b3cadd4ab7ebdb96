import math

import pytest

from isocartan.fixtures import CATALOG, build

COMPACT_WINDOW = (0.0, 2 * math.pi)
NONCOMPACT_RE = (0.0, 3.0)
NONCOMPACT_IM = (-2 * math.pi, 2 * math.pi)

# Catalog entries whose spectra satisfy the identity for every radius.
IDENTITY_FIXTURES = [name for name in CATALOG if name != "g2-regular-horizontal"]


@pytest.fixture(scope="session")
def catalog():
    return {name: build(spec) for name, spec in CATALOG.items()}


def windows_for(model):
    if model.ambient.is_compact_like:
        return COMPACT_WINDOW, None
    return NONCOMPACT_RE, NONCOMPACT_IM

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
