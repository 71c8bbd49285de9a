import pytest

import property_suites as S


@pytest.mark.parametrize("name", sorted(S.ALL_SUITES))
def test_property_suite(name):
    cases, failures = S.run_suite(name)
    assert cases >= 500
    assert failures == ()
