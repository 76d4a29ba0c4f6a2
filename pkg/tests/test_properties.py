from __future__ import annotations

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from zpcap.properties import PROPERTIES, run_suite

RUN = settings(max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True)


@pytest.mark.parametrize("name", sorted(PROPERTIES))
def test_property(name):
    check = PROPERTIES[name]

    @RUN
    @given(st.randoms(use_true_random=False))
    def inner(rng):
        ok, info = check(rng)
        assert ok, info

    inner()


def test_suite_runner_counts_instances():
    res = run_suite(5, seed=1, names=["cup Leibniz", "tau homotopy"])
    assert [r.instances for r in res] == [5, 5]
    assert all(r.passed for r in res)
