"""Acceptance criteria 1-9. Each test prints one PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) for the summary alone.
"""
from __future__ import annotations

import time

import pytest

from zpcap import an_workbench as wb
from zpcap.bside import bside_matrix, mirror_diff, printed_bside_matrix
from zpcap.connections import (PRINTED_C_SERIES, QQ, c_series, check_splitting, hlt_extend_basis,
                               intertwining_residual, is_zero_matrix, quadrics_connection, quadrics_r_matrix,
                               r_matrix_diff, splitting_base_change, steenrod_odd_class_series,
                               verify_quadrics_ring)
from zpcap.diagonal import (check_coinvariant_pattern, check_diagonal, diagonal_approximation,
                            solve_diagonal_chains, verify_diagonal_chains)
from zpcap.properties import run_suite

CAP_NS = (4, 5, 7, 8)


def criterion_1():
    lines, ok = [], True
    for N in CAP_NS:
        t = time.perf_counter()
        cm = wb.cap_action_matrix(N, 3, 2, 4 * N + 8)
        dt = time.perf_counter() - t
        good = cm.entries == wb.expected_pattern(N, 2) and dt <= 60
        ok &= good
        lines.append(f"N={N} {dt:.1f}s")
    return ok, ", ".join(lines)


def criterion_2():
    ok = True
    detail = []
    for N in CAP_NS:
        aside = wb.cap_action_matrix(N, 3, 2, 4 * N + 8).entries
        rep = mirror_diff(N, 3, 2, aside)
        printed = bside_matrix(N, 3, 2, 1) == printed_bside_matrix(N, 2)
        ok &= rep.selected is not None and printed
        detail.append(f"N={N} match={'td-df' if rep.selected == -1 else 'td+df' if rep.selected == 1 else 'none'}")
    return ok, ", ".join(detail) + "; printed z-action reproduced under td+df"


def criterion_3():
    ok, detail = True, []
    for eps in (1, -1):
        t = time.perf_counter()
        R = quadrics_r_matrix(eps, 4)
        dt = time.perf_counter() - t
        diff = r_matrix_diff(eps, 4)
        resid = all(is_zero_matrix(R.F, intertwining_residual(R.source, R.target, R.coeffs, k)) for k in range(5))
        ok &= not diff and resid and dt <= 5
        detail.append(f"eps={eps:+d} diff={len(diff)} {dt:.2f}s")
    return ok, ", ".join(detail)


def criterion_4():
    cs = c_series(4)
    ok = cs.normalized[:5] == PRINTED_C_SERIES and cs.epsilon_independent and cs.real
    ok &= cs.normalized[1] == 0 and cs.normalized[3] == 0
    leads = {}
    for p, want in ((3, 2), (5, 2), (7, 1)):
        s = steenrod_odd_class_series(p, 4)
        leads[p] = s.even.coeffs[(p - 1) // 2]
        ok &= leads[p] == want
    return ok, f"c = {[str(c) for c in cs.normalized]}, leading {leads}"


def criterion_5():
    ring = verify_quadrics_ring()
    c = quadrics_connection(QQ(), full=True)
    s = hlt_extend_basis(c, 3, [1, 6, 1])
    split = check_splitting(c, s)
    base = all(splitting_base_change(p, 3) for p in (3, 5, 11))
    bad = [k for k, v in {**ring, **split}.items() if not v]
    return not bad and base, f"{len(ring)} ring checks, {len(split)} splitting checks, failures {bad}"


def criterion_6():
    ok, detail = True, []
    for p in (3, 5):
        t = time.perf_counter()
        delta = diagonal_approximation(p, 8)
        dc = solve_diagonal_chains(p, 6, delta)
        good = (all(dc.cycle_checks.values()) and all(verify_diagonal_chains(dc).values())
                and all(check_diagonal(delta).values()) and all(check_coinvariant_pattern(delta).values()))
        dt = time.perf_counter() - t
        ok &= good and dt <= 10
        detail.append(f"p={p} {dt:.2f}s")
    return ok, ", ".join(detail)


def criterion_7():
    ok, detail = True, []
    for N in (2, 4, 5, 7, 8):
        h, c, t = wb.hochschild_ranks(N), wb.cohomology_ranks(N), wb.three_fold_ranks(N)
        ok &= (h.total(0), h.total(1)) == (0, N - 1)
        ok &= (c.total(0), c.total(1)) == (N - 1, 0)
        ok &= (t.total(0), t.total(1)) == (0, N - 1)
    for N, T in ((2, 2), (4, 2), (5, 2), (7, 1), (8, 1)):
        e = wb.equivariant_ranks(N, T)
        want = (N - 1) * (T + 1)
        ok &= (e.total(0), e.total(1)) == (want, want)
        detail.append(f"N={N},T={T}:{e.total(0)}/{e.total(1)}")
    return ok, "equivariant " + " ".join(detail)


def criterion_8():
    res = run_suite(50, seed=0)
    failed = [r.name for r in res if not r.passed]
    ok = not failed and all(r.instances >= 50 for r in res)
    return ok, f"{len(res)} suites x 50 instances, failures {failed}"


def criterion_9():
    tau = {N: all(wb.check_printed_tau_identities(N).values()) for N in (4, 5, 7, 8)}
    hom = {N: wb.check_printed_homotopy(N) for N in (4, 7)}
    return all(tau.values()) and all(hom.values()), f"tau/norm identities {tau}, homotopies {hom}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def _report(i, fn):
    ok, detail = fn()
    line = f"criterion {i}: {'PASS' if ok else 'FAIL'} ({detail})"
    return ok, line


@pytest.mark.parametrize("i", range(1, 10))
def test_criterion(i, capsys):
    ok, line = _report(i, CRITERIA[i - 1])
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [_report(i, fn) for i, fn in enumerate(CRITERIA, 1)]
    for _, line in results:
        print(line)
    raise SystemExit(0 if all(ok for ok, _ in results) else 1)
