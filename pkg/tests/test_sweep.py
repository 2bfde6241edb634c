import random

import pytest

from tribpal import sweep as sweep_mod
from tribpal.diophantine import DPInstance, reduce_with_fallback
from tribpal.pipeline import _a_over_log_alpha, _mu
from tribpal.sweep import HAVE_EXTENSION, SweepSetup, backend_name, sweep

M51 = 10**51
needs_kernel = pytest.mark.skipif(not HAVE_EXTENSION, reason="compiled kernel not built")


def _round3_sample(n=300, seed=3):
    rng = random.Random(seed)
    nums = [10**59 - 10**58 + 1]  # (1,2,1,58), the case needing q_106
    while len(nums) < n:
        d1, d2 = rng.randint(1, 9), rng.randint(0, 9)
        if d1 == d2:
            continue
        ell, m = rng.randint(1, 56), rng.randint(1, 58)
        nums.append(d1 * 10 ** (ell + m) + (d1 - d2) * 10**m - (d1 - d2))
    return nums


@pytest.fixture(scope="module")
def setup3(ctx):
    return SweepSetup(ctx.cf, ctx.root.log_alpha, 4, ctx.root.log_alpha, M51)


@pytest.fixture(scope="module")
def setup2(ctx):
    return SweepSetup(ctx.cf, ctx.root.log_alpha, 38, ctx.log10, M51)


def test_setup(setup3):
    assert setup3.start == 98
    assert len(setup3.convergents) == 48
    assert not setup3.truncated


def test_pure_matches_ball_reduction(ctx, setup3):
    nums = _round3_sample(40)
    results = sweep(setup3, nums, prefer_extension=False)
    A = _a_over_log_alpha(4, ctx)
    for Y, r in zip(nums, results):
        out = reduce_with_fallback(DPInstance(ctx.kappa, _mu(Y, ctx), A, ctx.root.alpha, M51), ctx.cf)
        assert r.ok == out.ok
        assert r.bound == out.bound_value
        assert r.convergent_index == out.certificate["convergent_index"]
    assert results[0].convergent_index == 106 and results[0].bound == 226


@needs_kernel
@pytest.mark.parametrize("which", ["setup2", "setup3"])
def test_kernel_matches_pure(request, which):
    setup = request.getfixturevalue(which)
    nums = _round3_sample(300) if which == "setup3" else [
        d1 * 10**ell - (d1 - d2) for d1 in range(1, 10) for d2 in range(10) if d1 != d2 for ell in range(1, 8)
        if d1 * 10**ell - (d1 - d2) != 9
    ]
    fast = sweep(setup, nums, prefer_extension=True)
    slow = sweep(setup, nums, prefer_extension=False)
    for a, b in zip(fast, slow):
        assert (a.ok, a.bound, a.convergent_index) == (b.ok, b.bound, b.convergent_index)
        # both enclose the same epsilon
        assert a.eps_lower <= b.eps_upper and b.eps_lower <= a.eps_upper


def test_env_forces_pure(monkeypatch):
    monkeypatch.setenv(sweep_mod.PURE_ENV, "1")
    assert backend_name() == "python"
    assert backend_name(True) == "python"
    monkeypatch.setenv(sweep_mod.PURE_ENV, "0")
    assert backend_name() == ("extension" if HAVE_EXTENSION else "python")
    assert backend_name(False) == "python"


def test_missing_kernel_requested(monkeypatch):
    monkeypatch.delenv(sweep_mod.PURE_ENV, raising=False)
    monkeypatch.setattr(sweep_mod, "HAVE_EXTENSION", False)
    with pytest.raises(RuntimeError):
        backend_name(True)
    assert backend_name() == "python"


def test_mu_zero_case_reports_failure(setup2):
    r = sweep(setup2, [9], prefer_extension=False)[0]
    assert not r.ok and r.bound is None


def test_rejects_nonpositive(setup2):
    with pytest.raises(ValueError):
        sweep(setup2, [0])


def test_few_tries_leave_case_unresolved(ctx):
    setup = SweepSetup(ctx.cf, ctx.root.log_alpha, 4, ctx.root.log_alpha, M51, max_tries=2)
    r = sweep(setup, [10**59 - 10**58 + 1], prefer_extension=False)[0]
    assert not r.ok
    assert r.convergent_index == 99
    assert isinstance(r.eps_upper, float)
