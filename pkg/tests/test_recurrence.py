import threading
from fractions import Fraction

import pytest

from tribpal.recurrence import (
    TribLucasSequence,
    alpha_by_radicals,
    alpha_by_refinement,
    binet_residual_check,
    characteristic_value,
    dominant_root,
    growth_bounds_check,
    trib_lucas,
    trib_lucas_prefix,
)

from oracles import ALPHA_40, TRIB_LUCAS_HEAD


def test_head_terms():
    assert trib_lucas_prefix(len(TRIB_LUCAS_HEAD) - 1) == TRIB_LUCAS_HEAD
    assert trib_lucas(8) == 131
    assert trib_lucas(17) == 31553


def test_recurrence_identity_up_to_2000():
    s = trib_lucas_prefix(2000)
    assert all(s[n + 3] == s[n + 2] + s[n + 1] + s[n] for n in range(1998))


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        trib_lucas(-1)


def test_concurrent_extension_is_consistent():
    seq = TribLucasSequence()
    out = {}

    def work(k):
        out[k] = seq[300 + k]

    threads = [threading.Thread(target=work, args=(k,)) for k in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(out[k] == trib_lucas(300 + k) for k in range(8))


def test_alpha_range_and_residual(root):
    assert root.alpha > Fraction(183, 100)
    assert root.alpha < Fraction(184, 100)
    assert root.alpha.to_string(39).startswith(ALPHA_40[:38])
    psi = abs(characteristic_value(root.alpha))
    assert psi < Fraction(1, 10**125)


def test_two_constructions_agree():
    for digits in (40, 120, 250):
        assert alpha_by_refinement(digits).overlaps(alpha_by_radicals(digits))


def test_precision_monotone():
    a, b = dominant_root(60), dominant_root(240)
    assert b.alpha.radius <= a.alpha.radius
    assert a.alpha.overlaps(b.alpha)


def test_low_precision_rejected():
    with pytest.raises(ValueError):
        dominant_root(10)


def test_binet_and_growth_up_to_1000(root):
    for n in range(1, 1001):
        assert binet_residual_check(n, root), n
        assert growth_bounds_check(n, root), n
