"""The ten acceptance criteria, one test each, plus independent anchors.

Each test prints its pass/fail line; the lines are also collected and shown
in the terminal summary so they appear without ``-s``.
"""

import pytest

import conftest
import oracles
from ffram.acceptance import CRITERIA
from ffram.weil import WeilNumberClaim, verify_weil


def _anchor_1():
    a = oracles.CARTAN["G2"]
    assert oracles.weyl_dimension(a, (1, 0)) == 7
    mults = oracles.weights_by_brute_force(a, (1, 0))
    assert sorted(mults.values()) == [1] * 7 and (0, 0) in mults


def _anchor_8():
    assert verify_weil(WeilNumberClaim((1, 1, 2), 2, 1)).ok
    # the SL2 / P^1 / |D| = 2 / dim H = 4 instance by hand: 3 * (0 + 2 - 1) - 4
    assert 3 * (0 + 2 - 1) - 4 == -1


def _anchor_6():
    # d(lambda) = <lambda, 2 rho> for G2 short fundamental: 2 rho = 10 alpha_1 + 6 alpha_2
    a = oracles.CARTAN["G2"]
    two_rho = [sum(r[i] for r in oracles.positive_roots(a)) for i in range(2)]
    assert two_rho == [10, 6]


ANCHORS = {1: _anchor_1, 6: _anchor_6, 8: _anchor_8}


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number):
    if number in ANCHORS:
        ANCHORS[number]()
    res = CRITERIA[number - 1](seed=0)
    print(res.line())
    conftest.ACCEPTANCE_LINES.append(res.line())
    assert res.passed, res.detail
    if res.limit is not None:
        assert res.seconds < res.limit, f"took {res.seconds:.1f}s, limit {res.limit}s"
