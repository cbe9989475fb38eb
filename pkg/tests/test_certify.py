# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Seeded certificates, stress descent and phase sweeps."""

import numpy as np
import pytest

from subchain.certify import (CONFIRMED, INCONCLUSIVE, REFUTED, certify,
                              certify_example_negative, certify_fm_general,
                              certify_mf_general, certify_mf_orthant,
                              certify_neumf_defect, neumf_functionals,
                              neumf_unreachable, phase_sweep, sign_enumeration,
                              stress_descent)
from subchain.errors import (DimensionError, InapplicableError, InvariantError,
                             ShapeError)
from subchain.maps import get_map
from subchain.patterns import orthant_pattern


class Shifted(object):
    """``‖θ − c‖²`` with the identity as image."""

    size = 4

    def __init__(self, center):
        """Store the minimizer."""
        self.target = np.ravel(center)

    def image(self, theta):
        """Reshape into 2×2 objects."""
        return theta.reshape(-1, 2, 2)

    def objective(self, theta):
        """Squared distance per restart."""
        return np.sum((theta - self.target) ** 2, axis=1)

    def gradient(self, theta):
        """Gradient per restart."""
        return 2 * (theta - self.target)


def test_stress_descent_reaches_reachable_targets(rng):
    """Descent converges and counts iterates inside the pattern."""
    problem = Shifted(0.5 * np.array([[1.0, 1.0], [1.0, -1.0]]))
    result = stress_descent(problem, 4, rng, orthant_pattern(),
                            iterations=200)
    assert result.best_residual <= 1e-9
    assert result.pattern_hits >= 4
    assert result.iterations < 200


def test_projected_stress_descent(rng):
    """A bounded search stops on the sphere closest to the minimizer."""
    problem = Shifted(3 * np.array([[1.0, 1.0], [1.0, -1.0]]))
    result = stress_descent(problem, 3, rng, orthant_pattern(),
                            iterations=300, radius=1.0)
    assert result.best_residual == pytest.approx(5.0, rel=1e-6)
    assert result.pattern_hits >= 1


def test_stress_descent_needs_restarts(rng):
    """Zero restarts are rejected."""
    with pytest.raises(ShapeError):
        stress_descent(Shifted(np.zeros(4)), 0, rng)


def test_example_negative():
    """The composite is flat while the upper set has width two."""
    report = certify_example_negative(samples=2000, gradient_samples=20)
    assert report.verdict == CONFIRMED
    assert report.statistics["max_abs_value"] <= 1e-12
    assert report.statistics["support"] == pytest.approx(2.0)
    assert report.statistics["support_opposite"] == pytest.approx(2.0)
    assert report.statistics["max_gradient_norm"] <= 1e-12


def test_sign_enumeration():
    """No sign pattern of ``x`` and ``y`` lands in the orthant."""
    assert sign_enumeration() == (16, 0)


def test_mf_orthant():
    """Rank-one images never hit the open orthant."""
    report = certify_mf_orthant(trials=10 ** 4, mc_samples=10 ** 4)
    assert report.verdict != REFUTED
    assert report.statistics["violations"] == 0
    assert report.statistics["enumerated_hits"] == 0
    assert report.statistics["mc_expected"] == 1 / 16
    with pytest.raises(ShapeError):
        certify_mf_orthant(trials=100)


@pytest.mark.parametrize("n", [2, 3])
def test_mf_general(n):
    """Latent dimension n-1 stays above the rank floor, n solves."""
    report = certify_mf_general(n, restarts=5, iterations=200)
    stats = report.statistics
    assert report.verdict == CONFIRMED
    assert stats["d"] == n - 1
    assert stats["pattern_hits"] == 0
    assert stats["min_residual"] >= stats["min_rank_floor"] * (1 - 1e-9)
    assert stats["min_rank_floor"] > 1e-8
    assert stats["max_control_residual"] <= 1e-8


def test_mf_general_small_n():
    """The pattern needs n >= 2."""
    with pytest.raises(DimensionError):
        certify_mf_general(1)


def test_fm_general():
    """The tower at d0-1 solves what d0-2 misses."""
    report = certify_fm_general(3, restarts=5, iterations=200)
    stats = report.statistics
    assert report.verdict == CONFIRMED
    assert stats["d"] == 1
    assert stats["control_d"] == 2
    assert stats["max_search_radius"] >= 1.0
    assert stats["min_residual"] > 1e-8
    assert stats["max_control_residual"] <= 1e-8
    assert report.data["pattern"]["signs"] == [1, 1, 0]


def test_fm_general_coefficients():
    """Coefficients are validated."""
    with pytest.raises(DimensionError):
        certify_fm_general(2)
    with pytest.raises(ShapeError):
        certify_fm_general(3, a=[1.0, 1.0])
    with pytest.raises(InvariantError):
        certify_fm_general(3, a=[1.0, 0.0, 1.0])


def test_neumf_functionals_vanish(rng):
    """Every exchange functional vanishes on NeuMF outputs."""
    functionals, labels = neumf_functionals(3, 4, 2)
    assert len(labels) == 6
    assert labels[0] == (1, 2, 1)
    neumf = get_map("neumf")
    for _ in range(5):
        point = neumf.random_point(rng, d=3, m=3, n=4, h=2)
        output = neumf.evaluate(point).ravel()
        np.testing.assert_allclose(functionals @ output, 0.0, atol=1e-10)


def test_neumf_unreachable():
    """A single spike violates the identity."""
    spike = np.zeros((2, 2, 1))
    spike[0, 0, 0] = 1.0
    assert neumf_unreachable(spike)
    assert not neumf_unreachable(np.ones((2, 2, 1)))
    with pytest.raises(InapplicableError):
        neumf_functionals(1, 3, 2)


def test_neumf_defect():
    """Random outputs satisfy every identity."""
    report = certify_neumf_defect(trials=50)
    assert report.verdict == CONFIRMED
    assert report.statistics["functionals"] == 6
    assert report.statistics["witness_unreachable"]
    assert report.data["functionals"][0] == {
        "plus": [[1, 1, 1], [2, 2, 1]], "minus": [[1, 2, 1], [2, 1, 1]],
    }


def test_certify_dispatch():
    """Cases are dispatched by name and reruns agree."""
    first = certify("neumf-defect", seed=3, trials=20)
    second = certify("neumf-defect", seed=3, trials=20)
    assert first.case == "neumf-defect"
    assert first.seed == 3
    assert first.to_dict() == second.to_dict()
    with pytest.raises(ShapeError):
        certify("rank-one")


def test_phase_sweep_mf():
    """Success jumps to one at ``d = min(m, n)``."""
    report = phase_sweep("mf", (2, 2), [2, 1], trials=3, restarts=4,
                         iterations=200)
    table = report.statistics["table"]
    assert [row["d"] for row in table] == [1, 2]
    assert [row["method"] for row in table] == ["descent", "constructive"]
    assert table[0]["success_rate"] == 0.0
    assert table[1]["success_rate"] == 1.0
    assert report.verdict == CONFIRMED
    assert report.case == "phase-sweep-mf"


def test_phase_sweep_fm():
    """The tower solves every target from ``d = d0 - 1`` on."""
    report = phase_sweep("fm", 3, [2, 3], trials=3)
    assert report.statistics["threshold"] == 2
    assert [row["success_rate"] for row in report.statistics["table"]] == [
        1.0, 1.0,
    ]


def test_phase_sweep_errors():
    """Invalid maps and dimensions raise."""
    with pytest.raises(DimensionError):
        phase_sweep("mf", (2, 2), [0, 1])
    with pytest.raises(ShapeError):
        phase_sweep("cp", (2, 2), [1])


@pytest.mark.parametrize("d0", [3, 4])
def test_phase_sweep_fm_below_threshold(d0):
    """Pattern targets are missed below ``d0 - 1`` and met from it on."""
    report = phase_sweep("fm", d0, range(1, d0 + 1), trials=3, restarts=5,
                         iterations=300, seed=4)
    table = report.statistics["table"]
    below = [row for row in table if row["d"] < d0 - 1]
    above = [row for row in table if row["d"] >= d0 - 1]
    assert [row["method"] for row in below] == ["descent"] * (d0 - 2)
    assert all(row["success_rate"] < 1.0 for row in below)
    assert all(row["success_rate"] == 1.0 for row in above)
    assert report.verdict == CONFIRMED


def test_success_tolerance_decides_the_verdict():
    """A success tolerance above every residual refutes the certificate."""
    report = certify_mf_general(2, restarts=3, iterations=50,
                                success_tol=1e9)
    assert report.verdict == REFUTED
    assert report.statistics["violations"] >= 1

    report = phase_sweep("mf", (2, 2), [1, 2], trials=2, restarts=2,
                         iterations=20, success_tol=1e9)
    assert report.verdict == REFUTED


def test_neumf_identity_tolerance():
    """Deviations stay below 1e-12 and a huge tolerance hides the witness."""
    report = certify_neumf_defect(m=3, n=3, h=2, trials=10 ** 3)
    assert report.verdict == CONFIRMED
    assert report.statistics["max_identity_violation"] <= 1e-12

    loose = certify_neumf_defect(trials=10, identity_tol=1e9)
    assert loose.verdict == INCONCLUSIVE
    assert not loose.statistics["witness_unreachable"]
