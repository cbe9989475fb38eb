# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Chain-rule upper sets, exact oracles and gradient sampling."""

import numpy as np
import pytest

from subchain.errors import (CertificationWarning, DegenerateSamplingError,
                             ShapeError, UnsupportedLossError)
from subchain.fmdata import SparseSample, build_qualified
from subchain.losses import (LOSSES, ProductDifferenceLoss, SeparableLoss,
                             labelled_loss, make_loss)
from subchain.maps import MAPS, get_map
from subchain.subdiff import (Composite, FMTrainingComposite, GMFComposite,
                              MapComposite, chainrule_upper, contains_zero,
                              fm_train_subdiff, gmf_subdiff,
                              inclusion_residuals, sample_gradients,
                              stationarity_decay, support_gap)
from subchain.types import FactorPoint
from subchain.zonotope import SubgradientZonotope


def _numeric_gradient(function, vector, step=1e-6):
    gradient = np.zeros_like(vector)
    for k in range(vector.size):
        shift = np.zeros_like(vector)
        shift[k] = step
        gradient[k] = (function(vector + shift)
                       - function(vector - shift)) / (2 * step)
    return gradient


@pytest.mark.parametrize("map_id", ["mf", "fm", "cp", "neumf"])
def test_smooth_loss_gives_the_gradient(map_id, rng):
    """For a smooth loss the upper set is the gradient."""
    point = get_map(map_id).random_point(rng)
    composite = MapComposite(map_id, point, make_loss("square", target=0.3))
    upper = chainrule_upper(make_loss("square", target=0.3), map_id, point)
    assert upper.count == 0
    gradient = composite.gradient(point.pack())
    np.testing.assert_allclose(upper.center, gradient, atol=1e-12)
    np.testing.assert_allclose(
        gradient, _numeric_gradient(composite.value, point.pack()),
        atol=1e-5)


def test_kinked_outputs_add_generators():
    """Every output on a kink contributes one generator."""
    point = FactorPoint([[1.0, 0.0]], [[0.0, 1.0]])
    upper = chainrule_upper(make_loss("absolute"), "mf", point)
    assert upper.count == 3
    assert upper.dim == 4


def test_sampled_gradients_stay_inside(rng):
    """Gradients sampled close to a kink lie in the upper set."""
    point = FactorPoint([[1.0, 0.0]], [[0.0, 1.0]])
    loss = make_loss("absolute")
    composite = MapComposite("mf", point, loss)
    upper = chainrule_upper(loss, "mf", point)
    sample = sample_gradients(composite, point.pack(), 1e-9, 30, seed=5)
    assert support_gap(upper, sample, seed=5).inclusion_ok
    residuals = inclusion_residuals(composite.upper, sample)
    assert np.max(residuals) <= 1e-8


def test_example_negative_upper_set():
    """At the ones point the upper set is a segment through zero."""
    point = FactorPoint(np.ones((1, 2)), np.ones((1, 2)))
    upper = chainrule_upper(ProductDifferenceLoss(), "mf", point)
    direction = np.full(4, 0.5)
    assert upper.support(direction) == pytest.approx(2.0)
    assert upper.support(-direction) == pytest.approx(2.0)
    has_zero, _, distance = contains_zero(upper)
    assert has_zero
    assert distance == pytest.approx(0.0, abs=1e-12)


def test_contains_zero_misses():
    """A shifted point does not contain zero."""
    has_zero, witness, distance = contains_zero(
        SubgradientZonotope.point([1.0, 0.0]))
    assert not has_zero
    assert distance == 1.0
    assert witness.size == 0


def test_unsupported_outer_loss():
    """Outer losses must come from the catalogue."""
    point = FactorPoint(np.ones((1, 1)), np.ones((1, 1)))
    with pytest.raises(UnsupportedLossError):
        chainrule_upper(lambda z: z, "mf", point)


@pytest.fixture()
def qualified(qualified_samples):
    """Qualified dataset over six features."""
    return build_qualified(qualified_samples, 6)


def test_fm_training_subdiff_smooth(qualified, rng):
    """Smooth training losses give the exact gradient."""
    P = rng.standard_normal((11, 6))
    losses = labelled_loss("square", qualified.labels)
    upper = fm_train_subdiff(qualified, P, losses)
    composite = FMTrainingComposite(qualified, 11, losses)
    assert upper.count == 0
    np.testing.assert_allclose(upper.center, composite.gradient(P.ravel()),
                               atol=1e-12)
    np.testing.assert_allclose(
        upper.center, _numeric_gradient(composite.value, P.ravel()),
        atol=1e-5)


def test_fm_training_subdiff_at_kinks(qualified_samples):
    """All samples on their kink at ``P = 0`` give zero generators."""
    samples = [SparseSample(s.indices, s.values, 0.0)
               for s in qualified_samples]
    dataset = build_qualified(samples, 6)
    upper = fm_train_subdiff(dataset, np.zeros((11, 6)),
                             labelled_loss("absolute", dataset.labels))
    assert upper.count == 3
    assert contains_zero(upper)[0]


def test_fm_training_warns_below_threshold(qualified, rng):
    """Latent dimensions below ``2·d0 - 1`` are flagged."""
    with pytest.warns(CertificationWarning):
        fm_train_subdiff(qualified, rng.standard_normal((3, 6)),
                         make_loss("square"))
    with pytest.raises(ShapeError):
        fm_train_subdiff(qualified, np.zeros((11, 5)), make_loss("square"))


def test_gmf_smooth_activation(rng):
    """With a smooth activation the oracle is the gradient."""
    d, m, n = 3, 2, 3
    pairs = [(1, 1), (2, 3), (1, 2)]
    v, h = 0.7, rng.standard_normal(d)
    P, Q = rng.standard_normal((d, m)), rng.standard_normal((d, n))
    activation = make_loss("logistic")
    outer = labelled_loss("square", np.array([1.0, -1.0, 0.5]))

    upper = gmf_subdiff(v, h, P, Q, pairs, activation, outer)
    composite = GMFComposite(d, m, n, pairs, activation, outer)
    vector = GMFComposite.pack(v, h, P, Q)
    assert upper.count == 0
    np.testing.assert_allclose(
        upper.center, _numeric_gradient(composite.value, vector), atol=1e-5)


def test_gmf_kinked_activation(rng):
    """Pairs whose inner value sits on the ReLU kink get generators."""
    d, m, n = 2, 2, 2
    P, Q = rng.standard_normal((d, m)), rng.standard_normal((d, n))
    upper = gmf_subdiff(1.5, np.zeros(d), P, Q, [(1, 1), (2, 2)],
                        make_loss("shifted_relu", shift=0.0),
                        make_loss("square", target=1.0))
    assert upper.count == 2
    assert upper.dim == 1 + d + d * m + d * n


def test_gmf_needs_smooth_outer(rng):
    """Nonsmooth outer losses are rejected."""
    with pytest.raises(UnsupportedLossError):
        gmf_subdiff(1.0, np.ones(2), np.ones((2, 2)), np.ones((2, 2)),
                    [(1, 1)], make_loss("logistic"), make_loss("absolute"))


def test_sampling_is_reproducible(monkeypatch, rng):
    """The same seed gives the same sample for any worker count."""
    point = get_map("mf").random_point(rng)
    composite = MapComposite("mf", point, make_loss("absolute"))
    monkeypatch.setenv("SUBCHAIN_THREADS", "1")
    first = sample_gradients(composite, point.pack(), 0.1, 16, seed=11)
    monkeypatch.setenv("SUBCHAIN_THREADS", "4")
    second = sample_gradients(composite, point.pack(), 0.1, 16, seed=11)
    np.testing.assert_array_equal(first.gradients, second.gradients)
    np.testing.assert_array_equal(first.points, second.points)
    assert np.all(np.linalg.norm(first.points - point.pack(), axis=1)
                  <= 0.1)


class Kinked(Composite):
    """Composite whose every point is a kink."""

    dim = 2

    def kink_distance(self, vector):
        """Always on the kink."""
        return 0.0


def test_degenerate_sampling():
    """Sampling fails when every draw hits a kink."""
    with pytest.raises(DegenerateSamplingError):
        sample_gradients(Kinked(), np.zeros(2), 0.1, 3)
    with pytest.raises(ShapeError):
        sample_gradients(Kinked(), np.zeros(3), 0.1, 3)


def test_stationarity_decay_at_the_origin():
    """Gradients of the squared MF image vanish faster than the radius."""
    point = FactorPoint(np.zeros((2, 2)), np.zeros((2, 2)))
    composite = MapComposite("mf", point, make_loss("square"))
    report = stationarity_decay(composite, point.pack(), n_samples=10)
    assert report.verified
    assert report.slope > 2.0
    with pytest.raises(ShapeError):
        stationarity_decay(composite, point.pack(), radii=(0.1, 0.01))


def test_separable_loss_list(rng):
    """Per-output losses are accepted as a list."""
    point = get_map("mf").random_point(rng, d=1, m=1, n=2)
    upper = chainrule_upper([make_loss("square"), make_loss("logistic")],
                            "mf", point)
    composite = MapComposite(
        "mf", point, SeparableLoss([make_loss("square"),
                                    make_loss("logistic")]))
    np.testing.assert_allclose(upper.center,
                               composite.gradient(point.pack()), atol=1e-12)


def _kinked_training_losses(loss_id, dataset, P):
    """Put every sample on its absolute kink or the first on its hinge."""
    predictions = dataset.predictions(P)
    if loss_id == "absolute":
        return P, labelled_loss("absolute", predictions), len(predictions)
    P = P / np.sqrt(abs(predictions[0]))
    labels = np.sign(predictions)
    return P, labelled_loss("hinge", labels), 1


@pytest.mark.parametrize("loss_id", ["absolute", "hinge"])
def test_fm_training_subdiff_is_exact(loss_id, qualified, rng):
    """Sampled gradients fill the training subdifferential at a kink."""
    d = 2 * qualified.d0 - 1
    for instance in range(3):
        P, losses, kinked = _kinked_training_losses(
            loss_id, qualified, rng.standard_normal((d, qualified.d0)))
        upper = fm_train_subdiff(qualified, P, losses)
        assert upper.count == kinked

        composite = FMTrainingComposite(qualified, d, losses)
        sample = sample_gradients(composite, P.ravel(), 1e-10, 500,
                                  seed=instance)
        gaps = support_gap(upper, sample, seed=instance)
        assert gaps.inclusion_ok
        assert gaps.max_gap <= 1e-6
        residuals = inclusion_residuals(composite.upper, sample)
        assert np.max(residuals) <= 1e-8


@pytest.mark.parametrize("d", [1, 3, 5, 10])
def test_fm_training_below_threshold(d, qualified, rng):
    """Below ``2·d0 - 1`` the set still bounds every sampled gradient."""
    P, losses, kinked = _kinked_training_losses(
        "absolute", qualified, rng.standard_normal((d, qualified.d0)))
    with pytest.warns(CertificationWarning):
        upper = fm_train_subdiff(qualified, P, losses)
    assert upper.dim == d * qualified.d0
    assert upper.count == kinked

    composite = FMTrainingComposite(qualified, d, losses)
    sample = sample_gradients(composite, P.ravel(), 1e-10, 200, seed=d)
    assert support_gap(upper, sample, seed=d).inclusion_ok
    assert np.max(inclusion_residuals(composite.upper, sample)) <= 1e-8


MULTILINEAR = sorted(set(MAPS) - {"neumf"})


@pytest.mark.parametrize("map_id", MULTILINEAR)
@pytest.mark.parametrize("loss_id", sorted(LOSSES))
def test_origin_is_stationary(map_id, loss_id, rng):
    """Maps without a bias have a zero upper set at the origin."""
    point = get_map(map_id).random_point(rng)
    origin = point.unpack(np.zeros(point.size))
    upper = chainrule_upper(make_loss(loss_id), map_id, origin)
    np.testing.assert_array_equal(upper.center, 0.0)
    np.testing.assert_array_equal(upper.generators, 0.0)
    has_zero, _, distance = contains_zero(upper)
    assert has_zero
    assert distance == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("map_id", ["fm", "cp"])
@pytest.mark.parametrize("loss_id", sorted(LOSSES))
def test_origin_gradients_decay(map_id, loss_id, rng):
    """Sampled gradients around the origin shrink at least linearly."""
    point = get_map(map_id).random_point(rng)
    origin = point.unpack(np.zeros(point.size))
    composite = MapComposite(map_id, origin, make_loss(loss_id))
    report = stationarity_decay(composite, origin.pack(),
                                radii=(1e-1, 1e-2, 1e-3), n_samples=50,
                                seed=3)
    assert report.verified


def test_tolerances_reach_the_oracles(rng):
    """Kink, zero and inclusion tolerances are applied where passed."""
    point = FactorPoint([[1.0, 1e-3]], [[1e-3, 1.0]])
    loss = make_loss("absolute")
    assert chainrule_upper(loss, "mf", point).count == 0
    upper = chainrule_upper(loss, "mf", point, kink_tol=1e-2)
    assert upper.count == 3

    far = SubgradientZonotope.point([1.0, 0.0])
    assert not contains_zero(far)[0]
    assert contains_zero(far, tol=1.0)[0]

    report = support_gap(far, np.array([[2.0, 0.0]]), directions=0,
                         extra=[[1.0, 0.0]])
    assert not report.inclusion_ok
    assert support_gap(far, np.array([[2.0, 0.0]]), directions=0,
                       extra=[[1.0, 0.0]], tol=1.5).inclusion_ok

    composite = MapComposite("mf", point, loss, kink_tol=1e9)
    with pytest.raises(DegenerateSamplingError):
        sample_gradients(composite, point.pack(), 1e-3, 2)
