# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Seeded certificates for the negative constructions and phase sweeps.

Unreachability is certified statistically. A stress test runs batched
gradient descent on the squared residual from many random starts and
watches whether any iterate enters the target set; a control run one
latent dimension higher must then find a preimage. A confirmed verdict
means the run is consistent with the proof, not that it proves anything.
"""

import dataclasses
import logging
from itertools import combinations, product
from typing import Optional, Sequence, Tuple

import numpy as np

from .config import (SUBCHAIN_IDENTITY_TOL, SUBCHAIN_INCLUSION_TOL,
                     SUBCHAIN_KINK_TOL, SUBCHAIN_MAX_KINK_RATE, SUBCHAIN_SEED,
                     SUBCHAIN_STRESS_HALVINGS, SUBCHAIN_STRESS_ITERATIONS,
                     SUBCHAIN_STRESS_RESTARTS, SUBCHAIN_SUCCESS_TOL)
from .errors import (DimensionError, InapplicableError, InvariantError,
                     ShapeError)
from .losses import ProductDifferenceLoss
from .maps import get_map
from .patterns import (SignPattern, embedded_mf_pattern, fm_pattern,
                       low_rank_distance, mf_pattern, orthant_pattern)
from .preimage import (BEST_EFFORT, STRICT, fm_rho, mf_origin_radius,
                       solve_fm_at, solve_mf_origin)
from .subdiff import (MapComposite, chainrule_upper, sample_gradients,
                      support_gap)
from .types import (FactorPoint, FMPoint, as_tensor3, as_vector,
                    features_from_pairs, pair_count)
from .workers import index_streams, named_stream, parallel_map

logger = logging.getLogger(__name__)

CONFIRMED = "confirmed"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"

CASES = ("ex-negative", "mf-orthant", "mf-general", "fm-general",
         "neumf-defect")

INITIAL_STEP = 0.1
ARMIJO = 1e-4
MIN_STEP = 1e-20
EXACT_TOL = 1e-12
TRUST_RADIUS = 1.0


@dataclasses.dataclass(frozen=True)
class CertificateReport:
    """Verdict, statistics and re-verification data of one certificate."""

    case: str
    verdict: str
    statistics: dict
    seed: int
    data: dict = dataclasses.field(default_factory=dict)

    @property
    def confirmed(self) -> bool:
        """Check the verdict."""
        return self.verdict == CONFIRMED

    def to_dict(self) -> dict:
        """Serialize the report."""
        return {
            "case": self.case,
            "verdict": self.verdict,
            "seed": self.seed,
            "statistics": self.statistics,
            "data": self.data,
        }


def _report(case, verdict, statistics, seed, data=None) -> CertificateReport:
    wording = {
        CONFIRMED: "consistent with the proof",
        REFUTED: "contradicts the proof",
        INCONCLUSIVE: "inconclusive",
    }[verdict]
    logger.info("certificate %s: %s (%s)", case, verdict, wording)
    return CertificateReport(case, verdict, statistics, int(seed), data or {})


@dataclasses.dataclass(frozen=True)
class StressResult:
    """Outcome of a batched descent on a squared residual."""

    residuals: np.ndarray
    pattern_hits: int
    iterations: int

    @property
    def best_residual(self) -> float:
        """Smallest final residual over all restarts."""
        return float(np.min(self.residuals))


class _MFStress(object):
    """``‖XᵀY − T‖²`` over flat batches of ``(X, Y)``."""

    def __init__(self, target, d):
        self.target = target
        self.d = d
        self.m, self.n = target.shape
        self.size = d * (self.m + self.n)

    def _split(self, theta):
        cut = self.d * self.m
        X = theta[:, :cut].reshape(-1, self.d, self.m)
        Y = theta[:, cut:].reshape(-1, self.d, self.n)
        return X, Y

    def image(self, theta):
        X, Y = self._split(theta)
        return np.matmul(X.transpose(0, 2, 1), Y)

    def objective(self, theta):
        return np.sum((self.image(theta) - self.target) ** 2, axis=(1, 2))

    def gradient(self, theta):
        X, Y = self._split(theta)
        error = np.matmul(X.transpose(0, 2, 1), Y) - self.target
        grad_X = 2 * np.matmul(Y, error.transpose(0, 2, 1))
        grad_Y = 2 * np.matmul(X, error)
        return np.hstack([grad_X.reshape(len(theta), -1),
                          grad_Y.reshape(len(theta), -1)])


class _FMStress(object):
    """``‖a ⊙ (PᵀP)_pairs − y‖²`` over flat batches of ``P``."""

    def __init__(self, a, target, d):
        self.a = a
        self.target = target
        self.d = d
        self.d0 = features_from_pairs(a.size)
        self.rows, self.cols = np.triu_indices(self.d0, k=1)
        self.size = d * self.d0

    def image(self, theta):
        P = theta.reshape(-1, self.d, self.d0)
        gram = np.matmul(P.transpose(0, 2, 1), P)
        return self.a * gram[:, self.rows, self.cols]

    def objective(self, theta):
        return np.sum((self.image(theta) - self.target) ** 2, axis=1)

    def gradient(self, theta):
        P = theta.reshape(-1, self.d, self.d0)
        error = self.image(theta) - self.target
        weights = np.zeros((len(theta), self.d0, self.d0))
        weights[:, self.rows, self.cols] = 2 * self.a * error
        weights = weights + weights.transpose(0, 2, 1)
        return np.matmul(P, weights).reshape(len(theta), -1)


def _unit_ball(rng: np.random.Generator, count: int, dim: int):
    directions = rng.standard_normal((count, dim))
    norms = np.linalg.norm(directions, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    radii = rng.random((count, 1)) ** (1.0 / dim)
    return radii * directions / norms


def _project(theta, radius):
    """Scale every row of ``theta`` back into the ``radius``-ball."""
    if radius is None:
        return theta
    norms = np.linalg.norm(theta, axis=1, keepdims=True)
    scale = np.ones_like(norms)
    outside = norms > radius
    scale[outside] = radius / norms[outside]
    return theta * scale


def stress_descent(
    problem,
    restarts: int,
    rng: np.random.Generator,
    pattern: Optional[SignPattern] = None,
    iterations: int = SUBCHAIN_STRESS_ITERATIONS,
    halvings: int = SUBCHAIN_STRESS_HALVINGS,
    radius: Optional[float] = None,
    success_tol: float = SUBCHAIN_SUCCESS_TOL,
) -> StressResult:
    """Minimize a squared residual from ``restarts`` unit-ball starts.

    All restarts move together; each keeps its own step, halved up to
    ``halvings`` times until the Armijo condition holds and doubled after
    an accepted step. Every accepted iterate is checked against
    ``pattern``. With a ``radius`` the search is a projected descent
    confined to that ball around the origin. Restarts stop once their
    residual is a hundredth of ``success_tol``.
    """
    if restarts < 1:
        raise ShapeError("at least one restart is needed")
    if problem.size == 0:
        residual = float(np.linalg.norm(problem.target))
        return StressResult(np.full(restarts, residual), 0, 0)

    theta = _project(_unit_ball(rng, restarts, problem.size), radius)
    values = problem.objective(theta)
    steps = np.full(restarts, INITIAL_STEP)
    active = np.ones(restarts, dtype=bool)
    floor = (1e-2 * success_tol) ** 2

    hits = 0
    if pattern is not None:
        hits += int(np.sum(pattern.contains(problem.image(theta))))

    done = 0
    for done in range(1, iterations + 1):
        gradient = problem.gradient(theta)
        squared = np.sum(gradient ** 2, axis=1)
        active &= (values > floor) & (squared > 0.0) & (steps > MIN_STEP)
        if not np.any(active):
            break

        pending = active.copy()
        trial = steps.copy()
        for _ in range(halvings + 1):
            candidate = _project(theta - trial[:, None] * gradient, radius)
            candidate_values = problem.objective(candidate)
            decrease = np.sum(gradient * (theta - candidate), axis=1)
            accept = pending & (decrease > 0.0) & (
                candidate_values <= values - ARMIJO * decrease
            )
            theta[accept] = candidate[accept]
            values[accept] = candidate_values[accept]
            pending &= ~accept
            if not np.any(pending):
                break
            trial[pending] /= 2

        accepted = active & ~pending
        steps = np.where(accepted, 2 * trial, trial)
        if pattern is not None and np.any(accepted):
            images = problem.image(theta[accepted])
            hits += int(np.sum(pattern.contains(images)))

    logger.debug("stress descent: %d restarts, %d iterations, best %.3e",
                 restarts, done, float(np.sqrt(np.min(values))))
    return StressResult(np.sqrt(values), hits, done)


def _image_products(x, y):
    """Row-major ``vec(xyᵀ)`` for batches of 2-vectors."""
    return np.stack([x[:, 0] * y[:, 0], x[:, 0] * y[:, 1],
                     x[:, 1] * y[:, 0], x[:, 1] * y[:, 1]], axis=1)


def certify_example_negative(
    samples: int = 10 ** 5,
    seed: int = SUBCHAIN_SEED,
    gradient_samples: int = 200,
    radius: float = 0.1,
    kink_tol: float = SUBCHAIN_KINK_TOL,
    max_kink_rate: float = SUBCHAIN_MAX_KINK_RATE,
    inclusion_tol: float = SUBCHAIN_INCLUSION_TOL,
) -> CertificateReport:
    """Certify that the chain rule of ``g ∘ H_MF`` fails at the ones point.

    ``g(z) = σ(z₁z₄) − σ(z₂z₃)`` with ``σ = max(• − 1, 0)`` vanishes on the
    image of the 1×2 MF map, so every gradient of the composite is zero
    while the chain-rule upper set at the ones point has width two.
    """
    loss = ProductDifferenceLoss()
    rng = named_stream(seed, "ex-negative")
    points = rng.uniform(-2.0, 2.0, size=(samples, 4))
    images = _image_products(points[:, :2], points[:, 2:])
    first = np.maximum(images[:, 0] * images[:, 3] - 1.0, 0.0)
    second = np.maximum(images[:, 1] * images[:, 2] - 1.0, 0.0)
    max_value = float(np.max(np.abs(first - second), initial=0.0))

    base = FactorPoint(np.ones((1, 2)), np.ones((1, 2)))
    upper = chainrule_upper(loss, "mf", base, kink_tol)
    direction = np.full(base.size, 0.5)
    support = upper.support(direction)
    opposite = upper.support(-direction)

    composite = MapComposite("mf", base, loss, kink_tol)
    sample = sample_gradients(composite, base.pack(), radius,
                              gradient_samples, seed, max_kink_rate)
    max_gradient = float(np.max(np.linalg.norm(sample.gradients, axis=1)))
    gaps = support_gap(upper, sample, directions=100, seed=seed,
                       extra=[direction, -direction], tol=inclusion_tol)

    gap = support - float(np.max(sample.gradients @ direction))
    identically_zero = max_value <= EXACT_TOL
    wide = abs(support - 2.0) <= EXACT_TOL
    flat = max_gradient <= EXACT_TOL
    verdict = CONFIRMED if identically_zero and wide and flat else REFUTED

    statistics = {
        "trials": samples,
        "violations": int(not identically_zero) + int(not flat),
        "max_abs_value": max_value,
        "support": support,
        "support_opposite": opposite,
        "gap": gap,
        "max_gradient_norm": max_gradient,
        "kink_rejections": sample.rejections,
        "support_gap": gaps.to_dict(),
    }
    return _report("ex-negative", verdict, statistics, seed,
                   {"upper": upper.to_dict(),
                    "direction": direction.tolist()})


def sign_enumeration() -> Tuple[int, int]:
    """Enumerate all sign patterns of ``(x₁, x₂, y₁, y₂)``.

    Returns the number of patterns and how many of them put ``vec(xyᵀ)``
    into the open orthant of :func:`orthant_pattern`.

    >>> sign_enumeration()
    (16, 0)
    """
    pattern = orthant_pattern()
    signs = np.array(list(product((-1.0, 1.0), repeat=4)))
    images = _image_products(signs[:, :2], signs[:, 2:]).reshape(-1, 2, 2)
    return len(signs), int(np.sum(pattern.contains(images)))


def certify_mf_orthant(
    trials: int = 10 ** 5,
    seed: int = SUBCHAIN_SEED,
    mc_samples: int = 10 ** 6,
) -> CertificateReport:
    """Certify that 2×2 rank-one images miss an open orthant.

    Also estimates the fraction of the unit ball of ``R⁴`` occupied by that
    orthant, which is 1/16.
    """
    if trials < 10 ** 4:
        raise ShapeError("the orthant certificate needs trials >= 10**4")
    pattern = orthant_pattern()
    rng = named_stream(seed, "mf-orthant")
    x = rng.standard_normal((trials, 2))
    y = rng.standard_normal((trials, 2))
    images = _image_products(x, y).reshape(-1, 2, 2)
    violations = int(np.sum(pattern.contains(images)))

    cases, hits = sign_enumeration()

    ball = _unit_ball(named_stream(seed, "mf-orthant-ball"), mc_samples, 4)
    inside = pattern.contains(ball.reshape(-1, 2, 2), tol=0.0)
    estimate = float(np.mean(inside))
    expected = 1.0 / 16
    error = float(np.sqrt(expected * (1 - expected) / mc_samples))
    within = abs(estimate - expected) <= 3 * error

    if violations or hits:
        verdict = REFUTED
    elif not within:
        verdict = INCONCLUSIVE
    else:
        verdict = CONFIRMED

    statistics = {
        "trials": trials,
        "violations": violations,
        "enumerated_patterns": cases,
        "enumerated_hits": hits,
        "mc_samples": mc_samples,
        "mc_estimate": estimate,
        "mc_expected": expected,
        "mc_standard_error": error,
    }
    return _report("mf-orthant", verdict, statistics, seed,
                   {"pattern": pattern.to_dict()})


def _stress_verdict(violations: int, control_failures: int) -> str:
    if violations:
        return REFUTED
    if control_failures:
        return INCONCLUSIVE
    return CONFIRMED


def certify_mf_general(
    n: int,
    trials: int = 1,
    restarts: int = SUBCHAIN_STRESS_RESTARTS,
    seed: int = SUBCHAIN_SEED,
    iterations: int = SUBCHAIN_STRESS_ITERATIONS,
    halvings: int = SUBCHAIN_STRESS_HALVINGS,
    success_tol: float = SUBCHAIN_SUCCESS_TOL,
) -> CertificateReport:
    """Certify that ``n×n`` targets of the MF pattern need ``d ≥ n``.

    Every trial draws a target from the pattern, stress-tests latent
    dimension ``n-1`` and runs the origin construction at ``d = n`` as
    control. The Frobenius distance of the target to rank ``n-1`` is
    reported as the analytic residual floor.
    """
    if n < 2:
        raise DimensionError("the MF certificate needs n >= 2")
    pattern = mf_pattern(n)

    def trial(rng):
        target = pattern.sample(rng)
        result = stress_descent(_MFStress(target, n - 1), restarts, rng,
                                pattern, iterations, halvings,
                                success_tol=success_tol)
        control = solve_mf_origin(target, TRUST_RADIUS, n, BEST_EFFORT)
        return target, result, low_rank_distance(target, n - 1), control

    outcomes = parallel_map(trial, index_streams(seed, "mf-general", trials))
    violations = sum(
        result.pattern_hits + int(result.best_residual <= success_tol)
        for _, result, _, _ in outcomes
    )
    control_failures = sum(
        int(control.residual > success_tol)
        for _, _, _, control in outcomes
    )

    statistics = {
        "trials": trials,
        "restarts": restarts,
        "d": n - 1,
        "violations": violations,
        "pattern_hits": sum(result.pattern_hits
                            for _, result, _, _ in outcomes),
        "min_residual": min(result.best_residual
                            for _, result, _, _ in outcomes),
        "min_rank_floor": min(floor for _, _, floor, _ in outcomes),
        "control_d": n,
        "control_failures": control_failures,
        "max_control_residual": max(control.residual
                                    for _, _, _, control in outcomes),
    }
    data = {
        "pattern": pattern.to_dict(),
        "targets": [target.tolist() for target, _, _, _ in outcomes],
        "best_residuals": [result.best_residual
                           for _, result, _, _ in outcomes],
        "rank_floors": [floor for _, _, floor, _ in outcomes],
    }
    return _report("mf-general", _stress_verdict(violations, control_failures),
                   statistics, seed, data)


def _fm_coefficients(d0: int, a) -> np.ndarray:
    if a is None:
        return np.ones(pair_count(d0))
    a = as_vector(a, "a")
    if a.size != pair_count(d0):
        raise ShapeError(
            f"{a.size} coefficients for d0 = {d0}, expected {pair_count(d0)}"
        )
    if np.min(np.abs(a)) <= 0.0:
        raise InvariantError("all coefficients of a must be nonzero")
    return a


def certify_fm_general(
    d0: int,
    a=None,
    trials: int = 1,
    restarts: int = SUBCHAIN_STRESS_RESTARTS,
    seed: int = SUBCHAIN_SEED,
    iterations: int = SUBCHAIN_STRESS_ITERATIONS,
    halvings: int = SUBCHAIN_STRESS_HALVINGS,
    success_tol: float = SUBCHAIN_SUCCESS_TOL,
) -> CertificateReport:
    """Certify that pair vectors of the FM sign pattern need ``d0-1``.

    ``a`` defaults to all ones. The tower construction at ``d = d0-1`` is
    the control; the stress test runs at ``d = d0-2`` inside the ball of
    twice the control's norm, at least the unit ball. The pattern lies in
    the closure of the unbounded image, so only a bounded search can
    show a positive residual floor.
    """
    if d0 < 3:
        raise DimensionError("the FM certificate needs d0 >= 3")
    a = _fm_coefficients(d0, a)
    pattern = fm_pattern(a)

    def trial(rng):
        target = pattern.sample(rng)
        base = FMPoint(np.zeros((d0 - 1, d0)), a)
        control = solve_fm_at(base, target, TRUST_RADIUS, BEST_EFFORT)
        radius = max(TRUST_RADIUS, 2 * control.point.norm())
        result = stress_descent(_FMStress(a, target, d0 - 2), restarts, rng,
                                pattern, iterations, halvings, radius,
                                success_tol)
        return target, result, control, radius

    outcomes = parallel_map(trial, index_streams(seed, "fm-general", trials))
    targets, results, controls, radii = zip(*outcomes)
    violations = sum(
        result.pattern_hits + int(result.best_residual <= success_tol)
        for result in results
    )
    control_failures = sum(int(control.residual > success_tol)
                           for control in controls)

    statistics = {
        "trials": trials,
        "restarts": restarts,
        "d": d0 - 2,
        "violations": violations,
        "pattern_hits": sum(result.pattern_hits for result in results),
        "min_residual": min(result.best_residual for result in results),
        "max_search_radius": max(radii),
        "control_d": d0 - 1,
        "control_failures": control_failures,
        "max_control_residual": max(control.residual for control in controls),
    }
    data = {
        "a": a.tolist(),
        "pattern": pattern.to_dict(),
        "targets": [target.tolist() for target in targets],
        "best_residuals": [result.best_residual for result in results],
        "search_radii": list(radii),
    }
    return _report("fm-general", _stress_verdict(violations, control_failures),
                   statistics, seed, data)


def neumf_functionals(
    m: int, n: int, h: int
) -> Tuple[np.ndarray, list]:
    """Linear functionals that vanish on every NeuMF output.

    Row ``(i, j, k)`` reads ``out[i,i,k] + out[j,j,k] − out[i,j,k] −
    out[j,i,k]`` on the row-major flattened ``m×n×h`` tensor; labels are
    1-based ``(i, j, k)`` triples.

    >>> functionals, labels = neumf_functionals(2, 2, 1)
    >>> functionals.tolist(), labels
    ([[1.0, -1.0, -1.0, 1.0]], [(1, 2, 1)])
    """
    if min(m, n) < 2:
        raise InapplicableError("the exchange identity needs min(m, n) >= 2")
    if h < 1:
        raise ShapeError("h must be positive")

    def flat(i, j, k):
        return (i * n + j) * h + k

    labels = [(i, j, k) for i, j in combinations(range(min(m, n)), 2)
              for k in range(h)]
    functionals = np.zeros((len(labels), m * n * h))
    for row, (i, j, k) in enumerate(labels):
        functionals[row, [flat(i, i, k), flat(j, j, k)]] = 1.0
        functionals[row, [flat(i, j, k), flat(j, i, k)]] = -1.0
    return functionals, [(i + 1, j + 1, k + 1) for i, j, k in labels]


def neumf_unreachable(target, tol: float = SUBCHAIN_IDENTITY_TOL) -> bool:
    """Check whether some functional certifies ``target`` unreachable."""
    target = as_tensor3(target, "target")
    functionals, _ = neumf_functionals(*target.shape)
    return bool(np.any(np.abs(functionals @ target.ravel()) > tol))


def certify_neumf_defect(
    m: int = 3,
    n: int = 3,
    h: int = 2,
    trials: int = 10 ** 3,
    seed: int = SUBCHAIN_SEED,
    d: int = 2,
    identity_tol: float = SUBCHAIN_IDENTITY_TOL,
) -> CertificateReport:
    """Certify the exchange identity on random NeuMF outputs.

    Deviations above ``identity_tol`` count as violations; the witness
    tensor with a single unit entry must exceed it.
    """
    functionals, labels = neumf_functionals(m, n, h)
    neumf = get_map("neumf")

    def trial(rng):
        point = neumf.random_point(rng, d=d, m=m, n=n, h=h)
        return float(np.max(np.abs(functionals @ neumf.evaluate(point)
                                   .ravel())))

    deviations = parallel_map(trial, index_streams(seed, "neumf-defect",
                                                   trials))
    max_violation = max(deviations, default=0.0)
    violations = sum(value > identity_tol for value in deviations)

    witness = np.zeros((m, n, h))
    witness[0, 0, 0] = 1.0
    witness_flagged = neumf_unreachable(witness, identity_tol)

    if violations:
        verdict = REFUTED
    elif not witness_flagged:
        verdict = INCONCLUSIVE
    else:
        verdict = CONFIRMED

    statistics = {
        "trials": trials,
        "violations": violations,
        "max_identity_violation": max_violation,
        "functionals": len(labels),
        "witness_unreachable": witness_flagged,
    }
    data = {
        "shape": [m, n, h],
        "functionals": [
            {"plus": [[i, i, k], [j, j, k]], "minus": [[i, j, k], [j, i, k]]}
            for i, j, k in labels
        ],
    }
    return _report("neumf-defect", verdict, statistics, seed, data)


def certify(case: str, seed: int = SUBCHAIN_SEED, **options):
    """Run the certificate named ``case``."""
    runners = {
        "ex-negative": certify_example_negative,
        "mf-orthant": certify_mf_orthant,
        "mf-general": certify_mf_general,
        "fm-general": certify_fm_general,
        "neumf-defect": certify_neumf_defect,
    }
    if case not in runners:
        raise ShapeError(f"unknown case '{case}', expected one of {CASES}")
    return runners[case](seed=seed, **options)


def _sweep_setup(map_id: str, size, a):
    """Threshold, target sampler and solvers of one sweep."""
    if map_id == "mf":
        m, n = size
        threshold = min(m, n)
        pattern = embedded_mf_pattern(m, n) if threshold >= 2 else None
        radius = mf_origin_radius(TRUST_RADIUS, m, n)

        def draw(rng):
            target = (pattern.sample(rng) if pattern is not None
                      else rng.uniform(-1.0, 1.0, size=(m, n)))
            return 0.9 * radius * target / np.linalg.norm(target)

        def construct(target, d):
            return solve_mf_origin(target, TRUST_RADIUS, d, STRICT).residual

        def stress(target, d):
            return _MFStress(target, d)

    elif map_id == "fm":
        (d0,) = np.atleast_1d(size)
        d0 = int(d0)
        if d0 < 2:
            raise DimensionError("the FM sweep needs d0 >= 2")
        a = _fm_coefficients(d0, a)
        threshold = d0 - 1
        pattern = fm_pattern(a) if d0 >= 3 else None
        radius = fm_rho(a) / (2 * d0)

        def draw(rng):
            target = (pattern.sample(rng) if pattern is not None
                      else rng.uniform(-1.0, 1.0, size=a.size))
            return 0.9 * radius * target / np.max(np.abs(target))

        def construct(target, d):
            base = FMPoint(np.zeros((d, d0)), a)
            return solve_fm_at(base, target, TRUST_RADIUS, STRICT).residual

        def stress(target, d):
            return _FMStress(a, target, d)

    else:
        raise ShapeError(f"phase sweeps cover 'mf' and 'fm', not '{map_id}'")
    return threshold, pattern, draw, construct, stress


def phase_sweep(
    map_id: str,
    size,
    d_range: Sequence[int],
    trials: int = 10,
    seed: int = SUBCHAIN_SEED,
    restarts: int = 20,
    a=None,
    iterations: int = SUBCHAIN_STRESS_ITERATIONS,
    halvings: int = SUBCHAIN_STRESS_HALVINGS,
    success_tol: float = SUBCHAIN_SUCCESS_TOL,
) -> CertificateReport:
    """Tabulate preimage success rates over latent dimensions.

    ``size`` is ``(m, n)`` for MF and ``d0`` for FM. Targets come from the
    unreachable pattern where one exists and are scaled into the certified
    radius of the origin construction, which runs wherever ``d`` clears
    the threshold; below it a stress descent searches the same trust
    ball. Each trial reuses its target across all ``d``.
    """
    d_range = sorted(int(d) for d in d_range)
    if not d_range or d_range[0] < 1:
        raise DimensionError("latent dimensions must be positive")
    threshold, pattern, draw, construct, stress = _sweep_setup(map_id, size,
                                                               a)

    def trial(rng):
        target = draw(rng)
        residuals = []
        for d in d_range:
            if d >= threshold:
                residuals.append(construct(target, d))
            else:
                result = stress_descent(stress(target, d), restarts, rng,
                                        pattern, iterations, halvings,
                                        TRUST_RADIUS, success_tol)
                residuals.append(result.best_residual)
        return residuals

    outcomes = np.array(parallel_map(
        trial, index_streams(seed, f"phase-sweep-{map_id}", trials)
    ))
    rates = np.mean(outcomes <= success_tol, axis=0)
    table = [
        {"d": d, "success_rate": float(rate),
         "method": "constructive" if d >= threshold else "descent"}
        for d, rate in zip(d_range, rates)
    ]

    above = [row["success_rate"] for row in table if row["d"] >= threshold]
    below = [row["success_rate"] for row in table if row["d"] < threshold]
    sharp = all(rate == 1.0 for rate in above)
    if pattern is not None:
        sharp = sharp and all(rate < 1.0 for rate in below)
    statistics = {
        "trials": trials,
        "restarts": restarts,
        "threshold": threshold,
        "violations": sum(rate < 1.0 for rate in above),
        "table": table,
    }
    return _report(f"phase-sweep-{map_id}", CONFIRMED if sharp else REFUTED,
                   statistics, seed,
                   {"size": np.atleast_1d(size).tolist(),
                    "d_range": d_range})
