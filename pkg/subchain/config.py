# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Default tolerances and limits of subchain.

Library functions take these values as keyword defaults. Each command
reports the ones it applies in its :class:`subchain.runconfig.RunConfig`,
where they can be overridden per run.
"""

SUBCHAIN_FD_STEP = 1e-5
"""Step of the central differences used by all self-checks."""

SUBCHAIN_FD_TOL = 1e-6
"""Accepted deviation between a Jacobian and its central difference."""

SUBCHAIN_MATERIALIZE_LIMIT = 10 ** 6
"""Largest ``in_dim * out_dim`` for which a Jacobian is materialized."""

SUBCHAIN_RANK_RTOL = 1e-12
"""Relative singular value threshold of the numerical rank."""

SUBCHAIN_RESIDUAL_RTOL = 1e-9
"""Solver residual must stay below ``rtol * (1 + ||target||)``."""

SUBCHAIN_RADIUS_SLACK = 1e-12
"""Relative slack when comparing a target norm to a certified radius."""

SUBCHAIN_KINK_TOL = 1e-12
"""Distance to a kink below which a loss counts as nondifferentiable."""

SUBCHAIN_MAX_KINK_RATE = 0.9
"""Kink hit rate above which gradient sampling is declared degenerate."""

SUBCHAIN_INCLUSION_TOL = 1e-8
"""Accepted distance of a sampled gradient to the chain rule zonotope."""

SUBCHAIN_ZERO_TOL = 1e-16
"""Squared norm below which a zonotope is said to contain zero."""

SUBCHAIN_SUCCESS_TOL = 1e-8
"""Residual below which a stress test or sweep counts as a success."""

SUBCHAIN_IDENTITY_TOL = 1e-12
"""Accepted violation of the NeuMF exchange identity."""

SUBCHAIN_STRESS_ITERATIONS = 10 ** 4
"""Gradient descent iterations per restart of a stress test."""

SUBCHAIN_STRESS_HALVINGS = 10
"""Step-size halvings tried per stress test iteration."""

SUBCHAIN_STRESS_RESTARTS = 100
"""Default number of random restarts of a stress test."""

SUBCHAIN_SEED = 7
"""Master seed used when none is given."""
