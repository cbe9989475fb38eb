# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Local surjectivity and subdifferential chain rules of factorization maps.

>>> import numpy as np
>>> solution = solve_mf_origin(np.array([[0.1, 0.0], [0.0, 0.1]]), 1.0, 2)
>>> solution.solved
True
"""

from .certify import (CertificateReport, certify_example_negative,
                      certify_fm_general, certify_mf_general,
                      certify_mf_orthant, certify_neumf_defect, phase_sweep)
from .errors import SubchainError
from .fmdata import SparseSample, build_qualified, check_qualification
from .losses import ProductDifferenceLoss, SeparableLoss, make_loss
from .maps import MAPS, evaluate, get_map, jacobian
from .preimage import (PreimageSolution, solve_cp_dagger_at, solve_cp_origin,
                       solve_fm_at, solve_fm_tower, solve_mf_at,
                       solve_mf_origin)
from .subdiff import (chainrule_upper, contains_zero, fm_train_subdiff,
                      gmf_subdiff, sample_gradients, support_gap)
from .types import (CPDaggerPoint, CPPoint, FactorPoint, FMPoint, GMFPoint,
                    HOFMPoint, NeuFMPoint, NeuMFPoint, PairIndexer)
from .version import __version__
from .zonotope import SubgradientZonotope

__all__ = (
    "__version__",
    "CertificateReport",
    "CPDaggerPoint",
    "CPPoint",
    "FactorPoint",
    "FMPoint",
    "GMFPoint",
    "HOFMPoint",
    "MAPS",
    "NeuFMPoint",
    "NeuMFPoint",
    "PairIndexer",
    "PreimageSolution",
    "ProductDifferenceLoss",
    "SeparableLoss",
    "SparseSample",
    "SubchainError",
    "SubgradientZonotope",
    "build_qualified",
    "certify_example_negative",
    "certify_fm_general",
    "certify_mf_general",
    "certify_mf_orthant",
    "certify_neumf_defect",
    "chainrule_upper",
    "check_qualification",
    "contains_zero",
    "evaluate",
    "fm_train_subdiff",
    "get_map",
    "gmf_subdiff",
    "jacobian",
    "make_loss",
    "phase_sweep",
    "sample_gradients",
    "solve_cp_dagger_at",
    "solve_cp_origin",
    "solve_fm_at",
    "solve_fm_tower",
    "solve_mf_at",
    "solve_mf_origin",
    "support_gap",
)
