# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Exceptions and warnings raised by subchain."""


class SubchainError(Exception):
    """Base class of all subchain errors."""


class ShapeError(SubchainError, ValueError):
    """Arrays do not have the shapes an operation requires."""


class InvariantError(SubchainError, ValueError):
    """A value violates an invariant of its type."""


class DimensionError(SubchainError):
    """The latent dimension is too small for a construction."""


class AdmissibilityError(SubchainError):
    """A target lies outside the certified radius of a strict solver."""


class UnknownMapError(SubchainError, LookupError):
    """The map identifier is not part of the catalog."""


class UnsupportedLossError(SubchainError, LookupError):
    """The loss is not part of the catalog or not usable here."""


class QualificationError(SubchainError):
    """A dataset violates the pairwise support qualification."""

    def __init__(self, message, violations=()):
        """Keep the violating sample pairs next to the message."""
        super().__init__(message)
        self.violations = list(violations)


class SchemaError(SubchainError, ValueError):
    """Input data does not follow the documented format."""


class DegenerateSamplingError(SubchainError):
    """Gradient sampling hit nondifferentiable points too often."""


class InapplicableError(SubchainError):
    """A certificate is requested outside the sizes it applies to."""


class CertificationWarning(UserWarning):
    """An oracle is used outside the dimensions it is certified for."""
