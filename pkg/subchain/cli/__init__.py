# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""CLI commands for subchain."""

from .cli import subchain

__all__ = ("subchain",)
