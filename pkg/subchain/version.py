# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Version information for subchain.

This file is imported by ``subchain.__init__``,
and parsed by ``setup.py``.
"""

__version__ = "0.1.0"
