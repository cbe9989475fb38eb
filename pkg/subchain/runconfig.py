# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Resolved configuration of one command-line run."""

import dataclasses
from typing import Dict, Iterable, Optional

from . import config
from .config import SUBCHAIN_SEED
from .errors import SchemaError

PREFIX = "SUBCHAIN_"


def prefixed(name: str) -> str:
    """Normalize a tolerance name to its ``SUBCHAIN_*`` form.

    >>> prefixed("fd_tol")
    'SUBCHAIN_FD_TOL'
    """
    name = name.strip().upper()
    if not name.startswith(PREFIX):
        name = PREFIX + name
    return name


def default_tolerances(
    names: Optional[Iterable[str]] = None
) -> Dict[str, float]:
    """Collect the ``SUBCHAIN_*`` constants of :mod:`subchain.config`.

    ``names`` restricts the result to the tolerances a command applies.

    >>> default_tolerances()["SUBCHAIN_FD_TOL"]
    1e-06
    >>> default_tolerances(["FD_STEP"])
    {'SUBCHAIN_FD_STEP': 1e-05}
    """
    constants = {
        k: getattr(config, k) for k in dir(config) if k.startswith(PREFIX)
    }
    if names is None:
        return constants
    return {name: constants[name] for name in map(prefixed, names)}


@dataclasses.dataclass
class RunConfig:
    """Command, inputs, seed and tolerances of a run."""

    command: str
    params: dict = dataclasses.field(default_factory=dict)
    seed: int = SUBCHAIN_SEED
    mode: Optional[str] = None
    out: Optional[str] = None
    tolerances: Dict[str, float] = dataclasses.field(
        default_factory=default_tolerances
    )

    def override(self, assignments: Iterable[str]):
        """Apply ``NAME=VALUE`` overrides; the prefix may be left out.

        Only names present in :attr:`tolerances` can be overridden.
        """
        for assignment in assignments:
            if not self.tolerances:
                raise SchemaError(
                    f"{self.command}: takes no tolerance overrides, got "
                    f"'{assignment}'"
                )
            name, sep, text = assignment.partition("=")
            name = prefixed(name)
            if not sep or name not in self.tolerances:
                raise SchemaError(
                    f"{self.command}: unknown tolerance '{assignment}', "
                    f"expected NAME=VALUE with NAME in "
                    f"{sorted(self.tolerances)}"
                )
            try:
                value = type(self.tolerances[name])(float(text))
            except ValueError:
                raise SchemaError(
                    f"tolerance {name} needs a number, got '{text}'"
                ) from None
            if value < 0:
                raise SchemaError(f"tolerance {name} must be >= 0")
            self.tolerances[name] = value
        return self

    def get(self, name: str):
        """Get a resolved tolerance by its name without prefix."""
        return self.tolerances[prefixed(name)]

    def to_dict(self) -> dict:
        """Serialize the run configuration."""
        return dataclasses.asdict(self)
