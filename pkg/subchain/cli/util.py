# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Commonly used utility functions."""

import functools
import os
import tempfile
import warnings
from datetime import datetime, timezone
from typing import Iterable, Optional

import click

from ..config import SUBCHAIN_SEED
from ..errors import (AdmissibilityError, CertificationWarning,
                      DegenerateSamplingError, QualificationError,
                      SubchainError)
from ..runconfig import RunConfig, default_tolerances
from ..serialization import dumps, jsonable, load_json
from ..version import __version__

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

FAILED_CHECKS = (AdmissibilityError, DegenerateSamplingError,
                 QualificationError)


def _param(value):
    if hasattr(value, "read"):
        return getattr(value, "name", "-")
    return jsonable(value)


def get_run_config(
    seed: int = SUBCHAIN_SEED,
    mode: Optional[str] = None,
    out: Optional[str] = None,
    tolerances: Iterable[str] = (),
    applied: Iterable[str] = (),
) -> RunConfig:
    """Resolve the run configuration of the current command.

    ``applied`` names the tolerances the command passes on; only those
    can be overridden and only those are reported.
    """
    ctx = click.get_current_context()
    params = {name: _param(value) for name, value in ctx.params.items()}
    config = RunConfig(command=ctx.command_path, params=params, seed=seed,
                       mode=mode, out=out,
                       tolerances=default_tolerances(applied))
    return config.override(tolerances)


def read_json(stream, name: str):
    """Parse a JSON input file."""
    return load_json(stream, getattr(stream, "name", name))


def build_report(config: RunConfig, result) -> dict:
    """Wrap an operation result into the report envelope.

    ``created`` is the only field that differs between reruns.
    """
    return {
        "tool": "subchain",
        "version": __version__,
        "command": config.command,
        "params": config.params,
        "seed": config.seed,
        "mode": config.mode,
        "tolerances": config.tolerances,
        "created": datetime.now(timezone.utc).isoformat(),
        "result": jsonable(result),
    }


def _write_atomic(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    handle, temporary = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(handle, "w") as stream:
            stream.write(text)
        os.replace(temporary, path)
    except OSError:
        if os.path.exists(temporary):
            os.unlink(temporary)
        raise


def write_report(config: RunConfig, result, passed: bool) -> int:
    """Emit the report on stdout or to ``--out``; get the exit code."""
    text = dumps(build_report(config, result)) + "\n"
    if config.out:
        _write_atomic(config.out, text)
        fg = "green" if passed else "red"
        click.secho(f"wrote report to {config.out}", fg=fg)
    else:
        click.echo(text, nl=False)
    return EXIT_OK if passed else EXIT_FAILED


def handle_errors(command):
    """Map library errors to exit codes and warnings to notices."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", CertificationWarning)
            try:
                code = command(*args, **kwargs)
            except SubchainError as error:
                click.secho(f"error: {error}", fg="red", err=True)
                code = (EXIT_FAILED if isinstance(error, FAILED_CHECKS)
                        else EXIT_USAGE)
        for warning in caught:
            if issubclass(warning.category, CertificationWarning):
                click.secho(f"notice: {warning.message}", fg="yellow",
                            err=True)
        click.get_current_context().exit(code or EXIT_OK)

    return wrapper
