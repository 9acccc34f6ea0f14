"""Marsden-Weinstein reduction of invariant symplectic connections on T*G."""

import json

from ._core import (
    SymredError,
    algebra_dim,
    catalog_names,
    schema_version,
    stabilizer_basis,
    structure_constants,
)
from ._core import run as _run

__all__ = [
    "SymredError",
    "algebra_dim",
    "catalog_names",
    "run_command",
    "schema_version",
    "stabilizer_basis",
    "structure_constants",
]


def run_command(verb, config, *, seed=None, fd_step=None, tol_scale=None):
    """Run a CLI verb in-process.

    ``config`` is a dict (or a JSON string) in the same format the command-line
    tool reads. Returns ``(report, exit_code)`` with the report as a dict.
    """
    text = config if isinstance(config, str) else json.dumps(config)
    report, code = _run(verb, text, seed, fd_step, tol_scale)
    return json.loads(report), code
