"""Mod-p cohomology of central Frattini extensions.

Job functions return the same report dictionaries as ``frattini --format json``
and raise the matching exception when the job fails.
"""

import json as _json

from . import _core
from ._core import (
    AmbientMismatch,
    BocksteinNotContained,
    BudgetExceeded,
    ConstraintViolation,
    DegenerateSubspace,
    DependentQuadratics,
    ExpressionSyntaxError,
    FrattiniError,
    IndexOutOfRange,
    InvalidArgument,
    NotACocycle,
    PrimeTooSmall,
    SizeLimitExceeded,
    betti,
    bockstein,
    expand,
    hook_content_dimension,
    representatives,
    restrict_to_unp,
    self_conjugate_partitions,
    unp_betti,
)

__all__ = [
    "FrattiniError", "InvalidArgument", "AmbientMismatch", "IndexOutOfRange", "ExpressionSyntaxError",
    "BocksteinNotContained", "DegenerateSubspace", "DependentQuadratics", "SizeLimitExceeded",
    "NotACocycle", "ConstraintViolation", "BudgetExceeded", "PrimeTooSmall",
    "betti", "representatives", "unp_betti", "expand", "hook_content_dimension",
    "self_conjugate_partitions", "bockstein", "restrict_to_unp",
    "run", "koszul", "unp", "group", "bockstein_report", "series", "crosscheck",
]

_ERRORS = {
    "InvalidArgument": InvalidArgument,
    "InputFormatError": InvalidArgument,
    "AmbientMismatch": AmbientMismatch,
    "IndexOutOfRange": IndexOutOfRange,
    "SyntaxError": ExpressionSyntaxError,
    "BocksteinNotContained": BocksteinNotContained,
    "DegenerateSubspace": DegenerateSubspace,
    "DependentQuadratics": DependentQuadratics,
    "SizeLimitExceeded": SizeLimitExceeded,
    "BudgetExceeded": BudgetExceeded,
    "PrimeTooSmall": PrimeTooSmall,
}


def run(command, **options):
    """Run a job and return ``(report, exit_code)`` without raising on job errors."""
    if isinstance(options.get("input"), dict):
        options["input"] = _json.dumps(options["input"])
    text, code = _core.run_job(command, {k: v for k, v in options.items() if v is not None})
    return _json.loads(text), code


def _checked(command, **options):
    report, _ = run(command, **options)
    error = report.get("error")
    if error:
        raise _ERRORS.get(error["type"], FrattiniError)(error["message"])
    return report


def koszul(quadratics=(), w=None, p=None, input=None, force=False, representatives=10, full=False, truncation=None):
    return _checked("koszul", quadratics=list(quadratics), w=w, p=p, input=input, force=force,
                    representatives=representatives, full=full, truncation=truncation)


def unp(n, p=None):
    return _checked("unp", n=n, p=p)


def group(n, p, kind="U", mode="auto", seed=None, workers=None):
    return _checked("group", n=n, p=p, kind=kind, mode=mode, seed=seed, workers=workers)


def bockstein_report(n, p, expressions=(), degree=6, seed=None):
    return _checked("bockstein", n=n, p=p, expressions=list(expressions), degree=degree, seed=seed)


def series(coefficients=None, v=None, w=None, truncation=None, quadratics=(), p=None, input=None):
    return _checked("series", coefficients=coefficients, v=v, w=w, truncation=truncation,
                    quadratics=list(quadratics), p=p, input=input)


def crosscheck(n_max, primes, workers=None):
    return _checked("crosscheck", n_max=n_max, primes=list(primes), workers=workers)
