"""Polya-Gamma Gibbs samplers for Bayesian logistic linear mixed models.

Thin re-export of the compiled extension; the C++ library is the source of
truth for algorithms, numerics, and reproducibility guarantees.
"""

from ._pgmix import (
    ModelSpec,
    PgmixError,
    RngStream,
    acf,
    blocking_violations,
    check_ge,
    ess,
    log_pg_density,
    make_model,
    mess,
    msj,
    pg_density,
    pg_mean,
    run_chain,
    sample_pg1,
    sample_pg_int,
    validate,
)

__all__ = [
    "ModelSpec",
    "PgmixError",
    "RngStream",
    "acf",
    "blocking_violations",
    "check_ge",
    "ess",
    "log_pg_density",
    "make_model",
    "mess",
    "msj",
    "pg_density",
    "pg_mean",
    "run_chain",
    "sample_pg1",
    "sample_pg_int",
    "validate",
]
