"""Finite-state Kantorovich operators and linear transfers."""

from ._kantor import (
    AbsoluteContinuityViolated,
    CertificateUnavailable,
    DeadState,
    DimensionMismatch,
    Error,
    NegativeCycle,
    NoConvergence,
    PrimalInfinite,
    SchemaError,
    backward,
    convolve,
    entropic_apply,
    forward,
    markov_apply,
    mather,
    max_plus_axioms,
    ot,
    peierls,
    power,
    schrodinger,
    sft_solve,
    sinkhorn,
    weak_kam,
)

__all__ = [
    "AbsoluteContinuityViolated",
    "CertificateUnavailable",
    "DeadState",
    "DimensionMismatch",
    "Error",
    "NegativeCycle",
    "NoConvergence",
    "PrimalInfinite",
    "SchemaError",
    "backward",
    "convolve",
    "entropic_apply",
    "forward",
    "markov_apply",
    "mather",
    "max_plus_axioms",
    "ot",
    "peierls",
    "power",
    "schrodinger",
    "sft_solve",
    "sinkhorn",
    "weak_kam",
]
