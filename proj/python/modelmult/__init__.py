"""Multipliers between model spaces: numeric checks and reports."""

from ._core import (  # noqa: F401
    DescriptorError,
    DomainError,
    IllConditionedError,
    InnerFunction,
    ModelMultError,
    NotImplementedModelError,
    PartialResultError,
    cayley,
    clark_measure,
    eval_product,
    fixture_names,
    frostman_shift,
    kernel_norm_sq,
    kernel_norm_sq_quadrature,
    lyubarskii_seip_ratio,
    multiplier_basis,
    run_cli,
    toeplitz_kernel_dim,
    verify_example,
    zero_midpoints,
)

__version__ = "1.0.0"
