"""Additive Schwarz preconditioning with adaptive coarse spaces for 3D diffusion."""

from ._core import (
    CoarseSpace,
    Preconditioner,
    Problem,
    build_coarse,
    make_problem,
    pcg_solve,
    run_config,
)

__all__ = [
    "CoarseSpace",
    "Preconditioner",
    "Problem",
    "build_coarse",
    "make_problem",
    "pcg_solve",
    "run_config",
]
