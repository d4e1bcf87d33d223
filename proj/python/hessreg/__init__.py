"""Hessian Schatten-norm regularized image reconstruction.

Images are 2-d float64 arrays indexed (row, column); Hessian fields are
(3, rows, columns) arrays stacking the d11, d22 and d12 planes.
"""

from ._hessreg import (
    degrade,
    denoise,
    dual_ball_project,
    hessian,
    hessian_adjoint,
    hessian_norm_bound,
    isnr,
    mixed_l1_sp,
    mixed_linf_sq,
    mse,
    project_schatten_ball,
    psnr,
    reconstruct,
)

__all__ = [
    "degrade",
    "denoise",
    "dual_ball_project",
    "hessian",
    "hessian_adjoint",
    "hessian_norm_bound",
    "isnr",
    "mixed_l1_sp",
    "mixed_linf_sq",
    "mse",
    "project_schatten_ball",
    "psnr",
    "reconstruct",
]
