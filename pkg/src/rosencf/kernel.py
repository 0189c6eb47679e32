"""Kernel selection: compiled extension if available, pure Python otherwise.

Set ROSENCF_PURE=1 to force the pure-Python kernel (used by the benchmark
and by the backend-equivalence tests).
"""

import os

if os.environ.get("ROSENCF_PURE"):
    from . import _kernel_py as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _impl

BACKEND = _impl.BACKEND

vec_is_zero = _impl.vec_is_zero
vec_add = _impl.vec_add
vec_sub = _impl.vec_sub
vec_neg = _impl.vec_neg
vec_scale = _impl.vec_scale
vec_mul = _impl.vec_mul
lambda_shift = _impl.lambda_shift
mat_mul = _impl.mat_mul
mat_mul_tb = _impl.mat_mul_tb
mat_det = _impl.mat_det
mat_apply = _impl.mat_apply
tb_inv_apply = _impl.tb_inv_apply
cross = _impl.cross
eval_cf_matrix = _impl.eval_cf_matrix
ivec_sign = _impl.ivec_sign
dyadic_poly_sign = _impl.dyadic_poly_sign
proj_normalize = _impl.proj_normalize
