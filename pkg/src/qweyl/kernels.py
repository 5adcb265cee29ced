"""Select the compiled kernel core when available, else the pure fallback.

`qweyl.kernels.impl` is the active module; `HAVE_SPEEDUPS` says which one won.
Set QWEYL_PURE=1 in the environment to force the pure-Python kernels (used by
the benchmark and by the kernel-agreement tests).
"""

import os

from . import _speedups_py as _pure

if os.environ.get("QWEYL_PURE"):
    impl = _pure
    HAVE_SPEEDUPS = False
else:
    try:
        from . import _speedups as _fast  # compiled extension, optional

        impl = _fast
        HAVE_SPEEDUPS = True
    except ImportError:
        impl = _pure
        HAVE_SPEEDUPS = False

pure = _pure

poly_mul = impl.poly_mul
ext_mul = impl.ext_mul
ext_sigma = impl.ext_sigma
ext_norm = impl.ext_norm
ext_norm_witness = impl.ext_norm_witness
ext_norm_image = impl.ext_norm_image
ce_mul = impl.ce_mul
