"""Kernel backend selection.

Imports the compiled kernels when the extension was built, otherwise the pure
Python reference implementation. Set MV2CODEC_PURE=1 to force the fallback.
"""

import os

from . import _pykernels as pure

if os.environ.get("MV2CODEC_PURE", "0") not in ("", "0"):
    kernels = pure
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        kernels = pure
        BACKEND = "python"
