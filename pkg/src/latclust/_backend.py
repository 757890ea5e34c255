"""Select the transfer-loop kernel at import time.

The compiled extension (latclust._core) is preferred; the pure-numpy twin
(latclust._core_py) is used when the extension is missing or when the
environment variable LATCLUST_BACKEND is set to "python".
"""

import os

if os.environ.get("LATCLUST_BACKEND", "").lower() in ("python", "py", "numpy"):
    from . import _core_py as kernel

    BACKEND = "python"
else:
    try:
        from . import _core as kernel

        BACKEND = "compiled"
    except ImportError:
        from . import _core_py as kernel

        BACKEND = "python"
