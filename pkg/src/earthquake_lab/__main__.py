"""``python3 -m earthquake_lab``; EARTHQUAKE_LAB_THREADS caps the BLAS worker threads."""

import os
import sys


def _cap_threads():
    n = os.environ.get("EARTHQUAKE_LAB_THREADS")
    if n:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, n)


def run():
    _cap_threads()
    from .cli import main

    return main()


if __name__ == "__main__":
    sys.exit(run())
