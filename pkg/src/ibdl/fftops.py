"""Thin FFT backend.

All periodic transforms in the package go through this module so the
worker count can be controlled in one place (CLI --threads).  scipy's
pocketfft is used when available; per-line 1-D transforms make the
multithreaded result bit-identical to the serial one.
"""

import numpy as np

try:
    from scipy import fft as _fft

    _HAVE_SCIPY = True
except ImportError:  # pragma: no cover
    _fft = np.fft
    _HAVE_SCIPY = False

_workers = 1


def set_fft_workers(k):
    """Set the number of FFT worker threads (>=1)."""
    global _workers
    _workers = max(1, int(k))


def get_fft_workers():
    return _workers


def rfft2(a):
    if _HAVE_SCIPY:
        return _fft.rfft2(a, workers=_workers)
    return _fft.rfft2(a)


def irfft2(a, shape):
    if _HAVE_SCIPY:
        return _fft.irfft2(a, s=shape, workers=_workers)
    return _fft.irfft2(a, s=shape)
