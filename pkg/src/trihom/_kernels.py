"""Modular elimination kernels.

The rank-mod-p inner loop is the one hot numeric kernel in the package.
It ships in two versions: a numba-jitted one and a pure-numpy one, chosen
by the AK_KERNELS environment variable ("numba" | "python"); numba is the
default when importable.  Primes must be below 2**31 so products fit in
int64; larger primes take the exact Python path in exactla.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba present in CI
    HAVE_NUMBA = False

    def njit(*args, **kwargs):  # type: ignore
        def wrap(f):
            return f

        if args and callable(args[0]):
            return args[0]
        return wrap


def kernel_mode() -> str:
    mode = os.environ.get("AK_KERNELS", "").strip().lower()
    if mode not in ("numba", "python"):
        mode = "numba" if HAVE_NUMBA else "python"
    if mode == "numba" and not HAVE_NUMBA:
        mode = "python"
    return mode


def rank_mod_p_numpy(a: np.ndarray, p: int) -> int:
    """Row-echelon rank of an int64 matrix mod p < 2**31, vectorized rows."""
    a = np.asarray(a, dtype=np.int64) % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[r + 1 :, c]
        mask = col != 0
        if mask.any():
            a[r + 1 :][mask] = (a[r + 1 :][mask] - np.outer(col[mask], a[r])) % p
        r += 1
    return r


@njit(cache=True)
def _rank_mod_p_jit(a: np.ndarray, p: np.int64) -> np.int64:  # pragma: no cover
    rows, cols = a.shape
    for i in range(rows):
        for j in range(cols):
            a[i, j] = a[i, j] % p
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv == -1:
            continue
        if piv != r:
            for j in range(cols):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        # modular inverse by Fermat
        inv = np.int64(1)
        base = a[r, c] % p
        e = p - 2
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for j in range(cols):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(r + 1, rows):
            f = a[i, c]
            if f != 0:
                for j in range(cols):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        r += 1
    return r


def rank_mod_p_numba(a: np.ndarray, p: int) -> int:
    a = np.array(a, dtype=np.int64)
    return int(_rank_mod_p_jit(a, np.int64(p)))


def rank_mod_p(a: np.ndarray, p: int) -> int:
    """Dispatch on AK_KERNELS; both paths give identical results."""
    if p >= 1 << 31:
        raise ValueError("kernel path requires p < 2**31")
    if kernel_mode() == "numba":
        return rank_mod_p_numba(a, p)
    return rank_mod_p_numpy(a, p)
