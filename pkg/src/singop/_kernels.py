"""Compiled inner loops for residue-ring series arithmetic."""

import numpy as np
from numba import njit


@njit(cache=True)
def div_sparse_mod(num, exps, coefs, inv0, modulus):
    # exps sorted ascending and > 0; coefs already reduced into [0, modulus)
    size = num.shape[0]
    out = np.empty(size, dtype=np.int64)
    nterms = exps.shape[0]
    for n in range(size):
        acc = num[n]
        for t in range(nterms):
            e = exps[t]
            if e > n:
                break
            acc = (acc - coefs[t] * out[n - e]) % modulus
        out[n] = (acc * inv0) % modulus
    return out
