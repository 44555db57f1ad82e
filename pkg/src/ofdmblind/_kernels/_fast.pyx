# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: progression search and the lag-objective scan.

Contracts mirror `_reference`; see that module for documentation.
"""
import numpy as np

cimport numpy as cnp

cnp.import_array()


def progression_search(peaks, int tol=1):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] pk = np.ascontiguousarray(peaks, dtype=np.int64)
    cdef Py_ssize_t n = pk.shape[0]
    if n < 2:
        return 0, 0
    cdef long long k_max = pk[n - 1]
    cdef Py_ssize_t size = <Py_ssize_t>(k_max + tol + 2)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] member = np.zeros(size, dtype=np.uint8)
    cdef Py_ssize_t m
    cdef long long v, d
    for m in range(n):
        for d in range(-tol, tol + 1):
            v = pk[m] + d
            if 0 <= v < size:
                member[v] = 1

    cdef Py_ssize_t i_hi = (n - 1) // 2 - 1
    cdef Py_ssize_t j_hi = (n + 1) // 2
    if j_hi > n - 1:
        j_hi = n - 1
    cdef int n_use = 0, spacing = 0, n_cur
    cdef long long step, k_cur
    cdef Py_ssize_t i, j
    for i in range(i_hi + 1):
        for j in range(i + 1, j_hi + 1):
            step = pk[j] - pk[i]
            if step <= 3:
                continue
            n_cur = 2
            k_cur = pk[j]
            while k_cur < k_max:
                k_cur += step
                if k_cur < size and member[k_cur]:
                    n_cur += 1
            if n_cur > n_use:
                n_use = n_cur
                spacing = <int>step
    return n_use, spacing


def autocorr_scan(r, Py_ssize_t n_terms, Py_ssize_t k_max):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] x = np.ascontiguousarray(r, dtype=np.complex128)
    cdef Py_ssize_t n = x.shape[0]
    if n_terms < 1 or k_max < 1 or k_max + n_terms > n:
        raise ValueError("need 1 <= k_max and k_max + n_terms <= len(r)")
    # prefix sums make every window energy O(1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cum = np.empty(n + 1, dtype=np.float64)
    cdef Py_ssize_t i, k
    cdef double re, im, ar, ai, br, bi, den, head
    cum[0] = 0.0
    for i in range(n):
        cum[i + 1] = cum[i] + x[i].real * x[i].real + x[i].imag * x[i].imag
    head = cum[n_terms]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] obj = np.empty(k_max, dtype=np.float64)
    for k in range(1, k_max + 1):
        re = 0.0
        im = 0.0
        for i in range(n_terms):
            ar = x[i].real
            ai = x[i].imag
            br = x[i + k].real
            bi = x[i + k].imag
            # a * conj(b)
            re += ar * br + ai * bi
            im += ai * br - ar * bi
        den = 0.5 * (head + cum[k + n_terms] - cum[k])
        obj[k - 1] = (re * re + im * im) ** 0.5 / den if den > 0.0 else 0.0
    return obj
