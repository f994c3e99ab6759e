# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled prefix-extremum scan; same algorithm and margins as ``_scan_py``."""

from libc.math cimport log, ceil

cdef double _REL = 1e-14
cdef double _ABS = 1e-14


def scan_chain(long long a, long long b, long long p_start, long long p_stop,
               exact_d, exact_less):
    cdef double r, t, err, gap, f, tol, diff
    cdef double fmin = 0.0, fmax = 0.0, emin = 0.0, emax = 0.0
    cdef long long p, q, d
    cdef long long pmin = 0, dmin = 0, pmax = 0, dmax = 0
    cdef bint have = False
    mins = []
    maxs = []
    if p_stop <= p_start:
        return mins, maxs
    r = log(<double>b) / log(<double>a)
    for p in range(p_start, p_stop):
        t = p * r
        err = t * _REL + _ABS
        q = <long long>ceil(t)
        gap = q - t
        if p == 0:
            d = 0
            q = 0
        elif gap < err or gap > 1.0 - err:
            d = exact_d(p)
            q = p + d
        else:
            d = q - p
        f = q - t
        if not have:
            have = True
            fmin = f
            fmax = f
            emin = err
            emax = err
            pmin = p
            pmax = p
            dmin = d
            dmax = d
            mins.append((p, d))
            maxs.append((p, d))
            continue
        tol = err + emin
        diff = f - fmin
        if diff < -tol or (diff <= tol and exact_less(p, d, pmin, dmin)):
            fmin = f
            emin = err
            pmin = p
            dmin = d
            mins.append((p, d))
            continue
        tol = err + emax
        diff = f - fmax
        if diff > tol or (diff >= -tol and exact_less(pmax, dmax, p, d)):
            fmax = f
            emax = err
            pmax = p
            dmax = d
            maxs.append((p, d))
    return mins, maxs
