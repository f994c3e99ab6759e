"""Pure-Python prefix-extremum scan; reference twin of ``_scan_c.pyx``."""

import math

# t = p * log(b)/log(a) carries a few ulps of relative error; keep a wide margin
_REL = 1e-14
_ABS = 1e-14


def scan_chain(a, b, p_start, p_stop, exact_d, exact_less):
    """Running min/max chains of phi(p) over ``p_start <= p < p_stop``.

    Works on ``f(p) = log_a(phi(p)) = q - p*log_a(b)`` in doubles and only
    calls back into exact arithmetic when a decision falls inside the
    error margin:

    * ``exact_d(p)`` returns the exact offset d(p);
    * ``exact_less(p1, d1, p2, d2)`` returns ``phi(p1) < phi(p2)``.

    Returns ``(mins, maxs)``: lists of ``(p, d)``.  The first p of the range
    heads both lists.
    """
    if p_stop <= p_start:
        return [], []
    r = math.log(b) / math.log(a)
    mins = []
    maxs = []
    have = False
    fmin = fmax = emin = emax = 0.0
    pmin = dmin = pmax = dmax = 0
    for p in range(p_start, p_stop):
        t = p * r
        err = t * _REL + _ABS
        q = math.ceil(t)
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
            fmin = fmax = f
            emin = emax = err
            pmin = pmax = p
            dmin = dmax = d
            mins.append((p, d))
            maxs.append((p, d))
            continue
        tol = err + emin
        diff = f - fmin
        if diff < -tol or (diff <= tol and exact_less(p, d, pmin, dmin)):
            fmin, emin, pmin, dmin = f, err, p, d
            mins.append((p, d))
            continue
        tol = err + emax
        diff = f - fmax
        if diff > tol or (diff >= -tol and exact_less(pmax, dmax, p, d)):
            fmax, emax, pmax, dmax = f, err, p, d
            maxs.append((p, d))
    return mins, maxs
