"""Hot numeric loops.

Each kernel exists twice: a loop body compiled with numba, and a numpy
expression used when numba is unavailable or disabled.  The public names
dispatch on :mod:`braidexp._backend`; ``*_numba`` / ``*_numpy`` are kept
importable so the benchmark and the agreement tests can call both.
"""
import math

import numpy as np

from . import _backend


def _convolve_loop(a, b):
    na = a.shape[0]
    nb = b.shape[0]
    out = np.zeros(na + nb - 1)
    # outer loop over k, so each out[n] accumulates a[k] b[n-k] left to right
    for k in range(na):
        ak = a[k]
        for j in range(nb):
            out[k + j] += ak * b[j]
    return out


def convolve_numpy(a, b):
    # one shifted axpy per k, so every output index accumulates in k order
    out = np.zeros(a.shape[0] + b.shape[0] - 1)
    nb = b.shape[0]
    for k in range(a.shape[0]):
        out[k : k + nb] += a[k] * b
    return out


convolve_numba = _backend.jit(_convolve_loop)


def convolve(a, b):
    """Full Cauchy product of two dense float64 arrays."""
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    if convolve_numba is not None:
        return convolve_numba(a, b)
    return convolve_numpy(a, b)


def _closed_form_loop(ns, coefs, pi_pows, n_pows):
    # value(n) = (-1)^n * sum_j coefs[j] * pi^pi_pows[j] / n^n_pows[j], n != 0
    out = np.zeros(ns.shape[0])
    nt = coefs.shape[0]
    for i in range(ns.shape[0]):
        n = ns[i]
        s = 0.0
        for j in range(nt):
            s += coefs[j] * math.pi ** pi_pows[j] / float(n) ** n_pows[j]
        if n % 2 != 0:
            s = -s
        out[i] = s
    return out


def closed_form_numpy(ns, coefs, pi_pows, n_pows):
    ns = np.asarray(ns, dtype=np.float64)
    terms = (coefs * np.pi ** pi_pows)[None, :] / ns[:, None] ** n_pows[None, :]
    sign = np.where(np.asarray(ns, dtype=np.int64) % 2 != 0, -1.0, 1.0)
    return sign * terms.sum(axis=1)


closed_form_numba = _backend.jit(_closed_form_loop)


def closed_form_values(ns, coefs, pi_pows, n_pows):
    """Evaluate ``(-1)^n sum_j c_j pi^p_j n^-e_j`` at the nonzero integers ``ns``."""
    ns = np.ascontiguousarray(ns, dtype=np.int64)
    coefs = np.ascontiguousarray(coefs, dtype=np.float64)
    pi_pows = np.ascontiguousarray(pi_pows, dtype=np.float64)
    n_pows = np.ascontiguousarray(n_pows, dtype=np.float64)
    if closed_form_numba is not None:
        return closed_form_numba(ns, coefs, pi_pows, n_pows)
    return closed_form_numpy(ns, coefs, pi_pows, n_pows)


def _abel_loop(x, max_terms, cutoff):
    # sum_{n=1}^{max_terms} (-1)^(n+1) 2 x^n, consecutive terms paired as
    # 2 x^n (1 - x) to avoid cancellation; Kahan-compensated
    s = 0.0
    c = 0.0
    used = 0
    omx = 1.0 - x
    n = 1
    while n <= max_terms:
        mag = 2.0 * x ** n
        if n + 1 <= max_terms:
            term = mag * omx
            step = 2
        else:
            term = mag
            step = 1
        y = term - c
        t = s + y
        c = (t - s) - y
        s = t
        used = n + step - 1
        if mag < cutoff:
            break
        n += step
    return s, used


def abel_numpy(x, max_terms, cutoff, chunk=1 << 20):
    partial = []
    used = 0
    omx = 1.0 - x
    start = 1
    while start <= max_terms:
        stop = min(start + 2 * chunk, max_terms + 1)
        n = np.arange(start, stop, 2, dtype=np.float64)
        mag = 2.0 * x ** n
        small = np.nonzero(mag < cutoff)[0]
        if small.size:
            n = n[: small[0] + 1]
            mag = mag[: small[0] + 1]
        paired = n + 1 <= max_terms
        terms = np.where(paired, mag * omx, mag)
        partial.append(math.fsum(terms))
        used = int(n[-1]) + (1 if paired[-1] else 0)
        if small.size:
            break
        start = int(n[-1]) + 2
    return math.fsum(partial), used


abel_numba = _backend.jit(_abel_loop)


def abel_sum(x, max_terms, cutoff):
    """Damped alternating twist sum; returns ``(value, terms_used)``."""
    if abel_numba is not None:
        s, used = abel_numba(float(x), int(max_terms), float(cutoff))
        return float(s), int(used)
    return abel_numpy(float(x), int(max_terms), float(cutoff))


def _count_ordered_loop(samples):
    count = 0
    rows, cols = samples.shape
    for i in range(rows):
        ok = True
        for j in range(cols - 1):
            if not samples[i, j] > samples[i, j + 1]:
                ok = False
                break
        if ok:
            count += 1
    return count


def count_ordered_numpy(samples):
    if samples.shape[1] < 2:
        return samples.shape[0]
    return int(np.count_nonzero(np.all(samples[:, :-1] > samples[:, 1:], axis=1)))


count_ordered_numba = _backend.jit(_count_ordered_loop)


def count_ordered(samples):
    """Number of rows whose entries are strictly decreasing."""
    samples = np.ascontiguousarray(samples, dtype=np.float64)
    if count_ordered_numba is not None:
        return int(count_ordered_numba(samples))
    return count_ordered_numpy(samples)
