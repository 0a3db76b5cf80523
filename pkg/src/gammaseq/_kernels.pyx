# cython: language_level=3
"""Compiled fixed-point kernels.

Same integer algorithms and contracts as ``gammaseq._kernels_py``;
see that module for the protocol.  The big integers stay Python
objects, the loop bookkeeping is C, and outputs are bit-for-bit equal
to the pure backend.
"""

BACKEND = "compiled"


cdef inline object _cdiv(object a, object b):
    return -((-a) // b)


def harmonic_fixed(n, q):
    """Enclosure of (1 + 1/2 + ... + 1/n) * 2**q; hi - lo <= n."""
    cdef long long k, nn = n
    lo = 0
    hi = 0
    one = 1 << q
    for k in range(1, nn + 1):
        d, r = divmod(one, k)
        lo += d
        if r:
            hi += d + 1
        else:
            hi += d
    return lo, hi


def atanh_fixed(u, w, q):
    """Enclosure of atanh(u/w) * 2**q for integers 0 <= 2*u <= w."""
    if u == 0:
        return 0, 0
    if 2 * u > w:
        raise ValueError("atanh_fixed requires u/w <= 1/2")
    u2 = u * u
    w2 = w * w
    p_lo, r = divmod(u << q, w)
    p_hi = p_lo + (1 if r else 0)
    s_lo = p_lo
    s_hi = p_hi
    cdef long long d = 3
    while True:
        p_lo = (p_lo * u2) // w2
        p_hi = _cdiv(p_hi * u2, w2)
        if p_hi < d:
            s_hi += 2
            return s_lo, s_hi
        s_lo += p_lo // d
        s_hi += _cdiv(p_hi, d)
        d += 2


def ln2_fixed(q):
    """Enclosure of ln(2) * 2**q, via ln 2 = 2 atanh(1/3)."""
    lo, hi = atanh_fixed(1, 3, q)
    return 2 * lo, 2 * hi


def gamma_series_fixed(x, q):
    """Enclosure of sum_{k>=1} (-1)^(k+1) x^k / (k k!) at scale 2**q."""
    if x < 1:
        raise ValueError("gamma_series_fixed requires x >= 1")
    t_lo = 1 << q
    t_hi = t_lo
    s_lo = 0
    s_hi = 0
    cdef long long k = 1
    while True:
        t_lo = (t_lo * x) // k
        t_hi = _cdiv(t_hi * x, k)
        if k & 1:
            s_lo += t_lo // k
            s_hi += _cdiv(t_hi, k)
        else:
            s_lo -= _cdiv(t_hi, k)
            s_hi -= t_lo // k
        if k >= x and t_hi * x < (k + 1) * (k + 1):
            return s_lo - 2, s_hi + 2
        k += 1
