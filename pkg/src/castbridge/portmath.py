"""Portable log and exp that give identical doubles in every language.

The span scorer promises that independent implementations reproduce each
other's scores bit for bit. Platform math libraries disagree about the last
ulp of log and exp (the same call can differ between C, Python, and
JavaScript runtimes), so the scorer never calls them. It uses these fixed
ports of the classic Sun fdlibm algorithms instead: argument reduction plus
a minimax polynomial, built only from +, -, *, / and bit surgery, all of
which IEEE 754 defines exactly.

Accuracy is the usual fdlibm bound (well under one ulp). Two anchor
identities the scorer relies on hold by construction:

- ``portable_log(0.5)`` is exactly ``-0.6931471805599453`` (the double
  nearest ln 2), because the reduction maps 0.5 to f = 0 and returns the
  stored two-part ln 2 constant.
- ``portable_exp(portable_log(0.5))`` is exactly ``0.5``, because the
  reduction peels off one power of two and the residual is far below one
  ulp of 1.0.
"""

from __future__ import annotations

import struct

__all__ = ["portable_exp", "portable_log"]


def _words(x: float) -> tuple[int, int]:
    hi, lo = struct.unpack(">II", struct.pack(">d", x))
    return hi, lo


def _with_high_word(x: float, hi: int) -> float:
    _, lo = _words(x)
    return struct.unpack(">d", struct.pack(">II", hi & 0xFFFFFFFF, lo))[0]


def _from_words(hi: int, lo: int) -> float:
    return struct.unpack(">d", struct.pack(">II", hi & 0xFFFFFFFF, lo & 0xFFFFFFFF))[0]


_TWO54 = 1.80143985094819840000e16
_LN2_HI = 6.93147180369123816490e-01
_LN2_LO = 1.90821492927058770002e-10
_LG1 = 6.666666666666735130e-01
_LG2 = 3.999999999940941908e-01
_LG3 = 2.857142874366239149e-01
_LG4 = 2.222219843214978396e-01
_LG5 = 1.818357216161805012e-01
_LG6 = 1.531383769920937332e-01
_LG7 = 1.479819860511658591e-01


def portable_log(x: float) -> float:
    """Natural log, rounded exactly like the reference algorithm."""
    if x != x:  # NaN propagates
        return x
    hx, lx = _words(x)
    k = 0
    if hx >= 0x80000000:  # sign bit set: negative or -0
        raise ValueError("math domain error")
    if hx < 0x00100000:  # zero or subnormal
        if (hx | lx) == 0:
            raise ValueError("math domain error")
        k -= 54
        x *= _TWO54
        hx, _ = _words(x)
    if hx >= 0x7FF00000:  # +inf
        return x + x
    k += (hx >> 20) - 1023
    hx &= 0x000FFFFF
    i = (hx + 0x95F64) & 0x100000
    x = _with_high_word(x, hx | (i ^ 0x3FF00000))  # normalize to [sqrt(2)/2, sqrt(2))
    k += i >> 20
    f = x - 1.0
    if (0x000FFFFF & (2 + hx)) < 3:  # |f| < 2**-20
        if f == 0.0:
            if k == 0:
                return 0.0
            dk = float(k)
            return dk * _LN2_HI + dk * _LN2_LO
        r = f * f * (0.5 - 0.33333333333333333 * f)
        if k == 0:
            return f - r
        dk = float(k)
        return dk * _LN2_HI - ((r - dk * _LN2_LO) - f)
    s = f / (2.0 + f)
    dk = float(k)
    z = s * s
    i = hx - 0x6147A
    w = z * z
    j = 0x6B851 - hx
    t1 = w * (_LG2 + w * (_LG4 + w * _LG6))
    t2 = z * (_LG1 + w * (_LG3 + w * (_LG5 + w * _LG7)))
    i |= j
    r = t2 + t1
    if i > 0:
        hfsq = 0.5 * f * f
        if k == 0:
            return f - (hfsq - s * (hfsq + r))
        return dk * _LN2_HI - ((hfsq - (s * (hfsq + r) + dk * _LN2_LO)) - f)
    if k == 0:
        return f - s * (f - r)
    return dk * _LN2_HI - ((s * (f - r) - dk * _LN2_LO) - f)


_HALF = (0.5, -0.5)
_HUGE = 1.0e300
_TWOM1000 = 9.33263618503218878990e-302
_TWO1023 = 8.98846567431157953865e307
_O_THRESHOLD = 7.09782712893383973096e02
_U_THRESHOLD = -7.45133219101941108420e02
_LN2HI = (6.93147180369123816490e-01, -6.93147180369123816490e-01)
_LN2LO = (1.90821492927058770002e-10, -1.90821492927058770002e-10)
_INVLN2 = 1.44269504088896338700e00
_P1 = 1.66666666666666019037e-01
_P2 = -2.77777777770155933842e-03
_P3 = 6.61375632143793436117e-05
_P4 = -1.65339022054652515390e-06
_P5 = 4.13813679705723846039e-08


def portable_exp(x: float) -> float:
    """e**x, rounded exactly like the reference algorithm."""
    hi = 0.0
    lo = 0.0
    k = 0
    hx, lx = _words(x)
    xsb = (hx >> 31) & 1
    hx &= 0x7FFFFFFF

    if hx >= 0x40862E42:  # |x| >= 709.78...
        if hx >= 0x7FF00000:
            if ((hx & 0xFFFFF) | lx) != 0:
                return x + x  # NaN
            return x if xsb == 0 else 0.0  # exp(+inf), exp(-inf)
        if x > _O_THRESHOLD:
            return _HUGE * _HUGE  # overflow to +inf
        if x < _U_THRESHOLD:
            return _TWOM1000 * _TWOM1000  # underflow to 0

    if hx > 0x3FD62E42:  # |x| > 0.5 ln 2: reduce by k ln 2
        if hx < 0x3FF0A2B2:  # |x| < 1.5 ln 2
            hi = x - _LN2HI[xsb]
            lo = _LN2LO[xsb]
            k = 1 - xsb - xsb
        else:
            k = int(_INVLN2 * x + _HALF[xsb])
            t = float(k)
            hi = x - t * _LN2HI[0]  # t * ln2_hi is exact at this magnitude
            lo = t * _LN2LO[0]
        x = hi - lo
    elif hx < 0x3E300000:  # |x| < 2**-28
        if _HUGE + x > 1.0:
            return 1.0 + x
    else:
        k = 0

    t = x * x
    c = x - t * (_P1 + t * (_P2 + t * (_P3 + t * (_P4 + t * _P5))))
    if k == 0:
        return 1.0 - ((x * c / (c - 2.0)) - x)
    y = 1.0 - ((lo - (x * c) / (2.0 - c)) - hi)
    if k >= -1021:
        if k == 1024:
            return y * 2.0 * _TWO1023
        return y * _from_words(0x3FF00000 + (k << 20), 0)
    return y * _from_words(0x3FF00000 + ((k + 1000) << 20), 0) * _TWOM1000
