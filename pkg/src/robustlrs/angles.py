"""Certified enclosures for angles of exact unit-circle points.

theta = arccos of an exact scalar has no closed form, but cos is strictly
monotone on (0, pi): a candidate enclosure [L, U] is certified by checking
cos(L) > cos(theta) > cos(U) with outward-rounded interval arithmetic
against exact rational bounds of cos(theta).  The endpoints are exact
decimal fractions, so all downstream bookkeeping stays rational.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

import mpmath
from mpmath import iv, mp

from .scalars import InvalidInputError, scalar_enclosure, scalar_sign


def _mpf_to_fraction(x) -> Fraction:
    """Exact value of an mpmath binary float."""
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return Fraction(0)
    val = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -val if sign else val


def _iv_endpoints(x) -> tuple[Fraction, Fraction]:
    lo_t, hi_t = x._mpi_
    return _tuple_to_fraction(lo_t), _tuple_to_fraction(hi_t)


def _tuple_to_fraction(t) -> Fraction:
    sign, man, exp, _ = t
    if man == 0:
        return Fraction(0)
    val = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -val if sign else val


def angle_enclosure(cos_val, sin_val) -> Callable[[Fraction], tuple[Fraction, Fraction]]:
    """Shrinking-enclosure callback for theta in (0, 2 pi) given exact
    cos(theta), sin(theta) with sin(theta) != 0."""
    s_sign = scalar_sign(sin_val)
    if s_sign == 0:
        raise InvalidInputError("angle enclosure needs a nonzero sine")

    def enclose(width: Fraction) -> tuple[Fraction, Fraction]:
        width = Fraction(width)
        dps = 40
        while dps <= 200_000:
            clo, chi = scalar_enclosure(cos_val, min(width / 64, Fraction(1, 10**12)))
            with mp.workdps(dps):
                mid = (mpmath.mpf(clo.numerator) / clo.denominator
                       + mpmath.mpf(chi.numerator) / chi.denominator) / 2
                approx = mpmath.acos(mid)
                eps = mpmath.mpf(10) ** (-(dps * 2) // 3)
                lo_s = mpmath.nstr(approx - eps, dps, strip_zeros=False)
                hi_s = mpmath.nstr(approx + eps, dps, strip_zeros=False)
            L, U = Fraction(lo_s), Fraction(hi_s)
            if not (0 < L < U) or U - L > width:
                dps *= 2
                continue
            old_dps = iv.dps
            try:
                iv.dps = dps + 10
                cos_L = iv.cos(iv.mpf(lo_s))
                cos_U = iv.cos(iv.mpf(hi_s))
            finally:
                iv.dps = old_dps
            cL_lo, _ = _iv_endpoints(cos_L)
            _, cU_hi = _iv_endpoints(cos_U)
            # decreasing on (0, pi): L < theta < U
            if cL_lo > chi and cU_hi < clo:
                if s_sign > 0:
                    return L, U
                lo2, hi2 = _reflect_two_pi(L, U, dps)
                if hi2 - lo2 <= width:
                    return lo2, hi2
            dps *= 2
        raise InvalidInputError("angle certification exhausted precision")

    return enclose


def _reflect_two_pi(L: Fraction, U: Fraction, dps: int) -> tuple[Fraction, Fraction]:
    plo, phi = pi_enclosure(Fraction(1, 10 ** (dps // 2)))
    return 2 * plo - U, 2 * phi - L


def rotation_number_enclosure(cos_val, sin_val) -> Callable[[Fraction], tuple[Fraction, Fraction]]:
    """Shrinking enclosure of the rotation number t = theta / (2 pi)."""
    theta_fn = angle_enclosure(cos_val, sin_val)

    def enclose(width: Fraction) -> tuple[Fraction, Fraction]:
        width = Fraction(width)
        sub = width / 16
        while True:
            tlo, thi = theta_fn(sub)
            plo, phi = pi_enclosure(sub)
            a = tlo / (2 * phi)
            b = thi / (2 * plo)
            if b - a <= width:
                return a, b
            sub /= 64

    return enclose


def pi_enclosure(width) -> tuple[Fraction, Fraction]:
    width = Fraction(width)
    dps = 30
    while True:
        old = iv.dps
        try:
            iv.dps = dps
            a, b = _iv_endpoints(iv.pi)
        finally:
            iv.dps = old
        if b - a <= width:
            return a, b
        dps *= 2
