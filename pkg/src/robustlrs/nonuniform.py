"""Decider for robust non-uniform ultimate positivity at order <= 4.

Strategy: classify the normalized dominant contribution of the spectrum
(constant, sign-alternating, rotating, or rotating-plus-alternating),
check the liminf condition over the whole ball exactly (linear pieces by
support functions, quadratic pieces by the S-procedure), and resolve the
critical tangency cases: isolated touch points are decided as individual
ultimate-positivity instances, while a positive-length contact arc with a
threatening decaying term is a NO by the rotation-approximation argument.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import certificates as cert
from . import intpoly as ip
from . import linalg
from .algebraic import AlgebraicReal, algebraic_poly_value
from .certificates import DecisionCertificate, Witness
from .neighbourhoods import Neighbourhood
from .quadform import BallLinear, BallQuadratic
from .recurrences import (
    LinearRecurrence,
    LrsInstance,
    _pow_complex,
    closed_form,
    dominant_part,
    instance_spectrum,
    unit_angle_order,
)
from .scalars import (
    IncompatibleSurdError,
    InvalidInputError,
    QuadraticSurd,
    Scalar,
    UnsupportedProblemError,
    as_exact,
    scalar_sign,
)
from .uniform import analyze_ultimate, _rational_upper, _sqrt_upper


def _fr(x) -> Fraction:
    """Exact rational value of a tower scalar; irrational data puts the
    instance outside the rational cone analysis."""
    if isinstance(x, QuadraticSurd):
        if not x.is_rational:
            raise UnsupportedProblemError("irrational coefficient map")
        return x.as_fraction()
    return Fraction(x)


@dataclass
class DominantFormCase:
    """Shape of the normalized dominant contribution, with exact linear
    maps from an initialisation to its coefficients (rows of the inverse
    basis matrix)."""

    label: str  # "a" | "b" | "c" | "d"
    rows: dict  # "z" / "w" / "x" / "y" / "alpha" -> row vector
    alpha: Optional[Scalar]  # decaying real root for case (c)
    angle: Optional[tuple]  # (cos theta, sin theta) for cases (c)/(d)
    angle_order: Optional[int]  # k when the rotation is 2 pi j / k


@dataclass
class TangencyInterval:
    lo: object  # bound in c = cos(phi): Fraction or AlgebraicReal
    hi: object
    single_point: bool


@dataclass
class TangencySet:
    intervals: list

    @property
    def has_positive_length(self) -> bool:
        return any(not iv.single_point for iv in self.intervals)

    def __bool__(self):
        return bool(self.intervals)


def classify_dominant_form(inst: LrsInstance) -> DominantFormCase:
    """Case taxonomy of the normalized dominant contribution.

    Requires a positive real dominant root; callers answer NO before
    classification when none exists."""
    if inst.order > 4:
        raise UnsupportedProblemError("classification implemented up to order 4")
    spec = instance_spectrum(inst)
    entries = []
    for root, mult in spec["real"]:
        entries.append((root * root, "real", root, mult))
    for re, im, mult in spec["pairs"]:
        entries.append((re * re + im * im, "pair", (re, im), mult))
    max_mod = entries[0][0]
    for e in entries[1:]:
        if scalar_sign(e[0] - max_mod) > 0:
            max_mod = e[0]
    dom = [e for e in entries if scalar_sign(e[0] - max_mod) == 0]
    if any(m > 1 for *_, m in dom):
        raise UnsupportedProblemError("repeated dominant roots")
    pos = [e for e in dom if e[1] == "real" and scalar_sign(e[2]) > 0]
    if not pos:
        raise InvalidInputError("no positive real dominant root")
    neg = [e for e in dom if e[1] == "real" and scalar_sign(e[2]) < 0]
    pairs = [e for e in dom if e[1] == "pair"]
    others = [e for e in entries if scalar_sign(e[0] - max_mod) != 0]
    if len(pairs) > 1:
        raise UnsupportedProblemError("two dominant conjugate pairs")
    rows_matrix = _basis_rows(inst.order, spec)
    W = linalg.inverse(rows_matrix)
    names = _basis_names(spec, max_mod)
    rows = {name: list(W[i]) for i, name in enumerate(names)}
    angle = None
    angle_order = None
    if pairs:
        re, im = pairs[0][2]
        angle = (re, im)
        angle_order = unit_angle_order(re, im)
    if not pairs:
        label = "a" if not neg else "b"
        alpha = None
    else:
        label = "c" if not neg else "d"
        if label == "c":
            if not others:
                alpha = None
            elif len(others) == 1 and others[0][1] == "real" and others[0][3] == 1:
                alpha = others[0][2]
            else:
                raise UnsupportedProblemError("unsupported sub-dominant structure")
        else:
            alpha = None
            if others:
                raise UnsupportedProblemError(
                    "alternating and rotating dominants plus decaying terms"
                )
    return DominantFormCase(label, rows, alpha, angle, angle_order)


def _basis_rows(order: int, spec) -> list:
    rows = []
    for n in range(order):
        row = []
        for root, mult in spec["real"]:
            p = _pow(root, n)
            for l in range(mult):
                row.append(p * (n**l))
        for re, im, mult in spec["pairs"]:
            re_n, im_n = _pow_complex(re, im, n)
            for l in range(mult):
                row.append(re_n * (n**l))
                row.append(im_n * (n**l))
        rows.append(row)
    return rows


def _pow(root, n):
    if isinstance(root, QuadraticSurd):
        return root**n
    return as_exact(Fraction(root) ** n)


def _basis_names(spec, max_mod) -> list:
    names = []
    decay_count = 0
    for root, mult in spec["real"]:
        dominant = scalar_sign(root * root - max_mod) == 0
        for l in range(mult):
            if dominant:
                base = "z" if scalar_sign(root) > 0 else "w"
            else:
                decay_count += 1
                base = "alpha" if decay_count == 1 else f"alpha_{decay_count}"
            names.append(base if l == 0 else f"{base}.{l}")
    for re, im, mult in spec["pairs"]:
        dominant = scalar_sign(re * re + im * im - max_mod) == 0
        for l in range(mult):
            names.append(("x" if dominant else "px") + ("" if l == 0 else f".{l}"))
            names.append(("y" if dominant else "py") + ("" if l == 0 else f".{l}"))
    return names


# -- halfspace cases (a), (b), rational angles ------------------------------------------


def decide_halfspace_cases(
    case: DominantFormCase, inst: LrsInstance, nb: Neighbourhood, trace: list
) -> DecisionCertificate:
    """Finitely many halfspaces carve the liminf region; each hyperplane
    touches the ball in at most one point, decided individually."""
    tangent_points = []
    for name, g_row in _halfspace_functionals(case):
        lin = BallLinear(g_row, Fraction(0), nb, inst.init)
        s = lin.min_sign()
        if s < 0:
            trace.append(f"halfspace {name} crossed")
            w = _nonuniform_no_witness(inst, nb, hint_row=g_row)
            return cert.no(w, trace=trace)
        if s == 0:
            tangent_points.append((name, lin.tangency_point()))
    for name, point in tangent_points:
        trace.append(f"tangency on {name}")
        verdict = _decide_point_ultimate(inst.recurrence, point)
        if verdict is None:
            return cert.unsupported(
                f"tangency point on {name} outside the structured envelope",
                trace=trace,
            )
        if verdict.verdict == "NO":
            w = _point_witness(inst.recurrence, point, verdict.negative_index, inst)
            return cert.no(w, trace=trace)
    return cert.yes(trace=trace)


def _halfspace_functionals(case: DominantFormCase) -> list:
    rows = case.rows
    if case.label == "a":
        return [("z", list(rows["z"]))]
    if case.label == "b":
        z, w = rows["z"], rows["w"]
        return [
            ("z+w", [a + b for a, b in zip(z, w)]),
            ("z-w", [a - b for a, b in zip(z, w)]),
        ]
    if case.angle_order is None:
        raise InvalidInputError("halfspace route needs a rational angle")
    k = case.angle_order
    re, im = case.angle
    period = k if case.label == "c" else (k if k % 2 == 0 else 2 * k)
    out = []
    cos_n, sin_n = as_exact(1), as_exact(0)
    parity = 1
    for n in range(period):
        row = [
            rz + cos_n * rx + sin_n * ry
            for rz, rx, ry in zip(rows["z"], rows["x"], rows["y"])
        ]
        if case.label == "d":
            row = [r + parity * rw for r, rw in zip(row, rows["w"])]
        out.append((f"n={n} direction", row))
        cos_n, sin_n = cos_n * re - sin_n * im, cos_n * im + sin_n * re
        parity = -parity
    return out


def _decide_point_ultimate(rec: LinearRecurrence, point: list):
    try:
        return analyze_ultimate(LrsInstance(rec, point))
    except (UnsupportedProblemError, InvalidInputError, IncompatibleSurdError):
        return None


def _point_witness(rec, point, n, inst) -> Witness:
    val = LrsInstance(rec, point).evaluate(n)
    direction = [p - c for p, c in zip(point, inst.init)]
    return Witness(n, list(point), direction, value=val)


# -- case (c): irrational rotation --------------------------------------------------------


class _ConeData:
    """Shared exact data for the cone-contact analysis of case (c)."""

    def __init__(self, case: DominantFormCase, inst: LrsInstance, nb: Neighbourhood):
        self.case = case
        self.gz = [_fr(x) for x in case.rows["z"]]
        self.gx = [_fr(x) for x in case.rows["x"]]
        self.gy = [_fr(x) for x in case.rows["y"]]
        self.gw = (
            [_fr(x) for x in case.rows["alpha"]] if case.alpha is not None else None
        )
        self.center = [_fr(x) for x in inst.init]
        self.Sinv = [[_fr(x) for x in row] for row in nb.S_inv]
        n = len(self.center)
        self.z_c = self._dot(self.gz, self.center)
        self.x_c = self._dot(self.gx, self.center)
        self.y_c = self._dot(self.gy, self.center)
        self.Kzz = self._quad(self.gz, self.gz)
        self.Kxx = self._quad(self.gx, self.gx)
        self.Kyy = self._quad(self.gy, self.gy)
        self.Kzx = self._quad(self.gz, self.gx)
        self.Kzy = self._quad(self.gz, self.gy)
        self.Kxy = self._quad(self.gx, self.gy)
        if self.gw is not None:
            self.w_c = self._dot(self.gw, self.center)
            self.Kwz = self._quad(self.gw, self.gz)
            self.Kwx = self._quad(self.gw, self.gx)
            self.Kwy = self._quad(self.gw, self.gy)

    def _dot(self, u, v):
        return sum(a * b for a, b in zip(u, v))

    def _quad(self, u, v):
        n = len(u)
        return sum(
            u[i] * sum(self.Sinv[i][j] * v[j] for j in range(n)) for i in range(n)
        )

    def contact_poly(self):
        """E(c, s) = Lc^2 - Gamma reduced by s^2 = 1 - c^2: (A(c), B(c))."""
        A = [
            self.z_c * self.z_c + self.y_c * self.y_c - self.Kzz - self.Kyy,
            2 * (self.z_c * self.x_c - self.Kzx),
            self.x_c * self.x_c - self.y_c * self.y_c - self.Kxx + self.Kyy,
        ]
        B = [2 * (self.z_c * self.y_c - self.Kzy), 2 * (self.x_c * self.y_c - self.Kxy)]
        return _trim(A), _trim(B)

    def lc_coeffs(self):
        """Lc(c, s) = z_c + x_c c + y_c s."""
        return self.z_c, self.x_c, self.y_c

    def threat_coeffs(self):
        """N(c, s) with sign(N) = sign of the decaying coefficient at the
        touch point for direction (c, s); None without a decaying root."""
        if self.gw is None:
            return None
        return (
            self.w_c * self.z_c - self.Kwz,
            self.w_c * self.x_c - self.Kwx,
            self.w_c * self.y_c - self.Kwy,
        )


def tangency_set(
    case: DominantFormCase, inst: LrsInstance, nb: Neighbourhood
) -> TangencySet:
    """Exact contact set of the ball surface with the liminf-zero cone, in
    c = cos(phi), filtered by the threatening sign condition on the
    decaying coefficient."""
    if case.label != "c" or case.angle_order is not None:
        raise InvalidInputError("tangency analysis applies to irrational case (c)")
    data = _ConeData(case, inst, nb)
    A, B = data.contact_poly()
    if not A and not B:
        return _tangency_full_circle(data)
    R = _sub(_mul(A, A), _mul([Fraction(1), Fraction(0), Fraction(-1)], _mul(B, B)))
    R = _trim(R)
    intervals = []
    if R:
        Rp = ip.from_fractions(R)
        if ip.normalize(Rp):
            sf = ip.squarefree_part(Rp)
            for lo, hi in ip.isolate_squarefree(sf):
                if hi < -1 or lo > 1:
                    continue
                c0 = (
                    AlgebraicReal.from_rational(lo)
                    if lo == hi
                    else AlgebraicReal(sf, lo, hi)
                )
                if _is_threatened_contact(data, c0, A, B):
                    intervals.append(TangencyInterval(c0, c0, True))
    return TangencySet(intervals)


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _sub(a, b):
    m = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else Fraction(0)) - (b[i] if i < len(b) else Fraction(0))
        for i in range(m)
    ]


def _is_threatened_contact(data: _ConeData, c0: AlgebraicReal, A, B) -> bool:
    """Does direction cos(phi) = c0 give a contact with Lc >= 0 and a
    threatening decaying coefficient?"""
    Bp = ip.from_fractions(B) if _trim(B) else ()
    if Bp and c0.sign_of_poly(Bp) != 0:
        # s0 = -A(c0)/B(c0) is the unique matching sine
        ns = [-a for a in A] if A else [Fraction(0)]
        reps = [("ratio", (ns, list(B)))]
    else:
        reps = [("sqrt", 1), ("sqrt", -1)]
    for kind, payload in reps:
        lc_sign = _circle_affine_sign(data.lc_coeffs(), c0, kind, payload)
        if lc_sign < 0:
            continue
        thr = data.threat_coeffs()
        if thr is None:
            return False  # no decaying term: contact is harmless
        w_sign = _circle_affine_sign(thr, c0, kind, payload)
        if _w_condition(data.case, w_sign):
            return True
    return False


def _circle_affine_sign(coeffs, c0: AlgebraicReal, kind, payload) -> int:
    """Exact sign of k0 + k1 c0 + k2 s0 on the unit circle.

    s0 is either the rational function ns/ds of c0 ('ratio') or
    sign * sqrt(1 - c0^2) ('sqrt')."""
    k0, k1, k2 = coeffs
    if kind == "ratio":
        ns, ds = payload
        num = _addp(_mul([k0, k1], ds), [k2 * x for x in ns])
        num = _trim(num)
        if not num:
            return 0
        val = algebraic_poly_value(
            c0, ip.from_fractions(num), ip.from_fractions(ds)
        )
        return val.sign()
    s_sign = payload
    lin = _trim([k0, k1])
    linp = ip.from_fractions(lin) if lin else ()
    lin_sign = c0.sign_of_poly(linp) if linp else 0
    t_sign = s_sign * ((k2 > 0) - (k2 < 0))
    if t_sign == 0:
        return lin_sign
    if lin_sign == 0:
        return t_sign
    if lin_sign == t_sign:
        return lin_sign
    # opposite signs: compare (k0 + k1 c)^2 against k2^2 (1 - c^2)
    diff = _sub(
        _mul([k0, k1], [k0, k1]), [k2 * k2, Fraction(0), -k2 * k2]
    )
    diff = _trim(diff)
    dp = ip.from_fractions(diff) if diff else ()
    ds = c0.sign_of_poly(dp) if dp else 0
    if ds == 0:
        return 0
    return lin_sign if ds > 0 else t_sign


def _addp(a, b):
    m = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else Fraction(0)) + (b[i] if i < len(b) else Fraction(0))
        for i in range(m)
    ]


def _w_condition(case: DominantFormCase, w_sign: int) -> bool:
    """Threat test: strict negativity when the decaying root is positive,
    any nonzero value when it is negative (either parity then hurts)."""
    if case.alpha is None:
        return False
    if scalar_sign(case.alpha) > 0:
        return w_sign < 0
    return w_sign != 0


def _tangency_full_circle(data: _ConeData) -> TangencySet:
    """Contact identity E == 0: every direction with Lc >= 0 touches the
    ball.  The threatened subset is cut by the affine threat functional;
    its emptiness and positive length are decided exactly."""
    z_c, x_c, y_c = data.lc_coeffs()
    lc_min = _affine_circle_min_sign(z_c, x_c, y_c)
    thr = data.threat_coeffs()
    if thr is None:
        return TangencySet([])
    if data.case.alpha is not None and scalar_sign(data.case.alpha) > 0:
        # threat where N < 0
        n_min = _affine_circle_min_sign(*thr)
        if n_min >= 0:
            return TangencySet([])
    else:
        # negative decaying root: threat wherever N != 0
        if thr[0] == 0 and thr[1] == 0 and thr[2] == 0:
            return TangencySet([])
    if lc_min < 0:
        raise UnsupportedProblemError(
            "partial contact arc with threats (outside the supported geometry)"
        )
    # the whole circle is in contact and a threatened arc exists
    return TangencySet([TangencyInterval(Fraction(-1), Fraction(1), False)])


def _affine_circle_min_sign(k0, k1, k2) -> int:
    """Sign of min over the circle of k0 + k1 c + k2 s = k0 - |(k1, k2)|."""
    amp_sq = k1 * k1 + k2 * k2
    if amp_sq == 0:
        return (k0 > 0) - (k0 < 0)
    if k0 < 0:
        return -1
    d = k0 * k0 - amp_sq
    return (d > 0) - (d < 0)


# -- the decider -----------------------------------------------------------------------------


def decide_nonuniform(inst: LrsInstance, nb: Neighbourhood) -> DecisionCertificate:
    """Robust non-uniform ultimate positivity: every ball point eventually
    nonnegative, each with its own threshold."""
    trace = ["robust-nonuniform-ultimate"]
    if inst.order > 4:
        return cert.unsupported("order above 4", trace=trace)
    if nb.dim != inst.order:
        raise InvalidInputError("neighbourhood dimension mismatch")
    try:
        return _decide_nonuniform_inner(inst, nb, trace)
    except IncompatibleSurdError as exc:
        return cert.unsupported(f"mixed radicands: {exc}", trace=trace)
    except UnsupportedProblemError as exc:
        return cert.unsupported(str(exc), trace=trace)


def _decide_nonuniform_inner(inst: LrsInstance, nb: Neighbourhood, trace) -> DecisionCertificate:
    try:
        cf = closed_form(inst)
    except UnsupportedProblemError as exc:
        return cert.unsupported(f"spectrum: {exc}", trace=trace)
    if dominant_part(cf) is None:
        trace.append("no-positive-dominant")
        w = _nonuniform_no_witness(inst, nb)
        return cert.no(w, trace=trace)
    try:
        case = classify_dominant_form(inst)
    except UnsupportedProblemError as exc:
        return cert.unsupported(str(exc), trace=trace)
    trace.append(f"case-{case.label}")
    if case.label in ("a", "b") or case.angle_order is not None:
        return decide_halfspace_cases(case, inst, nb, trace)
    if case.label == "d":
        return _decide_case_d(case, inst, nb, trace)
    return _decide_case_c(case, inst, nb, trace)


def _decide_case_c(case, inst, nb, trace) -> DecisionCertificate:
    if not _cone_necessity(case, inst, nb, sigma=None):
        trace.append("liminf-negative-region")
        w = _nonuniform_no_witness(inst, nb)
        return cert.no(w, trace=trace)
    try:
        tset = tangency_set(case, inst, nb)
    except UnsupportedProblemError as exc:
        return cert.unsupported(str(exc), trace=trace)
    if not tset:
        trace.append("no-threatened-contact")
        return cert.yes(trace=trace)
    if tset.has_positive_length:
        trace.append("positive-length-tangency")
        w, extra = _positive_length_corroboration(case, inst, nb)
        return cert.no(w, trace=trace, extra=extra)
    trace.append(f"{len(tset.intervals)} threatened touch points")
    w = _nonuniform_no_witness(inst, nb, deep=True, optional=True)
    if w is not None:
        return cert.no(w, trace=trace)
    return cert.unsupported(
        "isolated threatened tangency (needs single-orbit lower bounds)",
        trace=trace,
    )


def _decide_case_d(case, inst, nb, trace) -> DecisionCertificate:
    for sigma in (1, -1):
        if not _cone_necessity(case, inst, nb, sigma=sigma):
            trace.append(f"liminf-negative-region sigma={sigma}")
            w = _nonuniform_no_witness(inst, nb)
            return cert.no(w, trace=trace)
    trace.append("liminf-nonnegative-everywhere")
    return cert.yes(trace=trace)


def _cone_necessity(case, inst, nb, sigma) -> bool:
    """z - sigma w >= sqrt(x^2 + y^2) over the whole ball, exactly."""
    gz = [_fr(x) for x in case.rows["z"]]
    gx = [_fr(x) for x in case.rows["x"]]
    gy = [_fr(x) for x in case.rows["y"]]
    if sigma is not None:
        gw = [_fr(x) for x in case.rows["w"]]
        gl = [a - sigma * b for a, b in zip(gz, gw)]
    else:
        gl = gz
    lin = BallLinear(gl, Fraction(0), nb, inst.init)
    if lin.min_sign() < 0:
        return False
    n = len(gl)
    A = [
        [gl[i] * gl[j] - gx[i] * gx[j] - gy[i] * gy[j] for j in range(n)]
        for i in range(n)
    ]
    quad = BallQuadratic(A, [Fraction(0)] * n, Fraction(0), nb, inst.init)
    return quad.nonnegative_on_ball()


def _positive_length_corroboration(case, inst, nb, want: int = 3):
    """Exact corroborating negatives for the nestled-contact NO.

    Realizes the touch point of a rational circle direction inside the
    threatened arc exactly (its coordinates live in Q(sqrt(Gamma))), then
    hunts for `want` negative terms: a direct scan first, falling back to
    rotation-approximation target indices over the certified angle.
    """
    data = _ConeData(case, inst, nb)
    thr = data.threat_coeffs()
    directions = []
    for k in range(-12, 13):
        tt = Fraction(k, 12)
        c = (1 - tt * tt) / (1 + tt * tt)
        s = 2 * tt / (1 + tt * tt)
        directions.append((c, s))
    best = None
    for c, s in directions:
        n_val = thr[0] + thr[1] * c + thr[2] * s
        if not _w_condition(case, (n_val > 0) - (n_val < 0)):
            continue
        point = _touch_point(data, inst, nb, c, s)
        if point is None:
            continue
        negs = _negatives_at_point(inst.recurrence, point, 4096, want)
        if len(negs) >= want:
            return _make_witness(inst, point, negs), negs[1:]
        if best is None or len(negs) > len(best[1]):
            best = (point, negs)
    # rotation-approximation guidance for stubborn geometries
    if best is not None:
        point, negs = best
        extra = _target_guided_negatives(case, inst, point, want - len(negs))
        allneg = sorted(set(negs + extra))
        if len(allneg) >= want:
            return _make_witness(inst, point, allneg), allneg[1:]
    raise InvalidInputError("corroboration failed to find negative terms")


def _touch_point(data: _ConeData, inst, nb, c: Fraction, s: Fraction):
    """Exact ball-boundary minimizer for the direction (c, s); None when the
    direction's functional degenerates."""
    from .scalars import scalar_sqrt

    n = len(data.center)
    g_dir = [data.gz[i] + c * data.gx[i] + s * data.gy[i] for i in range(n)]
    gamma = Fraction(0)
    Sg = linalg.mat_vec(nb.S_inv, [as_exact(x) for x in g_dir])
    for i in range(n):
        gamma += g_dir[i] * Fraction(Sg[i])
    if gamma == 0:
        return None
    root = scalar_sqrt(gamma)
    if root is None:
        return None
    inv = root.inverse()
    return [as_exact(ci) - x * inv for ci, x in zip(inst.init, Sg)]


def _negatives_at_point(rec, point, horizon: int, want: int) -> list:
    inst = LrsInstance(rec, point)
    state = list(inst.init)
    a = rec.coeffs
    k = rec.order
    out = []
    for n in range(horizon):
        if n < k:
            val = inst.init[n]
        else:
            val = a[0] * state[0]
            for i in range(1, k):
                val = val + a[i] * state[i]
            state = state[1:] + [val]
        if scalar_sign(val) < 0:
            out.append(n)
            if len(out) >= want:
                return out
    return out


def _target_guided_negatives(case, inst, point, want: int) -> list:
    """Indices from the free-digit rotation construction, checked exactly."""
    if want <= 0 or case.alpha is None:
        return []
    from .angles import rotation_number_enclosure
    from .diophantine import Psi, construct_target_enclosed
    from .scalars import UnsupportedProblemError as _U

    re, im = case.angle
    t_fn = rotation_number_enclosure(re, im)
    parity = "odd" if scalar_sign(case.alpha) < 0 else "even"
    beta = _rational_upper(_abs_scalar_local(case.alpha))
    try:
        tw = construct_target_enclosed(
            t_fn,
            Psi.geometric(Fraction(100), beta),
            (Fraction(1, 10), Fraction(9, 10)),
            parity,
            count=want + 4,
            max_index=10**6,
        )
    except (_U, InvalidInputError):
        return []
    sub = LrsInstance(inst.recurrence, point)
    out = []
    for n in tw.indices:
        if scalar_sign(sub.evaluate(n)) < 0:
            out.append(n)
    return out


def _abs_scalar_local(x):
    return x if scalar_sign(x) >= 0 else -x


def _make_witness(inst, point, negs) -> Witness:
    n0 = negs[0]
    val = LrsInstance(inst.recurrence, point).evaluate(n0)
    direction = [p - c for p, c in zip(point, inst.init)]
    return Witness(n0, list(point), direction, value=val)


def _nonuniform_no_witness(
    inst, nb, hint_row=None, deep=False, optional=False
) -> Optional[Witness]:
    """A ball point whose orbit is certifiably not ultimately positive:
    rational samples (boundary-guided when possible) verified by the
    constructive analysis or an explicit negative term."""
    rng = random.Random(20240517)
    center = inst.init
    n = inst.order
    tries = 4000 if deep else 1200
    candidates = []
    if hint_row is not None:
        try:
            lin = BallLinear(hint_row, Fraction(0), nb, center)
            candidates.append(lin.tangency_point())
        except (InvalidInputError, UnsupportedProblemError):
            pass
    for t in range(tries):
        if t < len(candidates):
            point = candidates[t]
        else:
            d = [Fraction(rng.randint(-512, 512), 512) for _ in range(n)]
            q = linalg.vec_dot(d, linalg.mat_vec(nb.S, d))
            if scalar_sign(q) == 0:
                continue
            scale = 1 / _sqrt_upper(_rational_upper(q))
            frac = Fraction(rng.randint(900, 1024), 1024)
            d = [x * scale * frac for x in d]
            point = [c + x for c, x in zip(center, d)]
        if scalar_sign(nb.boundary_distance_sq(center, point) - 1) > 0:
            continue
        res = _decide_point_ultimate(inst.recurrence, point)
        if res is not None and res.verdict == "NO":
            direction = [p - c for p, c in zip(point, center)]
            val = LrsInstance(inst.recurrence, point).evaluate(res.negative_index)
            return Witness(res.negative_index, list(point), direction, value=val)
        if res is None and deep:
            neg = _bounded_negative_scan(inst.recurrence, point, 20000)
            if neg is not None:
                direction = [p - c for p, c in zip(point, center)]
                val = LrsInstance(inst.recurrence, point).evaluate(neg)
                return Witness(neg, list(point), direction, value=val)
    if optional:
        return None
    raise InvalidInputError("no violating point found (analysis promised one)")


def _bounded_negative_scan(rec, point, horizon) -> Optional[int]:
    inst = LrsInstance(rec, point)
    state = list(inst.init)
    a = rec.coeffs
    k = rec.order
    for n in range(horizon):
        if n < k:
            val = inst.init[n]
        else:
            val = a[0] * state[0]
            for i in range(1, k):
                val = val + a[i] * state[i]
            state = state[1:] + [val]
        if scalar_sign(val) < 0:
            return n
    return None
