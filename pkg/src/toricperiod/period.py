"""The toric period of a family vector, and its ideal-membership report.

The period is assembled from Whittaker coefficients through the zeta
integral in an auxiliary variable Z,

    I(f, Z) = sum over k of c_k(f) Z^k,

which is a rational series with denominator dividing (1 - Y1 Z)(1 - Y2 Z):
past the invariance level the coefficients ride the spherical recurrence,
below the vanishing tail they are zero.  Multiplying by that denominator
inside an exact finite window therefore yields an honest polynomial in Z,
with the window's guard zone certifying that nothing was truncated.  The
period is the value at Z = 1, which sits at the unramified twist point.

Every period lands in the ideal generated by

    1 - Y1    and    1 - q^{-1} Y1 Y2^{-1},

and `verify_image` produces the certified membership report for a given
vector.  The spherical vector's own period is the regularized constant
1 - q^{-1} Y1 Y2^{-1}; dividing by it normalizes periods against the
spherical line.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .family import invariance_level, vector_prime
from .groebner import Certificate, MembershipSolver, laurent_membership
from .laurent import (
    LaurentFraction,
    LaurentPoly,
    TailViolation,
    ZPoly,
    one,
    qpow,
    y1,
    y2,
)
from .scalars import FieldMismatch, NotRational, QNumeric
from .whittaker import cs_factor_regularized, whittaker_coefficient


def _resolve_field(f, field):
    p = vector_prime(f)
    if p is None:
        if field is None:
            raise ValueError("a scalar field is required for symbolic vectors")
        return field
    numeric = QNumeric(p)
    if field is not None and field != numeric:
        raise FieldMismatch(f"vector is tied to {numeric}, not {field}")
    return numeric


def zeta_window(f, field=None, extra=0):
    """Exact coefficient window of I(f, Z) around the critical strip.

    The window spans [-(n+2), n+4] for invariance level n: two indices of
    certified zeros below the vanishing tail and a guard zone of at least
    two stabilized indices above the recurrence onset.
    """
    fld = _resolve_field(f, field)
    n = invariance_level(f)
    return ZPoly.from_function(
        fld, -(n + 2), n + 4 + extra, lambda k: whittaker_coefficient(f, k, fld)
    )


def cleared_window(f, field=None):
    """(1 - Y1 Z)(1 - Y2 Z) * I(f, Z) as a certified polynomial in Z.

    Degree at most n + 2 is enforced by the window's guard zone; a window
    that somehow leaves a nonzero tail is retried once with four more
    coefficients so a genuine violation propagates with better evidence.
    """
    n = invariance_level(f)
    try:
        return zeta_window(f, field).clear_l_factor(n + 2)
    except TailViolation:
        return zeta_window(f, field, extra=4).clear_l_factor(n + 2)


def toric_period(f, field=None):
    """The period l(f): the cleared zeta polynomial evaluated at Z = 1."""
    return cleared_window(f, field).eval_z1()


def spherical_ratio(f, field=None):
    """The period of f divided by the spherical period, if it stays in A.

    Returns the exact Laurent quotient, or None when the ratio genuinely
    leaves the ring; the spherical vector itself normalizes to 1.
    """
    fld = _resolve_field(f, field)
    ratio = LaurentFraction(toric_period(f, field), cs_factor_regularized(fld))
    return ratio.in_ring()


def image_ideal(field):
    """Generator pair (1 - Y1, 1 - q^{-1} Y1 Y2^{-1}) of the period image."""
    return (
        one(field) - y1(field),
        one(field) - qpow(field, -1) * y1(field) * y2(field, -1),
    )


def image_ideal_alt(field):
    """The same ideal presented on the other torus line, via 1 - q Y2."""
    return (
        one(field) - qpow(field, 1) * y2(field),
        one(field) - qpow(field, -1) * y1(field) * y2(field, -1),
    )


def _coefficients_rational(value):
    fld = value.field
    if fld.kind != "cyclotomic":
        return True
    try:
        for _, c in value.sorted_terms():
            fld.rational_part(c)
    except NotRational:
        return False
    return True


@dataclass(frozen=True)
class PeriodReport:
    """Certified summary of one period computation."""

    la: LaurentPoly
    member: bool
    certificate: Optional[Certificate]
    rational: bool

    def to_json(self):
        return {
            "lA": self.la.to_json_terms(),
            "lA_display_X": self.la.to_x_display(),
            "member": self.member,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "rational": self.rational,
        }


def verify_image(f, field=None, solver=None):
    """Compute the period of f and certify its ideal membership.

    The certificate, when present, has already been re-verified by direct
    expansion; `member` is False only when the division search honestly
    fails, which the image theorem rules out for family vectors.
    """
    fld = _resolve_field(f, field)
    la = toric_period(f, field)
    g1, g2 = image_ideal(fld)
    cert = laurent_membership(la, g1, g2, solver=solver)
    return PeriodReport(
        la=la,
        member=cert is not None,
        certificate=cert,
        rational=_coefficients_rational(la),
    )
