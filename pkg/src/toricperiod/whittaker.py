"""Whittaker coefficients of family vectors, by closed form and by integration.

The k-th coefficient of a vector f is the unit-averaged torus value of its
Whittaker transform,

    c_k(f) = integral over units a of  W_f(diag(a p^k, 1)),
    W_f(g) = integral of f(w n(u) g) psi^{-1}(u) du,

with both Haar measures normalized to total mass 1 on the unit and integer
balls.  Moving the torus element through n(u) turns this into the big-cell
double integral

    c_k(f) = Y2^k * J_k(f),    J_k(f) = integral of f(w n(u)) psi^{-1}(a p^k u),

which truncates to a finite exact sum once f vanishes at the identity: the
vector is then zero on w n(u) below its invariance depth, and the integrand
is constant on small enough cosets in both variables.  A general vector is
first split as f = f(1) * spherical + remainder; the spherical half carries
the regularized value

    c_k(spherical) = (1 - q^{-1} Y1 Y2^{-1}) * h_k(Y1, Y2)

with h_k the complete homogeneous polynomial, so only the remainder is ever
integrated numerically.  All character sums are enumerated in a cyclotomic
field of p-power conductor and projected back to rational coefficients at
the end; a nonrational survivor raises rather than rounding away.
"""

from __future__ import annotations

from fractions import Fraction

from .family import (
    SPH,
    IwahoriPhiW,
    LinComb,
    Spherical,
    Translate,
    big_cell_split,
    evaluate,
    invariance_level,
    vector_prime,
)
from .laurent import LaurentPoly
from .localfield import (
    INF,
    ConductorExceeded,
    Mat2,
    coset_reps,
    psi_eval,
    residue_mod,
    shell_character_integral,
    unipotent,
    unit_reps,
    valuation,
    weyl,
)
from .scalars import Cyclotomic, FieldMismatch, QCyclotomic, QNumeric


def shintani_sph(field, k):
    """Complete homogeneous polynomial h_k(Y1, Y2); zero for negative k.

    These are the normalized spherical Whittaker values: their generating
    series in Z is exactly 1 / ((1 - Y1 Z)(1 - Y2 Z)).
    """
    if k < 0:
        return LaurentPoly.zero(field)
    return LaurentPoly(field, {(i, k - i): field.one for i in range(k + 1)})


def sph_big_cell_value(field, m):
    """Value of the spherical vector at w n(u) for v(u) = -m < 0."""
    return LaurentPoly.monomial(field, field.q_power(-m), m, -m)


def cs_factor_regularized(field):
    """Regularized big-cell integral of the spherical vector, 1 - q^{-1} Y1 Y2^{-1}.

    The shell sum collapses because the character integral vanishes on every
    shell of depth two or more, leaving the unit ball plus one correction.
    """
    one = LaurentPoly.one(field)
    return one + sph_big_cell_value(field, 1).scale(shell_character_integral(-1, field))


def _unit_average(p, level, depth, x):
    """Average of psi^{-1}(a x) over units a modulo p^depth, by enumeration.

    The terms are accumulated as integer counts of root-of-unity exponents
    and reduced into one cyclotomic element at the end, so the loop body is
    pure integer arithmetic.  Raises ConductorExceeded when the argument is
    deeper than the working root of unity can express.
    """
    v = valuation(x, p)
    if v == INF or v >= 0:
        return Cyclotomic.from_fraction(p, level, 1)
    m = -v
    if m > level:
        raise ConductorExceeded(f"character argument of depth {m} at working level {level}")
    x0 = residue_mod(x * Fraction(p) ** m, p, m)
    pm = p**level
    shift = p ** (level - m)
    counts = [0] * pm
    for a in unit_reps(p, depth):
        counts[(-a * x0 * shift) % pm] += 1
    phi = (p - 1) * p ** (depth - 1)
    return Cyclotomic.from_poly(p, level, tuple(Fraction(c, phi) for c in counts))


def _j_integral(f_w, k, p, level=None, retried=False):
    """Exact value of J_k(f_w) for a vector vanishing at the identity.

    With L the invariance level of f_w, the vector vanishes on w n(u) for
    v(u) <= -L, and the integrand is constant on u-cosets of p^max(L, -k)
    and on unit cosets of depth max(1, L-1-k).  The double sum over those
    cosets is therefore the integral on the nose, not an approximation.
    Each unit average is individually rational, so the accumulation stays
    over the rational scalar field.
    """
    L = invariance_level(f_w)
    if level is None:
        level = max(1, L - 1 - k)
    l_u = max(L, -k)
    l_a = max(1, L - 1 - k)
    field = QNumeric(p)
    w = weyl(p)
    pk = Fraction(p) ** k
    total = LaurentPoly.zero(field)
    try:
        for u in coset_reps(p, -(L - 1), l_u):
            f_u = evaluate(f_w, w * unipotent(p, u), field)
            if f_u.is_zero:
                continue
            s = _unit_average(p, level, l_a, pk * u).rational_part()
            if s:
                total = total + f_u.scale(s)
    except ConductorExceeded:
        if retried:
            raise
        return _j_integral(f_w, k, p, level=level + 2, retried=True)
    return total.scale(Fraction(1, p**l_u))


def whittaker_coefficient(f, k, field=None):
    """The coefficient c_k(f), exactly.

    Symbolic markers use their closed forms over the supplied field.  Table
    vectors, translates, and combinations are integrated at the prime they
    are tied to: the identity value rides the spherical closed form and the
    big-cell remainder goes through the exact double sum.
    """
    if isinstance(f, Spherical):
        if field is None:
            raise ValueError("a scalar field is required for symbolic vectors")
        return cs_factor_regularized(field) * shintani_sph(field, k)
    if isinstance(f, IwahoriPhiW):
        if field is None:
            raise ValueError("a scalar field is required for symbolic vectors")
        if k < 0:
            return LaurentPoly.zero(field)
        return LaurentPoly.monomial(field, field.one, 0, k)
    p = vector_prime(f)
    if p is None:
        raise ValueError("vector carries no residue prime; tabulate it first")
    numeric = QNumeric(p)
    if field is not None and field != numeric:
        raise FieldMismatch(f"vector is tied to {numeric}, not {field}")
    a_f, f_w = big_cell_split(f, p, numeric)
    out = a_f * cs_factor_regularized(numeric) * shintani_sph(numeric, k)
    j = _j_integral(f_w, k, p)
    if not j.is_zero:
        out = out + LaurentPoly.monomial(numeric, numeric.one, 0, k) * j
    return out


def lambda_chi(f, p=None, level=None):
    """Whittaker functional: integral of f(w n(u)) psi^{-1}(u) du.

    Requires f to vanish at the identity, which forces the integrand to
    vanish identically below the truncation depth and makes the finite sum
    exact.  The accumulation runs in the cyclotomic field of the character
    values and is projected to rational coefficients at the end.
    """
    if p is None:
        p = vector_prime(f)
    if p is None:
        raise ValueError("vector carries no residue prime; pass p explicitly")
    L = invariance_level(f)
    if level is None:
        level = max(1, L - 1)
    field_c = QCyclotomic(p, level)
    if not evaluate(f, Mat2.identity(p), field_c).is_zero:
        raise ValueError("lambda_chi requires a vector vanishing at the identity")
    w = weyl(p)
    total = LaurentPoly.zero(field_c)
    for u in coset_reps(p, -(L - 1), L):
        f_u = evaluate(f, w * unipotent(p, u), field_c)
        if not f_u.is_zero:
            total = total + f_u.scale(psi_eval(-u, p, level))
    total = total.scale(Fraction(1, p**L))
    return total.project_rational(QNumeric(p))


def projected_sph(p, level=2):
    """Character-weighted smoothing of the spherical vector, vanishing at 1.

    The combination sum over a of q^{-1} psi^{-1}(a/p) translate-by-n(a/p)
    keeps the full spherical big-cell profile but kills the identity value,
    so lambda_chi applies to it; its functional value recovers the
    regularized spherical constant.
    """
    field_c = QCyclotomic(p, level)
    inv_q = Fraction(1, p)
    terms = []
    for a in range(p):
        weight = psi_eval(Fraction(-a, p), p, level)
        coeff = LaurentPoly.constant(field_c, weight).scale(inv_q)
        terms.append((coeff, Translate(unipotent(p, Fraction(a, p)), SPH)))
    return LinComb(terms)
