"""Elliptic genera of Calabi-Yau manifolds of complex dimension up to 12,
with the forced linear relations among the chi_p invariants, divisibility
batteries for torsion specializations, and the special-value identities."""

from fractions import Fraction

from .errors import ValidationError
from .jacobi import (
    JacobiForm,
    basis_psi,
    generator,
    phi_threehalf,
    specialize_torsion,
    unit_form,
)
from .modular import eta_power, theta_constant
from .series import DEN2, Series


class CYInvariants:
    """The vector (chi_0, ..., chi_d) of a dimension-d Calabi-Yau manifold.

    chi_p is the Euler characteristic of Omega^p; Serre duality forces
    chi_p = (-1)**d * chi_{d-p}.  The Euler number is sum (-1)**p chi_p.
    """

    __slots__ = ("d", "chi")

    def __init__(self, d, chi):
        chi = tuple(int(c) for c in chi)
        if d < 1:
            raise ValidationError("dimension must be positive")
        if len(chi) != d + 1:
            raise ValidationError(f"need {d + 1} values chi_0..chi_{d}")
        sign = 1 if d % 2 == 0 else -1
        for p in range(d + 1):
            if chi[p] != sign * chi[d - p]:
                raise ValidationError(
                    f"Serre duality fails: chi_{p} != {sign:+d} * chi_{d - p}"
                )
        self.d = d
        self.chi = chi

    @classmethod
    def from_euler(cls, d, e):
        """Derive the full vector from the Euler number (d = 3 or 5 only)."""
        if d == 3:
            if e % 2:
                raise ValidationError("e(M3) must be even")
            h = e // 2
            return cls(3, (0, -h, h, 0))
        if d == 5:
            if e % 24:
                raise ValidationError(f"e(M5) = {e} is not divisible by 24")
            u = e // 24
            return cls(5, (0, -u, 11 * u, -11 * u, u, 0))
        raise ValidationError("the Euler number determines the genus only for d=3,5")

    @property
    def euler(self):
        return sum((-1) ** p * c for p, c in enumerate(self.chi))

    def __eq__(self, other):
        return (
            isinstance(other, CYInvariants)
            and self.d == other.d
            and self.chi == other.chi
        )

    def __repr__(self):
        return f"CYInvariants(d={self.d}, chi={self.chi})"

    def q0_row(self):
        """The forced q**0 row sum (-1)**p chi_p y**(d/2 - p), keyed by 4*l."""
        row = {}
        for p, c in enumerate(self.chi):
            val = (-1) ** p * c
            if val:
                row[2 * self.d - 4 * p] = val
        return row


K3 = CYInvariants(2, (2, -20, 2))
ENRIQUES = CYInvariants(2, (1, -10, 1))


def _divide_row_by_halfint(row, d):
    """Divide a symmetric odd row (keys 4*l, l half-integral) by the row
    y**(1/2) + y**(-1/2); returns the quotient row or raises."""
    work = dict(row)
    quotient = {}
    for e in range(2 * d - 2, -2 * d - 1, -4):
        c = work.pop(e + 2, 0)
        if c:
            quotient[e] = c
            k = e - 2
            new = work.get(k, 0) - c
            if new:
                work[k] = new
            else:
                work.pop(k, None)
    if work:
        raise ValidationError(
            "chi vector is incompatible with the half-integral index factor"
        )
    return quotient


def _solve_row(row, m, qprec):
    """Solve an integer symmetric row over the canonical index-m basis.

    Returns coordinates {n: x}.  Raises ValidationError with a named reason
    when the row is outside the rank-m lattice of weak-form q**0 rows.
    """
    work = dict(row)
    coords = {}
    import math

    for n in range(m, 0, -1):
        psi = basis_psi(m, n, qprec)
        prow = psi.q_row(0)
        lead = prow[4 * n]
        c = work.get(4 * n, 0)
        if c % lead:
            raise ValidationError(
                f"coefficient {c} at y**{n} must be divisible by {lead} "
                f"(index {m} congruence)"
            )
        x = c // lead
        coords[n] = x
        if x:
            for l4, pc in prow.items():
                new = work.get(l4, 0) - x * pc
                if new:
                    work[l4] = new
                else:
                    work.pop(l4, None)
    if work:
        raise ValidationError(
            f"q**0 row not realizable by a weak Jacobi form: residue {work}"
        )
    return coords


_RELATION_NAMES = {
    4: "chi2 = 22*chi0 - 4*chi1",
    6: "chi3 = -34*chi0 + 14*chi1 - 2*chi2",
    8: "chi4 = 46*chi0 - 25*chi1 + 10*chi2 - chi3",
    10: "chi5 = -58*chi0 + 36*chi1 - 20*chi2 + 8*chi3"
    " - (2/5)*(chi4 + chi3 - chi2 - chi1)",
}


def _relation_residual(inv):
    """Residual of the forced middle-coefficient relation (even d >= 4)."""
    c = inv.chi
    if inv.d == 4:
        return Fraction(c[2] - (22 * c[0] - 4 * c[1]))
    if inv.d == 6:
        return Fraction(c[3] - (-34 * c[0] + 14 * c[1] - 2 * c[2]))
    if inv.d == 8:
        return Fraction(c[4] - (46 * c[0] - 25 * c[1] + 10 * c[2] - c[3]))
    if inv.d == 10:
        target = (
            Fraction(-58 * c[0] + 36 * c[1] - 20 * c[2] + 8 * c[3])
            - Fraction(2, 5) * (c[4] + c[3] - c[2] - c[1])
        )
        return Fraction(c[5]) - target
    return Fraction(0)


def elliptic_genus(inv, qprec=96):
    """The elliptic genus as a weight-0 weak Jacobi form of index d/2.

    The q**0 row (1.2-style) determines the form uniquely for d <= 10; the
    solver raises a ValidationError naming the violated congruence or
    linear relation when the invariants are not realizable.
    """
    d = inv.d
    if d > 11:
        raise ValidationError(
            "indices above 11/2 are not determined by the chi vector alone"
        )
    row = inv.q0_row()
    if d % 2 == 0:
        m = d // 2
        if m == 0:
            raise ValidationError("dimension 0 is not supported")
        try:
            coords = _solve_row(row, m, qprec)
        except ValidationError as exc:
            raise ValidationError(_name_failure(inv, str(exc))) from exc
        form = _assemble(coords, m, qprec)
        return form
    # odd d: peel off the half-integral generator
    quotient_row = _divide_row_by_halfint(row, d)
    m = (d - 3) // 2
    base = phi_threehalf(qprec)
    if m == 0:
        c = quotient_row.get(0, 0)
        if quotient_row not in ({}, {0: c}):
            raise ValidationError("chi vector invalid for dimension 3")
        series = base.series.scale(c)
        return JacobiForm(series, 0, 3, None)
    try:
        coords = _solve_row(quotient_row, m, qprec)
    except ValidationError as exc:
        raise ValidationError(_name_failure(inv, str(exc))) from exc
    rest = _assemble(coords, m, qprec)
    return base * rest


def _assemble(coords, m, qprec):
    form = None
    for n, x in coords.items():
        if not x:
            continue
        term = x * basis_psi(m, n, qprec)
        form = term if form is None else form + term
    if form is None:
        form = JacobiForm(Series.zero(DEN2, qprec), 0, 2 * m, None)
    return form


def _name_failure(inv, detail):
    e = inv.euler
    extras = []
    if inv.d == 4 and _relation_residual(inv):
        extras.append("relation chi2 = 22*chi0 - 4*chi1 violated")
        if e % 6:
            extras.append(f"e(M4) = {e} is not divisible by 6")
    if inv.d == 6 and _relation_residual(inv):
        extras.append("relation " + _RELATION_NAMES[6] + " violated")
        if e % 4:
            extras.append(f"e(M6) = {e} is not divisible by 4")
    if inv.d == 8 and _relation_residual(inv):
        extras.append("relation " + _RELATION_NAMES[8] + " violated")
        if e % 3:
            extras.append(f"e(M8) = {e} is not divisible by 3")
    if inv.d == 10 and _relation_residual(inv):
        extras.append("relation " + _RELATION_NAMES[10] + " violated")
    if inv.d == 5 and e % 24:
        extras.append(f"e(M5) = {e} is not divisible by 24")
    suffix = ("; " + "; ".join(extras)) if extras else ""
    return f"invariants for d={inv.d} are not realizable: {detail}{suffix}"


def chi_y_polynomial(form, d):
    """Recover the chi vector from the q**0 row of an elliptic genus."""
    if form.index2 != d:
        raise ValidationError(
            f"form has index {form.index2}/2, expected {d}/2 for dimension {d}"
        )
    row = form.q_row(0)
    chi = []
    for p in range(d + 1):
        chi.append((-1) ** p * row.get(2 * d - 4 * p, 0))
    used = {2 * d - 4 * p for p in range(d + 1)}
    if any(k not in used and v for k, v in row.items()):
        raise ValidationError("q**0 row is wider than a dimension-d genus allows")
    return CYInvariants(d, chi)


def relation_check(inv):
    """Evaluate the forced relations for the given invariants.

    Returns a dict mapping relation names to (ok, residual) pairs.  The
    (1.14)-style second-moment identity holds for every realizable genus;
    the middle-coefficient relations are dimension-specific.
    """
    d, chi, e = inv.d, inv.chi, inv.euler
    report = {}
    moment = sum(
        (-1) ** p * chi[p] * (Fraction(d, 2) - p) ** 2 for p in range(d + 1)
    )
    target = Fraction(e * d, 12)
    report["second_moment: e*d/12 == sum (-1)^p chi_p (d/2-p)^2"] = (
        moment == target,
        moment - target,
    )
    if d in _RELATION_NAMES:
        res = _relation_residual(inv)
        report[_RELATION_NAMES[d]] = (res == 0, res)
    if d == 4:
        report["e(M4) mod 6 == 0"] = (e % 6 == 0, e % 6)
    if d == 6:
        report["e(M6) mod 4 == 0"] = (e % 4 == 0, e % 4)
    if d == 8:
        report["e(M8) mod 3 == 0"] = (e % 3 == 0, e % 3)
    if d == 3:
        res = Fraction(chi[1]) + Fraction(e, 2)
        report["chi1 = -e/2"] = (res == 0, res)
    if d == 5:
        res1 = Fraction(chi[1]) + Fraction(e, 24)
        res2 = Fraction(chi[2]) - Fraction(11 * e, 24)
        report["chi1 = -e/24"] = (res1 == 0, res1)
        report["chi2 = 11*e/24"] = (res2 == 0, res2)
        report["e(M5) mod 24 == 0"] = (e % 24 == 0, e % 24)
    if d == 7:
        res = Fraction(e) - 12 * (Fraction(chi[2]) - 3 * chi[1])
        report["e(M7) = 12*(chi2 - 3*chi1)"] = (res == 0, res)
    return report


# Frozen congruence exponents for torsion specializations of weight-0
# integral-index weak Jacobi forms over Z.  Keys: (torsion order, index
# residue); values: (p-adic valuation of the constant term, valuation of
# every positive q coefficient).
TORSION_CONGRUENCES = {
    (2, 0): (2, 0, 13),
    (2, 1): (2, 3, 8),
    (2, 2): (2, 1, 12),
    (2, 3): (2, 4, 9),
    (3, 0): (3, 0, 6),
    (3, 1): (3, 2, 4),
    (3, 2): (3, 1, 3),
    (4, 0): (2, 0, 8),
    (4, 1): (2, 1, 3),
    (4, 2): (2, 2, 5),
    (4, 3): (2, 1, 3),
}


def _valuation(n, p):
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def divisibility_report(form, d=None):
    """Check the torsion-specialization congruences on a weight-0 form.

    Returns a dict of named checks mapping to (ok, detail).  When d is
    given the form is treated as the elliptic genus of a dimension-d
    manifold and the d*e = 0 mod 24 divisibility is included.
    """
    if form.weight2 != 0 or form.index2 % 2:
        raise ValidationError("divisibility_report needs weight 0, integral index")
    m = form.index2 // 2
    report = {}
    for order in (2, 3, 4):
        residue = m % (3 if order == 3 else 4)
        p, cv, tv = TORSION_CONGRUENCES[(order, residue)]
        spec = specialize_torsion(form, order)
        const = spec.coeff((0, 0))
        ok_c = const % (p ** cv) == 0
        ok_t = all(
            c % (p ** tv) == 0 for k, c in spec.terms.items() if k[0] > 0
        )
        report[f"z=1/{order}: constant divisible by {p}**{cv}"] = (ok_c, const)
        report[f"z=1/{order}: q-tail divisible by {p}**{tv}"] = (
            ok_t,
            sorted(spec.terms.items())[:4],
        )
    if d is not None:
        e = sum(form.q_row(0).values())
        report["d*e mod 24 == 0"] = ((d * e) % 24 == 0, d * e)
    return report


def special_value_suite(qprec=240):
    """The special-value identities tying torsion values of the generators
    to eta quotients and theta constants.  Returns name -> bool."""
    report = {}
    p1 = generator(1, qprec)
    p2 = generator(2, qprec)
    p3 = generator(3, qprec)
    alpha = specialize_torsion(p1, 2)
    beta = specialize_torsion(p2, 3)
    gamma2 = specialize_torsion(p3, 4)
    # phi03(tau, 1/4) = 2*gamma with gamma = theta00(2tau)/theta01(2tau)
    t00 = theta_constant(0, 0, qprec, scale=2)
    t01 = theta_constant(0, 1, qprec, scale=2)
    gamma = t00.exact_div(t01)
    report["phi03(1/4) = 2*theta00(2t)/theta01(2t)"] = gamma2.same_terms(
        gamma.scale(2)
    )
    # alpha = 16*gamma**4 - 8
    lhs = alpha
    rhs = (gamma ** 4).scale(16) - Series.const(8, DEN2, gamma.qprec)
    report["alpha = 16*gamma**4 - 8"] = lhs.same_terms(rhs)
    # alpha**2 - 64 = 2**12 Delta(2tau)/Delta(tau)
    quot2 = eta_power(24, qprec, scale=2).exact_div(eta_power(24, qprec))
    lhs = alpha * alpha - Series.const(64, DEN2, alpha.qprec)
    report["alpha**2 - 64 = 2**12 Delta(2t)/Delta(t)"] = lhs.same_terms(
        quot2.scale(4096)
    )
    # beta**3 - 27 = 3**6 (eta(3t)/eta(t))**12
    quot3 = eta_power(12, qprec, scale=3).exact_div(eta_power(12, qprec))
    lhs = beta * beta * beta - Series.const(27, DEN2, beta.qprec)
    report["beta**3 - 27 = 3**6 (eta(3t)/eta(t))**12"] = lhs.same_terms(
        quot3.scale(729)
    )
    # positivity of the alpha and gamma expansions
    report["alpha has positive coefficients"] = all(
        c > 0 for c in alpha.terms.values()
    )
    report["gamma has positive coefficients"] = all(
        c > 0 for c in gamma.terms.values()
    )
    return report


def xi06_torsion_values(qprec=240):
    """Torsion values of the index-6 ideal generator as eta quotients."""
    from .jacobi import xi06

    xi = xi06(qprec)
    report = {}
    v2 = specialize_torsion(xi, 2)
    q2 = eta_power(24, qprec, scale=2).exact_div(eta_power(24, qprec))
    report["xi06(1/2) = 2**12 Delta(2t)/Delta(t)"] = v2.same_terms(q2.scale(4096))
    v3 = specialize_torsion(xi, 3)
    q3 = eta_power(12, qprec, scale=3).exact_div(eta_power(12, qprec))
    report["xi06(1/3) = 3**6 (eta(3t)/eta(t))**12"] = v3.same_terms(q3.scale(729))
    v4 = specialize_torsion(xi, 4)
    q4 = eta_power(12, qprec, scale=4).exact_div(eta_power(12, qprec, scale=2))
    report["xi06(1/4) = 2**6 (eta(4t)/eta(2t))**12"] = v4.same_terms(q4.scale(64))
    v6 = specialize_torsion(xi, 6)
    q6 = (
        eta_power(12, qprec)
        * eta_power(12, qprec, scale=6)
    ).exact_div(eta_power(12, qprec, scale=2) * eta_power(12, qprec, scale=3))
    report["xi06(1/6) = (eta(t)eta(6t)/(eta(2t)eta(3t)))**12"] = v6.same_terms(q6)
    return report
