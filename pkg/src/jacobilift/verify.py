"""Named verification suites over the whole library.

Each suite function returns a list of check dicts {"name", "ok", "detail"};
run_suite wraps one suite (or "all") into a JSON-friendly report.  The
suites encode the identities the library is built around: generator
goldens and ring relations, the canonical-basis structure, Hecke
identities, torsion-specialization congruences, and the Siegel-lift
batteries (dual constructions, factorization, Humbert multiplicities,
homomorphism, mirror inversion).
"""

import random
from math import gcd

from .errors import JacobiLiftError
from .genpoly import GeneratorPolynomial
from .genus import (
    CYInvariants,
    K3,
    divisibility_report,
    elliptic_genus,
    special_value_suite,
    xi06_torsion_values,
)
from .jacobi import (
    JacobiForm,
    basis_psi,
    generator,
    hecke_t0_2,
    hecke_tminus,
    linear_residuals,
    norm_table,
    phi_threehalf,
    psi2_variant,
    specialize_center,
    specialize_torsion,
    xi06,
)
from .lifts import (
    arithmetic_lift,
    assembly_check_d4,
    assembly_check_d8,
    delta11_identity_check,
    delta_half_theta,
    e_form,
    exp_lift,
    exp_lift_homomorphic,
    factorization_product,
    humbert_multiplicity,
    lift_window_for,
    quotient_reduction_check,
    siegel_scale,
    sqeg,
    theta_product_delta5_squared,
    window_equal,
)
from .modular import eta_power, theta_constant
from .series import DEN2, Series

GOLDEN_Q0_ROWS = {
    1: {4: 1, 0: 10, -4: 1},
    2: {4: 1, 0: 4, -4: 1},
    3: {4: 1, 0: 2, -4: 1},
    4: {4: 1, 0: 1, -4: 1},
}
GOLDEN_PHI1_Q1 = {-8: 10, -4: -64, 0: 108, 4: -64, 8: 10}
ALPHA_COEFFS = [8, 2 ** 8, 2 ** 11, 11 * 2 ** 10, 3 * 2 ** 14, 359 * 2 ** 9]


def _check(name, ok, detail=None):
    entry = {"name": name, "ok": bool(ok)}
    if detail is not None:
        entry["detail"] = detail
    return entry


def suite_ring(qmax=10):
    """Generator goldens, the two ring relations, and the special-value
    identities of the torsion specializations."""
    checks = []
    qp = 24 * (qmax + 2)
    for m, row in GOLDEN_Q0_ROWS.items():
        checks.append(
            _check(f"phi_0{m} q^0 row golden", generator(m, qp).q_row(0) == row)
        )
    checks.append(
        _check("phi_01 q^1 row golden", generator(1, qp).q_row(1) == GOLDEN_PHI1_Q1)
    )
    p1, p2, p3, p4 = (generator(m, qp) for m in (1, 2, 3, 4))
    rel = (p1 * p3 - p2 * p2).truncate(24 * qmax)
    checks.append(
        _check(
            f"4*phi_04 == phi_01*phi_03 - phi_02^2 ({qmax} q-orders)",
            rel.same_terms((4 * p4).truncate(24 * qmax)),
        )
    )
    xi = xi06(24 * qmax)
    poly_val = xi.poly.evaluate(tuple(generator(m, qp) for m in (1, 2, 3, 4)))
    checks.append(
        _check(
            f"xi_06 == -phi1^2 phi4 + 9 phi1 phi2 phi3 - 8 phi2^3 - 27 phi3^2"
            f" ({qmax} q-orders)",
            poly_val.truncate(24 * qmax).series.same_terms(xi.series),
        )
    )
    alpha = specialize_torsion(generator(1, qp), 2)
    got = [alpha.coeff((24 * n, 0)) for n in range(6)]
    checks.append(_check("alpha q^0..q^5 coefficients", got == ALPHA_COEFFS, got))
    for name, ok in special_value_suite(qp).items():
        checks.append(_check(name, ok))
    for name, ok in xi06_torsion_values(qp).items():
        checks.append(_check(name, ok))
    # center specializations (hat series)
    h1 = specialize_center(generator(1, qp))
    h2 = specialize_center(generator(2, qp))
    h3 = specialize_center(generator(3, qp))
    h4 = specialize_center(generator(4, qp))
    checks.append(_check("hat phi_03 == 0", not h3.terms))
    checks.append(
        _check("hat phi_04 == -1", dict(h4.terms) == {(0, 0): -1})
    )
    checks.append(
        _check("hat phi_02 == -2", dict(h2.terms) == {(0, 0): -2})
    )
    sq = h1 * h1
    lhs = sq + Series.const(64, DEN2, sq.qprec)
    rhs = (theta_constant(0, 0, qp) ** 12).exact_div(eta_power(12, qp))
    compare_to = min(lhs.qprec, 24 * qmax)
    checks.append(
        _check("hat phi_01^2 + 64 == (theta_00/eta)^12", lhs.same_terms(rhs, compare_to))
    )
    return checks


def _random_homogeneous_poly(rng, m):
    """A random integer generator-polynomial, homogeneous of index m."""
    monomials = [
        (e1, e2, e3, e4)
        for e1 in range(m + 1)
        for e2 in range(m // 2 + 1)
        for e3 in range(m // 3 + 1)
        for e4 in range(m // 4 + 1)
        if e1 + 2 * e2 + 3 * e3 + 4 * e4 == m
    ]
    terms = {}
    while not terms:
        terms = {
            key: rng.randint(-9, 9) for key in monomials if rng.random() < 0.7
        }
        terms = {k: c for k, c in terms.items() if c}
    return GeneratorPolynomial(terms)


def _poly_form(poly, qprec):
    return poly.evaluate(tuple(generator(m, qprec) for m in (1, 2, 3, 4)))


def suite_basis(qmax=3, random_count=100, seed=1259):
    """Existence and canonical shape of the basis elements for index <= 12,
    plus the two linear residuals on generators, basis and random forms."""
    checks = []
    qp = 24 * qmax
    psi2_row = {8: 1, 4: -4, 0: 6, -4: -4, -8: 1}
    shape_ok = True
    bad = None
    for m in range(1, 13):
        for n in range(1, m + 1):
            psi = basis_psi(m, n, qp)
            row = psi.q_row(0)
            if n == 1:
                ok = row.get(4, 0) == m // gcd(12, m)
            elif n == 2:
                ok = row == psi2_row
            else:
                ok = row.get(4 * n, 0) == 1 and all(
                    row.get(4 * j, 0) == 0 for j in range(2, n)
                )
            if not ok:
                shape_ok = False
                bad = (m, n, row)
    checks.append(_check("basis (m <= 12) q^0 canonical shape", shape_ok, bad))
    checks.append(
        _check(
            "psi^(1)_{0,5} q^0 row == 5y + 2 + 5/y",
            basis_psi(5, 1, qp).q_row(0) == {4: 5, 0: 2, -4: 5},
        )
    )
    res_ok = True
    bad = None
    for m in (1, 2, 3, 4):
        if linear_residuals(generator(m, qp)) != (0, 0):
            res_ok = False
            bad = ("generator", m)
    for m in range(1, 13):
        for n in range(1, m + 1):
            if linear_residuals(basis_psi(m, n, qp)) != (0, 0):
                res_ok = False
                bad = ("basis", m, n)
    checks.append(_check("residuals vanish on generators and basis", res_ok, bad))
    rng = random.Random(seed)
    rand_ok = True
    bad = None
    for _ in range(random_count):
        m = rng.randint(1, 8)
        form = _poly_form(_random_homogeneous_poly(rng, m), 72)
        if linear_residuals(form) != (0, 0):
            rand_ok = False
            bad = str(form.poly)
    checks.append(
        _check(
            f"residuals vanish on {random_count} random generator polynomials",
            rand_ok,
            bad,
        )
    )
    return checks


def suite_hecke(qmax=6):
    """The index-raising Hecke identities and a structural check of the
    index-preserving operator."""
    checks = []
    qp = 24 * qmax
    lhs = hecke_tminus(generator(1, 24 * (2 * qmax + 1)), 2) - 2 * generator(
        2, qp
    ).truncate(qp)
    p1 = generator(1, qp + 24)
    p2 = generator(2, qp + 24)
    rhs = (p1 * p1 - 20 * p2).truncate(qp)
    checks.append(
        _check(
            f"phi_01|T_-(2) - 2 phi_02 == phi_01^2 - 20 phi_02 ({qmax} q-orders)",
            lhs.truncate(qp).same_terms(rhs),
        )
    )
    lhs = hecke_tminus(generator(1, 24 * (3 * qmax + 1)), 3) - 3 * generator(
        3, qp
    ).truncate(qp)
    checks.append(
        _check(
            f"psi^(3)_{{0,3}} == phi_01|T_-(3) - 3 phi_03 ({qmax} q-orders)",
            lhs.truncate(qp).same_terms(basis_psi(3, 3, qp + 24).truncate(qp)),
        )
    )
    out = hecke_t0_2(generator(2, 24 * (4 * qmax + 2)))
    try:
        table = norm_table(out)
        structural = out.weight2 == 0 and out.index2 == 4 and bool(table)
    except JacobiLiftError:
        structural = False
    checks.append(
        _check("phi_02|T_0(2) is a norm-determined index-2 form", structural)
    )
    return checks


def suite_congruences(count=200, seed=682, qmax=5):
    """The mod 2^k / 3^k congruence battery on random integral weight-0
    forms of index 1..8, including the d*e = 0 mod 24 divisibility."""
    rng = random.Random(seed)
    qp = 24 * qmax
    all_ok = True
    bad = None
    for _ in range(count):
        m = rng.randint(1, 8)
        form = _poly_form(_random_homogeneous_poly(rng, m), qp)
        report = divisibility_report(form, d=2 * m)
        for name, (ok, detail) in report.items():
            if not ok:
                all_ok = False
                bad = (str(form.poly), name)
    return [
        _check(
            f"congruence battery on {count} random forms of index 1..8",
            all_ok,
            bad,
        )
    ]


def suite_lifts(qmax=3, smax=3):
    """The Siegel-lift batteries: dual constructions, the theta-product
    square, factorization, SQEG sanity, Humbert multiplicities, the
    exponential homomorphism, mirror inversion and the assemblies."""
    checks = []
    # dual constructions
    for name, idx in (("Delta2", 2), ("Delta1", 3)):
        f0 = generator(idx, 24)
        qp, sp, inq = lift_window_for(f0, qmax, smax)
        lifted = exp_lift(generator(idx, inq), qp, sp)
        summed = arithmetic_lift(name, qp, sp)
        checks.append(
            _check(
                f"exp_lift(phi_0{idx}) == {name} arithmetic sum"
                f" (q,s <= {qmax},{smax})",
                lifted.series.same_terms(summed.series)
                and lifted.weight2 == summed.weight2,
            )
        )
    # smallest terms of Delta2: q^{1/4} s^{1/2} (y^{1/2} - y^{-1/2})
    small = arithmetic_lift("Delta2", 13, 13)
    checks.append(
        _check(
            "Delta2 leading terms q^(1/4)s^(1/2)(y^(1/2) - y^(-1/2))",
            dict(small.series.terms) == {(6, 2, 12): 1, (6, -2, 12): -1},
        )
    )
    # theta-constant product
    tp = theta_product_delta5_squared(73, 73)
    two_phi1 = exp_lift_homomorphic([(generator(1, 24 * 8), 2)], 73, 73)
    checks.append(
        _check(
            "2^(-12) prod Theta_ab^2 == exp_lift(2 phi_01) (q,s <= 2)",
            window_equal(tp.series, two_phi1.series, 48, 48),
        )
    )
    d5 = exp_lift(generator(1, 24 * 8), 73, 73)
    checks.append(
        _check(
            "Delta5 antisymmetric under y -> 1/y",
            all(
                d5.series.terms.get((k[0], -k[1], k[2]), 0) == -c
                for k, c in d5.series.terms.items()
            ),
        )
    )
    # Delta_{1/2} substitution
    dh = siegel_scale(delta_half_theta(80, 200), 2, 4)
    e4 = exp_lift(generator(4, 24 * 12), 80, 80)
    checks.append(
        _check(
            "exp_lift(phi_04)(t,z,w) == Delta_1/2(t,2z,4w) (q,s <= 3)",
            window_equal(e4.series, dh.series, 72, 72),
        )
    )
    # factorization
    qp, sp, w = 49, 49, 60
    for label, inv in (("K3", K3), ("CY4(1,4,6,4,1)", CYInvariants(4, (1, 4, 6, 4, 1)))):
        ef = e_form(inv, qp, sp, ywindow=w)
        fp = factorization_product(inv, qp, sp, ywindow=w)
        checks.append(
            _check(
                f"anomaly * SQEG == exp_lift(-genus) for {label} (q,s <= 2)",
                window_equal(ef.series, fp.series, 48, 48, ybound=24),
            )
        )
    # SQEG sanity
    chi = elliptic_genus(K3, qprec=24 * 10)
    z = sqeg(chi, 97, 49)
    checks.append(
        _check("SQEG p^1 coefficient equals the input genus",
               z.s_slice(24).same_terms(chi.series, 96))
    )
    rows = {}
    for (nq, ly, ms), c in z.terms.items():
        key = (ms, nq)
        rows[key] = rows.get(key, 0) + c
    rows = {k: v for k, v in rows.items() if v}
    want = {(0, 0): 1, (24, 0): 24, (48, 0): 324}
    got = {k: v for k, v in rows.items() if k[0] <= 48}
    checks.append(
        _check("SQEG(K3) at y=1 == prod (1-p^n)^(-24): rows 1, 24, 324",
               got == want, got)
    )
    # Humbert multiplicities
    chi3 = -(phi_threehalf(24 * 12).double_z())
    got = (humbert_multiplicity(chi3, 0, 1), humbert_multiplicity(chi3, 1, 5))
    checks.append(
        _check("Phi_3 divisor: H_1(0) - H_1(5)", got == (1, -1), got)
    )
    chi5 = -((phi_threehalf(24 * 14) * generator(1, 24 * 14)).double_z())
    got = (
        humbert_multiplicity(chi5, 0, 3),
        humbert_multiplicity(chi5, 1, 7),
        humbert_multiplicity(chi5, 0, 1),
        humbert_multiplicity(chi5, 2, 9),
    )
    checks.append(
        _check(
            "Phi_5 divisor: H_9(3) - H_9(7) + 12 H_1(1) - 12 H_1(9)",
            got == (1, -1, 12, -12),
            got,
        )
    )
    chi_k3 = elliptic_genus(K3, qprec=24 * 6)
    checks.append(
        _check("K3: pole of order 2 along H_1(0)",
               humbert_multiplicity(chi_k3, 0, 1) == -2)
    )
    # exponential homomorphism
    hom_ok = True
    bad = None
    for a in (-2, -1, 0, 1, 2):
        for b in (-2, -1, 0, 1, 2):
            if a == 0 and b == 0:
                continue
            phi0 = generator(2, 97)
            psi0 = psi2_variant(2, 97, variant="A")
            probe = JacobiForm(
                phi0.series.scale(a) + psi0.series.scale(b), 0, 4
            )
            qp, sp, inq = lift_window_for(probe, 3, 3)
            inq = max(inq, 24 * 17)
            from .lifts import _prefactor_key

            pref = _prefactor_key(probe)
            phi = generator(2, inq)
            psi = psi2_variant(2, inq, variant="A")
            form = JacobiForm(
                phi.series.scale(a) + psi.series.scale(b), 0, 4
            )
            lhs = exp_lift(form, qp, sp, ywindow=80)
            rhs = exp_lift_homomorphic(
                [(phi, a), (psi, b)], qp, sp, ywindow=80
            )
            ql, sl = pref[0] + 24, pref[2] + 24
            nonempty = any(
                k[0] <= ql and k[2] <= sl and abs(k[1]) <= 12
                for k in lhs.series.terms
            )
            if not (nonempty and window_equal(lhs.series, rhs.series, ql, sl, ybound=12)):
                hom_ok = False
                bad = (a, b)
    checks.append(
        _check("exp_lift(a*phi + b*psi) == exp_lift(phi)^a exp_lift(psi)^b, |a|,|b| <= 2",
               hom_ok, bad)
    )
    # mirror inversion, d = 3
    m1 = e_form(CYInvariants.from_euler(3, -2), 49, 49, ywindow=80)
    m2 = e_form(CYInvariants.from_euler(3, 2), 49, 49, ywindow=80)
    prod = m1.series * m2.series
    checks.append(
        _check(
            "E(CY3, e=-2) * E(CY3, e=+2) == 1 (q,s <= 1)",
            window_equal(prod, Series.const(1, prod.den, 49), 24, 24, ybound=16),
        )
    )
    # Delta11 identity (projective: holds up to a Gaussian unit)
    report = delta11_identity_check()
    checks.append(
        _check(
            "Delta11 Delta2^2 proportional to Delta5(Z)Delta5(2z,4w)Delta5(z,w+1/2)",
            report["proportional"],
            {"unit": report["unit"]},
        )
    )
    # assemblies and the quotient reduction
    d4_ok = all(
        assembly_check_d4(inv)
        for inv in (
            CYInvariants(4, (1, 4, 6, 4, 1)),
            CYInvariants(4, (1, 0, 22, 0, 1)),
            CYInvariants(4, (0, 1, -4, 1, 0)),
        )
    )
    checks.append(_check("-chi(M4) == -chi0 psi_A + chi1 phi_02", d4_ok))
    d8_ok = all(
        assembly_check_d8(inv)
        for inv in (
            CYInvariants(8, (1, 2, 3, 4, 22, 4, 3, 2, 1)),
            CYInvariants(8, (0, 0, 0, 1, -1, 1, 0, 0, 0)),
            CYInvariants(8, (0, 1, 0, 0, -25, 0, 0, 1, 0)),
        )
    )
    checks.append(
        _check(
            "-chi(M8) == chi3 phi_04 - chi2 phi_01(2z) + chi1 psi^(3) - chi0 psi^(4)",
            d8_ok,
        )
    )
    checks.append(
        _check(
            "index-6 quotient reduction: difference of lift inputs == 2 phi_06",
            quotient_reduction_check(),
        )
    )
    return checks


SUITES = {
    "ring": suite_ring,
    "basis": suite_basis,
    "hecke": suite_hecke,
    "congruences": suite_congruences,
    "lifts": suite_lifts,
}


def run_suite(name, **kwargs):
    """Run one named suite (or 'all'); returns a JSON-friendly report."""
    if name == "all":
        suites = [run_suite(s, **kwargs) for s in SUITES]
        return {
            "suite": "all",
            "ok": all(s["ok"] for s in suites),
            "suites": suites,
        }
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    fn = SUITES[name]
    import inspect

    accepted = {
        k: v for k, v in kwargs.items()
        if k in inspect.signature(fn).parameters and v is not None
    }
    checks = fn(**accepted)
    return {
        "suite": name,
        "ok": all(c["ok"] for c in checks),
        "checks": checks,
    }
