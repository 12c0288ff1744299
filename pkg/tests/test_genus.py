"""Calabi-Yau invariants, elliptic genera, forced relations, congruences."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from jacobilift.errors import ValidationError
from jacobilift.genpoly import GeneratorPolynomial
from jacobilift.genus import (
    CYInvariants,
    ENRIQUES,
    K3,
    chi_y_polynomial,
    divisibility_report,
    elliptic_genus,
    relation_check,
    special_value_suite,
    xi06_torsion_values,
)
from jacobilift.jacobi import generator


def test_k3_is_twice_phi01():
    genus = elliptic_genus(K3, qprec=24 * 5)
    assert genus.series.same_terms(generator(1, 24 * 5).series.scale(2))


def test_enriques_is_phi01():
    genus = elliptic_genus(ENRIQUES, qprec=24 * 5)
    assert genus.series.same_terms(generator(1, 24 * 5).series)


def test_chi_y_roundtrip():
    inv = CYInvariants(4, (1, 4, 6, 4, 1))
    genus = elliptic_genus(inv, qprec=24 * 3)
    assert chi_y_polynomial(genus, 4) == inv


def test_d4_relation_enforced():
    ok = CYInvariants(4, (1, 4, 22 - 16, 4, 1))
    report = relation_check(ok)
    assert report["chi2 = 22*chi0 - 4*chi1"][0]
    bad = CYInvariants(4, (1, 4, 7, 4, 1))
    report = relation_check(bad)
    assert not report["chi2 = 22*chi0 - 4*chi1"][0]
    assert not report["e(M4) mod 6 == 0"][0]
    with pytest.raises(ValidationError):
        elliptic_genus(bad, qprec=24 * 2)


def test_d5_euler_derivation_and_rejection():
    inv = CYInvariants.from_euler(5, 24)
    assert inv.chi[1] == -1 and inv.chi[2] == 11
    report = relation_check(inv)
    assert all(ok for ok, _ in report.values())
    with pytest.raises(ValidationError):
        CYInvariants.from_euler(5, 23)


def test_d7_euler_formula():
    name = "e(M7) = 12*(chi2 - 3*chi1)"
    good = CYInvariants(7, (0, 1, 3, 2, -2, -3, -1, 0))
    assert relation_check(good)[name][0]
    bad = CYInvariants(7, (0, 1, 2, 3, -3, -2, -1, 0))
    assert not relation_check(bad)[name][0]


def test_serre_duality_enforced():
    with pytest.raises(ValidationError):
        CYInvariants(3, (0, 1, 2, 0))


def test_special_values_all_pass():
    assert all(special_value_suite(240).values())


def test_xi06_torsion_values_all_pass():
    assert all(xi06_torsion_values(240).values())


@given(st.integers(min_value=0, max_value=10 ** 9))
@settings(max_examples=20, deadline=None)
def test_congruence_battery_random_forms(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 8)
    monomials = [
        (e1, e2, e3, e4)
        for e1 in range(m + 1)
        for e2 in range(m // 2 + 1)
        for e3 in range(m // 3 + 1)
        for e4 in range(m // 4 + 1)
        if e1 + 2 * e2 + 3 * e3 + 4 * e4 == m
    ]
    terms = {key: rng.randint(-9, 9) for key in monomials}
    terms = {k: c for k, c in terms.items() if c} or {monomials[0]: 1}
    form = GeneratorPolynomial(terms).evaluate(
        tuple(generator(i, 24 * 5) for i in (1, 2, 3, 4))
    )
    report = divisibility_report(form, d=2 * m)
    assert all(ok for ok, _ in report.values()), report
