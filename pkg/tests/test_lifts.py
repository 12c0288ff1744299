"""Siegel lifts: exponential products, arithmetic sums, SQEG, Humbert data."""

import pytest

from jacobilift.errors import PrecisionError, ValidationError
from jacobilift.genus import CYInvariants, K3, elliptic_genus
from jacobilift.jacobi import JacobiForm, generator, phi_threehalf, psi2_variant
from jacobilift.lifts import (
    arithmetic_lift,
    assembly_check_d4,
    assembly_check_d8,
    delta11_identity_check,
    delta_half_theta,
    e_form,
    even_characteristics,
    exp_lift,
    exp_lift_homomorphic,
    factorization_product,
    humbert_multiplicity,
    lift_window_for,
    quotient_reduction_check,
    siegel_scale,
    siegel_theta_constant,
    sqeg,
    symmetric_product_genus,
    theta_product_delta5_squared,
    window_equal,
)
from jacobilift.series import DEN3, Series


def _dual(name, idx, qmax, smax):
    f0 = generator(idx, 24)
    qprec, sprec, inq = lift_window_for(f0, qmax, smax)
    lifted = exp_lift(generator(idx, inq), qprec, sprec)
    summed = arithmetic_lift(name, qprec, sprec)
    return lifted, summed


def test_delta2_dual_construction():
    lifted, summed = _dual("Delta2", 2, 3, 3)
    assert lifted.series.same_terms(summed.series)
    assert lifted.weight2 == summed.weight2 == 4
    assert lifted.character_order == summed.character_order == 4


def test_delta1_dual_construction():
    lifted, summed = _dual("Delta1", 3, 3, 3)
    assert lifted.series.same_terms(summed.series)
    assert lifted.weight2 == summed.weight2 == 2


def test_delta2_smallest_terms():
    small = arithmetic_lift("Delta2", 13, 13)
    assert dict(small.series.terms) == {(6, 2, 12): 1, (6, -2, 12): -1}


def test_exp_lift_prefactor_and_metadata():
    ss = exp_lift(generator(1, 24 * 8), 49, 49)
    assert ss.weight2 == 10  # c(0,0) = 10
    assert ss.index_t == 1
    assert min(k[0] for k in ss.series.terms) == 12  # q^(1/2) prefactor
    assert ss.series.coeff((12, 2, 12)) == 1


def test_exp_lift_rejects_nonzero_weight():
    from jacobilift.jacobi import phi_weak_weight_minus1

    with pytest.raises(ValidationError):
        exp_lift(phi_weak_weight_minus1(96), 49, 49)


def test_exp_lift_precision_contract():
    with pytest.raises(PrecisionError):
        exp_lift(generator(2, 24), 100, 400)


def test_theta_constants_square_product():
    tp = theta_product_delta5_squared(73, 73)
    two_phi1 = exp_lift_homomorphic([(generator(1, 24 * 8), 2)], 73, 73)
    assert window_equal(tp.series, two_phi1.series, 48, 48)


def test_theta_constant_trivial_characteristic():
    theta = siegel_theta_constant((0, 0), (0, 0), 49, 49)
    assert theta.coeff((0, 0, 0)) == 1


def test_theta_constant_rejects_odd():
    with pytest.raises(ValidationError):
        siegel_theta_constant((1, 0), (1, 0), 25, 25)


def test_even_characteristics_count():
    assert len(even_characteristics()) == 10


def test_delta_half_substitution():
    dh = siegel_scale(delta_half_theta(80, 200), 2, 4)
    e4 = exp_lift(generator(4, 24 * 12), 80, 80)
    assert window_equal(e4.series, dh.series, 72, 72)


def test_delta_half_integral_and_antisymmetric():
    dh = delta_half_theta(49, 49)
    assert dh.series.coeff((3, 1, 3)) == 1
    assert dh.series.coeff((3, -1, 3)) == -1
    assert all(isinstance(c, int) for c in dh.series.terms.values())


def test_factorization_k3_and_cy4():
    qp, sp, w = 49, 49, 60
    for inv in (K3, CYInvariants(4, (1, 4, 6, 4, 1))):
        ef = e_form(inv, qp, sp, ywindow=w)
        fp = factorization_product(inv, qp, sp, ywindow=w)
        assert window_equal(ef.series, fp.series, 48, 48, ybound=24), inv


def test_sqeg_first_order_is_genus():
    chi = elliptic_genus(K3, qprec=24 * 10)
    z = sqeg(chi, 97, 49)
    assert z.s_slice(24).same_terms(chi.series, 96)


def test_sqeg_k3_y1_rows():
    chi = elliptic_genus(K3, qprec=24 * 14)
    z = sqeg(chi, 97, 73)
    rows = {}
    for (nq, ly, ms), c in z.terms.items():
        rows[(ms, nq)] = rows.get((ms, nq), 0) + c
    rows = {k: v for k, v in rows.items() if v}
    # prod (1-p^n)^{-24}: 1, 24, 324, 3200 (partition convolution)
    assert rows == {(0, 0): 1, (24, 0): 24, (48, 0): 324, (72, 0): 3200}


def test_symmetric_product_genus_matches_sqeg_slice():
    chi = elliptic_genus(K3, qprec=24 * 14)
    z = sqeg(chi, 97, 73)
    s2 = symmetric_product_genus(chi, 2, 49)
    assert z.s_slice(48).same_terms(s2, 48)


def test_humbert_phi3():
    chi3 = -(phi_threehalf(24 * 12).double_z())
    assert humbert_multiplicity(chi3, 0, 1) == 1
    assert humbert_multiplicity(chi3, 1, 5) == -1


def test_humbert_phi5():
    chi5 = -((phi_threehalf(24 * 14) * generator(1, 24 * 14)).double_z())
    got = [
        humbert_multiplicity(chi5, 0, 3),
        humbert_multiplicity(chi5, 1, 7),
        humbert_multiplicity(chi5, 0, 1),
        humbert_multiplicity(chi5, 2, 9),
    ]
    assert got == [1, -1, 12, -12]


def test_humbert_k3_pole():
    chi = elliptic_genus(K3, qprec=24 * 6)
    assert humbert_multiplicity(chi, 0, 1) == -2


def test_humbert_zero_form():
    zero = JacobiForm(Series.zero((24, 4), 24 * 6), 0, 4)
    assert humbert_multiplicity(zero, 0, 1) == 0


def test_exp_lift_homomorphism_small():
    for a, b in ((1, 1), (2, -1), (-1, 2), (0, -2)):
        phi0 = generator(2, 97)
        psi0 = psi2_variant(2, 97, variant="A")
        probe = JacobiForm(phi0.series.scale(a) + psi0.series.scale(b), 0, 4)
        qp, sp, inq = lift_window_for(probe, 3, 3)
        inq = max(inq, 24 * 17)
        from jacobilift.lifts import _prefactor_key

        pref = _prefactor_key(probe)
        phi = generator(2, inq)
        psi = psi2_variant(2, inq, variant="A")
        form = JacobiForm(phi.series.scale(a) + psi.series.scale(b), 0, 4)
        lhs = exp_lift(form, qp, sp, ywindow=80)
        rhs = exp_lift_homomorphic([(phi, a), (psi, b)], qp, sp, ywindow=80)
        assert window_equal(
            lhs.series, rhs.series, pref[0] + 24, pref[2] + 24, ybound=12
        ), (a, b)


def test_mirror_inversion_d3():
    m1 = e_form(CYInvariants.from_euler(3, -2), 49, 49, ywindow=80)
    m2 = e_form(CYInvariants.from_euler(3, 2), 49, 49, ywindow=80)
    prod = m1.series * m2.series
    assert window_equal(prod, Series.const(1, DEN3, 49), 24, 24, ybound=16)


def test_delta11_identity_up_to_unit():
    report = delta11_identity_check()
    assert report["proportional"]
    assert report["unit"] in ("1i", "i")


def test_assembly_d4():
    assert assembly_check_d4(CYInvariants(4, (1, 4, 6, 4, 1)))
    assert assembly_check_d4(CYInvariants(4, (0, 1, -4, 1, 0)))


def test_assembly_d8():
    assert assembly_check_d8(CYInvariants(8, (1, 2, 3, 4, 22, 4, 3, 2, 1)))
    assert assembly_check_d8(CYInvariants(8, (0, 0, 0, 1, -1, 1, 0, 0, 0)))


def test_quotient_reduction():
    assert quotient_reduction_check()
