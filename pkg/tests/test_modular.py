"""One-variable building blocks: eta powers, theta constants, characters."""

from jacobilift.modular import (
    discriminant_form,
    eta_power,
    kronecker,
    sigma1,
    theta_constant,
)

# Ramanujan tau values for q, q^2, ..., q^6 in Delta = eta^24
TAU = [1, -24, 252, -1472, 4830, -6048]


def test_discriminant_coefficients():
    delta = discriminant_form(24 * 7)
    got = [delta.coeff((24 * n, 0)) for n in range(1, 7)]
    assert got == TAU


def test_eta_power_additivity():
    a = eta_power(7, 240)
    b = eta_power(17, 240)
    assert (a * b).same_terms(eta_power(24, 240), 200)


def test_eta_negative_power_inverse():
    prod = eta_power(5, 240) * eta_power(-5, 240)
    assert prod.coeff((0, 0)) == 1
    assert all(c == 0 for k, c in prod.terms.items() if k != (0, 0))


def test_theta_constant_squares():
    # Jacobi: theta_00^4 = theta_01^4 + theta_10^4
    qp = 24 * 8
    t00 = theta_constant(0, 0, qp) ** 4
    t01 = theta_constant(0, 1, qp) ** 4
    t10 = theta_constant(1, 0, qp) ** 4
    assert t00.same_terms(t01 + t10, 24 * 6)


def test_kronecker_values():
    assert [kronecker(-4, n) for n in (1, 2, 3, 5, 7)] == [1, 0, -1, 1, -1]
    assert [kronecker(12, n) for n in (1, 5, 7, 11, 13)] == [1, -1, -1, 1, 1]
    assert kronecker(-4, -1) == -1 and kronecker(12, -1) == 1


def test_sigma1():
    assert [sigma1(n) for n in range(1, 7)] == [1, 3, 4, 7, 6, 12]
