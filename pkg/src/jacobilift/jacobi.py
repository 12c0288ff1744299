"""Weak Jacobi forms: generators, the canonical basis, Hecke operators,
ideal division, decomposition and torsion specializations.

Conventions.  A JacobiForm stores doubled weight and index (weight2,
index2) so that half-integral cases stay in integer arithmetic.  The
Fourier expansion lives in a two-variable Series with exponent units
q: 1/24, y: 1/4; a coefficient f(n, l) of q**n y**l sits at the key
(24*n, 4*l).
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .errors import PrecisionError, ValidationError
from .genpoly import GeneratorPolynomial
from .modular import eta_power, g2_series, kronecker, theta_constant
from .rings import RING_Q, RING_Z, root_of_unity_sum_as_int
from .series import DEN2, Series


class JacobiForm:
    """A weak Jacobi form given by its exact truncated Fourier expansion."""

    __slots__ = ("series", "weight2", "index2", "poly")

    def __init__(self, series, weight2, index2, poly=None):
        if series.den != DEN2:
            raise ValidationError("Jacobi forms use two-variable series")
        residue = 0 if index2 % 2 == 0 else 2
        for key in series.terms:
            if key[0] % 24 != 0:
                raise ValidationError("Jacobi form q-exponents must be integral")
            if key[1] % 4 != residue:
                raise ValidationError(
                    f"y-exponent {key[1]}/4 invalid for index {index2}/2"
                )
        self.series = series
        self.weight2 = weight2
        self.index2 = index2
        self.poly = poly

    # ---- queries --------------------------------------------------------

    @property
    def weight(self):
        return Fraction(self.weight2, 2)

    @property
    def index(self):
        return Fraction(self.index2, 2)

    def fourier(self, n, l4):
        """Coefficient f(n, l) with l given in 1/4 units (l4 = 4*l)."""
        nq = 24 * n
        if self.series.qprec is not None and nq >= self.series.qprec:
            raise PrecisionError(f"coefficient at q**{n} is beyond precision")
        return self.series.coeff((nq, l4))

    def qprec_orders(self):
        """Number of complete whole q-orders available."""
        if self.series.qprec is None:
            return None
        return max((self.series.qprec + 23) // 24, 0)

    def q_row(self, n):
        """The q**n row as a dict {l4: coeff}."""
        return {k[1]: c for k, c in self.series.q_slice(24 * n)}

    def __repr__(self):
        return (
            f"JacobiForm(weight={self.weight}, index={self.index}, "
            f"qprec={self.series.qprec})"
        )

    def __eq__(self, other):
        if not isinstance(other, JacobiForm):
            return NotImplemented
        return (
            self.weight2 == other.weight2
            and self.index2 == other.index2
            and self.series == other.series
        )

    def same_terms(self, other, qprec=None):
        return (
            self.weight2 == other.weight2
            and self.index2 == other.index2
            and self.series.same_terms(other.series, qprec)
        )

    # ---- arithmetic -------------------------------------------------------

    def _require_same_type(self, other):
        if self.weight2 != other.weight2 or self.index2 != other.index2:
            raise ValidationError(
                "can only add Jacobi forms of equal weight and index"
            )

    def __add__(self, other):
        self._require_same_type(other)
        poly = None
        if self.poly is not None and other.poly is not None:
            poly = self.poly + other.poly
        return JacobiForm(
            self.series + other.series, self.weight2, self.index2, poly
        )

    def __neg__(self):
        poly = None if self.poly is None else -self.poly
        return JacobiForm(-self.series, self.weight2, self.index2, poly)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            poly = None if self.poly is None else self.poly * other
            return JacobiForm(
                self.series.scale(other), self.weight2, self.index2, poly
            )
        poly = None
        if self.poly is not None and other.poly is not None:
            poly = self.poly * other.poly
        return JacobiForm(
            self.series * other.series,
            self.weight2 + other.weight2,
            self.index2 + other.index2,
            poly,
        )

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValidationError("Jacobi forms only take powers >= 0 here")
        result = unit_form(self.series.qprec)
        base = self
        for _ in range(e):
            result = result * base
        return result

    def scale_div(self, d):
        """Exact division of every coefficient (and the polynomial) by d."""
        terms = {}
        for k, c in self.series.terms.items():
            q, r = divmod(c, d)
            if r:
                raise ValidationError(f"coefficient {c} at {k} not divisible by {d}")
            terms[k] = q
        series = Series(DEN2, terms, self.series.qprec, self.series.ring, _clean=True)
        poly = None
        if self.poly is not None:
            pterms = {}
            for k, c in self.poly.terms.items():
                q, r = divmod(c, d)
                if r:
                    poly = None
                    break
                pterms[k] = q
            else:
                poly = GeneratorPolynomial(pterms)
        return JacobiForm(series, self.weight2, self.index2, poly)

    def double_z(self):
        """phi(tau, 2z): index quadruples, weight unchanged."""
        poly = None
        return JacobiForm(
            self.series.scale_y(2), self.weight2, self.index2 * 4, poly
        )

    def truncate(self, qprec):
        return JacobiForm(
            self.series.truncate(qprec), self.weight2, self.index2, self.poly
        )


def unit_form(qprec):
    return JacobiForm(
        Series.const(1, DEN2, qprec), 0, 0, GeneratorPolynomial.const(1)
    )


# ---- theta functions and generators -------------------------------------


def theta_jacobi(qprec, y_scale=1):
    """The odd Jacobi theta function, as the series
    sum_m (-4/m) q**(m*m/8) y**(m*y_scale/2)."""
    terms = {}
    bound = isqrt(max(qprec, 0) // 3) + 2
    for m in range(-bound, bound + 1):
        nq = 3 * m * m
        if nq >= qprec:
            continue
        c = kronecker(-4, m)
        if c:
            terms[(nq, 2 * m * y_scale)] = c
    return Series(DEN2, terms, qprec)


def theta_jacobi_product(qprec, y_scale=1):
    """Product form -q**(1/8) y**(-1/2) prod (1-q**(n-1)y)(1-q**n/y)(1-q**n)."""
    rel = qprec - 3
    acc = Series.const(1, DEN2, rel)
    n = 1
    while True:
        lead = 24 * (n - 1)
        if lead >= rel and 24 * n >= rel:
            break
        for key in ((lead, 4 * y_scale), (24 * n, -4 * y_scale), (24 * n, 0)):
            if key[0] >= rel:
                continue
            factor = Series(DEN2, {(0, 0): 1, key: -1}, rel, RING_Z, _clean=True)
            acc = acc * factor
        n += 1
    return acc.shift((3, -2 * y_scale)).scale(-1)


def theta_two_var(a, b, qprec):
    """theta_{a,b}(tau, z) = sum_n (-1)**(b*n) q**((2n+a)**2/8) y**((2n+a)/2)."""
    if (a, b) == (1, 1):
        raise ValidationError("characteristic (1,1) is rejected (odd theta)")
    if a not in (0, 1) or b not in (0, 1):
        raise ValidationError("theta characteristics must be 0 or 1")
    terms = {}
    bound = isqrt(max(qprec, 0) // 3) + 2
    for n in range(-bound, bound + 1):
        m = 2 * n + a
        nq = 3 * m * m
        if nq >= qprec:
            continue
        sign = -1 if (b * n) % 2 else 1
        key = (nq, 2 * m)
        terms[key] = terms.get(key, 0) + sign
    return Series(DEN2, terms, qprec)


def xi_ab(a, b, qprec):
    """xi_{a,b} = theta_{a,b}(tau, z) / theta_{a,b}(tau, 0), over Q."""
    num = theta_two_var(a, b, qprec + 6).promote(RING_Q)
    den = theta_constant(a, b, qprec + 6).promote(RING_Q)
    return num.exact_div(den).truncate(qprec)


def _phi01_series(qprec):
    total = Series.zero(DEN2, qprec, RING_Q)
    for a, b in ((0, 0), (1, 0), (0, 1)):
        xi = xi_ab(a, b, qprec)
        total = total + xi * xi
    return total.scale(4).demote_to_int()


def _phi02_series(qprec):
    pad = qprec + 8
    terms = {}
    mbound = isqrt(pad // 3) + 2
    nbound = isqrt(pad) + 2
    for m in range(-mbound, mbound + 1):
        km = kronecker(-4, m)
        if not km:
            continue
        for n in range(-nbound, nbound + 1):
            kn = kronecker(12, n)
            if not kn:
                continue
            nq = 3 * m * m + n * n
            if nq >= pad:
                continue
            key = (nq, 2 * (m + n))
            c = (3 * m - n) * km * kn
            terms[key] = terms.get(key, 0) + c
    half = {}
    for k, c in terms.items():
        q, r = divmod(c, 2)
        if r:
            raise ValidationError("theta sum for the index-2 generator must be even")
        if q:
            half[k] = q
    sum_series = Series(DEN2, half, pad, RING_Z, _clean=True)
    return (sum_series * eta_power(-4, pad)).truncate(qprec)


def _phi_threehalf_series(qprec):
    num = theta_jacobi(qprec + 6, y_scale=2)
    den = theta_jacobi(qprec + 6)
    return num.exact_div(den).truncate(qprec)


def _phi04_series(qprec):
    num = theta_jacobi(qprec + 6, y_scale=3)
    den = theta_jacobi(qprec + 6)
    return num.exact_div(den).truncate(qprec)


def _xi06_series(qprec):
    pad = qprec + 48
    theta12 = theta_jacobi(pad) ** 12
    return theta12.exact_div(eta_power(12, pad + 40)).truncate(qprec)


@lru_cache(maxsize=None)
def phi_threehalf(qprec):
    """The index 3/2 weight 0 generator (odd theta quotient)."""
    return JacobiForm(_phi_threehalf_series(qprec), 0, 3, None)


@lru_cache(maxsize=None)
def phi_weak_weight_minus1(qprec):
    """The index 1/2 weight -1 form theta(tau,z)/eta(tau)**3."""
    series = theta_jacobi(qprec + 6).exact_div(eta_power(3, qprec + 6))
    return JacobiForm(series.truncate(qprec), -2, 1, None)


@lru_cache(maxsize=None)
def xi06(qprec):
    """The weight-0 index-6 form theta**12/eta**12 generating the ideal of
    forms that vanish at the centers of torsion specialization."""
    poly = (
        -(GeneratorPolynomial.generator(1) ** 2 * GeneratorPolynomial.generator(4))
        + 9
        * GeneratorPolynomial.generator(1)
        * GeneratorPolynomial.generator(2)
        * GeneratorPolynomial.generator(3)
        - 8 * GeneratorPolynomial.generator(2) ** 3
        - 27 * GeneratorPolynomial.generator(3) ** 2
    )
    return JacobiForm(_xi06_series(qprec), 0, 12, poly)


@lru_cache(maxsize=None)
def generator(m, qprec):
    """The canonical weight-0 generator of index m in {1,2,3,4,6,8,12}."""
    if m == 1:
        return JacobiForm(
            _phi01_series(qprec), 0, 2, GeneratorPolynomial.generator(1)
        )
    if m == 2:
        return JacobiForm(
            _phi02_series(qprec), 0, 4, GeneratorPolynomial.generator(2)
        )
    if m == 3:
        form = phi_threehalf(qprec)
        return JacobiForm(
            (form * form).series, 0, 6, GeneratorPolynomial.generator(3)
        )
    if m == 4:
        return JacobiForm(
            _phi04_series(qprec), 0, 8, GeneratorPolynomial.generator(4)
        )
    if m == 6:
        p2, p3, p4 = (generator(i, qprec + 6) for i in (2, 3, 4))
        return (p2 * p4 - p3 * p3).truncate(qprec)
    if m == 8:
        p2, p4 = generator(2, qprec + 6), generator(4, qprec + 6)
        p6 = generator(6, qprec + 6)
        return (p2 * p6 - p4 * p4).truncate(qprec)
    if m == 12:
        p4 = generator(4, qprec + 6)
        p6 = generator(6, qprec + 6)
        p8 = generator(8, qprec + 6)
        return (p4 * p8 - p6 * p6 * 2).truncate(qprec)
    raise ValidationError(f"no canonical generator of index {m}")


# ---- Fourier-row helpers --------------------------------------------------


def q0_row_vector(form):
    """The q**0 row as a dense list over y**index .. y**(-index) (1/4 units)."""
    row = form.q_row(0)
    top = form.index2 * 2  # index in 1/4 units
    step = 4 if form.index2 % 2 == 0 else 4
    exps = list(range(top, -top - 1, -step))
    return [row.get(e, 0) for e in exps], exps


# ---- the canonical basis (weight 0, integral index) ----------------------


def _psi_tilde(m, qprec):
    return basis_psi(m, 1, qprec) * gcd(12, m)


def _psi1_raw(m, qprec):
    if m in (1, 2, 3, 4, 6, 8, 12):
        return generator(m, qprec)
    pad = qprec + 6
    t2 = _psi_tilde(m - 2, pad)
    t3 = _psi_tilde(m - 3, pad)
    t4 = _psi_tilde(m - 4, pad)
    p2 = generator(2, pad)
    p3 = generator(3, pad)
    p4 = generator(4, pad)
    variant_i = t4 * p4 + t2 * p2 - 2 * (t3 * p3)
    d = gcd(12, m)
    if d == 1:
        return variant_i.truncate(qprec)
    if d == 2:
        return variant_i.scale_div(2).truncate(qprec)
    if d in (3, 6):
        t6 = _psi_tilde(m - 6, pad)
        p6 = generator(6, pad)
        variant_iii = (2 * (t3 * p3) + t6 * p6).scale_div(3) - t4 * p4
        if d == 3:
            return variant_iii.truncate(qprec)
        return variant_iii.scale_div(2).truncate(qprec)
    if d == 4:
        t12 = _psi_tilde(m - 12, pad)
        t8 = _psi_tilde(m - 8, pad)
        p12 = generator(12, pad)
        p8 = generator(8, pad)
        return (t12 * p12 + t4 * p4 - t8 * p8).scale_div(4).truncate(qprec)
    # d == 12
    t6 = _psi_tilde(m - 6, pad)
    t12 = _psi_tilde(m - 12, pad)
    p6 = generator(6, pad)
    p12 = generator(12, pad)
    combo = 8 * (t3 * p3) - 6 * (t4 * p4) - 2 * (t6 * p6) + t12 * p12
    return combo.scale_div(12).truncate(qprec)


def psi2_variant(m, qprec, variant="B"):
    """The two index-m rank-2 elements of the basis at m in {2, 3, 4}.

    Variant "A" uses the subtraction constants (20, 15, 12); variant "B"
    (the default used by the canonical basis) uses (24, 18, 16), which pins
    the q**0 row to y**2 - 4y + 6 - 4/y + 1/y**2.
    """
    if m not in (2, 3, 4):
        raise ValidationError("closed psi2 variants exist for index 2, 3, 4 only")
    consts = {"A": {2: 20, 3: 15, 4: 12}, "B": {2: 24, 3: 18, 4: 16}}
    if variant not in consts:
        raise ValidationError("variant must be 'A' or 'B'")
    c = consts[variant][m]
    pad = qprec + 6
    p1 = generator(1, pad)
    other = generator(m - 1, pad) if m > 2 else p1
    return (p1 * other - c * generator(m, pad)).truncate(qprec)


def _psi2_raw(m, qprec):
    if m in (2, 3, 4):
        return psi2_variant(m, qprec, "B")
    pad = qprec + 6
    t3 = _psi_tilde(m - 3, pad)
    t4 = _psi_tilde(m - 4, pad)
    tm = _psi_tilde(m, pad)
    p3 = generator(3, pad)
    p4 = generator(4, pad)
    return (t3 * p3 - t4 * p4 - tm).truncate(qprec)


def _psi_raw(m, n, qprec):
    if n < 1 or n > m:
        raise ValidationError(f"basis label n={n} out of range for index {m}")
    if n == 1:
        return _psi1_raw(m, qprec)
    if n == 2:
        return _psi2_raw(m, qprec)
    if n == m:
        return generator(1, qprec + 6) ** m
    if n == m - 1:
        p1 = generator(1, qprec + 6)
        return (p1 ** (m - 2)) * generator(2, qprec + 6)
    return (generator(3, qprec + 6) * basis_psi(m - 3, n - 1, qprec + 6)).truncate(
        qprec + 6
    )


@lru_cache(maxsize=None)
def basis_psi(m, n, qprec):
    """Element n of the canonical basis of weight-0 index-m weak forms.

    Construction follows the recursive ladder over the generators; elements
    with n >= 3 are then put in a Hermite-style canonical shape: monic at
    y**n, zero q**0 coefficients at y**j for 2 <= j < n, and the y**1
    coefficient reduced modulo the leading coefficient of element 1.
    """
    if m < 1:
        raise ValidationError("basis index must be >= 1")
    raw = _psi_raw(m, n, qprec)
    if n < 3:
        return raw.truncate(qprec)
    row = raw.q_row(0)
    if row.get(4 * n, 0) != 1:
        raise ValidationError(f"raw basis element ({m},{n}) is not monic")
    current = raw
    for j in range(n - 1, 0, -1):
        coeff = current.q_row(0).get(4 * j, 0)
        lower = basis_psi(m, j, qprec if j >= 3 else current.series.qprec)
        lower = lower.truncate(current.series.qprec)
        if j == 1:
            pivot = m // gcd(12, m)
            k = coeff // pivot
            if k:
                current = current - k * lower
        elif coeff:
            current = current - coeff * lower
    return current.truncate(qprec)


# ---- Hecke operators -------------------------------------------------------


def hecke_tminus(form, m):
    """The index-raising Hecke operator T_-(m) on weight-0 integral-index
    forms: f|T_-(m) has coefficients sum over a | (n, l, m) of
    (m/a) * f(n*m/a**2, l/a)."""
    if form.weight2 != 0 or form.index2 % 2:
        raise ValidationError("T_-(m) needs a weight-0 form of integral index")
    if m < 1:
        raise ValidationError("Hecke parameter must be positive")
    qin = form.series.qprec
    orders_in = form.qprec_orders()
    orders_out = (orders_in - 1) // m + 1
    divisors = [a for a in range(1, m + 1) if m % a == 0]
    out = {}
    for (nq, ly), c in form.series.terms.items():
        n = nq // 24
        l = ly // 4
        for a in divisors:
            na = n * a * a
            if na % m:
                continue
            big_n = na // m
            if big_n >= orders_out:
                continue
            if big_n % a:
                continue
            key = (24 * big_n, 4 * l * a)
            new = out.get(key, 0) + (m // a) * c
            if new == 0:
                out.pop(key, None)
            else:
                out[key] = new
    series = Series(DEN2, out, 24 * orders_out, RING_Z, _clean=True)
    return JacobiForm(series, 0, form.index2 * m, None)


def norm_table(form):
    """Map norm 4*t*n - l**2 -> coefficient, for a norm-determined form.

    Valid for weight-0 forms of prime (or 1) index, where the coefficient
    depends only on the norm.  Consistency across representatives is
    enforced.
    """
    t2 = form.index2
    table = {}
    for (nq, ly), c in form.series.terms.items():
        n = nq // 24
        norm = 2 * t2 * n - (ly // 4) ** 2  # = 4*t*n - l**2 for integral index
        if norm in table and table[norm] != c:
            raise ValidationError(
                f"form is not norm-determined: norm {norm} has two values"
            )
        table[norm] = c
    return table


def _norm_rep_order(norm, t):
    """Smallest q-order holding a representative of the given norm at index t,
    or None when the norm is not represented."""
    for l in range(0, 2 * t):
        if (norm + l * l) % (4 * t) == 0:
            n = (norm + l * l) // (4 * t)
            if n >= 0:
                return n
    return None


def hecke_t0_2(form):
    """The index-preserving operator T_0(2) on index-2 weight-0 forms,
    acting on norm-indexed coefficients by
    g2(N) = 8 g(4N) + 2 (-N/2) g(N) + g(N/4)."""
    if form.weight2 != 0 or form.index2 != 4:
        raise ValidationError("T_0(2) is implemented for weight 0, index 2")
    table = norm_table(form)
    orders_in = form.qprec_orders()

    def g(x):
        if x != int(x):
            return 0
        x = int(x)
        rep = _norm_rep_order(x, 2)
        if rep is None:
            return 0
        if rep >= orders_in:
            raise PrecisionError(f"need q-order {rep} for norm {x}")
        return table.get(x, 0)

    orders_out = 0
    while True:
        worst = _norm_rep_order(4 * (8 * orders_out), 2)
        if worst is None or worst >= orders_in:
            break
        orders_out += 1
    if orders_out == 0:
        raise PrecisionError("input precision too small for T_0(2)")
    out = {}
    for n in range(orders_out):
        for l in range(-isqrt(8 * n + 4) - 2, isqrt(8 * n + 4) + 3):
            norm = 8 * n - l * l
            if norm < -4:
                continue
            val = (
                8 * g(4 * norm)
                + 2 * kronecker(-norm, 2) * g(norm)
                + g(Fraction(norm, 4))
            )
            if val:
                out[(24 * n, 4 * l)] = val
    series = Series(DEN2, out, 24 * orders_out, RING_Z, _clean=True)
    return JacobiForm(series, 0, 4, None)


# ---- ideal division and decomposition -------------------------------------


def divide_by_xi06(form):
    """Exact division by theta**12/eta**12 (weight 0, index 6)."""
    xi = xi06(form.series.qprec + 48 if form.series.qprec else 240)
    quotient = form.series.exact_div(xi.series)
    return JacobiForm(quotient, form.weight2, form.index2 - 12, None)


class Decomposition:
    """Result of writing a weak form over the canonical basis and the
    xi06-ideal: form = sum_k xi06**k * sum_n coords[k][n] * psi_{m-6k}^{(n)}."""

    __slots__ = ("index2", "levels", "poly")

    def __init__(self, index2, levels, poly):
        self.index2 = index2
        self.levels = levels
        self.poly = poly

    def __repr__(self):
        return f"Decomposition(index={self.index2 // 2}, levels={self.levels})"


def _solve_q0(form, qprec):
    """Coordinates of form's q**0 row over the canonical basis at its index."""
    m = form.index2 // 2
    row = dict(form.q_row(0))
    coords = {}
    for n in range(m, 0, -1):
        psi = basis_psi(m, n, qprec)
        prow = psi.q_row(0)
        lead = prow[4 * n]
        c = row.get(4 * n, 0)
        if c % lead:
            raise ValidationError(
                f"q**0 coefficient {c} at y**{n} is not divisible by the basis "
                f"pivot {lead} (index {m})"
            )
        x = c // lead
        coords[n] = x
        if x:
            for l4, pc in prow.items():
                new = row.get(l4, 0) - x * pc
                if new:
                    row[l4] = new
                else:
                    row.pop(l4, None)
    if any(v for k, v in row.items() if k >= 0):
        raise ValidationError(
            f"q**0 row is not in the span of the canonical basis; residue {row}"
        )
    return coords


def decompose(form):
    """Write a weight-0 integral-index weak form over the canonical basis
    and powers of xi06, returning coordinates and a generator polynomial."""
    if form.weight2 != 0 or form.index2 % 2:
        raise ValidationError("decompose needs weight 0 and integral index")
    m = form.index2 // 2
    min_prec = 24 * (m // 6 + 2)
    if form.series.qprec is not None and form.series.qprec < min_prec:
        raise PrecisionError(
            f"decompose at index {m} needs q-precision >= {min_prec} "
            f"(in 1/24 units), got {form.series.qprec}"
        )
    qprec = form.series.qprec
    levels = []
    poly = GeneratorPolynomial()
    current = form
    xi_poly = xi06(48).poly
    level = 0
    while True:
        mm = current.index2 // 2
        if mm == 0:
            c = current.series.coeff((0, 0))
            if not current.series.same_terms(
                Series.const(c, DEN2, current.series.qprec)
            ):
                raise ValidationError("index-0 residue is not constant")
            levels.append({0: c} if c else {})
            poly = poly + (xi_poly ** level) * c
            break
        coords = _solve_q0(current, current.series.qprec)
        levels.append({n: x for n, x in coords.items() if x})
        reduction = current
        for n, x in coords.items():
            if x:
                psi = basis_psi(mm, n, current.series.qprec).truncate(
                    current.series.qprec
                )
                poly = poly + (xi_poly ** level) * (psi.poly * x)
                reduction = reduction - x * psi
        if reduction.series.is_zero():
            break
        if mm < 6:
            raise ValidationError(
                "nonzero remainder of index < 6 after removing the q**0 row; "
                "the input is not a weak Jacobi form over Z"
            )
        current = divide_by_xi06(reduction)
        level += 1
    return Decomposition(form.index2, levels, poly)


def halfint_factor(form):
    """Split a half-integral-index form as (index 3/2 generator) * rest."""
    if form.index2 % 2 == 0:
        raise ValidationError("halfint_factor expects half-integral index")
    base = phi_threehalf(form.series.qprec + 6)
    quotient = form.series.exact_div(base.series)
    return JacobiForm(
        quotient.truncate(form.series.qprec),
        form.weight2,
        form.index2 - 3,
        None,
    )


# ---- analytic-style invariants --------------------------------------------


def taylor_coeffs(form, count):
    """Rational Taylor coefficients of exp(2*index*G2*w**2) * phi along w,
    where w = 2*pi*i*z.  The w**2 coefficient vanishes identically for
    weight-0 forms (it would be a holomorphic weight-2 level-1 form)."""
    if form.index2 % 2:
        raise ValidationError("taylor_coeffs expects integral index")
    qprec = form.series.qprec
    g2 = g2_series(qprec)
    m = form.index2 // 2
    # exp(2*m*G2*w**2) truncated at w**count
    exp_layers = [Series.const(1, DEN2, qprec, RING_Q)]
    power = Series.const(1, DEN2, qprec, RING_Q)
    factor = g2.scale(2 * m)
    k = 1
    while 2 * k < count:
        power = power * factor
        exp_layers.append(power.scale(Fraction(1, _factorial(k))))
        k += 1
    phi_layers = []
    for j in range(count):
        terms = {}
        for (nq, ly), c in form.series.terms.items():
            l = Fraction(ly, 4)
            key = (nq, 0)
            contrib = Fraction(c) * l ** j / _factorial(j)
            if contrib:
                terms[key] = terms.get(key, 0) + contrib
        phi_layers.append(Series(DEN2, terms, qprec, RING_Q))
    out = []
    for j in range(count):
        total = Series.zero(DEN2, qprec, RING_Q)
        for k, layer in enumerate(exp_layers):
            if 2 * k > j:
                break
            total = total + layer * phi_layers[j - 2 * k]
        out.append(total)
    return out


def _factorial(n):
    result = 1
    for i in range(2, n + 1):
        result *= i
    return result


def linear_residuals(form):
    """The two linear residuals that vanish on weight-0 weak forms:
    r1 = m*sum f(0,l) - 6*sum l**2 f(0,l),
    r2 = 24*m*sum f(0,l) - sum (m - 6*n**2) f(1,n)."""
    m = Fraction(form.index2, 2)
    row0 = form.q_row(0)
    row1 = form.q_row(1)
    s0 = sum(row0.values())
    s2 = sum(Fraction(l4, 4) ** 2 * c for l4, c in row0.items())
    r1 = m * s0 - 6 * s2
    r2 = 24 * m * s0 - sum(
        (m - 6 * Fraction(l4, 4) ** 2) * c for l4, c in row1.items()
    )
    return r1, r2


# ---- specializations -------------------------------------------------------


def specialize_torsion(form, order):
    """Evaluate at z = 1/order (y -> a primitive order-th root of unity),
    returning an integer q-series.  Needs an integral index."""
    if form.index2 % 2:
        raise ValidationError("torsion specialization needs integral index")
    if order < 1:
        raise ValidationError("torsion order must be positive")
    by_q = {}
    for (nq, ly), c in form.series.terms.items():
        weights = by_q.setdefault(nq, {})
        r = (ly // 4) % order
        weights[r] = weights.get(r, 0) + c
    terms = {}
    for nq, weights in by_q.items():
        value = root_of_unity_sum_as_int(weights, order)
        if value:
            terms[(nq, 0)] = value
    return Series(DEN2, terms, form.series.qprec, RING_Z, _clean=True)


def specialize_center(form):
    """The hat series q**(m/4) * phi(tau, -(tau+1)/2), via y -> -q**(-1/2).

    Exponents land in (1/4)Z.  Unknown coefficients beyond the input
    precision can move down, so the output precision is reduced by the
    usual norm bound |l| <= sqrt(4nm + m**2) on weak-form support.
    """
    if form.index2 % 2:
        raise ValidationError("center specialization needs integral index")
    m = form.index2 // 2
    qin = form.series.qprec
    orders = form.qprec_orders()
    if orders is None:
        raise ValidationError("center specialization needs finite precision")
    # First unknown order is n = orders; bound the landing exponent.
    n0 = orders
    lmax = isqrt(4 * n0 * m + m * m) + 1
    qout = 24 * n0 - 12 * lmax + 6 * m
    terms = {}
    for (nq, ly), c in form.series.terms.items():
        l = ly // 4
        new_nq = nq - 3 * ly + 6 * m
        if new_nq >= qout:
            continue
        sign = -1 if l % 2 else 1
        key = (new_nq, 0)
        new = terms.get(key, 0) + sign * c
        if new == 0:
            terms.pop(key, None)
        else:
            terms[key] = new
    return Series(DEN2, terms, qout, RING_Z, _clean=True)
