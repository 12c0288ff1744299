"""Siegel modular forms from Jacobi forms: Borcherds-style exponential
products, second-quantized elliptic genera, the Hodge-anomaly factor,
explicit arithmetic lift sums, genus-2 theta constants, and the product
identities connecting them.

Triple series live on the exponent lattice (q**(1/24), y**(1/4),
s**(1/24)).  Several objects here (inverses of cusp forms, anomaly
factors with negative theta powers) have unbounded y-support at a fixed
(q, s)-order, so the expansion routines accept an explicit ``ywindow``:
terms with |y-exponent| beyond the window are dropped, and consumers
compare results only on an interior window where the truncation cannot
leak.
"""

from fractions import Fraction
from math import gcd, isqrt

from .errors import IdentityError, PrecisionError, ValidationError
from .genus import elliptic_genus
from .jacobi import JacobiForm, generator, psi2_variant
from .modular import eta_power, kronecker
from .series import DEN2, DEN3, Series, product_expand, series_to_dict


class SiegelSeries:
    """A truncated Fourier expansion of a (meromorphic) Siegel modular
    form for a paramodular group, with bookkeeping metadata."""

    __slots__ = ("series", "weight2", "character_order", "index_t")

    def __init__(self, series, weight2, character_order, index_t):
        if series.den != DEN3:
            raise ValidationError("Siegel expansions use three-variable series")
        self.series = series
        self.weight2 = weight2
        self.character_order = character_order
        self.index_t = index_t

    @property
    def weight(self):
        return Fraction(self.weight2, 2)

    def coeff(self, key):
        return self.series.coeff(key)

    def __repr__(self):
        return (
            f"SiegelSeries(weight={self.weight}, index_t={self.index_t}, "
            f"character_order={self.character_order}, "
            f"qprec={self.series.qprec})"
        )

    def __mul__(self, other):
        if not isinstance(other, SiegelSeries):
            return NotImplemented
        order = self.character_order * other.character_order
        order //= gcd(self.character_order, other.character_order)
        index_t = self.index_t if self.index_t == other.index_t else None
        return SiegelSeries(
            self.series * other.series,
            self.weight2 + other.weight2,
            order,
            index_t,
        )

    def to_dict(self):
        data = series_to_dict(self.series)
        data["weight2"] = self.weight2
        data["character_order"] = self.character_order
        data["index_t"] = self.index_t
        return data


def siegel_scale(ss, yfactor, sfactor):
    """The substitution (tau, z, omega) -> (tau, yfactor*z, sfactor*omega)."""
    matrix = [[1, 0, 0], [0, yfactor, 0], [0, 0, sfactor]]
    series = ss.series.substitute(matrix, ss.series.qprec)
    index_t = None if ss.index_t is None else ss.index_t * sfactor
    return SiegelSeries(series, ss.weight2, ss.character_order, index_t)


def siegel_omega_half_shift(ss):
    """The substitution omega -> omega + 1/2, which multiplies the term
    s**(ms/24) by i**(ms/12); the result lives over the Gaussian integers."""
    series = ss.series.promote("Zi")
    identity = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    from .rings import GaussianInt

    powers = (
        GaussianInt(1, 0),
        GaussianInt(0, 1),
        GaussianInt(-1, 0),
        GaussianInt(0, -1),
    )

    def twist(key):
        ms = key[2]
        if ms % 12 != 0:
            raise ValidationError("half-period shift needs ms divisible by 12")
        return powers[(ms // 12) % 4]

    return SiegelSeries(
        series.substitute(identity, series.qprec, twist=twist),
        ss.weight2,
        ss.character_order,
        ss.index_t,
    )


# ---- windowed unit inversion --------------------------------------------


def _clip(series, ywindow, sprec):
    if ywindow is not None:
        series = series.clip_y(ywindow)
    if sprec is not None and series.den == DEN3:
        series = series.truncate_s(sprec)
    return series


def clipped_inverse(unit, qprec, sprec=None, ywindow=None):
    """Invert a series with constant term 1, truncating to the supplied
    q-, s- and y-windows.  Needed when the exact inverse has unbounded
    y-support (for example 1/(1 - y + ...))."""
    one_key = (0,) * len(unit.den)
    if unit.coeff(one_key) != 1:
        raise ValidationError("clipped_inverse needs constant term 1")
    w = _clip((Series.const(1, unit.den, qprec, unit.ring) - unit), ywindow, sprec)
    if not w.terms:
        return Series.const(1, unit.den, qprec, unit.ring)
    pure_y = any(
        k[0] == 0 and (len(k) < 3 or k[2] == 0) for k in w.terms
    )
    if pure_y and ywindow is None:
        raise PrecisionError(
            "inverse has unbounded y-support; supply a y-window"
        )
    inv = Series.const(1, unit.den, qprec, unit.ring)
    for _ in range(10000):
        nxt = _clip(Series.const(1, unit.den, qprec, unit.ring) + w * inv, ywindow, sprec)
        if nxt.terms == inv.terms:
            return nxt
        inv = nxt
    raise PrecisionError("clipped inversion did not stabilize")


def power_with_window(series, exponent, qprec, sprec=None, ywindow=None):
    """series**exponent with window truncation; negative exponents factor
    out the minimal monomial (whose coefficient must be a unit)."""
    if exponent >= 0:
        result = Series.const(1, series.den, qprec, series.ring)
        for _ in range(exponent):
            result = _clip(result * series, ywindow, sprec)
        return result
    # pivot on the y-maximal term of the lowest q-row, so the expansion of
    # the inverse grows in the -y direction, matching the (1 - y**-1)-type
    # factors the exponential lift itself expands
    m0 = min(series.terms, key=lambda k: (k[0],) + k[2:] + (-k[1],))
    c0 = series.terms[m0]
    if c0 not in (1, -1):
        raise ValidationError("negative powers need a unit leading coefficient")
    unit = series.shift(tuple(-v for v in m0)).scale(c0).with_qprec(qprec)
    inv_unit = clipped_inverse(unit, qprec, sprec=sprec, ywindow=ywindow)
    result = Series.const(1, series.den, qprec, series.ring)
    for _ in range(-exponent):
        result = _clip(result * inv_unit, ywindow, sprec)
    sign = -1 if (c0 == -1 and exponent % 2) else 1
    shift_key = tuple(v * exponent for v in m0)
    return _clip(result.shift(shift_key).with_qprec(qprec).scale(sign), ywindow, sprec)


# ---- the exponential lift ------------------------------------------------


def abc_exponents(form):
    """The exact leading exponents (A, B, C) of the exponential lift,
    read off the q**0 row of a weight-0 form."""
    a = Fraction(0)
    b = Fraction(0)
    c = Fraction(0)
    for (nq, ly), coeff in form.series.terms.items():
        if nq != 0:
            continue
        l = Fraction(ly, 4)
        a += Fraction(coeff, 24)
        if l > 0:
            b += Fraction(coeff, 1) * l / 2
        c += Fraction(coeff, 1) * l * l / 4
    return a, b, c


def _prefactor_key(form):
    a, b, c = abc_exponents(form)
    nq, ly, ms = 24 * a, 4 * b, 24 * c
    for v in (nq, ly, ms):
        if v.denominator != 1:
            raise ValidationError(
                "lift prefactor exponents are not on the (1/24, 1/4, 1/24) lattice"
            )
    return int(nq), int(ly), int(ms)


def _coeff_rows(form, order):
    """The q**order row of a form, with a loud precision contract."""
    if form.series.qprec is not None and 24 * order >= form.series.qprec:
        raise PrecisionError(
            f"lift needs Fourier coefficients at q-order {order}; the input "
            f"form is only expanded below q-order {form.series.qprec / 24}"
        )
    return form.series.q_slice(24 * order)


def exp_lift(form, qprec, sprec, ywindow=None):
    """The Borcherds exponential product of a weight-0 Jacobi form of
    integral index t:

        q^A y^B s^C  prod_{(n,l,m)>0} (1 - q^n y^l s^{t m})^{c(nm, l)}

    where (n,l,m)>0 means m>0 (n, l free), or m=0 and n>0, or n=m=0 and
    l<0.  qprec and sprec are exclusive bounds in (1/24) units.
    """
    if form.weight2 != 0:
        raise ValidationError("exponential lifts take weight-0 forms")
    if form.index2 % 2 != 0:
        raise ValidationError("exponential lifts take integral-index forms")
    t = form.index2 // 2
    if t <= 0:
        raise ValidationError("exponential lifts need positive index")
    pref = _prefactor_key(form)
    pq = qprec - pref[0]
    ps = sprec - pref[2]
    if pq <= 0 or ps <= 0:
        raise PrecisionError("requested precision does not reach the leading term")

    factors = []
    q0 = {k[1]: c for k, c in form.series.q_slice(0)}
    # n = m = 0, l < 0
    for ly, coeff in q0.items():
        if ly < 0:
            factors.append(((0, ly, 0), coeff))
    # m = 0, n > 0: exponent c(0, l)
    for n in range(1, (pq - 1) // 24 + 1):
        for ly, coeff in q0.items():
            factors.append(((24 * n, ly, 0), coeff))
    # m > 0, n >= 0: exponent c(n m, l)
    for m in range(1, (ps - 1) // (24 * t) + 1):
        for n in range(0, (pq - 1) // 24 + 1):
            if n > 0 and 24 * n >= pq:
                continue
            for key, coeff in _coeff_rows(form, n * m):
                factors.append(((24 * n, key[1], 24 * t * m), coeff))

    product = product_expand(factors, pq, sprec=ps, ybound=ywindow, den=DEN3)
    result = product.shift(pref)
    result = Series(
        DEN3,
        {k: c for k, c in result.terms.items() if k[2] < sprec},
        qprec,
        result.ring,
        _clean=True,
    )
    a24 = pref[0]
    weight2 = q0.get(0, 0)
    character_order = 24 // gcd(24, a24) if a24 else 1
    return SiegelSeries(result, weight2, character_order, t)


def lift_window_for(form, qmax, smax):
    """Precisions (qprec, sprec, input_qprec) so that exp_lift(form)
    covers qmax whole q-orders and smax whole s-orders past its leading
    term, and the input form is expanded far enough to serve every
    exponent lookup."""
    pref = _prefactor_key(form)
    t = form.index2 // 2
    qprec = 24 * qmax + 1 + max(pref[0], 0)
    sprec = 24 * smax + 1 + max(pref[2], 0)
    pq = qprec - pref[0]
    ps = sprec - pref[2]
    nmax = (pq - 1) // 24
    mmax = max((ps - 1) // (24 * t), 1)
    return qprec, sprec, 24 * (nmax * mmax + 1)


def exp_lift_homomorphic(pairs, qprec, sprec, ywindow=None):
    """exp_lift(sum a_i phi_i) computed as prod exp_lift(phi_i)**a_i,
    for checking the exponential homomorphism property."""
    result = None
    weight2 = 0
    index_t = None
    for form, exponent in pairs:
        lifted = exp_lift(form, qprec, sprec, ywindow=ywindow)
        piece = power_with_window(
            lifted.series, exponent, qprec, sprec=sprec, ywindow=ywindow
        )
        weight2 += lifted.weight2 * exponent
        index_t = lifted.index_t
        result = piece if result is None else _clip(result * piece, ywindow, sprec)
    return SiegelSeries(result, weight2, 0, index_t)


# ---- second-quantized elliptic genus --------------------------------------


def sqeg(form, qprec, pprec, ywindow=None):
    """The second-quantized elliptic genus

        prod_{m>=0, n>0, l} (1 - q^m y^l p^n)^{-f(mn, l)}

    as a triple series whose third variable is p (graded in 1/24 units
    on the s-slot).  No prefactor."""
    factors = []
    for n in range(1, (pprec - 1) // 24 + 1):
        for m in range(0, (qprec - 1) // 24 + 1):
            for key, coeff in _coeff_rows(form, m * n):
                factors.append(((24 * m, key[1], 24 * n), -coeff))
    return product_expand(factors, qprec, sprec=pprec, ybound=ywindow, den=DEN3)


def symmetric_product_genus(form, n, qprec):
    """The p**n coefficient of the second-quantized genus: the orbifold
    elliptic genus of the n-th symmetric product."""
    if n == 0:
        return Series.const(1, DEN2, qprec)
    full = sqeg(form, qprec, 24 * n + 1)
    return full.s_slice(24 * n)


# ---- the Hodge anomaly -----------------------------------------------------


def _theta_scaled(qprec, ly_step):
    """The odd theta function with y replaced by y**(ly_step/4):
    sum_m (-4/m) q**(3 m^2 / 24) y**(m * ly_step / 4)."""
    terms = {}
    bound = isqrt(max(qprec, 0) // 3) + 2
    for m in range(-bound, bound + 1):
        nq = 3 * m * m
        if nq >= qprec:
            continue
        c = kronecker(-4, m)
        if c:
            terms[(nq, m * ly_step, 0)] = c
    return Series(DEN3, terms, qprec)


def hodge_anomaly(inv, qprec, sprec, ywindow=None):
    """The anomaly factor H(M; Z) of the factorization theorem: a product
    of an eta power, theta powers at multiple z, and an s-monomial,
    depending only on the signed Hodge invariants.

        d = 2 d0:     eta^{(e - 3 chi'_{d0})/2}
                      prod_{p=1..d0} theta(tau, p z)^{-chi'_{d0-p}}
                      s^{-(1/2) sum p^2 chi'_{d0-p}}
        d = 2 d0 + 1: eta^{e/2}
                      prod_{p=1..d0+1} theta(tau, (2p-1) z / 2)^{-chi'_{d0-p+1}}
                      s^{-(1/8) sum (2p-1)^2 chi'_{d0-p+1}}

    with chi'_p = (-1)^p chi_p.  (The eta exponent signs here are fixed
    by requiring that H times the second-quantized genus reproduce the
    exponential lift of minus the elliptic genus; see the factorization
    check.)"""
    d = inv.d
    chi = inv.chi
    e = inv.euler

    def chip(p):
        return (-1) ** p * chi[p]

    pieces = []  # (series or None, exponent) with None meaning eta
    ms_total = 0
    if d % 2 == 0:
        d0 = d // 2
        num = e - 3 * chip(d0)
        if num % 2 != 0:
            raise ValidationError("eta exponent (e - 3 chi'_{d0})/2 is not integral")
        eta_exp = num // 2
        weight2 = -chip(d0)
        for p in range(1, d0 + 1):
            ep = -chip(d0 - p)
            pieces.append((2 * p, ep))
            ms_total += 12 * p * p * ep
    else:
        d0 = (d - 1) // 2
        if e % 2 != 0:
            raise ValidationError("odd-dimensional Euler numbers must be even")
        eta_exp = e // 2
        weight2 = 0
        for p in range(1, d0 + 2):
            ep = -chip(d0 - p + 1)
            pieces.append((2 * p - 1, ep))
            ms_total += 3 * (2 * p - 1) ** 2 * ep

    # internal slack for the negative q-prefactors of eta/theta powers
    slack = abs(eta_exp) + sum(3 * abs(ep) for _, ep in pieces) + 24
    qint = qprec + slack
    acc = eta_power(eta_exp, qint).lift_to_three(0)
    for ly_step, ep in pieces:
        if ep == 0:
            continue
        theta = _theta_scaled(qint, ly_step)
        acc = _clip(
            acc * power_with_window(theta, ep, qint, sprec=None, ywindow=ywindow),
            ywindow,
            None,
        )
    acc = acc.shift((0, 0, ms_total)).truncate(qprec)
    character_order = 24 // gcd(24, e) if e else 1
    index_t = d // 2 if d % 2 == 0 else 2 * d
    return SiegelSeries(acc, weight2, character_order, index_t)


# ---- assembled Siegel forms for Calabi-Yau data ---------------------------


def genus_form(inv, qprec):
    return elliptic_genus(inv, qprec=qprec)


def e_form(inv, qprec, sprec, ywindow=None, genus_qprec=None):
    """The Siegel form attached to Calabi-Yau invariants: the exponential
    lift of minus the elliptic genus (with z doubled first when the
    dimension is odd)."""
    need = genus_qprec if genus_qprec is not None else _lift_input_qprec(qprec, sprec, inv_index(inv))
    chi = elliptic_genus(inv, qprec=need)
    form = -chi
    if inv.d % 2 == 1:
        form = form.double_z()
    return exp_lift(form, qprec, sprec, ywindow=ywindow)


def inv_index(inv):
    """Paramodular index of the lift attached to d-dimensional data."""
    return inv.d // 2 if inv.d % 2 == 0 else 2 * inv.d


def _lift_input_qprec(qprec, sprec, t):
    """q-precision (1/24 units) the input form needs so every exponent
    lookup c(n m, l) inside exp_lift stays below it."""
    nmax = (qprec + 47) // 24
    mmax = max((sprec + 24 * t - 1) // (24 * t), 1)
    return 24 * (nmax * mmax + 2)


def factorization_product(inv, qprec, sprec, ywindow=None):
    """Hodge anomaly times the second-quantized genus, with the p-grading
    rescaled to the paramodular s-lattice (p -> s^t)."""
    if inv.d % 2 != 0:
        raise ValidationError("the factorization product is assembled for even d")
    t = inv.d // 2
    anomaly = hodge_anomaly(inv, qprec, sprec, ywindow=ywindow)
    # offset the anomaly's (possibly negative) leading monomial so the
    # product still reaches the requested window
    nq_shift = min((k[0] for k in anomaly.series.terms), default=0)
    ms_shift = min((k[2] for k in anomaly.series.terms), default=0)
    qint = qprec - min(nq_shift, 0)
    sint = sprec - min(ms_shift, 0)
    pprec = (sint + t - 1) // t
    chi = elliptic_genus(inv, qprec=_lift_input_qprec(qint, sint, 1))
    psi = sqeg(chi, qint, pprec, ywindow=ywindow)
    psi = psi.substitute([[1, 0, 0], [0, 1, 0], [0, 0, t]], qint)
    series = _clip(anomaly.series * psi, ywindow, sprec)
    return SiegelSeries(series, anomaly.weight2, anomaly.character_order, t)


# ---- arithmetic (additive) lifts ------------------------------------------


def _divisor_char_sum(n, l, m, top):
    g = gcd(gcd(n, abs(l)), m)
    total = 0
    for a in range(1, g + 1):
        if g % a == 0:
            total += kronecker(top, a)
    return total


def arithmetic_lift(name, qprec, sprec):
    """Explicit Fourier sums for two cusp forms that also arise as
    exponential lifts:

      Delta2: sum over n, m = 1 mod 4, 2nm - l^2 = N^2 > 0 of
              N (-4/(N l)) sum_{a | (n,l,m)} (-4/a) q^{n/4} y^{l/2} s^{m/2}
      Delta1: sum over n, m = 1 mod 6, 4nm - 3l^2 = M^2 > 0 of
              (-4/l)(12/M) sum_{a | (n,l,m)} (-12/a) q^{n/6} y^{l/2} s^{m/2}

    The divisor character (-12/a) in Delta1 is forced by unfolding the
    sum from the Maass lift of eta * theta: the a-th term must equal
    (-4/(l/a)) (12/(M/a)), and multiplicativity of the Kronecker symbols
    turns that into (-4/l)(12/M)(-4/a)(12/a).  The first key where a
    weaker character choice would differ is n = l = m = 7.
    """
    terms = {}
    if name == "Delta2":
        nmax = (qprec - 1) // 6
        mmax = (sprec - 1) // 12
        for n in range(1, nmax + 1, 4):
            for m in range(1, mmax + 1, 4):
                lbound = isqrt(2 * n * m)
                for l in range(-lbound, lbound + 1):
                    nn = 2 * n * m - l * l
                    if nn <= 0:
                        continue
                    big_n = isqrt(nn)
                    if big_n * big_n != nn:
                        continue
                    c = (
                        big_n
                        * kronecker(-4, big_n * l)
                        * _divisor_char_sum(n, l, m, -4)
                    )
                    if c:
                        key = (6 * n, 2 * l, 12 * m)
                        terms[key] = terms.get(key, 0) + c
        meta = (4, 4, 2)
    elif name == "Delta1":
        nmax = (qprec - 1) // 4
        mmax = (sprec - 1) // 12
        for n in range(1, nmax + 1, 6):
            for m in range(1, mmax + 1, 6):
                lbound = isqrt((4 * n * m) // 3)
                for l in range(-lbound, lbound + 1):
                    mm = 4 * n * m - 3 * l * l
                    if mm <= 0:
                        continue
                    big_m = isqrt(mm)
                    if big_m * big_m != mm:
                        continue
                    c = (
                        kronecker(-4, l)
                        * kronecker(12, big_m)
                        * _divisor_char_sum(n, l, m, -12)
                    )
                    if c:
                        key = (4 * n, 2 * l, 12 * m)
                        terms[key] = terms.get(key, 0) + c
        meta = (2, 6, 3)
    else:
        raise ValidationError(f"unknown arithmetic lift {name!r}")
    terms = {k: c for k, c in terms.items() if c != 0}
    weight2, character_order, index_t = meta
    return SiegelSeries(
        Series(DEN3, terms, qprec, _clean=True), weight2, character_order, index_t
    )


def delta_half_theta(qprec, sprec):
    """The 'most odd' even genus-2 theta constant as an explicit sum:

        (1/2) sum_{n,m odd} (-4/n)(-4/m) q^{n^2/8} y^{nm/4} s^{m^2/8}

    folded over (n, m) -> (-n, -m)."""
    terms = {}
    nmax = isqrt(max(qprec - 1, 0) // 3)
    mmax = isqrt(max(sprec - 1, 0) // 3)
    for n in range(1, nmax + 1, 2):
        cn = kronecker(-4, n)
        for m in range(-mmax, mmax + 1):
            if m % 2 == 0:
                continue
            c = cn * kronecker(-4, m)
            key = (3 * n * n, n * m, 3 * m * m)
            terms[key] = terms.get(key, 0) + c
    terms = {k: c for k, c in terms.items() if c != 0}
    return SiegelSeries(Series(DEN3, terms, qprec, _clean=True), 1, 0, None)


def delta_half_substitution_scan(qprec=60, sprec=60, jmax=4, kmax=8):
    """Find (j, k) with exp_lift(phi_{0,4})(tau, z, omega) equal to the
    explicit theta sum at (tau, j z, k omega)."""
    form = generator(4, _lift_input_qprec(qprec, sprec, 4))
    lifted = exp_lift(form, qprec, sprec)
    theta = delta_half_theta(qprec, sprec * kmax)
    matches = []
    for j in range(1, jmax + 1):
        for k in range(1, kmax + 1):
            sub = theta.series.substitute(
                [[1, 0, 0], [0, j, 0], [0, 0, k]], qprec
            )
            sub = Series(
                DEN3,
                {key: c for key, c in sub.terms.items() if key[2] < sprec},
                qprec,
                sub.ring,
                _clean=True,
            )
            if sub.terms == lifted.series.terms:
                matches.append((j, k))
    return matches


# ---- genus-2 theta constants ----------------------------------------------


def even_characteristics():
    chars = []
    for a1 in (0, 1):
        for a2 in (0, 1):
            for b1 in (0, 1):
                for b2 in (0, 1):
                    if (a1 * b1 + a2 * b2) % 2 == 0:
                        chars.append(((a1, a2), (b1, b2)))
    return chars


def siegel_theta_constant(a, b, qprec, sprec):
    """The genus-2 theta constant with characteristic (a, b), a, b in
    {0,1}^2 with a.b even, as a triple series on the (1/8)-step lattice
    (stored keys: nq = 3 u^2, ly = u v, ms = 3 v^2 for u = 2 n1 + a1,
    v = 2 n2 + a2)."""
    a1, a2 = a
    b1, b2 = b
    if (a1 * b1 + a2 * b2) % 2 != 0:
        raise ValidationError("odd theta characteristic")
    sign0 = (-1) ** ((a1 * b1 + a2 * b2) // 2)
    terms = {}
    ubound = isqrt(max(qprec - 1, 0) // 3)
    vbound = isqrt(max(sprec - 1, 0) // 3)
    n1min = (-ubound - a1) // 2 - 1
    n1max = (ubound - a1) // 2 + 1
    n2min = (-vbound - a2) // 2 - 1
    n2max = (vbound - a2) // 2 + 1
    for n1 in range(n1min, n1max + 1):
        u = 2 * n1 + a1
        nq = 3 * u * u
        if nq >= qprec:
            continue
        for n2 in range(n2min, n2max + 1):
            v = 2 * n2 + a2
            ms = 3 * v * v
            if ms >= sprec:
                continue
            c = sign0 * (-1) ** ((n1 * b1 + n2 * b2) % 2)
            key = (nq, u * v, ms)
            new = terms.get(key, 0) + c
            if new:
                terms[key] = new
            else:
                terms.pop(key, None)
    return Series(DEN3, terms, qprec, _clean=True)


def theta_product_delta5_squared(qprec, sprec):
    """2^{-12} times the product of the squares of the ten even genus-2
    theta constants; equals the square of the first weight-5 cusp form."""
    acc = Series.const(1, DEN3, qprec)
    for a, b in even_characteristics():
        theta = siegel_theta_constant(a, b, qprec, sprec)
        acc = (acc * theta).truncate_s(sprec)
        acc = (acc * theta).truncate_s(sprec)
    terms = {}
    for key, coeff in acc.terms.items():
        quot, rem = divmod(coeff, 4096)
        if rem:
            raise IdentityError(
                f"theta-constant product coefficient {coeff} at {key} "
                "is not divisible by 2**12"
            )
        if quot:
            terms[key] = quot
    return SiegelSeries(Series(DEN3, terms, qprec, _clean=True), 20, 1, 1)


# ---- Humbert surface multiplicities ----------------------------------------


def _reduced_fourier(form, n, l):
    """f(n, l) for integer l, reduced by the index-t periodicity
    f(n, l) = f(n - (l^2 - l0^2)/(4t), l0) with l0 = l mod 2t in (-t, t]."""
    if form.index2 % 2 != 0:
        raise ValidationError("orbit reduction needs integral index")
    t = form.index2 // 2
    l0 = l % (2 * t)
    if l0 > t:
        l0 -= 2 * t
    n0 = n - (l * l - l0 * l0) // (4 * t)
    if n0 < 0:
        return 0
    if form.series.qprec is not None and 24 * n0 >= form.series.qprec:
        raise PrecisionError(
            f"Humbert sum needs the coefficient f({n0}, {l0}) beyond the "
            "available precision"
        )
    return form.fourier(n0, 4 * l0)


def humbert_multiplicity(form, a, b):
    """The multiplicity  m_{D,b} = -sum_{n>0} f(n^2 a, n b)  of the
    Humbert surface of discriminant D = b^2 - 4 t a in the divisor of the
    exponential lift of minus the form (f = Fourier coefficients of the
    form itself, e.g. the elliptic genus)."""
    if form.index2 % 2 != 0:
        raise ValidationError("Humbert data needs integral index")
    t = form.index2 // 2
    disc = b * b - 4 * t * a
    if disc <= 0:
        raise ValidationError("Humbert discriminant must be positive")
    if form.qprec_orders() is not None and form.qprec_orders() <= t // 4 + 1:
        raise PrecisionError(
            "form precision too small to certify the negative-norm support"
        )
    min_norm = 0
    for (nq, ly), coeff in form.series.terms.items():
        if coeff:
            norm = 4 * t * (nq // 24) - (ly // 4) ** 2
            min_norm = min(min_norm, norm)
    total = 0
    n = 1
    while -n * n * disc >= min_norm:
        total -= _reduced_fourier(form, n * n * a, n * b)
        n += 1
    return total


# ---- assembly identities at the Jacobi level --------------------------------


def assembly_check_d4(inv):
    """For fourfold data, minus the elliptic genus must decompose over
    the lift inputs of the two basic paramodular cusp forms:

        -chi(M4) = -chi0 * psi_A + chi1 * phi_{0,2}

    which, through the exponential homomorphism, is the statement that
    the attached Siegel form is Delta11^{-chi0} * Delta2^{chi1}."""
    if inv.d != 4:
        raise ValidationError("fourfold data expected")
    qp = 24 * 6
    chi = elliptic_genus(inv, qprec=qp)
    psi_a = psi2_variant(2, qp, variant="A")
    phi2 = generator(2, qp)
    rhs = psi_a.series.scale(-inv.chi[0]) + phi2.series.scale(inv.chi[1])
    return (-chi.series).same_terms(rhs, qp)


def quotient_reduction_check(qprec=240):
    """The ratio of the two index-6 lift inputs 3*phi3**2 - 2*phi2*phi4
    and 5*phi3**2 - 4*phi2*phi4 differs by twice the canonical index-6
    generator; under the exponential homomorphism this identifies the
    corresponding quotient of Siegel forms with exp_lift(2*phi_{0,6})."""
    pad = qprec + 12
    p2, p3, p4 = (generator(i, pad) for i in (2, 3, 4))
    sq3 = (p3 * p3).series
    prod24 = (p2 * p4).series
    lhs = sq3.scale(3) - prod24.scale(2)
    rhs = sq3.scale(5) - prod24.scale(4)
    diff = lhs - rhs
    return diff.same_terms(generator(6, pad).series.scale(2), qprec)


def assembly_check_d8(inv):
    """For eightfold data the decomposition over the four index-4 lift
    inputs carries alternating Hodge-invariant exponents:

        -chi(M8) = chi3 * phi_{0,4} - chi2 * phi_{0,1}(tau, 2z)
                   + chi1 * psi^{(3)} - chi0 * psi^{(4)}
    """
    from .jacobi import basis_psi

    if inv.d != 8:
        raise ValidationError("eightfold data expected")
    qp = 24 * 6
    chi = elliptic_genus(inv, qprec=qp)
    rhs = (
        generator(4, qp).series.scale(inv.chi[3])
        + generator(1, qp).double_z().series.scale(-inv.chi[2])
        + basis_psi(4, 3, qp).series.scale(inv.chi[1])
        + basis_psi(4, 4, qp).series.scale(-inv.chi[0])
    )
    return (-chi.series).same_terms(rhs, qp)


# ---- identity checks -------------------------------------------------------


def window_equal(s1, s2, qlimit, slimit, ybound=None):
    """Compare two triple series on all keys with nq <= qlimit,
    ms <= slimit, and (optionally) |ly| <= ybound."""
    if s1.ring != s2.ring:
        if s1.ring == "Z":
            s1 = s1.promote(s2.ring)
        elif s2.ring == "Z":
            s2 = s2.promote(s1.ring)

    def window(series):
        return {
            k: c
            for k, c in series.terms.items()
            if k[0] <= qlimit
            and k[2] <= slimit
            and (ybound is None or abs(k[1]) <= ybound)
        }

    return window(s1) == window(s2)


def delta11_identity_check(qprec=97, sprec=97):
    """Verify  Delta11 * Delta2^2 ==
    Delta5(Z) * Delta5(tau,2z,4omega) * Delta5(tau,z,omega+1/2),
    the half-period factor computed over the Gaussian integers."""
    input_prec = _lift_input_qprec(qprec, sprec, 2)
    psi = psi2_variant(2, input_prec, variant="A")
    d11 = exp_lift(psi, qprec, sprec)
    d2 = exp_lift(generator(2, input_prec), qprec, sprec)
    lhs = ((d11.series * d2.series).truncate_s(sprec) * d2.series).truncate_s(sprec)

    d5 = exp_lift(generator(1, _lift_input_qprec(qprec, sprec, 1)), qprec, sprec)
    d5_doubled = siegel_scale(d5, 2, 4)
    d5_shifted = siegel_omega_half_shift(d5)
    rhs = (d5.series.promote("Zi") * d5_doubled.series.promote("Zi")).truncate_s(sprec)
    rhs = (rhs * d5_shifted.series).truncate_s(sprec)

    qlimit = min(lhs.qprec, rhs.qprec) - 1
    lhs = lhs.promote("Zi")
    lw = {
        k: c for k, c in lhs.terms.items() if k[0] <= qlimit and k[2] < sprec
    }
    rw = {
        k: c for k, c in rhs.terms.items() if k[0] <= qlimit and k[2] < sprec
    }
    # the omega -> omega + 1/2 factor scales its s**(1/2) prefactor by
    # exp(pi i / 2), so the two sides agree up to one Gaussian unit
    from .rings import GaussianInt

    unit = None
    for u in (GaussianInt(1), GaussianInt(-1), GaussianInt(0, 1), GaussianInt(0, -1)):
        if rw == {k: c * u for k, c in lw.items()}:
            unit = u
            break
    return {
        "proportional": unit is not None,
        "unit": str(unit) if unit is not None else None,
        "qlimit": qlimit,
        "slimit": sprec - 1,
        "terms": len(lw),
    }
