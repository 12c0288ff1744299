"""Sparse exact Laurent series in two or three formal variables.

A Series stores terms as a dict mapping integer exponent keys to nonzero
coefficients.  Exponents are kept in fixed fractional units given by the
denominator tuple ``den``:

* two variables (q, y): den = (24, 4), a key (nq, ly) means q**(nq/24) * y**(ly/4);
* three variables (q, y, s): den = (24, 4, 24), key (nq, ly, ms).

``qprec`` is an exclusive bound on the stored q-exponent in 1/24 units:
all terms with nq < qprec are exact and complete; nothing is stored at or
above it.  qprec=None marks an exact (polynomial) object with no missing
tail.  Coefficient rings: "Z" (int), "Q" (Fraction), "Zi" (GaussianInt).
"""

from fractions import Fraction
from math import comb

from .errors import (
    InexactDivisionError,
    PrecisionError,
    RingMismatchError,
    ValidationError,
)
from .rings import (
    RING_Q,
    RING_Z,
    RING_ZI,
    GaussianInt,
    check_ring,
    ring_coerce,
    ring_divide,
)

DEN2 = (24, 4)
DEN3 = (24, 4, 24)


def _min_prec(*precs):
    vals = [p for p in precs if p is not None]
    return min(vals) if vals else None


class Series:
    """Immutable sparse Laurent series with exact coefficients."""

    __slots__ = ("den", "terms", "qprec", "ring")

    def __init__(self, den, terms, qprec, ring=RING_Z, _clean=False):
        if tuple(den) not in (DEN2, DEN3):
            raise ValidationError(f"unsupported denominator tuple {den}")
        self.den = tuple(den)
        self.qprec = qprec
        self.ring = ring
        if _clean:
            self.terms = terms
        else:
            nvars = len(self.den)
            clean = {}
            for key, coeff in terms.items():
                key = tuple(key)
                if len(key) != nvars:
                    raise ValidationError(f"key {key} has wrong arity for {den}")
                if qprec is not None and key[0] >= qprec:
                    continue
                if coeff == 0:
                    continue
                clean[key] = ring_coerce(coeff, ring)
            self.terms = clean

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, den=DEN2, qprec=None, ring=RING_Z):
        return cls(den, {}, qprec, ring, _clean=True)

    @classmethod
    def const(cls, value, den=DEN2, qprec=None, ring=RING_Z):
        key = (0,) * len(den)
        return cls(den, {key: value}, qprec, ring)

    @classmethod
    def monomial(cls, key, coeff=1, den=DEN2, qprec=None, ring=RING_Z):
        return cls(den, {tuple(key): coeff}, qprec, ring)

    # ---- basic queries ------------------------------------------------

    @property
    def nvars(self):
        return len(self.den)

    def is_zero(self):
        return not self.terms

    def min_nq(self):
        """Smallest stored q-exponent (0 for the empty series)."""
        if not self.terms:
            return 0
        return min(k[0] for k in self.terms)

    def min_key(self):
        if not self.terms:
            raise ValidationError("empty series has no minimal key")
        return min(self.terms)

    def coeff(self, key):
        return self.terms.get(tuple(key), 0)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def y_span(self):
        """(min, max) stored y-exponent in 1/den[1] units; (0, 0) if empty."""
        if not self.terms:
            return (0, 0)
        lys = [k[1] for k in self.terms]
        return (min(lys), max(lys))

    def q_slice(self, nq):
        """Terms at a fixed q-exponent, as a sorted list of (key, coeff)."""
        if self.qprec is not None and nq >= self.qprec:
            raise PrecisionError(f"q-exponent {nq} is beyond qprec {self.qprec}")
        return sorted((k, c) for k, c in self.terms.items() if k[0] == nq)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.den == other.den
            and self.ring == other.ring
            and self.qprec == other.qprec
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.den, self.qprec, self.ring, tuple(self.sorted_terms())))

    def same_terms(self, other, qprec=None):
        """Equality of terms up to the common (or given) q-precision."""
        if self.den != other.den:
            return False
        prec = _min_prec(self.qprec, other.qprec, qprec)
        return self.truncate(prec).terms == other.truncate(prec).terms

    def __repr__(self):
        n = len(self.terms)
        return f"Series(den={self.den}, terms={n}, qprec={self.qprec}, ring={self.ring})"

    # ---- ring and precision management --------------------------------

    def truncate(self, qprec):
        if qprec is None or (self.qprec is not None and qprec >= self.qprec):
            return self
        terms = {k: c for k, c in self.terms.items() if k[0] < qprec}
        return Series(self.den, terms, qprec, self.ring, _clean=True)

    def promote(self, ring):
        if ring == self.ring:
            return self
        terms = {k: ring_coerce(c, ring) for k, c in self.terms.items()}
        return Series(self.den, terms, self.qprec, ring, _clean=True)

    def demote_to_int(self):
        """Convert back to the integer ring, raising if any coefficient is not."""
        return self.promote(RING_Z)

    # ---- arithmetic ----------------------------------------------------

    def __neg__(self):
        terms = {k: -c for k, c in self.terms.items()}
        return Series(self.den, terms, self.qprec, self.ring, _clean=True)

    def __add__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        if self.den != other.den:
            raise ValidationError("cannot add series with different denominators")
        check_ring(self.ring, other.ring)
        qprec = _min_prec(self.qprec, other.qprec)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            new = terms.get(k, 0) + c
            if new == 0:
                terms.pop(k, None)
            else:
                terms[k] = new
        if qprec is not None:
            terms = {k: c for k, c in terms.items() if k[0] < qprec}
        return Series(self.den, terms, qprec, self.ring, _clean=True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar):
        scalar = ring_coerce(scalar, self.ring)
        if scalar == 0:
            return Series.zero(self.den, self.qprec, self.ring)
        terms = {k: scalar * c for k, c in self.terms.items()}
        return Series(self.den, terms, self.qprec, self.ring, _clean=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianInt)):
            return self.scale(other)
        if not isinstance(other, Series):
            return NotImplemented
        if self.den != other.den:
            raise ValidationError("cannot multiply series with different denominators")
        check_ring(self.ring, other.ring)
        qprec = _min_prec(
            None if self.qprec is None else self.qprec + other.min_nq(),
            None if other.qprec is None else other.qprec + self.min_nq(),
        )
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        nvars = len(self.den)
        bitems = sorted(b.items())
        for ka, ca in a.items():
            nqa = ka[0]
            for kb, cb in bitems:
                nq = nqa + kb[0]
                if qprec is not None and nq >= qprec:
                    # later kb only grow in nq ordering? not guaranteed: sorted by
                    # full key, but nq is the leading component, so once past the
                    # bound every later kb has kb[0] >= this kb[0].
                    if kb[0] + nqa >= qprec:
                        continue
                if nvars == 2:
                    key = (nq, ka[1] + kb[1])
                else:
                    key = (nq, ka[1] + kb[1], ka[2] + kb[2])
                new = out.get(key, 0) + ca * cb
                if new == 0:
                    out.pop(key, None)
                else:
                    out[key] = new
        if qprec is not None:
            out = {k: c for k, c in out.items() if k[0] < qprec}
        return Series(self.den, out, qprec, self.ring, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            raise ValidationError("series exponents must be integers")
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Series.const(1, self.den, None, self.ring)
        if exponent == 0:
            return result.truncate(self.qprec)
        base = self
        e = exponent
        while True:
            if e & 1:
                result = result * base
            e >>= 1
            if not e:
                break
            base = base * base
        return result

    def inverse(self):
        one = Series.const(1, self.den, None, self.ring)
        return one.exact_div(self)

    def exact_div(self, other, max_steps=2_000_000):
        """Exact long division driven by the lexicographically minimal key.

        Terminates when the quotient is an honest sparse series up to the
        derived q-precision; raises InexactDivisionError on a coefficient
        that does not divide, and guards against divergent quotients whose
        y-support grows without bound at a fixed q-level.
        """
        if not isinstance(other, Series) or self.den != other.den:
            raise ValidationError("division needs series over the same variables")
        check_ring(self.ring, other.ring)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero series")
        kb = other.min_key()
        cb = other.terms[kb]
        alpha = self.min_nq()
        beta = kb[0]
        qprec = _min_prec(
            None if self.qprec is None else self.qprec - beta,
            None if other.qprec is None else other.qprec - 2 * beta + alpha,
        )
        if self.is_zero():
            return Series.zero(self.den, qprec, self.ring)
        # y-span guard: an exact quotient cannot be much wider than the inputs.
        span_a = self.y_span()
        span_b = other.y_span()
        ylimit = 2 * (span_a[1] - span_a[0]) + 4 * (span_b[1] - span_b[0]) + 512
        rem_bound = None if qprec is None else qprec + beta
        rem = {
            k: c
            for k, c in self.terms.items()
            if rem_bound is None or k[0] < rem_bound
        }
        quot = {}
        b_items = sorted(other.terms.items())
        nvars = len(self.den)
        steps = 0
        while rem:
            k = min(rem)
            c = rem[k]
            qk = tuple(k[i] - kb[i] for i in range(nvars))
            if qprec is not None and qk[0] >= qprec:
                break
            if abs(qk[1]) > ylimit:
                raise InexactDivisionError(
                    "quotient y-support exceeds guard; division is not exact "
                    "or does not terminate"
                )
            qc = ring_divide(c, cb, self.ring)
            quot[qk] = qc
            for kbi, cbi in b_items:
                key = tuple(qk[i] + kbi[i] for i in range(nvars))
                if rem_bound is not None and key[0] >= rem_bound:
                    continue
                new = rem.get(key, 0) - qc * cbi
                if new == 0:
                    rem.pop(key, None)
                else:
                    rem[key] = new
            steps += 1
            if steps > max_steps:
                raise InexactDivisionError("division exceeded the step guard")
        if qprec is None and rem:
            raise InexactDivisionError("division left a nonzero remainder")
        return Series(self.den, quot, qprec, self.ring, _clean=True)

    # ---- exponent substitutions ---------------------------------------

    def substitute(self, matrix, qprec, twist=None):
        """Apply an integer-linear map to the exponent lattice.

        matrix is a list of rows; new_key[i] = sum(matrix[i][j] * key[j]).
        twist, if given, maps the old key to a scalar multiplier.  The new
        qprec is the caller's responsibility: exponent maps can move unknown
        high-order terms downward, so no safe default exists in general.
        """
        nvars = len(self.den)
        if len(matrix) != nvars or any(len(row) != nvars for row in matrix):
            raise ValidationError("substitution matrix has wrong shape")
        out = {}
        for key, coeff in self.terms.items():
            new_key = tuple(
                sum(matrix[i][j] * key[j] for j in range(nvars)) for i in range(nvars)
            )
            if qprec is not None and new_key[0] >= qprec:
                continue
            if twist is not None:
                coeff = coeff * twist(key)
                if coeff == 0:
                    continue
            new = out.get(new_key, 0) + coeff
            if new == 0:
                out.pop(new_key, None)
            else:
                out[new_key] = new
        return Series(self.den, out, qprec, self.ring)

    def scale_q(self, factor):
        """q -> q**factor (factor a positive integer)."""
        if factor <= 0:
            raise ValidationError("q-scaling factor must be positive")
        nvars = len(self.den)
        matrix = [[0] * nvars for _ in range(nvars)]
        matrix[0][0] = factor
        for i in range(1, nvars):
            matrix[i][i] = 1
        qprec = None if self.qprec is None else self.qprec * factor
        return self.substitute(matrix, qprec)

    def scale_y(self, factor):
        """y -> y**factor (factor a nonzero integer)."""
        if factor == 0:
            raise ValidationError("y-scaling factor must be nonzero")
        nvars = len(self.den)
        matrix = [[0] * nvars for _ in range(nvars)]
        matrix[0][0] = 1
        matrix[1][1] = factor
        for i in range(2, nvars):
            matrix[i][i] = 1
        return self.substitute(matrix, self.qprec)

    def shift(self, key):
        """Multiply by the monomial with the given exponent key."""
        key = tuple(key)
        nvars = len(self.den)
        if len(key) != nvars:
            raise ValidationError("shift key has wrong arity")
        qprec = None if self.qprec is None else self.qprec + key[0]
        terms = {
            tuple(k[i] + key[i] for i in range(nvars)): c
            for k, c in self.terms.items()
        }
        return Series(self.den, terms, qprec, self.ring, _clean=True)

    def with_qprec(self, qprec):
        """Assert-and-set a q-precision on an exact (qprec=None) series."""
        if self.qprec is not None:
            return self.truncate(qprec)
        return Series(self.den, dict(self.terms), qprec, self.ring)

    # ---- three-variable helpers ---------------------------------------

    def lift_to_three(self, ms=0):
        """Embed a (q, y) series into (q, y, s) at a fixed s-exponent."""
        if self.den != DEN2:
            raise ValidationError("lift_to_three needs a two-variable series")
        terms = {(k[0], k[1], ms): c for k, c in self.terms.items()}
        return Series(DEN3, terms, self.qprec, self.ring, _clean=True)

    def s_slice(self, ms):
        """Extract the (q, y) coefficient series of s**(ms/24)."""
        if self.den != DEN3:
            raise ValidationError("s_slice needs a three-variable series")
        terms = {(k[0], k[1]): c for k, c in self.terms.items() if k[2] == ms}
        return Series(DEN2, terms, self.qprec, self.ring, _clean=True)

    def s_support(self):
        if self.den != DEN3:
            raise ValidationError("s_support needs a three-variable series")
        return sorted({k[2] for k in self.terms})

    def truncate_s(self, sprec):
        """Drop terms with s-exponent >= sprec (in 1/24 units); exclusive."""
        if self.den != DEN3:
            raise ValidationError("truncate_s needs a three-variable series")
        terms = {k: c for k, c in self.terms.items() if k[2] < sprec}
        return Series(DEN3, terms, self.qprec, self.ring, _clean=True)

    def clip_y(self, ybound):
        """Drop terms with |y-exponent| > ybound (in 1/4 units)."""
        terms = {k: c for k, c in self.terms.items() if abs(k[1]) <= ybound}
        return Series(self.den, terms, self.qprec, self.ring, _clean=True)


def gen_binomial(e, j):
    """Binomial coefficient C(e, j) for any integer e and j >= 0."""
    if j < 0:
        return 0
    if e >= 0:
        return comb(e, j) if j <= e else 0
    return (-1) ** j * comb(-e + j - 1, j)


def binomial_factor(key, exponent, qprec, sprec=None, ybound=None, den=DEN3, ring=RING_Z):
    """Expand (1 - monomial(key)) ** exponent under the given truncations.

    For monomials with positive q- or s-order the expansion is finite.  A
    pure-y monomial with negative exponent has an infinite tail in one y
    direction; it is only expanded when an explicit ybound is supplied.
    """
    key = tuple(key)
    if all(v == 0 for v in key):
        raise ValidationError("factor monomial must be nonconstant")
    nq = key[0]
    ms = key[2] if len(key) == 3 else 0
    if nq < 0 or ms < 0:
        raise ValidationError("factor monomials need nonnegative q- and s-order")
    bounds = []
    if nq > 0 and qprec is not None:
        bounds.append((qprec - 1) // nq)
    if ms > 0 and sprec is not None:
        bounds.append((sprec - 1) // ms)
    if not bounds:
        if exponent >= 0:
            bounds.append(exponent)
        elif ybound is not None and key[1] != 0:
            bounds.append(ybound // abs(key[1]))
        else:
            raise PrecisionError(
                "factor with zero q- and s-order and negative exponent needs a "
                "y-expansion bound"
            )
    jmax = min(bounds)
    terms = {}
    for j in range(jmax + 1):
        c = gen_binomial(exponent, j) * (-1) ** j
        if c == 0:
            continue
        terms[tuple(v * j for v in key)] = c
    return Series(den, terms, qprec, ring)


def product_expand(factors, qprec, sprec=None, ybound=None, den=DEN3, ring=RING_Z):
    """Expand prod (1 - monomial(key)) ** exponent over the factor list.

    factors yields (key, exponent) pairs.  The result is truncated at the
    requested q- (and s-) precision; ybound, if given, permits pure-y
    factors with negative exponents via a one-sided geometric expansion.
    """
    acc = Series.const(1, den, qprec, ring)
    for key, exponent in factors:
        if exponent == 0:
            continue
        factor = binomial_factor(
            key, exponent, qprec, sprec=sprec, ybound=ybound, den=den, ring=ring
        )
        acc = acc * factor
        if sprec is not None and len(den) == 3:
            acc = acc.truncate_s(sprec)
        if ybound is not None:
            acc = acc.clip_y(ybound)
    return acc


# ---- serialization -----------------------------------------------------


def _coeff_to_str(c):
    if isinstance(c, int):
        return str(c)
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    if isinstance(c, GaussianInt):
        return f"{c.a},{c.b}i"
    raise ValidationError(f"cannot serialize coefficient {c!r}")


def _coeff_from_str(s, ring):
    if ring == RING_Z:
        return int(s)
    if ring == RING_Q:
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    if ring == RING_ZI:
        if s.endswith("i"):
            a, b = s[:-1].split(",")
            return GaussianInt(int(a), int(b))
        return GaussianInt(int(s))
    raise ValidationError(f"unknown ring {ring}")


def series_to_dict(series):
    data = {
        "den": list(series.den),
        "qprec": series.qprec,
        "terms": [
            list(key) + [_coeff_to_str(coeff)]
            for key, coeff in series.sorted_terms()
        ],
    }
    if series.ring != RING_Z:
        data["ring"] = series.ring
    return data


def series_from_dict(data):
    den = tuple(data["den"])
    ring = data.get("ring", RING_Z)
    terms = {}
    nvars = len(den)
    for entry in data["terms"]:
        if len(entry) != nvars + 1:
            raise ValidationError(f"bad term entry {entry}")
        key = tuple(int(v) for v in entry[:nvars])
        terms[key] = _coeff_from_str(entry[nvars], ring)
    return Series(den, terms, data["qprec"], ring)
