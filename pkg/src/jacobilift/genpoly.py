"""Integer polynomials in the four weak Jacobi form generators.

GeneratorPolynomial records how a form was assembled from the index 1..4
weight-zero generators, written Phi1..Phi4.  Terms map exponent tuples
(e1, e2, e3, e4) to integer coefficients; the index of each monomial is
e1 + 2*e2 + 3*e3 + 4*e4.
"""

import re

from .errors import ValidationError

_TOKEN = re.compile(r"\s*(\d+|Phi[1-4]|[-+*^()])")


class GeneratorPolynomial:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, coeff in (terms or {}).items():
            key = tuple(key)
            if len(key) != 4 or any(e < 0 for e in key):
                raise ValidationError(f"bad generator exponent tuple {key}")
            if coeff:
                clean[key] = clean.get(key, 0) + coeff
        self.terms = {k: c for k, c in clean.items() if c}

    @classmethod
    def generator(cls, i):
        if i not in (1, 2, 3, 4):
            raise ValidationError("generator number must be 1..4")
        key = tuple(1 if j == i - 1 else 0 for j in range(4))
        return cls({key: 1})

    @classmethod
    def const(cls, value):
        return cls({(0, 0, 0, 0): value})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, GeneratorPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other):
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return GeneratorPolynomial(terms)

    def __neg__(self):
        return GeneratorPolynomial({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GeneratorPolynomial({k: c * other for k, c in self.terms.items()})
        out = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                key = tuple(ka[i] + kb[i] for i in range(4))
                out[key] = out.get(key, 0) + ca * cb
        return GeneratorPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValidationError("generator polynomials only take powers >= 0")
        result = GeneratorPolynomial.const(1)
        for _ in range(e):
            result = result * self
        return result

    def indices(self):
        """Set of Jacobi indices of the monomials present."""
        return {k[0] + 2 * k[1] + 3 * k[2] + 4 * k[3] for k in self.terms}

    def index(self):
        """The common index, when the polynomial is index-homogeneous."""
        idx = self.indices()
        if len(idx) != 1:
            raise ValidationError(f"polynomial is not index-homogeneous: {idx}")
        return idx.pop()

    def evaluate(self, values):
        """Evaluate against a 4-tuple of ring elements supporting + and *."""
        result = None
        for key, coeff in sorted(self.terms.items()):
            term = None
            for i, e in enumerate(key):
                for _ in range(e):
                    term = values[i] if term is None else term * values[i]
            term = coeff if term is None else term * coeff
            result = term if result is None else result + term
        return result

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, coeff in sorted(self.terms.items(), reverse=True):
            factors = []
            for i, e in enumerate(key):
                if e == 1:
                    factors.append(f"Phi{i + 1}")
                elif e > 1:
                    factors.append(f"Phi{i + 1}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(f"{coeff:+d}")
            elif coeff == 1:
                parts.append(f"+{body}")
            elif coeff == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{coeff:+d}*{body}")
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    __repr__ = __str__


def parse_generator_polynomial(text):
    """Parse expressions like 'Phi1*Phi3-Phi2^2' or '2*Phi1^2-24*Phi2'."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValidationError(f"cannot tokenize {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    tokens.append(None)
    state = {"i": 0}

    def peek():
        return tokens[state["i"]]

    def advance():
        tok = tokens[state["i"]]
        state["i"] += 1
        return tok

    def parse_expr():
        sign = 1
        while peek() in ("+", "-"):
            if advance() == "-":
                sign = -sign
        result = parse_term() * sign
        while peek() in ("+", "-"):
            op = advance()
            term = parse_term()
            result = result + (term if op == "+" else -term)
        return result

    def parse_term():
        result = parse_power()
        while peek() == "*":
            advance()
            result = result * parse_power()
        return result

    def parse_power():
        base = parse_atom()
        if peek() == "^":
            advance()
            tok = advance()
            if tok is None or not tok.isdigit():
                raise ValidationError("exponent must be a nonnegative integer")
            base = base ** int(tok)
        return base

    def parse_atom():
        tok = advance()
        if tok is None:
            raise ValidationError("unexpected end of expression")
        if tok == "(":
            inner = parse_expr()
            if advance() != ")":
                raise ValidationError("unbalanced parentheses")
            return inner
        if tok == "-":
            return -parse_atom()
        if tok.isdigit():
            return GeneratorPolynomial.const(int(tok))
        if tok.startswith("Phi"):
            return GeneratorPolynomial.generator(int(tok[3]))
        raise ValidationError(f"unexpected token {tok!r}")

    result = parse_expr()
    if peek() is not None:
        raise ValidationError(f"trailing input at token {peek()!r}")
    return result
