"""Exact arithmetic in the ground ring Z[q^(1/8), q^(-1/8)].

Every scalar in this library is a Laurent polynomial in a formal eighth
root of q, with integer coefficients.  Exponents are stored as plain
integers counting eighths: q itself is exponent 8, the half powers
q^(1/2) that appear in Weyl normalization are exponent 4, and u = q^(m/4)
is exponent 2m.  No rational arithmetic is ever needed.  Coefficients are
Python ints, so repeated flip compositions cannot overflow.
"""

from __future__ import annotations

import cmath
from fractions import Fraction


class Laurent:
    """A Laurent polynomial sum_n c_n * q^(n/8), kept in canonical form.

    ``terms`` maps the eighth-exponent n to the nonzero integer c_n.  The
    empty map is zero.  Instances are immutable and hashable.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for n, c in terms.items():
                if c:
                    clean[int(n)] = int(c)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("Laurent scalars are immutable")

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero():
        return Laurent()

    @staticmethod
    def one():
        return Laurent({0: 1})

    @staticmethod
    def integer(c):
        return Laurent({0: c})

    @staticmethod
    def q_power(n, coeff=1):
        """coeff * q^(n/8) with n in eighth-of-q units."""
        return Laurent({n: coeff})

    # -- ring structure ----------------------------------------------

    def __add__(self, other):
        other = _as_laurent(other)
        out = dict(self.terms)
        for n, c in other.terms.items():
            out[n] = out.get(n, 0) + c
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({n: -c for n, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_laurent(other))

    def __rsub__(self, other):
        return _as_laurent(other) + (-self)

    def __mul__(self, other):
        other = _as_laurent(other)
        out = {}
        for n1, c1 in self.terms.items():
            for n2, c2 in other.terms.items():
                n = n1 + n2
                out[n] = out.get(n, 0) + c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            inv = self.inverse()
            return inv ** (-k)
        out = Laurent.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self):
        """Inverse of a unit +-q^(n/8); anything else is not invertible."""
        mono = self.as_monomial()
        if mono is None or mono[0] not in (1, -1):
            raise ValueError("not a unit in Z[q^(1/8), q^(-1/8)]: %s" % self)
        c, n = mono
        return Laurent({-n: c})

    def __eq__(self, other):
        if isinstance(other, int):
            other = Laurent.integer(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash(tuple(sorted(self.terms.items())))
            )
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- structure queries -------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {0: 1}

    def as_monomial(self):
        """Return (coeff, eighth_exponent) for a single-term scalar, else None."""
        if len(self.terms) != 1:
            return None
        (n, c), = self.terms.items()
        return (c, n)

    # -- reflection symmetry -----------------------------------------

    def reflect(self):
        """The involution q^(1/8) -> q^(-1/8); negates every exponent."""
        return Laurent({-n: c for n, c in self.terms.items()})

    # -- numerical evaluation ----------------------------------------

    def evaluate(self, root):
        """Sum of coeff * zeta^n where zeta = root.zeta is the value of q^(1/8)."""
        z = 0j
        for n, c in self.terms.items():
            z += c * root.zeta_pow(n)
        return z

    # -- printing -----------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for n, c in sorted(self.terms.items()):
            parts.append("%d*q^(%s)" % (c, _exp_str(n)))
        return " + ".join(parts)

    __repr__ = __str__


def _as_laurent(x):
    if isinstance(x, Laurent):
        return x
    if isinstance(x, int):
        return Laurent.integer(x)
    raise TypeError("cannot coerce %r to a scalar" % (x,))


def _exp_str(n):
    f = Fraction(n, 8)
    if f.denominator == 1:
        return str(f.numerator)
    return "%d/%d" % (f.numerator, f.denominator)


ZERO = Laurent.zero()
ONE = Laurent.one()


class RootOfUnity:
    """Evaluation context sending q^(1/8) to a primitive L-th root of unity."""

    def __init__(self, L):
        if L < 3 or L % 2 == 0:
            raise ValueError("root order must be an odd integer >= 3")
        self.L = L
        self._table = [cmath.exp(2j * cmath.pi * k / L) for k in range(L)]

    @property
    def zeta(self):
        return self._table[1 % self.L]

    def zeta_pow(self, n):
        return self._table[n % self.L]

    def __repr__(self):
        return "RootOfUnity(L=%d)" % self.L


def scalar_add(a, b):
    return a + b


def scalar_mul(a, b):
    return a * b


def scalar_reflect(a):
    return a.reflect()


def scalar_eval(a, root):
    return a.evaluate(root)
