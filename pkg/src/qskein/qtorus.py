"""Quantum tori T(A, u) in the Weyl-normalized monomial basis.

A torus is specified by a finite ordered label set I, an antisymmetric
integer matrix A over I, and a parameter u that is an integral power of
q^(1/4).  Elements are finite sums of normalized monomials x^k with
exact Laurent coefficients.  The product rule is

    x^k * x^n = u^((1/2) <k,n>_A) x^(k+n),

where <k,n>_A = k A n^T, and the general commutation
x^k x^n = u^(<k,n>_A) x^n x^k follows.  Since u is a power of q^(1/4),
u^(1/2) lives in the coefficient ring and every product is exact.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .qscalar import Laurent, ONE


class TorusSpec:
    """Label set, antisymmetric matrix and parameter u = q^(u_eighth/8)."""

    def __init__(self, labels, A, u_eighth, letter="x"):
        self.labels = tuple(labels)
        self.letter = letter
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate labels in index set")
        A = np.asarray(A, dtype=np.int64)
        n = len(self.labels)
        if A.shape != (n, n):
            raise ValueError("matrix shape %s does not match %d labels" % (A.shape, n))
        if not np.array_equal(A, -A.T):
            raise ValueError("matrix is not antisymmetric")
        if u_eighth % 2 != 0:
            raise ValueError("u must be an integral power of q^(1/4)")
        self.A = A
        self.u_eighth = int(u_eighth)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self._key = (self.labels, self.A.tobytes(), self.u_eighth)

    def __eq__(self, other):
        return isinstance(other, TorusSpec) and self._key == other._key

    def __hash__(self):
        return hash((self.labels, self.u_eighth))

    def __repr__(self):
        return "TorusSpec(%d labels, u=q^(%s/8))" % (len(self.labels), self.u_eighth)

    # k, n are integer tuples over self.labels

    def pairing(self, k, n):
        """The antisymmetric form <k,n>_A = k A n^T."""
        k = np.asarray(k, dtype=np.int64)
        n = np.asarray(n, dtype=np.int64)
        return int(k @ self.A @ n)

    def zero_vec(self):
        return (0,) * len(self.labels)

    def unit_vec(self, label, mult=1):
        v = [0] * len(self.labels)
        v[self.index[label]] = mult
        return tuple(v)

    def vec(self, mapping):
        """Exponent tuple from a {label: int} mapping; missing labels are 0."""
        v = [0] * len(self.labels)
        for lab, e in mapping.items():
            v[self.index[lab]] = int(e)
        return tuple(v)

    def half_phase(self, pair_value):
        """u^(pair_value/2) as a Laurent scalar (pair_value an integer)."""
        return Laurent.q_power((self.u_eighth // 2) * pair_value)


def pairing(k, n, A):
    k = np.asarray(k, dtype=np.int64)
    n = np.asarray(n, dtype=np.int64)
    return int(k @ np.asarray(A, dtype=np.int64) @ n)


class TorusElement:
    """A finite R-linear combination of normalized monomials x^k."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec, terms=None):
        self.spec = spec
        clean = {}
        if terms:
            width = len(spec.labels)
            for k, c in terms.items():
                if not isinstance(c, Laurent):
                    c = Laurent.integer(c)
                if len(k) != width:
                    raise ValueError("exponent vector of wrong length")
                if c.is_zero():
                    continue
                k = tuple(int(e) for e in k)
                clean[k] = clean[k] + c if k in clean else c
        self.terms = {k: c for k, c in clean.items() if not c.is_zero()}

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero(spec):
        return TorusElement(spec)

    @staticmethod
    def one(spec):
        return TorusElement(spec, {spec.zero_vec(): ONE})

    @staticmethod
    def monomial(spec, k, coeff=ONE):
        return TorusElement(spec, {tuple(k): coeff})

    @staticmethod
    def generator(spec, label, power=1, coeff=ONE):
        return TorusElement.monomial(spec, spec.unit_vec(label, power), coeff)

    # -- module structure ----------------------------------------------

    def _check(self, other):
        if self.spec != other.spec:
            raise ValueError("torus spec mismatch")

    def __add__(self, other):
        if isinstance(other, int):
            other = TorusElement.one(self.spec) * Laurent.integer(other)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            out[k] = c if s is None else s + c
        return TorusElement(self.spec, out)

    def __neg__(self):
        return TorusElement(self.spec, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Laurent)):
            c = other if isinstance(other, Laurent) else Laurent.integer(other)
            return TorusElement(self.spec, {k: v * c for k, v in self.terms.items()})
        self._check(other)
        spec = self.spec
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                phase = spec.half_phase(spec.pairing(k1, k2))
                k = tuple(a + b for a, b in zip(k1, k2))
                c = c1 * c2 * phase
                s = out.get(k)
                out[k] = c if s is None else s + c
        return TorusElement(spec, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Laurent)):
            return self * other
        return NotImplemented

    def __pow__(self, n):
        if n < 0:
            return self.inverse_monomial() ** (-n)
        out = TorusElement.one(self.spec)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse_monomial(self):
        """Inverse of a one-term element with unit coefficient times q-power."""
        if len(self.terms) != 1:
            raise ValueError("only monomials are invertible in the torus")
        (k, c), = self.terms.items()
        # (c x^k)^(-1) = c^(-1) x^(-k) because <k,k>_A = 0
        return TorusElement.monomial(self.spec, tuple(-e for e in k), c.inverse())

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def __hash__(self):
        return hash((self.spec, tuple(sorted(self.terms.items()))))

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {self.spec.zero_vec(): ONE}

    # -- reflection ----------------------------------------------------

    def reflect(self):
        """Coefficientwise bar involution; fixes every normalized monomial."""
        return TorusElement(self.spec, {k: c.reflect() for k, c in self.terms.items()})

    def is_reflection_invariant(self):
        return all(c.reflect() == c for c in self.terms.values())

    def has_unit_coefficients(self):
        return all(c.is_one() for c in self.terms.values())

    # -- misc ----------------------------------------------------------

    def support_labels(self):
        """Labels that occur with a nonzero exponent in some term."""
        out = set()
        for k in self.terms:
            for lab, e in zip(self.spec.labels, k):
                if e:
                    out.add(lab)
        return out

    def map_exponents(self, fn, new_spec):
        return TorusElement(new_spec, {fn(k): c for k, c in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            letter = getattr(self.spec, "letter", "x")
            mono = " ".join(
                "%s[%s]^%d" % (letter, lab, e)
                for lab, e in zip(self.spec.labels, k)
                if e
            )
            cs = str(c)
            if "+" in cs:
                cs = "(" + cs + ")"
            parts.append(cs if not mono else "%s * %s" % (cs, mono))
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self):
        return {
            "labels": list(self.spec.labels),
            "u_eighth": self.spec.u_eighth,
            "terms": [
                {
                    "exp": {lab: e for lab, e in zip(self.spec.labels, k) if e},
                    "coeff": {str(n): c for n, c in sorted(co.terms.items())},
                }
                for k, co in sorted(self.terms.items())
            ],
        }


def element_from_json(spec, data):
    terms = {}
    for t in data["terms"]:
        k = spec.vec({lab: int(e) for lab, e in t["exp"].items()})
        co = Laurent({int(n): int(c) for n, c in t["coeff"].items()})
        terms[k] = terms.get(k, Laurent.zero()) + co
    return TorusElement(spec, terms)


# ---------------------------------------------------------------------------
# Weyl normalization helpers


def weyl_normalize(spec, factors):
    """Normalized monomial of a list of exponent vectors.

    Equal to the ordinary product x^(k_1) ... x^(k_m) with the Weyl
    q-power prefactor stripped; independent of the order of the factors.
    """
    total = spec.zero_vec()
    for k in factors:
        total = tuple(a + b for a, b in zip(total, k))
    return TorusElement.monomial(spec, total)


def ordered_product_phase(spec, factors):
    """The scalar P with x^(k_1) ... x^(k_m) = P * x^(k_1 + ... + k_m).

    P = u^((1/2) sum_{i<j} <k_i, k_j>_A).  Decomposing a monomial into an
    ordered product of generators therefore costs the inverse phase.
    """
    total = 0
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            total += spec.pairing(factors[i], factors[j])
    return spec.half_phase(total)


def decompose_monomial(spec, k, coeff=ONE):
    """Write coeff*x^k as (scalar, [(label, exponent), ...]) with the ordered
    generator product running through spec.labels in order."""
    factors = []
    vecs = []
    for lab, e in zip(spec.labels, k):
        if e:
            factors.append((lab, int(e)))
            vecs.append(spec.unit_vec(lab, e))
    phase = ordered_product_phase(spec, vecs)
    # x^k = phase^(-1) * prod_i x^(k_i)
    return coeff * phase.inverse(), factors


# ---------------------------------------------------------------------------
# Multiplicatively linear homomorphisms x^k -> y^(kH)


def mlh_check(H, B, A, r):
    """Exact test of H B H^T == r A (r an integer or Fraction)."""
    H = np.asarray(H, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    A = np.asarray(A, dtype=np.int64)
    if H.shape != (A.shape[0], B.shape[0]):
        raise ValueError("dimension mismatch in mlh_check")
    if A.size == 0:
        return True
    lhs = H @ B @ H.T
    r = Fraction(r)
    scaled = r.numerator * A
    if np.any(scaled % r.denominator):
        return False
    return bool(np.array_equal(lhs, scaled // r.denominator))


def mlh_apply(H, src_spec, dst_spec, elem, checked=True, r=None):
    """Linear extension of x^k -> y^(kH); an algebra map when HBH^T = rA."""
    if elem.spec != src_spec:
        raise ValueError("element does not live in the source torus")
    H = np.asarray(H, dtype=np.int64)
    if r is not None and checked:
        if not mlh_check(H, dst_spec.A, src_spec.A, r):
            raise ValueError("mlh precondition H B H^T = r A fails")
    out = {}
    for k, c in elem.terms.items():
        kk = tuple(int(x) for x in (np.asarray(k, dtype=np.int64) @ H))
        s = out.get(kk)
        out[kk] = c if s is None else s + c
    return TorusElement(dst_spec, out)


def canonical_projection(elem, keep):
    """Drop every term whose exponent vector fails the predicate."""
    return TorusElement(
        elem.spec, {k: c for k, c in elem.terms.items() if keep(k)}
    )


def restrict_element(elem, sub_labels):
    """View an element supported on sub_labels inside the sub-torus.

    The submatrix torus is a subalgebra: products of elements supported on
    the sublabels agree with the ambient ones.
    """
    spec = elem.spec
    sub_labels = tuple(sub_labels)
    idx = [spec.index[lab] for lab in sub_labels]
    sub = TorusSpec(sub_labels, spec.A[np.ix_(idx, idx)], spec.u_eighth)
    out = {}
    keep = set(idx)
    for k, c in elem.terms.items():
        for i, e in enumerate(k):
            if e and i not in keep:
                raise ValueError("element not supported on the sublabels")
        out[tuple(k[i] for i in idx)] = c
    return TorusElement(sub, out)
