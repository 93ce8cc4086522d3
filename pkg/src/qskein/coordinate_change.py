"""Flip coordinate changes on skein and shear coordinates.

Skew-field elements are never normalized symbolically.  They are kept as
formal sums of words; a word is a scalar prefactor times a sequence of
factors, each factor either a torus element or the formal inverse of a
whole expression.  Equality of such expressions is certified numerically
by the root-of-unity evaluator in repcheck.

The flip at an inner edge a replaces it by the opposite diagonal a* of
its quadrilateral with boundary edges b, c, d, e in cyclic order, the two
old triangles being (a, b, c) and (a, d, e).  The skein-side change maps
X_(a*) to [X_c X_e X_a^(-1)] + [X_b X_d X_a^(-1)]; the shear-side change
acts on the squared generators by the case table (all four boundary edges
distinct, b = d, or c = e).
"""

from __future__ import annotations

from dataclasses import dataclass

from .qscalar import Laurent, ONE
from .qtorus import TorusElement, TorusSpec, decompose_monomial
from .curves import CurveError, classify, _epsilon_at
from .shear import ShearSkein, shear_spec
from .surface import SurfaceError


class Expr:
    """Formal sum of words over one quantum torus.

    words: tuple of (Laurent coefficient, factors); factors a tuple of
    ('el', TorusElement) and ('inv', Expr) entries, multiplied left to
    right.  The empty factor tuple is the identity.
    """

    __slots__ = ("spec", "words")

    def __init__(self, spec, words=()):
        self.spec = spec
        self.words = tuple(
            (c, tuple(fs)) for c, fs in words if not c.is_zero()
        )

    @staticmethod
    def from_element(el):
        return Expr(el.spec, [(ONE, (("el", el),))])

    @staticmethod
    def one(spec):
        return Expr(spec, [(ONE, ())])

    @staticmethod
    def zero(spec):
        return Expr(spec, [])

    def __add__(self, other):
        assert self.spec == other.spec
        return Expr(self.spec, self.words + other.words)

    def __mul__(self, other):
        if isinstance(other, (int, Laurent)):
            c = other if isinstance(other, Laurent) else Laurent.integer(other)
            return Expr(self.spec, [(w * c, fs) for w, fs in self.words])
        assert self.spec == other.spec
        words = []
        for c1, f1 in self.words:
            for c2, f2 in other.words:
                words.append((c1 * c2, f1 + f2))
        return Expr(self.spec, words)

    def __rmul__(self, other):
        if isinstance(other, (int, Laurent)):
            return self * other
        return NotImplemented

    def inv(self):
        return Expr(self.spec, [(ONE, (("inv", self),))])

    def power(self, n):
        if n == 0:
            return Expr.one(self.spec)
        base = self if n > 0 else self.inv()
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    def support_labels(self):
        out = set()
        for _, fs in self.words:
            for kind, payload in fs:
                if kind == "el":
                    out |= payload.support_labels()
                else:
                    out |= payload.support_labels()
        return out

    def map_elements(self, fn):
        """Rebuild the expression with fn applied to each torus element;
        fn returns an Expr."""
        words_out = []
        spec_out = None
        for c, fs in self.words:
            word_expr = None
            for kind, payload in fs:
                piece = fn(payload) if kind == "el" else (
                    payload.map_elements(fn).inv()
                )
                word_expr = piece if word_expr is None else word_expr * piece
            if word_expr is None:
                words_out.append((c, None))
            else:
                words_out.append((c, word_expr))
                spec_out = word_expr.spec
        if spec_out is None:
            raise ValueError("cannot infer target torus of an empty map")
        out = Expr.zero(spec_out)
        for c, piece in words_out:
            if piece is None:
                piece = Expr.one(spec_out)
            out = out + piece * c
        return out

    def as_element(self):
        """Collapse to a TorusElement when no formal inverses occur."""
        total = TorusElement.zero(self.spec)
        for c, fs in self.words:
            acc = TorusElement.one(self.spec)
            for kind, payload in fs:
                if kind == "inv":
                    raise ValueError("expression contains a formal inverse")
                acc = acc * payload
            total = total + acc * c
        return total

    def is_polynomial(self):
        return all(
            all(kind == "el" for kind, _ in fs) for _, fs in self.words
        )

    def __repr__(self):
        return "Expr(%d words over %r)" % (len(self.words), self.spec)


# ---------------------------------------------------------------------------
# generator image maps


@dataclass
class GeneratorImageMap:
    """Images of the squared generators (shear side) or of the edge
    generators (skein side) under one coordinate change.

    images: {label: (expr for the generator, expr for its inverse)}.
    Labels without an entry map to themselves.  source/target are the
    tori the map goes between; gen_exponent is the exponent vector step
    of one generator (2 for both the squared shear generators Y_e = y_e^2
    and the skein generators X_e = x_e^2).
    """

    source: TorusSpec
    target: TorusSpec
    images: dict
    gen_exponent: int = 2
    flip: object = None

    def image_of_generator(self, label, power):
        if label in self.images:
            pos, neg = self.images[label]
            return (pos if power > 0 else neg).power(abs(power))
        el = TorusElement.generator(
            self.target, label, self.gen_exponent * power
        )
        return Expr.from_element(el)

    def apply_element(self, el):
        """Map a torus element whose exponents are multiples of
        gen_exponent, generator by generator."""
        if el.spec != self.source:
            raise ValueError("element is not over the source torus")
        out = Expr.zero(self.target)
        for k, c in el.terms.items():
            if any(v % self.gen_exponent for v in k):
                raise ValueError(
                    "exponent %s is not a multiple of %d" % (k, self.gen_exponent)
                )
            phase, factors = decompose_monomial(self.source, k, c)
            word = Expr.one(self.target) * phase
            for lab, e in factors:
                word = word * self.image_of_generator(lab, e // self.gen_exponent)
            out = out + word
        return out

    def apply_expr(self, expr):
        return expr.map_elements(self.apply_element)

    def compose_after(self, earlier):
        """The map (self o earlier): apply earlier, then push its output
        elements through self."""
        images = {}
        for lab in earlier.source.labels:
            pos = self.apply_expr(earlier.image_of_generator(lab, 1))
            neg = self.apply_expr(earlier.image_of_generator(lab, -1))
            images[lab] = (pos, neg)
        return GeneratorImageMap(
            source=earlier.source,
            target=self.target,
            images=images,
            gen_exponent=earlier.gen_exponent,
        )


# ---------------------------------------------------------------------------
# the two flip maps


def phi_flip(T, a, new_label=None):
    """Skein-side coordinate change for the flip at a.

    Returns (T', flip data, map sending X-generators of T' into words
    over the Muller torus of T)."""
    T2, fd = T.flip(a, new_label=new_label)
    return phi_flip_from_data(T, T2, fd)


def theta_flip(T, a, new_label=None):
    """Shear-side coordinate change for the flip at a, on the squared
    generators Y_v.

    Rather than hard-coding the quadrilateral case table, each image is
    computed canonically as psi^(-1) o Phi o psi': whichever of Y_v,
    Y_v^(-1) has a nonnegative power of the new diagonal in its skein
    image expands to a polynomial, whose psi-preimage is the image; the
    other side is its formal inverse.  On squares with four distinct
    boundary edges this reproduces the familiar table

        Y_(a*)          -> Y_a^(-1)
        Y_v             -> Y_v + [Y_v Y_a]            (v opposite pair 1)
        Y_v^(-1)        -> Y_v^(-1) + [Y_v^(-1) Y_a^(-1)]   (pair 2)

    and on self-glued squares it produces the correct three-term images,
    whose middle coefficient depends on the commutation of the
    surrounding loops.
    """
    bundle = ShearSkein(T)
    T2, fd = T.flip(a, new_label=new_label)
    bundle2 = ShearSkein(T2)
    _, _, phi = phi_flip_from_data(T, T2, fd, bundles=(bundle, bundle2))
    y, y2 = bundle.y, bundle2.y

    a_star_idx = bundle2.x.index[fd.a_star]
    images = {}
    for v in y2.labels:
        img_pos = bundle2.psi_vec(y2.unit_vec(v, 2))
        [kpos] = list(img_pos.terms)
        if kpos[a_star_idx] >= 0:
            el = phi.apply_element(img_pos).as_element()
            pos = Expr.from_element(bundle.psi_preimage(el))
            neg = pos.inv() if len(el.terms) > 1 else Expr.from_element(
                bundle.psi_preimage(el).inverse_monomial()
            )
        else:
            img_neg = bundle2.psi_vec(y2.unit_vec(v, -2))
            el = phi.apply_element(img_neg).as_element()
            neg_el = bundle.psi_preimage(el)
            neg = Expr.from_element(neg_el)
            pos = neg.inv() if len(el.terms) > 1 else Expr.from_element(
                neg_el.inverse_monomial()
            )
        images[v] = (pos, neg)
    gmap = GeneratorImageMap(source=y2, target=y, images=images, flip=fd)
    return T2, fd, gmap


# ---------------------------------------------------------------------------
# composition along flip sequences


def compose_flips(T, edges, side="shear", new_labels=None):
    """Flip the listed edges in order and compose the coordinate changes.

    Returns (final triangulation, composite GeneratorImageMap from the
    final coordinates into the initial ones, list of FlipData).
    new_labels optionally names the created diagonals, one per flip.
    """
    maker = theta_flip if side == "shear" else phi_flip
    cur = T
    maps = []
    datas = []
    for step, a in enumerate(edges):
        lab = new_labels[step] if new_labels else None
        cur, fd, gmap = maker(cur, a, new_label=lab)
        maps.append(gmap)
        datas.append(fd)
    if not maps:
        spec = shear_spec(T) if side == "shear" else ShearSkein(T).x
        return T, GeneratorImageMap(source=spec, target=spec, images={}), []
    composite = maps[0]
    for gmap in maps[1:]:
        composite = composite.compose_after(gmap)
    return cur, composite, datas


# ---------------------------------------------------------------------------
# transfer of knot monomials through a flip


@dataclass
class TransferRecord:
    """The transfer identity in its polynomial orientation.

    lhs is psi_{T2}(y^(sign * k')) over the flipped skein torus; rhs is
    psi_T of the transfer image, a polynomial; phi_lhs is the skein-side
    change applied to lhs, which must equal rhs exactly.  theta_pos is
    the image of y^(k') itself, a formal inverse in the left-right case.
    """

    case: str                 # 'unchanged' | 'right-left' | 'left-right'
    sign: int                 # +1, or -1 in the left-right case
    lhs: TorusElement
    rhs: TorusElement
    phi_lhs: TorusElement
    theta_pos: Expr
    kprime: tuple             # k_(alpha, Delta') over the flipped inner edges

    @property
    def exact_ok(self):
        return self.phi_lhs == self.rhs


def knot_monomial_transfer(alpha2, T, a, T2=None, fd=None, new_label=None):
    """Relate psi(y^(k_alpha)) before and after the flip at a.

    alpha2 is the curve as a normal curve in the flipped triangulation T2.
    Emits which transfer identity applies and both sides for verification.
    """
    if T2 is None or fd is None:
        T2, fd = T.flip(a, new_label=new_label)
    if classify(alpha2) != "simple":
        raise CurveError("transfer needs a curve simple after the flip")
    bundle, bundle2 = ShearSkein(T), ShearSkein(T2)
    mult2 = alpha2.multiplicities()
    k2 = bundle2.y.vec(mult2)
    y = bundle.y

    if fd.a_star not in mult2:
        case, eps = "unchanged", 0
    else:
        eps = _epsilon_at(alpha2, fd.a_star) if mult2[fd.a_star] == 1 else 0
        case = {1: "right-left", -1: "left-right", 0: "unchanged"}[eps]
    sign = -1 if case == "left-right" else 1

    back = _transport_back(alpha2, T, T2, fd)
    mult = {e: sign * m for e, m in back.multiplicities().items()}
    k1 = y.vec(mult)

    if case == "unchanged":
        el = TorusElement.monomial(y, k1)
        theta_pos = Expr.from_element(el)
    else:
        # y^(sk) + [Y_a^(-s) y^(sk)] with s = sign
        el = TorusElement.monomial(y, k1) + TorusElement.monomial(
            y, y.vec({**mult, fd.a: mult.get(fd.a, 0) - 2 * sign})
        )
        theta_pos = (
            Expr.from_element(el) if sign == 1 else Expr.from_element(el).inv()
        )

    lhs = bundle2.psi_vec(tuple(sign * v for v in k2))
    rhs = bundle.psi(el)
    _, _, phi = phi_flip_from_data(T, T2, fd, bundles=(bundle, bundle2))
    phi_lhs = phi.apply_element(lhs).as_element()
    return TransferRecord(case, sign, lhs, rhs, phi_lhs, theta_pos, k2)


def _transport_back(alpha2, T, T2, fd):
    """Transport a curve of T2 back through the inverse flip to T."""
    from .curves import transport_curve
    T3, fd_back = T2.flip(fd.a_star, new_label=fd.a)
    if not T3.same_as(T):
        raise SurfaceError("flip-back does not restore the triangulation")
    moved = transport_curve(alpha2, T2, fd_back, T3)
    # T3 equals T combinatorially; rebuild the steps on T itself
    return _rebuild_on(moved, T3, T)


def _rebuild_on(alpha, T_from, T_to):
    from .curves import NormalCurve
    steps = []
    for t, i, o in alpha.steps:
        labs_from = T_from.triangle_edges(t)
        target = None
        for t2 in range(len(T_to.triangles)):
            labs_to = T_to.triangle_edges(t2)
            for r in range(3):
                if tuple(labs_to[(x + r) % 3] for x in range(3)) == labs_from:
                    target = (t2, r)
                    break
            if target:
                break
        if target is None:
            raise SurfaceError("no matching triangle while rebuilding curve")
        t2, r = target
        steps.append((t2, (i + r) % 3, (o + r) % 3))
    return NormalCurve(T_to, steps)


def theta_on_balanced(gmap, transfer, elem):
    """Image of a balanced shear element under the flip coordinate change.

    Every exponent vector of elem must have odd part equal to the curve
    monomial exponent k' recorded in the transfer; such elements split as
    y^k = phase * y^(k') * Y^m with m integral, so the image is
    phase * Theta(y^(k')) * Theta(Y^m).  This covers exactly the shear
    images of traces of curves simple in the flipped triangulation.
    """
    y2 = gmap.source
    kprime = transfer.kprime
    exprs = []
    for k, coeff in elem.terms.items():
        m2 = tuple(a - b for a, b in zip(k, kprime))
        if any(v % 2 for v in m2):
            raise ValueError(
                "term y^%s does not decompose over the curve monomial" % (k,)
            )
        pairing = y2.pairing(kprime, m2)
        phase = y2.half_phase(-pairing) * coeff
        even_part = TorusElement.monomial(y2, m2)
        word = transfer.theta_pos * gmap.apply_element(even_part) * phase
        exprs.append(word)
    return exprs


def phi_flip_from_data(T, T2, fd, bundles=None):
    """phi_flip for an already performed flip."""
    bundle, bundle2 = bundles or (ShearSkein(T), ShearSkein(T2))
    x, x2 = bundle.x, bundle2.x
    kbd = x.vec({fd.b: 2, fd.d: 2}) if fd.b != fd.d else x.vec({fd.b: 4})
    kce = x.vec({fd.c: 2, fd.e: 2}) if fd.c != fd.e else x.vec({fd.c: 4})
    ka = x.vec({fd.a: -2})
    term1 = TorusElement.monomial(x, tuple(p + q for p, q in zip(kce, ka)))
    term2 = TorusElement.monomial(x, tuple(p + q for p, q in zip(kbd, ka)))
    image = Expr.from_element(term1 + term2)
    gmap = GeneratorImageMap(
        source=x2, target=x, images={fd.a_star: (image, image.inv())}, flip=fd
    )
    return T2, fd, gmap
