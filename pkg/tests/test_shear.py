import numpy as np
import pytest

from qskein.library import annulus_core, surface_by_name
from qskein.qscalar import Laurent
from qskein.qtorus import TorusElement
from qskein.shear import (
    ShearSkein,
    balanced_decompose,
    even_image_check,
    is_balanced,
    is_in_Ybl,
)
from qskein.surface import annulus, polygon


def test_is_balanced_examples():
    A = annulus()
    assert is_balanced((0, 0), A)
    assert is_balanced((2, 4), A)
    assert is_balanced((1, 1), A)      # both inner edges lie in each triangle
    assert not is_balanced((1, 0), A)
    _, core = annulus_core()
    k = tuple(core.multiplicities()[e] for e in A.inner_edges)
    assert is_balanced(k, A)


def test_balanced_decompose():
    A = annulus()
    assert balanced_decompose((2, 4)) == ((0, 0), (2, 4))
    assert balanced_decompose((1, 1), A) == ((1, 1), (0, 0))
    assert balanced_decompose((3, -1)) == ((1, 1), (2, -2))
    with pytest.raises(ValueError):
        balanced_decompose((1, 0), A)


def test_even_image_biconditional():
    P = polygon(5)
    bundle = ShearSkein(P)
    rng = np.random.default_rng(11)
    for _ in range(300):
        k = tuple(int(v) for v in rng.integers(-4, 5, 2))
        rep = even_image_check(k, P, bundle)
        assert rep["agree"], (k, rep)
    # a constructed counterexample vector: one odd entry
    rep = even_image_check((1, 0), P, bundle)
    assert not rep["balanced"] and not rep["kH_even"]
    rep = even_image_check((2, 0), P, bundle)
    assert rep["balanced"] and rep["kH_even"]


def test_duality_is_the_mlh_precondition():
    from qskein.qtorus import mlh_check
    for name in ("polygon4", "polygon5", "polygon6", "annulus", "torus1-lift",
                  "sphere3-lift"):
        b = ShearSkein(surface_by_name(name))
        assert mlh_check(b.H, b.x.A, b.y.A, -4)


def test_psi_explicit_quadrilateral():
    P = polygon(5)
    bundle = ShearSkein(P)
    # the quadrilateral of e0_2 has boundary (e0_1, e1_2, e2_3, e0_3)
    img = bundle.psi_vec(bundle.y.unit_vec("e0_2"))
    expected = TorusElement.monomial(
        bundle.x,
        bundle.x.vec({"e0_1": 1, "e1_2": -1, "e2_3": 1, "e0_3": -1}),
    )
    assert img == expected


def test_psi_is_algebra_map():
    A = annulus()
    bundle = ShearSkein(A)
    assert bundle.psi(TorusElement.one(bundle.y)).is_one()
    rng = np.random.default_rng(12)
    for _ in range(20):
        a = TorusElement(
            bundle.y,
            {tuple(int(v) for v in rng.integers(-3, 4, 2)): Laurent.one()
             for _ in range(2)},
        )
        b = TorusElement(
            bundle.y,
            {tuple(int(v) for v in rng.integers(-3, 4, 2)): Laurent.one()
             for _ in range(2)},
        )
        assert bundle.psi(a * b) == bundle.psi(a) * bundle.psi(b)
        assert bundle.psi(a.reflect()) == bundle.psi(a).reflect()


def test_psi_balanced_iff_even_image():
    A = annulus()
    bundle = ShearSkein(A)
    rng = np.random.default_rng(13)
    for _ in range(100):
        k = tuple(int(v) for v in rng.integers(-3, 4, 2))
        img = bundle.psi_vec(k)
        [m] = list(img.terms)
        even = all(v % 2 == 0 for v in m)
        assert even == is_balanced(k, A)


def test_Ybl_membership_closed_under_product():
    A = annulus()
    bundle = ShearSkein(A)
    rng = np.random.default_rng(14)
    for _ in range(30):
        ks = []
        while len(ks) < 2:
            k = tuple(int(v) for v in rng.integers(-3, 4, 2))
            if is_balanced(k, A):
                ks.append(k)
        a = TorusElement.monomial(bundle.y, ks[0])
        b = TorusElement.monomial(bundle.y, ks[1])
        assert is_in_Ybl(a * b, A)


def test_psi_preimage_roundtrip():
    for name in ("polygon5", "annulus", "torus1-lift"):
        bundle = ShearSkein(surface_by_name(name))
        rng = np.random.default_rng(15)
        n = len(bundle.y.labels)
        terms = {
            tuple(int(v) for v in rng.integers(-2, 3, n)): Laurent.q_power(4)
            for _ in range(3)
        }
        el = TorusElement(bundle.y, terms)
        assert bundle.psi_preimage(bundle.psi(el)) == el
    bundle = ShearSkein(surface_by_name("polygon5"))
    with pytest.raises(ValueError):
        bundle.psi_preimage(TorusElement.generator(bundle.x, "e0_1", 1))
