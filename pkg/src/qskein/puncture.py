"""Generalized marked surfaces: lifts, bar matrices, punctured traces.

An interior marked point p of a triangulated surface is opened into a
boundary circle by removing a small disk touching p: the loop c_p
becomes a boundary edge and the affected triangle is re-triangulated
with one extra diagonal, creating a fake triangle with counterclockwise
edge cycle (c_p, e'', e') whose two non-loop edges are parallel copies
of one original edge.  Repeating over all interior points turns the
generalized surface Lambda into its associated marked surface Delta,
together with the contraction omega collapsing each diagonal back to the
edge it doubles.

The 0/1 matrix Omega of omega transports the duality of Delta down to
Lambda: with Hbar = Omega H one has Qbar = Omega Qring Omega^T,
Hbar P Hbar^T = -4 Qbar and rk Hbar = #inner edges of Lambda, so the
punctured shear-to-skein map y^k -> x^(k Hbar) is again an algebra map.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qscalar import Laurent
from .qtorus import TorusSpec, TorusElement, canonical_projection, mlh_apply, mlh_check
from .curves import NormalCurve, enumerate_states, state_exponents, u_of_state
from .shear import ShearSkein, is_balanced
from .surface import SurfaceError, Triangulation


@dataclass
class LiftData:
    lam: Triangulation
    delta: Triangulation
    points: tuple            # interior point ids in processing order
    cp_edge: dict            # point -> boundary loop edge label
    fake_tris: dict          # point -> triangle index in delta
    omega: dict              # delta edge -> lambda edge (c_p's excluded)
    tri_map: dict            # non-fake delta triangle -> (lambda tri, rot)
    variants: dict           # point -> 'after' | 'before'

    def omega_matrix(self):
        lam_inner = self.lam.inner_edges
        del_inner = self.delta.inner_edges
        Om = np.zeros((len(lam_inner), len(del_inner)), dtype=np.int64)
        li = {e: i for i, e in enumerate(lam_inner)}
        for j, b in enumerate(del_inner):
            a = self.omega.get(b)
            if a is not None and a in li:
                Om[li[a], j] = 1
        return Om

    def is_fake(self, t):
        return t in set(self.fake_tris.values())

    def cp_labels(self):
        return set(self.cp_edge.values())


def lift(lam, variant="after", point_variants=None):
    """Open every interior marked point of lam; deterministic diagonals.

    variant chooses, at each surgery corner, whether the fake triangle
    doubles the side entering the corner ('after', the default fan rule)
    or the side leaving it ('before'); point_variants overrides per point.
    """
    lam.validate()
    cur = lam
    omega = {}
    tri_map = {t: (t, 0) for t in range(len(lam.triangles))}
    fake_tris = {}
    cp_edge = {}
    variants = {}
    points = []
    counter = 0
    fake_set = set()

    while True:
        interior = sorted(
            cur.interior_vertices,
            key=lambda vi: min(cur.vertices[vi]),
        )
        if not interior:
            break
        vi = interior[0]
        pname = "p%d" % len(points)
        var = (point_variants or {}).get(pname, variant)
        corner = min(
            c for c in cur.vertices[vi] if c[0] not in fake_set
        )
        t, ci = corner
        tri = cur.triangles[t]
        sA, sB, sC = tri[ci], tri[(ci + 1) % 3], tri[(ci + 2) % 3]
        cp = "cp%d" % len(points)
        g_lab = "g%d" % len(points)
        s_cp = "S.%s" % cp
        s_g1 = "S.%s#1" % g_lab
        s_g2 = "S.%s#2" % g_lab

        triangles = [list(x) for x in cur.triangles]
        side_edge = dict(cur.side_edge)
        glu = [(x, y) for x, y in cur.glue.items() if x < y]
        if var == "after":
            # non-fake (sA, sB, g_back), fake (g_fwd, sC, c_p)
            triangles[t] = [sA, sB, s_g2]
            fake = [s_g1, sC, s_cp]
            doubled = cur.side_edge[sC]
            rot_add = ci
        else:
            # non-fake (sB, sC, g_back), fake (sA, g_fwd, c_p)
            triangles[t] = [sB, sC, s_g2]
            fake = [sA, s_g1, s_cp]
            doubled = cur.side_edge[sA]
            rot_add = (ci + 1) % 3
        triangles.append(fake)
        glu.append((s_g1, s_g2))
        side_edge[s_g1] = g_lab
        side_edge[s_g2] = g_lab
        side_edge[s_cp] = cp

        hints = cur._collect_vertex_hints()
        new_tri = Triangulation(triangles, glu, side_edge, hints)

        omega[g_lab] = omega.get(doubled, doubled)
        fake_tris[pname] = len(triangles) - 1
        fake_set.add(len(triangles) - 1)
        cp_edge[pname] = cp
        variants[pname] = var
        points.append(pname)
        if t in tri_map:
            lt, rot = tri_map[t]
            tri_map[t] = (lt, (rot + rot_add) % 3)
        cur = new_tri
        counter += 1
        if counter > 64:
            raise SurfaceError("runaway lift; malformed input?")

    for e in lam.edges:
        omega.setdefault(e, e)
    for cpl in cp_edge.values():
        omega.pop(cpl, None)
    cur.validate(require_marked=True)
    return LiftData(
        lam=lam, delta=cur, points=tuple(points), cp_edge=cp_edge,
        fake_tris=fake_tris, omega=omega, tri_map=tri_map, variants=variants,
    )


# ---------------------------------------------------------------------------
# bar matrices and the punctured shear-to-skein map


class BarBundle:
    """Matrices and tori of a lifted surface, with the duality checks."""

    def __init__(self, ld):
        self.ld = ld
        self.delta_bundle = ShearSkein(ld.delta)
        _, Qbar, _ = ld.lam.face_submatrices()
        self.Qbar = Qbar
        self.Omega = ld.omega_matrix()
        self.Hbar = self.Omega @ self.delta_bundle.H
        self.ylam = TorusSpec(ld.lam.inner_edges, Qbar, -8, letter="y")
        self.x = self.delta_bundle.x
        self.checks = self._run_checks()
        if not all(self.checks.values()):
            raise SurfaceError("bar matrix checks failed: %s" % self.checks)

    def _run_checks(self):
        Qring = self.delta_bundle.Qring
        P = self.x.A
        ok_q = np.array_equal(self.Qbar, self.Omega @ Qring @ self.Omega.T)
        ok_dual = mlh_check(self.Hbar, P, self.Qbar, -4)
        rank = (
            int(np.linalg.matrix_rank(self.Hbar.astype(np.float64)))
            if self.Hbar.size
            else 0
        )
        ok_rank = rank == len(self.ld.lam.inner_edges)
        return {"Qbar": bool(ok_q), "duality": bool(ok_dual), "rank": bool(ok_rank)}

    def bar_psi(self, elem):
        return mlh_apply(self.Hbar, self.ylam, self.x, elem)

    def bar_psi_vec(self, k):
        return self.bar_psi(TorusElement.monomial(self.ylam, tuple(k)))

    def bar_projection(self, elem):
        """Quotient by the central boundary loops on the positive part."""
        cps = [self.x.index[c] for c in sorted(self.ld.cp_labels())]
        for k in elem.terms:
            if any(k[i] < 0 for i in cps):
                raise ValueError(
                    "element has a negative boundary-loop exponent; "
                    "outside the positive part"
                )
        return canonical_projection(elem, lambda k: all(k[i] == 0 for i in cps))


# ---------------------------------------------------------------------------
# curves through the lift


def curve_lift(ld, lam_curve):
    """Lift a normal curve of Lambda to a Delta-normal curve."""
    delta = ld.delta
    inv_tri = {lt: dt for dt, (lt, _) in ld.tri_map.items()}
    cps = ld.cp_labels()
    steps = []
    n = len(lam_curve.steps)
    core = []
    for (lt, i, o) in lam_curve.steps:
        dt = inv_tri[lt]
        _, rot = ld.tri_map[dt]
        core.append((dt, (i - rot) % 3, (o - rot) % 3))
    fake_set = set(ld.fake_tris.values())
    for j, (dt, i, o) in enumerate(core):
        steps.append((dt, i, o))
        out_side = delta.triangles[dt][o]
        cur = delta.other_side(out_side)
        while delta.side_triangle(cur) in fake_set:
            ft = delta.side_triangle(cur)
            slots = [s for s in range(3)
                     if delta.side_edge[delta.triangles[ft][s]] not in cps]
            entry = delta.triangles[ft].index(cur)
            exit_slot = [s for s in slots if s != entry][0]
            steps.append((ft, entry, exit_slot))
            cur = delta.other_side(delta.triangles[ft][exit_slot])
        nxt = core[(j + 1) % n]
        want = delta.triangles[nxt[0]][nxt[1]]
        if cur != want:
            raise SurfaceError("lifted curve does not close through the strip")
    return NormalCurve(delta, steps)


def is_equivariant(ld, alpha_d, values):
    """A state is omega-equivariant when it agrees across every fake
    triangle passage."""
    fake_set = set(ld.fake_tris.values())
    n = len(alpha_d.steps)
    for j, (t, i, o) in enumerate(alpha_d.steps):
        if t in fake_set:
            if values[(j - 1) % n] != values[j]:
                return False
    return True


def project_state(ld, alpha_d, values):
    """Restrict an equivariant Delta-state to the Lambda-crossings."""
    fake_set = set(ld.fake_tris.values())
    n = len(alpha_d.steps)
    out = []
    for j, (t, i, o) in enumerate(alpha_d.steps):
        if t in fake_set:
            continue
        # the crossing after the last non-fake step of each chain
        out.append(values[j])
    return tuple(out)


def project_curve(ld, alpha_d):
    """Collapse the fake steps of a lifted curve back to Lambda."""
    fake_set = set(ld.fake_tris.values())
    steps = []
    for (t, i, o) in alpha_d.steps:
        if t in fake_set:
            continue
        lt, rot = ld.tri_map[t]
        steps.append((lt, (i + rot) % 3, (o + rot) % 3))
    return NormalCurve(ld.lam, steps)


def equivariant_states(ld, alpha_d):
    """(equivariant admissible Delta-states, their Lambda restrictions)."""
    eq = []
    bars = []
    for values in enumerate_states(alpha_d):
        if is_equivariant(ld, alpha_d, values):
            eq.append(values)
            bars.append(project_state(ld, alpha_d, values))
    return eq, bars


# ---------------------------------------------------------------------------
# the punctured quantum trace


@dataclass
class BarTraceResult:
    shear_side: TorusElement       # over Y(Lambda)
    skein_side: TorusElement       # over the Delta torus, loops projected out
    state_count: int
    cross_checked: bool


def bar_trace(ld, lam_curve, bundle=None, base_edge=None):
    """Punctured trace via Lambda-states, cross-checked against the
    projected Delta pipeline."""
    bundle = bundle or BarBundle(ld)
    lam = ld.lam
    mult = lam_curve.multiplicities()
    if not any(m == 1 for m in mult.values()):
        raise ValueError("curve must cross some edge of Lambda exactly once")

    terms = {}
    count = 0
    for values in enumerate_states(lam_curve):
        count += 1
        u = u_of_state(lam_curve, values, base_edge)
        k = state_exponents(lam_curve, values, bundle.ylam.labels)
        if not is_balanced(k, lam):
            raise AssertionError("Lambda state exponent not balanced")
        coeff = Laurent.q_power(int(8 * u))
        terms[k] = terms.get(k, Laurent.zero()) + coeff
    shear = TorusElement(bundle.ylam, terms)
    skein = bundle.bar_psi(shear)

    alpha_d = curve_lift(ld, lam_curve)
    _, skein_d, _ = _delta_pipeline(ld, alpha_d, bundle)
    projected = bundle.bar_projection(skein_d)
    return BarTraceResult(shear, skein, count, projected == skein)


def _delta_pipeline(ld, alpha_d, bundle):
    from .trace import trace_once_edge
    return trace_once_edge(alpha_d, ld.delta, bundle=bundle.delta_bundle)
