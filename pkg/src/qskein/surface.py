"""Triangulated marked and generalized marked surfaces.

A surface is stored as a rotation system: a list of triangles, each with
three sides in counterclockwise order, plus an orientation-reversing
involution pairing the glued (inner) sides.  Side i of a triangle runs
from corner i to corner i+1 (mod 3), so gluing side (t,i) to (t',j)
identifies corner (t,i) with (t',j+1) and corner (t,i+1) with (t',j).
Vertices (marked points), boundary structure, the face matrix Q, the
vertex matrix P and the duality submatrices Q-ring and H are all derived
from this data.

Edge = equivalence class of sides under the gluing; an edge is inner when
its class has two sides, boundary when it has one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np


class SurfaceError(ValueError):
    pass


def _norm_side(s):
    return str(s)


class Triangulation:
    def __init__(self, triangles, gluing, side_edge=None, vertex_hints=None):
        """triangles: list of 3-tuples of side ids (strings, globally unique).

        gluing: iterable of side-id pairs to identify (orientation
        reversing by convention).  side_edge: optional map side -> edge
        label; unglued sides default to their own id as edge label, glued
        pairs to the lexicographically smaller side id.  vertex_hints:
        optional {side_id: (start_name, end_name)} used to propagate
        human-readable marked point names through flips.
        """
        self.triangles = tuple(tuple(_norm_side(s) for s in tri) for tri in triangles)
        for tri in self.triangles:
            if len(tri) != 3:
                raise SurfaceError("each triangle needs exactly 3 sides")
        all_sides = [s for tri in self.triangles for s in tri]
        if len(set(all_sides)) != len(all_sides):
            raise SurfaceError("side ids must be globally unique")
        self.sides = tuple(all_sides)
        self._side_pos = {}
        for t, tri in enumerate(self.triangles):
            for i, s in enumerate(tri):
                self._side_pos[s] = (t, i)

        glue = {}
        for pair in gluing:
            a, b = _norm_side(pair[0]), _norm_side(pair[1])
            if a == b:
                raise SurfaceError("side %s glued to itself" % a)
            for s in (a, b):
                if s not in self._side_pos:
                    raise SurfaceError("unknown side %s in gluing" % s)
                if s in glue:
                    raise SurfaceError("side %s glued twice" % s)
            glue[a] = b
            glue[b] = a
        self.glue = glue

        if side_edge is None:
            side_edge = {}
        self.side_edge = {}
        for s in self.sides:
            if s in side_edge:
                self.side_edge[s] = str(side_edge[s])
            elif s in glue:
                self.side_edge[s] = str(side_edge.get(glue[s], min(s, glue[s])))
            else:
                self.side_edge[s] = s
        for a, b in glue.items():
            if self.side_edge[a] != self.side_edge[b]:
                raise SurfaceError(
                    "glued sides %s,%s carry different edge labels" % (a, b)
                )

        self._vertex_hints = dict(vertex_hints or {})
        self._derive()

    # -- derived structure ---------------------------------------------

    def _derive(self):
        # edges and their side classes
        classes = {}
        for s in self.sides:
            classes.setdefault(self.side_edge[s], []).append(s)
        for lab, ss in classes.items():
            if len(ss) > 2:
                raise SurfaceError("edge label %s used by %d sides" % (lab, len(ss)))
            if len(ss) == 2 and self.glue.get(ss[0]) != ss[1]:
                raise SurfaceError("edge label %s shared by unglued sides" % lab)
        self.edge_sides = {lab: tuple(sorted(ss)) for lab, ss in classes.items()}
        self.edges = tuple(sorted(self.edge_sides))
        self.inner_edges = tuple(
            e for e in self.edges if len(self.edge_sides[e]) == 2
        )
        self.boundary_edges = tuple(
            e for e in self.edges if len(self.edge_sides[e]) == 1
        )

        # vertices: union-find over corners (t,i) = start of side i
        corners = [(t, i) for t in range(len(self.triangles)) for i in range(3)]
        parent = {c: c for c in corners}

        def find(c):
            while parent[c] != c:
                parent[c] = parent[parent[c]]
                c = parent[c]
            return c

        def union(c1, c2):
            r1, r2 = find(c1), find(c2)
            if r1 != r2:
                parent[r1] = r2

        for s, s2 in self.glue.items():
            t, i = self._side_pos[s]
            t2, j = self._side_pos[s2]
            union((t, i), (t2, (j + 1) % 3))
            union((t, (i + 1) % 3), (t2, j))
        groups = {}
        for c in corners:
            groups.setdefault(find(c), []).append(c)
        self.vertices = tuple(frozenset(g) for g in groups.values())
        self.vertex_of = {}
        for vi, g in enumerate(self.vertices):
            for c in g:
                self.vertex_of[c] = vi

        # a vertex is on the boundary iff some incident side is unglued
        on_bd = set()
        for s in self.sides:
            if s not in self.glue:
                t, i = self._side_pos[s]
                on_bd.add(self.vertex_of[(t, i)])
                on_bd.add(self.vertex_of[(t, (i + 1) % 3)])
        self.boundary_vertices = frozenset(on_bd)
        self.interior_vertices = frozenset(
            vi for vi in range(len(self.vertices)) if vi not in on_bd
        )

        # self-folded triangles: a triangle glued to itself along two sides
        self.self_folded = tuple(
            any(self.glue.get(tri[i]) in tri for i in range(3))
            for tri in self.triangles
        )

        # connectivity over triangles
        if self.triangles:
            seen = {0}
            stack = [0]
            while stack:
                t = stack.pop()
                for s in self.triangles[t]:
                    s2 = self.glue.get(s)
                    if s2 is not None:
                        t2 = self._side_pos[s2][0]
                        if t2 not in seen:
                            seen.add(t2)
                            stack.append(t2)
            self.connected = len(seen) == len(self.triangles)
        else:
            self.connected = False

        self.surface_class = (
            "marked"
            if not self.interior_vertices and not any(self.self_folded)
            else "generalized"
        )

        # vertex names from hints, propagated through side classes
        names = {}
        for s, (n0, n1) in self._vertex_hints.items():
            if s in self._side_pos:
                t, i = self._side_pos[s]
                if n0 is not None:
                    names[self.vertex_of[(t, i)]] = str(n0)
                if n1 is not None:
                    names[self.vertex_of[(t, (i + 1) % 3)]] = str(n1)
        self.vertex_names = names

    # -- basic queries ---------------------------------------------------

    def side_pos(self, s):
        return self._side_pos[s]

    def side_triangle(self, s):
        return self._side_pos[s][0]

    def edge_of_side(self, s):
        return self.side_edge[s]

    def other_side(self, s):
        return self.glue.get(s)

    def is_inner(self, edge):
        return edge in self.inner_edges

    def triangle_edges(self, t):
        return tuple(self.side_edge[s] for s in self.triangles[t])

    def side_endpoint_names(self, s):
        """(start_name, end_name) of a side, from the derived vertex names."""
        t, i = self._side_pos[s]
        v0 = self.vertex_of[(t, i)]
        v1 = self.vertex_of[(t, (i + 1) % 3)]
        return self.vertex_names.get(v0), self.vertex_names.get(v1)

    # -- validation --------------------------------------------------------

    def validate(self, require_marked=False):
        """Check the triangulability constraints; raise SurfaceError if bad."""
        if not self.triangles:
            raise SurfaceError("empty triangulation")
        if not self.connected:
            raise SurfaceError("surface is not connected")
        # every boundary component carries a marked point automatically
        # (all vertices of a triangulation are marked); the excluded small
        # cases cannot even be encoded, but guard against degenerate data.
        V = len(self.vertices)
        E = len(self.edges)
        F = len(self.triangles)
        chi = V - E + F
        closed = not self.boundary_edges
        if closed and chi == 2 and V <= 2:
            raise SurfaceError("sphere with at most two marked points is excluded")
        if chi == 1 and V == 1:
            raise SurfaceError("monogon is excluded")
        if chi == 1 and V == 2 and F == 0:
            raise SurfaceError("digon is excluded")
        if require_marked and self.surface_class != "marked":
            if self.interior_vertices:
                raise SurfaceError("interior marked points: not a marked surface")
            raise SurfaceError("self-folded triangle: not a marked surface")
        return True

    # -- face matrix -------------------------------------------------------

    def edge_index(self, edges=None):
        edges = edges or self.edges
        return {e: i for i, e in enumerate(edges)}

    def triangle_face_matrix(self, t):
        """The contribution Q_tau of triangle t, over all edges of Delta."""
        n = len(self.edges)
        Q = np.zeros((n, n), dtype=np.int64)
        if self.self_folded[t]:
            return Q
        idx = self.edge_index()
        labs = self.triangle_edges(t)
        for i in range(3):
            a, b = idx[labs[i]], idx[labs[(i + 1) % 3]]
            Q[a, b] += 1
            Q[b, a] -= 1
        return Q

    def face_matrix(self):
        n = len(self.edges)
        Q = np.zeros((n, n), dtype=np.int64)
        for t in range(len(self.triangles)):
            Q += self.triangle_face_matrix(t)
        return Q

    def face_submatrices(self):
        """(Q, Qring, H): full face matrix, inner-inner block and inner rows."""
        Q = self.face_matrix()
        idx = self.edge_index()
        rows = [idx[e] for e in self.inner_edges]
        H = Q[rows, :]
        Qring = Q[np.ix_(rows, rows)]
        return Q, Qring, H

    def row_action(self, k, t):
        """k Q_tau for an exponent vector k over the edges of Delta."""
        k = np.asarray(k, dtype=np.int64)
        return tuple(int(x) for x in k @ self.triangle_face_matrix(t))

    # -- vertex fans and the vertex matrix ----------------------------------

    def vertex_fan(self, vi):
        """Half-edges at a boundary vertex in angular order.

        Returns a list of side ids: the first and last are boundary sides,
        and each inner edge incident to the vertex appears once per
        half-edge (a glued side pair is collapsed to its first member).
        The order sweeps the interior counterclockwise; the duality test
        PH^T = -4 id pins this convention.
        """
        if vi in self.interior_vertices:
            raise SurfaceError("vertex %d is interior; no boundary fan" % vi)
        # start corner: the one whose outgoing side (t,i) is unglued
        start = None
        for (t, i) in self.vertices[vi]:
            if self.triangles[t][i] not in self.glue:
                start = (t, i)
                break
        if start is None:
            raise SurfaceError("no boundary side at vertex %d" % vi)
        t, i = start
        fan = [self.triangles[t][i]]
        corner = start
        while True:
            t, i = corner
            prev_side = self.triangles[t][(i - 1) % 3]
            fan.append(prev_side)
            mate = self.glue.get(prev_side)
            if mate is None:
                break
            t2, j = self._side_pos[mate]
            corner = (t2, j)
        return fan

    def vertex_matrix(self):
        """Muller's orientation matrix P over all edges; marked surfaces only."""
        if self.surface_class != "marked":
            raise SurfaceError("vertex matrix needs a marked surface")
        n = len(self.edges)
        idx = self.edge_index()
        P = np.zeros((n, n), dtype=np.int64)
        for vi in range(len(self.vertices)):
            fan = self.vertex_fan(vi)
            labs = [idx[self.side_edge[s]] for s in fan]
            for i in range(len(labs)):
                for j in range(len(labs)):
                    if i == j:
                        continue
                    P[labs[i], labs[j]] += 1 if j > i else -1
        return P

    def duality_check(self):
        """Verify PH^T = -4 id, HPH^T = -4 Qring and rank H = #inner edges."""
        Q, Qring, H = self.face_submatrices()
        P = self.vertex_matrix()
        idx = self.edge_index()
        rows = [idx[e] for e in self.inner_edges]
        want = np.zeros((len(self.edges), len(self.inner_edges)), dtype=np.int64)
        for col, r in enumerate(rows):
            want[r, col] = -4
        PHt = P @ H.T
        ok1 = np.array_equal(PHt, want)
        HPHt = H @ P @ H.T
        ok2 = np.array_equal(HPHt, -4 * Qring)
        rank = np.linalg.matrix_rank(H.astype(np.float64)) if H.size else 0
        ok3 = int(rank) == len(self.inner_edges)
        report = {
            "PHt_ok": bool(ok1),
            "HPHt_ok": bool(ok2),
            "rank_ok": bool(ok3),
            "rank": int(rank),
            "inner": len(self.inner_edges),
        }
        if not ok1:
            bad = np.argwhere(PHt != want)
            report["PHt_offending"] = [
                (self.edges[i], self.inner_edges[j], int(PHt[i, j]))
                for i, j in bad[:5]
            ]
        if not ok2:
            bad = np.argwhere(HPHt != -4 * Qring)
            report["HPHt_offending"] = [
                (self.inner_edges[i], self.inner_edges[j], int(HPHt[i, j]))
                for i, j in bad[:5]
            ]
        report["ok"] = bool(ok1 and ok2 and ok3)
        return report

    # -- flips ---------------------------------------------------------------

    def flip(self, a, new_label=None):
        """Flip the inner edge a; returns (new Triangulation, FlipData)."""
        if a not in self.edges:
            raise SurfaceError("unknown edge %s" % a)
        if a not in self.inner_edges:
            raise SurfaceError("cannot flip boundary edge %s" % a)
        s1, s2 = self.edge_sides[a]
        t1 = self._side_pos[s1][0]
        t2 = self._side_pos[s2][0]
        if t1 == t2:
            raise SurfaceError("edge %s bounds a single triangle; not flippable" % a)

        def rotated(t, s):
            tri = self.triangles[t]
            i = tri.index(s)
            return tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3]

        sa, sb, sc = rotated(t1, s1)
        sa2, sd, se = rotated(t2, s2)
        b, c = self.side_edge[sb], self.side_edge[sc]
        d, e = self.side_edge[sd], self.side_edge[se]
        if b == d and c == e:
            raise SurfaceError("degenerate flip square at %s" % a)
        coincidence = "b=d" if b == d else ("c=e" if c == e else "distinct")

        a_star = new_label or self._derive_flip_label(sb, sc, sd, se, a)
        if a_star in self.edges and a_star != a:
            a_star = a + "*"
            while a_star in self.edges:
                a_star += "*"
        n1, n2 = a_star + "#1", a_star + "#2"
        while n1 in self._side_pos or n2 in self._side_pos:
            n1 += "'"
            n2 += "'"

        triangles = list(self.triangles)
        triangles[t1] = (sb, n1, se)
        triangles[t2] = (sc, sd, n2)
        gluing = [
            (x, y)
            for x, y in self.glue.items()
            if x < y and {x, y} != {s1, s2}
        ]
        gluing.append((n1, n2))
        side_edge = {
            s: lab for s, lab in self.side_edge.items() if s not in (s1, s2)
        }
        side_edge[n1] = a_star
        side_edge[n2] = a_star

        hints = self._collect_vertex_hints()
        # endpoints of the new diagonal: corner between b and c, corner
        # between d and e (opposite corners of the quadrilateral)
        pb = hints.get(sb)
        pe = hints.get(se)
        if pb and pe:
            # n1 runs from end of sb to start of se in triangle (sb, n1, se)
            hints[n1] = (pb[1], pe[0])
            hints[n2] = (pe[0], pb[1])
        new_tri = Triangulation(triangles, gluing, side_edge, hints)
        data = FlipData(
            a=a, a_star=a_star, b=b, c=c, d=d, e=e,
            coincidence=coincidence, t1=t1, t2=t2,
            quad_sides=(sb, sc, sd, se), new_sides=(n1, n2),
        )
        return new_tri, data

    def _collect_vertex_hints(self):
        hints = {}
        for s in self.sides:
            n0, n1 = self.side_endpoint_names(s)
            if n0 is not None or n1 is not None:
                hints[s] = (n0, n1)
        return hints

    def _derive_flip_label(self, sb, sc, sd, se, a):
        hints = self._collect_vertex_hints()
        pb = hints.get(sb)
        pe = hints.get(se)
        if pb and pb[1] is not None and pe and pe[0] is not None:
            u, v = pb[1], pe[0]
            try:
                lo, hi = sorted([u, v], key=int)
            except ValueError:
                lo, hi = sorted([u, v])
            return "e%s_%s" % (lo, hi)
        return a + "*"

    # -- structural equality ---------------------------------------------

    def canonical_form(self):
        tris = []
        for t, tri in enumerate(self.triangles):
            labs = self.triangle_edges(t)
            rots = [tuple(labs[(i + j) % 3] for j in range(3)) for i in range(3)]
            tris.append(min(rots))
        Q = self.face_matrix()
        return (
            tuple(sorted(tris)),
            tuple(self.boundary_edges),
            Q.tobytes(),
            len(self.vertices),
        )

    def same_as(self, other):
        return self.canonical_form() == other.canonical_form()

    # -- serialization ------------------------------------------------------

    def to_json(self):
        return {
            "triangles": [{"sides": list(tri)} for tri in self.triangles],
            "gluing": sorted([x, y] for x, y in self.glue.items() if x < y),
            "edge_labels": dict(sorted(self.side_edge.items())),
            "vertex_hints": {
                s: list(self.side_endpoint_names(s))
                for s in self.sides
                if any(n is not None for n in self.side_endpoint_names(s))
            },
        }

    @staticmethod
    def from_json(data):
        tris = [tuple(t["sides"]) for t in data["triangles"]]
        hints = {
            s: tuple(v) for s, v in (data.get("vertex_hints") or {}).items()
        }
        return Triangulation(
            tris, data.get("gluing", []), data.get("edge_labels"), hints
        )

    @staticmethod
    def load(path):
        with open(path) as fh:
            return Triangulation.from_json(json.load(fh))

    def __repr__(self):
        return "Triangulation(%d triangles, %d edges (%d inner), class=%s)" % (
            len(self.triangles),
            len(self.edges),
            len(self.inner_edges),
            self.surface_class,
        )


@dataclass(frozen=True)
class FlipData:
    a: str
    a_star: str
    b: str
    c: str
    d: str
    e: str
    coincidence: str
    t1: int
    t2: int
    quad_sides: tuple
    new_sides: tuple


# ---------------------------------------------------------------------------
# builders


def polygon(n):
    """Fan triangulation of the marked n-gon (disk, n boundary points)."""
    if n < 3:
        raise SurfaceError("polygon needs at least 3 vertices")

    def lab(i, j):
        lo, hi = sorted((i, j))
        return "e%d_%d" % (lo, hi)

    triangles = []
    side_edge = {}
    hints = {}
    gluing = []
    diag_sides = {}
    for t, i in enumerate(range(1, n - 1)):
        # triangle (0, i, i+1) counterclockwise
        s_left = "T%d.a" % t    # 0 -> i
        s_bot = "T%d.b" % t     # i -> i+1
        s_right = "T%d.c" % t   # i+1 -> 0
        triangles.append((s_left, s_bot, s_right))
        side_edge[s_left] = lab(0, i)
        side_edge[s_bot] = lab(i, i + 1)
        side_edge[s_right] = lab(i + 1, 0)
        hints[s_left] = (str(0), str(i))
        hints[s_bot] = (str(i), str(i + 1))
        hints[s_right] = (str(i + 1), str(0))
        if 1 < i:
            gluing.append((diag_sides[lab(0, i)], s_left))
        if i + 1 < n - 1:
            diag_sides[lab(0, i + 1)] = s_right
    return Triangulation(triangles, gluing, side_edge, hints)


def annulus():
    """The annulus with one marked point on each boundary circle.

    Two triangles, two inner edges d1, d2 joining the marked points u, v,
    and a boundary loop at each marked point.
    """
    # square u,u,v,v with the two vertical sides glued
    t0 = ("T0.b1", "T0.d1", "T0.d2")   # b1: u->u, d1: u->v, d2: v->u
    t1 = ("T1.d2", "T1.b2", "T1.d1")   # d2: u->v, b2: v->v, d1: v->u
    side_edge = {
        "T0.b1": "b1", "T0.d1": "d1", "T0.d2": "d2",
        "T1.d2": "d2", "T1.b2": "b2", "T1.d1": "d1",
    }
    gluing = [("T0.d1", "T1.d1"), ("T0.d2", "T1.d2")]
    hints = {
        "T0.b1": ("u", "u"), "T0.d1": ("u", "v"), "T0.d2": ("v", "u"),
        "T1.d2": ("u", "v"), "T1.b2": ("v", "v"), "T1.d1": ("v", "u"),
    }
    return Triangulation([t0, t1], gluing, side_edge, hints)


def torus_one_marked():
    """The closed torus with one (interior) marked point: 2 triangles,
    3 edges a, b, c.  A generalized marked surface."""
    t0 = ("T0.a", "T0.b", "T0.c")   # lower triangle: a bottom, b right, c anti-diagonal
    t1 = ("T1.c", "T1.a", "T1.b")   # upper triangle
    side_edge = {
        "T0.a": "a", "T0.b": "b", "T0.c": "c",
        "T1.a": "a", "T1.b": "b", "T1.c": "c",
    }
    gluing = [("T0.a", "T1.a"), ("T0.b", "T1.b"), ("T0.c", "T1.c")]
    return Triangulation([t0, t1], gluing, side_edge)


def sphere_three_marked():
    """The sphere with three marked points: double of a triangle."""
    t0 = ("T0.a", "T0.b", "T0.c")
    t1 = ("T1.a", "T1.c", "T1.b")
    side_edge = {
        "T0.a": "a", "T0.b": "b", "T0.c": "c",
        "T1.a": "a", "T1.b": "b", "T1.c": "c",
    }
    gluing = [("T0.a", "T1.a"), ("T0.b", "T1.b"), ("T0.c", "T1.c")]
    return Triangulation([t0, t1], gluing, side_edge)
