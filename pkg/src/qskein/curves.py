"""Normal closed curves on a triangulated surface.

A curve is a cyclic sequence of steps (triangle, in-side, out-side); each
consecutive pair of steps crosses the edge glueing them.  The module
provides the admissible colorings and states of the state-sum trace, the
crossing-pattern classification of single crossings, and the phase
exponent u(s) of the once-crossing trace formula.

Corner convention.  Inside a triangle with counterclockwise side cycle
(..., x, y, ...) a curve segment cutting the corner between x and y sees
the ordered pair (x, y) where y follows x.  The forbidden value pair on
(value at x, value at y) is FORBIDDEN below; the choice is pinned by the
requirement that u(s) vanishes on admissible states of simple curves
(equivalently, that the assembled trace is natural under flips).  The
opposite choice amounts to reversing the orientation of every surface.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

# forbidden (value at ccw-first edge, value at ccw-second edge)
FORBIDDEN = (1, -1)


class CurveError(ValueError):
    pass


class NormalCurve:
    """Cyclic list of steps (triangle index, in slot, out slot)."""

    def __init__(self, T, steps):
        self.T = T
        norm = []
        for tri, i, o in steps:
            tri, i, o = int(tri), int(i), int(o)
            if not (0 <= tri < len(T.triangles)):
                raise CurveError("bad triangle index %d" % tri)
            if i == o or not (0 <= i < 3 and 0 <= o < 3):
                raise CurveError("step must enter and exit distinct sides")
            norm.append((tri, i, o))
        if not norm:
            raise CurveError("empty curve")
        self.steps = tuple(norm)
        self._validate()

    @staticmethod
    def from_sides(T, side_steps):
        """Steps given as (in_side_id, out_side_id) pairs."""
        steps = []
        for sin, sout in side_steps:
            t1, i = T.side_pos(sin)
            t2, o = T.side_pos(sout)
            if t1 != t2:
                raise CurveError("in and out sides of a step must share a triangle")
            steps.append((t1, i, o))
        return NormalCurve(T, steps)

    def _validate(self):
        T = self.T
        n = len(self.steps)
        for idx in range(n):
            t, i, o = self.steps[idx]
            out_side = T.triangles[t][o]
            mate = T.other_side(out_side)
            if mate is None:
                raise CurveError("curve crosses boundary edge %s"
                                 % T.edge_of_side(out_side))
            t2, i2, _ = self.steps[(idx + 1) % n]
            in_side = T.triangles[t2][i2]
            if mate != in_side:
                raise CurveError(
                    "steps %d -> %d do not glue (%s vs %s)"
                    % (idx, (idx + 1) % n, mate, in_side)
                )
        # Bounces (enter and exit the same side) are rejected above via
        # in != out.  A would-be bigon between the curve and an edge inside
        # the quadrilateral of two consecutive steps always traps a marked
        # point once bounces are excluded (the cut-open quadrilateral is an
        # embedded square whose corners are all marked), so no further
        # local check can fire; u-turn pairs are exposed for callers who
        # want to audit minimal position globally.

    def uturn_pairs(self):
        """Consecutive step pairs that re-cross the edge they came from.

        These are the only candidates for curve-edge bigons; whether one
        is removable depends on global position, which the caller owns.
        """
        T = self.T
        n = len(self.steps)
        out = []
        for idx in range(n):
            t, i, o = self.steps[idx]
            t2, i2, o2 = self.steps[(idx + 1) % n]
            in_side = T.triangles[t][i]
            out2_side = T.triangles[t2][o2]
            if T.other_side(in_side) == out2_side and n > 2:
                out.append((idx, (idx + 1) % n, T.edge_of_side(in_side)))
        return out

    # -- crossings -------------------------------------------------------

    def __len__(self):
        return len(self.steps)

    def crossing_edges(self):
        """Edge label crossed between step i and step i+1, for each i."""
        T = self.T
        return tuple(
            T.edge_of_side(T.triangles[t][o]) for t, i, o in self.steps
        )

    def multiplicities(self):
        mult = {}
        for e in self.crossing_edges():
            mult[e] = mult.get(e, 0) + 1
        return mult

    def crossed_edges(self):
        return tuple(sorted(self.multiplicities()))

    def reversed(self):
        n = len(self.steps)
        return NormalCurve(
            self.T, [(t, o, i) for t, i, o in reversed(self.steps)]
        )

    def rotated(self, r):
        n = len(self.steps)
        return NormalCurve(self.T, [self.steps[(i + r) % n] for i in range(n)])

    def to_json(self):
        return {
            "steps": [
                {
                    "tri": t,
                    "in": self.T.triangles[t][i],
                    "out": self.T.triangles[t][o],
                }
                for t, i, o in self.steps
            ]
        }

    @staticmethod
    def from_json(T, data):
        return NormalCurve.from_sides(
            T, [(st["in"], st["out"]) for st in data["steps"]]
        )

    def __repr__(self):
        return "NormalCurve(%d steps over %s)" % (len(self.steps), self.crossed_edges())


def _cut_corner(t, i, o):
    """The corner cut by a step through slots i -> o of triangle t."""
    if o == (i + 1) % 3:
        return (t, o)
    return (t, i)


def _turn(i, o):
    """+1 when the out side follows the in side counterclockwise."""
    return 1 if o == (i + 1) % 3 else -1


def step_corner_pair(T, step):
    """Ordered (ccw-first edge, ccw-second edge) of the cut corner."""
    t, i, o = step
    ein = T.edge_of_side(T.triangles[t][i])
    eout = T.edge_of_side(T.triangles[t][o])
    if o == (i + 1) % 3:
        return ein, eout
    return eout, ein


def classify(alpha, T=None):
    """'simple', 'almost-simple', or 'general' by edge multiplicities."""
    mult = alpha.multiplicities()
    over = [e for e, m in mult.items() if m > 1]
    if not over:
        return "simple"
    if len(over) == 1 and mult[over[0]] == 2:
        return "almost-simple"
    return "general"


# ---------------------------------------------------------------------------
# states and colorings


def _step_value_slots(alpha):
    """Per step: (crossing index at the in side, crossing index at out side).

    Crossing j sits on the edge between step j and step j+1; so step j is
    entered through crossing j-1 and exited through crossing j.
    """
    n = len(alpha.steps)
    return [((j - 1) % n, j) for j in range(n)]


def _admissible(alpha, values):
    T = alpha.T
    slots = _step_value_slots(alpha)
    for j, step in enumerate(alpha.steps):
        t, i, o = step
        vin = values[slots[j][0]]
        vout = values[slots[j][1]]
        if o == (i + 1) % 3:
            pair = (vin, vout)
        else:
            pair = (vout, vin)
        if pair == FORBIDDEN:
            return False
    return True


def enumerate_states(alpha):
    """All admissible +-1 assignments on the crossing points of alpha."""
    n = len(alpha.steps)
    out = []
    for values in product((1, -1), repeat=n):
        if _admissible(alpha, values):
            out.append(values)
    return out


def enumerate_colorings(alpha):
    """Admissible colorings of a simple curve: maps edge -> +-1 on the
    crossed edges.  In natural bijection with the admissible states."""
    if classify(alpha) != "simple":
        raise CurveError("colorings are defined for simple curves only")
    edges = alpha.crossing_edges()
    out = []
    for values in enumerate_states(alpha):
        out.append({e: v for e, v in zip(edges, values)})
    return out


def state_exponents(alpha, values, labels):
    """k_s over the given inner-edge label order: per-edge sum of values."""
    k = {lab: 0 for lab in labels}
    for e, v in zip(alpha.crossing_edges(), values):
        if e not in k:
            raise CurveError("curve crosses %s outside the label set" % e)
        k[e] += v
    return tuple(k[lab] for lab in labels)


# ---------------------------------------------------------------------------
# crossing patterns


def crossing_pattern(alpha, edge):
    """'unchanged' | 'left-right' | 'right-left' | 'multi' at the edge."""
    mult = alpha.multiplicities().get(edge, 0)
    if mult == 0:
        raise CurveError("curve does not cross %s" % edge)
    if mult > 1:
        return "multi"
    eps = _epsilon_at(alpha, edge)
    return {1: "right-left", -1: "left-right", 0: "unchanged"}[eps]


def _epsilon_at(alpha, edge):
    n = len(alpha.steps)
    ce = alpha.crossing_edges()
    j = ce.index(edge)
    t, i, o = alpha.steps[j]                 # step before the crossing
    t2, i2, o2 = alpha.steps[(j + 1) % n]    # step after the crossing
    return (_turn(i, o) - _turn(i2, o2)) // 2


def epsilon_vector(alpha, labels):
    """The pattern exponents: +1 right-left, -1 left-right, 0 otherwise."""
    mult = alpha.multiplicities()
    eps = {lab: 0 for lab in labels}
    for e, m in mult.items():
        if m == 1:
            eps[e] = _epsilon_at(alpha, e)
    return tuple(eps[lab] for lab in labels)


# ---------------------------------------------------------------------------
# the phase exponent u(s)


def _base_rotation(alpha, base_edge=None):
    mult = alpha.multiplicities()
    ce = alpha.crossing_edges()
    if base_edge is None:
        once = [e for e in ce if mult[e] == 1]
        if not once:
            raise CurveError("no edge crossed exactly once; u(s) needs one")
        base_edge = sorted(once)[0]
    else:
        if mult.get(base_edge, 0) != 1:
            raise CurveError("base edge must be crossed exactly once")
    j = ce.index(base_edge)
    # rotate so the base crossing separates the last and first step
    return alpha.rotated((j + 1) % len(alpha.steps)), base_edge


def u_of_state(alpha, values, base_edge=None):
    """The half-integer exponent of q attached to an admissible state.

    Splits the surface along the inner edges, lifts the crossing points to
    the split triangles in traversal order, and accumulates the local face
    matrix pairings -1/2 Q_t(e(u), e(v)) s(u) s(v) over ordered pairs
    u << v inside each split triangle, where pairs forming one curve
    interval are excluded.  The state is carried along the rotation to the
    base crossing.
    """
    rot, base = _base_rotation(alpha, base_edge)
    # re-align values with the rotated crossing list
    n = len(alpha.steps)
    ce = alpha.crossing_edges()
    j = ce.index(base) if base_edge is None else ce.index(base_edge)
    vals = tuple(values[(j + 1 + i) % n] for i in range(n))
    return _u_from_rotated(rot, vals)


def _u_from_rotated(rot, vals):
    # interval i (1-based) = step i-1; its entry point lifts crossing i-2,
    # its exit lifts crossing i-1 (indices into the rotated crossing list)
    n = len(rot.steps)
    per_tri = {}
    for idx, (t, i, o) in enumerate(rot.steps):
        entry = (2 * idx, i, vals[(idx - 1) % n], idx)
        exit_ = (2 * idx + 1, o, vals[idx], idx)
        per_tri.setdefault(t, []).extend([entry, exit_])
    total2 = 0  # twice u(s)
    for t, pts in per_tri.items():
        m = len(pts)
        for x in range(m):
            for y in range(x + 1, m):
                pos1, slot1, v1, int1 = pts[x]
                pos2, slot2, v2, int2 = pts[y]
                if int1 == int2:
                    continue  # the pair (u'_i, u''_i) is excluded
                q = _local_face(slot1, slot2)
                total2 -= q * v1 * v2
    return Fraction(total2, 2)


def _local_face(slot1, slot2):
    if slot2 == (slot1 + 1) % 3:
        return 1
    if slot2 == (slot1 + 2) % 3:
        return -1
    return 0


def u_split_parts(alpha, values, base_edge=None):
    """(u1, u2) with u = u1 + u2: the normalized-pair part over the curve
    intervals and the reordering part over all lifted pairs."""
    rot, base = _base_rotation(alpha, base_edge)
    n = len(alpha.steps)
    ce = alpha.crossing_edges()
    j = ce.index(base) if base_edge is None else ce.index(base_edge)
    vals = tuple(values[(j + 1 + i) % n] for i in range(n))
    pts = []
    for idx, (t, i, o) in enumerate(rot.steps):
        pts.append((t, i, vals[(idx - 1) % n], idx))
        pts.append((t, o, vals[idx], idx))
    u1_2 = 0
    for idx, (t, i, o) in enumerate(rot.steps):
        u1_2 += _local_face(i, o) * vals[(idx - 1) % n] * vals[idx]
    u2_2 = 0
    for x in range(len(pts)):
        for y in range(x + 1, len(pts)):
            t1, s1, v1, _ = pts[x]
            t2, s2, v2, _ = pts[y]
            if t1 != t2:
                continue
            u2_2 -= _local_face(s1, s2) * v1 * v2
    return Fraction(u1_2, 2), Fraction(u2_2, 2)


# ---------------------------------------------------------------------------
# transport of a curve through a flip


def transport_curve(alpha, T, flip_data, T_new):
    """Rewrite a Delta-normal curve through the flip recorded in flip_data.

    The curve is cut at every crossing of an edge other than the flipped
    one; each resulting run lies either in an untouched triangle (copied
    verbatim) or inside the flip quadrilateral, where it is re-routed
    through the two new triangles.
    """
    t_quad = {flip_data.t1, flip_data.t2}
    n1, n2 = flip_data.new_sides
    quad_pos = {s: T_new.side_pos(s) for s in flip_data.quad_sides}
    pos_n1, pos_n2 = T_new.side_pos(n1), T_new.side_pos(n2)

    def emit(side_in, side_out):
        ti, ii = quad_pos[side_in]
        to, oo = quad_pos[side_out]
        if ti == to:
            return [(ti, ii, oo)]
        mid_out, mid_in = (pos_n1, pos_n2) if pos_n1[0] == ti else (pos_n2, pos_n1)
        return [(ti, ii, mid_out[1]), (to, mid_in[1], oo)]

    n = len(alpha.steps)
    ce = alpha.crossing_edges()
    cuts = [i for i in range(n) if ce[i] != flip_data.a]
    if not cuts:
        raise CurveError("curve crosses only the flipped edge")
    out_steps = []
    for ci, cut in enumerate(cuts):
        nxt = cuts[(ci + 1) % len(cuts)]
        run = []
        j = (cut + 1) % n
        while True:
            run.append(alpha.steps[j])
            if j == nxt:
                break
            j = (j + 1) % n
        if run[0][0] not in t_quad:
            if len(run) != 1:
                raise CurveError("unexpected multi-step run outside the square")
            out_steps.append(run[0])
            continue
        first_t, first_in, _ = run[0]
        last_t, _, last_out = run[-1]
        out_steps.extend(
            emit(T.triangles[first_t][first_in], T.triangles[last_t][last_out])
        )
    return NormalCurve(T_new, out_steps)
