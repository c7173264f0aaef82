"""Characteristic sublinks, band sums, and the Arf invariant via Fox calculus.

The band sum machinery works on a strand-level model of the diagram:
crossings hold working arc ids in their four slots, every arc knows its two
end slots, and components are cyclic arc sequences.  Faces of the
underlying 4-valent planar map are traced from the counterclockwise slot
order, and a band between two components is routed along a shortest dual
path between faces incident to the chosen attachment arcs.  The band
passes under every strand it meets, so each crossed strand contributes two
new crossings with the band as under-strand; when the attachment sides are
incompatible a single half-twist crossing between the two band sides is
inserted at the far end.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .diagram import (
    Crossing,
    FramedLink,
    PDCode,
    _pd_components,
    _resolve_over_directions,
)
from .errors import (
    InternalInvariantViolation,
    LengthMismatch,
    MalformedInput,
    NotAKnot,
)


@dataclass(frozen=True)
class KnotDiagram:
    """A one-component diagram plus a record of how it was produced."""

    pd: PDCode
    over_in: tuple[int, ...]
    derivation: tuple[str, ...] = ()

    @classmethod
    def build(cls, crossings, derivation: tuple[str, ...] = ()) -> "KnotDiagram":
        xs = tuple(tuple(int(x) for x in t) for t in crossings)
        comps, succ = _pd_components(xs)
        if xs and len(comps) != 1:
            raise NotAKnot(f"diagram has {len(comps)} components")
        over_in = _resolve_over_directions(xs, succ)
        return cls(PDCode(xs, 2 * len(xs)), over_in, derivation)

    @classmethod
    def unknot(cls, derivation: tuple[str, ...] = ()) -> "KnotDiagram":
        return cls(PDCode((), 0), (), derivation)

    @property
    def crossings(self) -> tuple[Crossing, ...]:
        return self.pd.crossings

    def is_crossingless(self) -> bool:
        return not self.pd.crossings


@dataclass(frozen=True)
class IntPolynomial:
    """Laurent polynomial in t with integer coefficients; no zero terms stored."""

    coeffs: tuple[tuple[int, int], ...]  # sorted (exponent, coefficient) pairs

    @classmethod
    def from_map(cls, d: dict[int, int]) -> "IntPolynomial":
        return cls(tuple(sorted((e, c) for e, c in d.items() if c != 0)))

    def as_map(self) -> dict[int, int]:
        return dict(self.coeffs)

    def at_minus_one(self) -> int:
        return sum(-c if e % 2 else c for e, c in self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.coeffs:
            if e == 0:
                parts.append(f"{c:+d}")
            elif e == 1:
                parts.append(f"{c:+d}*t")
            else:
                parts.append(f"{c:+d}*t^{e}")
        return " ".join(parts)


def mirror_knot(k: KnotDiagram) -> KnotDiagram:
    """Swap over and under strands at every crossing of a knot diagram."""
    new = []
    for t, oi in zip(k.crossings, k.over_in):
        a, b, c, d = t
        new.append((d, a, b, c) if oi == 3 else (b, c, d, a))
    return KnotDiagram.build(new, derivation=k.derivation + ("mirrored",))


def _arc_ends(crossings, over_in):
    """Map each arc to its head (incoming) and tail (outgoing) end slots."""
    ends: dict[int, dict[str, tuple[int, int]]] = {}
    for k, t in enumerate(crossings):
        oi = over_in[k]
        oo = 4 - oi
        for kind, slot in (("head", 0), ("tail", 2), ("head", oi), ("tail", oo)):
            ends.setdefault(t[slot], {})[kind] = (k, slot)
    return ends


def characteristic_sublink(link: FramedLink, c: Sequence[int]) -> FramedLink:
    """The sub-diagram of the components marked 1 in the 0/1 vector c.

    Crossings touching a deleted component disappear, the surviving strands
    merge through them, and arcs are relabelled consecutively.  Components
    left with no crossings become explicit crossingless unknots.
    """
    cvec = tuple(int(x) for x in c)
    if len(cvec) != link.component_count():
        raise LengthMismatch(
            f"vector of length {len(cvec)} for {link.component_count()} components"
        )
    if any(x not in (0, 1) for x in cvec):
        raise MalformedInput("characteristic vector entries must be 0 or 1")
    keep = {i for i, x in enumerate(cvec) if x == 1}

    surviving = []
    for k, t in enumerate(link.crossings):
        cu = link.component_of_arc(t[0])
        co = link.component_of_arc(t[1])
        if cu in keep and co in keep:
            surviving.append(k)
    surv = set(surviving)
    ends = _arc_ends(link.crossings, link.over_in)

    arc_map: dict[int, int] = {}
    next_label = 1
    kept_framings: list[int] = []
    unknot_framings: list[int] = []
    for i in sorted(keep):
        comp = link.components[i]
        if not comp:
            unknot_framings.append(link.framings[i])
            continue
        boundaries = [idx for idx, a in enumerate(comp) if ends[a]["head"][0] in surv]
        if not boundaries:
            unknot_framings.append(link.framings[i])
            continue
        kept_framings.append(link.framings[i])
        # One new arc per surviving boundary, walked in traversal order.
        m = len(comp)
        for bpos in range(len(boundaries)):
            start = (boundaries[bpos - 1] + 1) % m
            end = boundaries[bpos]
            idx = start
            while True:
                arc_map[comp[idx]] = next_label + bpos
                if idx == end:
                    break
                idx = (idx + 1) % m
        next_label += len(boundaries)
    new_crossings = [
        tuple(arc_map[a] for a in link.crossings[k]) for k in surviving
    ]
    return FramedLink.build(
        new_crossings,
        unknots=len(unknot_framings),
        framings=kept_framings + unknot_framings,
        name=None,
    )


class _Surgery:
    """Mutable strand-level diagram state used while banding components."""

    def __init__(self, link: FramedLink):
        self.crossings: list[list[int]] = [list(t) for t in link.crossings]
        self.over_in: list[int] = list(link.over_in)
        self.ends = _arc_ends(link.crossings, link.over_in)
        self.comps: list[list[int]] = [list(c) for c in link.components]
        self._next = link.pd.arc_count + 1
        self.derivation: list[str] = []

    def fresh(self) -> int:
        a = self._next
        self._next += 1
        return a

    def rewire(self, pos: tuple[int, int], arc: int, kind: str) -> None:
        self.crossings[pos[0]][pos[1]] = arc
        self.ends.setdefault(arc, {})[kind] = pos

    def set_end(self, arc: int, kind: str, pos: tuple[int, int]) -> None:
        self.ends.setdefault(arc, {})[kind] = pos

    def same_piece(self, ci: int, cj: int) -> bool:
        owner = {}
        for idx, comp in enumerate(self.comps):
            for a in comp:
                owner[a] = idx
        parent = list(range(len(self.comps)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for t in self.crossings:
            ra, rb = find(owner[t[0]]), find(owner[t[1]])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        return find(ci) == find(cj)

    def faces(self):
        """Trace the faces of the 4-valent map; return boundaries and side maps.

        A face is an orbit of end slots under: leave through an end, walk the
        arc to its other end, turn to the clockwise-previous slot.  A face
        traced while walking an arc tail-to-head is that arc's left face;
        head-to-tail gives the right face.
        """
        face_of: dict[tuple[int, int], int] = {}
        boundaries: list[list[int]] = []
        left: dict[int, int] = {}
        right: dict[int, int] = {}
        for k in range(len(self.crossings)):
            for s in range(4):
                if (k, s) in face_of:
                    continue
                fid = len(boundaries)
                arcs: list[int] = []
                cur = (k, s)
                while cur not in face_of:
                    face_of[cur] = fid
                    arc = self.crossings[cur[0]][cur[1]]
                    arcs.append(arc)
                    e = self.ends[arc]
                    if e["tail"] == cur:
                        other = e["head"]
                        left[arc] = fid
                    else:
                        other = e["tail"]
                        right[arc] = fid
                    cur = (other[0], (other[1] - 1) % 4)
                boundaries.append(sorted(set(arcs)))
        return boundaries, left, right

    def _dual_path(self, alpha, alphap, boundaries, left, right):
        """Shortest face path from a side of alpha to a side of alphap."""
        sources = [left[alpha]]
        if right[alpha] != left[alpha]:
            sources.append(right[alpha])
        targets = {left[alphap], right[alphap]}
        prev: dict[int, Optional[tuple[int, int]]] = {f: None for f in sources}
        goal = next((f for f in sources if f in targets), None)
        queue = list(sources)
        qi = 0
        while goal is None and qi < len(queue):
            f = queue[qi]
            qi += 1
            for x in boundaries[f]:
                if x == alpha or x == alphap or left[x] == right[x]:
                    continue
                g = right[x] if f == left[x] else left[x]
                if g in prev:
                    continue
                prev[g] = (f, x)
                if g in targets:
                    goal = g
                    break
                queue.append(g)
        if goal is None:
            raise InternalInvariantViolation("no dual path between band endpoints")
        fpath = [goal]
        xpath: list[int] = []
        while prev[fpath[-1]] is not None:
            f, x = prev[fpath[-1]]
            xpath.append(x)
            fpath.append(f)
        fpath.reverse()
        xpath.reverse()
        return fpath, xpath

    def fuse_trivial(self, ci: int, cj: int, alpha=None, alphap=None) -> None:
        """Band two components whose diagrams share no face: a split fusion."""
        a_arcs, b_arcs = self.comps[ci], self.comps[cj]
        if not b_arcs:
            self.derivation.append("absorbed crossingless unknot")
            del self.comps[cj]
            return
        if not a_arcs:
            self.derivation.append("absorbed crossingless unknot")
            self.comps[ci] = b_arcs
            del self.comps[cj]
            return
        alpha = min(a_arcs) if alpha is None else alpha
        alphap = min(b_arcs) if alphap is None else alphap
        ta, ha = self.ends[alpha]["tail"], self.ends[alpha]["head"]
        tb, hb = self.ends[alphap]["tail"], self.ends[alphap]["head"]
        g0, h0 = self.fresh(), self.fresh()
        self.rewire(ta, g0, "tail")
        self.rewire(hb, g0, "head")
        self.rewire(tb, h0, "tail")
        self.rewire(ha, h0, "head")
        ia, ib = a_arcs.index(alpha), b_arcs.index(alphap)
        rot_a = a_arcs[ia:] + a_arcs[:ia]
        rot_b = b_arcs[ib:] + b_arcs[:ib]
        self.comps[ci] = [g0] + rot_b[1:] + [h0] + rot_a[1:]
        del self.comps[cj]
        self.derivation.append(f"split fusion at arcs ({alpha},{alphap})")

    def fuse_banded(self, ci: int, cj: int, alpha=None, alphap=None) -> None:
        """Band two components in one diagram piece along a shortest dual path."""
        a_arcs, b_arcs = self.comps[ci], self.comps[cj]
        alpha = min(a_arcs) if alpha is None else alpha
        alphap = min(b_arcs) if alphap is None else alphap
        boundaries, left, right = self.faces()
        fpath, xpath = self._dual_path(alpha, alphap, boundaries, left, right)
        p = len(xpath)
        side1_left = fpath[0] == left[alpha]
        arrive_left = fpath[-1] == left[alphap]
        twist = side1_left != arrive_left

        ta, ha = self.ends[alpha]["tail"], self.ends[alpha]["head"]
        tb, hb = self.ends[alphap]["tail"], self.ends[alphap]["head"]
        g = [self.fresh() for _ in range(p + 1)]
        h = [self.fresh() for _ in range(p + 1)]

        repl: dict[int, list[int]] = {}
        for t, x in enumerate(xpath, start=1):
            x_east = fpath[t - 1] == right[x]  # x crosses the core left-to-right
            x0, x1, x2 = x, self.fresh(), self.fresh()
            first_is_side1 = x_east == side1_left
            s1_in, s1_out = (x0, x1) if first_is_side1 else (x1, x2)
            s2_in, s2_out = (x1, x2) if first_is_side1 else (x0, x1)
            k1 = len(self.crossings)
            if x_east:
                self.crossings.append([g[t - 1], s1_out, g[t], s1_in])
                self.over_in.append(3)
            else:
                self.crossings.append([g[t - 1], s1_in, g[t], s1_out])
                self.over_in.append(1)
            k2 = len(self.crossings)
            if x_east:
                self.crossings.append([h[p - t], s2_in, h[p - t + 1], s2_out])
                self.over_in.append(1)
            else:
                self.crossings.append([h[p - t], s2_out, h[p - t + 1], s2_in])
                self.over_in.append(3)
            first_k, second_k = (k1, k2) if first_is_side1 else (k2, k1)
            old_head = self.ends[x]["head"]
            # x keeps its tail; x2 inherits the head slot; x1 sits between.
            self.set_end(x0, "head", (first_k, self.over_in[first_k]))
            self.set_end(x1, "tail", (first_k, 4 - self.over_in[first_k]))
            self.set_end(x1, "head", (second_k, self.over_in[second_k]))
            self.set_end(x2, "tail", (second_k, 4 - self.over_in[second_k]))
            self.rewire(old_head, x2, "head")
            self.set_end(g[t - 1], "head", (k1, 0))
            self.set_end(g[t], "tail", (k1, 2))
            self.set_end(h[p - t], "head", (k2, 0))
            self.set_end(h[p - t + 1], "tail", (k2, 2))
            repl[x] = [x0, x1, x2]

        side1 = list(g)
        side2 = list(h)
        if twist:
            # Half-twist between the two band sides, placed at the far end;
            # its chirality is forced by which side of the core side1 runs on.
            gpb, h0a = self.fresh(), self.fresh()
            kt = len(self.crossings)
            if side1_left:
                self.crossings.append([g[p], h[0], gpb, h0a])
                self.over_in.append(3)
                self.set_end(h[0], "tail", (kt, 1))
                self.set_end(h0a, "head", (kt, 3))
            else:
                self.crossings.append([g[p], h0a, gpb, h[0]])
                self.over_in.append(1)
                self.set_end(h0a, "head", (kt, 1))
                self.set_end(h[0], "tail", (kt, 3))
            self.set_end(g[p], "head", (kt, 0))
            self.set_end(gpb, "tail", (kt, 2))
            self.rewire(hb, gpb, "head")
            self.rewire(tb, h0a, "tail")
            side1.append(gpb)
            side2.insert(0, h0a)
        else:
            self.rewire(hb, g[p], "head")
            self.rewire(tb, h[0], "tail")
        self.rewire(ta, g[0], "tail")
        self.rewire(ha, h[p], "head")

        def expand(arcs):
            out = []
            for a in arcs:
                out.extend(repl.get(a, [a]))
            return out

        for idx in range(len(self.comps)):
            if idx != ci and idx != cj:
                self.comps[idx] = expand(self.comps[idx])
        a_arcs = expand(a_arcs)
        b_arcs = expand(b_arcs)
        ia, ib = a_arcs.index(alpha), b_arcs.index(alphap)
        rot_a = a_arcs[ia:] + a_arcs[:ia]
        rot_b = b_arcs[ib:] + b_arcs[:ib]
        self.comps[ci] = side1 + rot_b[1:] + side2 + rot_a[1:]
        del self.comps[cj]
        self.derivation.append(
            f"banded fusion at arcs ({alpha},{alphap}), {p} strands crossed,"
            f" half-twist={'yes' if twist else 'no'}"
        )


def band_sum(
    sub: FramedLink,
    *,
    order: Optional[Sequence[int]] = None,
    arc_offset: int = 0,
) -> KnotDiagram:
    """Join all components of a diagram into one knot by band sums.

    Components are banded one at a time onto a running connected sum; by
    default the fusion order is the component order and the band attaches at
    the lowest-numbered arc of each side.  `order` permutes the components
    first and `arc_offset` rotates the attachment arc choice; any choice
    yields a valid band sum, so invariants downstream must not depend on it.
    The empty diagram yields the crossingless unknot.
    """
    st = _Surgery(sub)
    if order is not None:
        if sorted(order) != list(range(len(st.comps))):
            raise MalformedInput("order must be a permutation of the components")
        st.comps = [st.comps[i] for i in order]
        st.derivation.append(f"component order {list(order)}")
    if not st.comps:
        return KnotDiagram.unknot(derivation=("empty sublink represents the unknot",))

    def pick(arcs):
        return sorted(arcs)[arc_offset % len(arcs)] if arcs else None

    while len(st.comps) > 1:
        a, b = pick(st.comps[0]), pick(st.comps[1])
        if st.same_piece(0, 1):
            st.fuse_banded(0, 1, a, b)
        else:
            st.fuse_trivial(0, 1, a, b)

    cyc = st.comps[0]
    if not cyc:
        return KnotDiagram.unknot(derivation=tuple(st.derivation))
    start = cyc.index(min(cyc))
    cyc = cyc[start:] + cyc[:start]
    label = {arc: i + 1 for i, arc in enumerate(cyc)}
    tuples = [tuple(label[a] for a in t) for t in st.crossings]
    kd = KnotDiagram.build(tuples, derivation=tuple(st.derivation))
    if kd.over_in != tuple(st.over_in):
        raise InternalInvariantViolation("banded diagram signs disagree with construction")
    return kd


# --- Alexander polynomial via the Wirtinger presentation and Fox calculus ---


def _poly_add(p, q):
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0) + c
        if out[e] == 0:
            del out[e]
    return out


def _poly_sub(p, q):
    return _poly_add(p, {e: -c for e, c in q.items()})


def _poly_mul(p, q):
    out: dict[int, int] = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = e1 + e2
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _poly_exact_div(num, den):
    if not num:
        return {}
    if not den:
        raise InternalInvariantViolation("polynomial division by zero")
    nlo, nhi = min(num), max(num)
    dlo, dhi = min(den), max(den)
    nc = [num.get(e, 0) for e in range(nlo, nhi + 1)]
    dc = [den.get(e, 0) for e in range(dlo, dhi + 1)]
    qlen = len(nc) - len(dc) + 1
    if qlen <= 0:
        raise InternalInvariantViolation("inexact polynomial division")
    q = [0] * qlen
    r = nc[:]
    dlead = dc[-1]
    for i in range(qlen - 1, -1, -1):
        lead = r[i + len(dc) - 1]
        if lead == 0:
            continue
        if lead % dlead != 0:
            raise InternalInvariantViolation("inexact polynomial division")
        q[i] = lead // dlead
        for j, dcj in enumerate(dc):
            r[i + j] -= q[i] * dcj
    if any(r):
        raise InternalInvariantViolation("inexact polynomial division")
    return {nlo - dlo + i: c for i, c in enumerate(q) if c}


def _poly_det(mat):
    """Fraction-free determinant of a matrix of Laurent polynomials."""
    n = len(mat)
    if n == 0:
        return {0: 1}
    m = [[dict(e) for e in row] for row in mat]
    sign = 1
    prev = {0: 1}
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return {}
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _poly_sub(
                    _poly_mul(m[i][j], m[k][k]), _poly_mul(m[i][k], m[k][j])
                )
                m[i][j] = _poly_exact_div(num, prev)
            m[i][k] = {}
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else {e: -c for e, c in det.items()}


def alexander_polynomial(k: KnotDiagram) -> IntPolynomial:
    """Alexander polynomial from Fox derivatives of the Wirtinger presentation.

    Well-defined up to units +-t^k; the crossingless unknot gives 1.
    """
    n = len(k.crossings)
    if n == 0:
        return IntPolynomial.from_map({0: 1})
    parent = list(range(2 * n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for t in k.crossings:
        ra, rb = find(t[1]), find(t[3])
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    gens = sorted({find(a) for a in range(1, 2 * n + 1)})
    col = {g: i for i, g in enumerate(gens)}
    if len(gens) != n:
        raise InternalInvariantViolation(
            f"{len(gens)} Wirtinger generators for {n} crossings"
        )
    mat = [[{} for _ in range(n)] for _ in range(n)]
    for row, t in enumerate(k.crossings):
        u_in, u_out, over = find(t[0]), find(t[2]), find(t[1])
        positive = k.over_in[row] == 3
        tpow = {1: 1} if positive else {-1: 1}
        contrib = [
            (col[u_in], tpow),
            (col[over], _poly_sub({0: 1}, tpow)),
            (col[u_out], {0: -1}),
        ]
        for cidx, poly in contrib:
            mat[row][cidx] = _poly_add(mat[row][cidx], poly)
    minor = [row[: n - 1] for row in mat[: n - 1]]
    return IntPolynomial.from_map(_poly_det(minor))


def alexander_at_minus_one(k: KnotDiagram) -> int:
    """The knot determinant |Delta(-1)|; always an odd positive integer."""
    value = abs(alexander_polynomial(k).at_minus_one())
    if value % 2 == 0:
        raise InternalInvariantViolation(f"even knot determinant {value}")
    return value


def arf_invariant(k: KnotDiagram) -> int:
    """Arf invariant from the determinant: 1 or 7 mod 8 gives 0, 3 or 5 give 1."""
    d = alexander_at_minus_one(k) % 8
    if d in (1, 7):
        return 0
    if d in (3, 5):
        return 1
    raise InternalInvariantViolation(f"knot determinant is {d} mod 8")
