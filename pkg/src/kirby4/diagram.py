"""Framed link diagrams: PD codes, crossing signs, linking matrices, mirrors.

PD convention: each crossing is a 4-tuple of arc labels listed
counterclockwise starting from the incoming under-strand, so slot 0 is the
incoming under-arc and slot 2 the outgoing under-arc; the over-strand
occupies slots 1 and 3.  Arc labels run 1..N and are consecutive along each
component in traversal order, which is how orientation is encoded.
Crossingless unknot components cannot be expressed in a PD code, so a
framed link carries an explicit count of them, listed after the PD
components.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .errors import (
    FramingCountMismatch,
    IndexOutOfRange,
    InvalidPD,
    MalformedInput,
)
from .matrices import SymIntMatrix

Crossing = tuple[int, int, int, int]


@dataclass(frozen=True)
class PDCode:
    """A planar diagram code: crossing tuples plus the total arc count."""

    crossings: tuple[Crossing, ...]
    arc_count: int


@dataclass(frozen=True)
class FramedLink:
    """An ordered, oriented link diagram with one integer framing per component.

    `components` lists each component's arcs in traversal order (empty tuple
    for a crossingless unknot; those come last).  `over_in` records, for each
    crossing, which over-slot (1 or 3) the over-strand enters through; it is
    derived during validation and determines every crossing sign.
    """

    pd: PDCode
    unknots: int
    framings: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    over_in: tuple[int, ...]
    name: Optional[str] = None

    @classmethod
    def build(cls, crossings, unknots: int = 0, framings=(), name: Optional[str] = None) -> "FramedLink":
        """Validate a raw PD code and assemble the link with derived data."""
        xs = _normalize_crossings(crossings)
        if unknots < 0:
            raise MalformedInput("unknot count must be non-negative")
        comps, succ = _pd_components(xs)
        over_in = _resolve_over_directions(xs, succ)
        framings = tuple(int(f) for f in framings)
        total = len(comps) + unknots
        if len(framings) != total:
            raise FramingCountMismatch(
                f"{len(framings)} framings for {total} components"
            )
        components = tuple(comps) + ((),) * unknots
        arc_count = 2 * len(xs)
        return cls(PDCode(xs, arc_count), unknots, framings, components, over_in, name)

    @property
    def crossings(self) -> tuple[Crossing, ...]:
        return self.pd.crossings

    def component_count(self) -> int:
        return len(self.components)

    def component_of_arc(self, arc: int) -> int:
        for i, comp in enumerate(self.components):
            if comp and comp[0] <= arc <= comp[-1]:
                return i
        raise InvalidPD(f"arc {arc} belongs to no component")

    def as_dict(self) -> dict:
        data = {
            "pd": [list(t) for t in self.crossings],
            "unknots": self.unknots,
            "framings": list(self.framings),
        }
        if self.name is not None:
            data["name"] = self.name
        return data


def _normalize_crossings(crossings) -> tuple[Crossing, ...]:
    xs = []
    for t in crossings:
        t = tuple(t)
        if len(t) != 4 or not all(isinstance(x, int) and x >= 1 for x in t):
            raise MalformedInput(f"crossing {t!r} is not a 4-tuple of positive arcs")
        xs.append(t)
    return tuple(xs)


def _pd_components(xs: tuple[Crossing, ...]):
    """Partition arcs into components and build the label successor map.

    Arcs must be exactly 1..2n, each appearing twice; a component's labels
    must form one consecutive block, and the under-strand at every crossing
    must run from slot 0 to slot 2 in label succession.
    """
    if not xs:
        return [], {}
    counts: dict[int, int] = {}
    for t in xs:
        for a in t:
            counts[a] = counts.get(a, 0) + 1
    n_arcs = 2 * len(xs)
    for a in range(1, n_arcs + 1):
        if counts.get(a, 0) != 2:
            raise InvalidPD(f"arc {a} appears {counts.get(a, 0)} times, expected 2")
    if set(counts) != set(range(1, n_arcs + 1)):
        raise InvalidPD("arc labels must be exactly 1..2*crossings")

    # Strand continuity: the two arcs of a passage belong to one component.
    parent = list(range(n_arcs + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for a, b, c, d in xs:
        union(a, c)
        union(b, d)

    groups: dict[int, list[int]] = {}
    for a in range(1, n_arcs + 1):
        groups.setdefault(find(a), []).append(a)
    comps = [sorted(g) for g in sorted(groups.values(), key=min)]
    succ: dict[int, int] = {}
    for comp in comps:
        lo, hi = comp[0], comp[-1]
        if comp != list(range(lo, hi + 1)):
            raise InvalidPD(f"component arcs {comp} are not a consecutive block")
        for a in comp:
            succ[a] = a + 1 if a < hi else lo
    for a, b, c, d in xs:
        if succ[a] != c:
            raise InvalidPD(f"under-strand {a}->{c} breaks label succession")
    return [tuple(c) for c in comps], succ


def _resolve_over_directions(xs: tuple[Crossing, ...], succ) -> tuple[int, ...]:
    """Decide, per crossing, whether the over-strand enters at slot 1 or 3.

    Label succession settles most crossings; two-arc components leave both
    readings open locally and are settled by propagating the constraint that
    every arc has exactly one incoming and one outgoing end.  Components that
    never pass under anything are genuinely unoriented by the code; they get
    a canonical direction (over-strand entering at slot 3).  The choice
    cannot affect any linking number.
    """
    status: dict[tuple[int, int], bool] = {}  # True = incoming end (arc head)
    occ: dict[int, list[tuple[int, int]]] = {}
    for k, t in enumerate(xs):
        for s, a in enumerate(t):
            occ.setdefault(a, []).append((k, s))

    def set_status(k, s, val):
        old = status.get((k, s))
        if old is None:
            status[(k, s)] = val
            return True
        if old != val:
            raise InvalidPD(f"inconsistent orientation at crossing {k}")
        return False

    for k, (a, b, c, d) in enumerate(xs):
        set_status(k, 0, True)
        set_status(k, 2, False)
        fwd_b, fwd_d = succ[b] == d, succ[d] == b
        if not fwd_b and not fwd_d:
            raise InvalidPD(f"over-strand at crossing {k} breaks label succession")
        if fwd_b and not fwd_d:
            set_status(k, 1, True)
            set_status(k, 3, False)
        elif fwd_d and not fwd_b:
            set_status(k, 3, True)
            set_status(k, 1, False)

    def propagate():
        changed = True
        while changed:
            changed = False
            for ends in occ.values():
                (k1, s1), (k2, s2) = ends
                v1, v2 = status.get((k1, s1)), status.get((k2, s2))
                if v1 is not None and v2 is None:
                    changed |= set_status(k2, s2, not v1)
                elif v2 is not None and v1 is None:
                    changed |= set_status(k1, s1, not v2)
                elif v1 is not None and v1 == v2:
                    raise InvalidPD("an arc cannot have two incoming or two outgoing ends")
            for k in range(len(xs)):
                v1, v3 = status.get((k, 1)), status.get((k, 3))
                if v1 is not None and v3 is None:
                    changed |= set_status(k, 3, not v1)
                elif v3 is not None and v1 is None:
                    changed |= set_status(k, 1, not v3)
                elif v1 is not None and v1 == v3:
                    raise InvalidPD(f"over-strand at crossing {k} cannot pass through")

    propagate()
    for k in range(len(xs)):
        if status.get((k, 1)) is None:
            set_status(k, 3, True)
            set_status(k, 1, False)
            propagate()
    return tuple(3 if status[(k, 3)] else 1 for k in range(len(xs)))


def parse_framed_link(text: bytes) -> FramedLink:
    """Parse the JSON framed-link file format.

    Schema: {"pd": [[a,b,c,d], ...], "unknots": k (optional, default 0),
    "framings": [f_1, ..., f_m], "name": string (optional)}.
    """
    try:
        data = json.loads(text.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedInput(f"not valid UTF-8 JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise MalformedInput("top-level JSON value must be an object")
    unknown = set(data) - {"pd", "unknots", "framings", "name"}
    if unknown:
        raise MalformedInput(f"unknown keys: {sorted(unknown)}")
    pd = data.get("pd")
    framings = data.get("framings")
    unknots = data.get("unknots", 0)
    name = data.get("name")
    if not isinstance(pd, list) or not all(isinstance(t, list) for t in pd):
        raise MalformedInput('"pd" must be a list of 4-element lists')
    if not isinstance(framings, list) or not all(isinstance(f, int) for f in framings):
        raise MalformedInput('"framings" must be a list of integers')
    if not isinstance(unknots, int) or isinstance(unknots, bool):
        raise MalformedInput('"unknots" must be an integer')
    if name is not None and not isinstance(name, str):
        raise MalformedInput('"name" must be a string')
    for t in pd:
        if len(t) != 4 or not all(isinstance(x, int) and not isinstance(x, bool) for x in t):
            raise MalformedInput(f"crossing {t!r} is not a 4-list of integers")
    return FramedLink.build(pd, unknots=unknots, framings=framings, name=name)


def crossing_sign(link: FramedLink, crossing_index: int) -> int:
    """Sign of a crossing: +1 when the over-strand enters at slot 3."""
    if not 0 <= crossing_index < len(link.crossings):
        raise IndexOutOfRange(f"crossing {crossing_index} out of range")
    return 1 if link.over_in[crossing_index] == 3 else -1


def linking_matrix(link: FramedLink) -> SymIntMatrix:
    """Framings on the diagonal, pairwise linking numbers off it.

    lk(L_i, L_j) is half the signed count of crossings between components i
    and j; an odd count means the code is corrupt.
    """
    m = link.component_count()
    sums = [[0] * m for _ in range(m)]
    for k, t in enumerate(link.crossings):
        cu = link.component_of_arc(t[0])
        co = link.component_of_arc(t[1])
        if cu != co:
            s = crossing_sign(link, k)
            sums[cu][co] += s
            sums[co][cu] += s
    entries = [[0] * m for _ in range(m)]
    for i in range(m):
        entries[i][i] = link.framings[i]
        for j in range(i + 1, m):
            if sums[i][j] % 2 != 0:
                raise InvalidPD(
                    f"odd signed crossing count {sums[i][j]} between components {i} and {j}"
                )
            entries[i][j] = entries[j][i] = sums[i][j] // 2
    return SymIntMatrix.from_rows(entries)


def is_unimodular(v: SymIntMatrix) -> bool:
    """True iff det(v) is +1 or -1, computed in exact integer arithmetic."""
    return v.is_unimodular()


def mirror(link: FramedLink) -> FramedLink:
    """Swap over/under at every crossing and negate all framings.

    Each tuple is rotated so that the old incoming over-arc becomes the new
    incoming under-arc, which keeps every strand's orientation intact; the
    linking matrix of the result is the negation of the original.
    """
    new = []
    for t, oi in zip(link.crossings, link.over_in):
        a, b, c, d = t
        new.append((d, a, b, c) if oi == 3 else (b, c, d, a))
    return FramedLink.build(
        new,
        unknots=link.unknots,
        framings=[-f for f in link.framings],
        name=link.name,
    )
