"""Divide construction from exact polyline drawings, and the ADE catalog.

Catalog divides are authored as rational polylines: the builder finds the
transversal self-intersections exactly, assigns counterclockwise slot
numbers from the branch directions, and reads the boundary order from the
endpoint angles around the origin.  The snake family drives A_n (and the
tails of longer chains); D and E types are a triangle of chords with a
loop, bead, or bead chain grafted onto chosen corners.

Catalog shapes (mu = crossings + bounded regions = rank):

    A_{2m}  single snake strand, m nodes, m beads (turn at the east end)
    A_{2m+1} two mirror snake strands, m+1 nodes, m beads, four tails
    D_n     chord triangle with a chain appendage of length n - 4
    E_6     triangle with loops on two corners
    E_7     triangle with a loop and a bead appendage
    E_8     triangle with a loop and a bead + loop appendage

Every entry is certified by the Milnor number, Euler, and quiver-shape
checks in the test suite.
"""

from __future__ import annotations

import functools
from fractions import Fraction

from .divides import Divide, DivideError, Strand
from .links import ADELabel, parse_ade_label

Point = tuple[Fraction, Fraction]


def _pt(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def _cross(a: Point, b: Point) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def _sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def _angle_class(v: Point) -> int:
    # 0 for the upper half plane (including the positive x-axis ray).
    if v[1] > 0 or (v[1] == 0 and v[0] > 0):
        return 0
    return 1


def _ccw_key(v: Point):
    return functools.cmp_to_key(_ccw_cmp)(v)


def _ccw_cmp(a: Point, b: Point) -> int:
    ha, hb = _angle_class(a), _angle_class(b)
    if ha != hb:
        return -1 if ha < hb else 1
    c = _cross(a, b)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def divide_from_polylines(polylines: list[list[Point]]) -> Divide:
    """Build a Divide from open polyline strands in general position.

    Requirements: all intersections are transversal interior points of
    exactly two segments, endpoints have pairwise distinct directions
    from the origin, and the drawing is radially star-shaped enough that
    the endpoint angle order equals the disk boundary order (violations
    surface through the planarity check downstream).
    """
    segments = []  # (strand, seg index, p, q)
    for sid, pts in enumerate(polylines):
        if len(pts) < 2:
            raise DivideError("polyline strands need at least two points")
        for j, (p, q) in enumerate(zip(pts, pts[1:])):
            if p == q:
                raise DivideError("zero-length polyline segment")
            segments.append((sid, j, p, q))

    hits: dict[Point, list[tuple[int, int, Fraction, Point]]] = {}
    for i in range(len(segments)):
        s1, j1, p1, q1 = segments[i]
        d1 = _sub(q1, p1)
        for k in range(i + 1, len(segments)):
            s2, j2, p2, q2 = segments[k]
            if s1 == s2 and abs(j1 - j2) == 1:
                continue  # consecutive segments share a waypoint only
            d2 = _sub(q2, p2)
            denom = _cross(d1, d2)
            diff = _sub(p2, p1)
            if denom == 0:
                if _cross(diff, d1) == 0:
                    # Same line: only disjoint parameter intervals are fine.
                    dd = d1[0] * d1[0] + d1[1] * d1[1]
                    t2a = (diff[0] * d1[0] + diff[1] * d1[1]) / dd
                    diff_q = _sub(q2, p1)
                    t2b = (diff_q[0] * d1[0] + diff_q[1] * d1[1]) / dd
                    lo, hi = min(t2a, t2b), max(t2a, t2b)
                    if hi >= 0 and lo <= 1:
                        raise DivideError("collinear overlapping segments in drawing")
                continue
            t = _cross(diff, d2) / denom
            u = _cross(diff, d1) / denom
            if t <= 0 or t >= 1 or u <= 0 or u >= 1:
                if 0 <= t <= 1 and 0 <= u <= 1:
                    raise DivideError("segments touch at an endpoint")
                continue
            point = (p1[0] + t * d1[0], p1[1] + t * d1[1])
            hits.setdefault(point, []).append((s1, j1, t, d1))
            hits[point].append((s2, j2, u, d2))

    for point, records in hits.items():
        if len(records) != 2:
            raise DivideError(f"more than two branches meet at {point}")

    crossing_points = sorted(hits, key=lambda p: (p[0], p[1]))
    crossing_index = {p: i for i, p in enumerate(crossing_points)}

    # Counterclockwise slot assignment from the four branch rays.
    slot_of: dict[tuple[Point, int, int, bool], int] = {}
    for point, records in hits.items():
        rays = []
        for rec_id, (sid, j, t, d) in enumerate(records):
            rays.append((d, rec_id, True))
            rays.append(((-d[0], -d[1]), rec_id, False))
        rays.sort(key=lambda r: _ccw_key(r[0]))
        for slot, (_, rec_id, forward) in enumerate(rays):
            sid, j, t, _ = records[rec_id]
            slot_of[(point, sid, j, forward)] = slot

    strands = []
    for sid, pts in enumerate(polylines):
        strand_hits = []
        for point, records in hits.items():
            for s2, j2, t, d in records:
                if s2 == sid:
                    strand_hits.append((j2, t, point))
        strand_hits.sort(key=lambda h: (h[0], h[1]))
        passages = []
        for j, t, point in strand_hits:
            entry_slot = slot_of[(point, sid, j, False)]
            exit_slot = slot_of[(point, sid, j, True)]
            if (entry_slot + 2) % 4 != exit_slot:
                raise DivideError("branch rays are not opposite slots")
            passages.append((crossing_index[point], entry_slot))
        strands.append(Strand(False, tuple(passages)))

    endpoints = []
    for sid, pts in enumerate(polylines):
        endpoints.append(((sid, 0), pts[0]))
        endpoints.append(((sid, 1), pts[-1]))
    for _, p in endpoints:
        if p == (0, 0):
            raise DivideError("strand endpoints must avoid the origin")
    for i in range(len(endpoints)):
        for j in range(i + 1, len(endpoints)):
            if _ccw_cmp(endpoints[i][1], endpoints[j][1]) == 0:
                raise DivideError("two endpoints share a boundary direction")
    order = tuple(
        key for key, _ in sorted(endpoints, key=lambda ep: _ccw_key(ep[1]))
    )
    return Divide(len(crossing_points), tuple(strands), order)


# -- snake family (A types) ----------------------------------------------------


def _snake_even(m: int) -> list[list[Point]]:
    """Single strand, m nodes on the axis, turn at the east end."""
    pts = [_pt(-2, 7)]
    for i in range(1, m + 1):
        eps = 1 if i % 2 == 1 else -1
        pts += [_pt(3 * i - 1, eps), _pt(3 * i + 1, -eps)]
    pts.append(_pt(3 * m + 3, 0))
    for i in range(m, 0, -1):
        eps = 1 if i % 2 == 1 else -1
        pts += [_pt(3 * i + 1, eps), _pt(3 * i - 1, -eps)]
    pts.append(_pt(-2, -7))
    return [pts]


def _snake_odd(m: int) -> list[list[Point]]:
    """Two mirror strands crossing at m+1 nodes."""
    k = m + 1
    upper = [_pt(-2, 7)]
    lower = [_pt(-2, -7)]
    for i in range(1, k + 1):
        eps = 1 if i % 2 == 1 else -1
        upper += [_pt(3 * i - 1, eps), _pt(3 * i + 1, -eps)]
        lower += [_pt(3 * i - 1, -eps), _pt(3 * i + 1, eps)]
    eps_k = 1 if k % 2 == 1 else -1
    upper.append(_pt(3 * k + 5, -7 * eps_k))
    lower.append(_pt(3 * k + 5, 7 * eps_k))
    return [upper, lower]


def _crossed_chords() -> list[list[Point]]:
    return [
        [_pt(-8, 6), _pt(8, -6)],
        [_pt(-8, -6), _pt(8, 6)],
    ]


# -- triangle family (D and E types) -------------------------------------------

_TRIANGLE = {
    "A": _pt(0, 4),
    "B": _pt(-4, -2),
    "C": _pt(4, -2),
}
_CHORDS = (("A", "B"), ("B", "C"), ("C", "A"))
# Outward extension directions of each chord at each of its vertices.
_OUTWARD = {
    ("A", "B"): {"A": _pt(2, 3), "B": _pt(-2, -3)},
    ("B", "C"): {"B": _pt(-3, 0), "C": _pt(3, 0)},
    ("C", "A"): {"C": _pt(2, -3), "A": _pt(-2, 3)},
}

_MERGING_KINDS = ("loop", "bead_loop")
_APPENDAGE_KINDS = ("tails", "loop", "bead_tails", "bead_loop", "bead_bead_tails")


def _combine(base: Point, *scaled: tuple[int, Point]) -> Point:
    x, y = base
    for c, v in scaled:
        x += c * v[0]
        y += c * v[1]
    return (x, y)


def _outward_piece(kind: str, vertex: Point, u: Point, u_other: Point) -> list[Point]:
    """Waypoints from near the vertex outward, for one chord end."""
    if kind == "tails":
        return [_combine(vertex, (8, u))]
    if kind == "loop":
        return [_combine(vertex, (2, u)), _combine(vertex, (2, u), (2, u_other))]
    if kind == "bead_tails":
        return [_combine(vertex, (2, u)), _combine(vertex, (2, u), (6, u_other))]
    if kind == "bead_loop":
        return [
            _combine(vertex, (2, u)),
            _combine(vertex, (2, u), (5, u_other)),
            _combine(vertex, (5, u), (5, u_other)),
        ]
    if kind == "bead_bead_tails":
        return [
            _combine(vertex, (2, u)),
            _combine(vertex, (2, u), (3, u_other)),
            _combine(vertex, (10, u), (7, u_other)),
        ]
    raise DivideError(f"unknown appendage kind {kind!r}")


def _triangle_polylines(appendages: dict[str, str]) -> list[list[Point]]:
    """Assemble chord strands for the triangle with per-corner appendages."""
    for corner in "ABC":
        if appendages.get(corner, "tails") not in _APPENDAGE_KINDS:
            raise DivideError(f"unknown appendage {appendages[corner]!r}")

    def chord_of(corner: str):
        return [ch for ch in _CHORDS if corner in ch]

    def other_vertex(chord, corner):
        return chord[0] if chord[1] == corner else chord[1]

    def piece(chord, corner) -> list[Point]:
        kind = appendages.get(corner, "tails")
        u = _OUTWARD[chord][corner]
        partner = next(ch for ch in chord_of(corner) if ch != chord)
        u_other = _OUTWARD[partner][corner]
        return _outward_piece(kind, _TRIANGLE[corner], u, u_other)

    visited: set[tuple[str, str]] = set()
    polylines = []
    for chord in _CHORDS:
        for start_corner in chord:
            kind = appendages.get(start_corner, "tails")
            if kind in _MERGING_KINDS or chord in visited:
                continue
            # Walk from this unmerged end through any merged corners.
            pts = list(reversed(piece(chord, start_corner)))
            cur_chord, cur_corner = chord, start_corner
            while True:
                visited.add(cur_chord)
                far_corner = other_vertex(cur_chord, cur_corner)
                pts.extend(piece(cur_chord, far_corner))
                if appendages.get(far_corner, "tails") not in _MERGING_KINDS:
                    break
                partner = next(ch for ch in chord_of(far_corner) if ch != cur_chord)
                partner_piece = piece(partner, far_corner)
                pts.extend(reversed(partner_piece[:-1]))
                cur_chord, cur_corner = partner, far_corner
            polylines.append(pts)
            break
    if set(_CHORDS) - visited:
        raise DivideError("appendage merges form a closed cycle; not supported")
    return polylines


_D_APPENDAGE_BY_EXCESS = {
    0: {},
    1: {"A": "loop"},
    2: {"A": "bead_tails"},
    3: {"A": "bead_loop"},
    4: {"A": "bead_bead_tails"},
}

_E_APPENDAGES = {
    6: {"A": "loop", "B": "loop"},
    7: {"A": "loop", "B": "bead_tails"},
    8: {"A": "loop", "B": "bead_loop"},
}


def divide_catalog(label: ADELabel | str) -> Divide:
    """Catalog divide for a simple singularity type.

    Supported: A_n for n <= 8, D_n for 3 <= n <= 8 (D_3 reuses the A_3
    two-chord lens), E_6, E_7, E_8.  The Milnor number equals the rank
    and the intersection quiver is the Dynkin tree of the label.
    """
    if isinstance(label, str):
        label = parse_ade_label(label)
    n = label.rank
    if label.family == "A":
        if n > 8:
            raise DivideError("catalog covers A_n only for n <= 8")
        if n == 1:
            return divide_from_polylines(_crossed_chords())
        if n % 2 == 0:
            return divide_from_polylines(_snake_even(n // 2))
        return divide_from_polylines(_snake_odd((n - 1) // 2))
    if label.family == "D":
        if n > 8:
            raise DivideError("catalog covers D_n only for n <= 8")
        if n == 3:
            return divide_from_polylines(_snake_odd(1))  # lens; D_3 = A_3
        return divide_from_polylines(
            _triangle_polylines(_D_APPENDAGE_BY_EXCESS[n - 4])
        )
    return divide_from_polylines(_triangle_polylines(_E_APPENDAGES[n]))


CATALOG_LABELS = tuple(
    [f"A{n}" for n in range(1, 9)] + [f"D{n}" for n in range(3, 9)] + ["E6", "E7", "E8"]
)
