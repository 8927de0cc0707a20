"""Planar link diagrams: tangle composition, checkerboard Goeritz determinant.

Diagrams are combinatorial maps: each crossing has four slots in
anticlockwise order 0..3, strands pass straight through (slot k continues at
slot k+2), and the over-strand occupies either the even or the odd diagonal.
Faces are traced from the rotation system, so no geometry is ever needed.

Tangles carry four open legs NW, NE, SW, SE.  The composition operations
(horizontal twists, sum, quarter turn, mirror, numerator closure) mirror the
algebra used by :mod:`fillings_lab.covers`; closing the same expression both
ways must give goeritz_determinant == |H1| of the cover, which is the
package's central cross-check.

The Goeritz matrix is indexed by white regions: G[i][j] for i != j is minus
the sum of crossing signs between regions i and j, diagonal entries make row
sums zero, and the determinant of any principal minor obtained by deleting
one row/column is the link determinant (computed fraction-free).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .intmat import det_int
from .slopes import Slope, fraction_to_twists

Addr = tuple  # (crossing_id, slot) or ("leg", name)

_LEG_NAMES = ("NW", "NE", "SW", "SE")


@dataclass
class Tangle:
    """An open 2-string diagram with legs NW, NE, SW, SE.

    ``over_odd[c]`` is True when the over-strand of crossing c runs through
    slots 1 and 3.  ``pairs`` matches crossing slots with each other or with
    legs; every crossing slot and every leg appears exactly once.
    """

    over_odd: list[bool] = field(default_factory=list)
    pairs: dict = field(default_factory=dict)
    loops: int = 0

    @staticmethod
    def zero() -> "Tangle":
        t = Tangle()
        t._link(("leg", "NW"), ("leg", "NE"))
        t._link(("leg", "SW"), ("leg", "SE"))
        return t

    @staticmethod
    def infinity() -> "Tangle":
        t = Tangle()
        t._link(("leg", "NW"), ("leg", "SW"))
        t._link(("leg", "NE"), ("leg", "SE"))
        return t

    @staticmethod
    def horizontal_twists(n: int) -> "Tangle":
        """|n| crossings in a row; the sign of n picks the over diagonal."""
        if n == 0:
            return Tangle.zero()
        t = Tangle()
        count = abs(n)
        t.over_odd = [n > 0] * count
        t._link(("leg", "NW"), (0, 1))
        t._link(("leg", "SW"), (0, 2))
        for i in range(count - 1):
            t._link((i, 0), (i + 1, 1))
            t._link((i, 3), (i + 1, 2))
        t._link((count - 1, 0), ("leg", "NE"))
        t._link((count - 1, 3), ("leg", "SE"))
        return t

    def _link(self, a: Addr, b: Addr):
        self.pairs[a] = b
        self.pairs[b] = a

    def _shifted(self, offset: int) -> "Tangle":
        def sh(addr: Addr) -> Addr:
            if addr[0] == "leg":
                return addr
            return (addr[0] + offset, addr[1])

        t = Tangle()
        t.over_odd = list(self.over_odd)
        t.pairs = {sh(a): sh(b) for a, b in self.pairs.items()}
        t.loops = self.loops
        return t

    def rotated(self) -> "Tangle":
        """Quarter turn anticlockwise: NE -> NW -> SW -> SE -> NE."""
        relabel = {"NE": "NW", "NW": "SW", "SW": "SE", "SE": "NE"}

        def rel(addr: Addr) -> Addr:
            if addr[0] == "leg":
                return ("leg", relabel[addr[1]])
            return addr

        t = Tangle()
        t.over_odd = list(self.over_odd)
        t.pairs = {rel(a): rel(b) for a, b in self.pairs.items()}
        t.loops = self.loops
        return t

    def mirrored(self) -> "Tangle":
        t = Tangle()
        t.over_odd = [not v for v in self.over_odd]
        t.pairs = dict(self.pairs)
        t.loops = self.loops
        return t


def tangle_sum(t1: Tangle, t2: Tangle) -> Tangle:
    """Place t1 and t2 side by side, joining t1's east legs to t2's west."""
    a = t1._shifted(0)
    b = t2._shifted(len(t1.over_odd))
    out = Tangle()
    out.over_odd = a.over_odd + b.over_odd
    out.loops = a.loops + b.loops

    # temporarily namespace the legs, then splice the seam
    def tag(addr: Addr, which: str) -> Addr:
        if addr[0] == "leg":
            return ("leg", which + addr[1])
        return addr

    pairs = {}
    for src, (t, which) in ((a, (a, "A.")), (b, (b, "B."))):
        for k, v in t.pairs.items():
            pairs[tag(k, which)] = tag(v, which)
    _splice(pairs, ("leg", "A.NE"), ("leg", "B.NW"), out)
    _splice(pairs, ("leg", "A.SE"), ("leg", "B.SW"), out)
    final = {
        ("leg", "A.NW"): ("leg", "NW"),
        ("leg", "A.SW"): ("leg", "SW"),
        ("leg", "B.NE"): ("leg", "NE"),
        ("leg", "B.SE"): ("leg", "SE"),
    }
    for k, v in pairs.items():
        kk = final.get(k, k)
        vv = final.get(v, v)
        out.pairs[kk] = vv
    return out


def _splice(pairs: dict, x: Addr, y: Addr, out: Tangle):
    """Remove placeholder endpoints x, y and join their partners."""
    px, py = pairs.pop(x), pairs.pop(y)
    if px == y:  # the two placeholders were joined to each other: a loop? no -
        # x-y were directly connected; their removal joins nothing, but this
        # can only happen when both ends of one strand land on the seam,
        # which closes a free loop.
        out.loops += 1
        pairs.pop(y, None)
        return
    pairs[px] = py
    pairs[py] = px


@dataclass
class Diagram:
    """A closed link diagram: crossings plus free loops."""

    over_odd: list[bool]
    pairs: dict  # (c, s) -> (c', s'), an involution on crossing slots
    loops: int = 0
    outer_dart: tuple | None = None  # dart whose face is the unbounded region

    @property
    def crossing_count(self) -> int:
        return len(self.over_odd)


def closure_numerator(t: Tangle) -> Diagram:
    """Join NW-NE and SW-SE.  The face above the north arc is the outer one."""
    pairs = dict(t.pairs)
    out = Tangle()
    out.loops = t.loops
    north = (pairs.get(("leg", "NW")), pairs.get(("leg", "NE")))
    _splice(pairs, ("leg", "NW"), ("leg", "NE"), out)
    _splice(pairs, ("leg", "SW"), ("leg", "SE"), out)
    d = Diagram(list(t.over_odd), pairs, out.loops)
    # outer face: traced from the dart at the NW attachment, pointing along
    # the new north arc; fall back to any dart for crossingless diagrams
    if north[0] is not None and north[0][0] != "leg":
        d.outer_dart = north[0]
    elif d.pairs:
        d.outer_dart = next(iter(d.pairs))
    return d


def faces(d: Diagram) -> list[list[tuple]]:
    """Face orbits of the rotation system; each dart lies in one face."""
    darts = set(d.pairs.keys())
    out = []
    seen = set()
    for start in sorted(darts):
        if start in seen:
            continue
        face = []
        cur = start
        while True:
            face.append(cur)
            seen.add(cur)
            c, s = d.pairs[cur]
            cur = (c, (s + 1) % 4)
            if cur == start:
                break
        out.append(face)
    return out


def is_connected(d: Diagram) -> bool:
    if d.crossing_count == 0:
        return d.loops <= 1
    if d.loops > 0:
        return False
    seen = {0}
    stack = [0]
    while stack:
        c = stack.pop()
        for s in range(4):
            c2, _ = d.pairs[(c, s)]
            if c2 not in seen:
                seen.add(c2)
                stack.append(c2)
    return len(seen) == d.crossing_count


def euler_characteristic(d: Diagram) -> int:
    v = d.crossing_count
    e = sum(1 for _ in d.pairs) // 2
    f = len(faces(d))
    return v - e + f


def checkerboard_regions(d: Diagram):
    """Proper two-coloring of the regions; the outer region is white.

    Returns (face_list, color_list) with color True = white.  Rejects
    disconnected diagrams, whose plane regions are not determined by the
    rotation system alone.
    """
    if not is_connected(d):
        raise ValueError("checkerboard coloring needs a connected diagram")
    if d.crossing_count == 0:
        # a single round circle: two regions, outer painted white
        return ([["outer"], ["inner"]], [True, False]) if d.loops else ([], [])
    fs = faces(d)
    face_of = {}
    for i, f in enumerate(fs):
        for dart in f:
            face_of[dart] = i
    colors = [None] * len(fs)
    start = face_of[d.outer_dart]
    colors[start] = True
    stack = [start]
    while stack:
        i = stack.pop()
        for dart in fs[i]:
            other = _face_across(d, face_of, dart)
            if colors[other] is None:
                colors[other] = not colors[i]
                stack.append(other)
            elif colors[other] == colors[i]:
                raise ValueError("diagram regions are not two-colorable")
    return fs, colors


def _face_across(d: Diagram, face_of: dict, dart: tuple) -> int:
    """Face on the other side of the edge leaving ``dart``."""
    return face_of[d.pairs[dart]]


def _corner_face(face_of: dict, c: int, k: int) -> int:
    """Region at the corner of crossing c between slots k and k+1."""
    return face_of[(c, (k + 1) % 4)]


def goeritz_determinant(d: Diagram) -> int:
    """|det| of the Goeritz matrix; 0 for split diagrams.

    Independent of which white region's row/column is deleted and of the
    color convention; exact by fraction-free elimination.
    """
    if d.crossing_count == 0:
        return 1 if d.loops == 1 else 0
    if not is_connected(d):
        return 0
    fs, colors = checkerboard_regions(d)
    face_of = {}
    for i, f in enumerate(fs):
        for dart in f:
            face_of[dart] = i
    white = [i for i, col in enumerate(colors) if col]
    windex = {f: i for i, f in enumerate(white)}
    n = len(white)
    g = [[0] * n for _ in range(n)]
    for c in range(d.crossing_count):
        corners = [_corner_face(face_of, c, k) for k in range(4)]
        white_parity = 0 if colors[corners[0]] else 1
        wa, wb = corners[white_parity], corners[white_parity + 2]
        over_parity = 1 if d.over_odd[c] else 0
        eta = 1 if white_parity == over_parity else -1
        if wa == wb:
            continue  # a kink: both white corners in the same region
        ia, ib = windex[wa], windex[wb]
        g[ia][ib] -= eta
        g[ib][ia] -= eta
        g[ia][ia] += eta
        g[ib][ib] += eta
    minor = [row[1:] for row in g[1:]]
    return abs(det_int(minor))


# ---------------------------------------------------------------------------
# building tangles and diagrams from fractions and expressions


def rational_tangle(s: Slope) -> Tangle:
    """Diagram of the rational tangle with fraction s, via its twist sequence."""
    entries = list(fraction_to_twists(s))
    t = Tangle.horizontal_twists(entries[0])
    for a in entries[1:]:
        t = tangle_sum(Tangle.horizontal_twists(a), t.mirrored().rotated())
    return t


def tangle_of_expression(expr) -> Tangle:
    """Build the diagram of a covers-module expression (Rat / Sum / Rot)."""
    from . import covers

    if isinstance(expr, covers.Rat):
        return rational_tangle(_rat_slope(expr))
    if isinstance(expr, covers.Sum):
        parts = [tangle_of_expression(c) for c in expr.children]
        out = parts[0]
        for p in parts[1:]:
            out = tangle_sum(out, p)
        return out
    if isinstance(expr, covers.Rot):
        return tangle_of_expression(expr.child).rotated()
    raise TypeError(expr)


def _rat_slope(r) -> Slope:
    from .slopes import slope_normalize

    return slope_normalize(r.p, r.q)


def diagram_of_expression(expr) -> Diagram:
    return closure_numerator(tangle_of_expression(expr))


# ---------------------------------------------------------------------------
# PD-code serialization


def to_pd_code(d: Diagram) -> str:
    """One line per crossing: X(a,b,c,d), slots anticlockwise from an under
    slot (the under slot with the smaller strand label); L() per free loop."""
    edge_label = {}
    nxt = 1
    for dart in sorted(d.pairs):
        if dart in edge_label:
            continue
        edge_label[dart] = nxt
        edge_label[d.pairs[dart]] = nxt
        nxt += 1
    lines = []
    for c in range(d.crossing_count):
        under = (1, 3) if not d.over_odd[c] else (0, 2)
        start = min(under, key=lambda s: edge_label[(c, s)])
        labels = [edge_label[(c, (start + k) % 4)] for k in range(4)]
        lines.append("X({},{},{},{})".format(*labels))
    lines.extend("L()" for _ in range(d.loops))
    return "\n".join(lines) + ("\n" if lines else "")


def from_pd_code(text: str) -> Diagram:
    """Parse the format written by :func:`to_pd_code`."""
    over_odd = []
    slots_by_label: dict[int, list] = {}
    loops = 0
    cid = 0
    for raw in text.strip().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "L()":
            loops += 1
            continue
        if not (line.startswith("X(") and line.endswith(")")):
            raise ValueError(f"bad PD line: {line!r}")
        labels = [int(x) for x in line[2:-1].split(",")]
        if len(labels) != 4:
            raise ValueError(f"bad PD line: {line!r}")
        # slots are listed anticlockwise from an under slot: under diagonal
        # is (0,2) in listed order; map listed order back to slots 0..3 with
        # the under strand on the even diagonal.
        over_odd.append(True)  # listed start slot is under => over is odd
        for k, lab in enumerate(labels):
            slots_by_label.setdefault(lab, []).append((cid, k))
        cid += 1
    pairs = {}
    for lab, ends in slots_by_label.items():
        if len(ends) != 2:
            raise ValueError(f"strand label {lab} appears {len(ends)} times")
        a, b = ends
        pairs[a] = b
        pairs[b] = a
    d = Diagram(over_odd, pairs, loops)
    if pairs:
        d.outer_dart = next(iter(sorted(pairs)))
    return d
