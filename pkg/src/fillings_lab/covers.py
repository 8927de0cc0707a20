"""Double branched covers of algebraic (arborescent) tangle closures.

A tangle expression is built from rational tangles by horizontal sum and
quarter-turn rotation; the numerator closure of an expression is a link.
Its double branched cover is a graph manifold that this module computes
exactly, as a canonical :mod:`fillings_lab.manifolds` descriptor.

The calculus tracks, for the cover of each subtangle, a basis (x, y) of the
boundary torus: x is the lift of the slope-0 curve of the Conway sphere and
y the lift of the slope-1/0 curve.  A boundary curve of slope p/q has
coordinates (q, p).  The cover of a rational tangle of fraction p/q is a
solid torus with meridian (q, p); a horizontal sum glues covers along
vertical annuli, so the summands become Seifert pieces fibered in the y
direction; a quarter turn is the basis change (a, b) -> (b, -a).

Alongside the manifold-level evaluation there is a formal (numerator,
denominator) pair calculus.  The absolute numerator of the closure equals
the link determinant, hence |H1| of the cover; the two evaluations must
always agree, which the test suite checks against Goeritz determinants of
diagrams of the same expressions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import manifolds as mf
from .manifolds import ManifoldDesc, SeifertPiece

Vec = tuple[int, int]
Mat = tuple[Vec, Vec]

IDENT: Mat = ((1, 0), (0, 1))
QUARTER_TURN: Mat = ((0, 1), (-1, 0))


class OutsideFamilyError(ValueError):
    """The evaluation left the implemented graph-manifold family."""


# ---------------------------------------------------------------------------
# tangle expressions


@dataclass(frozen=True)
class Rat:
    """Rational tangle of fraction p/q (p/0 legal for the vertical tangle)."""

    p: int
    q: int


@dataclass(frozen=True)
class Sum:
    children: tuple

    def __init__(self, *children):
        flat = []
        for c in children:
            if isinstance(c, Sum):
                flat.extend(c.children)
            else:
                flat.append(c)
        object.__setattr__(self, "children", tuple(flat))


@dataclass(frozen=True)
class Rot:
    """Quarter-turn rotation; on fractions f -> -1/f."""

    child: object


def mirror(expr):
    """The mirror image of an expression (all crossings reversed)."""
    if isinstance(expr, Rat):
        return Rat(-expr.p, expr.q)
    if isinstance(expr, Sum):
        return Sum(*(mirror(c) for c in expr.children))
    if isinstance(expr, Rot):
        # mirror . rot = rot^-1 . mirror = rot^3 . mirror
        return Rot(Rot(Rot(mirror(expr.child))))
    raise TypeError(expr)


# ---------------------------------------------------------------------------
# formal determinant pairs


def formal_pair(expr) -> Vec:
    """Unreduced (numerator, denominator) pair of an expression."""
    if isinstance(expr, Rat):
        return (expr.p, expr.q)
    if isinstance(expr, Sum):
        n, d = 0, 1
        for c in expr.children:
            cn, cd = formal_pair(c)
            n, d = n * cd + cn * d, d * cd
        return (n, d)
    if isinstance(expr, Rot):
        n, d = formal_pair(expr.child)
        return (-d, n)
    raise TypeError(expr)


def closure_determinant(expr) -> int:
    """Link determinant of the numerator closure = |H1| of its cover."""
    n, _ = formal_pair(expr)
    return abs(n)


# ---------------------------------------------------------------------------
# 2x2 integer matrices


def mat_mul(m: Mat, n: Mat) -> Mat:
    return (
        (m[0][0] * n[0][0] + m[0][1] * n[1][0], m[0][0] * n[0][1] + m[0][1] * n[1][1]),
        (m[1][0] * n[0][0] + m[1][1] * n[1][0], m[1][0] * n[0][1] + m[1][1] * n[1][1]),
    )


def mat_vec(m: Mat, v: Vec) -> Vec:
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def mat_det(m: Mat) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def mat_inv(m: Mat) -> Mat:
    d = mat_det(m)
    if d not in (1, -1):
        raise ValueError("gluing matrices must be unimodular")
    return ((d * m[1][1], -d * m[0][1]), (-d * m[1][0], d * m[0][0]))


# ---------------------------------------------------------------------------
# cover values


@dataclass
class Node:
    """Seifert piece over a planar base, fibered along its internal y axis.

    ``legs`` are exceptional data (alpha >= 2) plus possibly degenerate
    (0, 1) entries whose meridian is fiber-parallel; ``attached`` are
    sub-pieces glued along tori, each with the matrix taking the child's
    internal basis into this node's internal basis.
    """

    b: int = 0
    legs: list[Vec] = field(default_factory=list)
    attached: list[tuple["Node", Mat]] = field(default_factory=list)

    def add_meridian_leg(self, v: Vec):
        a, b = v
        if a < 0:
            a, b = -a, -b
        if a == 0:
            self.legs.append((0, 1))
        elif a == 1:
            self.b += b
        else:
            self.legs.append((a, b))

    def genuine_legs(self) -> list[Vec]:
        return [leg for leg in self.legs if leg[0] >= 2]

    def zero_legs(self) -> int:
        return sum(1 for leg in self.legs if leg[0] == 0)


@dataclass
class Cover:
    """Cover of a subtangle: a solid torus or a node, in the current basis."""

    solid: Vec | None = None  # meridian, if a solid torus
    node: Node | None = None
    mat: Mat = IDENT  # node internal basis -> current basis


def _evaluate(expr) -> Cover:
    if isinstance(expr, Rat):
        return Cover(solid=(expr.q, expr.p))
    if isinstance(expr, Rot):
        c = _evaluate(expr.child)
        if c.solid is not None:
            return Cover(solid=mat_vec(QUARTER_TURN, c.solid))
        return Cover(node=c.node, mat=mat_mul(QUARTER_TURN, c.mat))
    if isinstance(expr, Sum):
        node = Node()
        for child_expr in expr.children:
            child = _evaluate(child_expr)
            if child.solid is not None:
                node.add_meridian_leg(child.solid)
                continue
            m = child.mat
            fiber_image = mat_vec(m, (0, 1))
            if fiber_image[0] == 0:
                _merge_node(node, child.node, m)
            else:
                node.attached.append((child.node, m))
        return Cover(node=node)
    raise TypeError(expr)


def _merge_node(parent: Node, child: Node, m: Mat):
    """Fold a child whose fiber is parallel to the parent fiber."""
    for leg in child.legs + [(1, child.b)]:
        parent.add_meridian_leg(mat_vec(m, leg))
    for sub, sub_m in child.attached:
        parent.attached.append((sub, mat_mul(m, sub_m)))


def cover_of_closure(expr) -> ManifoldDesc:
    """Canonical descriptor of the double branched cover of N(expr)."""
    c = _evaluate(expr)
    if c.solid is not None:
        # two solid tori: a lens space read from the meridian pairing
        return mf.lens_space(c.solid[1], c.solid[0])
    # numerator closure caps the boundary with the slope-0 solid torus,
    # closing the base surface of the top node to a sphere
    node = c.node
    cap = mat_vec(mat_inv(c.mat), (1, 0))
    node.add_meridian_leg(cap)
    return _normalize_closed(node)


def fill_node(node: Node, slope: Vec) -> ManifoldDesc:
    """Close a one-boundary node by a solid torus of the given meridian."""
    filled = Node(node.b, list(node.legs), list(node.attached))
    filled.add_meridian_leg(slope)
    return _normalize_closed(filled)


def _solid_meridian(node: Node) -> Vec:
    """Meridian of a node that is a solid torus (<= 1 exceptional leg)."""
    legs = node.genuine_legs()
    if legs:
        alpha, beta = legs[0]
        return (alpha, beta + node.b * alpha)
    return (1, node.b)


def _split_degenerate(node: Node, summands: list) -> Vec:
    """A node whose fiber bounds: collect summands, return the remnant meridian.

    The compressing disk splits off one lens space per exceptional leg, one
    S2xS1 per extra degenerate leg, and fiber-fills every attached piece;
    what remains is a solid torus whose meridian is the fiber direction.
    """
    for alpha, beta in node.genuine_legs():
        summands.append(mf.lens_space(alpha, beta))
    for _ in range(node.zero_legs() - 1):
        summands.append(mf.S2xS1())
    for sub, sub_m in node.attached:
        slope = mat_vec(mat_inv(sub_m), (0, 1))
        summands.append(fill_node(sub, slope))
    return (0, 1)


def _absorb_children(node: Node, summands: list) -> bool:
    """Fold attached pieces that are solid tori or degenerate, recursively.

    Returns True when anything was simplified, so callers iterate to a
    fixed point (a splice can expose a new absorbable piece).
    """
    changed = False
    remaining = []
    for child, m in node.attached:
        while _absorb_children(child, summands):
            changed = True
        if child.zero_legs() > 0:
            node.add_meridian_leg(mat_vec(m, _split_degenerate(child, summands)))
            changed = True
        elif not child.attached and len(child.genuine_legs()) <= 1:
            node.add_meridian_leg(mat_vec(m, _solid_meridian(child)))
            changed = True
        elif len(child.attached) == 1 and not child.genuine_legs():
            # exceptional-fiber-free annulus piece in the middle of a chain:
            # splice the grandchild straight through (same matrix convention
            # as the top-level pass-through)
            grand, m2 = child.attached[0]
            pass_through: Mat = ((-1, 0), (child.b, 1))
            g = mat_mul(m, mat_mul(pass_through, mat_mul(m2, ((1, 0), (0, -1)))))
            remaining.append((grand, g))
            changed = True
        else:
            fiber_image = mat_vec(m, (0, 1))
            if fiber_image[0] == 0:
                _merge_node(node, child, m)
                changed = True
            else:
                remaining.append((child, m))
    node.attached = remaining
    return changed


def _with_summands(core: ManifoldDesc, summands: list) -> ManifoldDesc:
    parts: list[ManifoldDesc] = []
    for p in [core] + summands:
        if isinstance(p, mf.ConnSum):
            parts.extend(p.parts)
        elif not isinstance(p, mf.S3):
            parts.append(p)
    if not parts:
        return mf.S3()
    if len(parts) == 1:
        return parts[0]
    return mf.ConnSum(tuple(parts))


def _normalize_closed(node: Node) -> ManifoldDesc:
    summands: list[ManifoldDesc] = []
    changed = True
    while changed:
        changed = False
        while _absorb_children(node, summands):
            pass

        if node.zero_legs() > 0:
            _split_degenerate(node, summands)
            return _with_summands(mf.S3(), summands)

        if len(node.attached) == 1 and len(node.genuine_legs()) <= 1:
            # this (capped) side is a solid torus filling the attached piece;
            # its meridian re-enters the child through the leg convention,
            # which already accounts for the boundary orientation
            child, m = node.attached[0]
            meridian = mat_vec(mat_inv(m), _solid_meridian(node))
            node = Node(child.b, list(child.legs), list(child.attached))
            node.add_meridian_leg(meridian)
            changed = True
            continue

        if len(node.attached) == 2 and not node.genuine_legs():
            # Tube through an exceptional-fiber-free annulus piece: the two
            # children become directly glued.  Crossing the annulus negates
            # the section and twists by the framing; passing from one
            # boundary orientation to the other mirrors the fiber.
            (c1, m1), (c2, m2) = node.attached
            pass_through: Mat = ((-1, 0), (node.b, 1))
            m2_flipped = mat_mul(m2, ((1, 0), (0, -1)))
            g = mat_mul(mat_inv(m1), mat_mul(pass_through, m2_flipped))
            c1.attached.append((c2, g))
            node = c1
            changed = True
            continue

    if not node.attached:
        piece = SeifertPiece("sphere", tuple(node.legs), node.b)
        return _with_summands(mf.sfs_space(piece), summands)

    if len(node.attached) == 1:
        child, m = node.attached[0]
        if child.attached:
            raise OutsideFamilyError(
                "cover decomposes into a chain of three or more Seifert "
                "pieces; outside the implemented family"
            )
        delta = abs(mat_vec(m, (0, 1))[0])
        if delta == 0:
            merged = Node(node.b, list(node.legs), [])
            _merge_node(merged, child, m)
            return _with_summands(_normalize_closed(merged), summands)
        left = SeifertPiece("disk", tuple(node.legs), node.b)
        right = SeifertPiece("disk", tuple(child.legs), child.b)
        return _with_summands(mf.TorusUnion(left, right, delta, gluing=m), summands)

    raise OutsideFamilyError(
        "cover decomposes into three or more Seifert pieces; "
        "outside the implemented family"
    )
