"""Diagonals of a convex polygon: the object-level combinatorics.

Vertices of the (n+3)-gon are labelled 0..n+2 clockwise.  A diagonal (``Arc``)
is stored with ``a < b`` and ``2 <= b - a <= n + 1``; boundary edges are not
arcs and play the role of the zero object wherever a smoothing produces them.

The suspension acts on arcs by subtracting 1 from both endpoints mod n+3;
``rotate(p, x, k)`` applies that shift k times.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Polygon:
    """Rank-n model polygon with n+3 cyclically ordered vertices."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("polygon rank must be >= 1")

    @property
    def vertex_count(self) -> int:
        return self.n + 3


@dataclass(frozen=True, order=True)
class Arc:
    a: int
    b: int

    def __str__(self) -> str:
        return f"{self.a}-{self.b}"


def make_arc(p: Polygon, a: int, b: int) -> Arc:
    """Canonical arc with endpoints a, b (mod n+3); raises on boundary edges."""
    arc = arc_or_none(p, a, b)
    if arc is None:
        raise ValueError(f"({a},{b}) is not a diagonal of the {p.vertex_count}-gon")
    return arc


def arc_or_none(p: Polygon, a: int, b: int) -> Arc | None:
    m = p.vertex_count
    a %= m
    b %= m
    if a > b:
        a, b = b, a
    if not (2 <= b - a <= p.n + 1):
        return None
    return Arc(a, b)


def parse_arc(p: Polygon, text: str) -> Arc:
    parts = text.split("-")
    if len(parts) != 2:
        raise ValueError(f"bad arc literal {text!r}; expected 'a-b'")
    return make_arc(p, int(parts[0]), int(parts[1]))


def enumerate_arcs(p: Polygon) -> list[Arc]:
    """All (n+3)n/2 diagonals, lexicographic in (a, b)."""
    out = []
    for a in range(p.vertex_count):
        for b in range(a + 2, p.vertex_count):
            if b - a <= p.n + 1:
                out.append(Arc(a, b))
    return out


def crosses(p: Polygon, x: Arc, y: Arc) -> bool:
    """True iff x and y intersect in the polygon interior.

    Endpoints must strictly interleave; equal arcs and arcs sharing an
    endpoint do not cross.
    """
    if len({x.a, x.b, y.a, y.b}) < 4:
        return False

    def inside(v: int) -> bool:
        return x.a < v < x.b

    return inside(y.a) != inside(y.b)


def rotate(p: Polygon, x: Arc, k: int) -> Arc:
    """Shift both endpoints by -k mod n+3 (k = 1 is one suspension step)."""
    arc = arc_or_none(p, x.a - k, x.b - k)
    assert arc is not None  # rotation preserves the cyclic gap pattern
    return arc


def smooth_crossing(p: Polygon, x: Arc, y: Arc) -> list[Arc]:
    """Resolve the crossing of x and y; 0, 1 or 2 diagonals.

    Each endpoint of x is joined to the endpoint of y that follows it
    clockwise (labels increase clockwise).  Boundary edges are dropped.
    With this orientation the output E fits in a triangle y -> E -> x -> Σy
    of the ambient category; the triangle engine certifies that fact.
    """
    if not crosses(p, x, y):
        raise ValueError(f"arcs {x} and {y} do not cross")
    m = p.vertex_count
    ys = {y.a, y.b}
    out = []
    for e in (x.a, x.b):
        v = (e + 1) % m
        while v not in ys:
            v = (v + 1) % m
        arc = arc_or_none(p, e, v)
        if arc is not None:
            out.append(arc)
    return sorted(out)
