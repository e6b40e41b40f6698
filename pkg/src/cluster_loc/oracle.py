"""Independent hom-dimension oracle from quiver representations.

The linear quiver 1 -> 2 -> ... -> n is fixed once.  Representations carry a
vector space at every vertex and a map *along* each arrow (V_i -> V_{i+1});
with this orientation P_i = M_{i..n} and I_i = M_{1..i}.  Interval modules
M_{ij} are built implicitly (all spaces are 0- or 1-dimensional) and Hom
spaces are computed by solving the arrow-commutation equations, Ext^1 via the
two-term projective resolution 0 -> P_{j+1} -> P_i -> M_{ij} -> 0.

On top of mod kQ sits a stalk model of the orbit construction: objects are
pairs (interval, shift), the inverse translate of an injective stalk jumps
the shift by one, and hom spaces between orbit representatives are the sums
over twists sum_k Hom_D(X, F^k Y) with F = inverse-translate-then-shift.
Everything here is deliberately independent of the mesh category so the two
sides can be compared as separate computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .linalg import Mat, rank


@dataclass(frozen=True)
class Interval:
    """The indecomposable kQ-module supported on i..j (1-based, i <= j <= n)."""

    i: int
    j: int


@dataclass(frozen=True)
class Stalk:
    """An interval placed in a single cohomological degree."""

    mod: Interval
    shift: int


def hom_dim_mod(n: int, x: Interval, y: Interval) -> int:
    """dim Hom_kQ(x, y) by solving the arrow-commutation equations.

    Unknowns are the vertex components f_v (one scalar per vertex where both
    intervals are supported); the arrow v -> v+1 contributes the equation
    f_{v+1} . x_arrow = y_arrow . f_v whenever its domain and codomain spaces
    are nonzero.
    """

    def dx(v: int) -> bool:
        return x.i <= v <= x.j

    def dy(v: int) -> bool:
        return y.i <= v <= y.j

    slots = [v for v in range(1, n + 1) if dx(v) and dy(v)]
    if not slots:
        return 0
    idx = {v: k for k, v in enumerate(slots)}
    rows = []
    for v in range(1, n):  # arrow v -> v+1
        if not (dx(v) and dy(v + 1)):
            continue
        row = [0] * len(slots)
        if dx(v + 1):       # x's arrow map is the identity, f_{v+1} exists
            row[idx[v + 1]] += 1
        if dy(v):           # y's arrow map is the identity, f_v exists
            row[idx[v]] -= 1
        if any(row):
            rows.append(row)
    if not rows:
        return len(slots)
    return len(slots) - rank(Mat.from_rows(rows))


def ext1_dim_mod(n: int, x: Interval, y: Interval) -> int:
    """dim Ext^1_kQ(x, y) via 0 -> P_{j+1} -> P_i -> x -> 0."""
    if x.j == n:  # x projective
        return 0
    p0 = Interval(x.i, n)
    p1 = Interval(x.j + 1, n)
    # 0 -> Hom(x,y) -> Hom(P0,y) -> Hom(P1,y) -> Ext1(x,y) -> 0
    return (hom_dim_mod(n, p1, y) - hom_dim_mod(n, p0, y)
            + hom_dim_mod(n, x, y))


def tau_inv_stalk(n: int, s: Stalk) -> Stalk:
    """Inverse translate in the derived category; injectives jump one shift."""
    m = s.mod
    if m.i > 1:
        return Stalk(Interval(m.i - 1, m.j - 1), s.shift)
    return Stalk(Interval(m.j, n), s.shift + 1)   # inverse translate of I_j is P_j[1]


def hom_dim_derived(n: int, x: Stalk, y: Stalk) -> int:
    d = y.shift - x.shift
    if d == 0:
        return hom_dim_mod(n, x.mod, y.mod)
    if d == 1:
        return ext1_dim_mod(n, x.mod, y.mod)
    return 0


def hom_dim_orbit(n: int, x: Stalk, y: Stalk) -> int:
    """dim Hom in the orbit category: sum of Hom_D(x, F^k y) over twists."""
    total = 0
    cur = y
    for _ in range(4):
        total += hom_dim_derived(n, x, cur)
        t = tau_inv_stalk(n, cur)
        cur = Stalk(t.mod, t.shift + 1)
        if cur.shift - x.shift > 1:
            break  # shifts only grow from here, no further contributions
    return total


# -- labelled fundamental domain -----------------------------------------


def format_module_label(i: int, j: int) -> str:
    return f"M{i},{j}" if j > 9 else f"M{i}{j}"


def labels(n: int) -> list[str]:
    """Canonical object labels: interval modules then shifted projectives."""
    out = [format_module_label(i, j)
           for i in range(1, n + 1) for j in range(i, n + 1)]
    out.extend(f"SP{i}" for i in range(1, n + 1))
    return out


def label_to_stalk(n: int, label: str) -> Stalk:
    if label.startswith("SP"):
        i = int(label[2:])
        if not 1 <= i <= n:
            raise ValueError(f"bad projective index in {label!r}")
        return Stalk(Interval(i, n), 1)
    if label.startswith("M"):
        body = label[1:]
        if "," in body:
            si, sj = body.split(",")
        elif len(body) == 2:
            si, sj = body[0], body[1]
        else:
            raise ValueError(f"ambiguous module label {label!r}; use Mi,j")
        i, j = int(si), int(sj)
        if not 1 <= i <= j <= n:
            raise ValueError(f"bad interval in {label!r}")
        return Stalk(Interval(i, j), 0)
    raise ValueError(f"unknown label {label!r}")


@lru_cache(maxsize=None)
def label_hom_matrix(n: int) -> dict[tuple[str, str], int]:
    """All orbit hom dimensions between canonical labels."""
    labs = labels(n)
    stalks = {lab: label_to_stalk(n, lab) for lab in labs}
    return {(a, b): hom_dim_orbit(n, stalks[a], stalks[b])
            for a in labs for b in labs}
