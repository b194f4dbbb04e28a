"""Layouts of the capability tables for optimal weighted Reed-Muller codes
and the matching Massey-Costello-Justesen codes.

Each table has one pair of columns per u: the weighted code ``W`` and the
code ``I`` with the largest dimension for the same footprint distance.
Rows are (multiplicity, bound label).  The labels map to bounds as

    S -> Schwartz-Zippel with multiplicity
    C -> two-variable closed form
    D -> recursive D function
    D2 -> restricted recursion (see :func:`wrmcodes.zeros.d_function`)

C, D and D2 are evaluated with the variables swapped unless the natural
order is requested.
"""
from __future__ import annotations

from dataclasses import dataclass

from .codes import MonomialSet, footprint_distance, make_monomial_set
from .mvdec import NoCapability, max_errors
from .rsdec import gs_capability_ultimate
from .zeros import BoundKind


@dataclass(frozen=True)
class TableLayout:
    name: str
    sizes: tuple
    field_order: int
    weights: tuple
    us: tuple
    rows: tuple  # (r, label)


LAYOUTS = {
    "64x8": TableLayout(
        "64x8", (64, 8), 64, (1, 8), (3, 4, 7, 15, 16, 20),
        ((2, "S"), (2, "C"), (2, "D"), (3, "S"), (3, "C"), (3, "D"), (4, "S"), (4, "C"), (4, "D"),
         (9, "S"), (9, "C"), (20, "S"), (20, "C"))),
    "256x16": TableLayout(
        "256x16", (256, 16), 256, (1, 16), (5, 8, 15, 31, 36, 55),
        ((2, "S"), (2, "C"), (2, "D"), (3, "S"), (3, "C"), (3, "D"), (4, "S"), (4, "C"),
         (9, "S"), (9, "C"), (20, "S"), (20, "C"))),
}

LABELS = {"S": "SZ", "C": "C", "D": "D", "D2": "D2"}


@dataclass(frozen=True)
class Column:
    label: str  # e.g. "u=15/W"
    u: int
    kind: str  # "W" or "I"
    monomials: MonomialSet
    distance: int


def columns(layout: TableLayout) -> list[Column]:
    out = []
    for u in layout.us:
        W = make_monomial_set("wrm", {"u": u, "w": layout.weights}, layout.sizes)
        d = footprint_distance(W, layout.sizes)
        I = make_monomial_set("mcj", {"delta": d}, layout.sizes)
        out.append(Column(f"u={u}/W", u, "W", W, d))
        out.append(Column(f"u={u}/I", u, "I", I, footprint_distance(I, layout.sizes)))
    return out


def bound_for(label: str, order: str = "swapped") -> BoundKind:
    tag = LABELS[label]
    if tag == "SZ" or order == "natural":
        return BoundKind(tag)
    if order != "swapped":
        raise ValueError(f"unknown order {order!r}")
    return BoundKind(tag, (1, 0))


def cell(layout: TableLayout, col: Column, r: int, label: str, order: str = "swapped") -> int | None:
    """Capability of one column at multiplicity r, or None if no E >= 0 works."""
    try:
        return max_errors(col.monomials, layout.sizes, r, bound_for(label, order))
    except NoCapability:
        return None


def sub_value(layout: TableLayout, col: Column) -> int:
    """Limiting list decoding radius through the Reed-Solomon supercode."""
    n = layout.sizes[0] * layout.sizes[1]
    t = max(sum(e) for e in col.monomials)
    k = t * layout.field_order ** (len(layout.sizes) - 1) + 1
    return gs_capability_ultimate(n, k) if k <= n else 0
