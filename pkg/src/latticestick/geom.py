"""Exact axis-parallel segment geometry over the rationals.

Every coordinate in the pipeline is a ``fractions.Fraction``; there are no
tolerances anywhere.  A stick is a closed segment parallel to one of the three
axes with strictly positive length.  Contact classification between two sticks
reduces to interval arithmetic per coordinate, since the intersection of two
axis-parallel segments is the intersection of their bounding boxes.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

Vec3 = tuple[Fraction, Fraction, Fraction]


def point(x, y, z) -> Vec3:
    return (Fraction(x), Fraction(y), Fraction(z))


@dataclass(frozen=True)
class Stick:
    """Closed axis-parallel segment from ``a`` to ``b`` (ordered along its axis).

    ``comp`` tags the cut-component that produced the stick and ``kind`` its
    role in the construction; both are metadata and never affect geometry.
    """

    a: Vec3
    b: Vec3
    comp: str = ""
    kind: str = ""

    @property
    def axis(self) -> int:
        for i in range(3):
            if self.a[i] != self.b[i]:
                return i
        raise ValueError(f"zero-length stick at {self.a}")

    @property
    def length(self) -> Fraction:
        i = self.axis
        return self.b[i] - self.a[i]

    def ends(self) -> tuple[Vec3, Vec3]:
        return (self.a, self.b)

    def has_end(self, p: Vec3) -> bool:
        return p == self.a or p == self.b

    def contains(self, p: Vec3) -> bool:
        return all(self.a[i] <= p[i] <= self.b[i] for i in range(3))

    def interior_contains(self, p: Vec3) -> bool:
        return self.contains(p) and not self.has_end(p)

    def direction_from(self, p: Vec3) -> tuple[int, int, int]:
        """Unit direction pointing from endpoint ``p`` into the stick."""
        if p == self.a:
            other = self.b
        elif p == self.b:
            other = self.a
        else:
            raise ValueError(f"{p} is not an endpoint")
        return tuple(
            0 if other[i] == p[i] else (1 if other[i] > p[i] else -1) for i in range(3)
        )


def stick(a: Vec3, b: Vec3, comp: str = "", kind: str = "") -> Stick:
    """Build a stick, normalising endpoint order and rejecting degeneracy."""
    a = tuple(Fraction(c) for c in a)
    b = tuple(Fraction(c) for c in b)
    diff = [i for i in range(3) if a[i] != b[i]]
    if len(diff) != 1:
        raise ValueError(f"not axis-parallel or zero length: {a} -> {b}")
    if a > b:
        a, b = b, a
    return Stick(a, b, comp, kind)


def transform(s: Stick, scale: Fraction = Fraction(1), offset: Vec3 = (0, 0, 0)) -> Stick:
    f = Fraction(scale)
    if f <= 0:
        raise ValueError("scale must be positive")
    off = tuple(Fraction(c) for c in offset)
    return replace(
        s,
        a=tuple(f * c + o for c, o in zip(s.a, off)),
        b=tuple(f * c + o for c, o in zip(s.b, off)),
    )


def transform_point(p: Vec3, scale: Fraction = Fraction(1), offset: Vec3 = (0, 0, 0)) -> Vec3:
    f = Fraction(scale)
    off = tuple(Fraction(c) for c in offset)
    return tuple(f * c + o for c, o in zip(p, off))


def contact(s: Stick, t: Stick):
    """Classify the contact between two sticks.

    Returns ``None`` when disjoint, ``("endpoint", p)`` when they share exactly
    one point that is an endpoint of both, and otherwise a violation tuple:
    ``("overlap", p)`` for collinear interior overlap, ``("t_contact", p)``
    when an endpoint of one lies in the interior of the other, ``("cross", p)``
    for an interior-interior crossing.
    """
    lo = tuple(max(s.a[i], t.a[i]) for i in range(3))
    hi = tuple(min(s.b[i], t.b[i]) for i in range(3))
    if any(lo[i] > hi[i] for i in range(3)):
        return None
    if lo != hi:
        return ("overlap", lo)
    p = lo
    on_s_end = s.has_end(p)
    on_t_end = t.has_end(p)
    if on_s_end and on_t_end:
        return ("endpoint", p)
    if on_s_end or on_t_end:
        return ("t_contact", p)
    return ("cross", p)


def collinear(s: Stick, t: Stick) -> bool:
    """True when the two sticks lie on one axis-parallel line."""
    if s.axis != t.axis:
        return False
    fixed = [i for i in range(3) if i != s.axis]
    return all(s.a[i] == t.a[i] for i in fixed)
