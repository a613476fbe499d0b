"""Closed-form count laws used by the construction and its checks.

All functions are pure integer arithmetic; none of them touch geometry, so
the algebra can be tested without building anything.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidCounts


@dataclass(frozen=True)
class BoundInputs:
    """Census numbers feeding the bound formulas.

    alpha: total number of arcs over all components (a witness upper bound
    on the minimal arc index).  c: a declared crossing count of some diagram
    (a witness upper bound on the minimal crossing number).
    """

    alpha: int
    c: int
    e: int
    v: int
    s: int
    b: int
    k: int

    def __post_init__(self):
        if self.e < 1 or self.v < 1 or self.s < 1:
            raise InvalidCounts("nonempty graphs need e, v, s >= 1")
        if not (0 <= self.k <= self.b <= self.s):
            raise InvalidCounts("need 0 <= k <= b <= s")
        if self.alpha < 1 or self.c < 0:
            raise InvalidCounts("alpha >= 1 and c >= 0 required")


def binding_point_count(alpha: int, v: int, e: int) -> int:
    """Number of binding points forced by arc, vertex and edge counts."""
    beta = alpha + v - e
    if beta < 1:
        raise InvalidCounts(f"binding count {beta} < 1 for alpha={alpha} v={v} e={e}")
    return beta


def arc_index_upper(c: int, e: int, b: int) -> int:
    """Upper bound on the arc index in terms of a crossing count."""
    return c + e + b


def construction_count(alpha: int, e: int, v: int, s: int, k: int) -> int:
    """Sticks used by the construction: 3*alpha + 3e - 4v - 2s + k."""
    n = 3 * alpha + 3 * e - 4 * v - 2 * s + k
    if n < 3:
        raise InvalidCounts(f"count {n} < 3 for a nonempty input")
    return n


def crossing_stick_bound(c: int, e: int, v: int, s: int, b: int, k: int) -> int:
    """Stick bound from a crossing count: 3c + 6e - 4v - 2s + 3b + k."""
    return 3 * c + 6 * e - 4 * v - 2 * s + 3 * b + k


def bounds_agree(c: int, e: int, v: int, s: int, b: int, k: int) -> bool:
    """Substituting alpha = c + e + b turns one bound into the other."""
    return construction_count(
        arc_index_upper(c, e, b), e, v, s, k
    ) == crossing_stick_bound(c, e, v, s, b, k)
