"""Arc presentations: pages, binding points and their consistency laws.

A component's presentation lists binding points 1..beta along the axis and
arcs, one per page 1..alpha, each joining two distinct binding points.
Binding points either carry a vertex label or are interior points of an edge,
in which case exactly two arcs must meet there.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UnknownBindingPoint


@dataclass(frozen=True)
class Arc:
    page: int
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo >= self.hi:
            raise ValueError(f"arc endpoints must satisfy lo < hi, got {self.lo}, {self.hi}")

    def other_end(self, bp: int) -> int:
        if bp == self.lo:
            return self.hi
        if bp == self.hi:
            return self.lo
        raise ValueError(f"binding point {bp} not on arc page {self.page}")


@dataclass(frozen=True)
class ArcPresentation:
    """Arcs plus vertex labels keyed by binding index (1-based)."""

    arcs: tuple[Arc, ...]
    labels: dict[int, str] = field(default_factory=dict)

    @property
    def alpha(self) -> int:
        return len(self.arcs)

    @property
    def beta(self) -> int:
        return max((max(a.lo, a.hi) for a in self.arcs), default=0)

    def arcs_at(self, bp: int) -> list[Arc]:
        return [a for a in self.arcs if bp in (a.lo, a.hi)]

    def degree(self, bp: int) -> int:
        return len(self.arcs_at(bp))


def presentation(arc_pairs, labels=None) -> ArcPresentation:
    """Build a presentation from (lo, hi) pairs in page order."""
    arcs = tuple(Arc(page, lo, hi) for page, (lo, hi) in enumerate(arc_pairs, start=1))
    return ArcPresentation(arcs, dict(labels or {}))


def incident_levels(pres: ArcPresentation, bp: int) -> list[int]:
    """Sorted page numbers of the arcs meeting binding point ``bp``."""
    if not (1 <= bp <= pres.beta):
        raise UnknownBindingPoint(f"binding point {bp} outside 1..{pres.beta}")
    return sorted(a.page for a in pres.arcs_at(bp))


def validate_presentation(pres: ArcPresentation, derived_edge_count: int | None = None) -> list[str]:
    """Return all structural violations of a presentation.

    When ``derived_edge_count`` is known, also checks the binding-point law
    beta = alpha + v - e and the endpoint identity
    2*alpha = 2*(beta - v) + sum of within-component degrees at vertices.
    """
    problems: list[str] = []
    alpha = pres.alpha
    pages = sorted(a.page for a in pres.arcs)
    if pages != list(range(1, alpha + 1)):
        problems.append(f"pages are not a bijection with 1..{alpha}: {pages}")
    beta = pres.beta
    for a in pres.arcs:
        if not (1 <= a.lo < a.hi <= beta):
            problems.append(f"arc page {a.page} endpoints {a.lo},{a.hi} out of range 1..{beta}")
    for bp in range(1, beta + 1):
        d = pres.degree(bp)
        if d == 0:
            problems.append(f"binding point {bp} has no incident arc")
        elif bp not in pres.labels and d != 2:
            problems.append(f"unlabeled binding point {bp} has degree {d}, expected 2")
    for bp in pres.labels:
        if not (1 <= bp <= beta):
            problems.append(f"label on nonexistent binding point {bp}")
    if len(set(pres.labels.values())) != len(pres.labels):
        problems.append("duplicate vertex label inside one component")
    if derived_edge_count is not None and not problems:
        v = len(pres.labels)
        if beta != alpha + v - derived_edge_count:
            problems.append(
                f"binding-point law fails: beta={beta} != alpha+v-e = "
                f"{alpha}+{v}-{derived_edge_count}"
            )
        vertex_degrees = sum(pres.degree(bp) for bp in pres.labels)
        if 2 * alpha != 2 * (beta - v) + vertex_degrees:
            problems.append(
                f"endpoint identity fails: 2*{alpha} != 2*({beta}-{v}) + {vertex_degrees}"
            )
    return problems
