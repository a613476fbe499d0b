"""Certification of embeddings: self-avoidance, junctions, reconstruction.

The checks are deliberately independent of how the embedding was built: they
look only at the stick set and the vertex markers, so they catch construction
bugs rather than inheriting them.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .bounds import arc_index_upper, construction_count, crossing_stick_bound
from .errors import BoundViolated, ReconstructionMismatch
from .geom import Stick, Vec3, collinear, contact
from .graph import GraphCensus, SpatialGraphSpec, derive_edges


@dataclass(frozen=True)
class StickCounts:
    x: int
    y: int
    z: int

    @property
    def total(self) -> int:
        return self.x + self.y + self.z


@dataclass
class AuditReport:
    violations: list[tuple[str, Vec3]] = field(default_factory=list)
    unmarked_junctions: list[Vec3] = field(default_factory=list)
    marker_problems: list[str] = field(default_factory=list)
    reconstruction_ok: bool | None = None
    reconstruction_diff: list[str] = field(default_factory=list)
    counts: StickCounts | None = None

    @property
    def self_avoiding(self) -> bool:
        return not self.violations

    @property
    def clean(self) -> bool:
        return (
            self.self_avoiding
            and not self.unmarked_junctions
            and not self.marker_problems
            and self.reconstruction_ok is not False
        )


def endpoint_census(sticks: list[Stick]) -> dict[Vec3, list[int]]:
    ends: dict[Vec3, list[int]] = {}
    for i, s in enumerate(sticks):
        for p in s.ends():
            ends.setdefault(p, []).append(i)
    return ends


def check_self_avoiding(
    sticks: list[Stick],
    markers: dict[str, Vec3] | None = None,
    interior_only: bool = False,
) -> list[tuple[str, Vec3]]:
    """All pairwise stick contacts that are not legitimate.

    Interior crossings, collinear overlaps and endpoint-in-interior contacts
    are always violations.  A shared endpoint is fine where a polyline bend
    joins exactly two sticks or a vertex marker sits; ``interior_only``
    relaxes the endpoint rule for mid-pipeline states that have no markers
    yet (binding columns legitimately carry degree-3 junction points there).
    """
    marker_points = set((markers or {}).values())
    ends = endpoint_census(sticks)
    violations: list[tuple[str, Vec3]] = []
    for i in range(len(sticks)):
        for j in range(i + 1, len(sticks)):
            c = contact(sticks[i], sticks[j])
            if c is None:
                continue
            kind, p = c
            if kind == "endpoint":
                if interior_only or p in marker_points or len(ends[p]) == 2:
                    continue
                violations.append(("endpoint_junction_unmarked", p))
            else:
                violations.append((kind, p))
    return violations


def audit_junctions(
    sticks: list[Stick],
    markers: dict[str, Vec3],
    degrees: dict[str, int] | None = None,
) -> tuple[list[Vec3], list[str]]:
    """Check that junction points and vertex markers agree.

    Every point where three or more stick ends meet must carry a marker;
    marker incidences must use pairwise distinct axis directions and, when
    the expected degrees are supplied, match them exactly.
    """
    ends = endpoint_census(sticks)
    marker_points = {p: label for label, p in markers.items()}
    if len(marker_points) != len(markers):
        return [], ["two vertex markers share one point"]

    unmarked = [
        p for p, incident in ends.items() if len(incident) > 2 and p not in marker_points
    ]
    problems: list[str] = []
    for label, p in sorted(markers.items()):
        incident = ends.get(p, [])
        if not incident:
            problems.append(f"marker {label} at {p} not on any stick endpoint")
            continue
        dirs = [sticks[i].direction_from(p) for i in incident]
        if len(set(dirs)) != len(dirs):
            problems.append(f"marker {label} has repeated incident directions")
        if degrees is not None and len(incident) != degrees.get(label):
            problems.append(
                f"marker {label} incidence {len(incident)} != degree {degrees.get(label)}"
            )
    return sorted(unmarked), problems


def count_sticks(sticks: list[Stick], markers: dict[str, Vec3]) -> StickCounts:
    """Count maximal straight runs; a vertex marker always ends a run.

    Collinear sticks joined end to end at an unmarked bend-free point are one
    stick; a marker in the middle of a straight line still separates two.
    """
    marker_points = set(markers.values())
    ends = endpoint_census(sticks)
    parent = list(range(len(sticks)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for p, incident in ends.items():
        if len(incident) != 2 or p in marker_points:
            continue
        i, j = incident
        if collinear(sticks[i], sticks[j]):
            parent[find(i)] = find(j)

    by_axis = Counter(sticks[find(i)].axis for i in {find(i) for i in range(len(sticks))})
    return StickCounts(x=by_axis.get(0, 0), y=by_axis.get(1, 0), z=by_axis.get(2, 0))


def walk_edges(
    sticks: list[Stick], markers: dict[str, Vec3]
) -> tuple[list[tuple[str, str, list[Vec3], list[int]]], list[str]]:
    """Trace maximal paths between markers through degree-2 points.

    Returns (edges, problems) where each edge is (start label, end label,
    polyline, stick indices).  Walk order is deterministic.
    """
    ends = endpoint_census(sticks)
    marker_points = {p: label for label, p in markers.items()}
    used = [False] * len(sticks)
    edges: list[tuple[str, str, list[Vec3], list[int]]] = []
    problems: list[str] = []

    for label, start in sorted(markers.items()):
        for i in sorted(ends.get(start, []), key=lambda i: (sticks[i].a, sticks[i].b)):
            if used[i]:
                continue
            polyline = [start]
            indices = []
            p, cur = start, i
            while True:
                used[cur] = True
                indices.append(cur)
                s = sticks[cur]
                p = s.b if p == s.a else s.a
                polyline.append(p)
                if p in marker_points:
                    break
                incident = ends.get(p, [])
                if len(incident) != 2:
                    problems.append(f"walk from {label} hit a bad point {p}")
                    break
                cur = incident[0] if incident[1] == cur else incident[1]
                if used[cur]:
                    problems.append(f"walk from {label} revisited a stick at {p}")
                    break
            else:  # pragma: no cover
                continue
            if p in marker_points:
                edges.append((label, marker_points[p], polyline, indices))
    if not all(used):
        leftover = [i for i, u in enumerate(used) if not u]
        problems.append(f"{len(leftover)} sticks unreachable from any marker")
    return edges, problems


def reconstruct_graph(
    sticks: list[Stick], markers: dict[str, Vec3], spec: SpatialGraphSpec
):
    """Read the abstract graph back from geometry and diff it against the input.

    Raises ReconstructionMismatch when vertex labels or the edge multiset
    (as unordered label pairs) disagree.
    """
    walked, problems = walk_edges(sticks, markers)
    diff = list(problems)

    expected_vertices = set()
    expected_edges: Counter = Counter()
    for comp in spec.components:
        expected_vertices |= set(comp.presentation.labels.values())
        for tr in derive_edges(comp):
            expected_edges[tuple(sorted((tr.v_start, tr.v_end)))] += 1
    got_vertices = set(markers)
    got_edges = Counter(tuple(sorted((a, b))) for a, b, _, _ in walked)

    if got_vertices != expected_vertices:
        diff.append(
            f"vertices differ: missing {sorted(expected_vertices - got_vertices)}, "
            f"extra {sorted(got_vertices - expected_vertices)}"
        )
    if got_edges != expected_edges:
        diff.append(f"edge multiset differs: expected {dict(expected_edges)}, got {dict(got_edges)}")
    if diff:
        raise ReconstructionMismatch("embedding does not realize the input graph", diff)
    return walked


@dataclass(frozen=True)
class BoundReport:
    total: int
    construction_bound: int
    crossing_bound: int | None
    alpha_within_arc_bound: bool | None
    ok: bool


def check_bound(
    counts: StickCounts,
    cens: GraphCensus,
    alpha_total: int,
    declared_crossings: int | None = None,
) -> BoundReport:
    """Assert the built stick count against both closed-form bounds."""
    limit = construction_count(alpha_total, cens.e, cens.v, cens.s, cens.k)
    crossing_bound = None
    alpha_ok = None
    if declared_crossings is not None:
        alpha_ok = alpha_total <= arc_index_upper(declared_crossings, cens.e, cens.b)
        crossing_bound = crossing_stick_bound(
            declared_crossings, cens.e, cens.v, cens.s, cens.b, cens.k
        )
    report = BoundReport(
        total=counts.total,
        construction_bound=limit,
        crossing_bound=crossing_bound,
        alpha_within_arc_bound=alpha_ok,
        ok=counts.total <= limit
        and (crossing_bound is None or not alpha_ok or counts.total <= crossing_bound),
    )
    if not report.ok:
        raise BoundViolated(
            f"built {counts.total} sticks, bounds: construction {limit}, "
            f"crossing {crossing_bound}"
        )
    return report


def full_audit(
    sticks: list[Stick],
    markers: dict[str, Vec3],
    spec: SpatialGraphSpec | None = None,
    degrees: dict[str, int] | None = None,
) -> AuditReport:
    report = AuditReport()
    report.violations = check_self_avoiding(sticks, markers)
    report.unmarked_junctions, report.marker_problems = audit_junctions(
        sticks, markers, degrees
    )
    report.counts = count_sticks(sticks, markers)
    if spec is not None:
        try:
            reconstruct_graph(sticks, markers, spec)
            report.reconstruction_ok = True
        except ReconstructionMismatch as exc:
            report.reconstruction_ok = False
            report.reconstruction_diff = exc.diff
    return report
