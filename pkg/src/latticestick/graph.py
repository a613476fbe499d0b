"""Abstract spatial-graph model: components, attachments, census.

The cut decomposition is part of the input; this module only validates it.
Edges are never declared by the user: they are recovered by walking arcs
through the unlabeled (degree-2) binding points of each presentation.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field

from .arcs import ArcPresentation, validate_presentation
from .errors import NoValidRoot, UnlabeledEndpoint


class ComponentClass(enum.Enum):
    ARC = "arc"
    THETA = "theta"
    BOUQUET = "bouquet"
    KNOT = "knot"
    GENERAL = "general"


@dataclass(frozen=True)
class ComponentSpec:
    id: str
    presentation: ArcPresentation


@dataclass(frozen=True)
class CutAttachment:
    stem: str
    branch: str
    cut_vertex: str


@dataclass(frozen=True)
class SpatialGraphSpec:
    components: tuple[ComponentSpec, ...]
    attachments: tuple[CutAttachment, ...] = ()
    declared_crossings: int | None = None

    def component(self, comp_id: str) -> ComponentSpec:
        for c in self.components:
            if c.id == comp_id:
                return c
        raise KeyError(comp_id)


@dataclass(frozen=True)
class EdgeTrace:
    """One edge as the ordered arcs it passes through, page numbers only."""

    comp: str
    index: int
    v_start: str
    v_end: str
    pages: tuple[int, ...]

    @property
    def edge_id(self) -> str:
        return f"{self.comp}/e{self.index}"

    @property
    def is_loop(self) -> bool:
        return self.v_start == self.v_end


@dataclass(frozen=True)
class CutTree:
    """Rooted forest over component ids, re-indexed depth first.

    ``order`` lists every component so that each stem precedes its branches
    and every subtree is contiguous.  ``parent`` maps a branch to its
    (stem id, cut vertex) pair; roots are absent from it.
    """

    order: tuple[str, ...]
    parent: dict[str, tuple[str, str]]
    roots: tuple[str, ...]

    def children(self, comp_id: str) -> list[tuple[str, str]]:
        return [(b, v) for b, (s, v) in self.parent.items() if s == comp_id]

    def subtree(self, comp_id: str) -> list[str]:
        i = self.order.index(comp_id)
        out = [comp_id]
        descendants = {comp_id}
        for other in self.order[i + 1:]:
            p = self.parent.get(other)
            if p and p[0] in descendants:
                out.append(other)
                descendants.add(other)
            else:
                break
        return out


@dataclass(frozen=True)
class GraphCensus:
    e: int
    v: int
    s: int
    b: int
    k: int
    alpha_total: int
    degrees: dict[str, int] = field(default_factory=dict)


def derive_edges(comp: ComponentSpec) -> list[EdgeTrace]:
    """Recover edges by walking arcs through degree-2 unlabeled points."""
    pres = comp.presentation
    labels = pres.labels
    used: set[int] = set()
    edges: list[EdgeTrace] = []

    def walk(start_bp: int, first_arc):
        pages = [first_arc.page]
        bp = first_arc.other_end(start_bp)
        arc = first_arc
        while bp not in labels:
            nxt = [a for a in pres.arcs_at(bp) if a.page != arc.page]
            if len(nxt) != 1:
                raise UnlabeledEndpoint(
                    f"component {comp.id}: unlabeled binding point {bp} has "
                    f"{pres.degree(bp)} incident arcs"
                )
            arc = nxt[0]
            pages.append(arc.page)
            bp = arc.other_end(bp)
        return bp, pages

    for start_bp in sorted(labels):
        for first_arc in sorted(pres.arcs_at(start_bp), key=lambda a: a.page):
            if first_arc.page in used:
                continue
            end_bp, pages = walk(start_bp, first_arc)
            used.update(pages)
            edges.append(
                EdgeTrace(
                    comp.id, len(edges), labels[start_bp], labels[end_bp], tuple(pages)
                )
            )
    if len(used) != pres.alpha:
        raise UnlabeledEndpoint(
            f"component {comp.id}: arcs {sorted(set(range(1, pres.alpha + 1)) - used)} "
            "form a closed walk with no vertex"
        )
    return edges


def _component_connected(pres: ArcPresentation) -> bool:
    if not pres.arcs:
        return False
    seen = {pres.arcs[0].lo}
    frontier = [pres.arcs[0].lo]
    while frontier:
        bp = frontier.pop()
        for a in pres.arcs_at(bp):
            o = a.other_end(bp)
            if o not in seen:
                seen.add(o)
                frontier.append(o)
    return len(seen) == pres.beta


def total_degrees(spec: SpatialGraphSpec) -> dict[str, int]:
    """Vertex label -> total degree, summing arc ends over all components."""
    degrees: Counter[str] = Counter()
    for comp in spec.components:
        pres = comp.presentation
        for bp, label in pres.labels.items():
            degrees[label] += pres.degree(bp)
    return dict(degrees)


def classify_component(spec: SpatialGraphSpec, comp: ComponentSpec) -> ComponentClass:
    """Classify one component; the knot case requires total degree 2."""
    edges = derive_edges(comp)
    vertices = set(comp.presentation.labels.values())
    loops = [e for e in edges if e.is_loop]
    if len(edges) == 1 and not loops and len(vertices) == 2:
        return ComponentClass.ARC
    if len(vertices) == 1 and len(loops) == len(edges):
        if len(edges) == 1 and total_degrees(spec)[next(iter(vertices))] == 2:
            return ComponentClass.KNOT
        return ComponentClass.BOUQUET
    if len(vertices) == 2 and not loops and len(edges) >= 2:
        ends = {frozenset((e.v_start, e.v_end)) for e in edges}
        if len(ends) == 1:
            return ComponentClass.THETA
    return ComponentClass.GENERAL


def validate_spec(spec: SpatialGraphSpec) -> list[str]:
    """Collect every violation; an empty list means the input is buildable."""
    problems: list[str] = []
    ids = [c.id for c in spec.components]
    if len(set(ids)) != len(ids):
        problems.append("component identifiers are not unique")
        return problems
    if not ids:
        problems.append("no components")
        return problems

    comp_by_id = {c.id: c for c in spec.components}
    label_points: dict[str, dict[str, int]] = {}
    for comp in spec.components:
        pres = comp.presentation
        edge_count = None
        pres_problems = validate_presentation(pres)
        if not pres_problems:
            if not pres.labels:
                pres_problems.append(f"component {comp.id} has no vertex-labeled binding point")
            elif not _component_connected(pres):
                pres_problems.append(f"component {comp.id} is not connected")
            else:
                try:
                    edge_count = len(derive_edges(comp))
                except UnlabeledEndpoint as exc:
                    pres_problems.append(str(exc))
        if edge_count is not None:
            pres_problems.extend(
                f"component {comp.id}: {p}"
                for p in validate_presentation(pres, edge_count)
            )
        else:
            pres_problems = [
                p if p.startswith("component") else f"component {comp.id}: {p}"
                for p in pres_problems
            ]
        problems.extend(pres_problems)
        for bp, label in pres.labels.items():
            label_points.setdefault(label, {})[comp.id] = bp
    if problems:
        return problems

    # Attachment forest: each branch has one stem, no cycles, labels shared.
    stem_of: dict[str, str] = {}
    for att in spec.attachments:
        for cid in (att.stem, att.branch):
            if cid not in comp_by_id:
                problems.append(f"attachment references unknown component {cid}")
        if att.stem == att.branch:
            problems.append(f"attachment of {att.branch} to itself")
        if att.branch in stem_of:
            problems.append(f"component {att.branch} has more than one stem")
        stem_of[att.branch] = att.stem
        for cid in (att.stem, att.branch):
            if cid in comp_by_id and label_points.get(att.cut_vertex, {}).get(cid) is None:
                problems.append(
                    f"cut vertex {att.cut_vertex} not labeled in component {cid}"
                )
    if problems:
        return problems
    for att in spec.attachments:
        seen = {att.branch}
        cur = att.stem
        while cur in stem_of:
            if cur in seen:
                problems.append("attachments contain a cycle")
                return problems
            seen.add(cur)
            cur = stem_of[cur]

    by_stem: dict[str, list[CutAttachment]] = {}
    for att in spec.attachments:
        by_stem.setdefault(att.stem, []).append(att)
    for stem_id, atts in by_stem.items():
        cuts = [a.cut_vertex for a in atts]
        for label, n in Counter(cuts).items():
            if n > 1:
                problems.append(
                    f"branches of {stem_id} share cut vertex {label}"
                )

    # A label appearing in several components must be stitched together by
    # attachments at that very label (nested cut spheres form a chain).
    att_pairs = {(a.stem, a.branch, a.cut_vertex) for a in spec.attachments}
    for label, comps in label_points.items():
        if len(comps) == 1:
            continue
        linked: dict[str, set[str]] = {cid: set() for cid in comps}
        for s, b, cv in att_pairs:
            if cv == label and s in linked and b in linked:
                linked[s].add(b)
                linked[b].add(s)
        seen = set()
        frontier = [next(iter(comps))]
        while frontier:
            cur = frontier.pop()
            if cur in seen:
                continue
            seen.add(cur)
            frontier.extend(linked[cur])
        if seen != set(comps):
            problems.append(
                f"vertex {label} appears in components {sorted(comps)} "
                "without attachments joining them there"
            )
    if problems:
        return problems

    # Degree window: 3..6 everywhere, 2 only on the vertex of a lone circle.
    degrees = total_degrees(spec)
    knot_vertices = {
        next(iter(comp.presentation.labels.values()))
        for comp in spec.components
        if classify_component(spec, comp) is ComponentClass.KNOT
    }
    for label, d in sorted(degrees.items()):
        if d == 2 and label in knot_vertices:
            continue
        if not (3 <= d <= 6):
            problems.append(f"vertex {label} has degree {d} out of range")
    return problems


def build_cut_tree(spec: SpatialGraphSpec) -> CutTree:
    """Root each attachment tree at its lowest-index non-arc component and
    re-index depth first so stems always precede branches."""
    input_order = [c.id for c in spec.components]
    adj: dict[str, list[tuple[str, str]]] = {cid: [] for cid in input_order}
    for att in spec.attachments:
        adj[att.stem].append((att.branch, att.cut_vertex))
        adj[att.branch].append((att.stem, att.cut_vertex))

    classes = {c.id: classify_component(spec, c) for c in spec.components}
    seen: set[str] = set()
    trees: list[list[str]] = []
    for cid in input_order:
        if cid in seen:
            continue
        members = [cid]
        seen.add(cid)
        frontier = [cid]
        while frontier:
            cur = frontier.pop()
            for nxt, _ in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    members.append(nxt)
                    frontier.append(nxt)
        trees.append(members)

    order: list[str] = []
    parent: dict[str, tuple[str, str]] = {}
    roots: list[str] = []
    for members in trees:
        candidates = [cid for cid in members if classes[cid] is not ComponentClass.ARC]
        if not candidates:
            raise NoValidRoot(f"every component in {sorted(members)} is an arc")
        root = min(candidates, key=input_order.index)
        roots.append(root)
        stack = [root]
        visited = {root}
        while stack:
            cur = stack.pop()
            order.append(cur)
            nbrs = sorted(
                (n for n in adj[cur] if n[0] not in visited),
                key=lambda n: input_order.index(n[0]),
                reverse=True,
            )
            for nxt, cv in nbrs:
                visited.add(nxt)
                parent[nxt] = (cur, cv)
                stack.append(nxt)
    return CutTree(tuple(order), parent, tuple(roots))


def census(spec: SpatialGraphSpec) -> GraphCensus:
    """Count edges, vertices, components, bouquets and lone circles."""
    degrees = total_degrees(spec)
    e = sum(len(derive_edges(c)) for c in spec.components)
    classes = [classify_component(spec, c) for c in spec.components]
    b = sum(cls in (ComponentClass.BOUQUET, ComponentClass.KNOT) for cls in classes)
    k = sum(cls is ComponentClass.KNOT for cls in classes)
    return GraphCensus(
        e=e,
        v=len(degrees),
        s=len(spec.components),
        b=b,
        k=k,
        alpha_total=sum(c.presentation.alpha for c in spec.components),
        degrees=degrees,
    )
