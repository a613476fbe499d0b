"""Whole-graph assembly: component stacking, vertex merging, straightening.

Components are stacked in depth-first tree order, each branch uniformly
scaled into a thin square prism around its cut-vertex column and joined to
its stem by one vertical connector collinear with both columns.  A vertex of
degree d >= 4 then exists as d-2 degree-3 junctions along one vertical run;
merging reroutes the junctions' horizontal sticks onto the pivot (the second
attachment from the bottom) through offset verticals, one extra stick per
merge, after which the run fuses and the pivot is the vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .build import ComponentBuild, build_component
from .errors import (
    AssemblyCollision,
    LatticeStickError,
    MergeCollision,
    NoFreeDirection,
    ReconstructionMismatch,
)
from .geom import Stick, Vec3, point, stick, transform, transform_point
from .graph import (
    ComponentClass,
    CutTree,
    SpatialGraphSpec,
    build_cut_tree,
    census,
    derive_edges,
)
from .validate import check_self_avoiding, full_audit, walk_edges

Axis2 = tuple[Fraction, Fraction]


@dataclass
class Assembly:
    sticks: list[Stick]
    vertex_axis: dict[str, Axis2]
    # Stacked trees reuse local (x, y) coordinates, so every per-vertex scan
    # is confined to the z-range of the vertex's own tree.
    vertex_zrange: dict[str, tuple[Fraction, Fraction]]
    comp_scale: dict[str, Fraction]
    comp_offset: dict[str, Vec3]
    comp_zspan: dict[str, tuple[Fraction, Fraction]]
    knot_corners: dict[str, Vec3]
    markers: dict[str, Vec3] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class LatticeEmbedding:
    """Final integer-coordinate embedding; minima are zero on every axis."""

    sticks: tuple[Stick, ...]
    markers: dict[str, Vec3]
    traces: dict[str, list[Vec3]]
    bbox: tuple[Vec3, Vec3]
    warnings: tuple[str, ...] = ()


def _pow2_at_least(x) -> int:
    n = 1
    while n < x:
        n *= 2
    return n


@dataclass
class _Realized:
    sticks: list[Stick]
    scale: dict[str, Fraction]
    offset: dict[str, Vec3]
    zmin: Fraction
    zmax: Fraction


def _realize(comp_id: str, builds: dict[str, ComponentBuild], tree: CutTree) -> _Realized:
    """Subtree of ``comp_id`` in its local frame, children scaled in above."""
    b = builds[comp_id]
    out = _Realized(
        sticks=b.sticks(),
        scale={comp_id: Fraction(1)},
        offset={comp_id: point(0, 0, 0)},
        zmin=Fraction(1),
        zmax=Fraction(max(1, b.pres.alpha)),
    )
    children = sorted(tree.children(comp_id), key=lambda c: tree.order.index(c[0]))
    top = out.zmax
    for child_id, cut_vertex in children:
        sub = _realize(child_id, builds, tree)
        bp = b.vertex_bp(cut_vertex)
        ax, ay = b.column_axis(bp)
        pbar_z = Fraction(b.column_zrange(bp)[1])
        cb = builds[child_id]
        cbp = cb.vertex_bp(cut_vertex)
        sub_ax, sub_ay = cb.column_axis(cbp)
        sub_pz = Fraction(cb.column_zrange(cbp)[0])

        extent = max(
            max(abs(p[0] - sub_ax), abs(p[1] - sub_ay))
            for s in sub.sticks
            for p in s.ends()
        )
        f = Fraction(1, 8 * _pow2_at_least(max(Fraction(1), extent)))
        base = top + f
        off = point(ax - f * sub_ax, ay - f * sub_ay, base - f * sub.zmin)

        out.sticks.extend(transform(s, f, off) for s in sub.sticks)
        for cid in sub.scale:
            out.scale[cid] = f * sub.scale[cid]
            out.offset[cid] = transform_point(sub.offset[cid], f, off)
        drop_z = f * sub_pz + off[2]
        out.sticks.append(
            stick(point(ax, ay, pbar_z), point(ax, ay, drop_z), child_id, "connector")
        )
        top = base + f * (sub.zmax - sub.zmin)
    out.zmax = top
    return out


def assemble(
    spec: SpatialGraphSpec, tree: CutTree, builds: dict[str, ComponentBuild]
) -> Assembly:
    """Stack every tree of the forest; roots get no connector."""
    asm = Assembly(
        sticks=[],
        vertex_axis={},
        vertex_zrange={},
        comp_scale={},
        comp_offset={},
        comp_zspan={},
        knot_corners={},
    )
    top = Fraction(0)
    tree_span: dict[str, tuple[Fraction, Fraction]] = {}
    for root in tree.roots:
        sub = _realize(root, builds, tree)
        off = point(0, 0, top + 1 - sub.zmin)
        asm.sticks.extend(transform(s, Fraction(1), off) for s in sub.sticks)
        for cid in sub.scale:
            asm.comp_scale[cid] = sub.scale[cid]
            asm.comp_offset[cid] = transform_point(sub.offset[cid], Fraction(1), off)
            tree_span[cid] = (top + 1, top + 1 + (sub.zmax - sub.zmin))
        top += 1 + (sub.zmax - sub.zmin)

    for comp in spec.components:
        b = builds[comp.id]
        f = asm.comp_scale[comp.id]
        o = asm.comp_offset[comp.id]
        lo = f * 1 + o[2]
        hi = f * max(1, b.pres.alpha) + o[2]
        asm.comp_zspan[comp.id] = (lo, hi)
        for bp, label in b.pres.labels.items():
            ax, ay = b.column_axis(bp)
            g = (f * ax + o[0], f * ay + o[1])
            if label in asm.vertex_axis and asm.vertex_axis[label] != g:
                raise AssemblyCollision(f"cut vertex {label} columns failed to align")
            asm.vertex_axis[label] = g
            asm.vertex_zrange[label] = tree_span[comp.id]
        corner = b.knot_corner()
        if corner is not None:
            label = next(iter(b.pres.labels.values()))
            asm.knot_corners[label] = transform_point(corner, f, o)
        asm.warnings.extend(b.warnings)

    violations = check_self_avoiding(asm.sticks, interior_only=True)
    if violations:
        raise AssemblyCollision(f"stacked components intersect: {violations[:3]}")
    return asm


# --- vertex merging -------------------------------------------------------

@dataclass(frozen=True)
class MergeStep:
    level: Fraction
    direction: tuple[int, int]
    move: str  # "drop" | "translate" | "extend"
    epsilon: Fraction


@dataclass(frozen=True)
class VertexPlan:
    vertex: str
    axis: Axis2
    pivot_level: Fraction
    pivot_direction: tuple[int, int]
    column_base: Fraction
    old_top: Fraction
    new_top: Fraction
    steps: tuple[MergeStep, ...]


@dataclass(frozen=True)
class MergePlan:
    vertices: tuple[VertexPlan, ...]


def _attachments(sticks: list[Stick], axis: Axis2, zrange: tuple[Fraction, Fraction]):
    """Horizontal sticks with an end on the vertical line through ``axis``
    inside ``zrange``, bottom to top: (level, stick index, outward 2d dir)."""
    zlo, zhi = zrange
    found = []
    for i, s in enumerate(sticks):
        if s.axis == 2:
            continue
        for p in s.ends():
            if (p[0], p[1]) == axis and zlo <= p[2] <= zhi:
                d = s.direction_from(p)
                found.append((p[2], i, (d[0], d[1])))
    return sorted(found)


def _perps(d: tuple[int, int]):
    # "+ before -" for the perpendicular fallbacks
    return [(0, 1), (0, -1)] if d[0] != 0 else [(1, 0), (-1, 0)]


def _far_partner(sticks: list[Stick], idx: int, near: Vec3) -> tuple[Vec3, list[int]]:
    s = sticks[idx]
    far = s.b if near == s.a else s.a
    partners = [
        j for j, t in enumerate(sticks) if j != idx and t.has_end(far)
    ]
    return far, partners


def _candidate_moves(sticks, idx, near, direction, is_top):
    """(direction, move) options for one merge, in preference order."""
    options = [(direction, "drop")]
    far, partners = _far_partner(sticks, idx, near)
    for w in _perps(direction):
        if len(partners) == 1:
            partner = sticks[partners[0]]
            waxis = 0 if w[0] != 0 else 1
            if partner.axis == waxis:
                options.append((w, "translate"))
    if is_top:
        options.append(((-direction[0], -direction[1]), "extend"))
    return options


def _vertex_plans(sticks, vertex, axis, zrange, degree, unit):
    """Yield candidate merge plans for one vertex in preference order.

    Targets are the attachments strictly between the pivot and the top.
    When no direction works for the last interior target, that stick keeps
    its attachment as the new column top and the topmost stick is merged
    instead: reaching an opposite direction by extending a stick past the
    column is only safe at the top, where the shortened column no longer
    blocks the way.  (Degree 6 forces this whenever the one remaining
    direction opposes the fifth stick; lower degrees only need it for
    degenerate presentations whose sticks join two columns.)
    """
    att = _attachments(sticks, axis, zrange)
    if len(att) != degree:
        raise MergeCollision(
            f"vertex {vertex}: found {len(att)} attachments, expected {degree}"
        )
    pivot_level, _, pivot_dir = att[1]
    base = att[0][0]
    old_top = att[-1][0]
    interior = att[2:-1]
    top_att = att[-1]

    def assignments(pos, used, chosen):
        if pos == len(interior):
            yield chosen, False
            return
        level, idx, direction = interior[pos]
        near = point(axis[0], axis[1], level)
        last = pos == len(interior) - 1
        for w, move in _candidate_moves(sticks, idx, near, direction, is_top=False):
            if w in used:
                continue
            yield from (
                (c, swap)
                for c, swap in assignments(pos + 1, used | {w}, chosen + [(level, w, move)])
            )
        if last:
            # swap: keep this stick, merge the top one instead
            t_level, t_idx, t_dir = top_att
            t_near = point(axis[0], axis[1], t_level)
            for w, move in _candidate_moves(sticks, t_idx, t_near, t_dir, is_top=True):
                if w in used:
                    continue
                yield chosen + [(t_level, w, move)], True

    produced = False
    for chosen, swapped in assignments(0, {pivot_dir}, []):
        produced = True
        total = len(chosen)
        steps = tuple(
            MergeStep(level, w, move, Fraction(m, total + 1) * unit)
            for m, (level, w, move) in enumerate(chosen, start=1)
        )
        new_top = interior[-1][0] if swapped else old_top
        yield VertexPlan(
            vertex, axis, pivot_level, pivot_dir, base, old_top, new_top, steps
        )
    if not produced:
        raise NoFreeDirection(f"vertex {vertex}: no merge assignment exists")


def _vertex_units(spec: SpatialGraphSpec, asm: Assembly) -> dict[str, Fraction]:
    units: dict[str, Fraction] = {}
    for comp in spec.components:
        f = asm.comp_scale[comp.id]
        for label in comp.presentation.labels.values():
            units[label] = min(units.get(label, f), f)
    return units


def _apply_vertex_plan(
    sticks: list[Stick], plan: VertexPlan, zrange: tuple[Fraction, Fraction]
) -> list[Stick]:
    """Execute one vertex's merges on a copy of the stick list."""
    sticks = list(sticks)
    ax, ay = plan.axis
    for step in plan.steps:
        att = _attachments(sticks, plan.axis, zrange)
        match = [(lvl, i, d) for lvl, i, d in att if lvl == step.level]
        if len(match) != 1:
            raise MergeCollision(f"vertex {plan.vertex}: lost attachment at {step.level}")
        _, idx, _ = match[0]
        s = sticks[idx]
        near = point(ax, ay, step.level)
        far = s.b if near == s.a else s.a
        wx, wy = step.direction
        bx, by = ax + step.epsilon * wx, ay + step.epsilon * wy
        break_pt = point(bx, by, step.level)
        arm_end = point(bx, by, plan.pivot_level)

        if step.move in ("drop", "extend"):
            sticks[idx] = stick(break_pt, far, s.comp, s.kind)
        else:  # translate
            _, partners = _far_partner(sticks, idx, near)
            if len(partners) != 1:
                raise MergeCollision(f"vertex {plan.vertex}: no unique far partner")
            pidx = partners[0]
            partner = sticks[pidx]
            offset3 = point(step.epsilon * wx, step.epsilon * wy, 0)
            moved_far = tuple(far[i] + offset3[i] for i in range(3))
            sticks[idx] = stick(
                tuple(near[i] + offset3[i] for i in range(3)),
                moved_far,
                s.comp,
                s.kind,
            )
            keep = partner.b if partner.a == far else partner.a
            sticks[pidx] = stick(keep, moved_far, partner.comp, partner.kind)
        sticks.append(stick(arm_end, break_pt, s.comp, "offset"))
        sticks.append(stick(point(ax, ay, plan.pivot_level), arm_end, s.comp, "merge_arm"))

    # Fuse the vertical run: junctions between pivot and top are gone now.
    kept = []
    for s in sticks:
        if (
            s.axis == 2
            and (s.a[0], s.a[1]) == plan.axis
            and s.a[2] >= plan.column_base
            and s.b[2] <= plan.old_top
        ):
            continue
        kept.append(s)
    kept.append(
        stick(
            point(ax, ay, plan.column_base),
            point(ax, ay, plan.pivot_level),
            "",
            "column",
        )
    )
    kept.append(
        stick(point(ax, ay, plan.pivot_level), point(ax, ay, plan.new_top), "", "column")
    )
    return kept


def plan_merges(spec: SpatialGraphSpec, asm: Assembly) -> MergePlan:
    """First valid plan per high-degree vertex, preference order respected."""
    degrees = census(spec).degrees
    units = _vertex_units(spec, asm)
    plans = []
    for label in sorted(degrees):
        if degrees[label] < 4:
            continue
        plans.append(
            next(
                _vertex_plans(
                    asm.sticks,
                    label,
                    asm.vertex_axis[label],
                    asm.vertex_zrange[label],
                    degrees[label],
                    units[label],
                )
            )
        )
    return MergePlan(tuple(plans))


def apply_merges(spec: SpatialGraphSpec, asm: Assembly) -> Assembly:
    """Merge every vertex of degree >= 4, then place all vertex markers.

    Each vertex tries its candidate plans in preference order and keeps the
    first one whose result stays intersection-free; exhausting all of them
    raises MergeCollision.
    """
    degrees = census(spec).degrees
    units = _vertex_units(spec, asm)
    sticks = asm.sticks
    for label in sorted(degrees):
        if degrees[label] < 4:
            continue
        committed = None
        for plan in _vertex_plans(
            sticks,
            label,
            asm.vertex_axis[label],
            asm.vertex_zrange[label],
            degrees[label],
            units[label],
        ):
            trial = _apply_vertex_plan(sticks, plan, asm.vertex_zrange[label])
            if not check_self_avoiding(trial, interior_only=True):
                committed = (trial, plan)
                break
        if committed is None:
            raise MergeCollision(f"all merge moves collide at vertex {label}")
        sticks, plan = committed
        asm.markers[label] = point(plan.axis[0], plan.axis[1], plan.pivot_level)
    asm.sticks = sticks

    for label, d in sorted(degrees.items()):
        if d >= 4:
            continue
        if d == 3:
            att = _attachments(asm.sticks, asm.vertex_axis[label], asm.vertex_zrange[label])
            if len(att) != 3:
                raise MergeCollision(f"vertex {label}: expected 3 attachments, got {len(att)}")
            ax, ay = asm.vertex_axis[label]
            asm.markers[label] = point(ax, ay, att[1][0])
        else:
            asm.markers[label] = asm.knot_corners[label]
    return asm


# --- arc straightening ----------------------------------------------------

def straighten_arcs(
    spec: SpatialGraphSpec,
    tree: CutTree,
    builds: dict[str, ComponentBuild],
    asm: Assembly,
) -> Assembly:
    """Replace each single-arc component's elbow by one vertical stick,
    sliding its branch subtree sideways over the stem's cut-vertex column.

    Components realising more than one arc stay untouched (they may be
    knotted, and flattening them would change the embedding's type); every
    skip is reported.
    """
    for comp_id in tree.order:
        b = builds[comp_id]
        if b.cls is not ComponentClass.ARC:
            continue
        if b.pres.alpha != 1:
            asm.warnings.append(
                f"{comp_id}: arc component with {b.pres.alpha} arcs left unstraightened"
            )
            continue
        stem_id, v_near = tree.parent.get(comp_id, (None, None))
        if stem_id is None:
            continue  # unreachable: trees are rooted at non-arc components
        labels = set(b.pres.labels.values())
        v_far = next(iter(labels - {v_near}))
        children = tree.children(comp_id)
        if len(children) != 1 or children[0][1] != v_far:
            asm.warnings.append(f"{comp_id}: unexpected branch layout, not straightened")
            continue
        branch_id = children[0][0]

        axis_near = asm.vertex_axis[v_near]
        axis_far = asm.vertex_axis[v_far]
        z_arc = asm.comp_scale[comp_id] * 1 + asm.comp_offset[comp_id][2]

        def _find(kind, end):
            hits = [
                i
                for i, s in enumerate(asm.sticks)
                if s.comp == comp_id and s.kind == kind and s.has_end(end)
            ]
            return hits[0] if len(hits) == 1 else None

        ix = _find("arc_x", point(axis_near[0], axis_near[1], z_arc))
        iy = _find("arc_y", point(axis_far[0], axis_far[1], z_arc))
        if ix is None or iy is None:
            asm.warnings.append(f"{comp_id}: rerouted by merging, not straightened")
            continue

        subtree = tree.subtree(branch_id)
        z_lo = min(asm.comp_zspan[c][0] for c in subtree)
        z_hi = max(asm.comp_zspan[c][1] for c in subtree)
        # The vertical run feeding the branch sits on the far axis; pieces
        # reaching below the subtree (the connector, or the fused run a merge
        # rebuilt) are replaced by one stick on the near axis, the rest ride
        # along with the subtree.
        removed = {ix, iy}
        run_top = None
        for i, s in enumerate(asm.sticks):
            if (
                s.axis == 2
                and (s.a[0], s.a[1]) == (axis_far[0], axis_far[1])
                and z_arc <= s.a[2] < z_lo
            ):
                removed.add(i)
                run_top = s.b[2] if run_top is None else max(run_top, s.b[2])
        if run_top is None:
            asm.warnings.append(f"{comp_id}: no branch run found, not straightened")
            continue
        dx = axis_near[0] - axis_far[0]
        dy = axis_near[1] - axis_far[1]
        delta = point(dx, dy, 0)

        moved: list[Stick] = []
        ok = True
        for i, s in enumerate(asm.sticks):
            if i in removed:
                continue
            inside = [z_lo <= p[2] <= z_hi for p in s.ends()]
            if all(inside):
                moved.append(transform(s, Fraction(1), delta))
            elif any(inside):
                ok = False
                break
            else:
                moved.append(s)
        if not ok:
            asm.warnings.append(f"{comp_id}: branch subtree not separable, not straightened")
            continue
        moved.append(
            stick(
                point(axis_near[0], axis_near[1], z_arc),
                point(axis_near[0], axis_near[1], run_top),
                comp_id,
                "straight",
            )
        )
        new_markers = {
            label: (transform_point(p, Fraction(1), delta) if z_lo <= p[2] <= z_hi else p)
            for label, p in asm.markers.items()
        }
        if check_self_avoiding(moved, new_markers):
            asm.warnings.append(f"{comp_id}: straightening collides, skipped")
            continue

        asm.sticks = moved
        asm.markers = new_markers
        for c in subtree:
            asm.comp_offset[c] = transform_point(asm.comp_offset[c], Fraction(1), delta)
        for comp in spec.components:
            if comp.id not in subtree:
                continue
            bsub = builds[comp.id]
            f = asm.comp_scale[comp.id]
            o = asm.comp_offset[comp.id]
            for bp, label in bsub.pres.labels.items():
                ax, ay = bsub.column_axis(bp)
                asm.vertex_axis[label] = (f * ax + o[0], f * ay + o[1])
    return asm


# --- traces and normalization ---------------------------------------------

def _sign_step(a: Vec3, b: Vec3) -> tuple[int, int, int]:
    return tuple((b[i] > a[i]) - (b[i] < a[i]) for i in range(3))


def _simplify(polyline: list[Vec3], marker_points: set[Vec3]) -> list[Vec3]:
    out = [polyline[0]]
    for prev, cur, nxt in zip(polyline, polyline[1:], polyline[2:]):
        if _sign_step(prev, cur) != _sign_step(cur, nxt) or cur in marker_points:
            out.append(cur)
    out.append(polyline[-1])
    return out


def derive_traces(
    spec: SpatialGraphSpec, sticks: list[Stick], markers: dict[str, Vec3]
) -> dict[str, list[Vec3]]:
    """Walk the final geometry and assign each path its input edge id."""
    walked, problems = walk_edges(sticks, markers)
    if problems:
        raise ReconstructionMismatch("cannot trace edges", problems)
    pools: dict[tuple[str, tuple[str, str]], list[str]] = {}
    for comp in spec.components:
        for tr in derive_edges(comp):
            key = (comp.id, tuple(sorted((tr.v_start, tr.v_end))))
            pools.setdefault(key, []).append(tr.edge_id)
    marker_points = set(markers.values())
    traces: dict[str, list[Vec3]] = {}
    for va, vb, polyline, indices in walked:
        comps = {
            sticks[i].comp
            for i in indices
            if sticks[i].kind in ("arc_x", "arc_y", "straight")
        }
        if len(comps) != 1:
            raise ReconstructionMismatch(
                "edge path crosses components", [f"{va}-{vb}: {sorted(comps)}"]
            )
        key = (comps.pop(), tuple(sorted((va, vb))))
        if not pools.get(key):
            raise ReconstructionMismatch("edge path matches no input edge", [str(key)])
        traces[pools[key].pop(0)] = _simplify(polyline, marker_points)
    return traces


def normalize(
    sticks: list[Stick],
    markers: dict[str, Vec3],
    traces: dict[str, list[Vec3]],
    warnings: tuple[str, ...] = (),
) -> LatticeEmbedding:
    """Clear denominators by their lcm and translate minima to the origin."""
    denoms = [c.denominator for s in sticks for p in s.ends() for c in p]
    denoms += [c.denominator for p in markers.values() for c in p]
    scale = Fraction(lcm(*denoms)) if denoms else Fraction(1)
    mins = point(
        min(p[0] for s in sticks for p in s.ends()),
        min(p[1] for s in sticks for p in s.ends()),
        min(p[2] for s in sticks for p in s.ends()),
    )
    off = tuple(-scale * m for m in mins)
    new_sticks = tuple(transform(s, scale, off) for s in sticks)
    new_markers = {k: transform_point(p, scale, off) for k, p in markers.items()}
    new_traces = {
        eid: [transform_point(p, scale, off) for p in line] for eid, line in traces.items()
    }
    for s in new_sticks:
        for p in s.ends():
            assert all(c.denominator == 1 and c >= 0 for c in p)
    bbox_hi = point(
        max(p[0] for s in new_sticks for p in s.ends()),
        max(p[1] for s in new_sticks for p in s.ends()),
        max(p[2] for s in new_sticks for p in s.ends()),
    )
    return LatticeEmbedding(
        sticks=new_sticks,
        markers=new_markers,
        traces=new_traces,
        bbox=(point(0, 0, 0), bbox_hi),
        warnings=warnings,
    )


def build_full(spec: SpatialGraphSpec) -> LatticeEmbedding:
    """Run the whole pipeline and certify the result before returning it.

    Raises on any validation failure: the returned embedding always passes
    the full audit and the closed-form stick bound.
    """
    from .graph import validate_spec
    from .validate import check_bound

    problems = validate_spec(spec)
    if problems:
        raise LatticeStickError("invalid input: " + "; ".join(problems))

    tree = build_cut_tree(spec)
    builds = {c.id: build_component(spec, c) for c in spec.components}
    asm = assemble(spec, tree, builds)
    asm = apply_merges(spec, asm)
    asm = straighten_arcs(spec, tree, builds, asm)
    traces = derive_traces(spec, asm.sticks, asm.markers)
    emb = normalize(asm.sticks, asm.markers, traces, tuple(asm.warnings))

    cens = census(spec)
    report = full_audit(list(emb.sticks), emb.markers, spec, cens.degrees)
    if not report.clean:
        raise AssemblyCollision(
            "built embedding failed its audit: "
            f"violations={report.violations[:3]} junctions={report.unmarked_junctions[:3]} "
            f"markers={report.marker_problems[:3]} diff={report.reconstruction_diff[:3]}"
        )
    check_bound(report.counts, cens, cens.alpha_total, spec.declared_crossings)
    return emb
