"""Per-component construction: arc diagram, binding columns, side-sliding.

Coordinate convention: binding point ``i`` sits at ``(i, i)`` on the plane
and each arc (page ``p``, endpoints ``lo < hi``) is realised below the
diagonal as an elbow through ``(hi, lo, p)``:

* an x-stick ``{y = lo, z = p, x in [lo, hi]}``
* a y-stick ``{x = hi, z = p, y in [lo, hi]}``

Arcs sharing a binding point are joined by vertical sticks at ``(i, i)``.
The elbow point of an arc never moves; side-sliding only translates the
first binding column in +x (to ``min hi`` of its arcs) and the last one in
-y (to ``max lo``), which shortens the attached sticks and deletes the ones
whose span collapses.  The whole component stays parametric in the column
positions, so a slide is: move one column coordinate, regenerate, validate,
and keep or revert.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .arcs import ArcPresentation, incident_levels
from .errors import LatticeStickError
from .geom import Stick, Vec3, point, stick
from .graph import ComponentClass, ComponentSpec, SpatialGraphSpec, classify_component
from .validate import check_self_avoiding


@dataclass
class ComponentBuild:
    """Working state of one component in its local integer frame."""

    comp_id: str
    pres: ArcPresentation
    cls: ComponentClass
    # Column positions: col_x[i] is the x of binding column i (moves only for
    # the first binding point), col_y[i] its y (moves only for the last).
    col_x: dict[int, Fraction] = field(default_factory=dict)
    col_y: dict[int, Fraction] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    @property
    def beta(self) -> int:
        return self.pres.beta

    def column_axis(self, bp: int) -> tuple[Fraction, Fraction]:
        return (self.col_x[bp], self.col_y[bp])

    def column_zrange(self, bp: int) -> tuple[int, int]:
        levels = incident_levels(self.pres, bp)
        return (levels[0], levels[-1])

    def vertex_bp(self, label: str) -> int:
        for bp, lab in self.pres.labels.items():
            if lab == label:
                return bp
        raise KeyError(label)

    def sticks(self) -> list[Stick]:
        """Regenerate the stick list from the current column positions."""
        out: list[Stick] = []
        cid = self.comp_id
        for a in self.pres.arcs:
            x_start = self.col_x[a.lo]
            y_end = self.col_y[a.hi]
            if x_start < a.hi:
                out.append(
                    stick(point(x_start, a.lo, a.page), point(a.hi, a.lo, a.page), cid, "arc_x")
                )
            if y_end > a.lo:
                out.append(
                    stick(point(a.hi, a.lo, a.page), point(a.hi, y_end, a.page), cid, "arc_y")
                )
        for bp in range(1, self.beta + 1):
            levels = incident_levels(self.pres, bp)
            x, y = self.column_axis(bp)
            for z1, z2 in zip(levels, levels[1:]):
                out.append(stick(point(x, y, z1), point(x, y, z2), cid, "column"))
        return out

    def knot_corner(self) -> Vec3 | None:
        """Bend point hosting the vertex marker of a lone circle component.

        The elbow of the lowest-page arc at the vertex's binding point is a
        corner of the final polygon whatever the slides did, so placing the
        degree-2 vertex there never splits a straight stick.
        """
        if self.cls is not ComponentClass.KNOT:
            return None
        bp = next(iter(self.pres.labels))
        arc = min(self.pres.arcs_at(bp), key=lambda a: a.page)
        return point(arc.hi, arc.lo, arc.page)


def build_arc_diagram(spec: SpatialGraphSpec, comp: ComponentSpec) -> ComponentBuild:
    """Stack each arc's elbow on the z-level given by its page number."""
    cls = classify_component(spec, comp)
    pres = comp.presentation
    build = ComponentBuild(
        comp_id=comp.id,
        pres=pres,
        cls=cls,
        col_x={i: Fraction(i) for i in range(1, pres.beta + 1)},
        col_y={i: Fraction(i) for i in range(1, pres.beta + 1)},
    )
    return build


def add_columns(build: ComponentBuild) -> ComponentBuild:
    """Columns are implied by the parametric state; kept as a pipeline stage
    so the intermediate stick lists match the construction's steps."""
    return build


def _slide_ok(build: ComponentBuild) -> bool:
    axes = [build.column_axis(bp) for bp in range(1, build.beta + 1)]
    if len(set(axes)) != len(axes):
        return False
    return not check_self_avoiding(build.sticks(), interior_only=True)


def side_slide(build: ComponentBuild) -> ComponentBuild:
    """Translate the first column in +x and the last in -y, absorbing the
    shortest attached stick(s); either move is skipped when it would
    degenerate or collide, which is reported but never fatal."""
    if build.cls is ComponentClass.ARC:
        return build
    beta = build.beta

    first_target = min(a.hi for a in build.pres.arcs_at(1))
    trial = replace(build, col_x=dict(build.col_x), col_y=dict(build.col_y))
    trial.col_x[1] = Fraction(first_target)
    if _slide_ok(trial):
        build = trial
    else:
        build.warnings.append(
            f"{build.comp_id}: side slide at first binding point blocked"
        )

    last_target = max(a.lo for a in build.pres.arcs_at(beta))
    trial = replace(build, col_x=dict(build.col_x), col_y=dict(build.col_y))
    trial.col_y[beta] = Fraction(last_target)
    if _slide_ok(trial):
        build = trial
    else:
        build.warnings.append(
            f"{build.comp_id}: side slide at last binding point blocked"
        )
    return build


def build_component(spec: SpatialGraphSpec, comp: ComponentSpec) -> ComponentBuild:
    build = add_columns(build_arc_diagram(spec, comp))
    build = side_slide(build)
    if not _slide_ok(build):
        raise LatticeStickError(f"component {comp.id} is not self-avoiding after slides")
    return build
