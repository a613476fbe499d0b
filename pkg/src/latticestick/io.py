"""JSON document formats and the OBJ export.

Both documents reject unknown keys so that typos fail loudly.  The embedding
document stores the fused sticks (one per counted stick) together with the
edge polylines they came from; the two views are checked against each other
on load.
"""

from __future__ import annotations

import json

from .arcs import Arc, ArcPresentation
from .assembly import LatticeEmbedding
from .geom import Stick, Vec3, point, stick
from .graph import ComponentSpec, CutAttachment, SpatialGraphSpec
from .validate import BoundReport, StickCounts


class DocumentError(Exception):
    """Malformed document: syntax, schema or internal inconsistency."""


def _check_keys(obj, required, optional=(), where="document"):
    if not isinstance(obj, dict):
        raise DocumentError(f"{where} must be an object")
    unknown = sorted(set(obj) - set(required) - set(optional))
    if unknown:
        raise DocumentError(f"unknown keys {unknown} in {where}")
    missing = sorted(set(required) - set(obj))
    if missing:
        raise DocumentError(f"missing keys {missing} in {where}")


def _int_triple(value, where):
    if (
        not isinstance(value, list)
        or len(value) != 3
        or not all(isinstance(c, int) and not isinstance(c, bool) for c in value)
    ):
        raise DocumentError(f"{where} must be a list of three integers")
    return point(*value)


# --- input documents --------------------------------------------------------

def spec_from_document(doc) -> SpatialGraphSpec:
    _check_keys(doc, ["components"], ["attachments", "diagram_crossings"])
    components = []
    for c in doc["components"]:
        _check_keys(c, ["id", "binding_points", "arcs"], where="component")
        labels = {}
        indices = set()
        for bp in c["binding_points"]:
            _check_keys(bp, ["index"], ["vertex"], where="binding point")
            if not isinstance(bp["index"], int) or bp["index"] < 1:
                raise DocumentError("binding point index must be a positive integer")
            if bp["index"] in indices:
                raise DocumentError(f"duplicate binding point index {bp['index']}")
            indices.add(bp["index"])
            if "vertex" in bp:
                if not isinstance(bp["vertex"], str) or not bp["vertex"]:
                    raise DocumentError("vertex label must be a nonempty string")
                labels[bp["index"]] = bp["vertex"]
        if indices != set(range(1, len(indices) + 1)):
            raise DocumentError(
                f"component {c['id']}: binding points must cover 1..{len(indices)}"
            )
        arcs = []
        for a in c["arcs"]:
            _check_keys(a, ["page", "from", "to"], where="arc")
            for key in ("page", "from", "to"):
                if not isinstance(a[key], int):
                    raise DocumentError(f"arc {key} must be an integer")
            if a["from"] == a["to"]:
                raise DocumentError("arc endpoints must differ")
            if not {a["from"], a["to"]} <= indices:
                raise DocumentError(f"arc references unlisted binding point in {c['id']}")
            arcs.append(Arc(a["page"], min(a["from"], a["to"]), max(a["from"], a["to"])))
        components.append(
            ComponentSpec(str(c["id"]), ArcPresentation(tuple(arcs), labels))
        )
    attachments = []
    for att in doc.get("attachments", []):
        _check_keys(att, ["stem", "branch", "cut_vertex"], where="attachment")
        attachments.append(
            CutAttachment(str(att["stem"]), str(att["branch"]), str(att["cut_vertex"]))
        )
    crossings = doc.get("diagram_crossings")
    if crossings is not None and (not isinstance(crossings, int) or crossings < 0):
        raise DocumentError("diagram_crossings must be a nonnegative integer")
    return SpatialGraphSpec(tuple(components), tuple(attachments), crossings)


def load_spec(path) -> SpatialGraphSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    return spec_from_document(doc)


# --- embedding documents ----------------------------------------------------

def _fused_sticks(emb: LatticeEmbedding) -> list[Stick]:
    out = []
    for eid in sorted(emb.traces):
        line = emb.traces[eid]
        for a, b in zip(line, line[1:]):
            out.append(stick(a, b, eid.split("/")[0], "fused"))
    return out


def embedding_to_document(
    emb: LatticeEmbedding, counts: StickCounts, bounds: BoundReport, alpha_total: int
) -> dict:
    sticks = _fused_sticks(emb)
    return {
        "sticks": [
            {
                "axis": "xyz"[s.axis],
                "start": [int(c) for c in s.a],
                "end": [int(c) for c in s.b],
            }
            for s in sticks
        ],
        "vertices": [
            {"id": label, "position": [int(c) for c in p]}
            for label, p in sorted(emb.markers.items())
        ],
        "edges": [
            {"id": eid, "polyline": [[int(c) for c in p] for p in emb.traces[eid]]}
            for eid in sorted(emb.traces)
        ],
        "counts": {"x": counts.x, "y": counts.y, "z": counts.z, "total": counts.total},
        "bounds_report": {
            "alpha_total": alpha_total,
            "construction_bound": bounds.construction_bound,
            "crossing_bound": bounds.crossing_bound,
            "total_within_bounds": bounds.ok,
        },
    }


def embedding_from_document(doc) -> tuple[LatticeEmbedding, StickCounts]:
    _check_keys(doc, ["sticks", "vertices", "edges", "counts", "bounds_report"])
    markers: dict[str, Vec3] = {}
    for v in doc["vertices"]:
        _check_keys(v, ["id", "position"], where="vertex")
        if v["id"] in markers:
            raise DocumentError(f"duplicate vertex id {v['id']}")
        markers[v["id"]] = _int_triple(v["position"], "vertex position")
    traces: dict[str, list[Vec3]] = {}
    polyline_pairs = set()
    for e in doc["edges"]:
        _check_keys(e, ["id", "polyline"], where="edge")
        if e["id"] in traces:
            raise DocumentError(f"duplicate edge id {e['id']}")
        line = [_int_triple(p, "polyline point") for p in e["polyline"]]
        if len(line) < 2:
            raise DocumentError(f"edge {e['id']} polyline too short")
        traces[e["id"]] = line
        for a, b in zip(line, line[1:]):
            if sum(x != y for x, y in zip(a, b)) != 1:
                raise DocumentError(f"edge {e['id']} polyline is not axis-parallel")
            polyline_pairs.add((min(a, b), max(a, b)))
    doc_sticks = []
    stick_pairs = set()
    for s in doc["sticks"]:
        _check_keys(s, ["axis", "start", "end"], where="stick")
        a = _int_triple(s["start"], "stick start")
        b = _int_triple(s["end"], "stick end")
        if not a < b:
            raise DocumentError("stick start must be lexicographically before end")
        if sum(x != y for x, y in zip(a, b)) != 1:
            raise DocumentError(f"stick {s['start']}-{s['end']} is not axis-parallel")
        st = stick(a, b)
        if s["axis"] != "xyz"[st.axis]:
            raise DocumentError(f"stick axis {s['axis']} does not match endpoints")
        doc_sticks.append(st)
        stick_pairs.add((a, b))
    if stick_pairs != polyline_pairs:
        raise DocumentError("sticks and edge polylines are not mutually derivable")
    counts = doc["counts"]
    _check_keys(counts, ["x", "y", "z", "total"], where="counts")
    got = StickCounts(counts["x"], counts["y"], counts["z"])
    if got.total != counts["total"] or counts["total"] != len(doc_sticks):
        raise DocumentError("counts do not match the stick list")
    _check_keys(
        doc["bounds_report"],
        ["alpha_total", "construction_bound", "crossing_bound", "total_within_bounds"],
        where="bounds_report",
    )
    bbox_hi = point(
        max(p[0] for s in doc_sticks for p in s.ends()),
        max(p[1] for s in doc_sticks for p in s.ends()),
        max(p[2] for s in doc_sticks for p in s.ends()),
    )
    emb = LatticeEmbedding(
        sticks=tuple(doc_sticks),
        markers=markers,
        traces=traces,
        bbox=(point(0, 0, 0), bbox_hi),
    )
    return emb, got


def load_embedding(path) -> tuple[LatticeEmbedding, StickCounts]:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    return embedding_from_document(doc)


# --- OBJ export -------------------------------------------------------------

def export_obj(emb: LatticeEmbedding) -> str:
    """Wavefront OBJ polyline export, byte-stable across runs.

    One ``v`` line per distinct lattice point in first-use order, one
    ``l`` line per stick with 1-based point indices.
    """
    sticks = _fused_sticks(emb)
    index: dict[Vec3, int] = {}
    v_lines: list[str] = []
    l_lines: list[str] = []
    for s in sticks:
        ids = []
        for p in (s.a, s.b):
            if p not in index:
                index[p] = len(index) + 1
                v_lines.append(f"v {int(p[0])} {int(p[1])} {int(p[2])}")
            ids.append(index[p])
        l_lines.append(f"l {ids[0]} {ids[1]}")
    return "\n".join(v_lines + l_lines) + "\n"
