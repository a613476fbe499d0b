"""Generic planar projection and knot invariants of embedded cycles.

The projection applies the exact shear ``x' = x + z/N, y' = y + z/N^2`` and
drops z.  Any coincidence (collinear overlap, triple point, crossing at an
endpoint) only survives for finitely many N, so doubling N deterministically
restores genericity.  Over/under data comes from the original z values, and
two independent routes compute the fidelity invariant: an exact integer
determinant of the crossing matrix, and an exhaustive count of modular
colorings of the strands.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .assembly import LatticeEmbedding, _pow2_at_least
from .errors import NotACycle, TooLarge
from .geom import Vec3

Vec2 = tuple[Fraction, Fraction]

MAX_RETRIES = 64
MAX_STRANDS = 12


@dataclass(frozen=True)
class ProjSeg:
    a: Vec2
    b: Vec2
    a3: Vec3
    b3: Vec3
    edge: str
    pos: int


@dataclass(frozen=True)
class Crossing:
    over_seg: int
    under_seg: int
    at: Vec2
    z_over: Fraction
    z_under: Fraction


@dataclass(frozen=True)
class GraphDiagram:
    segments: tuple[ProjSeg, ...]
    paths: dict[str, tuple[int, ...]]
    crossings: tuple[Crossing, ...]
    shear_n: int


@dataclass(frozen=True)
class GaussData:
    """Cyclic crossing visits along one closed strandline."""

    visits: tuple[tuple[int, bool], ...]  # (crossing id, is_over)
    n_crossings: int


def _cross(o: Vec2, a: Vec2, b: Vec2) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _seg_intersection(a: Vec2, b: Vec2, c: Vec2, d: Vec2):
    """Exact intersection of two closed 2d segments.

    Returns None, ("overlap", None), or ("point", p, interior_ab, interior_cd).
    """
    r = (b[0] - a[0], b[1] - a[1])
    s = (d[0] - c[0], d[1] - c[1])
    denom = r[0] * s[1] - r[1] * s[0]
    acx, acy = c[0] - a[0], c[1] - a[1]
    if denom == 0:
        if acx * r[1] - acy * r[0] != 0:
            return None
        rr = r[0] * r[0] + r[1] * r[1]
        t0 = (acx * r[0] + acy * r[1]) / rr
        t1 = t0 + (s[0] * r[0] + s[1] * r[1]) / rr
        lo, hi = min(t0, t1), max(t0, t1)
        lo, hi = max(lo, Fraction(0)), min(hi, Fraction(1))
        if lo > hi:
            return None
        if lo == hi:
            p = (a[0] + lo * r[0], a[1] + lo * r[1])
            return ("point", p, Fraction(0) < lo < Fraction(1), p not in (c, d))
        return ("overlap", None)
    t = (acx * s[1] - acy * s[0]) / denom
    u = (acx * r[1] - acy * r[0]) / denom
    if not (0 <= t <= 1 and 0 <= u <= 1):
        return None
    p = (a[0] + t * r[0], a[1] + t * r[1])
    return ("point", p, Fraction(0) < t < Fraction(1), Fraction(0) < u < Fraction(1))


def _z_at(seg: ProjSeg, p: Vec2) -> Fraction:
    za, zb = seg.a3[2], seg.b3[2]
    if za == zb:
        return za
    # z varies only along vertical sticks; the sheared x coordinate is then
    # strictly monotone in z, so it recovers the parameter exactly.
    t = (p[0] - seg.a[0]) / (seg.b[0] - seg.a[0])
    return za + t * (zb - za)


def project_generic(emb: LatticeEmbedding, comps: set[str] | None = None) -> GraphDiagram:
    """Shear-project the embedding (optionally a subset of components)."""
    traces = {
        eid: line
        for eid, line in emb.traces.items()
        if comps is None or eid.split("/")[0] in comps
    }
    if not traces:
        raise NotACycle(f"no edges for components {sorted(comps or [])}")
    span = max(c for line in traces.values() for p in line for c in p)
    n = 2 * _pow2_at_least(int(span) + 1)
    for _ in range(MAX_RETRIES):
        diagram = _try_project(traces, n)
        if diagram is not None:
            return diagram
        n *= 2
    raise RuntimeError("projection failed to become generic")  # pragma: no cover


def _try_project(traces: dict[str, list[Vec3]], n: int) -> GraphDiagram | None:
    nsq = n * n

    def proj(p: Vec3) -> Vec2:
        return (p[0] + Fraction(p[2], n), p[1] + Fraction(p[2], nsq))

    segments: list[ProjSeg] = []
    paths: dict[str, tuple[int, ...]] = {}
    for eid in sorted(traces):
        line = traces[eid]
        idxs = []
        for k, (p3, q3) in enumerate(zip(line, line[1:])):
            idxs.append(len(segments))
            segments.append(ProjSeg(proj(p3), proj(q3), p3, q3, eid, k))
        paths[eid] = tuple(idxs)

    crossings: list[Crossing] = []
    seen_points: dict[Vec2, tuple[int, int]] = {}
    for i in range(len(segments)):
        si = segments[i]
        for j in range(i + 1, len(segments)):
            sj = segments[j]
            shared3 = {si.a3, si.b3} & {sj.a3, sj.b3}
            hit = _seg_intersection(si.a, si.b, sj.a, sj.b)
            if hit is None:
                continue
            if hit[0] == "overlap":
                return None
            _, p, int_i, int_j = hit
            if shared3:
                if any(proj(q) == p for q in shared3) and not (int_i or int_j):
                    continue
                return None
            if not (int_i and int_j):
                return None  # endpoint touches another segment: not generic
            if p in seen_points:
                return None  # triple point
            seen_points[p] = (i, j)
            zi, zj = _z_at(si, p), _z_at(sj, p)
            if zi == zj:  # pragma: no cover - excluded by self-avoidance
                return None
            over, under = (i, j) if zi > zj else (j, i)
            crossings.append(
                Crossing(over, under, p, max(zi, zj), min(zi, zj))
            )
    return GraphDiagram(tuple(segments), paths, tuple(crossings), n)


def crossing_count(diagram: GraphDiagram) -> int:
    return len(diagram.crossings)


def extract_knot_cycle(diagram: GraphDiagram, comp: str) -> GaussData:
    """Cyclic over/under sequence along one closed single-edge component."""
    edge_ids = [eid for eid in diagram.paths if eid.split("/")[0] == comp]
    if len(edge_ids) != 1:
        raise NotACycle(f"component {comp} has {len(edge_ids)} edges, need one closed loop")
    path = diagram.paths[edge_ids[0]]
    first, last = diagram.segments[path[0]], diagram.segments[path[-1]]
    if first.a3 != last.b3:
        raise NotACycle(f"edge {edge_ids[0]} is not closed")
    cycle = set(path)

    hits: dict[int, list[tuple[Fraction, int, bool]]] = {i: [] for i in path}
    for cid, c in enumerate(diagram.crossings):
        for seg_idx, over in ((c.over_seg, True), (c.under_seg, False)):
            if seg_idx not in cycle:
                if (c.over_seg in cycle) != (c.under_seg in cycle):
                    raise NotACycle("cycle crosses another component")
                continue
            seg = diagram.segments[seg_idx]
            d = (seg.b[0] - seg.a[0], seg.b[1] - seg.a[1])
            t = (
                (c.at[0] - seg.a[0]) / d[0]
                if d[0] != 0
                else (c.at[1] - seg.a[1]) / d[1]
            )
            hits[seg_idx].append((t, cid, over))

    visits = [
        (cid, over)
        for seg_idx in path
        for _, cid, over in sorted(hits[seg_idx])
    ]
    counts: dict[int, int] = {}
    for cid, _ in visits:
        counts[cid] = counts.get(cid, 0) + 1
    if any(v != 2 for v in counts.values()):
        raise NotACycle("crossing does not appear exactly twice on the cycle")
    return GaussData(tuple(visits), len(counts))


def _strand_structure(gauss: GaussData):
    """Strand index per visit plus (over, in, out) strand triple per crossing.

    Strands are the maximal runs between consecutive underpasses; the run
    ending at an underpass is that crossing's incoming strand.
    """
    visits = gauss.visits
    m = len(visits)
    under_pos = [i for i, (_, over) in enumerate(visits) if not over]
    n_strands = len(under_pos)
    strand_of = [0] * m
    # visits strictly after under_pos[k] up to and including under_pos[k+1]
    # belong to strand k+1 (cyclically).
    for k, start in enumerate(under_pos):
        end = under_pos[(k + 1) % n_strands]
        i = (start + 1) % m
        while True:
            strand_of[i] = (k + 1) % n_strands
            if i == end:
                break
            i = (i + 1) % m
    over_strand: dict[int, int] = {}
    in_strand: dict[int, int] = {}
    out_strand: dict[int, int] = {}
    for i, (cid, over) in enumerate(visits):
        if over:
            over_strand[cid] = strand_of[i]
        else:
            in_strand[cid] = strand_of[i]
            out_strand[cid] = (strand_of[i] + 1) % n_strands
    triples = [
        (over_strand[cid], in_strand[cid], out_strand[cid])
        for cid in range(gauss.n_crossings)
    ]
    return n_strands, triples


def _int_det(m: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; exact over the integers."""
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def coloring_matrix(gauss: GaussData) -> list[list[int]]:
    """One row per crossing over the strands: 2*over - in - out."""
    n_strands, triples = _strand_structure(gauss)
    matrix = [[0] * n_strands for _ in range(gauss.n_crossings)]
    for row, (over, into, out) in zip(matrix, triples):
        row[over] += 2
        row[into] -= 1
        row[out] -= 1
    return matrix


def knot_determinant(gauss: GaussData, drop_row: int = 0, drop_col: int = 0) -> int:
    """|det| of the coloring matrix with one row and column deleted."""
    if gauss.n_crossings == 0:
        return 1
    matrix = coloring_matrix(gauss)
    minor = [
        [v for j, v in enumerate(row) if j != drop_col]
        for i, row in enumerate(matrix)
        if i != drop_row
    ]
    return abs(_int_det(minor))


def p_coloring_count(gauss: GaussData, p: int) -> int:
    """Exhaustively count strand labelings over Z_p with 2*over = in + out.

    Depth-first over the strands, rejecting a partial assignment as soon as
    some crossing has all three strands labeled inconsistently; this visits
    exactly the assignments a plain product enumeration would accept.
    """
    if gauss.n_crossings == 0:
        return p
    n_strands, triples = _strand_structure(gauss)
    if n_strands > MAX_STRANDS:
        raise TooLarge(f"{n_strands} strands exceeds the enumeration bound {MAX_STRANDS}")
    by_last: dict[int, list[tuple[int, int, int]]] = {}
    for t in triples:
        by_last.setdefault(max(t), []).append(t)

    colors = [0] * n_strands

    def count(strand: int) -> int:
        if strand == n_strands:
            return 1
        total = 0
        for c in range(p):
            colors[strand] = c
            if all(
                (2 * colors[o] - colors[i] - colors[u]) % p == 0
                for o, i, u in by_last.get(strand, ())
            ):
                total += count(strand + 1)
        return total

    return count(0)
