"""Closed oriented combinatorial surfaces.

A surface is an abstract simplicial complex of dimension 2: labeled
vertices, triangular faces carrying an explicit cyclic vertex order (the
orientation), and edges derived as the 2-subsets of faces.  Building a
surface validates closure, the two-faces-per-edge condition, orientation
consistency (shared edges receive opposite induced orders) and that every
vertex link chains into a single cycle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotIncident, ReportCollector, ValidationFailed, ValidationReport
from .polygon import Polygon

VertexId = str

# characters reserved by face keys, refinement labels and the CLI
_FORBIDDEN = set(',~= \t\n')


@dataclass(frozen=True)
class OrientedFace:
    """Three distinct vertices with a cyclic order.

    Stored rotated so the least vertex comes first; faces that differ by a
    cyclic permutation compare equal.
    """

    vertices: tuple[str, str, str]

    def __post_init__(self) -> None:
        verts = tuple(self.vertices)
        if len(verts) != 3 or len(set(verts)) != 3:
            raise ValueError(f"a face needs 3 distinct vertices, got {verts}")
        least = verts.index(min(verts))
        object.__setattr__(self, "vertices", verts[least:] + verts[:least])

    @property
    def key(self) -> str:
        """Canonical comma-joined form, used wherever faces key a map."""
        return ",".join(self.vertices)

    def __contains__(self, v: str) -> bool:
        return v in self.vertices

    def corner_order(self, v: str) -> tuple[str, str, str]:
        """The cyclic order rotated to start at ``v``."""
        if v not in self.vertices:
            raise NotIncident(f"{v!r} is not a vertex of face {self.key}")
        i = self.vertices.index(v)
        return self.vertices[i:] + self.vertices[:i]

    def induced_edge_order(self, edge: frozenset[str] | set[str]) -> tuple[str, str]:
        """The ordered pair this face's cyclic order puts on ``edge``."""
        a, b, c = self.vertices
        for pair in ((a, b), (b, c), (c, a)):
            if set(pair) == set(edge):
                return pair
        raise NotIncident(f"edge {set(edge)} is not an edge of face {self.key}")

    def reversed(self) -> "OrientedFace":
        a, b, c = self.vertices
        return OrientedFace((a, c, b))

    def __str__(self) -> str:
        return self.key


def induced_edge_order(face: OrientedFace, edge: frozenset[str] | set[str]) -> tuple[str, str]:
    return face.induced_edge_order(edge)


@dataclass(frozen=True)
class OrientedSurface:
    """A validated closed oriented surface.

    Immutable after construction; ``links`` maps each vertex to its link
    polygon (neighbors in the cyclic order induced by the orientation,
    starting from the least label).  ``positions`` is optional pass-through
    geometry for export and never enters any computation.
    """

    vertices: tuple[str, ...]
    faces: tuple[OrientedFace, ...]
    edges: tuple[tuple[str, str], ...] = field(compare=False)
    links: dict[str, Polygon] = field(compare=False, repr=False)
    positions: dict[str, tuple] | None = field(default=None, compare=False, repr=False)

    def link(self, v: str) -> Polygon:
        try:
            return self.links[v]
        except KeyError:
            raise NotIncident(f"{v!r} is not a vertex of this surface") from None

    def degree(self, v: str) -> int:
        return self.link(v).n

    def degrees(self) -> dict[str, int]:
        return {v: self.links[v].n for v in self.vertices}

    def face_by_key(self, key: str) -> OrientedFace:
        for f in self.faces:
            if f.key == key:
                return f
        raise NotIncident(f"no face with key {key!r}")

    def directed_edges(self) -> list[tuple[str, str]]:
        return [e for (a, b) in self.edges for e in ((a, b), (b, a))]


def euler_characteristic(surface: OrientedSurface) -> int:
    """V - E + F.  Plumbing for cross-checks; nothing downstream depends on it."""
    return len(surface.vertices) - len(surface.edges) + len(surface.faces)


def _trace_link(v: str, incident: list[OrientedFace], collector: ReportCollector) -> Polygon | None:
    """Chain the arcs contributed by faces at ``v`` into one cycle."""
    succ: dict[str, str] = {}
    heads: set[str] = set()
    for face in incident:
        _, a, b = face.corner_order(v)
        if a in succ:
            collector.add("NonPolygonLink", v, f"two arcs leave {a!r} in the link")
            return None
        succ[a] = b
        heads.add(b)
    if set(succ) != heads:
        collector.add("NonPolygonLink", v, "link arcs do not pair up head-to-tail")
        return None
    if len(succ) < 3:
        collector.add("NonPolygonLink", v, f"link has only {len(succ)} vertices, need >= 3")
        return None
    start = min(succ)
    cycle = [start]
    cur = succ[start]
    while cur != start:
        cycle.append(cur)
        cur = succ[cur]
        if len(cycle) > len(succ):
            break
    if len(cycle) != len(succ):
        collector.add("NonPolygonLink", v, "link arcs split into more than one cycle")
        return None
    return Polygon(tuple(cycle))


def _build(vertices, faces, positions) -> tuple[OrientedSurface | None, ValidationReport]:
    collector = ReportCollector()

    verts = [str(v) for v in vertices]
    if len(set(verts)) != len(verts):
        collector.add("DuplicateVertex", verts, "vertex labels must be unique")
    for v in verts:
        if not v or _FORBIDDEN & set(v):
            collector.add("BadLabel", v, "labels must be nonempty and avoid ',~= ' characters")
    vert_set = set(verts)

    oriented: list[OrientedFace] = []
    seen_sets: dict[frozenset, OrientedFace] = {}
    for raw in faces:
        verts_of_face = tuple(str(x) for x in (raw.vertices if isinstance(raw, OrientedFace) else raw))
        if len(verts_of_face) != 3 or len(set(verts_of_face)) != 3:
            collector.add("BadFace", verts_of_face, "faces are 3 distinct vertices")
            continue
        if not set(verts_of_face) <= vert_set:
            collector.add("BadFace", verts_of_face, "face mentions undeclared vertices")
            continue
        face = OrientedFace(verts_of_face)
        fset = frozenset(verts_of_face)
        if fset in seen_sets:
            collector.add("DuplicateFace", face.key, "two faces share the same vertex set")
            continue
        seen_sets[fset] = face
        oriented.append(face)

    report = collector.report()
    if not report.ok:
        return None, report

    # closure: edges are exactly the 2-subsets of faces
    edge_faces: dict[frozenset, list[OrientedFace]] = {}
    for face in oriented:
        a, b, c = face.vertices
        for pair in ((a, b), (b, c), (c, a)):
            edge_faces.setdefault(frozenset(pair), []).append(face)

    for edge, incident in sorted(edge_faces.items(), key=lambda kv: sorted(kv[0])):
        name = "{%s}" % ",".join(sorted(edge))
        if len(incident) != 2:
            collector.add("BoundaryEdge", name, f"edge lies in {len(incident)} faces, need exactly 2")
            continue
        first, second = (f.induced_edge_order(edge) for f in incident)
        if first == second:
            collector.add(
                "OrientationClash",
                name,
                f"faces {incident[0].key} and {incident[1].key} induce the same order {first}",
            )

    links: dict[str, Polygon] = {}
    for v in sorted(vert_set):
        incident = [f for f in oriented if v in f]
        if not incident:
            collector.add("NonPolygonLink", v, "vertex lies in no face")
            continue
        cycle = _trace_link(v, incident, collector)
        if cycle is not None:
            links[v] = cycle

    report = collector.report()
    if not report.ok:
        return None, report

    pos = None
    if positions is not None:
        pos = {str(v): tuple(p) for v, p in positions.items()}
        for v in pos:
            if v not in vert_set:
                collector.add("BadLabel", v, "position given for undeclared vertex")
        report = collector.report()
        if not report.ok:
            return None, report

    surface = OrientedSurface(
        vertices=tuple(sorted(vert_set)),
        faces=tuple(sorted(oriented, key=lambda f: f.key)),
        edges=tuple(sorted(tuple(sorted(e)) for e in edge_faces)),
        links=links,
        positions=pos,
    )
    return surface, report


def build_surface(vertices, faces, positions=None) -> OrientedSurface:
    """Validate and construct a surface; raises ValidationFailed listing
    every violated rule (DuplicateFace, BoundaryEdge, OrientationClash,
    NonPolygonLink, ...)."""
    surface, report = _build(vertices, faces, positions)
    if surface is None:
        raise ValidationFailed("invalid surface", report)
    return surface


def validate_surface(vertices, faces, positions=None) -> ValidationReport:
    """Like build_surface but never raises; returns the report."""
    _, report = _build(vertices, faces, positions)
    return report


def link(surface: OrientedSurface, v: str) -> Polygon:
    return surface.link(v)
