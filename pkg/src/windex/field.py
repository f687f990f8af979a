"""Vector fields on the 1-skeleton and the index theorem data.

A field consists of a fiber point X_v at every vertex and, for every
directed edge (i, j), a signed step count d_ij recording the path in
fiber(j) from the transported value transport(i,j)(X_i) to X_j.  Two
invariants tie the data together:

* endpoint congruence, d_ij = pos(X_j) - pos(transport(i,j)(X_i)) mod n_j;
* reversal antisymmetry, d_ij + d_ji = 0 as exact integers.

The swirl of a face is the sum of d over its boundary.  Because transports
preserve step counts, this equals the step count of the fully transported
boundary concatenation (``swirl_path`` builds that concatenation
explicitly; ``swirl`` just adds integers).  The index of a face is
(lift + swirl) / fiber size, an exact integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bundle import (
    DiscreteConnection,
    FlatnessStructure,
    GaugeTransformation,
    basepoint,
    boundary,
    gauge_transform,
    holonomy_steps,
    total_flatness_winding,
)
from .complex import OrientedFace
from .errors import NonIntegralIndex, NotALoop, NotIncident, ReportCollector
from .polygon import PolyIso, PolyPath, RotationPath, Turns


@dataclass(frozen=True)
class VectorField:
    """A section over the 1-skeleton of the connection's surface."""

    conn: DiscreteConnection
    at: dict[str, str] = field(repr=False)
    steps: dict[tuple[str, str], int] = field(repr=False)

    def value(self, v: str) -> str:
        return self.at[v]

    def step(self, i: str, j: str) -> int:
        try:
            return self.steps[(i, j)]
        except KeyError:
            raise NotIncident(f"({i},{j}) is not a directed edge of the surface") from None


def expected_step_class(conn: DiscreteConnection, at, i: str, j: str) -> int:
    """The congruence class (mod n_j) every valid d_ij must lie in."""
    fiber_j = conn.fiber(j)
    moved = conn.transport(i, j)(at[i])
    return (fiber_j.position(at[j]) - fiber_j.position(moved)) % fiber_j.n


def build_field(conn: DiscreteConnection, at, steps) -> VectorField:
    """Validate and assemble a field.

    ``steps`` maps directed edges to integers; one direction per undirected
    edge suffices (the reverse is its negation), and if both are given they
    must cancel exactly.
    """
    collector = ReportCollector()
    surface = conn.surface

    values: dict[str, str] = {}
    for v in surface.vertices:
        if v not in at:
            collector.add("MissingVertex", v, "no fiber point supplied")
            continue
        label = str(at[v])
        if label not in conn.fiber(v):
            collector.add("UnknownLabel", v, f"{label!r} is not a point of the fiber at {v!r}")
            continue
        values[v] = label
    collector.raise_if_failed("invalid vector field")

    given: dict[tuple[str, str], int] = {}
    edge_set = set(surface.edges)
    for key, value in steps.items():
        i, j = (str(x) for x in key)
        if tuple(sorted((i, j))) not in edge_set:
            collector.add("MissingEdge", f"({i},{j})", "not an edge of the surface")
            continue
        given[(i, j)] = int(value)

    resolved: dict[tuple[str, str], int] = {}
    for a, b in surface.edges:
        fwd, bwd = given.get((a, b)), given.get((b, a))
        if fwd is None and bwd is None:
            collector.add("MissingEdge", f"{{{a},{b}}}", "no step count supplied")
            continue
        if fwd is not None and bwd is not None and fwd + bwd != 0:
            collector.add(
                "AntisymmetryViolation",
                f"{{{a},{b}}}",
                f"d({a},{b}) = {fwd} and d({b},{a}) = {bwd} do not cancel",
            )
            continue
        d = fwd if fwd is not None else -bwd
        for (i, j), d_ij in (((a, b), d), ((b, a), -d)):
            want = expected_step_class(conn, values, i, j)
            if d_ij % conn.fiber(j).n != want:
                collector.add(
                    "EndpointIncongruent",
                    f"({i},{j})",
                    f"step {d_ij} is not congruent to {want} mod {conn.fiber(j).n}",
                )
        resolved[(a, b)] = d
        resolved[(b, a)] = -d

    collector.raise_if_failed("invalid vector field")
    return VectorField(conn, values, resolved)


def swirl(vf: VectorField, face: OrientedFace) -> int:
    """Sum of the edge steps around the face boundary.  Independent of the
    basepoint: a rotation of the boundary permutes the same three terms."""
    return sum(vf.step(i, j) for i, j in boundary(face, basepoint(face)))


def swirl_path(vf: VectorField, face: OrientedFace, base: str | None = None) -> PolyPath:
    """The boundary decomposition done explicitly, transport by transport.

    Each edge contributes its step path in the head fiber; the remaining
    boundary transports carry it into the basepoint fiber, where the three
    pieces concatenate into a path from holonomy(X_v) to X_v.  Its step
    count equals ``swirl`` because transports preserve steps.
    """
    v0 = basepoint(face, base)
    edges = boundary(face, v0)
    conn = vf.conn

    pieces: list[PolyPath] = []
    for k, (i, j) in enumerate(edges):
        moved = conn.transport(i, j)(vf.value(i))
        piece = PolyPath(conn.fiber(j), moved, vf.step(i, j))
        for i2, j2 in edges[k + 1:]:
            piece = conn.transport(i2, j2).apply(piece)
        pieces.append(piece)

    total = pieces[0]
    for piece in pieces[1:]:
        total = total.concat(piece)
    return total


def index(vf: VectorField, flatness: FlatnessStructure, face: OrientedFace) -> int:
    """(lift + swirl) / fiber size, via the loop of rotations the two paths
    concatenate into."""
    fiber = vf.conn.fiber(basepoint(face))
    lift_path = RotationPath(fiber, flatness.lift(face))
    swirl_as_rotations = RotationPath(fiber, swirl(vf, face))
    try:
        return lift_path.concat(swirl_as_rotations).winding()
    except NotALoop as exc:
        raise NonIntegralIndex(
            f"face {face.key}: lift + swirl is not a whole number of turns ({exc})"
        ) from None


@dataclass(frozen=True)
class IndexRow:
    face: str
    basepoint: str
    size: int
    holonomy_steps: int
    lift: int
    swirl: int
    index: int


@dataclass(frozen=True)
class IndexReport:
    """Everything the index theorem talks about, for one (connection,
    flatness, field) triple."""

    rows: tuple[IndexRow, ...]
    total_swirl: Turns
    total_index: int
    total_flatness_winding: int

    @property
    def theorem_holds(self) -> bool:
        return self.total_index == self.total_flatness_winding


def totals(
    vf: VectorField,
    flatness: FlatnessStructure,
    basepoints: dict[str, str] | None = None,
) -> IndexReport:
    """Per-face rows plus the three totals.  For valid inputs the total
    swirl is exactly 0 (each directed edge lies in exactly one boundary and
    reverse steps cancel), which forces total index = total flatness
    winding."""
    conn = vf.conn
    size = conn.uniform_size()
    overrides = basepoints or {}
    rows = []
    total_swirl = Fraction(0)
    total_index = 0
    for face in conn.surface.faces:
        v = basepoint(face, overrides.get(face.key))
        s = swirl(vf, face)
        i = index(vf, flatness, face)
        rows.append(
            IndexRow(face.key, v, size, holonomy_steps(conn, face, v), flatness.lift(face), s, i)
        )
        total_swirl += Fraction(s, size)
        total_index += i
    return IndexReport(
        rows=tuple(rows),
        total_swirl=total_swirl,
        total_index=total_index,
        total_flatness_winding=total_flatness_winding(conn, flatness),
    )


def gauge_transform_field(vf: VectorField, gauge: GaugeTransformation) -> VectorField:
    """Carry a field along a gauge transformation: fiber points rotate with
    their fibers, edge steps are untouched."""
    conn = gauge_transform(vf.conn, gauge)
    at = {}
    for v in vf.conn.surface.vertices:
        rot = PolyIso.rotation(vf.conn.fiber(v), gauge.at(v))
        at[v] = rot(vf.value(v))
    return build_field(conn, at, dict(vf.steps))
