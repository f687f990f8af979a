"""Discrete circle bundles with connection.

A connection assigns a fiber polygon to every vertex and an
orientation-preserving polygon isomorphism (the transport) to every
directed edge, inverse on the reverse edge.  Fibers come in two modes:

* link mode: the fiber at v is link(v) itself, so transports only exist
  where the two endpoint degrees agree;
* refined(N) mode: every fiber is a fresh N-gon with the link labels
  embedded at positions k * N/deg(v); N must be divisible by every degree.
  Refinement decouples fiber size from vertex degree, which is what lets
  arbitrary surfaces carry connections.

Holonomy around a face is the composite transport along its boundary, a
rotation of the basepoint fiber; its step count r_F in [0, n) divided by
the fiber size is the curvature of the face, in turns.  A flatness lift is
an integer representative f_F = r_F + k * n of that rotation, i.e. a choice
of homotopy class of paths from the identity to the holonomy.  Summing
lifts over all faces gives the total flatness winding, the exact integer
the index theorem compares against.

Sign conventions are listed in docs/conventions.md (version 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .complex import OrientedFace, OrientedSurface
from .errors import (
    LiftIncongruent,
    NonIntegralTotal,
    NonUniformFiber,
    NotIncident,
    ReportCollector,
    UnknownLabel,
    ValidationFailed,
)
from .polygon import PRESERVING, REVERSING, Polygon, PolyIso, Turns

LINK_MODE = "link"


def basepoint(face: OrientedFace, override: str | None = None) -> str:
    """Default basepoint is the least vertex label; any override must lie
    on the face."""
    if override is None:
        return min(face.vertices)
    if override not in face:
        raise NotIncident(f"{override!r} is not a vertex of face {face.key}")
    return override


def boundary(face: OrientedFace, start: str) -> list[tuple[str, str]]:
    """The face's three directed edges, in cyclic order from ``start``."""
    a, b, c = face.corner_order(start)
    return [(a, b), (b, c), (c, a)]


def _refined_fiber(link: Polygon, size: int) -> Polygon:
    arc = size // link.n
    labels: list[str] = []
    for lab in link.labels:
        labels.append(lab)
        labels.extend(f"{lab}~{j}" for j in range(1, arc))
    return Polygon(tuple(labels))


def make_fibers(surface: OrientedSurface, fiber_mode) -> dict[str, Polygon]:
    """Fiber polygons for every vertex; ``fiber_mode`` is ``"link"`` or an
    integer refinement size."""
    if fiber_mode == LINK_MODE:
        return dict(surface.links)
    size = int(fiber_mode)
    for v in surface.vertices:
        deg = surface.degree(v)
        if size % deg != 0:
            raise ValidationFailed(
                "invalid fiber refinement",
                _single("SizeMismatch", v, f"refinement {size} is not divisible by degree {deg}"),
            )
    return {v: _refined_fiber(surface.links[v], size) for v in surface.vertices}


def _single(rule, element, message):
    collector = ReportCollector()
    collector.add(rule, element, message)
    return collector.report()


def default_refinement(surface: OrientedSurface, even: bool = False) -> int:
    """Least common multiple of the vertex degrees (doubled if an even size
    is required and the lcm is odd)."""
    size = math.lcm(*surface.degrees().values())
    if even and size % 2 == 1:
        size *= 2
    return size


@dataclass(frozen=True)
class DiscreteConnection:
    """Fibers plus transports, validated; immutable afterwards."""

    surface: OrientedSurface
    refined: int | None  # None means link mode
    fibers: dict[str, Polygon] = field(repr=False)
    transports: dict[tuple[str, str], PolyIso] = field(repr=False)

    @property
    def fiber_mode(self):
        return LINK_MODE if self.refined is None else self.refined

    def fiber(self, v: str) -> Polygon:
        return self.fibers[v]

    def transport(self, i: str, j: str) -> PolyIso:
        try:
            return self.transports[(i, j)]
        except KeyError:
            raise NotIncident(f"({i},{j}) is not a directed edge of the surface") from None

    def uniform_size(self) -> int:
        sizes = {p.n for p in self.fibers.values()}
        if len(sizes) != 1:
            raise NonUniformFiber(f"fiber sizes are not uniform: {sorted(sizes)}")
        return sizes.pop()


def _coerce_iso(src: Polygon, dst: Polygon, value, edge, collector) -> PolyIso | None:
    """Accept an anchor pair, a full label map, or a ready PolyIso."""
    if isinstance(value, PolyIso):
        if value.source != src or value.target != dst:
            collector.add("UnknownLabel", edge, "isomorphism does not match the edge fibers")
            return None
        if value.orientation != PRESERVING:
            collector.add("OrientationReversing", edge, "transports must preserve orientation")
            return None
        return value
    if isinstance(value, dict):
        items = {str(k): str(v) for k, v in value.items()}
        if set(items) != set(src.labels) or set(items.values()) != set(dst.labels):
            collector.add("UnknownLabel", edge, "full map must cover the two fibers exactly")
            return None
        base = src.labels[0]
        for orientation in (PRESERVING, REVERSING):
            iso = PolyIso(src, dst, (base, items[base]), orientation)
            if all(iso(k) == v for k, v in items.items()):
                if orientation == REVERSING:
                    collector.add("OrientationReversing", edge, "transports must preserve orientation")
                    return None
                return iso
        collector.add("UnknownLabel", edge, "map does not respect the cyclic structure")
        return None
    try:
        a, b = value
    except (TypeError, ValueError):
        collector.add("UnknownLabel", edge, f"cannot read transport spec {value!r}")
        return None
    try:
        return PolyIso(src, dst, (str(a), str(b)), PRESERVING)
    except UnknownLabel as exc:
        collector.add("UnknownLabel", edge, str(exc))
        return None


def build_connection(surface: OrientedSurface, fiber_mode, transports) -> DiscreteConnection:
    """Validate and assemble a connection.

    ``transports`` maps directed edges to transport specs (anchor pair,
    full label map, or PolyIso).  One direction per undirected edge
    suffices; if both are supplied they must be mutually inverse.
    """
    collector = ReportCollector()

    if fiber_mode == LINK_MODE:
        for a, b in surface.edges:
            if surface.degree(a) != surface.degree(b):
                collector.add(
                    "SizeMismatch",
                    f"{{{a},{b}}}",
                    f"link-mode transport needs equal degrees, got {surface.degree(a)} and {surface.degree(b)}",
                )
        collector.raise_if_failed("invalid connection")
    fibers = make_fibers(surface, fiber_mode)

    given: dict[tuple[str, str], object] = {}
    edge_set = set(surface.edges)
    for key, value in transports.items():
        i, j = (str(x) for x in key)
        if tuple(sorted((i, j))) not in edge_set:
            collector.add("MissingEdge", f"({i},{j})", "not an edge of the surface")
            continue
        given[(i, j)] = value

    isos: dict[tuple[str, str], PolyIso] = {}
    for a, b in surface.edges:
        fwd = given.get((a, b))
        bwd = given.get((b, a))
        if fwd is None and bwd is None:
            collector.add("MissingEdge", f"{{{a},{b}}}", "no transport supplied")
            continue
        iso_f = _coerce_iso(fibers[a], fibers[b], fwd, f"({a},{b})", collector) if fwd is not None else None
        iso_b = _coerce_iso(fibers[b], fibers[a], bwd, f"({b},{a})", collector) if bwd is not None else None
        if fwd is not None and iso_f is None:
            continue
        if bwd is not None and iso_b is None:
            continue
        if iso_f is not None and iso_b is not None and iso_b != iso_f.invert():
            collector.add("NotInverse", f"{{{a},{b}}}", "the two directions are not mutually inverse")
            continue
        if iso_f is None:
            iso_f = iso_b.invert()
        isos[(a, b)] = iso_f
        isos[(b, a)] = iso_f.invert()

    collector.raise_if_failed("invalid connection")
    return DiscreteConnection(
        surface=surface,
        refined=None if fiber_mode == LINK_MODE else int(fiber_mode),
        fibers=fibers,
        transports=isos,
    )


def holonomy_iso(conn: DiscreteConnection, face: OrientedFace, base: str | None = None) -> PolyIso:
    """Composite transport around the face boundary, an endomorphism of the
    basepoint fiber."""
    v = basepoint(face, base)
    iso = PolyIso.identity(conn.fiber(v))
    for i, j in boundary(face, v):
        iso = conn.transport(i, j).compose(iso)
    return iso


def holonomy_steps(conn: DiscreteConnection, face: OrientedFace, base: str | None = None) -> int:
    return holonomy_iso(conn, face, base).rotation_steps()


def curvature_turns(conn: DiscreteConnection, face: OrientedFace, base: str | None = None) -> Turns:
    v = basepoint(face, base)
    return Fraction(holonomy_steps(conn, face, base), conn.fiber(v).n)


def net_holonomy(conn: DiscreteConnection) -> Turns:
    """Sum of face curvatures, reduced mod 1.  Zero for every valid
    connection: each directed edge appears in exactly one face boundary, so
    the per-edge rotation offsets cancel in pairs."""
    conn.uniform_size()
    total = sum((curvature_turns(conn, f) for f in conn.surface.faces), Fraction(0))
    return total % 1


@dataclass(frozen=True)
class FlatnessStructure:
    """A chosen integer lift f_F of each face's holonomy rotation."""

    lifts: dict[OrientedFace, int] = field(repr=False)

    def lift(self, face: OrientedFace) -> int:
        return self.lifts[face]


def attach_flatness(conn: DiscreteConnection, lifts) -> FlatnessStructure:
    """Validate a lift per face: each must be congruent to the holonomy
    steps mod the fiber size."""
    collector = ReportCollector()
    resolved: dict[OrientedFace, int] = {}
    by_key = {f.key: f for f in conn.surface.faces}
    for key, value in lifts.items():
        face = key if isinstance(key, OrientedFace) else by_key.get(str(key))
        if face is None or face.key not in by_key:
            collector.add("MissingFace", key, "lift given for a face not on the surface")
            continue
        resolved[face] = int(value)
    for face in conn.surface.faces:
        if face not in resolved:
            collector.add("MissingFace", face.key, "no lift supplied")
            continue
        n = conn.fiber(basepoint(face)).n
        r = holonomy_steps(conn, face)
        if resolved[face] % n != r:
            collector.add(
                "LiftIncongruent",
                face.key,
                f"lift {resolved[face]} is not congruent to holonomy {r} mod {n}",
            )
    collector.raise_if_failed("invalid flatness structure")
    return FlatnessStructure(resolved)


def canonical_flatness(conn: DiscreteConnection) -> FlatnessStructure:
    """The least nonnegative lift on every face: f_F = r_F."""
    return FlatnessStructure({f: holonomy_steps(conn, f) for f in conn.surface.faces})


def total_flatness_winding(conn: DiscreteConnection, flatness: FlatnessStructure) -> int:
    """Sum of lift turns over all faces; integral whenever the net holonomy
    vanishes mod 1, which validation guarantees."""
    total = Fraction(0)
    for face in conn.surface.faces:
        n = conn.fiber(basepoint(face)).n
        total += Fraction(flatness.lift(face), n)
    if total.denominator != 1:
        raise NonIntegralTotal(f"total flatness {total} is not an integer")
    return int(total)


@dataclass(frozen=True)
class FaceReport:
    """Per-face quantities at a stated basepoint."""

    face: str
    basepoint: str
    size: int
    holonomy_steps: int
    lift: int
    curvature: Turns
    lift_turns: Turns


def face_reports(
    conn: DiscreteConnection,
    flatness: FlatnessStructure,
    basepoints: dict[str, str] | None = None,
) -> list[FaceReport]:
    overrides = basepoints or {}
    rows = []
    for face in conn.surface.faces:
        v = basepoint(face, overrides.get(face.key))
        n = conn.fiber(v).n
        r = holonomy_steps(conn, face, v)
        f = flatness.lift(face)
        rows.append(FaceReport(face.key, v, n, r, f, Fraction(r, n), Fraction(f, n)))
    return rows


@dataclass(frozen=True)
class GaugeTransformation:
    """A rotation of each vertex fiber, acting on connections by
    conjugation."""

    steps: dict[str, int] = field(repr=False)

    def at(self, v: str) -> int:
        return self.steps.get(v, 0)

    def normalized(self, conn: DiscreteConnection) -> "GaugeTransformation":
        return GaugeTransformation(
            {v: self.at(v) % conn.fiber(v).n for v in conn.surface.vertices}
        )

    def then(self, other: "GaugeTransformation") -> "GaugeTransformation":
        keys = set(self.steps) | set(other.steps)
        return GaugeTransformation({v: self.at(v) + other.at(v) for v in keys})


def gauge_transform(conn: DiscreteConnection, gauge: GaugeTransformation) -> DiscreteConnection:
    """Conjugate every transport: t'(i,j) = rot_j(g_j) o t(i,j) o rot_i(-g_i).

    Face holonomies are conjugated by a rotation of the basepoint fiber,
    and rotations commute, so every holonomy step count is unchanged.
    """
    new: dict[tuple[str, str], PolyIso] = {}
    for a, b in conn.surface.edges:
        rot_out = PolyIso.rotation(conn.fiber(b), gauge.at(b))
        rot_in = PolyIso.rotation(conn.fiber(a), -gauge.at(a))
        new[(a, b)] = rot_out.compose(conn.transport(a, b)).compose(rot_in)
    return build_connection(conn.surface, conn.fiber_mode, new)


def trivialize_face(
    conn: DiscreteConnection,
    flatness: FlatnessStructure,
    face: OrientedFace,
    base: str | None = None,
) -> dict[str, PolyIso]:
    """Chart isomorphisms fiber(v) -> fiber(v_F) for the three face vertices.

    The basepoint chart is the identity and the others pull back along the
    boundary, so the transition functions on the two leading boundary edges
    are trivial and the closing edge carries exactly the holonomy rotation,
    which the lift then cancels.
    """
    v0 = basepoint(face, base)
    (e0, e1, _) = boundary(face, v0)
    charts = {v0: PolyIso.identity(conn.fiber(v0))}
    charts[e0[1]] = conn.transport(*e0).invert()
    charts[e1[1]] = conn.transport(*e1).compose(conn.transport(*e0)).invert()

    # sanity: transitions compose to the lift-determined rotation
    composite = charts[v0]
    for i, j in boundary(face, v0):
        transition = charts[j].compose(conn.transport(i, j)).compose(charts[i].invert())
        composite = transition.compose(composite)
    n = conn.fiber(v0).n
    if composite.rotation_steps() != flatness.lift(face) % n:
        raise LiftIncongruent(
            f"cocycle of face {face.key} disagrees with its flatness lift"
        )
    return charts


def tangent_connection(surface: OrientedSurface, fiber_mode=None) -> DiscreteConnection:
    """The straightest transport: the direction pointing along a directed
    edge is carried to the continuation of that edge on the far side, i.e.
    the antipode of the direction pointing back.

    Needs an even fiber size, so link mode requires uniform even degree;
    otherwise use a refined mode with even size (the default).
    """
    if fiber_mode is None:
        degs = set(surface.degrees().values())
        fiber_mode = (
            LINK_MODE if len(degs) == 1 and degs.pop() % 2 == 0
            else default_refinement(surface, even=True)
        )
    fibers = make_fibers(surface, fiber_mode)
    sizes = {v: fibers[v].n for v in surface.vertices}
    for v, n in sizes.items():
        if n % 2 != 0:
            raise ValidationFailed(
                "no straightest transport",
                _single("SizeMismatch", v, f"fiber size {n} is odd, antipodes undefined"),
            )
    transports = {}
    for a, b in surface.directed_edges():
        antipode = fibers[b].label_at(fibers[b].position(a) + sizes[b] // 2)
        transports[(a, b)] = (b, antipode)
    return build_connection(surface, fiber_mode, transports)


def flat_connection(surface: OrientedSurface, fiber_mode=None) -> DiscreteConnection:
    """Position-preserving transports; every holonomy is the identity."""
    if fiber_mode is None:
        degs = set(surface.degrees().values())
        fiber_mode = LINK_MODE if len(degs) == 1 else default_refinement(surface)
    fibers = make_fibers(surface, fiber_mode)
    transports = {
        (a, b): (fibers[a].labels[0], fibers[b].labels[0])
        for a, b in surface.directed_edges()
    }
    return build_connection(surface, fiber_mode, transports)
