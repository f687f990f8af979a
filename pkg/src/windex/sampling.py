"""Seeded random instances for property sweeps.

Random connections draw an arbitrary anchor per undirected edge, random
lifts shift each canonical lift by whole fiber turns, and random fields
pick a fiber point per vertex plus any step count in the forced congruence
class.  Everything a sampler returns passes the corresponding builder's
validation by construction.
"""

from __future__ import annotations

from random import Random

from .bundle import (
    DiscreteConnection,
    FlatnessStructure,
    GaugeTransformation,
    attach_flatness,
    build_connection,
    holonomy_steps,
    make_fibers,
)
from .complex import OrientedSurface
from .field import VectorField, build_field, expected_step_class


def random_connection(surface: OrientedSurface, fiber_mode, rng: Random) -> DiscreteConnection:
    fibers = make_fibers(surface, fiber_mode)
    transports = {}
    for a, b in surface.edges:
        transports[(a, b)] = (rng.choice(fibers[a].labels), rng.choice(fibers[b].labels))
    return build_connection(surface, fiber_mode, transports)


def random_lifts(conn: DiscreteConnection, rng: Random, spread: int = 2) -> FlatnessStructure:
    lifts = {}
    for face in conn.surface.faces:
        n = conn.fiber(min(face.vertices)).n
        lifts[face] = holonomy_steps(conn, face) + n * rng.randint(-spread, spread)
    return attach_flatness(conn, lifts)


def random_field(conn: DiscreteConnection, rng: Random, spread: int = 2) -> VectorField:
    at = {v: rng.choice(conn.fiber(v).labels) for v in conn.surface.vertices}
    steps = {}
    for a, b in conn.surface.edges:
        base = expected_step_class(conn, at, a, b)
        steps[(a, b)] = base + conn.fiber(b).n * rng.randint(-spread, spread)
    return build_field(conn, at, steps)


def random_gauge(conn: DiscreteConnection, rng: Random) -> GaugeTransformation:
    return GaugeTransformation(
        {v: rng.randrange(conn.fiber(v).n) for v in conn.surface.vertices}
    )
