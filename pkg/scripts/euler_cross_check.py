#!/usr/bin/env python3
"""Total winding of the straightest connection versus V - E + F.

For each bundled sphere triangulation, builds the straightest (antipodal)
transport, takes canonical lifts, and compares the total flatness winding
with the Euler characteristic; the torus gets its position-preserving flat
connection instead.  This equality is a cross-check of the machinery, not
a general theorem of it: non-canonical lifts shift the total by whole
turns per face.

    python3 scripts/euler_cross_check.py
"""

from __future__ import annotations

import sys

from windex.bundle import canonical_flatness, flat_connection, tangent_connection, total_flatness_winding
from windex.complex import euler_characteristic
from windex.fixtures import boundary_delta3, csaszar_torus, icosahedron, octahedron

CASES = [
    ("tetrahedron", boundary_delta3, lambda s: tangent_connection(s, 6)),
    ("octahedron", octahedron, lambda s: tangent_connection(s, "link")),
    ("icosahedron", icosahedron, lambda s: tangent_connection(s, 10)),
    ("csaszar torus", csaszar_torus, lambda s: flat_connection(s, 6)),
]


def main() -> int:
    bad = 0
    for name, make, connect in CASES:
        surface = make()
        conn = connect(surface)
        winding = total_flatness_winding(conn, canonical_flatness(conn))
        chi = euler_characteristic(surface)
        verdict = "ok" if winding == chi else "MISMATCH"
        if winding != chi:
            bad += 1
        v, e, f = len(surface.vertices), len(surface.edges), len(surface.faces)
        print(f"{name:<14} V-E+F = {v}-{e}+{f} = {chi:>2}   total winding = {winding:>2}   {verdict}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
