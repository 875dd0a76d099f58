"""Lattice geometry and symmetry kernel.

Square, triangular and d-dimensional hypercubic lattices with exact integer
coordinates.  The triangular lattice lives in an oblique integer basis whose
two basis vectors are 60 degrees apart, so all six neighbour displacements are
integer pairs and every symmetry is an integer matrix.

Faces of the hypercubic lattice ("k-faces") are addressed by their center,
which has k half-integer and d-k integer coordinates.  Centers are stored as
*doubled* integers: a coordinate is half-integer iff its doubled value is odd.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class Lattice:
    """A point lattice with a fixed, cyclically ordered direction set.

    The direction order is part of the definition: the non-crossing chord
    test in walk_rules compares direction indices cyclically, so the order
    must never be recomputed or permuted.
    """

    name: str
    dim: int
    displacements: tuple[tuple[int, ...], ...]

    @property
    def coordination(self) -> int:
        return len(self.displacements)

    def opposite(self, d: int) -> int:
        return (d + self.coordination // 2) % self.coordination

    def step(self, p: tuple[int, ...], d: int) -> tuple[int, ...]:
        disp = self.displacements[d]
        return tuple(a + b for a, b in zip(p, disp))

    @property
    def origin(self) -> tuple[int, ...]:
        return (0,) * self.dim

    def symmetry_perms(self) -> tuple[tuple[int, ...], ...]:
        """Point-group elements as permutations of direction indices."""
        return _symmetry_perms(self)

    def is_planar_cyclic(self) -> bool:
        """True when directions are evenly spaced in the plane (dihedral group)."""
        return self.name in ("square", "triangular")


SQUARE = Lattice("square", 2, ((1, 0), (0, 1), (-1, 0), (0, -1)))  # E, N, W, S

# Oblique basis: (1,0) points along 0 degrees, (0,1) along 60 degrees.
TRIANGULAR = Lattice(
    "triangular",
    2,
    ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)),
)


@lru_cache(maxsize=None)
def hypercubic(d: int) -> Lattice:
    if d < 1:
        raise ValueError(f"hypercubic dimension must be >= 1, got {d}")
    disp = []
    for i in range(d):
        disp.append(tuple(1 if j == i else 0 for j in range(d)))
    for i in range(d):
        disp.append(tuple(-1 if j == i else 0 for j in range(d)))
    return Lattice(f"hypercubic{d}", d, tuple(disp))


_BY_NAME = {"square": SQUARE, "triangular": TRIANGULAR}


def get_lattice(name: str, d: int | None = None) -> Lattice:
    """Look up a lattice by CLI name ('square', 'triangular', 'hypercubic')."""
    if name in _BY_NAME:
        return _BY_NAME[name]
    if name == "hypercubic":
        if d is None:
            raise ValueError("hypercubic lattice needs a dimension")
        return hypercubic(d)
    raise ValueError(f"unknown lattice id: {name!r}")


def neighbors(p: tuple[int, ...], lattice: Lattice) -> list[tuple[int, tuple[int, ...]]]:
    """All (direction index, neighbour point) pairs in fixed cyclic order."""
    if len(p) != lattice.dim:
        raise ValueError(f"point {p} has wrong dimension for {lattice.name}")
    return [(d, lattice.step(p, d)) for d in range(lattice.coordination)]


@lru_cache(maxsize=None)
def _symmetry_perms(lattice: Lattice) -> tuple[tuple[int, ...], ...]:
    kappa = lattice.coordination
    if lattice.is_planar_cyclic():
        # Dihedral group: rotations i -> i+r and reflections i -> r-i.
        perms = []
        for r in range(kappa):
            perms.append(tuple((i + r) % kappa for i in range(kappa)))
        for r in range(kappa):
            perms.append(tuple((r - i) % kappa for i in range(kappa)))
        return tuple(perms)
    # Hyperoctahedral group for hypercubic lattices: signed axis permutations.
    d = lattice.dim
    disp_index = {disp: i for i, disp in enumerate(lattice.displacements)}
    perms = []
    for axes in itertools.permutations(range(d)):
        for signs in itertools.product((1, -1), repeat=d):
            perm = []
            for disp in lattice.displacements:
                image = [0] * d
                for j, v in enumerate(disp):
                    image[axes[j]] = v * signs[j]
                perm.append(disp_index[tuple(image)])
            perms.append(tuple(perm))
    return tuple(perms)


def apply_perm_to_steps(perm: tuple[int, ...], steps: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(perm[s] for s in steps)


def canonical_steps(lattice: Lattice, steps: tuple[int, ...]) -> tuple[int, ...]:
    """Minimal image of a step sequence under the lattice point group.

    Translation invariance is automatic because paths are stored as step
    sequences rooted at the origin.
    """
    return min(apply_perm_to_steps(g, steps) for g in lattice.symmetry_perms())


def path_positions(lattice: Lattice, steps) -> list[tuple[int, ...]]:
    pos = [lattice.origin]
    for d in steps:
        pos.append(lattice.step(pos[-1], d))
    return pos


# ---------------------------------------------------------------------------
# Face (cell) coordinates on the hypercubic lattice, stored doubled.
# ---------------------------------------------------------------------------

FaceCoord = tuple  # tuple of doubled integers


def face_k(f: FaceCoord) -> int:
    """Cell dimension: the number of half-integer (odd doubled) coordinates."""
    return sum(c & 1 for c in f)


def half_dims(f: FaceCoord) -> tuple[int, ...]:
    return tuple(i for i, c in enumerate(f) if c & 1)


def int_dims(f: FaceCoord) -> tuple[int, ...]:
    return tuple(i for i, c in enumerate(f) if not c & 1)


def _offset(f: FaceCoord, axis: int, delta: int) -> FaceCoord:
    return f[:axis] + (f[axis] + delta,) + f[axis + 1:]


def face_edges(f: FaceCoord) -> list[FaceCoord]:
    """The 2k bounding (k-1)-edges of a k-face, at f +- half a unit."""
    edges = []
    for j in half_dims(f):
        edges.append(_offset(f, j, -1))
        edges.append(_offset(f, j, +1))
    return edges


def edge_cofaces(edge: FaceCoord, k: int | None = None) -> list[FaceCoord]:
    """All k-faces incident to a (k-1)-edge: edge +- half a unit along any
    integer dimension of the edge.  There are 2(d-k)+2 of them."""
    faces = []
    for i in int_dims(edge):
        faces.append(_offset(edge, i, -1))
        faces.append(_offset(edge, i, +1))
    return faces


def face_incidences(f: FaceCoord) -> dict:
    """Bounding edges of f, and per edge the candidate cofaces (excluding f).

    Per edge there are 2(d-k)+1 candidates: the translate of f across the
    edge plus the 2(d-k) "traded" orientations.
    """
    k = face_k(f)
    d = len(f)
    if not 1 <= k <= d:
        raise ValueError(f"face {f} has k={k} out of range 1..{d}")
    edges = face_edges(f)
    slots = {}
    for e in edges:
        slots[e] = [g for g in edge_cofaces(e) if g != f]
    return {"edges": edges, "coface_slots": slots}


def canonical_translate(cells: frozenset) -> frozenset:
    """Translate a set of doubled-coordinate cells to a normal form.

    The lexicographically smallest cell is shifted so that each of its
    coordinates lies in {0, 1} (translations move cells by even doubled
    amounts, so parities are preserved).
    """
    if not cells:
        raise ValueError("cannot canonicalize an empty cell set")
    base = min(cells)
    shift = tuple(c - (c & 1) for c in base)
    return frozenset(tuple(a - b for a, b in zip(cell, shift)) for cell in cells)
