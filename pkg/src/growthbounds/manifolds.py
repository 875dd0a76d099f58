"""Restricted lattice manifolds: enumeration oracles and closed-form bounds.

Classes of connected k-faces in the d-dimensional hypercubic lattice,
identified up to translation:

* XD          - polyominoids: faces connected through shared (k-1)-edges,
                any number of faces per edge;
* SAM         - self-avoiding: every (k-1)-edge meets at most 2 faces;
* SAM_closed  - SAM where every edge of every face meets exactly 2 faces;
* SOM         - self-osculating: an XD face set together with a pairing of
                the faces at every multi-incidence edge that satisfies the
                osculating condition; distinct pairings count separately.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .lattice import (canonical_translate, edge_cofaces, face_edges, face_k,
                      half_dims, int_dims, _offset)

CLASS_IDS = ("sam", "som", "xd", "sam_closed")

# Desk-scale enumeration guards, overridable per call.
DEFAULT_CAPS = {(2, 2): 10, (3, 2): 8, (3, 3): 8}
FALLBACK_CAP = 7


@dataclass(frozen=True)
class ManifoldClass:
    id: str
    d: int
    k: int

    def __post_init__(self):
        if self.id not in CLASS_IDS:
            raise ValueError(f"unknown manifold class: {self.id!r}")
        if not 1 <= self.k <= self.d:
            raise ValueError(f"need 1 <= k <= d, got k={self.k}, d={self.d}")


# ---------------------------------------------------------------------------
# Osculating condition at a shared (k-1)-edge.
# ---------------------------------------------------------------------------

def _face_offset(edge, face):
    """Unit offset vector from the edge center to an incident face center."""
    diff = tuple(a - b for a, b in zip(face, edge))
    nonzero = [(i, v) for i, v in enumerate(diff) if v]
    if len(nonzero) != 1 or abs(nonzero[0][1]) != 1:
        raise ValueError(f"face {face} is not incident to edge {edge}")
    return diff


def _antiparallel(e1, e2):
    return all(a == -b for a, b in zip(e1, e2))


def _perpendicular(e1, e2):
    return sum(a * b for a, b in zip(e1, e2)) == 0


def _pairs_ok(offset_pairs):
    for (e1, e2), (e3, e4) in itertools.combinations(offset_pairs, 2):
        if len({e1, e2, e3, e4}) != 4:
            return False
        if _antiparallel(e1, e2) and not _perpendicular(e3, e4):
            return False
        if _antiparallel(e3, e4) and not _perpendicular(e1, e2):
            return False
    return True


def osculating_ok(edge, pairs, lone=None) -> bool:
    """True iff the pairing of the faces at `edge` avoids crossings.

    For every two pairs the four offset unit vectors must be distinct, and an
    antiparallel pair (a straight passage) forces every other pair to be
    perpendicular.  A lone face (odd incidence) is hypothetically paired with
    a vacant coface position of the edge; it passes if some vacancy works.
    """
    offset_pairs = [(_face_offset(edge, f), _face_offset(edge, g))
                    for f, g in pairs]
    if lone is None:
        return _pairs_ok(offset_pairs)
    lone_off = _face_offset(edge, lone)
    occupied = {o for p in offset_pairs for o in p} | {lone_off}
    for pos in edge_cofaces(edge):
        off = tuple(a - b for a, b in zip(pos, edge))
        if off in occupied:
            continue
        if _pairs_ok(offset_pairs + [(lone_off, off)]):
            return True
    return False


def _matchings(items):
    """All partitions of `items` into pairs, plus one lone element when odd."""
    items = list(items)
    if not items:
        yield (), None
        return
    if len(items) % 2 == 1:
        for i, lone in enumerate(items):
            rest = items[:i] + items[i + 1:]
            for pairs, _ in _matchings(rest):
                yield pairs, lone
        return
    first, rest = items[0], items[1:]
    for j, partner in enumerate(rest):
        remaining = rest[:j] + rest[j + 1:]
        for pairs, _ in _matchings(remaining):
            yield ((first, partner),) + pairs, None


def edge_pairings(edge, faces):
    """All osculation-valid pairings of the faces incident to `edge`."""
    valid = []
    for pairs, lone in _matchings(faces):
        if osculating_ok(edge, list(pairs), lone):
            valid.append((pairs, lone))
    return valid


# ---------------------------------------------------------------------------
# Brute-force enumeration by connected growth with canonical-translate dedup.
# ---------------------------------------------------------------------------

def _start_faces(d, k):
    return [tuple(1 if i in axes else 0 for i in range(d))
            for axes in itertools.combinations(range(d), k)]


def _edge_incidence(faces):
    """Map (k-1)-edge -> sorted list of incident faces from the set."""
    inc = {}
    for f in faces:
        for e in face_edges(f):
            inc.setdefault(e, []).append(f)
    return inc


def _sam_ok(faces, new_face):
    for e in face_edges(new_face):
        count = 0
        for g in edge_cofaces(e):
            if g in faces or g == new_face:
                count += 1
        if count > 2:
            return False
    return True


def _grow_levels(d, k, n, sam_filter):
    """Sets of canonical connected face sets, sizes 1..n."""
    level = {canonical_translate(frozenset({f})) for f in _start_faces(d, k)}
    levels = [level]
    for _ in range(1, n):
        nxt = set()
        for faces in level:
            candidates = set()
            for f in faces:
                for e in face_edges(f):
                    for g in edge_cofaces(e):
                        if g not in faces:
                            candidates.add(g)
            for g in candidates:
                if sam_filter and not _sam_ok(faces, g):
                    continue
                nxt.add(canonical_translate(faces | {g}))
        levels.append(nxt)
        level = nxt
    return levels


def _is_closed(faces):
    inc = _edge_incidence(faces)
    return all(len(fs) == 2 for fs in inc.values())


def connection_structures(faces):
    """All valid osculation assignments on a face set, with connectivity.

    Returns a list of structures; each structure is a dict mapping every
    multi-incidence edge (>= 3 faces) to its chosen (pairs, lone).
    """
    inc = _edge_incidence(faces)
    multi = {e: fs for e, fs in inc.items() if len(fs) >= 3}
    choices = {e: edge_pairings(e, fs) for e, fs in multi.items()}
    if any(not c for c in choices.values()):
        return []
    # Adjacency contributed by plain 2-incidence edges.
    base_adj = {f: set() for f in faces}
    for fs in inc.values():
        if len(fs) == 2:
            base_adj[fs[0]].add(fs[1])
            base_adj[fs[1]].add(fs[0])
    edges = sorted(multi)
    out = []
    for combo in itertools.product(*(choices[e] for e in edges)):
        adj = {f: set(a) for f, a in base_adj.items()}
        for (pairs, _lone) in combo:
            for f, g in pairs:
                adj[f].add(g)
                adj[g].add(f)
        # connectivity
        start = next(iter(faces))
        seen = {start}
        stack = [start]
        while stack:
            for g in adj[stack.pop()]:
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
        if len(seen) == len(faces):
            out.append(dict(zip(edges, combo)))
    return out


def enumerate_fixed(mc: ManifoldClass, n: int, cap: int | None = None,
                    return_complexes: bool = False):
    """Count translation-canonical complexes of k-area n in the class."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if cap is None:
        cap = DEFAULT_CAPS.get((mc.d, mc.k), FALLBACK_CAP)
    if n > cap:
        raise ValueError(
            f"n={n} exceeds the size cap {cap} for ({mc.d},{mc.k}); "
            f"pass a larger cap explicitly to override")
    sam_filter = mc.id in ("sam", "sam_closed")
    levels = _grow_levels(mc.d, mc.k, n, sam_filter)
    face_sets = levels[n - 1]
    if mc.id in ("sam", "xd"):
        return sorted(face_sets, key=sorted) if return_complexes else len(face_sets)
    if mc.id == "sam_closed":
        closed = [fs for fs in face_sets if _is_closed(fs)]
        return sorted(closed, key=sorted) if return_complexes else len(closed)
    # SOM: distinct connection structures on each XD face set.
    if return_complexes:
        out = []
        for fs in face_sets:
            for structure in connection_structures(fs):
                out.append((fs, structure))
        return out
    return sum(len(connection_structures(fs)) for fs in face_sets)


# ---------------------------------------------------------------------------
# Closed-form bound calculators.
# ---------------------------------------------------------------------------

def _check_dk(d, k):
    if not 1 <= k <= d:
        raise ValueError(f"need 1 <= k <= d, got k={k}, d={d}")


def bound_closed_sam_upper(d: int, k: int) -> Fraction:
    """Growth of closed (d,k)-SAMs is at most 2(d-k)+1."""
    _check_dk(d, k)
    if k >= d:
        raise ValueError("closed-manifold upper bound needs k < d")
    return Fraction(2 * (d - k) + 1)


def _ratio(k: int) -> Fraction:
    """(2k-1)^(2k-1) / (2k-2)^(2k-2), with the k=1 case equal to 1."""
    if k == 1:
        return Fraction(1)
    return Fraction((2 * k - 1) ** (2 * k - 1), (2 * k - 2) ** (2 * k - 2))


def bound_sam_som_upper(d: int, k: int) -> Fraction:
    """Upper bound for SAM and SOM growth; reduces to 2d-1 at k=1."""
    _check_dk(d, k)
    return _ratio(k) * (2 * (d - k) + 1)


def bound_xd_upper(d: int, k: int) -> Fraction:
    """w^w / (w-1)^(w-1) with w = (2k-1)(2(d-k)+1)."""
    _check_dk(d, k)
    w = (2 * k - 1) * (2 * (d - k) + 1)
    if w == 1:
        return Fraction(1)
    return Fraction(w ** w, (w - 1) ** (w - 1))


def bound_sam_lower(d: int, k: int) -> int:
    """Directed-walk lower bound k(d-k+1)."""
    _check_dk(d, k)
    return k * (d - k + 1)


def bound_closed_sam_lower(d: int, k: int) -> float:
    """((k+1)(d-k))^(1/2k)."""
    _check_dk(d, k)
    if k >= d:
        raise ValueError("closed-manifold lower bound needs k < d")
    return ((k + 1) * (d - k)) ** (1.0 / (2 * k))


def separation_strict(d: int, k: int) -> bool:
    """2(d-k)+1 < k(d-k+1), strict for 1 < k < d."""
    if not 1 < k < d:
        raise ValueError("strict separation is stated for 1 < k < d")
    return bound_closed_sam_upper(d, k) < bound_sam_lower(d, k)


def som_count_upper(d: int, k: int, n: int) -> Fraction:
    """Explicit count bound C(d,k) * ratio^n * (2(d-k)+1)^(n-1)."""
    _check_dk(d, k)
    if n < 1:
        raise ValueError("n must be >= 1")
    return comb(d, k) * _ratio(k) ** n * Fraction(2 * (d - k) + 1) ** (n - 1)


# ---------------------------------------------------------------------------
# Directed-walk witness family (lower-bound construction).
# ---------------------------------------------------------------------------

def directed_walk_family(d: int, k: int, n: int) -> set:
    """Canonical face sets of the staircase family: from the last-attached
    face, attach across one of its k positive edges either the translate or
    one of the d-k increasing trades.  Yields C(d,k) * (k(d-k+1))^(n-1)
    distinct valid SAMs."""
    _check_dk(d, k)
    results = set()

    def rec(faces, last, size):
        if size == n:
            results.add(canonical_translate(frozenset(faces)))
            return
        for j in half_dims(last):
            edge = _offset(last, j, +1)
            for i in int_dims(edge):
                g = _offset(edge, i, +1)
                rec(faces | {g}, g, size + 1)

    for f in _start_faces(d, k):
        rec({f}, f, 1)
    return results
