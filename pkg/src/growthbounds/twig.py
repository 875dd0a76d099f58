"""Twig recursion for d=2 polyominoes and d=3 self-avoiding surfaces.

A twig is a rooted cluster fragment whose faces are dead (black), alive
(white circle) or excluded (cross); every polyomino / surface decomposes
into a sequence of twigs, one twig hanging off each alive face.  Counting
sequences of twigs by the monomial x^(cells-1) y^(deads) over-counts the
objects, so the diagonal of q(x,y)/(1 - p_l(x,y)) upper-bounds the growth
constant, sharpening as the level l grows.

Faces are stored in doubled "center" coordinates (odd entries span the
face), so the same edge/coface machinery serves d=2 (k=2 cells) and d=3
(k=2 plaquettes).  Twig sets are kept compactly: alongside the black faces,
a set of white *squares* (faces that may be alive or crossed) whose valid
activation subsets are those keeping every lattice edge on at most 2 faces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ._round import ceil5
from .lattice import edge_cofaces, face_edges
from .manifolds import bound_sam_som_upper
from .polyalg import BivariatePoly, diagonal_radius


@dataclass(frozen=True)
class CompactTwig:
    blacks: frozenset      # all dead faces
    new_blacks: frozenset  # deads created at this level (the frontier)
    crossed: frozenset     # excluded faces
    whites: frozenset      # undecided frontier neighbors (alive-or-cross)

    @property
    def n_black(self) -> int:
        return len(self.blacks)


@dataclass
class TwigSet:
    d: int
    level: int
    active: tuple                # CompactTwig instances with whites left
    carried: BivariatePoly       # monomials of fully-dead twigs, all levels


def _first_face(d):
    return (1, 1) + (0,) * (d - 2)


def _entering_edge(d):
    return (1, 0) + (0,) * (d - 2)


def _face_neighbors(face):
    out = set()
    for e in face_edges(face):
        for g in edge_cofaces(e):
            if g != face:
                out.add(g)
    return out


def _candidate_whites(blacks, new_blacks, crossed, entering_edge):
    """Frontier neighbors of the new deads, per the construction rules.

    Excluded: faces already dead or crossed, neighbors of strictly-older
    deads (same-level interactions are handled by the edge-occupancy check
    instead), faces sharing the entering edge, and faces that could never be
    activated because one of their edges already holds two deads.
    """
    older = blacks - new_blacks
    banned = set()
    for b in older:
        banned |= _face_neighbors(b)
    cands = set()
    for f in new_blacks:
        for g in _face_neighbors(f):
            if g in blacks or g in crossed or g in banned:
                continue
            if entering_edge in face_edges(g):
                continue
            if any(sum(h in blacks for h in edge_cofaces(e)) >= 2
                   for e in face_edges(g)):
                continue
            cands.add(g)
    return frozenset(cands)


def level1_twigs(d: int) -> TwigSet:
    """The single compact level-1 twig: a dead first face behind its
    entering edge, with every other neighbor an undecided white square."""
    if d not in (2, 3):
        raise ValueError(f"d must be 2 or 3, got {d}")
    f0 = _first_face(d)
    enter = _entering_edge(d)
    # d=2: the face across the entering edge is the occupied zeroth face.
    crossed = frozenset({(1, -1)}) if d == 2 else frozenset()
    blacks = frozenset({f0})
    whites = _candidate_whites(blacks, blacks, crossed, enter)
    twig = CompactTwig(blacks, blacks, crossed, whites)
    return TwigSet(d, 1, (twig,), BivariatePoly.zero())


# ---------------------------------------------------------------------------
# Valid activation subsets of the white squares.
# ---------------------------------------------------------------------------

def _constraint_edges(blacks, whites):
    """Edges that can be over-occupied: {edge: (black_count, whites on it)}."""
    inc = {}
    for w in whites:
        for e in face_edges(w):
            inc.setdefault(e, []).append(w)
    cons = {}
    for e, ws in inc.items():
        nb = sum(g in blacks for g in edge_cofaces(e))
        if nb + len(ws) > 2:
            cons[e] = (nb, tuple(sorted(ws)))
    return cons


def _components(whites, cons):
    """Partition whites into groups linked by shared constraint edges."""
    parent = {w: w for w in whites}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for _, ws in cons.values():
        r = find(ws[0])
        for w in ws[1:]:
            parent[find(w)] = r
    groups = {}
    for w in whites:
        groups.setdefault(find(w), []).append(w)
    comp_cons = {r: [] for r in groups}
    for e, (nb, ws) in cons.items():
        comp_cons[find(ws[0])].append((e, nb, ws))
    return [(tuple(sorted(g)), tuple(sorted(comp_cons[r])))
            for r, g in sorted(groups.items())]


def _component_subsets(ws, cons):
    """All subsets of one component keeping every edge on <= 2 faces."""
    index = {w: i for i, w in enumerate(ws)}
    per_white = [[] for _ in ws]
    caps = []
    for e, nb, ews in cons:
        caps.append(2 - nb)
        ci = len(caps) - 1
        for w in ews:
            per_white[index[w]].append(ci)
    counts = [0] * len(caps)
    chosen = []
    out = []

    def rec(i):
        if i == len(ws):
            out.append(tuple(chosen))
            return
        rec(i + 1)  # crossed
        if all(counts[c] < caps[c] for c in per_white[i]):
            for c in per_white[i]:
                counts[c] += 1
            chosen.append(ws[i])
            rec(i + 1)
            chosen.pop()
            for c in per_white[i]:
                counts[c] -= 1

    rec(0)
    return out


def _canonical_component(ws, cons):
    """Translation-normalized cache key for a component's count vector."""
    base = min(ws)
    rel = lambda f: tuple(a - b for a, b in zip(f, base))
    return (tuple(rel(w) for w in ws),
            tuple((rel(e), nb, tuple(rel(w) for w in ews))
                  for e, nb, ews in cons))


_GROUP_CACHE = {}


def _component_counts(ws, cons):
    """Coefficients (by activation size) of one component's x-polynomial."""
    key = _canonical_component(ws, cons)
    hit = _GROUP_CACHE.get(key)
    if hit is None:
        counts = [0] * (len(ws) + 1)
        for sub in _component_subsets(ws, cons):
            counts[len(sub)] += 1
        hit = tuple(counts)
        _GROUP_CACHE[key] = hit
    return hit


def _poly_mul1d(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, av in enumerate(a):
        if av:
            for j, bv in enumerate(b):
                out[i + j] += av * bv
    return out


def activation_poly(twig: CompactTwig, method: str = "grouped"):
    """sum over valid alive-subsets S of x^|S|, as a coefficient list.

    "grouped" factorizes over constraint components (free edges contribute
    closed-form factors like (1+3x) automatically); "explicit" enumerates
    subsets of the whole white set directly and exists as a cross-check.
    """
    if method == "explicit":
        cons = _constraint_edges(twig.blacks, twig.whites)
        flat = [(e, nb, ws) for e, (nb, ws) in sorted(cons.items())]
        counts = [0] * (len(twig.whites) + 1)
        for sub in _component_subsets(tuple(sorted(twig.whites)), flat):
            counts[len(sub)] += 1
        return counts
    if method != "grouped":
        raise ValueError(f"unknown method {method!r}")
    cons = _constraint_edges(twig.blacks, twig.whites)
    poly = [1]
    for ws, ccons in _components(twig.whites, cons):
        poly = _poly_mul1d(poly, _component_counts(ws, ccons))
    return poly


def _valid_subsets(twig: CompactTwig):
    cons = _constraint_edges(twig.blacks, twig.whites)
    comps = _components(twig.whites, cons)
    per_comp = [_component_subsets(ws, ccons) for ws, ccons in comps]
    for combo in itertools.product(*per_comp):
        yield frozenset(itertools.chain.from_iterable(combo))


def _monomial(n_black: int) -> BivariatePoly:
    return BivariatePoly.monomial(n_black - 1, n_black)


def _child(twig: CompactTwig, alive: frozenset, entering_edge):
    blacks = twig.blacks | alive
    crossed = twig.crossed | (twig.whites - alive)
    whites = _candidate_whites(blacks, alive, crossed, entering_edge)
    return CompactTwig(blacks, alive, crossed, whites)


def next_level(ts: TwigSet) -> TwigSet:
    """Materialize the next twig level: every alive/cross resolution of every
    active twig; fully-dead resolutions accumulate into the carried part."""
    enter = _entering_edge(ts.d)
    carried = ts.carried
    active = []
    for twig in ts.active:
        for alive in _valid_subsets(twig):
            if not alive:
                carried = carried + _monomial(twig.n_black)
            else:
                active.append(_child(twig, alive, enter))
    return TwigSet(ts.d, ts.level + 1, tuple(active), carried)


def twig_polynomial(ts: TwigSet, method: str = "grouped") -> BivariatePoly:
    """Exact p_l(x,y): carried monomials plus, per active twig,
    y^Nb x^(Nb-1) times its white-activation polynomial."""
    p = ts.carried
    for twig in ts.active:
        g = activation_poly(twig, method)
        nb = twig.n_black
        p = p + BivariatePoly({(nb - 1 + i, nb): c
                               for i, c in enumerate(g) if c})
    return p


def _streamed_polynomial(ts: TwigSet) -> BivariatePoly:
    """p_(l+1) computed without materializing level l+1 (the twig count grows
    steeply; children are visited transiently and only their monomial times
    activation polynomial is accumulated)."""
    enter = _entering_edge(ts.d)
    p = ts.carried
    terms = {}

    def add(poly):
        for k, v in poly.terms.items():
            terms[k] = terms.get(k, 0) + v

    for twig in ts.active:
        for alive in _valid_subsets(twig):
            if not alive:
                add(_monomial(twig.n_black))
                continue
            child = _child(twig, alive, enter)
            g = activation_poly(child)
            nb = child.n_black
            for i, c in enumerate(g):
                if c:
                    k = (nb - 1 + i, nb)
                    terms[k] = terms.get(k, 0) + c
    return p + BivariatePoly(terms)


def level_polynomial(d: int, level: int) -> BivariatePoly:
    """p_level(x,y), streaming the last expansion step."""
    if level < 1:
        raise ValueError(f"level must be >= 1, got {level}")
    ts = level1_twigs(d)
    for _ in range(level - 2):
        ts = next_level(ts)
    if level == 1:
        return twig_polynomial(ts)
    return _streamed_polynomial(ts)


def generating_numerator(d: int, first_face_constrained: bool = True) -> BivariatePoly:
    """Numerator of the twig generating function.

    d=2: x.  d=3: xy(1+3x)^4 — the first face of a surface has no zeroth
    face and may be adjacent to up to four faces, each absent or attached in
    one of three orientations.  The numerator does not move the dominant
    singularity (only the denominator's discriminant matters), which is
    asserted by the bound pipeline; the unconstrained variant exists for
    that cross-check.
    """
    if d == 2 or not first_face_constrained:
        return BivariatePoly.monomial(1, 0)
    q = BivariatePoly.monomial(1, 1)
    lin = BivariatePoly({(0, 0): 1, (1, 0): 3})
    for _ in range(4):
        q = q * lin
    return q


def twig_bound_report(d: int, level: int) -> dict:
    """Run levels 1..level of the recursion and the diagonal-radius selection.

    The initial condition for the root-selection recursion is the (d,2)
    closed-form upper bound (with a hair of slack: at level 1 the
    discriminant root coincides with it exactly).
    """
    init = bound_sam_som_upper(d, 2)
    prev = float(init) * (1 + 1e-9)
    prev_exact = None
    audits = []
    for lvl in range(1, level + 1):
        p = level_polynomial(d, lvl)
        audit = diagonal_radius(p, prev, level=lvl)
        audits.append(audit)
        prev = audit["selected"]
        prev_exact = audit["exact"]
    if prev_exact is not None:
        bound = ceil5(prev_exact)
    else:
        bound = ceil5(prev)
    return {
        "d": d,
        "level": level,
        "bound": str(bound),
        "exact": (f"{prev_exact.numerator}/{prev_exact.denominator}"
                  if prev_exact is not None else None),
        "initial_condition": f"{init.numerator}/{init.denominator}",
        "audits": audits,
    }


def twig_bound(d: int, level: int):
    """Certified upper bound for the (d,2)-SAM growth constant, rounded up
    at the 5th decimal (exact rational when the root rationalizes)."""
    report = twig_bound_report(d, level)
    if report["exact"] is not None:
        return Fraction(report["exact"])
    from decimal import Decimal
    return Decimal(report["bound"])
