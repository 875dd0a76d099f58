"""Rule predicates for restricted lattice walks.

Geometric rules (SAW, SOW, ODW, LWALK) are defined through vertex
configuration tables: the closure of a small set of fully-occupied generator
configurations under the lattice point group and truncation.  A vertex
configuration records, for one lattice vertex, the through-passages (chords
between two incident edge directions) and walk endpoints (stubs on a single
direction).  A path is allowed iff every visited vertex's accumulated
configuration is in the rule's table.

Graph-theoretic rules (RW, NRW, EAW, NAW) are direct predicates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .lattice import SQUARE, TRIANGULAR, Lattice, get_lattice

TABLE_RULES = ("saw", "sow", "odw", "lwalk")
PREDICATE_RULES = ("naw", "eaw", "nrw", "rw")
RULE_IDS = TABLE_RULES + PREDICATE_RULES


@dataclass(frozen=True)
class WalkRule:
    id: str
    lattice: Lattice

    def __post_init__(self):
        if self.id not in RULE_IDS:
            raise ValueError(f"unknown rule id: {self.id!r}")
        if self.id == "lwalk" and self.lattice.name != "square":
            raise ValueError("lwalk is only defined on the square lattice")
        if self.id in ("sow", "odw") and self.lattice.name not in ("square", "triangular"):
            raise ValueError(f"{self.id} has generator tables only on square/triangular")

    @property
    def is_table_rule(self) -> bool:
        return self.id in TABLE_RULES


def get_rule(rule_id: str, lattice_name: str, d: int | None = None) -> WalkRule:
    return WalkRule(rule_id, get_lattice(lattice_name, d))


# ---------------------------------------------------------------------------
# Generator configurations.  A generator is a perfect set of disjoint chords
# over direction indices; the allowed configurations are all of its images
# under the point group with each chord independently kept, truncated to a
# stub on either end, or dropped.
# ---------------------------------------------------------------------------

# Square direction indices: E=0, N=1, W=2, S=3.
# Triangular direction indices at 60-degree steps: A=0 (east), B=1, C=2,
# D=3 (west), E=4, F=5.

_SOW_SQUARE = (
    frozenset({(0, 2)}),            # straight passage
    frozenset({(1, 2), (0, 3)}),    # osculating double corner
)

_SOW_TRIANGULAR = (
    frozenset({(0, 1), (2, 3), (4, 5)}),  # three kissing corners
    frozenset({(1, 5), (2, 4)}),          # two nested wide passages
    frozenset({(1, 5), (2, 3)}),          # wide passage kissing a corner
    frozenset({(0, 3), (1, 2), (4, 5)}),  # straight passage kissed by two corners
)

_ODW_TRIANGULAR = (
    frozenset({(0, 1), (2, 3), (4, 5)}),
    frozenset({(1, 5), (2, 4)}),
    frozenset({(1, 5), (2, 3)}),
    frozenset({(1, 2), (4, 5)}),
    frozenset({(1, 2), (0, 3)}),
)

_LWALK_SQUARE = (
    frozenset({(0, 1)}),  # corner only: consecutive same-direction steps banned
)


def _saw_generators(lattice: Lattice):
    # A SAW visits each vertex at most once, through any single chord.
    kappa = lattice.coordination
    return tuple(
        frozenset({(a, b)}) for a in range(kappa) for b in range(a + 1, kappa)
    )


def _generators(rule: WalkRule):
    key = (rule.id, rule.lattice.name)
    if rule.id == "saw":
        return _saw_generators(rule.lattice)
    if key == ("sow", "square") or key == ("odw", "square"):
        return _SOW_SQUARE  # ODW and SOW coincide on the square lattice
    if key == ("sow", "triangular"):
        return _SOW_TRIANGULAR
    if key == ("odw", "triangular"):
        return _ODW_TRIANGULAR
    if key == ("lwalk", "square"):
        return _LWALK_SQUARE
    raise ValueError(f"rule {rule.id} on {rule.lattice.name} has no generator table")


def _norm_chord(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


Config = tuple  # (frozenset of chords, frozenset of stub directions)

EMPTY_CONFIG: Config = (frozenset(), frozenset())


@lru_cache(maxsize=None)
def build_config_table(rule: WalkRule, permissive_endpoints: bool = False) -> frozenset:
    """Closure of the rule's generators under symmetry and truncation.

    With `permissive_endpoints` a generator chord may additionally truncate
    to BOTH of its endpoint stubs at once (the walk's two ends meeting on the
    two edges of one passage).  That variant over-counts relative to the
    exact-enumeration semantics (the strict table is what reproduces the
    reference walk counts), but it is a superset, so bounds derived from
    paths disallowed under it remain valid; the reference eigenvalue tables
    were produced with it (see automata.automata_bound).
    """
    if not rule.is_table_rule:
        raise ValueError(f"rule {rule.id} uses a direct predicate, not a table")
    n_choices = 5 if permissive_endpoints else 4
    table = set()
    for gen in _generators(rule):
        for perm in rule.lattice.symmetry_perms():
            chords = [_norm_chord(perm[a], perm[b]) for a, b in gen]
            # Per chord: 0 absent, 1 full, 2 stub on first end, 3 stub on
            # second end (4: both stubs, permissive only).  Distinct realized
            # elements always land on distinct generator chords.
            for choice in itertools.product(range(n_choices), repeat=len(chords)):
                kept, stubs = [], []
                for chord, c in zip(chords, choice):
                    if c == 1:
                        kept.append(chord)
                    elif c == 2:
                        stubs.append(chord[0])
                    elif c == 3:
                        stubs.append(chord[1])
                    elif c == 4:
                        stubs.extend(chord)
                table.add((frozenset(kept), frozenset(stubs)))
    return frozenset(table)


def noncrossing_check(cfg: Config, lattice: Lattice) -> bool:
    """True iff no two chords interleave in the cyclic direction order."""
    chords, _stubs = cfg
    kappa = lattice.coordination
    chords = list(chords)
    for i, (a, b) in enumerate(chords):
        for c, d in chords[i + 1:]:
            # strictly-between test on the cycle 0..kappa-1
            inside_c = (c - a) % kappa < (b - a) % kappa and c not in (a, b)
            inside_d = (d - a) % kappa < (b - a) % kappa and d not in (a, b)
            if inside_c != inside_d:
                return False
    return True


# ---------------------------------------------------------------------------
# Bitmask encoding of configurations, shared with the counting kernels.
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def mask_layout(kappa: int):
    """Bit positions: one bit per unordered direction pair, then one per stub."""
    pair_bit = {}
    bit = 0
    for a in range(kappa):
        for b in range(a + 1, kappa):
            pair_bit[(a, b)] = bit
            bit += 1
    stub_base = bit
    return pair_bit, stub_base, stub_base + kappa


def config_to_mask(cfg: Config, kappa: int) -> int:
    pair_bit, stub_base, _ = mask_layout(kappa)
    mask = 0
    for chord in cfg[0]:
        mask |= 1 << pair_bit[chord]
    for s in cfg[1]:
        mask |= 1 << (stub_base + s)
    return mask


@lru_cache(maxsize=None)
def config_table_masks(rule: WalkRule, permissive_endpoints: bool = False) -> frozenset:
    kappa = rule.lattice.coordination
    return frozenset(config_to_mask(cfg, kappa)
                     for cfg in build_config_table(rule, permissive_endpoints))


# ---------------------------------------------------------------------------
# Incremental path checkers.  All expose try_push(direction) -> bool (no
# mutation on failure) and pop().
# ---------------------------------------------------------------------------


class TableChecker:
    """Incremental checker for vertex-configuration-table rules.

    Per visited vertex it keeps the accumulated configuration bitmask and a
    small mask of occupied incident edge directions; appending a step touches
    only the two endpoints of the new edge.
    """

    __slots__ = ("lattice", "table", "opp", "stub_bit", "chord_bit",
                 "conf", "used", "pos", "last", "trail")

    def __init__(self, rule: WalkRule, permissive_endpoints: bool = False):
        lat = rule.lattice
        kappa = lat.coordination
        pair_bit, stub_base, _ = mask_layout(kappa)
        self.lattice = lat
        self.table = config_table_masks(rule, permissive_endpoints)
        self.opp = [lat.opposite(i) for i in range(kappa)]
        self.stub_bit = [1 << (stub_base + i) for i in range(kappa)]
        self.chord_bit = [[0] * kappa for _ in range(kappa)]
        for a in range(kappa):
            for b in range(kappa):
                if a != b:
                    self.chord_bit[a][b] = 1 << pair_bit[_norm_chord(a, b)]
        self.conf = {lat.origin: 0}
        self.used = {lat.origin: 0}
        self.pos = lat.origin
        self.last = None
        self.trail = []

    def try_push(self, d: int) -> bool:
        u = self.pos
        cu = self.conf.get(u, 0)
        uu = self.used.get(u, 0)
        if uu >> d & 1:
            return False  # incident edge already occupied
        if self.last is None:
            ncu = cu | self.stub_bit[d]
        else:
            back = self.opp[self.last]
            ncu = (cu & ~self.stub_bit[back]) | self.chord_bit[back][d]
        if ncu not in self.table:
            return False
        v = self.lattice.step(u, d)
        bo = self.opp[d]
        cv = self.conf.get(v, 0)
        uv = self.used.get(v, 0)
        ncv = cv | self.stub_bit[bo]
        if ncv not in self.table:
            return False
        self.trail.append((u, cu, uu, v, cv, uv, self.last))
        self.conf[u] = ncu
        self.used[u] = uu | 1 << d
        self.conf[v] = ncv
        self.used[v] = uv | 1 << bo
        self.pos = v
        self.last = d
        return True

    def pop(self):
        u, cu, uu, v, cv, uv, last = self.trail.pop()
        self.conf[v] = cv
        self.used[v] = uv
        self.conf[u] = cu
        self.used[u] = uu
        self.pos = u
        self.last = last


class RWChecker:
    __slots__ = ("lattice", "pos", "last", "trail")

    def __init__(self, rule: WalkRule):
        self.lattice = rule.lattice
        self.pos = rule.lattice.origin
        self.last = None
        self.trail = []

    def _accept(self, d: int) -> bool:
        return True

    def try_push(self, d: int) -> bool:
        if not self._accept(d):
            return False
        self.trail.append((self.pos, self.last))
        self.pos = self.lattice.step(self.pos, d)
        self.last = d
        return True

    def pop(self):
        self.pos, self.last = self.trail.pop()


class NRWChecker(RWChecker):
    def _accept(self, d: int) -> bool:
        return self.last is None or d != self.lattice.opposite(self.last)


class EAWChecker(RWChecker):
    __slots__ = ("edges",)

    def __init__(self, rule: WalkRule):
        super().__init__(rule)
        self.edges = set()

    def try_push(self, d: int) -> bool:
        v = self.lattice.step(self.pos, d)
        edge = frozenset((self.pos, v))
        if edge in self.edges:
            return False
        self.edges.add(edge)
        self.trail.append((self.pos, self.last, edge))
        self.pos = v
        self.last = d
        return True

    def pop(self):
        self.pos, self.last, edge = self.trail.pop()
        self.edges.remove(edge)


class NAWChecker(RWChecker):
    __slots__ = ("visited",)

    def __init__(self, rule: WalkRule):
        super().__init__(rule)
        self.visited = {self.pos}

    def try_push(self, d: int) -> bool:
        lat = self.lattice
        v = lat.step(self.pos, d)
        if v in self.visited:
            return False
        # No neighbour of the new vertex may already be on the path, except
        # the vertex we came from.
        for dd in range(lat.coordination):
            w = lat.step(v, dd)
            if w != self.pos and w in self.visited:
                return False
        self.visited.add(v)
        self.trail.append((self.pos, self.last, v))
        self.pos = v
        self.last = d
        return True

    def pop(self):
        self.pos, self.last, v = self.trail.pop()
        self.visited.remove(v)


_PREDICATE_CHECKERS = {
    "rw": RWChecker,
    "nrw": NRWChecker,
    "eaw": EAWChecker,
    "naw": NAWChecker,
}


def make_checker(rule: WalkRule, permissive_endpoints: bool = False):
    if rule.is_table_rule:
        return TableChecker(rule, permissive_endpoints)
    if permissive_endpoints:
        raise ValueError("permissive_endpoints applies to table rules only")
    return _PREDICATE_CHECKERS[rule.id](rule)


def is_allowed(rule: WalkRule, steps, permissive_endpoints: bool = False) -> bool:
    """1_R(path): true iff the path satisfies the rule."""
    checker = make_checker(rule, permissive_endpoints)
    for d in steps:
        if not checker.try_push(d):
            return False
    return True
