"""Independent brute-force oracles, written before the modules they check.

Everything here is deliberately naive: direct geometric predicates over full
position lists, exhaustive iteration over all step sequences, and plain
breadth-first polyomino growth.  None of it shares logic with the package's
incremental checkers, kernels, or enumeration code (only the raw lattice
displacement tables are reused).
"""

import itertools

SQUARE_DISP = ((1, 0), (0, 1), (-1, 0), (0, -1))
TRIANGULAR_DISP = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


def positions(disp, steps):
    pos = [(0,) * len(disp[0])]
    for d in steps:
        pos.append(tuple(a + b for a, b in zip(pos[-1], disp[d])))
    return pos


def _edge_multiset(disp, steps):
    pos = positions(disp, steps)
    return [frozenset((pos[i], pos[i + 1])) for i in range(len(steps))]


def naive_rw(disp, steps):
    return True


def naive_nrw(disp, steps):
    kappa = len(disp)
    for a, b in zip(steps, steps[1:]):
        if b == (a + kappa // 2) % kappa:
            return False
    return True


def naive_eaw(disp, steps):
    edges = _edge_multiset(disp, steps)
    return len(edges) == len(set(edges))


def naive_saw(disp, steps):
    pos = positions(disp, steps)
    return len(pos) == len(set(pos))


def naive_naw(disp, steps):
    pos = positions(disp, steps)
    if len(pos) != len(set(pos)):
        return False
    occupied = set(pos)
    for i, p in enumerate(pos):
        for dd in disp:
            q = tuple(a + b for a, b in zip(p, dd))
            if q in occupied:
                j = pos.index(q)
                if abs(i - j) != 1:
                    return False
    return True


def naive_lwalk(steps):
    # Self-avoiding with only corner passages: no straight-through vertex.
    if not naive_saw(SQUARE_DISP, steps):
        return False
    return all(a != b for a, b in zip(steps, steps[1:]))


def _vertex_configs(disp, steps):
    """Per visited vertex: (set of chord dir-pairs, list of stub dirs)."""
    kappa = len(disp)
    pos = positions(disp, steps)
    n = len(steps)
    configs = {}
    for i in range(1, n):
        v = pos[i]
        chords, stubs = configs.setdefault(v, (set(), []))
        a = (steps[i - 1] + kappa // 2) % kappa  # direction back along the path
        chords.add(frozenset((a, steps[i])))
    if n >= 1:
        configs.setdefault(pos[0], (set(), []))[1].append(steps[0])
        configs.setdefault(pos[n], (set(), []))[1].append(
            (steps[n - 1] + kappa // 2) % kappa)
    return configs


def _chords_cross(c1, c2, kappa):
    a, b = sorted(c1)
    inside = sum(1 for x in c2 if (x - a) % kappa < (b - a) % kappa and x not in (a, b))
    return inside == 1


def _config_geometrically_ok(chords, stubs, kappa):
    """Noncrossing chords; each stub completable to a chord on a free
    direction keeping everything noncrossing."""
    used = set()
    for c in chords:
        used |= set(c)
    used |= set(stubs)
    if len(used) != 2 * len(chords) + len(stubs):
        return False  # a direction carried twice
    chords = [tuple(sorted(c)) for c in chords]
    for c1, c2 in itertools.combinations(chords, 2):
        if _chords_cross(c1, c2, kappa):
            return False
    free = [d for d in range(kappa) if d not in used]
    # Try every assignment of stubs to distinct free directions.
    for extra in itertools.permutations(free, len(stubs)):
        virt = chords + [tuple(sorted((s, e))) for s, e in zip(stubs, extra)]
        if all(not _chords_cross(c1, c2, kappa)
               for c1, c2 in itertools.combinations(virt, 2)):
            return True
    return not stubs


def naive_sow(disp, steps):
    """Edges never repeated; at each vertex the passages pairwise avoid
    crossing, with endpoint stubs completable without creating one."""
    if not naive_eaw(disp, steps):
        return False
    kappa = len(disp)
    for chords, stubs in _vertex_configs(disp, steps).values():
        if not _config_geometrically_ok(chords, stubs, kappa):
            return False
    return True


NAIVE_PREDICATES = {
    ("rw", "square"): lambda s: naive_rw(SQUARE_DISP, s),
    ("nrw", "square"): lambda s: naive_nrw(SQUARE_DISP, s),
    ("eaw", "square"): lambda s: naive_eaw(SQUARE_DISP, s),
    ("naw", "square"): lambda s: naive_naw(SQUARE_DISP, s),
    ("saw", "square"): lambda s: naive_saw(SQUARE_DISP, s),
    ("sow", "square"): lambda s: naive_sow(SQUARE_DISP, s),
    ("odw", "square"): lambda s: naive_sow(SQUARE_DISP, s),
    ("lwalk", "square"): naive_lwalk,
    ("rw", "triangular"): lambda s: naive_rw(TRIANGULAR_DISP, s),
    ("nrw", "triangular"): lambda s: naive_nrw(TRIANGULAR_DISP, s),
    ("eaw", "triangular"): lambda s: naive_eaw(TRIANGULAR_DISP, s),
    ("naw", "triangular"): lambda s: naive_naw(TRIANGULAR_DISP, s),
    ("saw", "triangular"): lambda s: naive_saw(TRIANGULAR_DISP, s),
    ("sow", "triangular"): lambda s: naive_sow(TRIANGULAR_DISP, s),
}


def naive_count(predicate, kappa, n):
    """Count allowed n-step walks by iterating over all kappa^n sequences."""
    return sum(1 for s in itertools.product(range(kappa), repeat=n) if predicate(s))


def naive_counts(rule_id, lattice_name, n_max):
    kappa = 4 if lattice_name == "square" else 6
    pred = NAIVE_PREDICATES[(rule_id, lattice_name)]
    return [naive_count(pred, kappa, n) for n in range(1, n_max + 1)]


# ---------------------------------------------------------------------------
# Fixed polyominoes (translation-distinct connected sets of unit squares).
# ---------------------------------------------------------------------------

def _canon_cells(cells):
    mx = min(c[0] for c in cells)
    my = min(c[1] for c in cells)
    return frozenset((x - mx, y - my) for x, y in cells)


def naive_fixed_polyomino_counts(n_max):
    """1, 2, 6, 19, 63, 216, 760, 2725, ... by breadth-first growth."""
    level = {_canon_cells({(0, 0)})}
    counts = [1]
    for _ in range(1, n_max):
        nxt = set()
        for poly in level:
            for x, y in poly:
                for dx, dy in SQUARE_DISP:
                    c = (x + dx, y + dy)
                    if c not in poly:
                        nxt.add(_canon_cells(poly | {c}))
        level = nxt
        counts.append(len(level))
    return counts


# ---------------------------------------------------------------------------
# Dense spectral radius reference and loop-avoidance counting.
# ---------------------------------------------------------------------------

def dense_spectral_radius(matrix):
    import numpy as np

    return max(abs(w) for w in np.linalg.eigvals(np.asarray(matrix, dtype=float)))


def naive_loop_avoiding_count(lattice, canonical_loops, n):
    """Walks of n steps none of whose contiguous subpaths is a listed loop.

    `canonical_loops` maps loop size -> set of canonical step tuples; the
    canonical form is the minimal image under the lattice point group
    (growthbounds.lattice.canonical_steps).
    """
    from growthbounds.lattice import canonical_steps

    kappa = lattice.coordination
    sizes = sorted(canonical_loops)
    total = 0
    for seq in itertools.product(range(kappa), repeat=n):
        bad = False
        for m in sizes:
            for i in range(n - m + 1):
                if canonical_steps(lattice, seq[i:i + m]) in canonical_loops[m]:
                    bad = True
                    break
            if bad:
                break
        if not bad:
            total += 1
    return total
