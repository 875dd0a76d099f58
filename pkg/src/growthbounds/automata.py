"""Transfer-matrix bounding automata for restricted walks.

Pipeline: discover all minimal disallowed paths ("loops") up to size k, take
their proper prefixes as suffix classes, build the sparse transfer matrix over
those classes, and certify an upper bound on its dominant eigenvalue — which
upper-bounds the walk model's connective constant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from ._round import ceil5
from .lattice import canonical_steps
from .walk_rules import WalkRule, is_allowed, make_checker

# Directions pointing strictly below the east axis; loop search may skip them
# for the first non-east step (a reflection maps such paths back into the
# searched half-space, and the canonical form dedups the rest).
_DOWN_DIRS = {4: frozenset({3}), 6: frozenset({4, 5})}


def find_loops(rule: WalkRule, k: int,
               permissive_endpoints: bool = False) -> frozenset:
    """All loops of exactly size k, as canonical step tuples.

    A loop is a minimal disallowed path: the whole path fails the rule while
    the length-(k-1) prefix and the length-(k-1) suffix are both allowed
    (minimality of all shorter subpaths follows by truncation heredity).

    With `permissive_endpoints` the rule's table additionally allows the
    walk's two ends to meet on the two edges of one passage (see
    walk_rules.build_config_table); paths disallowed under that weaker table
    are also disallowed under the strict one, so the resulting loops are
    still valid exclusion patterns — just fewer of them.
    """
    if k < 2:
        raise ValueError(f"loop size must be >= 2, got {k}")
    lat = rule.lattice
    kappa = lat.coordination
    down = _DOWN_DIRS.get(kappa, frozenset())
    checker = make_checker(rule, permissive_endpoints)
    loops = set()
    seq = []

    def rec():
        depth = len(seq)
        east_only = all(s == 0 for s in seq)
        for d in range(kappa):
            if depth == 0 and d != 0:
                continue  # canonical loops start eastward
            if east_only and d in down:
                continue  # mirror image already searched
            if depth == k - 1:
                if checker.try_push(d):
                    checker.pop()
                elif is_allowed(rule, seq[1:] + [d], permissive_endpoints):
                    loops.add(canonical_steps(lat, tuple(seq) + (d,)))
            elif checker.try_push(d):
                seq.append(d)
                rec()
                seq.pop()
                checker.pop()

    rec()
    return frozenset(loops)


def find_loops_upto(rule: WalkRule, k: int, sizes: str = "all",
                    permissive_endpoints: bool = False) -> dict:
    """{size: canonical loop set} for sizes 2..k.

    sizes="odd" restricts the search to odd sizes plus the trivial size-2
    reversal (the configuration used for the square-lattice reference
    tables); omitted sizes are recorded as empty sets.
    """
    out = {}
    for m in range(2, k + 1):
        if sizes == "odd" and m % 2 == 0 and m != 2:
            out[m] = frozenset()
        else:
            out[m] = find_loops(rule, m, permissive_endpoints)
    return out


@dataclass(frozen=True)
class SuffixClassBasis:
    classes: tuple  # canonical step tuples, ordered by (length, lex)
    index: dict = field(hash=False, compare=False)

    @property
    def dim(self):
        return len(self.classes)


def build_basis(loops_by_size: dict, rule: WalkRule) -> SuffixClassBasis:
    """Deduplicated canonical loop prefixes (lengths 2..len-1) plus the
    single-step start class."""
    if not any(loops_by_size.values()):
        raise ValueError("loop set is empty")
    lat = rule.lattice
    classes = {(0,)}  # canonical single-step class
    for loops in loops_by_size.values():
        for loop in loops:
            for m in range(2, len(loop)):
                classes.add(canonical_steps(lat, loop[:m]))
    ordered = tuple(sorted(classes, key=lambda c: (len(c), c)))
    return SuffixClassBasis(ordered, {c: i for i, c in enumerate(ordered)})


@dataclass
class TransferMatrix:
    dim: int
    entries: dict            # (row, col) -> positive integer
    start_index: int         # column of the single-step class
    basis: tuple = ()

    def to_dense(self):
        M = np.zeros((self.dim, self.dim), dtype=np.int64)
        for (i, j), v in self.entries.items():
            M[i, j] = v
        return M

    def to_csr(self, shift: int = 0):
        """Row-compressed float64 arrays of (M + shift*I)."""
        rows = [[] for _ in range(self.dim)]
        for (i, j), v in self.entries.items():
            rows[i].append((j, float(v)))
        if shift:
            for i in range(self.dim):
                rows[i].append((i, float(shift)))
        indptr = np.zeros(self.dim + 1, dtype=np.int64)
        indices = []
        data = []
        for i, row in enumerate(rows):
            row.sort()
            for j, v in row:
                indices.append(j)
                data.append(v)
            indptr[i + 1] = len(indices)
        return indptr, np.array(indices, dtype=np.int64), np.array(data)

    def to_json_dict(self):
        triplets = sorted([i, j, v] for (i, j), v in self.entries.items())
        return {"dim": self.dim, "triplets": triplets,
                "start_index": self.start_index}

    @classmethod
    def from_json_dict(cls, obj):
        entries = {(i, j): v for i, j, v in obj["triplets"]}
        return cls(obj["dim"], entries, obj["start_index"])


def build_matrix(basis: SuffixClassBasis, rule: WalkRule,
                 loops_by_size: dict) -> TransferMatrix:
    """Column alpha counts the one-step extensions of class alpha that avoid
    all loops, bucketed by the class of their longest suffix in the basis."""
    lat = rule.lattice
    kappa = lat.coordination
    entries = {}
    for alpha, cls in enumerate(basis.classes):
        for d in range(kappa):
            ext = cls + (d,)
            # Reject if any suffix ending at the new step is a loop.
            rejected = False
            for m in range(2, len(ext) + 1):
                loops = loops_by_size.get(m)
                if loops and canonical_steps(lat, ext[-m:]) in loops:
                    rejected = True
                    break
            if rejected:
                continue
            # Longest suffix of ext equivalent to a basis class.
            for strip in range(len(ext)):
                cand = canonical_steps(lat, ext[strip:])
                if cand in basis.index:
                    key = (basis.index[cand], alpha)
                    entries[key] = entries.get(key, 0) + 1
                    break
            else:
                raise RuntimeError(
                    f"extension {ext} of class {cls} matched no basis class")
    return TransferMatrix(basis.dim, entries, basis.index[(0,)], basis.classes)


def loop_avoiding_count(M: TransferMatrix, kappa: int, n: int) -> int:
    """kappa * 1^T M^(n-1) v_start with exact integer arithmetic."""
    if n < 1:
        raise ValueError("n must be >= 1")
    v = [0] * M.dim
    v[M.start_index] = 1
    for _ in range(n - 1):
        w = [0] * M.dim
        for (i, j), val in M.entries.items():
            if v[j]:
                w[i] += val * v[j]
        v = w
    return kappa * sum(v)


def certified_dominant_eigenvalue(M: TransferMatrix, tol: float = 1e-9,
                                  max_iter: int = 10 ** 6) -> dict:
    """Collatz-Wielandt bracket for the spectral radius of M.

    Power iteration runs on (M + I) in float64 to break periodicity; the
    returned bracket endpoints are recomputed exactly (integer matrix times
    dyadic-rational vector) from the final iterate and shifted by -1, so
    `upper` is a mathematically valid upper bound regardless of convergence.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    indptr, indices, data = M.to_csr(shift=1)
    v = np.ones(M.dim)
    w = np.empty(M.dim)
    converged = False
    it = 0
    while it < max_iter:
        _kernels.csr_matvec(indptr, indices, data, v, w)
        ratios = w / v
        if ratios.max() - ratios.min() <= tol:
            converged = True
            break
        # Clamp away underflow so the quotients stay finite.
        v = np.maximum(w / w.max(), 1e-300)
        it += 1

    # Exact Collatz-Wielandt endpoints at the final iterate.  Entries are
    # clamped to a tiny positive floor so the vector is strictly positive,
    # which is all the bound needs for a nonnegative matrix.
    vf = [Fraction(max(float(x), 1e-300)) for x in v]
    wf = list(vf)  # the +I part
    for (i, j), val in M.entries.items():
        wf[i] += val * vf[j]
    quots = [wf[i] / vf[i] for i in range(M.dim)]
    lower = min(quots) - 1
    upper = max(quots) - 1
    return {"lower": lower, "upper": upper, "iterations": it,
            "converged": converged}


def automata_bound(rule: WalkRule, k: int, tol: float = 1e-9,
                   sizes: str = "auto",
                   endpoint_osculation: str = "auto") -> dict:
    """Full pipeline; returns a report with the certified 5-decimal bound.

    The defaults ("auto") select the configuration that reproduces the
    reference tables shipped with the package: for SOW/ODW on the square
    lattice that is odd loop sizes with permissive endpoint osculation;
    everywhere else all sizes with the strict table.  Passing sizes="all"
    and endpoint_osculation="strict" explicitly gives the tightest bound
    this implementation can certify (on the square lattice it is slightly
    sharper than the reference values because even-size loops exist there
    too; all configurations yield mathematically valid upper bounds).
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    square_osc = rule.id in ("sow", "odw") and rule.lattice.name == "square"
    if sizes == "auto":
        sizes = "odd" if square_osc else "all"
    if endpoint_osculation == "auto":
        endpoint_osculation = "permissive" if square_osc else "strict"
    if sizes not in ("all", "odd"):
        raise ValueError(f"sizes must be all|odd|auto, got {sizes!r}")
    if endpoint_osculation not in ("strict", "permissive"):
        raise ValueError("endpoint_osculation must be strict|permissive|auto, "
                         f"got {endpoint_osculation!r}")
    permissive = endpoint_osculation == "permissive"
    loops_by_size = find_loops_upto(rule, k, sizes, permissive)
    basis = build_basis(loops_by_size, rule)
    M = build_matrix(basis, rule, loops_by_size)
    eig = certified_dominant_eigenvalue(M, tol=tol)
    bound = ceil5(eig["upper"])
    return {
        "rule": rule.id,
        "lattice": rule.lattice.name,
        "k": k,
        "dim": M.dim,
        "loops_per_size": {m: len(s) for m, s in loops_by_size.items()},
        "bracket": [float(eig["lower"]), float(eig["upper"])],
        "bound": str(bound),
        "converged": eig["converged"],
        "sizes": sizes,
        "endpoint_osculation": endpoint_osculation,
        "matrix": M,
    }
