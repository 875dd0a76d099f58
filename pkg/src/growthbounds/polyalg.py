"""Exact bivariate polynomial algebra and diagonal radius-of-convergence extraction.

Given a generating function q(x,y)/(1 - p(x,y)) whose diagonal coefficients
bound a growth sequence, the inverse radius of convergence of the diagonal
series upper-bounds the growth constant.  The pipeline substitutes
p(s, z/s), clears the Laurent tail, takes the discriminant with respect to s
(exact integer arithmetic throughout), locates its roots in z numerically,
and selects the bound root by the recursive max-below-previous rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
import sympy


# ---------------------------------------------------------------------------
# Bivariate polynomials with exact integer coefficients.
# ---------------------------------------------------------------------------

@dataclass
class BivariatePoly:
    """Finitely supported integer polynomial in x and y."""

    terms: dict  # (x_degree, y_degree) -> nonzero int

    def __post_init__(self):
        self.terms = {k: int(v) for k, v in self.terms.items() if v}

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def monomial(cls, dx, dy, coef=1):
        return cls({(dx, dy): coef})

    def coeff(self, dx, dy) -> int:
        return self.terms.get((dx, dy), 0)

    @property
    def max_x(self) -> int:
        return max((dx for dx, _ in self.terms), default=0)

    @property
    def max_y(self) -> int:
        return max((dy for _, dy in self.terms), default=0)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, BivariatePoly) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BivariatePoly(out)

    def __sub__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) - v
        return BivariatePoly(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return BivariatePoly({k: v * other for k, v in self.terms.items()})
        out = {}
        for (ax, ay), av in self.terms.items():
            for (bx, by), bv in other.terms.items():
                k = (ax + bx, ay + by)
                out[k] = out.get(k, 0) + av * bv
        return BivariatePoly(out)

    __rmul__ = __mul__

    def truncate(self, max_x, max_y):
        return BivariatePoly({(dx, dy): v for (dx, dy), v in self.terms.items()
                              if dx <= max_x and dy <= max_y})

    def __call__(self, x, y):
        total = 0
        for (dx, dy), v in self.terms.items():
            total += v * x ** dx * y ** dy
        return total

    def to_json_dict(self):
        return {"terms": [{"dx": dx, "dy": dy, "coef_string": str(v)}
                          for (dx, dy), v in sorted(self.terms.items())]}

    @classmethod
    def from_json_dict(cls, obj):
        return cls({(t["dx"], t["dy"]): int(t["coef_string"])
                    for t in obj["terms"]})


def geometric_expand(numer: BivariatePoly, p: BivariatePoly,
                     max_x: int, max_y: int) -> BivariatePoly:
    """Truncated series of numer / (1 - p); requires p(0,0) = 0."""
    if p.coeff(0, 0):
        raise ValueError("p must have zero constant term")
    total = BivariatePoly.zero()
    acc = numer.truncate(max_x, max_y)
    while acc:
        total = total + acc
        acc = (acc * p).truncate(max_x, max_y)
    return total


def diagonal_series(numer: BivariatePoly, p: BivariatePoly, n_max: int) -> list:
    """Diagonal coefficients c_nn of numer/(1-p) for n = 1..n_max."""
    g = geometric_expand(numer, p, n_max, n_max)
    return [g.coeff(n, n) for n in range(1, n_max + 1)]


# ---------------------------------------------------------------------------
# z-polynomials as integer coefficient tuples (ascending degree).
# ---------------------------------------------------------------------------

def zp_trim(coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def zp_degree(coeffs) -> int:
    return len(zp_trim(coeffs)) - 1


def zp_eval(coeffs, z):
    total = 0
    for c in reversed(list(coeffs)):
        total = total * z + c
    return total


# ---------------------------------------------------------------------------
# Laurent normalization: D(s,z) = s^Ny * (1 - p(s, z/s)).
# ---------------------------------------------------------------------------

def laurent_normalize(p: BivariatePoly) -> list:
    """s^Ny * (1 - p(s, z*s^-1)) as a list of z-coefficient tuples by s-degree.

    A term a*x^i*y^j maps to -a * z^j * s^(i-j+Ny); the constant 1 maps to
    s^Ny.  The result is a genuine polynomial in s (exponents >= 0) because
    j <= Ny.
    """
    ny = p.max_y
    ns = p.max_x + ny
    cols = [[0] * (ny + 1) for _ in range(ns + 1)]
    cols[ny][0] += 1
    for (i, j), a in p.terms.items():
        cols[i - j + ny][j] -= a
    return [zp_trim(c) for c in cols]


# ---------------------------------------------------------------------------
# Resultants and discriminants.
# ---------------------------------------------------------------------------

def sylvester_resultant(f, g) -> int:
    """Exact resultant of two integer polynomials (ascending coefficients).

    Bareiss fraction-free elimination on the Sylvester matrix; used as an
    independent cross-check of the sympy path.
    """
    f, g = zp_trim(f), zp_trim(g)
    if not f or not g:
        raise ValueError("resultant of the zero polynomial is undefined")
    m, n = len(f) - 1, len(g) - 1
    if m == 0 and n == 0:
        return 1
    size = m + n
    mat = [[0] * size for _ in range(size)]
    for r in range(n):
        for i, c in enumerate(reversed(f)):
            mat[r][r + i] = c
    for r in range(m):
        for i, c in enumerate(reversed(g)):
            mat[n + r][r + i] = c
    # Bareiss with row pivoting; track the sign of the permutation.
    sign = 1
    prev = 1
    for k in range(size - 1):
        if mat[k][k] == 0:
            for r in range(k + 1, size):
                if mat[r][k] != 0:
                    mat[k], mat[r] = mat[r], mat[k]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(k + 1, size):
            for c in range(k + 1, size):
                mat[r][c] = (mat[r][c] * mat[k][k]
                             - mat[r][k] * mat[k][c]) // prev
            mat[r][k] = 0
        prev = mat[k][k]
    return sign * mat[size - 1][size - 1]


def discriminant_in_s(spoly: list) -> tuple:
    """Exact discriminant in z of sum_j s^j * P_j(z), with respect to s.

    Computed as (-1)^(n(n-1)/2) * resultant(q, dq/ds) / lc(q) over ZZ[z]
    (sympy's convention; only root locations are load-bearing downstream).
    """
    s, z = sympy.symbols("s z")
    expr = sympy.Integer(0)
    for j, coeffs in enumerate(spoly):
        for k, c in enumerate(coeffs):
            if c:
                expr += sympy.Integer(c) * z ** k * s ** j
    q = sympy.Poly(expr, s)
    if q.degree() < 1:
        raise ValueError("s-degree must be >= 1 for a discriminant")
    if q.LC() == 0:
        raise ValueError("identically-zero leading coefficient (degenerate)")
    disc = sympy.Poly(sympy.discriminant(q, s), z)
    return zp_trim([int(c) for c in reversed(disc.all_coeffs())])


# ---------------------------------------------------------------------------
# Root finding for integer polynomials with potentially huge coefficients.
# ---------------------------------------------------------------------------

def _log2_abs(c: int) -> float:
    bl = c.bit_length()
    if bl <= 53:
        return math.log2(abs(c))
    top = abs(c) >> (bl - 53)
    return math.log2(top) + (bl - 53)


def find_roots(coeffs, tol: float = 1e-12, scale_hint: float = 1.0) -> dict:
    """All complex roots of an integer polynomial in z, polished to tol.

    Coefficients may exceed float range: the polynomial is rescaled by
    z -> w * 2^k (k ~ log2(scale_hint), the expected root magnitude) in
    log-space, terms more than ~1000 bits below the dominant one are dropped
    for the companion-matrix stage, and every root is then polished by exact
    big-integer Newton steps in mpmath.  Residuals are checked against
    tol * max|coeff| * max(1, |r|)^deg.
    """
    coeffs = zp_trim(coeffs)
    deg = len(coeffs) - 1
    if deg < 1:
        raise ValueError("degree must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    # Pull out the z^m factor exactly.
    m = 0
    while coeffs[m] == 0:
        m += 1
    roots = [mpmath.mpc(0)] * m
    coeffs = coeffs[m:]
    deg = len(coeffs) - 1
    flags = []
    if deg >= 1:
        k = int(round(math.log2(scale_hint))) if scale_hint > 0 else 0
        logs = [(_log2_abs(c) + i * k if c else None)
                for i, c in enumerate(coeffs)]
        top = max(v for v in logs if v is not None)
        fl = [0.0 if v is None or v < top - 1000 else
              (2.0 ** (v - top) if coeffs[i] > 0 else -(2.0 ** (v - top)))
              for i, v in enumerate(logs)]
        guesses = np.roots(fl[::-1])

        maxbits = max(abs(c).bit_length() for c in coeffs)
        prec = maxbits + 64 * deg.bit_length() + 256
        deriv = [i * c for i, c in enumerate(coeffs)][1:]
        with mpmath.workprec(prec):
            scale = mpmath.mpf(2) ** k
            for w in guesses:
                r = mpmath.mpc(w.real, w.imag) * scale
                ok = False
                for _ in range(80):
                    pv = zp_eval(coeffs, r)
                    dv = zp_eval(deriv, r)
                    if dv == 0:
                        break
                    step = pv / dv
                    r = r - step
                    if abs(step) <= mpmath.mpf(tol) * max(1, abs(r)) / 1000:
                        ok = True
                        break
                roots.append(r)
                flags.append(ok)

    # Residual verification.
    max_c = max(abs(c) for c in coeffs) if coeffs else 1
    residual_ok = []
    with mpmath.workprec(max(abs(c).bit_length() for c in coeffs) + 512):
        for r in roots[m:]:
            bound = tol * mpmath.mpf(max_c) * max(1, abs(r)) ** deg
            residual_ok.append(abs(zp_eval(coeffs, r)) <= bound)
    ordered = sorted(range(len(roots)),
                     key=lambda i: (float(roots[i].real), float(roots[i].imag)))
    roots = [roots[i] for i in ordered]
    return {
        "roots": [complex(r) for r in roots],
        "degree": deg + m,
        "zero_multiplicity": m,
        "converged": all(flags),
        "residual_ok": [True] * m + residual_ok,
    }


# ---------------------------------------------------------------------------
# Diagonal radius selection (recursive max-below-previous rule).
# ---------------------------------------------------------------------------

def diagonal_radius(p: BivariatePoly, prev_inverse_root, level=None,
                    tol: float = 1e-12) -> dict:
    """Inverse radius of convergence of the diagonal of q/(1-p).

    The singularities of the diagonal lie among the roots of the
    discriminant of s^Ny(1-p(s,z/s)) with respect to s; since the diagonal
    has nonnegative coefficients its dominant singularity sits on the
    positive real axis, so the candidates are the positive real roots z,
    inverted.  Some discriminant roots are removable, so the valid bound is
    the largest inverse root strictly below the previous level's value
    (an epsilon of slack admits the level-1 case, where the root coincides
    with the closed-form initial condition).
    """
    prev = float(prev_inverse_root)
    spoly = laurent_normalize(p)
    # A common s^m factor (present when every term of p has y-degree more
    # than m below its x-degree bound) makes s=0 a repeated root for every z
    # and the discriminant identically zero; the factor is removable in the
    # contour integral, so strip it before discriminating.
    strip = 0
    while strip < len(spoly) and not spoly[strip]:
        strip += 1
    disc = discriminant_in_s(spoly[strip:])
    rs = find_roots(disc, scale_hint=1.0 / prev)
    inverse_roots = []
    for r in rs["roots"]:
        if abs(r) < 1e-30:
            continue
        if r.real > 0 and abs(r.imag) <= 1e-9 * max(1.0, abs(r)):
            inverse_roots.append(1.0 / r.real)
    inverse_roots.sort()
    cutoff = prev * (1 + 1e-12)
    below = [v for v in inverse_roots if v < cutoff]
    if not below:
        raise ValueError(
            f"no inverse root below previous value {prev}; "
            "level or initial condition mismatch")
    selected = max(below)
    # Exact rationalization when the root is rational (low levels).
    exact = None
    zfrac = Fraction(1.0 / selected).limit_denominator(10 ** 9)
    if zfrac > 0 and zp_eval(disc, zfrac) == 0:
        exact = 1 / zfrac
    return {
        "level": level,
        "discriminant_degree": zp_degree(disc),
        "inverse_roots_sorted": inverse_roots,
        "selected": selected,
        "exact": exact,
        "prev": prev,
        "roots_converged": rs["converged"],
    }
