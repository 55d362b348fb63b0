"""Exact rational linear algebra: elimination, affine solution sets, polytope vertices.

Everything here works on lists of :class:`fractions.Fraction` and is exact; no
floating point, no tolerances.  Matrices are small (desk scale), so plain
Gaussian elimination is the right tool.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import EnumerationLimit

ZERO = Fraction(0)
ONE = Fraction(1)


def rank(rows: list[list[Fraction]]) -> int:
    """Rank of a rational matrix (destructively computed on a copy)."""
    m = [list(r) for r in rows]
    return len(_echelon(m))


def _echelon(m: list[list[Fraction]]) -> list[int]:
    """Reduce ``m`` in place to row echelon form; return the pivot columns."""
    if not m:
        return []
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return pivots


def solve_affine(
    rows: list[list[Fraction]], rhs: list[Fraction]
) -> tuple[list[Fraction], list[list[Fraction]]] | None:
    """Solve ``A x = b`` exactly.

    Returns ``(particular, nullspace_basis)`` describing the full affine
    solution set, or ``None`` when the system is inconsistent.
    """
    if not rows:
        raise ValueError("empty system")
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = _echelon(aug)
    if n in pivots:  # pivot in the rhs column: 0 = nonzero
        return None
    pivot_of_col = {c: i for i, c in enumerate(pivots)}
    free_cols = [c for c in range(n) if c not in pivot_of_col]
    particular = [ZERO] * n
    for c, i in pivot_of_col.items():
        particular[c] = aug[i][n]
    basis = []
    for fc in free_cols:
        vec = [ZERO] * n
        vec[fc] = ONE
        for c, i in pivot_of_col.items():
            vec[c] = -aug[i][fc]
        basis.append(vec)
    return particular, basis


def solve_unique(
    rows: list[list[Fraction]], rhs: list[Fraction]
) -> list[Fraction] | None:
    """Solve ``A x = b`` when a unique solution is required; ``None`` otherwise."""
    sol = solve_affine(rows, rhs)
    if sol is None:
        return None
    particular, basis = sol
    if basis:
        return None
    return particular


def polytope_vertices(
    eq_rows: list[list[Fraction]],
    eq_rhs: list[Fraction],
    n: int,
    max_candidates: int = 2_000_000,
) -> list[tuple[Fraction, ...]]:
    """All vertices of ``{x in Q^n : A x = b, x >= 0}``, exactly.

    The affine solution set of the equalities is computed first; a vertex of
    the polytope then pins an additional ``dim`` coordinates to zero, where
    ``dim`` is the dimension of that solution set.  Every size-``dim`` zero
    pattern is tried; degenerate vertices are still found because some
    independent subset of their zero coordinates completes the equality rows
    to full rank.
    """
    sol = solve_affine(eq_rows, eq_rhs)
    if sol is None:
        return []
    particular, basis = sol
    dim = len(basis)
    if dim == 0:
        if all(x >= 0 for x in particular):
            return [tuple(particular)]
        return []

    from math import comb

    if comb(n, dim) > max_candidates:
        raise EnumerationLimit(
            f"vertex enumeration needs C({n},{dim}) = {comb(n, dim)} candidate "
            f"zero patterns (cap {max_candidates})"
        )

    vertices: list[tuple[Fraction, ...]] = []
    seen: set[tuple[Fraction, ...]] = set()
    for zero_set in combinations(range(n), dim):
        # Pinning x_i = 0 for i in zero_set means solving, in the free
        # coordinates t of x = particular + basis . t, the square system
        # particular[i] + sum_k basis[k][i] t_k = 0.
        rows = [[basis[k][i] for k in range(dim)] for i in zero_set]
        rhs = [-particular[i] for i in zero_set]
        t = solve_unique(rows, rhs)
        if t is None:
            continue
        point = [
            particular[i] + sum(basis[k][i] * t[k] for k in range(dim))
            for i in range(n)
        ]
        if any(x < 0 for x in point):
            continue
        tup = tuple(point)
        if tup not in seen:
            seen.add(tup)
            vertices.append(tup)
    return vertices
