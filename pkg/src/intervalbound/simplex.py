"""Dense revised simplex for small standard-form linear programs.

Solves   max  c.x   subject to   A x = b,  x >= 0
starting from a caller-supplied feasible basis.  Intended for problems with
a handful of rows and many columns (here: 3 moment rows, one column per
grid point), where each pricing pass is a single dense mat-vec.  Dantzig
pricing with a Bland fallback after a stretch of degenerate pivots, so the
method terminates even on degenerate vertices.
"""
from __future__ import annotations

import numpy as np

__all__ = ["SimplexError", "solve_standard_max"]

REDUCED_COST_TOL = 1e-9
PIVOT_TOL = 1e-11


class SimplexError(RuntimeError):
    """Internal solver failure: singular basis, unbounded ray, or stall."""


def solve_standard_max(A, b, c, basis, max_iter=10000):
    """Maximize c.x over {A x = b, x >= 0} from the given feasible basis.

    Args:
      A: (m, n) constraint matrix.
      b: (m,) right-hand side.
      c: (n,) objective coefficients.
      basis: m column indices whose submatrix is nonsingular and whose basic
        solution is nonnegative.

    Returns:
      (x, value, basis, multipliers) where x is the optimal point, value the
      optimal objective, and multipliers the simplex multipliers pi solving
      B^T pi = c_B (the dual solution: pi.A_j >= c_j for every column j).
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    m, n = A.shape
    basis = list(basis)
    if len(basis) != m:
        raise SimplexError(f"basis must have {m} indices, got {len(basis)}")

    best_seen = -np.inf
    degenerate_run = 0
    for _ in range(max_iter):
        B = A[:, basis]
        try:
            x_basic = np.linalg.solve(B, b)
            pi = np.linalg.solve(B.T, c[basis])
        except np.linalg.LinAlgError as exc:
            raise SimplexError("singular basis") from exc

        value = float(c[basis] @ x_basic)
        if value > best_seen + 1e-15 * (1.0 + abs(best_seen)):
            best_seen = value
            degenerate_run = 0
        else:
            degenerate_run += 1

        reduced = c - pi @ A
        reduced[basis] = 0.0
        if degenerate_run > 50:
            # Bland: smallest improving index, guarantees no cycling.
            improving = np.flatnonzero(reduced > REDUCED_COST_TOL)
            if improving.size == 0:
                break
            entering = int(improving[0])
        else:
            entering = int(np.argmax(reduced))
            if reduced[entering] <= REDUCED_COST_TOL:
                break

        direction = np.linalg.solve(B, A[:, entering])
        positive = direction > PIVOT_TOL
        if not positive.any():
            raise SimplexError("unbounded linear program")
        ratios = np.full(m, np.inf)
        ratios[positive] = x_basic[positive] / direction[positive]
        best_ratio = ratios.min()
        # Among (near-)tied rows leave the smallest basis index; with the
        # Bland entering rule this is the classic anti-cycling pair.
        tied = np.flatnonzero(ratios <= best_ratio + 1e-12 * (1.0 + abs(best_ratio)))
        leaving = int(min(tied, key=lambda i: basis[i]))
        basis[leaving] = entering
    else:
        raise SimplexError("iteration limit exceeded")

    x = np.zeros(n)
    x[basis] = np.maximum(x_basic, 0.0)
    return x, float(c[basis] @ x_basic), basis, pi
