"""One-dimensional search and root-finding helpers shared by the numerical modules."""

import math
from collections.abc import Callable

import numpy as np
from scipy import optimize

INV_PHI = (math.sqrt(5) - 1) / 2  # 1/phi
INV_PHI_SQ = (3 - math.sqrt(5)) / 2  # 1/phi^2


def golden_section_minimize(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float,
) -> tuple[float, float, int]:
    """
    Derivative-free minimization of f on [a, b] by golden-section search.

    The iteration count is fixed up front from the bracket and tolerance, so the
    search is deterministic and the final bracket is narrower than ``tol``.

    Args:
        f: Objective
        a: Lower end of the bracket
        b: Upper end of the bracket
        tol: Final bracket width

    Returns:
        Tuple of (x at the bracket midpoint, f(x), evaluations)
    """
    dist = b - a
    if dist <= tol:
        x = (a + b) / 2
        return x, f(x), 1

    n = max(1, int(math.ceil(math.log(tol / dist) / math.log(INV_PHI))))

    c = a + INV_PHI_SQ * dist
    d = a + INV_PHI * dist
    yc = f(c)
    yd = f(d)
    evaluations = 2

    for _ in range(n - 1):
        if yc <= yd:
            b = d
            d = c
            yd = yc
            dist = INV_PHI * dist
            c = a + INV_PHI_SQ * dist
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            dist = INV_PHI * dist
            d = a + INV_PHI * dist
            yd = f(d)
        evaluations += 1

    if yc <= yd:
        lo, hi = a, d
    else:
        lo, hi = c, b
    x = (lo + hi) / 2
    return x, f(x), evaluations + 1


def scan_extremum(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    points: int,
    tol: float,
    maximize: bool = False,
) -> tuple[float, float]:
    """
    Global extremum of a vectorized function on [a, b].

    A dense scan finds the best node; golden-section search refines on the
    bracket formed by its neighbours.

    Args:
        f: Vectorized function
        a: Interval start
        b: Interval end
        points: Scan points
        tol: Bracket width for the refinement
        maximize: Search for the maximum instead of the minimum

    Returns:
        Tuple of (location, value)
    """
    sign = -1.0 if maximize else 1.0
    xs = np.linspace(a, b, points)
    ys = sign * np.asarray(f(xs), dtype=float)
    k = int(np.argmin(ys))
    lo = xs[max(k - 1, 0)]
    hi = xs[min(k + 1, points - 1)]

    def scalar(x: float) -> float:
        return float(sign * f(np.array([x]))[0])

    x, y, _ = golden_section_minimize(scalar, float(lo), float(hi), tol)
    if ys[k] < y:
        x, y = float(xs[k]), float(ys[k])
    return x, sign * y


def first_crossing(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    points: int,
    xtol: float,
) -> float | None:
    """
    First point in [a, b] where f changes sign, moving from a towards b.

    Args:
        f: Vectorized function, nonzero at a
        a: Start of the search
        b: End of the search
        points: Scan points used to bracket the crossing
        xtol: Absolute bisection tolerance

    Returns:
        Crossing location, or None if f keeps its sign on [a, b]
    """
    xs = np.linspace(a, b, points)
    ys = np.asarray(f(xs), dtype=float)
    start = np.sign(ys[0])
    flipped = np.nonzero(np.sign(ys) != start)[0]
    if flipped.size == 0:
        return None
    k = int(flipped[0])
    if ys[k] == 0.0:
        return float(xs[k])

    def scalar(x: float) -> float:
        return float(f(np.array([x]))[0])

    return float(optimize.bisect(scalar, xs[k - 1], xs[k], xtol=xtol, maxiter=200))
