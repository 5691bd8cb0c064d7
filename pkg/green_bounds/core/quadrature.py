"""Adaptive Simpson quadrature."""

from typing import Callable, Tuple

MAX_DEPTH = 40


def integrate_adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_depth: int = MAX_DEPTH,
) -> Tuple[float, float]:
    """Adaptive Simpson's rule with Richardson correction.

    Args:
        f: Function to integrate.
        a: Lower bound.
        b: Upper bound.
        tol: Absolute error target.
        max_depth: Recursion depth cap.

    Returns:
        Tuple of (integral_value, error_estimate).
    """
    if a == b:
        return 0.0, 0.0
    if a > b:
        value, error = integrate_adaptive_simpson(f, b, a, tol, max_depth)
        return -value, error

    def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
        return h / 3.0 * (fa + 4.0 * fm + fb)

    def _adaptive(lo, hi, flo, fmid, fhi, whole, depth, tol):
        mid = (lo + hi) / 2.0
        h = (hi - lo) / 4.0
        fl = f((lo + mid) / 2.0)
        fr = f((mid + hi) / 2.0)
        left = _simpson(flo, fl, fmid, h)
        right = _simpson(fmid, fr, fhi, h)
        error_estimate = (left + right - whole) / 15.0
        if depth >= max_depth or abs(error_estimate) < tol:
            return left + right + error_estimate, abs(error_estimate)
        left_value, left_error = _adaptive(lo, mid, flo, fl, fmid, left, depth + 1, tol / 2.0)
        right_value, right_error = _adaptive(mid, hi, fmid, fr, fhi, right, depth + 1, tol / 2.0)
        return left_value + right_value, left_error + right_error

    fa, fb = f(a), f(b)
    fm = f((a + b) / 2.0)
    return _adaptive(a, b, fa, fm, fb, _simpson(fa, fm, fb, (b - a) / 2.0), 0, tol)
