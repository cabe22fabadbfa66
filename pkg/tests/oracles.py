"""Independent reference computations and frozen analytic values for the tests.

Nothing here calls the closed-form code under test.
"""

import math

import numpy as np
from scipy import integrate, special

# frozen analytic values
CANTOR_DIM = math.log(2) / math.log(3)  # 0.6309297535714574
UNIFORM_HALF_ENERGY = 8.0 / 3.0  # int_0^1 int_0^1 |x - y|^(-1/2) dx dy
TENT_BALL_0_01 = 2 * 0.1 * (1 - 0.05)  # int_{-0.1}^{0.1} (1 - |t|) dt = 0.19
CIRCLE_DECAY = 0.5  # |J_0(r)| ~ r^(-1/2)
INTERVAL_DECAY = 1.0  # |sinc| ~ r^(-1)
RADON_HURWITZ_1_16 = [1, 2, 1, 4, 1, 2, 1, 8, 1, 2, 1, 4, 1, 2, 1, 9]

GOLDEN = (math.sqrt(5) - 1) / 2


def tent(t):
    return np.maximum(0.0, 1.0 - np.abs(t))


def golden_min(f, lo, hi, tol=1e-10):
    """Vectorised golden-section minimisation of convex f, one row per problem.

    Returns f at the final bracket midpoint.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    iters = int(math.ceil(math.log(max(np.max(hi - lo), tol) / tol) / -math.log(GOLDEN)))
    a = hi - GOLDEN * (hi - lo)
    b = lo + GOLDEN * (hi - lo)
    fa, fb = f(a), f(b)
    for _ in range(iters):
        left = fa < fb
        # keep [lo, b] when f(a) < f(b), else [a, hi]; one fresh evaluation per step
        lo, hi = np.where(left, lo, a), np.where(left, b, hi)
        fresh = np.where(left, hi - GOLDEN * (hi - lo), lo + GOLDEN * (hi - lo))
        f_fresh = f(fresh)
        a, b, fa, fb = (
            np.where(left, fresh, b),
            np.where(left, a, fresh),
            np.where(left, f_fresh, fb),
            np.where(left, fa, f_fresh),
        )
    return f((lo + hi) / 2)


def grid_then_golden(f, radius, n, grid=41, tol=1e-10):
    """Minimise f(s) over |s| <= radius: coarse grid, then golden section around the best node."""
    s = np.linspace(-radius, radius, grid)
    vals = np.stack([f(np.full(n, v)) for v in s])
    best = s[np.argmin(vals, axis=0)]
    cell = s[1] - s[0]
    return golden_min(f, best - cell, best + cell, tol)


def brute_line_point(omega, v, y, radius=1e6):
    """min_s |v + s*omega - y| for rows of (omega, v, y)."""
    n = omega.shape[0]
    return grid_then_golden(lambda s: np.linalg.norm(v + s[:, None] * omega - y, axis=1), radius, n)


def brute_line_line(omega, v, omega2, v2, radius=1e8):
    """min_{s, s'} |v + s*omega - v2 - s'*omega2|, by nested one-dimensional minimisation."""
    n = omega.shape[0]

    def outer(s):
        p = v + s[:, None] * omega
        return brute_line_point(omega2, v2, p, radius)

    return grid_then_golden(outer, radius, n, tol=1e-6)


def mollifier_mass(profile, k):
    """Integral over R^k of a radial profile chi(|u|) supported in the unit ball."""
    sphere = 2 * math.pi ** (k / 2) / special.gamma(k / 2)
    value, _ = integrate.quad(lambda r: profile(r) * r ** (k - 1), 0.0, 1.0, epsabs=1e-13, epsrel=1e-13)
    return sphere * value


def random_lines(rng, n, d):
    omega = rng.standard_normal((n, d))
    omega /= np.linalg.norm(omega, axis=1, keepdims=True)
    v = rng.standard_normal((n, d))
    v -= np.sum(v * omega, axis=1, keepdims=True) * omega
    return omega, v


def near_parallel(rng, omega, low=1e-3, high=4e-2):
    """Unit directions within a small random angle of omega, so |omega . omega'| > 0.999."""
    g = rng.standard_normal(omega.shape)
    g -= np.sum(g * omega, axis=1, keepdims=True) * omega
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    angle = rng.uniform(low, high, omega.shape[0])[:, None]
    sign = rng.choice([-1.0, 1.0], size=(omega.shape[0], 1))
    return sign * (np.cos(angle) * omega + np.sin(angle) * g)
