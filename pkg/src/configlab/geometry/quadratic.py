"""Radon-Hurwitz numbers and nonsingular ensembles of quadratic forms."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..errors import InvalidArgument, MaxKExceeded, Unsupported
from ..rng import stream

SYMMETRY_TOL = 1e-12
NONSINGULAR_TOL = 1e-9


def _as_fraction(n) -> Fraction:
    if isinstance(n, float):
        if not np.isfinite(n):
            raise InvalidArgument(f"n must be finite, got {n}")
        n = Fraction(n).limit_denominator(2)
    return Fraction(n)


def radon_hurwitz(n) -> int:
    """rho(n) = 2**p + 8*q for n = (2l+1) * 2**(p + 4q); zero on half-integers."""
    frac = _as_fraction(n)
    if frac <= 0:
        raise InvalidArgument(f"Radon-Hurwitz number needs n > 0, got {n}")
    if (2 * frac).denominator != 1:
        raise InvalidArgument(f"n must be an integer or half-integer, got {n}")
    if frac.denominator == 2:
        return 0
    value = int(frac)
    m = (value & -value).bit_length() - 1  # exponent of 2 in n
    q, p = divmod(m, 4)
    return 2**p + 8 * q


def alp_max_k(d: int) -> int:
    """Largest k admitting a nonsingular k-ensemble of quadratic forms on R^d."""
    if d < 1:
        raise InvalidArgument(f"dimension must be >= 1, got {d}")
    return radon_hurwitz(Fraction(d, 2)) + 1


@dataclass(frozen=True)
class QuadraticEnsemble:
    d: int
    k: int
    matrices: np.ndarray = field(repr=False)  # shape (k, d, d)

    def __post_init__(self):
        mats = np.asarray(self.matrices, dtype=float)
        if mats.shape != (self.k, self.d, self.d):
            raise InvalidArgument(f"expected {self.k} matrices of shape {self.d}x{self.d}, got {mats.shape}")
        if np.max(np.abs(mats - mats.transpose(0, 2, 1)), initial=0.0) > SYMMETRY_TOL:
            raise InvalidArgument("ensemble matrices must be symmetric")
        if self.k > alp_max_k(self.d):
            raise MaxKExceeded(f"k={self.k} exceeds the Adams-Lax-Phillips bound {alp_max_k(self.d)} for d={self.d}")
        object.__setattr__(self, "matrices", mats)

    def __call__(self, z: np.ndarray) -> np.ndarray:
        """Evaluate (Q_1(z), ..., Q_k(z)) for z of shape (..., d)."""
        z = np.asarray(z, dtype=float)
        return np.einsum("...i,jik,...k->...j", z, self.matrices, z)

    def combination(self, c) -> np.ndarray:
        return np.tensordot(np.asarray(c, dtype=float), self.matrices, axes=1)


def _block_diag(blocks: list[np.ndarray]) -> np.ndarray:
    size = sum(b.shape[0] for b in blocks)
    out = np.zeros((size, size))
    at = 0
    for b in blocks:
        n = b.shape[0]
        out[at : at + n, at : at + n] = b
        at += n
    return out


# Quaternionic ensemble on R^4:
#   x1^2 + x2^2 - x3^2 - x4^2,  2(x1 x3 + x2 x4),  2(x1 x4 - x2 x3)
_QUAT4 = np.array(
    [
        np.diag([1.0, 1.0, -1.0, -1.0]),
        [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
        [[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]],
    ],
    dtype=float,
)


def build_quadratic_ensemble(d: int, k: int) -> QuadraticEnsemble:
    """A nonsingular k-ensemble on R^d.

    Constructions: k=1 (|x|^2) for every d; k=2 on even d (complex structure,
    ``x1^2 - x2^2, x1 x2`` when d=2); k=3 on d divisible by 4 (block sums of
    the quaternionic ensemble).  Other admissible (d, k) raise Unsupported.
    """
    if d < 1 or k < 1:
        raise InvalidArgument(f"need d >= 1 and k >= 1, got d={d}, k={k}")
    kmax = alp_max_k(d)
    if k > kmax:
        raise MaxKExceeded(f"no nonsingular {k}-ensemble exists on R^{d} (max {kmax})")
    if k == 1:
        mats = np.eye(d)[None]
    elif d == 2 and k == 2:
        mats = np.array([[[1.0, 0.0], [0.0, -1.0]], [[0.0, 0.5], [0.5, 0.0]]])
    elif k == 2 and d % 2 == 0:
        h = d // 2
        eye = np.eye(h)
        zero = np.zeros((h, h))
        a1 = np.block([[eye, zero], [zero, -eye]])
        a2 = np.block([[zero, eye], [eye, zero]])
        mats = np.stack([a1, a2])
    elif k == 3 and d % 4 == 0:
        mats = np.stack([_block_diag([_QUAT4[j]] * (d // 4)) for j in range(3)])
    else:
        raise Unsupported(f"no construction implemented for (d={d}, k={k})")
    return QuadraticEnsemble(d=d, k=k, matrices=mats)


@dataclass(frozen=True)
class NonsingularityResult:
    passed: bool
    min_abs_det: float
    argmin_c: tuple[float, ...]
    trials: int


def ensemble_nonsingularity_check(ens: QuadraticEnsemble, trials: int = 10_000, seed: int = 0) -> NonsingularityResult:
    """Sample c uniformly on the unit sphere of R^k and track min |det(sum c_j A_j)|."""
    if trials < 1:
        raise InvalidArgument("trials must be >= 1")
    rng = stream(seed, "ensemble-check")
    c = rng.standard_normal((trials, ens.k))
    c /= np.linalg.norm(c, axis=1, keepdims=True)
    # The coordinate axes are always probed: a degenerate single form is caught
    # even when random directions miss it.
    c = np.vstack([np.eye(ens.k), c])
    dets = np.abs(np.linalg.det(np.einsum("tj,jab->tab", c, ens.matrices)))
    i = int(np.argmin(dets))
    return NonsingularityResult(
        passed=bool(dets[i] > NONSINGULAR_TOL),
        min_abs_det=float(dets[i]),
        argmin_c=tuple(float(v) for v in c[i]),
        trials=trials,
    )
