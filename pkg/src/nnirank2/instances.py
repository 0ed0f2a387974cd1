"""Seeded generators for the three test-instance families.

* ``product``: A = B C with C columns drawn from a discrete Gaussian on
  the nonnegative quadrant and B rows drawn from the dual cone of the
  columns; A is nonnegative integer of rank 2 by construction.
* ``bt``: the deterministic 3 x 3 family with entries {t-1, t, t+1} whose
  nonnegative integer rank is 3 for every t >= 1.
* ``near_t``: 3 x 3 matrices with all entries near t, built by evaluating
  three sampled points of the cone spanned by (1,0) and (1,2) at the
  linear forms x, y and 2x - y.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .linalg import Vec2, as_int_matrix


@dataclass(frozen=True)
class GenSpec:
    kind: str  # "product" | "bt" | "near_t"
    rows: int = 3
    cols: int = 3
    sigma: float = 3.0
    t: int = 4
    seed: int = 0

    def validate(self) -> None:
        if self.kind not in ("product", "bt", "near_t"):
            raise ValueError(f"unknown instance kind {self.kind!r}")
        if self.kind == "product":
            if self.rows < 2 or self.cols < 2:
                raise ValueError("product instances need rows >= 2 and cols >= 2")
            if not self.sigma > 0:
                raise ValueError("sigma must be positive")
        if self.kind == "bt" and self.t < 1:
            raise ValueError("bt instances need t >= 1")
        if self.kind == "near_t" and self.t < 3:
            raise ValueError("near_t instances need t >= 3")


@functools.lru_cache(maxsize=None)
def _dgauss1_table(sigma: float, center: int):
    # support truncated at center +- 12 sigma; mass beyond is < exp(-72)
    radius = max(1, math.ceil(12 * sigma))
    ks = np.arange(center - radius, center + radius + 1)
    w = np.exp(-((ks - center) ** 2) / (2.0 * sigma * sigma))
    cdf = np.cumsum(w)
    cdf /= cdf[-1]
    return ks, cdf


def dgauss1(sigma: float, center: int, rng: np.random.Generator) -> int:
    """One sample of the discrete Gaussian on Z, weight exp(-(k-c)^2/2s^2)."""
    ks, cdf = _dgauss1_table(float(sigma), int(center))
    return int(ks[np.searchsorted(cdf, rng.random(), side="right")])


def dgauss2(sigma: float, center: Vec2, rng: np.random.Generator) -> Vec2:
    """One Z^2 sample with weight exp(-|x - center|^2 / (2 sigma^2)).

    The density is separable, so the two coordinates are independent 1-D
    discrete Gaussians.
    """
    return (dgauss1(sigma, center[0], rng), dgauss1(sigma, center[1], rng))


def _rank2_pairs(vecs: list[Vec2]) -> bool:
    p0 = next((p for p in vecs if p != (0, 0)), None)
    if p0 is None:
        return False
    return any(p0[0] * q[1] - p0[1] * q[0] != 0 for q in vecs)


def gen_product(
    rows: int,
    cols: int,
    sigma: float,
    seed: int | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Random product instance (B, C, A) with A = B @ C of rank 2.

    Columns of C are nonzero quadrant samples; rows of B are nonzero
    samples lying in the dual cone of the columns (boundary allowed).  The
    whole instance is resampled until both factors have rank 2.
    """
    if rows < 2 or cols < 2:
        raise ValueError("product instances need rows >= 2 and cols >= 2")
    if rng is None:
        rng = np.random.default_rng(seed)
    while True:
        ccols: list[Vec2] = []
        while len(ccols) < cols:
            p = dgauss2(sigma, (0, 0), rng)
            if p != (0, 0) and p[0] >= 0 and p[1] >= 0:
                ccols.append(p)
        brows: list[Vec2] = []
        while len(brows) < rows:
            q = dgauss2(sigma, (0, 0), rng)
            if q != (0, 0) and all(q[0] * c[0] + q[1] * c[1] >= 0 for c in ccols):
                brows.append(q)
        if _rank2_pairs(ccols) and _rank2_pairs(brows):
            break
    B = as_int_matrix([[q[0], q[1]] for q in brows])
    C = as_int_matrix([[c[0] for c in ccols], [c[1] for c in ccols]])
    return B, C, B @ C


def gen_bt(t: int) -> np.ndarray:
    """The 3 x 3 matrix with rows (t+1, t, t-1), (t, t, t), (t-1, t, t+1)."""
    if t < 1:
        raise ValueError("bt instances need t >= 1")
    return as_int_matrix([[t + 1, t, t - 1], [t, t, t], [t - 1, t, t + 1]])


def gen_near_t(
    t: int,
    seed: int | None = None,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """3 x 3 instance with entries concentrated near t.

    Three points are sampled with sigma = 2 around (t, t), rejected unless
    they lie in the cone 0 <= y <= 2x, and evaluated at the forms x, y and
    2x - y; the rows therefore satisfy row3 = 2*row1 - row2 exactly and all
    entries are nonnegative.  Resamples until the matrix has rank 2.
    """
    if t < 3:
        raise ValueError("near_t instances need t >= 3")
    if rng is None:
        rng = np.random.default_rng(seed)
    while True:
        pts: list[Vec2] = []
        while len(pts) < 3:
            x, y = dgauss2(2.0, (t, t), rng)
            if 0 <= y <= 2 * x:
                pts.append((x, y))
        if _rank2_pairs(pts):
            break
    return as_int_matrix(
        [
            [p[0] for p in pts],
            [p[1] for p in pts],
            [2 * p[0] - p[1] for p in pts],
        ]
    )


def generate(spec: GenSpec) -> np.ndarray:
    """Materialize the matrix described by a GenSpec."""
    spec.validate()
    if spec.kind == "product":
        _, _, A = gen_product(spec.rows, spec.cols, spec.sigma, seed=spec.seed)
        return A
    if spec.kind == "bt":
        return gen_bt(spec.t)
    return gen_near_t(spec.t, seed=spec.seed)
