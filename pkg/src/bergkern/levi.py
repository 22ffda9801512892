"""Finite-difference Levi forms and sampled plurisubharmonicity scans."""
from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

from .errors import BergkernError, StencilOutOfDomain

DEFAULT_H = 1e-4
DEFAULT_TOL = 1e-6


@dataclass(frozen=True)
class HermitianForm:
    entries: np.ndarray

    @property
    def d(self) -> int:
        return self.entries.shape[0]

    @property
    def hermitian_residual(self) -> float:
        H = self.entries
        return float(np.max(np.abs(H - H.conj().T)))

    def __call__(self, xi) -> float:
        """Levi form ``sum_ab H_ab xi_a conj(xi_b)``."""
        xi = np.asarray(xi, dtype=complex)
        return float(np.real(xi @ self.entries @ xi.conj()))


def complex_hessian_fd(f: Callable[[np.ndarray], float], w, h: float = DEFAULT_H) -> HermitianForm:
    """Matrix of d^2 f / dw_a dw-bar_b from central differences in the real coordinates.

    With ``w_a = x_a + i y_a``::

        d^2 f / dw_a dw-bar_b = 1/4 [(f_{x_a x_b} + f_{y_a y_b}) + i (f_{x_a y_b} - f_{y_a x_b})]

    Any exception raised by ``f`` on a stencil point is re-raised as
    :class:`StencilOutOfDomain`.
    """
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    d = w.size
    dim = 2 * d
    base = np.concatenate([w.real, w.imag])

    def F(x):
        try:
            return float(f(x[:d] + 1j * x[d:]))
        except (BergkernError, ValueError, ArithmeticError) as exc:
            raise StencilOutOfDomain(f"field not evaluable near {w} with h={h}: {exc}") from exc

    E = np.eye(dim) * h
    f0 = F(base)
    fp = [F(base + E[i]) for i in range(dim)]
    fm = [F(base - E[i]) for i in range(dim)]
    R = np.empty((dim, dim))
    for i in range(dim):
        R[i, i] = (fp[i] - 2 * f0 + fm[i]) / (h * h)
        for j in range(i + 1, dim):
            R[i, j] = R[j, i] = (
                F(base + E[i] + E[j]) - F(base + E[i] - E[j])
                - F(base - E[i] + E[j]) + F(base - E[i] - E[j])
            ) / (4 * h * h)
    xx, yy = R[:d, :d], R[d:, d:]
    xy = R[:d, d:]  # xy[a, b] = f_{x_a y_b}
    H = 0.25 * ((xx + yy) + 1j * (xy - xy.T))
    return HermitianForm(0.5 * (H + H.conj().T))


def min_eigenvalue(H: HermitianForm) -> float:
    return float(np.linalg.eigvalsh(H.entries)[0])


# -- sampling ---------------------------------------------------------------------

@dataclass(frozen=True)
class Shell:
    """Points of C^dim with gauge in ``[r_min, r_max]``; gauge is the Euclidean or max norm."""

    dim: int
    r_min: float
    r_max: float
    kind: str = "ball"

    @property
    def qmc_dims(self) -> int:
        return 2 * self.dim + 1 if self.kind == "ball" else 2 * self.dim

    def map(self, u: np.ndarray) -> np.ndarray:
        """Send points of the unit cube (rows of ``u``) to the shell, uniformly in volume."""
        k = self.dim
        if self.kind == "ball":
            g = ndtri(np.clip(u[:, : 2 * k], 1e-12, 1 - 1e-12))
            g /= np.linalg.norm(g, axis=1, keepdims=True)
            lo, hi = self.r_min ** (2 * k), self.r_max ** (2 * k)
            rad = (lo + u[:, 2 * k] * (hi - lo)) ** (1 / (2 * k))
            g *= rad[:, None]
            return g[:, :k] + 1j * g[:, k:]
        if self.kind == "polydisc":
            # each coordinate uniform in its disc of radius r_max; r_min is
            # enforced on the gauge by ProductSampler
            rad = self.r_max * np.sqrt(u[:, :k])
            ang = 2 * np.pi * u[:, k:]
            return rad * np.exp(1j * ang)
        raise ValueError(f"unknown shell kind {self.kind!r}")

    def gauge(self, pts: np.ndarray) -> np.ndarray:
        if self.kind == "ball":
            return np.linalg.norm(pts, axis=1)
        return np.max(np.abs(pts), axis=1)


@dataclass(frozen=True)
class ProductSampler:
    """Scrambled Halton points on a product of shells, concatenated into C^d."""

    blocks: tuple

    def sample(self, count: int, seed: int) -> np.ndarray:
        dims = sum(b.qmc_dims for b in self.blocks)
        engine = qmc.Halton(d=dims, scramble=True, seed=seed)
        out = []
        have = 0
        while have < count:
            u = engine.random(max(2 * (count - have), 16))
            parts, keep, col = [], np.ones(len(u), bool), 0
            for b in self.blocks:
                pts = b.map(u[:, col: col + b.qmc_dims])
                g = b.gauge(pts)
                keep &= (g >= b.r_min) & (g <= b.r_max)
                parts.append(pts)
                col += b.qmc_dims
            batch = np.concatenate(parts, axis=1)[keep]
            out.append(batch)
            have += len(batch)
        return np.concatenate(out)[:count]


# -- scans ------------------------------------------------------------------------

@dataclass
class ScanReport:
    points: np.ndarray
    min_eigs: np.ndarray  # nan where the stencil failed
    flagged: list
    errors: list
    config: dict = field(default_factory=dict)

    @property
    def sample_count(self) -> int:
        return len(self.points)

    @property
    def global_min(self) -> float:
        ok = self.min_eigs[~np.isnan(self.min_eigs)]
        return float(ok.min()) if ok.size else math.nan

    @property
    def violating_points(self) -> np.ndarray:
        return self.points[self.flagged]

    def to_csv(self) -> str:
        d = self.points.shape[1]
        head = ["index"] + [f"{p}{i}" for i in range(d) for p in ("re", "im")] + ["min_eig", "flagged"]
        lines = [",".join(head)]
        flagged = set(self.flagged)
        for i, (w, e) in enumerate(zip(self.points, self.min_eigs)):
            cells = [str(i)]
            for c in w:
                cells += [_fmt(c.real), _fmt(c.imag)]
            cells += [_fmt(e), "1" if i in flagged else "0"]
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({
            "config": self.config,
            "sample_count": self.sample_count,
            "global_min": _num(self.global_min),
            "flagged": list(map(int, self.flagged)),
            "errors": self.errors,
        }, indent=2)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _num(x):
    return None if math.isnan(x) else float(x)


def _scan(f, sampler, h, tol, seed, count, mode, workers):
    points = sampler.sample(count, seed) if hasattr(sampler, "sample") else np.asarray(sampler, complex)

    def one(w):
        try:
            return min_eigenvalue(complex_hessian_fd(f, w, h)), None
        except StencilOutOfDomain as exc:
            return math.nan, str(exc)

    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            results = list(ex.map(one, points))
    else:
        results = [one(w) for w in points]
    eigs = np.array([r[0] for r in results])
    errors = [{"index": i, "error": r[1]} for i, r in enumerate(results) if r[1]]
    if mode == "psh":
        flagged = [i for i, e in enumerate(eigs) if e < -tol]
    else:
        flagged = [i for i, e in enumerate(eigs) if not e > tol]
    config = {"mode": mode, "h": h, "tol": tol, "seed": seed, "count": len(points)}
    return ScanReport(points, eigs, flagged, errors, config)


def psh_scan(f, sampler, h: float = DEFAULT_H, tol: float = DEFAULT_TOL, seed: int = 0,
             count: int = 100, workers: int = 1) -> ScanReport:
    """Minimal Levi eigenvalue of ``f`` at sampled points; flags those below ``-tol``.

    ``sampler`` is a :class:`ProductSampler` (drawn with ``seed``) or an
    explicit array of points.  Stencil failures are recorded, not raised.
    """
    return _scan(f, sampler, h, tol, seed, count, "psh", workers)


def strict_psh_scan(f, sampler, h: float = DEFAULT_H, tol: float = DEFAULT_TOL, seed: int = 0,
                    count: int = 100, workers: int = 1) -> ScanReport:
    """As :func:`psh_scan` but flags every sample whose minimal eigenvalue is not above ``tol``."""
    return _scan(f, sampler, h, tol, seed, count, "strict", workers)
