"""Numerical evidence for the stability mechanism behind the certificates.

For a normalized map ``Phi*(u, v) = (u + p*, v + q*)`` the field
``-Phi*`` gives the planar system

    u' = -u - p*(u, v),    v' = -v - q*(u, v)

whose jacobian is ``-J_Phi*``.  When ``T* == 0`` that matrix has trace
``-2`` and determinant ``det J_Phi* = 1`` everywhere, so every orbit should
fall into the origin.  Everything here is floating point and counts as
evidence only: a non-converged run is reported, never treated as a
counterexample.

The inner loop lives in a compiled kernel (``jacmap._kernels``) when it is
available; ``jacmap._kernels_py`` is the drop-in fallback.  Set
``JACMAP_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from jacmap import _kernels_py
from jacmap.analyzer import NormalizedMap
from jacmap.poly import Poly2

log = logging.getLogger(__name__)

if os.environ.get("JACMAP_PURE_PYTHON"):
    _compiled = None
else:
    try:
        from jacmap import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled
DEFAULT_BACKEND = "compiled" if _compiled is not None else "python"

DEFAULT_T_MAX = 50.0
DEFAULT_H0 = 1e-2
DEFAULT_TOL = 1e-6
DEFAULT_MAX_STEPS = 1_000_000
DEFAULT_GRID = (-2.0, 2.0, 10)

_STATUS = {
    _kernels_py.CONVERGED: "converged",
    _kernels_py.REACHED_TMAX: "t_max",
    _kernels_py.STEP_UNDERFLOW: "step_underflow",
    _kernels_py.MAX_STEPS: "max_steps",
}


class StepUnderflow(RuntimeWarning):
    """Step size fell below 1e-12 (stiff or escaping trajectory)."""


@dataclass
class Trajectory:
    samples: List[Tuple[float, float, float]]
    converged: bool
    final_norm: float
    status: str = "t_max"

    @property
    def step_underflow(self) -> bool:
        return self.status == "step_underflow"

    @property
    def final_time(self) -> float:
        return self.samples[-1][0]


@dataclass
class BasinReport:
    grid: List[Tuple[float, float]]
    converged_count: int
    failures: List[Tuple[float, float]] = field(default_factory=list)
    max_final_norm: float = 0.0
    max_final_time: float = 0.0

    @property
    def all_converged(self) -> bool:
        return not self.failures


@dataclass
class EigenReport:
    points: List[Tuple[float, float]]
    traces: List[float]
    dets: List[float]

    @property
    def max_trace(self) -> float:
        return max(self.traces, default=-math.inf)

    @property
    def min_det(self) -> float:
        return min(self.dets, default=math.inf)

    @property
    def negative_real_parts(self) -> bool:
        """Both eigenvalues of ``-J`` have negative real part at every sample."""
        return all(t < 0 < d for t, d in zip(self.traces, self.dets))


def _flat(p: Poly2):
    items = p.sorted_terms()
    return [m[0] for m, _ in items], [m[1] for m, _ in items], [float(c) for _, c in items]


def _kernel_args(n: NormalizedMap):
    return (*_flat(n.pstar), *_flat(n.qstar))


def field_eval(n: NormalizedMap, point: Tuple[float, float], backend: str | None = None) -> Tuple[float, float]:
    k = BACKENDS[backend or DEFAULT_BACKEND]
    return k.field_kernel(*_kernel_args(n), float(point[0]), float(point[1]))


def integrate(
    n: NormalizedMap,
    x0: Tuple[float, float],
    t_max: float = DEFAULT_T_MAX,
    h0: float = DEFAULT_H0,
    tol: float = DEFAULT_TOL,
    max_steps: int = DEFAULT_MAX_STEPS,
    backend: str | None = None,
) -> Trajectory:
    """Integrate ``-Phi*`` from ``x0`` with step-doubling RK4.

    A step is accepted when the full step and two half steps agree to
    ``tol * max(1, |state|)``; otherwise it is halved.  The run stops once the state norm
    drops below ``tol`` (converged), at ``t_max``, or on step underflow.
    """
    if not (t_max > 0 and h0 > 0 and tol > 0):
        raise ValueError("t_max, h0 and tol must be positive")
    k = BACKENDS[backend or DEFAULT_BACKEND]
    ts, us, vs, status = k.integrate_kernel(
        *_kernel_args(n), float(x0[0]), float(x0[1]), float(t_max), float(h0), float(tol), int(max_steps)
    )
    final = math.hypot(us[-1], vs[-1])
    traj = Trajectory(list(zip(ts, us, vs)), final < tol, final, _STATUS[status])
    if traj.step_underflow:
        log.warning("step underflow from %s at t=%.6g", x0, ts[-1])
    return traj


def grid_points(lo: float, hi: float, count: int) -> List[Tuple[float, float]]:
    if count < 1:
        raise ValueError("grid needs at least one point per axis")
    if count == 1:
        axis = [(lo + hi) / 2.0]
    else:
        axis = [lo + (hi - lo) * i / (count - 1) for i in range(count)]
    return [(u, v) for u in axis for v in axis]


def basin_scan(
    n: NormalizedMap,
    lo: float = DEFAULT_GRID[0],
    hi: float = DEFAULT_GRID[1],
    count: int = DEFAULT_GRID[2],
    t_max: float = DEFAULT_T_MAX,
    h0: float = DEFAULT_H0,
    tol: float = DEFAULT_TOL,
    workers: int = 1,
    dump_dir: Optional[str | Path] = None,
    backend: str | None = None,
) -> BasinReport:
    """Integrate from every point of a ``count x count`` grid on ``[lo, hi]^2``.

    Results are aggregated in grid order regardless of ``workers``.
    """
    grid = grid_points(lo, hi, count)

    def run(pt):
        return integrate(n, pt, t_max=t_max, h0=h0, tol=tol, backend=backend)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            trajs = list(pool.map(run, grid))
    else:
        trajs = [run(pt) for pt in grid]

    if dump_dir is not None:
        out = Path(dump_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, tr in enumerate(trajs):
            dump_trajectory(tr, out / f"traj_{i:04d}.txt")

    failures = [pt for pt, tr in zip(grid, trajs) if not tr.converged]
    return BasinReport(
        grid=grid,
        converged_count=len(grid) - len(failures),
        failures=failures,
        max_final_norm=max(tr.final_norm for tr in trajs),
        max_final_time=max(tr.final_time for tr in trajs),
    )


def eigen_certificate_sample(n: NormalizedMap, points: Sequence[Tuple[float, float]]) -> EigenReport:
    """Trace and determinant of ``-J_Phi*`` at each sample point."""
    pts = [(float(u), float(v)) for u, v in points]
    traces = [-2.0 - n.Tstar.evaluate_float(u, v) for u, v in pts]
    dets = [1.0 + n.Tstar.evaluate_float(u, v) + n.Dstar.evaluate_float(u, v) for u, v in pts]
    return EigenReport(pts, traces, dets)


def dump_trajectory(traj: Trajectory, path: str | Path) -> None:
    """Write ``t u v`` rows, one sample per line."""
    with open(path, "w") as fh:
        for t, u, v in traj.samples:
            fh.write(f"{t!r} {u!r} {v!r}\n")


def load_trajectory(path: str | Path) -> List[Tuple[float, float, float]]:
    rows = []
    with open(path) as fh:
        for line in fh:
            if line.strip():
                t, u, v = (float(tok) for tok in line.split())
                rows.append((t, u, v))
    return rows
