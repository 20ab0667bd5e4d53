"""Multi-start search for sum-zero spherical s-distance configurations.

This is a heuristic probe, not a decision procedure: a run either finds a
configuration whose pairwise inner products sit on ``s`` targets summing to
zero, or reports the lowest penalty it reached.

Every restart draws from its own Philox stream keyed by ``(seed, restart)``,
so results do not depend on how restarts are scheduled across threads.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .bounds import dm_bound
from .configurations import FLOAT, ConfigurationError, PointConfiguration, ProfileError, profile

log = logging.getLogger(__name__)

THREADS_ENV = "SDSETS_SEARCH_THREADS"
RESULT_TOL = 1e-7
MAX_HALVINGS = 30

TARGET_RANGE = 0.9
TARGET_LIMIT = 0.95
TARGET_SEPARATION = 0.05


def _check_targets(targets: Sequence[float]) -> np.ndarray:
    t = np.asarray(targets, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValueError("targets must be a non-empty list of floats")
    if np.any(np.diff(t) <= 0):
        raise ValueError(f"targets must be strictly increasing, got {list(t)}")
    if np.any(t >= 1):
        raise ValueError(f"targets must be < 1, got {list(t)}")
    return t


def _penalty_and_residual(X: np.ndarray, targets: np.ndarray) -> tuple[float, np.ndarray]:
    G = X @ X.T
    idx = np.abs(G[..., None] - targets).argmin(axis=-1)
    R = G - targets[idx]
    np.fill_diagonal(R, 0.0)
    return 0.5 * float(np.sum(R * R)), R


def penalty(F: PointConfiguration, targets: Sequence[float]) -> float:
    """Sum over pairs of the squared distance from each inner product to its nearest target."""
    X = np.array(F.points, dtype=float)
    return _penalty_and_residual(X, np.asarray(targets, dtype=float))[0]


def _normalize(X: np.ndarray) -> np.ndarray:
    return X / np.linalg.norm(X, axis=1, keepdims=True)


def _descend(X, targets, max_iterations, step, tolerance):
    """Projected gradient descent with backtracking. Returns (X, penalty, iterations)."""
    obj, R = _penalty_and_residual(X, targets)
    goal = tolerance * tolerance
    initial_step = step
    it = 0
    while it < max_iterations and obj > goal:
        grad = 2.0 * R @ X
        grad -= np.sum(grad * X, axis=1, keepdims=True) * X
        if not np.any(grad):
            break
        for _ in range(MAX_HALVINGS + 1):
            cand = _normalize(X - step * grad)
            cand_obj, cand_R = _penalty_and_residual(cand, targets)
            if cand_obj <= obj:
                break
            step *= 0.5
        else:
            break
        if cand_obj == obj:
            break
        X, obj, R = cand, cand_obj, cand_R
        step = min(step * 1.5, initial_step)
        it += 1
    return X, obj, it


def refine(
    F0: PointConfiguration,
    targets: Sequence[float],
    max_iterations: int = 500,
    step: float = 0.05,
    tolerance: float = 1e-9,
) -> PointConfiguration:
    """Pull every pairwise inner product of ``F0`` toward its nearest target.

    Points are renormalized after every step; the penalty never increases.
    Stops once the penalty is below ``tolerance**2``, the gradient vanishes,
    or ``max_iterations`` steps were taken. Non-convergence is not an error.
    """
    return _refine(F0, targets, max_iterations, step, tolerance)[0]


def _refine(F0, targets, max_iterations=500, step=0.05, tolerance=1e-9):
    if F0.mode != FLOAT:
        raise ValueError("refine works on float-mode configurations")
    t = _check_targets(targets)
    X0 = np.array(F0.points, dtype=float)
    X, obj, it = _descend(X0, t, max_iterations, step, tolerance)
    if it == 0:
        return F0, obj, 0
    return PointConfiguration(F0.n, FLOAT, tuple(map(tuple, X)), F0.tolerance), obj, it


def sample_targets(s: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``s`` sorted, well separated targets in (-0.95, 0.95) summing to zero."""
    if s == 1:
        return np.zeros(1)
    while True:
        head = rng.uniform(-TARGET_RANGE, TARGET_RANGE, size=s - 1)
        t = np.sort(np.append(head, -head.sum()))
        if np.all(np.abs(t) < TARGET_LIMIT) and np.all(np.diff(t) >= TARGET_SEPARATION):
            return t


def _refit_targets(X: np.ndarray, targets: np.ndarray) -> np.ndarray | None:
    """Least-squares targets for the current pair assignment, constrained to sum to zero."""
    G = X @ X.T
    iu = np.triu_indices(len(X), 1)
    g = G[iu]
    idx = np.abs(g[:, None] - targets).argmin(axis=1)
    counts = np.bincount(idx, minlength=targets.size)
    used = counts > 0
    means = np.array([g[idx == k].mean() if counts[k] else targets[k] for k in range(targets.size)])
    shift = (-targets[~used].sum() - means[used].sum()) / np.sum(1.0 / counts[used])
    new = means.copy()
    new[used] += shift / counts[used]
    new = np.sort(new)
    if np.any(np.abs(new) >= TARGET_LIMIT) or np.any(np.diff(new) < TARGET_SEPARATION):
        return None
    return new


@dataclass
class SearchResult:
    best: PointConfiguration | None
    achieved_s: int | None
    target_bound: int
    m: int
    penalty: float
    seed: int
    iterations: int
    restarts_used: int
    targets: tuple[float, ...] = ()
    converged: bool = False
    notes: list[str] = field(default_factory=list)

    def report(self) -> str:
        lines = [
            f"m: {self.m}  target_bound (dm): {self.target_bound}",
            f"penalty: {self.penalty:.3e}  converged: {str(self.converged).lower()}",
            f"achieved_s: {self.achieved_s}",
            "targets: " + ", ".join(f"{t:.12g}" for t in self.targets),
            f"seed: {self.seed}  restarts: {self.restarts_used}  iterations: {self.iterations}",
        ]
        lines += [f"note: {note}" for note in self.notes]
        return "\n".join(lines) + "\n"


@dataclass
class _Run:
    X: np.ndarray
    penalty: float
    iterations: int
    targets: np.ndarray


def _restart(n, s, m_goal, seed, restart, targets, max_iterations, step, tolerance, adapt_rounds) -> _Run:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, restart])))
    X = _normalize(rng.standard_normal((m_goal, n)))
    fixed = targets is not None
    t = np.asarray(targets, dtype=float) if fixed else sample_targets(s, rng)
    X, obj, total = _descend(X, t, max_iterations, step, tolerance)
    if not fixed:
        for _ in range(adapt_rounds):
            if obj <= tolerance * tolerance:
                break
            new = _refit_targets(X, t)
            if new is None:
                break
            X2, obj2, it = _descend(X, new, max_iterations, step, tolerance)
            total += it
            if obj2 >= obj:
                break
            X, obj, t = X2, obj2, new
    return _Run(X, obj, total, t)


def search(
    n: int,
    s: int,
    m_goal: int,
    restarts: int = 8,
    seed: int = 0,
    max_iterations: int = 2000,
    targets: Sequence[float] | None = None,
    step: float = 0.05,
    tolerance: float = 1e-9,
    adapt_rounds: int = 25,
    threads: int | None = None,
) -> SearchResult:
    """Look for ``m_goal`` points on S^{n-1} with ``s`` sum-zero inner products.

    Without ``targets`` each restart samples its own sum-zero targets and
    alternates descent on the points with a constrained refit of the targets.
    ``threads`` defaults to the ``SDSETS_SEARCH_THREADS`` environment variable
    (1 when unset); the result does not depend on it.
    """
    if n < 2 or s < 1 or m_goal < 2:
        raise ValueError(f"need n >= 2, s >= 1, m_goal >= 2; got n={n}, s={s}, m_goal={m_goal}")
    if restarts < 1 or seed < 0:
        raise ValueError("restarts must be positive and seed non-negative")
    if targets is not None:
        t = _check_targets(targets)
        if t.size != s:
            raise ValueError(f"expected {s} targets, got {t.size}")
        if abs(t.sum()) > 1e-12:
            raise ValueError(f"targets must sum to zero, sum is {t.sum()!r}")
        targets = tuple(t)
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1") or 1)

    def run(r):
        return _restart(n, s, m_goal, seed, r, targets, max_iterations, step, tolerance, adapt_rounds)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            runs = list(pool.map(run, range(restarts)))
    else:
        runs = [run(r) for r in range(restarts)]

    bound = dm_bound(n, s)
    notes = []
    if m_goal > bound:
        notes.append(f"m_goal {m_goal} exceeds the sum-zero bound {bound}; a zero-penalty result is impossible")

    best = None
    best_run = None
    for r, run_ in enumerate(runs):
        if best_run is not None and run_.penalty >= best_run.penalty:
            continue
        try:
            F = PointConfiguration(n, FLOAT, tuple(map(tuple, run_.X)), RESULT_TOL)
        except ConfigurationError as exc:
            log.debug("restart %d rejected: %s", r, exc)
            continue
        best, best_run = F, run_

    if best is None:
        notes.append("no restart produced a valid configuration")
        return SearchResult(None, None, bound, m_goal, float("inf"), seed, sum(r.iterations for r in runs), restarts, notes=notes)

    achieved_s = None
    try:
        achieved_s = profile(best).s
    except ProfileError as exc:
        notes.append(f"profile of best configuration is ambiguous: {exc}")
    converged = best_run.penalty <= tolerance * tolerance
    if not converged:
        notes.append(f"no restart reached penalty below tolerance^2 = {tolerance * tolerance:.1e}")
    return SearchResult(
        best=best,
        achieved_s=achieved_s,
        target_bound=bound,
        m=m_goal,
        penalty=best_run.penalty,
        seed=seed,
        iterations=sum(r.iterations for r in runs),
        restarts_used=restarts,
        targets=tuple(float(x) for x in best_run.targets),
        converged=converged,
        notes=notes,
    )
