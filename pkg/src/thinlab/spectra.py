"""Normalized-Laplacian spectral gap computation for regular multigraphs.

lambda1 is the second-smallest eigenvalue (with multiplicity) of
L = I - A/k, so it is 0 exactly when the graph is disconnected and the
zero eigenvalue has multiplicity equal to the component count.  The dense
path computes the bottom of the spectrum directly; the iterative path
deflates the known kernel (component indicator vectors) and runs an
extremal eigensolver on 2I - L restricted to the complement.
"""

from __future__ import annotations

import csv
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from .graphs import MultiGraph, components

DENSE_CUTOFF = 3000
ITERATIVE_TOL = 1e-6
# ARPACK needs a 3-dimensional problem; below that a plain power iteration
# on the deflated operator converges immediately
_POWER_ITERATION_MAX_N = 2
_V0_SEED = 0x7A51

CSV_FIELDS = ("graph_id", "N", "k", "lambda1", "zero_mult", "solver", "residual", "seconds")


class ConvergenceError(RuntimeError):
    """Iterative solve hit the iteration cap; carries the best estimate."""

    def __init__(self, best_estimate: float, residual: float, iterations: int):
        super().__init__(
            f"eigensolver did not converge after {iterations} iterations: "
            f"best lambda1 ~ {best_estimate}, residual {residual}"
        )
        self.best_estimate = best_estimate
        self.residual = residual
        self.iterations = iterations


@dataclass
class SpectralReport:
    graph_id: str
    n_vertices: int
    degree: int
    lambda1: float
    zero_multiplicity: int
    solver: str
    residual: float
    seconds: float
    eigenvector: np.ndarray | None = field(default=None, repr=False, compare=False)

    def csv_row(self, include_seconds: bool = True) -> list:
        return [
            self.graph_id,
            self.n_vertices,
            self.degree,
            repr(self.lambda1),
            self.zero_multiplicity,
            self.solver,
            repr(self.residual),
            repr(self.seconds) if include_seconds else "",
        ]


def _kernel_basis(comps: list[np.ndarray], n: int) -> np.ndarray:
    """Orthonormal component indicator vectors spanning ker(L) exactly."""
    Q = np.zeros((n, len(comps)))
    for j, c in enumerate(comps):
        Q[c, j] = 1.0 / math.sqrt(len(c))
    return Q


def _residual(L, lam: float, x: np.ndarray) -> float:
    return float(np.linalg.norm(L @ x - lam * x) / np.linalg.norm(x))


def _lambda1_dense(graph: MultiGraph, comps: list[np.ndarray]) -> tuple[float, float, np.ndarray]:
    n, k = graph.n_vertices, graph.degree
    A = graph.dense_adjacency()
    L = np.eye(n) - A / k
    zm = len(comps)
    hi = min(max(zm, 1), n - 1)
    w, V = scipy.linalg.eigh(L, subset_by_index=(0, hi))
    if abs(w[zm - 1]) > 1e-6:
        raise RuntimeError(
            f"kernel mismatch: component count {zm} but eigenvalue {w[zm - 1]} is not zero"
        )
    lam = float(w[1])
    x = V[:, 1]
    return lam, _residual(L, lam, x), x


def _deflated_operator(L, Q: np.ndarray) -> Callable[[np.ndarray], np.ndarray]:
    def project(x: np.ndarray) -> np.ndarray:
        return x - Q @ (Q.T @ x)

    def matvec(x: np.ndarray) -> np.ndarray:
        y = project(x)
        z = 2.0 * y - L @ y
        return project(z)

    return matvec


def _power_iteration(
    L, matvec, x0: np.ndarray, tol: float, maxiter: int
) -> tuple[float, float, np.ndarray, int]:
    x = x0 / np.linalg.norm(x0)
    lam, res = math.nan, math.inf
    for it in range(1, maxiter + 1):
        y = matvec(x)
        theta = float(x @ y)
        lam = 2.0 - theta
        res = _residual(L, lam, x)
        if res <= tol:
            return lam, res, x, it
        ny = np.linalg.norm(y)
        if ny < 1e-30:
            break
        x = y / ny
    raise ConvergenceError(lam, res, maxiter)


def lambda1(
    graph: MultiGraph,
    method: str = "auto",
    dense_cutoff: int = DENSE_CUTOFF,
    tol: float | None = None,
    maxiter: int | None = None,
    graph_id: str | None = None,
) -> SpectralReport:
    """Spectral gap report for one graph.

    method "dense" does a symmetric eigendecomposition of the bottom of the
    spectrum; "iterative" runs a deflated extremal solve on the sparse
    matrix; "auto" switches on ``dense_cutoff`` vertices.
    """
    if graph.degree < 1:
        raise ValueError("lambda1 requires degree k >= 1")
    if graph.n_vertices < 2:
        raise ValueError("lambda1 undefined for a single-vertex graph")
    if method not in ("auto", "dense", "iterative"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        method = "dense" if graph.n_vertices <= dense_cutoff else "iterative"

    name = graph_id if graph_id is not None else graph.label
    comps = components(graph)
    zm = len(comps)
    n, k = graph.n_vertices, graph.degree
    t0 = time.perf_counter()

    if method == "dense":
        lam, res, x = _lambda1_dense(graph, comps)
        return SpectralReport(name, n, k, lam, zm, "dense", res, time.perf_counter() - t0, x)

    tol = ITERATIVE_TOL if tol is None else tol
    maxiter = 10 * n if maxiter is None else maxiter
    L = scipy.sparse.identity(n, format="csr") - graph.adjacency() / k

    if zm >= 2:
        # second eigenvalue is another exact kernel vector; no solve needed
        x = np.zeros(n)
        x[comps[0]] = 1.0 / len(comps[0])
        x[comps[1]] = -1.0 / len(comps[1])
        x /= np.linalg.norm(x)
        res = _residual(L, 0.0, x)
        return SpectralReport(name, n, k, 0.0, zm, "iterative", res, time.perf_counter() - t0, x)

    Q = _kernel_basis(comps, n)
    matvec = _deflated_operator(L, Q)
    rng = np.random.default_rng(_V0_SEED ^ n)
    v0 = rng.standard_normal(n)
    v0 -= Q @ (Q.T @ v0)

    if n <= _POWER_ITERATION_MAX_N:
        lam, res, x, _ = _power_iteration(L, matvec, v0, tol, maxiter)
        return SpectralReport(name, n, k, lam, zm, "iterative", res, time.perf_counter() - t0, x)

    op = scipy.sparse.linalg.LinearOperator((n, n), matvec=matvec, dtype=np.float64)
    try:
        # ARPACK's stopping test is ||r|| <= tol * |theta| with theta <= 2,
        # so halve the requested tolerance to certify ||r|| <= tol
        theta, vecs = scipy.sparse.linalg.eigsh(
            op, k=1, which="LA", tol=tol / 2, maxiter=maxiter, v0=v0
        )
    except scipy.sparse.linalg.ArpackNoConvergence as exc:
        best = 2.0 - float(exc.eigenvalues[0]) if len(exc.eigenvalues) else math.nan
        raise ConvergenceError(best, math.nan, maxiter) from exc
    lam = 2.0 - float(theta[0])
    x = vecs[:, 0]
    x -= Q @ (Q.T @ x)
    x /= np.linalg.norm(x)
    res = _residual(L, lam, x)
    return SpectralReport(name, n, k, lam, zm, "iterative", res, time.perf_counter() - t0, x)


@dataclass
class SweepResult:
    """Per-prime reports in input order plus isolated failures."""

    reports: list[SpectralReport]
    errors: dict[int, str]

    @property
    def ok(self) -> bool:
        return not self.errors


def family_sweep(
    builder: Callable[[int], MultiGraph],
    primes: Sequence[int],
    method: str = "auto",
    jobs: int | None = None,
    dense_cutoff: int = DENSE_CUTOFF,
) -> SweepResult:
    """Build and solve one graph per prime, concurrently; a failure for one
    prime is recorded and the sweep continues."""
    if not primes:
        raise ValueError("need at least one prime")

    def task(p: int) -> SpectralReport:
        return lambda1(builder(p), method=method, dense_cutoff=dense_cutoff)

    reports: list[SpectralReport] = []
    errors: dict[int, str] = {}
    workers = jobs or os.cpu_count() or 1
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [(p, pool.submit(task, p)) for p in primes]
        for p, fut in futures:
            try:
                reports.append(fut.result())
            except Exception as exc:  # noqa: BLE001 - isolate per prime
                errors[p] = f"{type(exc).__name__}: {exc}"
    return SweepResult(reports, errors)


@dataclass
class EsperantistFit:
    """Least-squares fit of lambda1 ~ c * (log N)^(-A), diagnostic only."""

    points: tuple[tuple[int, float], ...]
    c: float
    exponent: float
    residual_norm: float
    min_lambda1: float


def esperantist_fit(series: Iterable) -> EsperantistFit:
    """Fit log(lambda1) against log(log N) over the connected entries.

    Accepts (N, lambda1) pairs or SpectralReport objects; entries with
    lambda1 <= 0 are dropped, and at least three must remain.
    """
    pts = []
    for item in series:
        if isinstance(item, SpectralReport):
            pts.append((item.n_vertices, item.lambda1))
        else:
            n, lam = item
            pts.append((int(n), float(lam)))
    pts = [(n, lam) for n, lam in pts if lam > 0]
    if len(pts) < 3:
        raise ValueError(f"insufficient data: need >= 3 connected graphs, have {len(pts)}")
    if any(n < 2 for n, _ in pts):
        raise ValueError("vertex counts must be >= 2 for a log-log fit")
    x = np.log(np.log([n for n, _ in pts]))
    y = np.log([lam for _, lam in pts])
    if np.ptp(x) < 1e-12:
        # all vertex counts equal: the regressor is constant, fit is flat
        exponent, intercept = 0.0, float(np.mean(y))
    else:
        slope, intercept = np.polyfit(x, y, 1)
        exponent = -float(slope)
        if exponent < 0:
            # boundary of the constrained model: flat fit
            exponent = 0.0
            intercept = float(np.mean(y))
    resid = float(np.linalg.norm(y - (intercept - exponent * x)))
    return EsperantistFit(
        points=tuple(pts),
        c=float(np.exp(intercept)),
        exponent=exponent,
        residual_norm=resid,
        min_lambda1=min(lam for _, lam in pts),
    )


def write_reports_csv(reports: Sequence[SpectralReport], path, include_seconds: bool = True) -> None:
    """One CSV row per report: graph_id,N,k,lambda1,zero_mult,solver,residual,seconds.

    With include_seconds=False the column stays but the field is left empty,
    keeping harness outputs byte-identical across reruns.
    """
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_FIELDS)
        for r in reports:
            writer.writerow(r.csv_row(include_seconds=include_seconds))


def fit_to_json(fit: EsperantistFit) -> str:
    payload = {
        "model": "lambda1 ~ c * (log N)^(-A)",
        "c": fit.c,
        "exponent": fit.exponent,
        "residual_norm": fit.residual_norm,
        "min_lambda1": fit.min_lambda1,
        "points": [[n, lam] for n, lam in fit.points],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def fit_from_json(text: str) -> EsperantistFit:
    payload = json.loads(text)
    return EsperantistFit(
        points=tuple((int(n), float(lam)) for n, lam in payload["points"]),
        c=float(payload["c"]),
        exponent=float(payload["exponent"]),
        residual_norm=float(payload["residual_norm"]),
        min_lambda1=float(payload["min_lambda1"]),
    )
