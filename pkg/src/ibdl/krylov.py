"""Matrix-free MINRES and GMRES with residual-history reporting.

These are the iteration engines whose counts the benchmark tables
report, so the conventions are pinned here: zero initial guess,
convergence on the relative l2 residual ||b - A x|| / ||b||, one matvec
per recorded iteration, and stagnation declared when the best residual
has not improved by a relative 1e-14 over 50 consecutive iterations.
"""

from dataclasses import dataclass, field

import numpy as np

STAGNATION_WINDOW = 50
STAGNATION_RTOL = 1e-14


@dataclass
class LinearOperator:
    """Black-box linear map of dimension n."""

    n: int
    apply: callable

    def __call__(self, x):
        return self.apply(x)


@dataclass
class SolveReport:
    iterations: int
    residual_history: list = field(default_factory=list)
    converged: bool = False
    tolerance: float = 0.0
    stagnated: bool = False
    method: str = ""

    def __str__(self):
        state = "converged" if self.converged else ("stagnated" if self.stagnated else "failed")
        last = self.residual_history[-1] if self.residual_history else float("nan")
        return f"{self.method}: {state} in {self.iterations} iterations (rel res {last:.2e})"


class _StagnationTracker:
    def __init__(self):
        self.best = np.inf
        self.since_improvement = 0

    def update(self, res):
        if res < self.best * (1.0 - STAGNATION_RTOL):
            self.best = res
            self.since_improvement = 0
            return False
        self.since_improvement += 1
        return self.since_improvement >= STAGNATION_WINDOW


def _as_apply(op):
    return op.apply if isinstance(op, LinearOperator) else op


def minres(op, rhs, tol=1e-8, max_iter=None):
    """Solve op x = rhs for symmetric op (Paige-Saunders recurrences).

    Returns (x, SolveReport).  Non-convergence (iteration budget or
    stagnation) is reported, not raised; the best-so-far solution is
    still returned.
    """
    apply_op = _as_apply(op)
    b = np.asarray(rhs, dtype=float).ravel()
    n = b.size
    if max_iter is None:
        max_iter = 10 * n
    report = SolveReport(iterations=0, tolerance=tol, method="minres")
    x = np.zeros(n)
    beta1 = np.linalg.norm(b)
    if beta1 == 0.0:
        report.converged = True
        return x, report

    r1 = b.copy()
    r2 = b.copy()
    y = b.copy()
    oldb = 0.0
    beta = beta1
    dbar = 0.0
    epsln = 0.0
    phibar = beta1
    cs = -1.0
    sn = 0.0
    w = np.zeros(n)
    w2 = np.zeros(n)
    eps = np.finfo(float).eps
    stag = _StagnationTracker()

    for itn in range(1, max_iter + 1):
        v = y / beta
        y = np.asarray(apply_op(v), dtype=float).ravel()
        if itn >= 2:
            y -= (beta / oldb) * r1
        alfa = float(v @ y)
        y -= (alfa / beta) * r2
        r1 = r2
        r2 = y.copy()
        oldb = beta
        beta = np.linalg.norm(y)

        oldeps = epsln
        delta = cs * dbar + sn * alfa
        gbar = sn * dbar - cs * alfa
        epsln = sn * beta
        dbar = -cs * beta
        gamma = max(np.hypot(gbar, beta), eps)
        cs = gbar / gamma
        sn = beta / gamma
        phi = cs * phibar
        phibar = sn * phibar

        w1 = w2
        w2 = w
        w = (v - oldeps * w1 - delta * w2) / gamma
        x = x + phi * w

        rel = phibar / beta1
        report.iterations = itn
        report.residual_history.append(rel)
        if rel <= tol:
            report.converged = True
            break
        if stag.update(rel):
            report.stagnated = True
            break
        if beta <= eps * beta1:  # Krylov space exhausted
            report.converged = rel <= tol
            break
    return x, report


def gmres(op, rhs, tol=1e-8, max_iter=None, restart=None):
    """Solve op x = rhs with GMRES (full orthogonalization by default).

    Modified Gram-Schmidt with one reorthogonalization pass whenever the
    remaining component overlaps the basis by more than 1e-8.
    """
    apply_op = _as_apply(op)
    b = np.asarray(rhs, dtype=float).ravel()
    n = b.size
    if max_iter is None:
        max_iter = 10 * n
    report = SolveReport(iterations=0, tolerance=tol, method="gmres")
    x = np.zeros(n)
    bnorm = np.linalg.norm(b)
    if bnorm == 0.0:
        report.converged = True
        return x, report

    cycle = n if restart is None else min(restart, n)
    stag = _StagnationTracker()
    total = 0

    while total < max_iter and not (report.converged or report.stagnated):
        r = b - np.asarray(apply_op(x), dtype=float).ravel() if total else b.copy()
        rnorm = np.linalg.norm(r)
        if rnorm / bnorm <= tol:
            report.converged = True
            break
        V = np.empty((cycle + 1, n))
        H = np.zeros((cycle + 1, cycle))
        g = np.zeros(cycle + 1)
        g[0] = rnorm
        V[0] = r / rnorm
        c = np.zeros(cycle)
        s = np.zeros(cycle)
        k_used = 0

        for k in range(cycle):
            if total >= max_iter:
                break
            wv = np.asarray(apply_op(V[k]), dtype=float).ravel()
            total += 1
            wnorm0 = np.linalg.norm(wv)
            for j in range(k + 1):
                hjk = float(V[j] @ wv)
                H[j, k] = hjk
                wv -= hjk * V[j]
            # re-orthogonalize when the basis overlap remains significant
            overlap = V[: k + 1] @ wv
            if np.max(np.abs(overlap), initial=0.0) > 1e-8 * max(wnorm0, 1e-300):
                H[: k + 1, k] += overlap
                wv -= overlap @ V[: k + 1]
            H[k + 1, k] = np.linalg.norm(wv)
            lucky = H[k + 1, k] <= 1e-14 * max(wnorm0, 1e-300)
            if not lucky:
                V[k + 1] = wv / H[k + 1, k]
            # apply stored Givens rotations, then the new one
            for j in range(k):
                t = c[j] * H[j, k] + s[j] * H[j + 1, k]
                H[j + 1, k] = -s[j] * H[j, k] + c[j] * H[j + 1, k]
                H[j, k] = t
            denom = np.hypot(H[k, k], H[k + 1, k])
            c[k] = H[k, k] / denom if denom else 1.0
            s[k] = H[k + 1, k] / denom if denom else 0.0
            H[k, k] = denom
            H[k + 1, k] = 0.0
            g[k + 1] = -s[k] * g[k]
            g[k] = c[k] * g[k]
            k_used = k + 1
            rel = abs(g[k + 1]) / bnorm
            report.iterations = total
            report.residual_history.append(rel)
            if rel <= tol or lucky:
                report.converged = True
                break
            if stag.update(rel):
                report.stagnated = True
                break

        if k_used:
            yk = np.zeros(k_used)
            for i in range(k_used - 1, -1, -1):
                yk[i] = (g[i] - H[i, i + 1 : k_used] @ yk[i + 1 : k_used]) / H[i, i]
            x = x + yk @ V[:k_used]
        if restart is None and not (report.converged or report.stagnated):
            break  # full-memory cycle exhausted the subspace

    if report.converged and report.residual_history:
        report.converged = report.residual_history[-1] <= tol or report.converged
    return x, report
