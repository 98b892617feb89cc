"""Property checks for a candidate splitting g = eps * g' * gamma of a sequence on [N]^2."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .group import NilGroup

DEFAULT_SLACK = 2.0


@dataclass
class FactorizationReport:
    smooth: bool
    rational: bool
    periodic: bool
    recomposes: bool
    rational_order: int | None = None
    periods: tuple | None = None
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.smooth and self.rational and self.periodic and self.recomposes


def _rational_order(group: NilGroup, gamma: np.ndarray, m_max: int, tol: float):
    """Smallest m <= M with gamma^m in Gamma at every point, else None."""
    pts = gamma.reshape(-1, gamma.shape[-1])
    for m in range(1, m_max + 1):
        if np.all(group.in_lattice(group.power(pts, np.full(len(pts), m)), tol)):
            return m
    return None


def _period(group: NilGroup, gamma: np.ndarray, axis: int, m_max: int, tol: float):
    n = gamma.shape[axis]
    for p in range(1, m_max + 1):
        if p >= n:
            return p
        a = np.take(gamma, np.arange(p, n), axis=axis)
        b = np.take(gamma, np.arange(0, n - p), axis=axis)
        if np.all(group.same_coset(a, b, tol)):
            return p
    return None


def rational_smooth_periodic_check(group: NilGroup, eps_seq, gprime_seq, gamma_seq, g_seq,
                                   m: int, n: int, slack: float = DEFAULT_SLACK,
                                   tol: float = 1e-9) -> FactorizationReport:
    """Check the four clauses on arrays of shape (N, N, s+1) indexed by (m-1, n-1).

    smooth:      d(eps(m,n), 1) <= slack*M and neighbour steps <= slack*M/N.
    rational:    some 1 <= q <= M has gamma(m,n)^q in Gamma everywhere.
    periodic:    gamma(m,n) e_X has periods <= M in both directions.
    recomposes:  eps * g' * gamma == g pointwise.
    """
    eps_seq, gprime_seq, gamma_seq, g_seq = (np.asarray(a, float) for a in (eps_seq, gprime_seq, gamma_seq, g_seq))
    shape = (n, n, group.s + 1)
    for name, arr in (("eps", eps_seq), ("g'", gprime_seq), ("gamma", gamma_seq), ("g", g_seq)):
        if arr.shape != shape:
            raise ValueError(f"{name} has shape {arr.shape}, expected {shape}")
    failures = []

    size = group.dist(eps_seq, group.identity())
    step_m = group.dist(eps_seq[1:], eps_seq[:-1])
    step_n = group.dist(eps_seq[:, 1:], eps_seq[:, :-1])
    worst_step = max(step_m.max(initial=0.0), step_n.max(initial=0.0))
    smooth = bool(size.max() <= slack * m and worst_step <= slack * m / n)
    if not smooth:
        failures.append(f"smooth: max distance {size.max():.6g}, max step {worst_step:.6g} "
                        f"vs bounds {slack * m:.6g}, {slack * m / n:.6g}")

    order = _rational_order(group, gamma_seq, m, tol)
    if order is None:
        failures.append(f"rational: no q <= {m} with gamma^q in Gamma")

    p1 = _period(group, gamma_seq, 0, m, tol)
    p2 = _period(group, gamma_seq, 1, m, tol)
    periodic = p1 is not None and p2 is not None
    if not periodic:
        failures.append(f"periodic: periods {p1}, {p2} (None means > {m})")

    rec = group.mul(group.mul(eps_seq, gprime_seq), gamma_seq)
    err = float(np.abs(rec - g_seq).max())
    recomposes = err <= tol * max(1.0, float(np.abs(g_seq).max()))
    if not recomposes:
        failures.append(f"recomposes: max error {err:.3g}")

    return FactorizationReport(smooth, order is not None, periodic, recomposes, order,
                               (p1, p2) if periodic else None, failures)
