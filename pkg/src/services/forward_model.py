"""
Forward model of the survey: expected statistics given the network.

Two flavours are provided. ``expected_observables`` uses only the degree
means (the approximations the estimators invert), while
``exact_expected_observables`` evaluates the sampling model on a concrete
graph without those approximations. Both serve as oracles for the
estimators and for checking how good the approximations are.
"""

import math
from typing import Dict

import numpy as np

from src.models.census import MotifCensus, OpenTriadCounts, TriangleCounts
from src.models.coefficients import CoefficientTables
from src.models.graph import SingleLayerGraph, TwoLayerGraph
from src.models.observed import ExpectedObservables


def expected_observables(
    node_count: float, q: float, ks: float, kw: float, budget: int
) -> ExpectedObservables:
    """Mean-field expectations of the seven survey statistics."""
    n, p = node_count, 1.0 - q
    return ExpectedObservables(
        n0=n * q,
        m0s=0.5 * q * q * n * ks,
        m1s=q * p * n * ks,
        n1s=n * p * (1.0 - p**ks),
        m0w=0.5 * q * q * budget * n * (2.0 - budget / kw),
        m1w=q * p * n * budget,
        # Regular-degree reading of the weak alter count
        n1w=n * p * (1.0 - (1.0 - q * budget / kw) ** kw),
    )


def exact_expected_observables(graph: TwoLayerGraph, q: float, budget: int) -> ExpectedObservables:
    """
    Expectations under the sampling model for this particular graph.

    A seed names weak neighbor j with probability min(1, B / k_i^w) and the
    namings of different seeds are independent, which makes every term
    below exact.
    """
    p = 1.0 - q
    strong = graph.strong_degrees().astype(np.float64)
    weak = graph.weak_degrees().astype(np.float64)
    naming = np.where(weak > 0, np.minimum(1.0, budget / np.maximum(weak, 1.0)), 0.0)

    edges = graph.weak.edge_array()
    if edges.size:
        pu, pv = naming[edges[:, 0]], naming[edges[:, 1]]
        m0w = q * q * float((pu + pv - pu * pv).sum())
    else:
        m0w = 0.0

    # Probability that no weak seed neighbor names node j
    missed = np.ones(graph.node_count)
    for node, neighbors in enumerate(graph.weak_adjacency):
        if neighbors:
            missed[node] = float(np.prod(1.0 - q * naming[neighbors]))

    return ExpectedObservables(
        n0=graph.node_count * q,
        m0s=0.5 * q * q * float(strong.sum()),
        m1s=q * p * float(strong.sum()),
        n1s=float((p * (1.0 - p**strong)).sum()),
        m0w=m0w,
        m1w=q * p * float((naming * weak).sum()),
        n1w=float((p * (1.0 - missed)).sum()),
    )


def expected_observed_census(truth: MotifCensus, tables: CoefficientTables) -> MotifCensus:
    """Expected triangle and open-triad counts in the sampled network."""
    t = truth.triangles
    lam = truth.open_triads
    triangles = TriangleCounts(
        t_s3=t.t_s3 * tables.rho_sum(1, 2),
        t_s2w=t.t_s2w * tables.rho_sum(3, 7),
        t_sw2=t.t_sw2 * tables.rho_sum(8, 17),
        t_w3=t.t_w3 * tables.rho_sum(18, 26),
    )
    open_triads = OpenTriadCounts(
        l_ss=lam.l_ss * tables.phi_sum(1, 4)
        + 3 * t.t_s3 * tables.pi_at(3)
        + t.t_s2w * tables.pi_sum(1, 4),
        l_sw=lam.l_sw * tables.phi_sum(5, 13)
        + 2 * t.t_s2w * tables.pi_at(6)
        + 2 * t.t_sw2 * tables.pi_sum(5, 13),
        l_ww=lam.l_ww * tables.phi_sum(14, 24)
        + t.t_sw2 * tables.pi_at(14)
        + 3 * t.t_w3 * tables.pi_sum(14, 24),
    )
    return MotifCensus(triangles=triangles, open_triads=open_triads)


# ============================================================================
# Average-degree approximation checks
# ============================================================================


def harmonic_edge_sum(graph: SingleLayerGraph) -> float:
    """Y = sum_i sum_{j in N(i)} 1 / (k_i k_j), each edge seen from both ends."""
    edges = graph.edge_array()
    if edges.size == 0:
        return 0.0
    degrees = graph.degrees().astype(np.float64)
    return 2.0 * float((1.0 / (degrees[edges[:, 0]] * degrees[edges[:, 1]])).sum())


def harmonic_sum_ratio(graph: SingleLayerGraph) -> Dict[str, float]:
    """Mean-degree approximation Y_hat = N / K against the exact Y."""
    exact = harmonic_edge_sum(graph)
    mean_degree = float(graph.degrees().mean())
    approx = graph.node_count / mean_degree
    return {"Y": exact, "Y_hat": approx, "ratio": approx / exact}


def poisson_taylor_ratio(ks: float, q: float) -> float:
    """Fourth-order expansion of E[(1-q)^k] / (1-q)^K_s for Poisson degrees."""
    return 1.0 + ks * q**2 / 2 + ks * q**3 / 3 + ks * (ks + 2) * q**4 / 8


def poisson_approximation_check(
    ks: float, q: float, draws: int, rng: np.random.Generator
) -> Dict[str, float]:
    """
    Compare the empirical Poisson ratio with its Taylor expansion.

    Returns:
        Dict with empirical, taylor and closed-form ratios plus the relative
        gap between empirical and taylor
    """
    degrees = rng.poisson(ks, size=draws)
    empirical = float(np.mean((1.0 - q) ** degrees)) / (1.0 - q) ** ks
    taylor = poisson_taylor_ratio(ks, q)
    exact = math.exp(-q * ks) / (1.0 - q) ** ks
    return {
        "ks": ks,
        "q": q,
        "draws": float(draws),
        "empirical": empirical,
        "taylor": taylor,
        "exact": exact,
        "relative_gap": abs(empirical / taylor - 1.0),
    }
