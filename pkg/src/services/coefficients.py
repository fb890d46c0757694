"""
Naming-outcome probabilities and motif observation tables.

With K = K_w and budget B, a seed holding two weak motif-incident links names
neither, one or both of them with probabilities b00, b01 (each) and b02 taken
from the hypergeometric draw of B out of K. ``b10 = 1 - b11`` covers the
seed with one strong and one weak incident link that names only the strong
one. The rho table gives the chance a triangle of each composition shows up
as a triangle; pi the chance it shows up as an open triad; phi the chance an
open triad stays open and observed.
"""

from typing import List, Tuple

from src.models.coefficients import CoefficientTables
from src.utils.errors import InvalidRegimeError
from src.utils.logger import get_logger

logger = get_logger(__name__)


def naming_probabilities(kw: float, budget: int) -> Tuple[dict, List[str]]:
    """
    Single-seed naming probabilities ``b_ij`` and ``a_ij``.

    At K_w = B = 1 the pair probabilities are 0/0; they take their B = K_w
    values (every weak tie named, b02 = 1).

    Raises:
        InvalidRegimeError: B < 1 or B > K_w
    """
    if budget < 1 or budget > kw:
        raise InvalidRegimeError(
            f"naming tables need 1 <= B <= K_w (K_w={kw:.4g}, B={budget})",
            kw=kw,
            budget=budget,
        )

    warnings: List[str] = []
    pairs = kw * (kw - 1)
    if pairs <= 0:
        b00, b01, b02 = 0.0, 0.0, 1.0
    else:
        b00 = (kw - budget) * (kw - budget - 1) / pairs
        b01 = budget * (kw - budget) / pairs
        b02 = budget * (budget - 1) / pairs
    if b00 < 0:
        # Only for non-integer K_w within one of B
        warnings.append(f"coefficients:b00_clamped:{b00:.3g}")
        b00 = 0.0

    b11 = budget / kw
    values = {
        "b00": b00,
        "b01": b01,
        "b02": b02,
        "b10": 1.0 - b11,
        "b11": b11,
        "b20": 1.0,
        "a00": 1.0 - budget / kw,
        "a01": budget / kw,
        "a10": 1.0,
    }
    return values, warnings


def _rho(q: float, b: dict) -> Tuple[float, ...]:
    p = 1.0 - q
    q2p, q3 = q * q * p, q**3
    b00, b01, b02 = b["b00"], b["b01"], b["b02"]
    b10, b11, b20 = b["b10"], b["b11"], b["b20"]
    return (
        # s3 triangles
        q3 * b20**3,
        3 * q2p * b20**2,
        # s2w triangles
        2 * q3 * b20 * b11 * b10,
        q3 * b20 * b11**2,
        2 * q2p * b20 * b11,
        2 * q2p * b11 * b10,
        q2p * b11**2,
        # sw2 triangles
        2 * q3 * b02 * b10 * b11,
        2 * q3 * b01 * b11**2,
        q3 * b02 * b11**2,
        q3 * b00 * b11**2,
        2 * q3 * b01 * b11 * b10,
        q3 * b02 * b10**2,
        q2p * b11**2,
        2 * q2p * b01 * b11,
        2 * q2p * b02 * b10,
        2 * q2p * b02 * b11,
        # w3 triangles
        6 * q2p * b02 * b01,
        3 * q2p * b02**2,
        6 * q3 * b00 * b01 * b02,
        3 * q3 * b00 * b02**2,
        2 * q3 * b01**3,
        6 * q3 * b01**2 * b02,
        3 * q3 * b01**2 * b02,
        3 * q3 * b01 * b02**2,
        q3 * b02**3,
    )


def _pi(q: float, b: dict) -> Tuple[float, ...]:
    p = 1.0 - q
    q2p, qp2, q3 = q * q * p, q * p * p, q**3
    b00, b01, b02 = b["b00"], b["b01"], b["b02"]
    b10, b11, b20 = b["b10"], b["b11"], b["b20"]
    return (
        # ss open triads from triangles
        q3 * b20 * b10**2,
        q2p * b10**2,
        qp2 * b20,
        2 * q2p * b20 * b10,
        # sw open triads
        q2p * b10 * b01,
        qp2 * b11,
        q2p * b11 * b10,
        q2p * b11 * b00,
        q2p * b10 * b01,
        q2p * b11 * b01,
        q3 * b10 * b11 * b00,
        q3 * b10**2 * b01,
        q3 * b10 * b11 * b01,
        # ww open triads
        qp2 * b02,
        q2p * b01**2,
        2 * q2p * b01**2,
        2 * q2p * b00 * b02,
        2 * q2p * b02 * b01,
        2 * q3 * b01**2 * b00,
        q3 * b00 * b01**2,
        2 * q3 * b01**3,
        q3 * b02 * b00**2,
        2 * q3 * b02 * b00 * b01,
        q3 * b02 * b01**2,
    )


def _phi(q: float, b: dict) -> Tuple[float, ...]:
    p = 1.0 - q
    q2p, qp2, q3 = q * q * p, q * p * p, q**3
    b00, b01, b02 = b["b00"], b["b01"], b["b02"]
    b10, b11, b20 = b["b10"], b["b11"], b["b20"]
    a00, a01, a10 = b["a00"], b["a01"], b["a10"]
    return (
        # ss
        q3 * b20 * a10**2,
        q2p * a10**2,
        qp2 * b20,
        2 * q2p * b20 * a10,
        # sw
        q2p * a10 * a01,
        qp2 * b11,
        q2p * b11 * a10,
        q2p * b11 * a00,
        q2p * b10 * a01,
        q2p * b11 * a01,
        q3 * b11 * a10 * a00,
        q3 * b10 * a10 * a01,
        q3 * b11 * a10 * a01,
        # ww
        qp2 * b02,
        q2p * a01**2,
        2 * q2p * b01 * a01,
        2 * q2p * b02 * a00,
        2 * q2p * b02 * a01,
        2 * q3 * b01 * a01 * a00,
        q3 * b00 * a01**2,
        2 * q3 * b01 * a01**2,
        q3 * b02 * a00**2,
        2 * q3 * b02 * a00 * a01,
        q3 * b02 * a01**2,
    )


def coefficient_tables(kw_hat: float, q_hat: float, budget: int) -> CoefficientTables:
    """
    Evaluate every naming and configuration probability at (K_w, q, B).

    Args:
        kw_hat: Estimated mean weak degree
        q_hat: Estimated sampling rate in [0, 1]
        budget: Fixed-choice budget B

    Returns:
        CoefficientTables

    Raises:
        InvalidRegimeError: B outside [1, K_w], or q outside [0, 1]
    """
    if not 0 <= q_hat <= 1:
        raise InvalidRegimeError(f"sampling rate {q_hat} outside [0, 1]", q=q_hat)

    naming, warnings = naming_probabilities(kw_hat, budget)
    tables = CoefficientTables(
        q=q_hat,
        kw=kw_hat,
        budget=budget,
        rho=_rho(q_hat, naming),
        pi=_pi(q_hat, naming),
        phi=_phi(q_hat, naming),
        warnings=warnings,
        **naming,
    )
    logger.debug(
        "Coefficient tables",
        q=q_hat,
        kw=kw_hat,
        budget=budget,
        rho_s3=tables.rho_sum(1, 2),
        rho_w3=tables.rho_sum(18, 26),
    )
    return tables
