from dataclasses import dataclass, field
from typing import List, Tuple


@dataclass(frozen=True)
class CoefficientTables:
    """Naming-outcome probabilities and motif observation probabilities.

    ``b_ij``: a seed with two motif-incident links names i of the strong and
    j of the weak ones. ``a_ij``: same for a single motif-incident link.
    ``rho`` / ``pi`` / ``phi`` hold the configuration probabilities for a
    triangle observed as a triangle, a triangle observed as an open triad, and
    an open triad preserved; they are indexed from 1 through the accessors.
    """

    q: float
    kw: float
    budget: int

    b00: float
    b01: float
    b02: float
    b10: float
    b11: float
    b20: float
    a00: float
    a01: float
    a10: float

    rho: Tuple[float, ...]
    pi: Tuple[float, ...]
    phi: Tuple[float, ...]

    warnings: List[str] = field(default_factory=list, compare=False)

    @staticmethod
    def _range_sum(values: Tuple[float, ...], first: int, last: int) -> float:
        if not 1 <= first <= last <= len(values):
            raise IndexError(f"range {first}..{last} outside 1..{len(values)}")
        return float(sum(values[first - 1:last]))

    def rho_at(self, index: int) -> float:
        return self.rho[index - 1]

    def pi_at(self, index: int) -> float:
        return self.pi[index - 1]

    def phi_at(self, index: int) -> float:
        return self.phi[index - 1]

    def rho_sum(self, first: int, last: int) -> float:
        """Sum of rho_first..rho_last, inclusive and 1-based."""
        return self._range_sum(self.rho, first, last)

    def pi_sum(self, first: int, last: int) -> float:
        return self._range_sum(self.pi, first, last)

    def phi_sum(self, first: int, last: int) -> float:
        return self._range_sum(self.phi, first, last)
