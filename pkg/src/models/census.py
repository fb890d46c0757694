from dataclasses import dataclass
from typing import NamedTuple, Union

Count = Union[int, float]


class TriangleCounts(NamedTuple):
    """Triangles by link composition."""
    t_s3: Count
    t_s2w: Count
    t_sw2: Count
    t_w3: Count


class OpenTriadCounts(NamedTuple):
    """Open triads by the composition of the two ego-incident links."""
    l_ss: Count
    l_sw: Count
    l_ww: Count


class TriadTotals(NamedTuple):
    tau_ss: Count
    tau_sw: Count
    tau_ww: Count


def combine_triads(open_triads: OpenTriadCounts, triangles: TriangleCounts) -> TriadTotals:
    """Total triads as open triads plus the closed triads inside triangles."""
    return TriadTotals(
        tau_ss=open_triads.l_ss + 3 * triangles.t_s3 + triangles.t_s2w,
        tau_sw=open_triads.l_sw + 2 * triangles.t_s2w + 2 * triangles.t_sw2,
        tau_ww=open_triads.l_ww + 3 * triangles.t_w3 + triangles.t_sw2,
    )


@dataclass(frozen=True)
class MotifCensus:
    """Triangle and open-triad counts of a full or an observed network."""

    triangles: TriangleCounts
    open_triads: OpenTriadCounts

    @property
    def triad_totals(self) -> TriadTotals:
        return combine_triads(self.open_triads, self.triangles)

    @property
    def triangle_total(self) -> Count:
        return sum(self.triangles)

    @property
    def triad_total(self) -> Count:
        return sum(self.triad_totals)

    def to_dict(self) -> dict:
        return {**self.triangles._asdict(), **self.open_triads._asdict()}
