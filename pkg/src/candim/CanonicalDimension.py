import logging

from src import __version__
from src.candim.BoundReport import BoundReport, ReferenceRecord, ReportStats, WitnessRecord
from src.candim.ReferenceTable import reference_table
from src.exceptions import InvalidDegree
from src.rootsys.RootSystem import RootSystem
from src.search.MultiplicityFreeSearch import SearchResult

logger = logging.getLogger(__name__)


def candim_upper_bound(dim_flag: int, max_mf_degree: int) -> int:
    """
    cd_0(G) <= dim(G/B) - (n_1 + ... + n_r) for any multiplicity-free [D_1]^n_1 ... [D_r]^n_r.

    Args:
        dim_flag (int): dim(G/B)
        max_mf_degree (int): total degree N of a multiplicity-free monomial

    Returns:
        int: dim_flag - N

    Raises:
        InvalidDegree: N is negative or larger than dim_flag
    """
    if max_mf_degree < 0 or max_mf_degree > dim_flag:
        raise InvalidDegree(f"total degree {max_mf_degree} is outside 0..{dim_flag}")
    return dim_flag - max_mf_degree


def build_report(rs: RootSystem, result: SearchResult) -> BoundReport:
    """
    Assemble the bound report of a finished search, checking it against the reference
    table. A paper_bound entry that an exhaustive run fails to reproduce is logged.
    """
    bound = candim_upper_bound(rs.dim_flag, result.max_degree)
    reference = reference_table(rs.datum.label)

    report = BoundReport(
        label=rs.label,
        rank=rs.rank,
        dim_flag=rs.dim_flag,
        max_mf_degree=result.max_degree,
        bound=bound,
        exhaustive=result.exhaustive,
        witness=WitnessRecord(degrees=list(result.witness.degrees.n), word=result.witness.word),
        reference=ReferenceRecord(kind=reference.kind, value=reference.value) if reference else None,
        known_value_note=reference.note if reference else None,
        stats=ReportStats(
            seconds=round(float(result.stats.get("seconds", 0.0)), 3),
            peak_bytes=int(result.stats.get("peak_bytes", 0)),
            worker_peak_bytes=int(result.stats.get("worker_peak_bytes", 0)),
        ),
        version=__version__,
    )

    if reference is not None and reference.kind == "paper_bound" and report.exhaustive and bound != reference.value:
        logger.warning("%s: exhaustive bound %d differs from the published bound %d", rs.label, bound, reference.value)
    return report
