"""
Per-cell summaries of trial tables.

Ratio columns (``ratio_*``, or ``ratio`` in approximation checks) are
summarized by median, quartiles, IQR and count within each group, which is
the numeric content of a box plot.
"""

from pathlib import Path
from typing import List, Sequence, Union

import pandas as pd

from src.utils.errors import ReportFormatError
from src.utils.logger import get_logger

logger = get_logger(__name__)

# Grouping keys recognised in trial tables, in output order
GROUP_CANDIDATES = ("cell", "family", "model", "N", "q", "B")

SUMMARY_COLUMNS = ("metric", "count", "median", "q25", "q75", "iqr")


def ratio_columns(frame: pd.DataFrame) -> List[str]:
    return [column for column in frame.columns if column == "ratio" or column.startswith("ratio_")]


def group_columns(frame: pd.DataFrame) -> List[str]:
    return [column for column in GROUP_CANDIDATES if column in frame.columns]


def aggregate_frame(frame: pd.DataFrame, metrics: Sequence[str] = ()) -> pd.DataFrame:
    """
    Long-format summary: one row per group and metric.

    Failed trials contribute nothing (their ratios are empty).

    Raises:
        ReportFormatError: the table has no ratio columns
    """
    metrics = list(metrics) or ratio_columns(frame)
    keys = group_columns(frame)
    if not metrics:
        raise ReportFormatError("no ratio columns to aggregate", columns=list(frame.columns))

    long = frame.melt(id_vars=keys, value_vars=metrics, var_name="metric", value_name="value")
    long = long.dropna(subset=["value"])
    grouped = long.groupby(keys + ["metric"], sort=True)["value"]

    summary = pd.DataFrame(
        {
            "count": grouped.count(),
            "median": grouped.median(),
            "q25": grouped.quantile(0.25),
            "q75": grouped.quantile(0.75),
        }
    ).reset_index()
    summary["iqr"] = summary["q75"] - summary["q25"]
    return summary[keys + list(SUMMARY_COLUMNS)]


def aggregate_trials(path: Union[str, Path]) -> pd.DataFrame:
    """Read a trial CSV and summarize its ratio columns."""
    try:
        frame = pd.read_csv(path)
    except (pd.errors.EmptyDataError, pd.errors.ParserError) as exc:
        raise ReportFormatError(f"unreadable trial table: {exc}", path=str(path))
    summary = aggregate_frame(frame)
    logger.info("Trials aggregated", path=str(path), rows=len(frame), groups=len(summary))
    return summary
