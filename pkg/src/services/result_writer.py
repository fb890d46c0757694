"""CSV/JSON serialization of result rows."""

import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import pandas as pd

from src.models.enums import OutputFormat


def rows_to_frame(
    rows: Sequence[Dict[str, Any]], columns: Optional[Sequence[str]] = None
) -> pd.DataFrame:
    frame = pd.DataFrame(list(rows))
    if columns is not None:
        frame = frame.reindex(columns=list(columns))
    return frame


def format_rows(
    rows: Sequence[Dict[str, Any]],
    fmt: OutputFormat = OutputFormat.CSV,
    columns: Optional[Sequence[str]] = None,
) -> str:
    """Render rows deterministically; None becomes an empty CSV cell or JSON null."""
    if fmt is OutputFormat.JSON:
        ordered: List[Dict[str, Any]] = [
            {column: row.get(column) for column in columns} if columns else dict(row)
            for row in rows
        ]
        return json.dumps(ordered, indent=2, default=str) + "\n"
    return rows_to_frame(rows, columns).to_csv(index=False, lineterminator="\n")


def format_document(document: Any) -> str:
    return json.dumps(document, indent=2, default=str) + "\n"


def emit(text: str, out: Optional[Union[str, Path]] = None) -> None:
    """Write to ``out`` or to stdout."""
    if out is None or str(out) == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")
