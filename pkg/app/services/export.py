"""CSV / JSON table writers; both encode the same numbers rounded to settings.float_digits."""
import csv
import io
import json
import logging
import math
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from pydantic import BaseModel

from config import settings
from schemas.cycle import CycleReport
from schemas.run import OutputFormat, RunSpec, TableDocument

logger = logging.getLogger(__name__)


def round_float(value: float, digits: Optional[int] = None) -> float:
    if not math.isfinite(value):
        return value
    return float(f"{value:.{digits or settings.float_digits}g}")


def _normalise(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        return round_float(value)
    if isinstance(value, Enum):
        return value.value
    return value


def to_records(rows: Sequence[Union[BaseModel, Dict[str, Any]]]) -> List[Dict[str, Any]]:
    """Flat dict per row, floats rounded; rows are flat models or flat dicts."""
    records = []
    for row in rows:
        data = row if isinstance(row, dict) else row.model_dump()
        records.append({k: _normalise(v) for k, v in data.items()})
    return records


def report_record(report: CycleReport) -> Dict[str, Any]:
    config, perf = report.config, report.performance
    return {
        "medium": config.medium,
        "omega1": config.omega1,
        "omega2": config.omega2,
        "T_h": config.hot.temperature,
        "T_c": config.cold.temperature,
        "r": config.hot.squeeze_r,
        "phi": config.hot.squeeze_phi,
        **report.ledger.model_dump(),
        "W_total": perf.W_total,
        "Q_H": perf.Q_H,
        "eta": perf.eta,
        "eta_from_heats": perf.eta_from_heats,
        "eta_carnot": perf.eta_carnot,
        "eta_curzon_ahlborn": perf.eta_curzon_ahlborn,
        "regime": perf.regime,
        "surpasses_carnot": perf.surpasses_carnot,
        "first_law_residual": report.first_law_residual,
        "t_eff_omega1": report.t_eff_omega1,
        "t_eff_omega2": report.t_eff_omega2,
    }


def _csv_cell(value: Any) -> str:
    # empty cell, like null in JSON
    if value is None or (isinstance(value, float) and not math.isfinite(value)):
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.{settings.float_digits}g}"
    return str(value)


def render_csv(records: List[Dict[str, Any]]) -> str:
    buffer = io.StringIO()
    if not records:
        return ""
    writer = csv.writer(buffer, lineterminator="\n")
    columns = list(records[0].keys())
    writer.writerow(columns)
    for record in records:
        writer.writerow([_csv_cell(record.get(c)) for c in columns])
    return buffer.getvalue()


def build_document(meta: RunSpec, rows: Sequence[Union[BaseModel, Dict[str, Any]]]) -> TableDocument:
    return TableDocument(meta=meta, rows=to_records(rows))


def render_json(document: TableDocument) -> str:
    # NaN/inf are not valid JSON numbers
    payload = document.model_dump(mode="json")
    payload["rows"] = [
        {k: (None if isinstance(v, float) and not math.isfinite(v) else v) for k, v in row.items()}
        for row in payload["rows"]
    ]
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def render(document: TableDocument) -> str:
    if document.meta.format is OutputFormat.JSON:
        return render_json(document)
    return render_csv(document.rows)


def write_table(document: TableDocument, path: Optional[str] = None) -> str:
    """Render and, when a path is given, write UTF-8 with LF endings. Returns the rendered text."""
    text = render(document)
    if path:
        try:
            Path(path).write_text(text, encoding="utf-8", newline="\n")
        except OSError as e:
            raise OSError(f"Cannot write output to {path}: {e.strerror}") from e
        logger.info(f"Wrote {len(document.rows)} rows to {path}")
    return text
