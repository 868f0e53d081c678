"""
Render social capital reports as CSV or JSON lines.
"""

import io
import csv
import json
from decimal import Decimal, ROUND_HALF_EVEN
from typing import Dict, List, Sequence, Union

from social_capital.model import SCReport
import social_capital.defaults as Defaults


Number = Union[int, float]


def round_value(value: float, precision: int) -> Decimal:
    """Round half-to-even to the given number of decimal places."""

    return Decimal(repr(float(value))).quantize(Decimal(1).scaleb(-precision), rounding=ROUND_HALF_EVEN)


def format_number(value: float, precision: int) -> str:
    """Render a value at the given precision without trailing zeros."""

    rounded = round_value(value, precision)
    if rounded == rounded.to_integral_value():
        return str(int(rounded))

    return format(rounded.normalize(), 'f')


def json_number(value: float, precision: int) -> Number:
    text = format_number(value, precision)
    if '.' in text:
        return float(text)

    return int(text)


def _render(rows: List[Dict[str, object]], fields: Sequence[str], fmt: str) -> bytes:
    out = io.StringIO(newline='')
    if fmt == 'csv':
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(fields)
        for row in rows:
            writer.writerow([row[f] for f in fields])
    elif fmt == 'json-lines':
        for row in rows:
            out.write(json.dumps({f: row[f] for f in fields}) + '\n')
    else:
        raise ValueError(f'unknown report format: {fmt}')

    return out.getvalue().encode('utf-8')


def emit_report(report: SCReport, fmt: str = Defaults.OUTPUT_FORMAT, precision: int = Defaults.PRECISION) -> bytes:
    """Render one row per interval and agent.

    Parameters
    ----------
    report : SCReport
        Report to render.
    fmt : str
        'csv' for a comma separated table with header, 'json-lines'
        for one JSON object per row.
    precision : int
        Decimal places of rendered values.

    Returns
    -------
    bytes
        The rendered report.
    """

    number = format_number if fmt == 'csv' else json_number

    rows = []
    for r in report.rows:
        rows.append({'interval': r.interval,
                     'agent': r.agent_id,
                     'links': number(r.links, precision),
                     'relation': number(r.relation, precision),
                     'capacity': number(r.capacity, precision),
                     'benevolence': number(r.benevolence, precision),
                     'pbenevolence': number(r.potential_benevolence, precision),
                     'instant_sc': number(r.instant_sc, precision),
                     'accumulative_sc': number(r.accumulative_sc, precision),
                     'net_sc': number(r.net_sc, precision)})

    return _render(rows, Defaults.REPORT_FIELDS, fmt)


def emit_explain(report: SCReport, fmt: str = Defaults.OUTPUT_FORMAT, precision: int = Defaults.PRECISION) -> bytes:
    """Render the intermediate links, relations, and benevolence of a report."""

    number = format_number if fmt == 'csv' else json_number

    rows = [{'interval': r.interval,
             'section': r.section,
             'subtask': r.subtask,
             'source': r.source,
             'target': r.target,
             'value': number(r.value, precision)} for r in report.explain]

    return _render(rows, Defaults.EXPLAIN_FIELDS, fmt)
