"""
Methods for reading contribution logs.

Logs hold one contribution record per line, either as JSON lines or as
a comma/tab separated table with a header row. All functions support
reading Gzip compressed files as determined by files ending in `.gz`.
"""

import os
import csv
import gzip
import json
import logging
from dataclasses import dataclass, field
from typing import Any, Iterable, List, Mapping, Optional, Tuple

from social_capital.exceptions import ParseError
import social_capital.defaults as Defaults


@dataclass(frozen=True)
class ContributionRecord:
    """Lines one contributor changed in one class of one package."""

    timestamp: int
    contributor: str
    package: str
    class_name: str
    lines_added: int
    lines_deleted: int
    commit_id: str

    @property
    def value(self) -> int:
        return self.lines_added + self.lines_deleted


@dataclass
class ParseStats:
    """Tally of a pass over a contribution log."""

    lines: int = 0
    records: int = 0
    malformed: List[ParseError] = field(default_factory=list)

    @property
    def skipped(self) -> int:
        return len(self.malformed)


def log_format(log_file: str) -> str:
    """Format of a log file as determined by its extension."""

    prefix, ext = os.path.splitext(log_file)
    if ext == '.gz':
        _prefix, ext = os.path.splitext(prefix)

    if ext in Defaults.JSON_LOG_EXTENSIONS:
        return 'jsonl'

    if ext in Defaults.TABLE_LOG_EXTENSIONS:
        return ext[1:]

    raise ParseError(f'unrecognized extension for contribution log: {log_file}', line_number=0)


def _parse_int(fields: Mapping[str, Any], name: str, line_number: int) -> int:
    value = fields[name]
    if isinstance(value, bool):
        raise ParseError(f'field "{name}" must be an integer', line_number, field=name)

    try:
        if isinstance(value, float):
            if not value.is_integer():
                raise ValueError(value)
            value = int(value)
        else:
            value = int(str(value).strip())
    except ValueError:
        raise ParseError(f'field "{name}" must be an integer: {fields[name]!r}', line_number, field=name)

    return value


def record_from_fields(fields: Mapping[str, Any], line_number: int) -> ContributionRecord:
    """Create a contribution record from named fields.

    Parameters
    ----------
    fields : dict[field name] -> value
        Fields of one log line.
    line_number : int
        Line the fields were read from, for error reporting.

    Returns
    -------
    ContributionRecord
        The record.

    Raises
    ------
    ParseError
        If a field is missing, empty, or not of the expected type.
    """

    for name in Defaults.RECORD_FIELDS:
        value = fields.get(name)
        if value is None or (isinstance(value, str) and not value.strip()):
            raise ParseError(f'missing field "{name}"', line_number, field=name)

    timestamp = _parse_int(fields, 'timestamp', line_number)
    lines_added = _parse_int(fields, 'lines_added', line_number)
    lines_deleted = _parse_int(fields, 'lines_deleted', line_number)
    for name, value in (('lines_added', lines_added), ('lines_deleted', lines_deleted)):
        if value < 0:
            raise ParseError(f'field "{name}" must be non-negative: {value}', line_number, field=name)

    return ContributionRecord(timestamp=timestamp,
                              contributor=str(fields['contributor']).strip(),
                              package=str(fields['package']).strip(),
                              class_name=str(fields['class']).strip(),
                              lines_added=lines_added,
                              lines_deleted=lines_deleted,
                              commit_id=str(fields['commit']).strip())


def _numbered_lines(lines: Iterable[str]) -> Iterable[Tuple[int, str]]:
    """Non-blank, non-comment lines with their 1-based line numbers."""

    for line_number, line in enumerate(lines, start=1):
        line = line.rstrip('\r\n')
        if not line.strip() or line.lstrip().startswith('#'):
            continue
        yield line_number, line


def _json_fields(lines: Iterable[Tuple[int, str]]) -> Iterable[Tuple[int, Any]]:
    for line_number, line in lines:
        try:
            fields = json.loads(line)
        except json.JSONDecodeError as e:
            yield line_number, ParseError(f'malformed JSON: {e.msg}', line_number)
            continue

        if not isinstance(fields, dict):
            yield line_number, ParseError('expected a JSON object', line_number)
            continue

        yield line_number, fields


def _table_fields(lines: Iterable[Tuple[int, str]], delimiter: str) -> Iterable[Tuple[int, Any]]:
    header = None
    for line_number, line in lines:
        row = next(csv.reader([line], delimiter=delimiter))
        if header is None:
            header = [name.strip() for name in row]
            missing = [name for name in Defaults.RECORD_FIELDS if name not in header]
            if missing:
                yield line_number, ParseError(f'header is missing field "{missing[0]}"',
                                              line_number, field=missing[0])
                return
            continue

        if len(row) != len(header):
            yield line_number, ParseError(f'expected {len(header)} columns, found {len(row)}', line_number)
            continue

        yield line_number, dict(zip(header, row))


def parse_log(lines: Iterable[str],
              fmt: str = 'jsonl',
              strict: bool = True,
              stats: Optional[ParseStats] = None) -> List[ContributionRecord]:
    """Parse contribution records from lines of text.

    Parameters
    ----------
    lines : iterable of str
        Lines of the log.
    fmt : str
        One of 'jsonl', 'csv', or 'tsv'.
    strict : bool
        Abort on the first malformed line if True, otherwise skip and
        tally malformed lines.
    stats : ParseStats
        Tally updated with the lines read and malformed lines found.

    Returns
    -------
    list[ContributionRecord]
        Records in input order.
    """

    if stats is None:
        stats = ParseStats()

    numbered = _numbered_lines(lines)
    if fmt == 'jsonl':
        fields_iter = _json_fields(numbered)
    elif fmt in ('csv', 'tsv'):
        fields_iter = _table_fields(numbered, Defaults.TABLE_LOG_EXTENSIONS[f'.{fmt}'])
    else:
        raise ParseError(f'unknown log format: {fmt}', line_number=0)

    logger = logging.getLogger('timestamp')

    records = []
    for line_number, fields in fields_iter:
        stats.lines = line_number
        try:
            if isinstance(fields, ParseError):
                raise fields
            records.append(record_from_fields(fields, line_number))
        except ParseError as e:
            if strict:
                raise
            logger.warning(f'Skipping malformed {e}')
            stats.malformed.append(e)

    stats.records = len(records)

    return records


def read_log(log_file: str, strict: bool = True, stats: Optional[ParseStats] = None) -> List[ContributionRecord]:
    """Read contribution records from a log file.

    Parameters
    ----------
    log_file : str
        Name of the log file; the format is determined by its extension.
    strict : bool
        Abort on the first malformed line if True.
    stats : ParseStats
        Tally updated while reading.

    Returns
    -------
    list[ContributionRecord]
        Records in file order.
    """

    if not os.path.exists(log_file):
        raise FileNotFoundError(f'Input file {log_file} does not exist.')

    fmt = log_format(log_file)

    if os.stat(log_file).st_size == 0:
        return []

    open_file = open
    if log_file.endswith('.gz'):
        open_file = gzip.open

    with open_file(log_file, 'rt', encoding='utf-8', newline='') as f:
        return parse_log(f, fmt, strict, stats)
