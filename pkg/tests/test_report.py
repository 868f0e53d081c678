import json

import pytest

from social_capital.model import ExplainRecord, ReportRow, SCReport
from social_capital.report import emit_explain, emit_report, format_number, json_number, round_value

from conftest import TABLE1_NET_SC, TABLE1_ROWS


HEADER = 'interval,agent,links,relation,capacity,benevolence,pbenevolence,instant_sc,accumulative_sc,net_sc'


def table1_report():
    rows = [ReportRow(*values, net_sc=TABLE1_NET_SC[values[0]]) for values in TABLE1_ROWS]
    return SCReport('pkg', ['t1', 't2', 't3'], rows, dict(TABLE1_NET_SC))


def test_csv_report():
    lines = emit_report(table1_report()).decode('utf-8').splitlines()
    assert lines[0] == HEADER
    assert lines[1] == 't1,Vin,204,204,21,4284,980,4.371,4.371,4.598'
    assert lines[4] == 't2,Vin,367,367,21,7707,1831,4.209,8.58,9.044'
    assert lines[9] == 't3,Roh,60,60,3,180,11329,0.015,0.022,13.537'
    assert len(lines) == 10


def test_empty_report():
    assert emit_report(SCReport('pkg')) == (HEADER + '\n').encode('utf-8')
    assert emit_report(SCReport('pkg'), 'json-lines') == b''


def test_precision():
    row = ReportRow('t1', 'Vin', 204, 204, 21, 4284, 980, 4.371, 4.371, 4.598)
    line = emit_report(SCReport('pkg', ['t1'], [row]), precision=1).decode('utf-8').splitlines()[1]
    assert line == 't1,Vin,204,204,21,4284,980,4.4,4.4,4.6'


def test_json_lines_report():
    lines = emit_report(table1_report(), 'json-lines').decode('utf-8').splitlines()
    assert len(lines) == 9
    first = json.loads(lines[0])
    assert list(first) == HEADER.split(',')
    assert first == {'interval': 't1', 'agent': 'Vin', 'links': 204, 'relation': 204, 'capacity': 21,
                     'benevolence': 4284, 'pbenevolence': 980, 'instant_sc': 4.371,
                     'accumulative_sc': 4.371, 'net_sc': 4.598}


@pytest.mark.parametrize('value, precision, expected', [
    (204.0, 3, '204'),
    (8.58, 3, '8.58'),
    (4.3714285714, 3, '4.371'),
    (0.0125, 3, '0.012'),
    (0.0135, 3, '0.014'),
    (2.5, 0, '2'),
    (3.5, 0, '4'),
    (0.0004, 3, '0'),
    (13.5369999, 3, '13.537'),
])
def test_format_number(value, precision, expected):
    assert format_number(value, precision) == expected


def test_round_and_json_number():
    assert str(round_value(4.371, 2)) == '4.37'
    assert json_number(204.0, 3) == 204
    assert isinstance(json_number(204.0, 3), int)
    assert json_number(0.2214, 3) == 0.221


def test_explain():
    report = SCReport('pkg', ['t1'], explain=[ExplainRecord('t1', 'explicit', 'A.java', 'Vin', 'Oz', 204.0),
                                              ExplainRecord('t1', 'capacity', '', 'Vin', '', 21.0)])
    lines = emit_explain(report).decode('utf-8').splitlines()
    assert lines == ['interval,section,subtask,source,target,value',
                     't1,explicit,A.java,Vin,Oz,204',
                     't1,capacity,,Vin,,21']

    records = [json.loads(line) for line in emit_explain(report, 'json-lines').decode('utf-8').splitlines()]
    assert records[0]['value'] == 204


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_report(table1_report(), 'xml')
