import json
import logging

import pytest

from social_capital import __version__
from social_capital.__main__ import get_cli_parser, main
import social_capital.defaults as Defaults

from conftest import EXAMPLE_CONFIG, EXAMPLE_LOG, record_line


@pytest.fixture(autouse=True)
def reset_logger():
    yield
    logger = logging.getLogger('timestamp')
    for handler in list(logger.handlers):
        logger.removeHandler(handler)


def run(argv):
    with pytest.raises(SystemExit) as e:
        main(argv)
    return e.value.code


def test_help_and_version(capsys):
    assert run([]) == 0
    assert 'compute' in capsys.readouterr().out

    assert run(['--version']) == 0
    assert __version__ in capsys.readouterr().out


def test_compute_with_config(tmp_path):
    output = tmp_path / 'report.csv'
    main(['compute', '--config', EXAMPLE_CONFIG, '-o', str(output), '--silent'])

    lines = output.read_text().splitlines()
    assert lines[0] == ','.join(Defaults.REPORT_FIELDS)
    assert len(lines) == 10
    assert lines[1].startswith('t1,Vin,204,204,21,4284,980,4.371,4.371,')
    assert lines[7].startswith('t3,Vin,301,444,21,9324,2185,4.267,12.84')


def test_compute_to_stdout(capsysbinary):
    main(['compute', '--config', EXAMPLE_CONFIG, '--silent'])
    out = capsysbinary.readouterr().out.decode('utf-8')
    assert out.splitlines()[2].startswith('t1,Oz,190,190,5,950,4314,0.22,0.22,')


def test_flags_override_config(tmp_path):
    output = tmp_path / 'report.jsonl'
    main(['compute', '--config', EXAMPLE_CONFIG, '--format', 'json-lines', '--precision', '1',
          '-o', str(output), '--silent'])

    rows = [json.loads(line) for line in output.read_text().splitlines()]
    assert len(rows) == 9
    assert rows[0]['instant_sc'] == 4.4
    assert rows[0]['links'] == 204


def test_compute_without_config(tmp_path):
    output = tmp_path / 'report.csv'
    main(['compute', '--input', EXAMPLE_LOG,
          '--intervals', '2013-01-01:2015-01-01,2015-01-01:2017-01-01,2017-01-01:2019-01-01',
          '--subgroup', 'Vin,Oz,Roh', '-o', str(output), '--silent'])

    lines = output.read_text().splitlines()
    assert lines[1].startswith('t1,Vin,204,204,21,4284,980,4.371,4.371,')
    assert lines[7].startswith('t3,Vin,301,301,21,6321,')


def test_compute_with_explain(tmp_path):
    output = tmp_path / 'report.csv'
    main(['compute', '--config', EXAMPLE_CONFIG, '--explain', '-o', str(output), '--silent'])

    explain = (tmp_path / 'report.csv.explain').read_text().splitlines()
    assert explain[0] == 'interval,section,subtask,source,target,value'
    assert 't1,explicit,AMRMClient.java,Oz,Roh,190' in explain


def test_explain(tmp_path):
    output = tmp_path / 'explain.csv'
    main(['explain', '--config', EXAMPLE_CONFIG, '-o', str(output), '--silent'])

    lines = output.read_text().splitlines()
    assert 't3,agent_relation,,Vin,,301' in lines
    assert 't3,pinned_relation,,Vin,,444' in lines
    assert 't3,pinned_relation,,Roh,,60' not in lines
    assert 't1,pbenevolence,,Vin,,980' in lines


def test_ingest(tmp_path):
    output = tmp_path / 'summary.txt'
    main(['ingest', '--config', EXAMPLE_CONFIG, '-o', str(output), '--silent'])

    lines = output.read_text().splitlines()
    assert lines[0] == '[Ingest Statistics]'
    assert 'No. records = 34' in lines
    assert 'No. contributors = 4' in lines
    assert 'No. events outside intervals = 1' in lines
    assert 't2 = 11' in lines


def test_config_failure(tmp_path):
    assert run(['compute', '--input', str(tmp_path / 'absent.jsonl'), '--intervals', '0:10', '--silent']) == 3
    assert run(['compute', '--input', EXAMPLE_LOG, '--intervals', '10:0', '--silent']) == 3
    assert run(['compute', '--input', EXAMPLE_LOG, '--silent']) == 3
    assert run(['compute', '--config', str(tmp_path / 'absent.toml'), '--silent']) == 3


def test_parse_failure(write_log):
    path = write_log([record_line(1, 'Vin', 'A.java', 1, 0, 'v1'), 'not json'])
    assert run(['compute', '--input', path, '--intervals', '0:10', '--silent']) == 2


def test_lenient(write_log, tmp_path):
    path = write_log([record_line(1, 'Vin', 'A.java', 1, 0, 'v1'),
                      'not json',
                      record_line(2, 'Oz', 'A.java', 3, 0, 'o1')])
    output = tmp_path / 'report.csv'
    main(['compute', '--input', path, '--intervals', '0:10', '--lenient', '-o', str(output), '--silent'])
    assert len(output.read_text().splitlines()) == 3


def test_no_data(write_log):
    empty = write_log([], name='empty.jsonl')
    assert run(['compute', '--input', empty, '--intervals', '0:10', '--silent']) == 4
    assert run(['compute', '--input', EXAMPLE_LOG, '--intervals', '0:10', '--silent']) == 4


def test_parser_defaults_are_unset():
    args = get_cli_parser().parse_args(['compute'])
    assert args.tau is None
    assert args.lambda_ is None
    assert args.precision is None
    assert args.carry_links is False
