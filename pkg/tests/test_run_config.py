import os

import pytest

from social_capital.__main__ import exit_code
from social_capital.capital_engine import BeliefMode
from social_capital.exceptions import ConfigError
from social_capital.run_config import RunConfig, parse_intervals, parse_time

from conftest import EXAMPLE_LOG, PACKAGE, TABLE1_INTERVALS


def test_example_config(table1_config):
    assert os.path.samefile(table1_config.input, EXAMPLE_LOG)
    assert table1_config.intervals == TABLE1_INTERVALS
    assert table1_config.subgroup == ['Vin', 'Oz', 'Roh']
    assert table1_config.task == PACKAGE
    assert table1_config.pinned_relations == {'t3': {'Vin': 444.0, 'Oz': 401.0}}
    assert table1_config.belief_config().mode == BeliefMode.RATIO


@pytest.mark.parametrize('value, expected', [
    (1356998400, 1356998400),
    ('1356998400', 1356998400),
    ('2013-01-01', 1356998400),
    (' 2015-01-01 ', 1420070400),
])
def test_parse_time(value, expected):
    assert parse_time(value) == expected


@pytest.mark.parametrize('value', ['soon', True, '2013-13-01'])
def test_parse_time_invalid(value):
    with pytest.raises(ConfigError):
        parse_time(value)


def test_parse_intervals():
    assert parse_intervals('0:10, 10:20,') == [(0, 10), (10, 20)]
    assert parse_intervals('2013-01-01:2015-01-01') == [TABLE1_INTERVALS[0]]
    with pytest.raises(ConfigError):
        parse_intervals('0-10')


def test_flags_override_file(table1_config, cli_args):
    table1_config.update_from_args(cli_args(tau=2.5, lambda_=0.3, belief='exp', precision=1,
                                            subgroup='Vin, Oz', carry_links=True, lenient=True,
                                            intervals='0:10'))
    assert table1_config.tau == 2.5
    assert table1_config.lam == 0.3
    assert table1_config.belief == 'exp'
    assert table1_config.precision == 1
    assert table1_config.subgroup == ['Vin', 'Oz']
    assert table1_config.carry_links
    assert not table1_config.strict
    assert table1_config.intervals == [(0, 10)]


def test_unset_flags_keep_file_values(table1_config, cli_args):
    table1_config.update_from_args(cli_args())
    assert table1_config.subgroup == ['Vin', 'Oz', 'Roh']
    assert table1_config.precision == 3
    assert table1_config.strict


@pytest.mark.parametrize('changes, message', [
    ({'input': None}, 'no input file'),
    ({'input': '/nonexistent/log.jsonl'}, 'does not exist'),
    ({'intervals': []}, 'no intervals'),
    ({'intervals': [(0, 10), (5, 15)]}, 'overlapping intervals'),
    ({'precision': -1}, 'precision'),
    ({'tau': -0.5}, 'tau'),
    ({'lam': -1.0}, 'lambda'),
    ({'belief': 'linear'}, 'belief'),
    ({'format': 'xml'}, 'format'),
    ({'net_mode': 'total'}, 'net_mode'),
    ({'capacity_source': 'guess'}, 'capacity_source'),
    ({'max_path_hops': 0}, 'max_path_hops'),
    ({'subgroup': []}, 'subgroup'),
])
def test_validate(changes, message):
    config = RunConfig(input=EXAMPLE_LOG, intervals=list(TABLE1_INTERVALS))
    for key, value in changes.items():
        setattr(config, key, value)
    with pytest.raises(ConfigError, match=message) as e:
        config.validate()
    assert e.value.stage == 'cli-report'


def test_profiles_from_file(tmp_path):
    config_file = tmp_path / 'run.toml'
    config_file.write_text(
        'input = "log.jsonl"\n'
        'intervals = [[0, 10]]\n'
        'capacity_source = "profile"\n'
        '[profiles.Vin]\n'
        'capability = 10\n'
        'willingness = {"pkg" = 11}\n'
        'availability = 1.0\n')
    (tmp_path / 'log.jsonl').write_text('')

    config = RunConfig()
    config.from_toml_file(str(config_file))
    config.validate()

    profile = config.profiles['Vin']
    assert profile.capability_for('pkg') == 10
    assert profile.willingness_for('pkg') == 11
    assert profile.willingness_for('other') == 0
    assert config.input == str(tmp_path / 'log.jsonl')


def test_invalid_profile(tmp_path):
    config_file = tmp_path / 'run.toml'
    config_file.write_text(f'input = "{EXAMPLE_LOG}"\nintervals = [[0, 10]]\n[profiles.Vin]\navailability = 1.5\n')

    config = RunConfig()
    config.from_toml_file(str(config_file))
    with pytest.raises(ConfigError, match=r'availability out of \[0,1\]'):
        config.validate()


def test_invalid_toml(tmp_path):
    config_file = tmp_path / 'run.toml'
    config_file.write_text('tau = = 1\n')
    with pytest.raises(ConfigError, match='Invalid config file'):
        RunConfig().from_toml_file(str(config_file))

    config_file.write_text('precision = "three"\n')
    with pytest.raises(ConfigError, match='precision'):
        RunConfig().from_toml_file(str(config_file))


@pytest.mark.parametrize('table, message', [
    ('[pinned_relations.t3]\nVin = "high"\n', 'invalid pinned relations for t3'),
    ('[pinned_relations]\nt3 = 444\n', 'invalid pinned relations for t3'),
    ('[profiles.Vin]\nwillingness = {"pkg" = "eager"}\n', 'profile Vin: invalid willingness'),
    ('[profiles.Vin]\ncapability = [1, 2]\n', 'profile Vin: invalid capability'),
    ('[profiles]\nVin = 3\n', 'profile Vin must be a table'),
])
def test_invalid_tables(tmp_path, table, message):
    config_file = tmp_path / 'run.toml'
    config_file.write_text(table)
    with pytest.raises(ConfigError, match=message):
        RunConfig().from_toml_file(str(config_file))


def test_invalid_pinned_relation_exit_code(tmp_path):
    config_file = tmp_path / 'run.toml'
    config_file.write_text('[pinned_relations.t1]\nVin = "high"\n')
    with pytest.raises(ConfigError) as e:
        RunConfig().from_toml_file(str(config_file))
    assert exit_code(e.value) == 3
