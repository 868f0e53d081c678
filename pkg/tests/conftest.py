import os
import json
from types import SimpleNamespace

import pytest

from social_capital.model import InteractionEvent, LinkKind, LinkState
from social_capital.run_config import RunConfig
import social_capital.defaults as Defaults


EXAMPLE_LOG = os.path.join(Defaults.EXAMPLE_DIR, 'table1_events.jsonl')
EXAMPLE_CONFIG = os.path.join(Defaults.EXAMPLE_DIR, 'table1_config.toml')

PACKAGE = 'org.apache.hadoop.yarn.client.api'

# 2013-01-01, 2015-01-01, 2017-01-01, 2019-01-01 (UTC)
TABLE1_INTERVALS = [(1356998400, 1420070400),
                    (1420070400, 1483228800),
                    (1483228800, 1546300800)]

# interval, agent, links, relation, capacity, benevolence, pbenevolence, instant_sc, accumulative_sc
TABLE1_ROWS = [
    ('t1', 'Vin', 204, 204, 21, 4284, 980, 4.371, 4.371),
    ('t1', 'Oz', 190, 190, 5, 950, 4314, 0.221, 0.221),
    ('t1', 'Roh', 10, 10, 3, 30, 5234, 0.006, 0.006),
    ('t2', 'Vin', 367, 367, 21, 7707, 1831, 4.209, 8.58),
    ('t2', 'Oz', 365, 365, 5, 1825, 7713, 0.236, 0.457),
    ('t2', 'Roh', 2, 2, 3, 6, 9532, 0.001, 0.007),
    ('t3', 'Vin', 301, 444, 21, 9324, 2185, 4.267, 12.847),
    ('t3', 'Oz', 103, 401, 5, 2005, 9504, 0.211, 0.668),
    ('t3', 'Roh', 60, 60, 3, 180, 11329, 0.015, 0.022),
]

TABLE1_NET_SC = {'t1': 4.598, 't2': 9.044, 't3': 13.537}


def explicit(source, target, value, subtask_id='A.java'):
    return LinkState(source=source, target=target, subtask_id=subtask_id, value=value, kind=LinkKind.EXPLICIT)


def event(agent_id, timestamp, added, deleted=0, subtask_id='A.java', commit_id=None, task_id='pkg'):
    return InteractionEvent(timestamp=timestamp,
                            agent_id=agent_id,
                            task_id=task_id,
                            subtask_id=subtask_id,
                            lines_added=added,
                            lines_deleted=deleted,
                            commit_id=commit_id or f'{agent_id}-{timestamp}')


def record_line(timestamp, contributor, class_name, added, deleted, commit_id, package=PACKAGE):
    return json.dumps({'timestamp': timestamp,
                       'contributor': contributor,
                       'package': package,
                       'class': class_name,
                       'lines_added': added,
                       'lines_deleted': deleted,
                       'commit': commit_id})


@pytest.fixture
def table1_config():
    """Run configuration of the example contribution log."""

    config = RunConfig()
    config.from_toml_file(EXAMPLE_CONFIG)

    return config.validate()


@pytest.fixture
def write_log(tmp_path):
    """Write lines to a log file in a temporary directory and return its path."""

    def _write(lines, name='log.jsonl'):
        path = tmp_path / name
        path.write_text(''.join(line + '\n' for line in lines), encoding='utf-8')
        return str(path)

    return _write


@pytest.fixture
def cli_args():
    """Namespace of CLI arguments with every flag unset."""

    def _args(**kwargs):
        values = dict(subparser_name='compute',
                      input=None,
                      config=None,
                      intervals=None,
                      goal=None,
                      task=None,
                      subgroup=None,
                      lenient=False,
                      tau=None,
                      lambda_=None,
                      belief=None,
                      format=None,
                      precision=None,
                      carry_links=False,
                      explain=False,
                      output=None,
                      log_dir=None,
                      silent=True)
        values.update(kwargs)
        return SimpleNamespace(**values)

    return _args
