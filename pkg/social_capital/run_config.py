"""
Configuration of a social capital run.

Values come from built-in defaults, then a TOML config file, then
command line flags; later sources win.
"""

import os
import math
import calendar
import datetime
import tomllib
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from social_capital.capital_engine import BeliefConfig
from social_capital.exceptions import ConfigError, ValidationError
from social_capital.model import ANY_TASK, AgentProfile, build_hierarchy, validate_profile
import social_capital.defaults as Defaults


def parse_time(value: Any) -> int:
    """Epoch seconds of an integer, a string of digits, or an ISO date (UTC midnight)."""

    if isinstance(value, bool):
        raise ConfigError(f'invalid time: {value!r}')

    if isinstance(value, int):
        return value

    if isinstance(value, datetime.datetime):
        return calendar.timegm(value.utctimetuple())

    if isinstance(value, datetime.date):
        return calendar.timegm(value.timetuple())

    text = str(value).strip()
    if text.lstrip('-').isdigit():
        return int(text)

    try:
        return calendar.timegm(datetime.date.fromisoformat(text).timetuple())
    except ValueError:
        raise ConfigError(f'invalid time: {value!r}')


def parse_intervals(text: str) -> List[Tuple[int, int]]:
    """Intervals from a "s1:e1,s2:e2,..." string."""

    intervals = []
    for token in text.split(','):
        token = token.strip()
        if not token:
            continue
        if token.count(':') != 1:
            raise ConfigError(f'invalid interval "{token}"; expected start:end')
        start, end = token.split(':')
        intervals.append((parse_time(start), parse_time(end)))

    return intervals


def _number(value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise TypeError(f'not a number: {value!r}')

    return float(value)


def _profile_values(agent_id: str, name: str, value: Any) -> Dict[str, float]:
    if value is None:
        return {}

    if isinstance(value, dict):
        try:
            return {str(task_id): _number(v) for task_id, v in value.items()}
        except (TypeError, ValueError):
            raise ConfigError(f'profile {agent_id}: invalid {name} {value!r}')

    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return {ANY_TASK: float(value)}

    raise ConfigError(f'profile {agent_id}: invalid {name} {value!r}')


@dataclass
class RunConfig:
    input: Optional[str] = None
    intervals: List[Tuple[int, int]] = field(default_factory=list)
    tau: float = Defaults.TAU
    lam: float = Defaults.LAMBDA
    belief: str = Defaults.BELIEF_MODE
    subgroup: Optional[List[str]] = None
    format: str = Defaults.OUTPUT_FORMAT
    precision: int = Defaults.PRECISION
    goal: str = Defaults.GOAL_ID
    task: Optional[str] = None
    carry_links: bool = False
    net_mode: str = Defaults.NET_MODE
    capacity_source: str = Defaults.CAPACITY_SOURCE
    max_path_hops: Optional[int] = Defaults.MAX_PATH_HOPS
    strict: bool = True
    pinned_relations: Dict[str, Dict[str, float]] = field(default_factory=dict)
    profiles: Dict[str, AgentProfile] = field(default_factory=dict)

    def from_toml_file(self, config_file: str) -> None:
        """Set run configuration based on fields in TOML file."""

        try:
            with open(config_file, 'rb') as f:
                config = tomllib.load(f)
        except FileNotFoundError:
            raise ConfigError(f'Config file {config_file} does not exist.')
        except tomllib.TOMLDecodeError as e:
            raise ConfigError(f'Invalid config file {config_file}: {e}')

        config_dir = os.path.dirname(os.path.abspath(config_file))

        if 'input' in config:
            input_file = str(config['input'])
            if not os.path.isabs(input_file):
                input_file = os.path.join(config_dir, input_file)
            self.input = input_file

        if 'intervals' in config:
            try:
                self.intervals = [(parse_time(start), parse_time(end)) for start, end in config['intervals']]
            except (TypeError, ValueError):
                raise ConfigError('intervals must be a list of [start, end] pairs')

        for key, attr, cast in (('tau', 'tau', float),
                                ('lambda', 'lam', float),
                                ('belief', 'belief', str),
                                ('format', 'format', str),
                                ('precision', 'precision', int),
                                ('goal', 'goal', str),
                                ('task', 'task', str),
                                ('carry_links', 'carry_links', bool),
                                ('net_mode', 'net_mode', str),
                                ('capacity_source', 'capacity_source', str),
                                ('max_path_hops', 'max_path_hops', int),
                                ('strict', 'strict', bool)):
            if key in config:
                try:
                    setattr(self, attr, cast(config[key]))
                except (TypeError, ValueError):
                    raise ConfigError(f'invalid value for {key}: {config[key]!r}')

        if 'subgroup' in config:
            self.subgroup = [str(agent_id) for agent_id in config['subgroup']]

        for label, agents in config.get('pinned_relations', {}).items():
            try:
                self.pinned_relations[str(label)] = {str(agent_id): _number(value)
                                                     for agent_id, value in agents.items()}
            except (AttributeError, TypeError, ValueError):
                raise ConfigError(f'invalid pinned relations for {label}: {agents!r}')

        for agent_id, profile in config.get('profiles', {}).items():
            if not isinstance(profile, dict):
                raise ConfigError(f'profile {agent_id} must be a table')
            self.profiles[agent_id] = AgentProfile(
                agent_id=agent_id,
                capability=_profile_values(agent_id, 'capability', profile.get('capability')),
                willingness=_profile_values(agent_id, 'willingness', profile.get('willingness')),
                availability=_profile_values(agent_id, 'availability', profile.get('availability')))

    def update_from_args(self, args) -> None:
        """Override configuration with command line flags that were given."""

        overrides = {'input': 'input',
                     'tau': 'tau',
                     'lambda_': 'lam',
                     'belief': 'belief',
                     'format': 'format',
                     'precision': 'precision',
                     'goal': 'goal',
                     'task': 'task'}
        for arg_name, attr in overrides.items():
            value = getattr(args, arg_name, None)
            if value is not None:
                setattr(self, attr, value)

        if getattr(args, 'intervals', None):
            self.intervals = parse_intervals(args.intervals)

        if getattr(args, 'subgroup', None):
            self.subgroup = [agent_id.strip() for agent_id in args.subgroup.split(',') if agent_id.strip()]

        if getattr(args, 'carry_links', False):
            self.carry_links = True

        if getattr(args, 'lenient', False):
            self.strict = False

    def belief_config(self) -> BeliefConfig:
        return BeliefConfig(lam=self.lam, mode=self.belief)

    def validate(self) -> 'RunConfig':
        """Check the configuration is complete and consistent.

        Raises
        ------
        ConfigError
            If any setting is missing or invalid.
        """

        if not self.input:
            raise ConfigError('no input file given')
        if not os.path.exists(self.input):
            raise ConfigError(f'Input file {self.input} does not exist.')

        if not self.intervals:
            raise ConfigError('no intervals given')
        try:
            build_hierarchy(self.goal, [(self.goal, [])], self.intervals)
        except ValidationError as e:
            raise ConfigError(f'invalid intervals: {e}')

        for name, value in (('tau', self.tau), ('lambda', self.lam)):
            if not math.isfinite(value) or value < 0:
                raise ConfigError(f'{name} must be non-negative: {value}')

        if self.precision < 0:
            raise ConfigError(f'precision must be non-negative: {self.precision}')

        if self.max_path_hops is not None and self.max_path_hops < 1:
            raise ConfigError(f'max_path_hops must be at least 1: {self.max_path_hops}')

        for name, value, allowed in (('belief', self.belief, Defaults.BELIEF_MODES),
                                     ('format', self.format, Defaults.OUTPUT_FORMATS),
                                     ('net_mode', self.net_mode, Defaults.NET_MODES),
                                     ('capacity_source', self.capacity_source, Defaults.CAPACITY_SOURCES)):
            if value not in allowed:
                raise ConfigError(f'{name} must be one of {", ".join(allowed)}: {value}')

        if self.subgroup is not None and not self.subgroup:
            raise ConfigError('subgroup must list at least one agent')

        for profile in self.profiles.values():
            try:
                validate_profile(profile)
            except ValidationError as e:
                raise ConfigError(f'invalid profile: {e}')

        return self
