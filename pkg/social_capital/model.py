"""
Domain types shared by the link and capital engines.

Values are constructed once and never mutated. The validate_* functions
return their argument unchanged when every invariant holds, so
revalidating a validated value is a no-op.
"""

import math
import bisect
from enum import Enum
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from social_capital.exceptions import ValidationError


# profile values keyed by task id; this key applies to every task
ANY_TASK = '*'


@dataclass(frozen=True)
class AgentProfile:
    """Inputs to the capacity of an agent, per task."""

    agent_id: str
    capability: Dict[str, float] = field(default_factory=dict)
    willingness: Dict[str, float] = field(default_factory=dict)
    availability: Dict[str, float] = field(default_factory=dict)

    def _for_task(self, values: Dict[str, float], task_id: str) -> float:
        if task_id in values:
            return values[task_id]

        return values.get(ANY_TASK, 0.0)

    def capability_for(self, task_id: str) -> float:
        return self._for_task(self.capability, task_id)

    def willingness_for(self, task_id: str) -> float:
        return self._for_task(self.willingness, task_id)

    def availability_for(self, task_id: str) -> float:
        return self._for_task(self.availability, task_id)


def validate_profile(profile: AgentProfile) -> AgentProfile:
    """Check capability, willingness, and availability of a profile.

    Parameters
    ----------
    profile : AgentProfile
        Profile to validate.

    Returns
    -------
    AgentProfile
        The profile, unchanged.

    Raises
    ------
    ValidationError
        If a value is out of range; the error names the offending field.
    """

    if not profile.agent_id:
        raise ValidationError('agent_id must be non-empty', field='agent_id')

    for field_name in ('capability', 'willingness'):
        for task_id, value in getattr(profile, field_name).items():
            if not math.isfinite(value) or value < 0:
                raise ValidationError(
                    f'{field_name} must be non-negative and finite (agent {profile.agent_id}, task {task_id})',
                    field=field_name)

    for task_id, value in profile.availability.items():
        if not (0.0 <= value <= 1.0):
            raise ValidationError(
                f'availability out of [0,1] (agent {profile.agent_id}, task {task_id})',
                field='availability')

    return profile


@dataclass(frozen=True)
class Interval:
    """Half-open time window [start, end) in epoch seconds."""

    start: int
    end: int
    label: str = ''

    def __contains__(self, timestamp: int) -> bool:
        return self.start <= timestamp < self.end


@dataclass(frozen=True)
class TaskHierarchy:
    """Goal decomposed into tasks and subtasks, measured over ordered intervals."""

    goal_id: str
    tasks: Tuple[str, ...]
    subtasks: Dict[str, Tuple[str, ...]]
    intervals: Tuple[Interval, ...]

    def interval_index(self, timestamp: int) -> Optional[int]:
        """Index of the interval containing timestamp, or None if outside all intervals."""

        starts = [interval.start for interval in self.intervals]
        idx = bisect.bisect_right(starts, timestamp) - 1
        if idx >= 0 and timestamp in self.intervals[idx]:
            return idx

        return None


TaskList = Union[Mapping[str, Sequence[str]], Sequence[Tuple[str, Sequence[str]]]]
IntervalList = Sequence[Union[Interval, Tuple[int, int]]]


def build_hierarchy(goal_id: str, task_list: TaskList, interval_list: IntervalList) -> TaskHierarchy:
    """Build and validate a task hierarchy.

    Parameters
    ----------
    goal_id : str
        Identifier of the goal.
    task_list : mapping or sequence of (task_id, subtask ids)
        Tasks of the goal with their subtasks, in order.
    interval_list : sequence of Interval or (start, end)
        Ordered, disjoint half-open measurement intervals.

    Returns
    -------
    TaskHierarchy
        The validated hierarchy. Intervals without a label are
        labelled t1, t2, ... by position.
    """

    if isinstance(task_list, Mapping):
        task_items = list(task_list.items())
    else:
        task_items = list(task_list)

    intervals = []
    for idx, interval in enumerate(interval_list):
        if not isinstance(interval, Interval):
            start, end = interval
            interval = Interval(int(start), int(end))
        if not interval.label:
            interval = Interval(interval.start, interval.end, f't{idx + 1}')
        intervals.append(interval)

    hierarchy = TaskHierarchy(goal_id=goal_id,
                              tasks=tuple(task_id for task_id, _ in task_items),
                              subtasks={task_id: tuple(subtasks) for task_id, subtasks in task_items},
                              intervals=tuple(intervals))

    return validate_hierarchy(hierarchy)


def validate_hierarchy(hierarchy: TaskHierarchy) -> TaskHierarchy:
    """Check the invariants of a task hierarchy."""

    if not hierarchy.tasks:
        raise ValidationError('empty task list', field='tasks')

    if len(set(hierarchy.tasks)) != len(hierarchy.tasks):
        raise ValidationError('duplicate task ids', field='tasks')

    seen_subtasks = set()
    for task_id in hierarchy.tasks:
        for subtask_id in hierarchy.subtasks.get(task_id, ()):
            if subtask_id in seen_subtasks:
                raise ValidationError(f'duplicate subtask ids: {subtask_id}', field='subtasks')
            seen_subtasks.add(subtask_id)

    if not hierarchy.intervals:
        raise ValidationError('empty interval list', field='intervals')

    prev = None
    for interval in hierarchy.intervals:
        if interval.start >= interval.end:
            raise ValidationError(
                f'interval [{interval.start},{interval.end}) must have start < end', field='intervals')
        if prev is not None:
            if interval.start < prev.end and interval.end > prev.start:
                raise ValidationError('overlapping intervals', field='intervals')
            if interval.start < prev.start:
                raise ValidationError('intervals not ordered', field='intervals')
        prev = interval

    return hierarchy


@dataclass(frozen=True)
class InteractionEvent:
    """One contributor's line-level change on one subtask."""

    timestamp: int
    agent_id: str
    task_id: str
    subtask_id: str
    lines_added: int
    lines_deleted: int
    commit_id: str

    @property
    def value(self) -> int:
        """Interaction value: lines added plus lines deleted."""
        return self.lines_added + self.lines_deleted


def validate_event(event: InteractionEvent) -> InteractionEvent:
    """Check that line counts of an event are non-negative."""

    for field_name in ('lines_added', 'lines_deleted'):
        if getattr(event, field_name) < 0:
            raise ValidationError(f'{field_name} must be non-negative', field=field_name)

    return event


class LinkKind(str, Enum):
    EXPLICIT = 'explicit'
    IMPLICIT = 'implicit'


@dataclass(frozen=True)
class LinkState:
    """Directed link between two agents on one subtask."""

    source: str
    target: str
    subtask_id: str
    value: float = 0.0
    kind: LinkKind = LinkKind.EXPLICIT

    def __post_init__(self):
        validate_link(self)

    @property
    def pair(self) -> Tuple[str, str]:
        return self.source, self.target


def validate_link(link: LinkState) -> LinkState:
    """Check that a link joins two distinct agents with a finite, non-negative value."""

    if link.source == link.target:
        raise ValidationError(f'self-link on {link.source}', field='target')

    if not math.isfinite(link.value) or link.value < 0:
        raise ValidationError(f'link value must be non-negative and finite: {link.value}', field='value')

    return link


class RelationMatrix():
    """Directed relation values between agents for one task.

    Pairs without an entry have relation 0.
    """

    def __init__(self, task_id: str, values: Optional[Mapping[Tuple[str, str], float]] = None):
        """Initialization."""

        self.task_id = task_id
        self._values = {}
        for (source, target), value in (values or {}).items():
            if source == target:
                raise ValidationError(f'self-relation on {source}', field='target')
            self._values[(source, target)] = float(value)

    def get(self, source: str, target: str) -> float:
        return self._values.get((source, target), 0.0)

    def outgoing(self, agent_id: str) -> Dict[str, float]:
        """Relations from an agent to each of its peers."""

        return {target: value for (source, target), value in self._values.items() if source == agent_id}

    def items(self) -> Iterable[Tuple[Tuple[str, str], float]]:
        return sorted(self._values.items())

    def __len__(self) -> int:
        return len(self._values)

    def __eq__(self, other) -> bool:
        return (isinstance(other, RelationMatrix)
                and self.task_id == other.task_id
                and self._values == other._values)


@dataclass(frozen=True)
class ReportRow:
    """Measurements of one agent over one interval."""

    interval: str
    agent_id: str
    links: float
    relation: float
    capacity: float
    benevolence: float
    potential_benevolence: float
    instant_sc: float
    accumulative_sc: float
    net_sc: float


@dataclass(frozen=True)
class ExplainRecord:
    """Intermediate value of a run, kept for auditing."""

    interval: str
    section: str
    subtask: str
    source: str
    target: str
    value: float


@dataclass
class SCReport:
    """Social capital of a subgroup for one task across all intervals."""

    task_id: str
    intervals: List[str] = field(default_factory=list)
    rows: List[ReportRow] = field(default_factory=list)
    net_sc: Dict[str, float] = field(default_factory=dict)
    diagnostics: Dict[str, Dict[str, int]] = field(default_factory=dict)
    explain: List[ExplainRecord] = field(default_factory=list)

    def rows_for(self, interval: str) -> List[ReportRow]:
        return [row for row in self.rows if row.interval == interval]

    def row(self, interval: str, agent_id: str) -> Optional[ReportRow]:
        for r in self.rows:
            if r.interval == interval and r.agent_id == agent_id:
                return r

        return None

    def is_empty(self) -> bool:
        return not self.rows
